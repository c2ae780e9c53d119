//! Tits and Euler forms of the shipped algebras, with a bounded weak
//! nonnegativity check.

use arquiver::fixtures::algebra;
use arquiver::forms::{euler_form, tits_form, weak_nonnegativity_box, BoxVerdict};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["FIX-A2", "FIX-K2", "FIX-D5t", "FIX-B8"] {
        let a = algebra(name)?;
        let q = tits_form(&a)?.form;
        let chi = euler_form(&a, 8)?;
        let same = q == chi;
        let verdict = match weak_nonnegativity_box(&q, 4) {
            BoxVerdict::Pass { bound } => format!("nonnegative on [0, {bound}]^n"),
            BoxVerdict::Counterexample { x, value } => format!("q({x:?}) = {value}"),
        };
        println!("{name}: rank {}, tits == euler: {same}, {verdict}", q.rank());
    }
    Ok(())
}
