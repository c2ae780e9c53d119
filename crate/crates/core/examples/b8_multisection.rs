//! Decomposes the FIX-B8 component along its multisection and searches for
//! others among unions of tau-orbit slices.

use arquiver::analysis::{find_multisections, multisection_parts, vertex_set, MultisectionParts};
use arquiver::fixtures::{b8_component, B8_DELTA};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = b8_component();
    let delta = vertex_set(&g, B8_DELTA)?;
    let parts = multisection_parts(&g, &delta)?;
    let show = |name: &str, s| println!("{name:>6}: {:?}", MultisectionParts::ids(&g, s));
    show("L'", &parts.l_prime);
    show("R'", &parts.r_prime);
    show("L''", &parts.l_second);
    show("R''", &parts.r_second);
    show("left", &parts.left);
    show("core", &parts.core);
    show("right", &parts.right);

    match find_multisections(&g, g.len(), 1 << 22) {
        Some(found) => println!("search found {} multisection(s)", found.len()),
        None => println!("window or search space too large"),
    }
    Ok(())
}
