//! Runs seeded random operation scripts on tubes and tallies the structural
//! checks.

use arquiver::ops::{random_script, RandomConfig};
use arquiver::tquiver::{coherence_check, is_almost_cyclic, cyclic_components_are_sccs};

fn main() {
    let cfg = RandomConfig { strict: true, with_linear: false, ..RandomConfig::default() };
    let (mut coherent, mut almost_cyclic, mut sccs_ok) = (0, 0, 0);
    let runs = 50;
    for seed in 0..runs {
        let (script, mc) = random_script(seed, &cfg);
        let g = &mc.quiver;
        coherent += coherence_check(g).passed() as usize;
        almost_cyclic += is_almost_cyclic(g) as usize;
        sccs_ok += cyclic_components_are_sccs(g) as usize;
        if seed == 0 {
            println!("first script:\n{script}");
        }
    }
    println!("{runs} scripts: coherent {coherent}, almost cyclic {almost_cyclic}, cyclic part closed {sccs_ok}");
}
