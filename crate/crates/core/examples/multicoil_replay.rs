//! Replays the bundled operation script on a stable tube and summarizes each
//! step and the resulting component.

use arquiver::analysis::brenner_bound_check;
use arquiver::verify::replay_multicoil;
use arquiver::tquiver::{coherence_check, cyclic_part, is_almost_cyclic};

fn main() -> Result<(), String> {
    let mc = replay_multicoil()?;
    for s in &mc.steps {
        println!(
            "step {}: {} at {} ({}), {} inserted, {} removed",
            s.step,
            s.op,
            s.pivot,
            s.shape,
            s.inserted.len(),
            s.removed.len()
        );
    }
    let g = &mc.quiver;
    println!("vertices {}, arrows {}", g.len(), g.arrow_count());
    println!("cyclic part {}", cyclic_part(g).len());
    println!("coherent {}", coherence_check(g).passed());
    println!("almost cyclic {}", is_almost_cyclic(g));
    println!("middle terms at most {}", brenner_bound_check(g).max_s);
    if let Some(a) = &mc.algebra {
        println!("algebra: {} vertices, dim {}", a.vertex_count(), a.dim());
    }
    println!("ledger violations {}", mc.ledger_violations().len());
    Ok(())
}
