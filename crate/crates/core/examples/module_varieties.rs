//! Hom order, degenerations and orbit dimensions for small modules.

use arquiver::analysis::{finite_type_deg_order, hom_order, orbit_dimension, variety_dimension_formulas, CompleteList};
use arquiver::fixtures::{algebra, d5t_e};
use arquiver::reps::{projective, simple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = algebra("FIX-A2")?;
    let p1 = projective(&a, 0);
    let (s1, s2) = (simple(&a, 0), simple(&a, 1));
    let semisimple = s1.direct_sum(&s2)?;
    let family = [p1.clone(), s1, s2];
    let v = hom_order(&p1, &semisimple, &family)?;
    println!("P1 vs S1+S2: {:?}, profiles {:?}", v.order, v.covariant);
    let deg = finite_type_deg_order(&p1, &semisimple, &family, CompleteList)?;
    println!("P1 degenerates to S1+S2: {} ({})", deg.degenerates, deg.provenance);
    println!("orbit dims: P1 {}, S1+S2 {}", orbit_dimension(&p1), orbit_dimension(&semisimple));

    let d5t = algebra("FIX-D5t")?;
    let e = d5t_e(&d5t);
    let r = variety_dimension_formulas(&d5t, &e, 8)?;
    println!(
        "E over D5~: dim G {}, orbit {}, q {}, chi {}, End {}, Ext1 {}, variety {}",
        r.dim_group, r.orbit, r.tits, r.euler, r.end, r.ext1, r.periodic_variety_dim
    );
    Ok(())
}
