//! Counts vertices by dimension vector in a labeled tube and in the FIX-B8
//! component.

use arquiver::analysis::{count_bound_check, count_by_dimvector};
use arquiver::fixtures::b8_component;
use arquiver::reps::{dimvec_unit, format_dimvec, DimVec};
use arquiver::tquiver::build_labeled_tube;

fn main() {
    let mouth: Vec<(String, DimVec)> = ["a", "b", "c"].iter().map(|k| (k.to_string(), dimvec_unit(k))).collect();
    let tube = build_labeled_tube(&mouth, 9);
    let delta: DimVec = ["a", "b", "c"].iter().map(|k| (k.to_string(), 1)).collect();
    let twice: DimVec = delta.iter().map(|(k, n)| (k.clone(), 2 * n)).collect();
    for d in [&delta, &twice] {
        println!("tube: {} vertices with vector {}", count_by_dimvector(&tube, d).len(), format_dimvec(d));
    }

    let g = b8_component();
    let rep = count_bound_check(&g, None, 0);
    println!("B8 component: support {}, largest count {}, over the bound {:?}", rep.n, rep.max_count, rep.over);
    for (label, xs) in &rep.repeated {
        let ids: Vec<&str> = xs.iter().map(|&x| g.id(x)).collect();
        println!("  {label}: {ids:?}");
    }
}
