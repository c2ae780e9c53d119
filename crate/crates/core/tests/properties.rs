use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::select;

use arquiver::analysis::{alternating_ext_sum, hom_order, variety_dimension_formulas, HomOrder};
use arquiver::fixtures;
use arquiver::forms::{euler_form, tits_form, UnitForm};
use arquiver::io::{parse_representation, parse_tquiver, tquiver_to_dot, write_representation, write_tquiver};
use arquiver::linalg::{q, Matrix};
use arquiver::ops::{random_script, OperationScript, RandomConfig};
use arquiver::qalg::{triangular_matrix_algebra, Algebra};
use arquiver::reps::{
    cokernel, ext_dim, global_dimension, hom_basis, hom_dim, injective, kernel, projective, simple, Morphism,
    Representation,
};
use arquiver::tquiver::{
    build_stable_tube, classify_tube, coherence_check, cyclic_part, cyclic_vertices, is_almost_cyclic, cyclic_components_are_sccs,
    TranslationQuiver, TubeKind,
};

fn sum(ms: Vec<Representation>) -> Representation {
    let mut it = ms.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, m| acc.direct_sum(&m).unwrap())
}

fn indecomposable(a: &Algebra, kind: u8, v: usize) -> Representation {
    match kind % 3 {
        0 => projective(a, v),
        1 => injective(a, v),
        _ => simple(a, v),
    }
}

fn combine(basis: &[Morphism], coeffs: &[i64]) -> Option<Morphism> {
    let first = basis.first()?;
    let mut f: Morphism = first.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (g, &c) in basis.iter().zip(coeffs.iter().cycle()) {
        for (fw, gw) in f.iter_mut().zip(g) {
            *fw = fw.add(&gw.scale(&q(c)));
        }
    }
    Some(f)
}

/// Cokernel of a random map from a sum of projectives to a sum of
/// indecomposables: a module over `a` with relations respected.
fn random_module(a: &Algebra, src: &[usize], tgt: &[(u8, usize)], coeffs: &[i64]) -> Representation {
    let n = a.vertex_count();
    let p = sum(src.iter().map(|&v| projective(a, v % n)).collect());
    let t = sum(tgt.iter().map(|&(k, v)| indecomposable(a, k, v % n)).collect());
    match combine(&hom_basis(&p, &t).unwrap(), coeffs) {
        Some(f) => cokernel(&t, &f).0,
        None => t,
    }
}

fn module_args() -> impl Strategy<Value = (Vec<usize>, Vec<(u8, usize)>, Vec<i64>)> {
    (
        prop::collection::vec(0usize..16, 1..3),
        prop::collection::vec((0u8..3, 0usize..16), 1..4),
        prop::collection::vec(-2i64..3, 1..5),
    )
}

const SMALL_GLDIM: &[&str] = &["FIX-A2", "FIX-K2", "FIX-D5t"];

#[test]
fn unit_vectors_evaluate_to_one() {
    for f in fixtures::FIXTURES {
        let a = fixtures::algebra(f.name).unwrap();
        let q = tits_form(&a).unwrap().form;
        for i in 0..q.rank() {
            let mut e = vec![0; q.rank()];
            e[i] = 1;
            assert_eq!(q.evaluate(&e), 1, "{} at {}", f.name, q.ids()[i]);
        }
    }
}

#[test]
fn tits_equals_euler_when_gldim_at_most_two() {
    let mut algebras: Vec<Algebra> = fixtures::FIXTURES.iter().map(|f| fixtures::algebra(f.name).unwrap()).collect();
    algebras.extend((1..=5).map(|r| Arc::new(triangular_matrix_algebra(r).unwrap())));
    for a in algebras {
        if global_dimension(&a, 8).is_ok_and(|g| g <= 2) {
            assert_eq!(tits_form(&a).unwrap().form, euler_form(&a, 8).unwrap());
        }
    }
}

#[test]
fn linear_algebras_are_hereditary() {
    for r in 1..=5 {
        let a: Algebra = Arc::new(triangular_matrix_algebra(r).unwrap());
        assert!(global_dimension(&a, 4).unwrap() <= 1);
    }
}

#[test]
fn opposite_twice_is_identity() {
    for f in fixtures::FIXTURES {
        let a = fixtures::algebra(f.name).unwrap();
        assert_eq!(a.opposite().unwrap().opposite().unwrap(), *a, "{}", f.name);
    }
}

#[test]
fn stable_tube_sizes() {
    for r in 1..=6 {
        for l in 1..=8 {
            let g = build_stable_tube(r, l);
            assert_eq!(g.len(), r * l);
            assert_eq!(g.arrow_count(), 2 * r * (l - 1));
            assert_eq!(classify_tube(&g), TubeKind::Stable);
            assert!(cyclic_components_are_sccs(&g));
        }
    }
}

#[test]
fn b8_component_structure() {
    let g = fixtures::b8_component();
    assert!(cyclic_components_are_sccs(&g));
    let c = cyclic_part(&g);
    assert_eq!(cyclic_part(&c), c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluate_is_permutation_invariant(
        (n, coeff, perm, x) in (1usize..6).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(prop::collection::vec(-3i64..4, n), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(-4i64..5, n),
        ))
    ) {
        let ids = (0..n).map(|i| i.to_string()).collect();
        let f = UnitForm::new(ids, coeff);
        let g = f.permuted(&perm);
        let y: Vec<i64> = perm.iter().map(|&k| x[k]).collect();
        prop_assert_eq!(f.evaluate(&x), g.evaluate(&y));
    }

    #[test]
    fn euler_form_is_alternating_ext_sum(
        name in select(vec!["FIX-A2", "FIX-K2", "FIX-D5t", "FIX-B8"]),
        (src, tgt, coeffs) in module_args(),
    ) {
        let a = fixtures::algebra(name).unwrap();
        let m = random_module(&a, &src, &tgt, &coeffs);
        let gl = global_dimension(&a, 8).unwrap();
        let chi = euler_form(&a, 8).unwrap();
        let d: Vec<i64> = m.dims().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(chi.evaluate(&d), alternating_ext_sum(&m, gl).unwrap());
    }

    #[test]
    fn euler_is_end_minus_ext1_plus_ext2(name in select(SMALL_GLDIM.to_vec()), (src, tgt, coeffs) in module_args()) {
        let a = fixtures::algebra(name).unwrap();
        let m = random_module(&a, &src, &tgt, &coeffs);
        let v = variety_dimension_formulas(&a, &m, 8).unwrap();
        prop_assert!(v.euler_identity());
        prop_assert_eq!(v.orbit + v.end, v.dim_group);
    }

    #[test]
    fn projectives_and_injectives_probe_dimensions(
        name in select(vec!["FIX-A2", "FIX-D5t", "FIX-B8", "FIX-GL"]),
        (src, tgt, coeffs) in module_args(),
    ) {
        let a = fixtures::algebra(name).unwrap();
        let m = random_module(&a, &src, &tgt, &coeffs);
        for i in 0..a.vertex_count() {
            let p = projective(&a, i);
            prop_assert_eq!(hom_dim(&p, &m).unwrap(), m.dim_at(i));
            prop_assert_eq!(hom_dim(&m, &injective(&a, i)).unwrap(), m.dim_at(i));
            prop_assert_eq!(ext_dim(&p, &m, 1).unwrap(), 0);
        }
    }

    #[test]
    fn hom_order_is_reflexive_and_transitive(
        dims in (1usize..3, 1usize..3),
        entries in prop::collection::vec(prop::collection::vec(-2i64..3, 8), 3),
    ) {
        let a = fixtures::algebra("FIX-K2").unwrap();
        let (d1, d2) = dims;
        let ms: Vec<Representation> = entries
            .iter()
            .map(|e| {
                let x = Matrix::from_i64(d2, d1, &e[..d1 * d2]);
                let y = Matrix::from_i64(d2, d1, &e[4..4 + d1 * d2]);
                Representation::new(a.clone(), vec![d1, d2], vec![x, y]).unwrap()
            })
            .collect();
        let mut family: Vec<Representation> = (0..2)
            .flat_map(|v| [simple(&a, v), projective(&a, v), injective(&a, v)])
            .collect();
        family.extend(ms.iter().cloned());
        for m in &ms {
            prop_assert_eq!(hom_order(m, m, &family).unwrap().order, HomOrder::EqualProfile);
        }
        let le = |x: &Representation, y: &Representation| {
            matches!(hom_order(x, y, &family).unwrap().order, HomOrder::Leq | HomOrder::EqualProfile)
        };
        for x in &ms {
            for y in &ms {
                for z in &ms {
                    if le(x, y) && le(y, z) {
                        prop_assert!(le(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn short_exact_sequences_bound_hom_profiles(
        name in select(vec!["FIX-A2", "FIX-K2", "FIX-D5t", "FIX-B8"]),
        (src, tgt, coeffs) in module_args(),
        (src2, tgt2, coeffs2) in module_args(),
    ) {
        let a = fixtures::algebra(name).unwrap();
        let m = random_module(&a, &src, &tgt, &coeffs);
        let n = random_module(&a, &src2, &tgt2, &coeffs2);
        let Some(f) = combine(&hom_basis(&m, &n).unwrap(), &coeffs2) else { return Ok(()) };
        let (u, incl) = kernel(&m, &f);
        let (v, _) = cokernel(&m, &incl);
        let uv = u.direct_sum(&v).unwrap();
        let family: Vec<Representation> = (0..a.vertex_count())
            .flat_map(|i| [simple(&a, i), projective(&a, i), injective(&a, i)])
            .collect();
        let verdict = hom_order(&m, &uv, &family).unwrap();
        prop_assert!(matches!(verdict.order, HomOrder::Leq | HomOrder::EqualProfile));
        prop_assert!(verdict.contravariant.iter().all(|(x, y)| x <= y));
    }

    #[test]
    fn representations_round_trip(name in select(SMALL_GLDIM.to_vec()), (src, tgt, coeffs) in module_args()) {
        let a = fixtures::algebra(name).unwrap();
        let m = random_module(&a, &src, &tgt, &coeffs);
        prop_assert_eq!(parse_representation(&a, &write_representation(&m)).unwrap(), m);
    }
}

#[test]
fn glued_scripts_are_coherent() {
    let cfg = RandomConfig { strict: true, ..RandomConfig::default() };
    for seed in 0..200 {
        let (script, mc) = random_script(seed, &cfg);
        let g = infinite_components(&mc.quiver);
        assert!(coherence_check(&g).passed(), "seed {seed}:\n{script}");
        assert!(is_almost_cyclic(&mc.quiver), "seed {seed}:\n{script}");
    }
}

// TODO: (ad1*) at a pivot whose ray starts with two injectives, reached
// after (ad4) with r = 1 and (ad4*), leaves X'(1) off every sectional path
// from the boundary. Seeds 1263 and 1356 show the same pattern.
#[test]
#[ignore = "known incoherent output, see the TODO above"]
fn glued_script_witness() {
    let cfg = RandomConfig { strict: true, ..RandomConfig::default() };
    let (script, mc) = random_script(1211, &cfg);
    assert!(coherence_check(&infinite_components(&mc.quiver)).passed(), "{script}");
}

/// The union of the components meeting the cyclic part; unabsorbed linear
/// seeds stay finite and are dropped.
fn infinite_components(g: &TranslationQuiver) -> TranslationQuiver {
    let mut seen = vec![false; g.len()];
    let mut stack = cyclic_vertices(g);
    for &x in &stack {
        seen[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in g.succs(x).iter().chain(g.preds(x)) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    let drop: Vec<usize> = (0..g.len()).filter(|&x| !seen[x]).collect();
    g.remove_vertices(&drop)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn tube_scripts_are_coherent_and_almost_cyclic(seed in any::<u64>()) {
        let cfg = RandomConfig { strict: true, with_linear: false, ..RandomConfig::default() };
        let (script, mc) = random_script(seed, &cfg);
        let g = &mc.quiver;
        prop_assert!(coherence_check(g).passed(), "{}", script);
        prop_assert!(is_almost_cyclic(g), "{}", script);
        prop_assert!(cyclic_components_are_sccs(g));
        let c = cyclic_part(g);
        prop_assert_eq!(cyclic_vertices(&c).len(), c.len());
        prop_assert_eq!(cyclic_part(&c), c);
    }

    #[test]
    fn writers_round_trip_and_dot_is_deterministic(seed in any::<u64>()) {
        let (script, mc) = random_script(seed, &RandomConfig::default());
        let text = script.to_string();
        prop_assert_eq!(text.parse::<OperationScript>().unwrap(), script);
        prop_assert_eq!(parse_tquiver(&write_tquiver(&mc.quiver)).unwrap(), mc.quiver.clone());
        prop_assert_eq!(tquiver_to_dot(&mc.quiver, "g"), tquiver_to_dot(&mc.quiver.clone(), "g"));
    }
}
