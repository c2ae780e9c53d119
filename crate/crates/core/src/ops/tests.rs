use super::*;
use crate::tquiver::{build_stable_tube, cyclic_components_are_sccs};
use proptest::prelude::*;

fn tube(r: usize, l: usize) -> Multicoil {
    Multicoil::new(build_stable_tube(r, l))
}

fn sound(mc: &Multicoil) {
    mc.quiver.validate().unwrap();
    assert!(mc.ledger_violations().is_empty(), "{:?}", mc.ledger_violations());
    assert!(mc.accounting_violations().is_empty(), "{:?}", mc.steps);
}

#[test]
fn ad1_without_linear_part() {
    let mc = apply_ad1(&tube(1, 6), "(0,1)", 0).unwrap();
    sound(&mc);
    assert_eq!(mc.quiver.len(), 12);
    assert_eq!(mc.steps[0].rays, Some(1));
}

#[test]
fn ad1_with_t2_on_rank3() {
    let mc = apply_ad1(&tube(3, 6), "(0,1)", 2).unwrap();
    sound(&mc);
    let zs = mc.ledger.iter().filter(|e| matches!(e.piece, Piece::Z(..))).count();
    assert_eq!(zs, 12);
    assert_eq!(mc.steps[0].rays, Some(3));
}

#[test]
fn ad1_then_dual_ad1() {
    let mc = apply_ad1(&tube(1, 8), "(0,1)", 1).unwrap();
    sound(&mc);
    let back = apply(&mc, &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(1).dualized()).unwrap();
    sound(&back);
    assert_eq!(back.steps[1].op, "ad1*");
}

fn with_linear(r: usize, l: usize, ids: &[&str]) -> Multicoil {
    let seeds = vec![
        Seed::Tube { rank: r, window: l, algebra: None, mouth: vec![], name: None },
        Seed::Linear { ids: ids.iter().map(|s| s.to_string()).collect() },
    ];
    seed_multicoil(&seeds, no_algebras).unwrap()
}

fn kind_for(s: &ShapeKind) -> Option<OpKind> {
    match s {
        ShapeKind::RayPlusFiniteCoray(_) => Some(OpKind::Ad2),
        ShapeKind::ParallelMesh(_) => Some(OpKind::Ad3),
        ShapeKind::TwoFinitePaths(..) => Some(OpKind::Fad2),
        ShapeKind::FiniteParallelMesh(..) => Some(OpKind::Fad3),
        _ => None,
    }
}

/// Every pivot of the given operation kind on `mc`, in both orientations.
fn pivots(mc: &Multicoil, want: OpKind) -> Vec<OpSpec> {
    let mut out = Vec::new();
    for dual in [false, true] {
        let g = if dual { mc.quiver.reversed() } else { mc.quiver.clone() };
        for v in 0..g.len() {
            let Ok(s) = classify_support(&g, v, None) else { continue };
            if kind_for(&s.kind) == Some(want) {
                let mut spec = OpSpec::new(want, g.id(v));
                spec.dual = dual;
                out.push(spec);
            }
        }
    }
    out
}

#[test]
fn ad2_after_dual_ad1() {
    let mc = apply(&tube(2, 8), &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(1).dualized()).unwrap();
    let specs = pivots(&mc, OpKind::Ad2);
    assert!(specs.iter().any(|s| !s.dual));
    for s in specs.iter().filter(|s| !s.dual) {
        let out = apply(&mc, s).unwrap();
        sound(&out);
        assert_eq!(out.steps[1].rays, Some(2));
    }
}

#[test]
fn ad3_and_its_dual() {
    let mc = apply(&tube(3, 10), &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(2).dualized()).unwrap();
    let specs = pivots(&mc, OpKind::Ad3);
    assert!(!specs.is_empty());
    for s in &specs {
        let out = apply(&mc, s).unwrap();
        sound(&out);
        assert_eq!(out.steps[1].shape, ShapeKind::ParallelMesh(2));
    }
}

#[test]
fn finite_operations_close_their_rectangles() {
    let mc = apply(&tube(2, 10), &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(1).dualized()).unwrap();
    let x = mc.quiver.index("Sw1.1").unwrap();
    assert_eq!(classify_support(&mc.quiver, x, None).unwrap().kind, ShapeKind::FiniteRay(0));
    let out = apply(&mc, &OpSpec::new(OpKind::Fad1, "Sw1.1")).unwrap();
    sound(&out);
    let w = out.ledger.iter().find(|e| e.piece == Piece::W).unwrap();
    let wv = out.quiver.index(&w.id).unwrap();
    assert!(out.quiver.is_inj(wv) && out.quiver.succs(wv).is_empty());

    let base = apply(&tube(2, 10), &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(2).dualized()).unwrap();
    let base = apply(&base, &OpSpec::new(OpKind::Fad1, "Sw1.1").with_t(1)).unwrap();
    let fad2 = apply(&base, &OpSpec::new(OpKind::Fad2, "X'(1)@step2")).unwrap();
    sound(&fad2);
    assert!(matches!(fad2.steps[2].shape, ShapeKind::TwoFinitePaths(..)));
    let fad3 = apply(&base, &OpSpec::new(OpKind::Fad3, "Z(1,1)@step2")).unwrap();
    sound(&fad3);
    assert!(matches!(fad3.steps[2].shape, ShapeKind::FiniteParallelMesh(..)));
}

#[test]
fn ad4_with_and_without_linear_block() {
    let base = with_linear(2, 8, &["y1", "y2"]);
    let y = ["M(y1-y2)", "Sy1"];
    let r0 = apply(&base, &OpSpec::new(OpKind::Ad4, "(0,1)").with_y(y)).unwrap();
    sound(&r0);
    assert_eq!(r0.steps[0].rays, Some(3));
    let r1 = apply(&base, &OpSpec::new(OpKind::Ad4, "(0,1)").with_y(y).with_r(1)).unwrap();
    sound(&r1);
    assert_eq!(r1.steps[0].rays, Some(4));
    assert_eq!(r1.ledger.iter().filter(|e| matches!(e.piece, Piece::U(..))).count(), 3);
}

#[test]
fn ad4_rejects_a_path_that_is_not_a_tail() {
    let base = with_linear(2, 8, &["y1", "y2"]);
    let err = apply(&base, &OpSpec::new(OpKind::Ad4, "(0,1)").with_y(["Sy2"])).unwrap_err();
    assert!(matches!(err, OpError::ShapeMismatch { .. }), "{err}");
}

#[test]
fn ad5_grammar() {
    let base = with_linear(2, 8, &["y1"]);
    let fad = OpSpec::new(OpKind::Fad1, "Sy1");
    let ad4 = OpSpec::new(OpKind::Ad4, "(0,1)").with_y(["W@step1"]);
    let mut ad5 = OpSpec::new(OpKind::Ad5, "Sy1");
    ad5.sub = vec![fad.clone(), ad4.clone()];
    let out = apply(&base, &ad5).unwrap();
    sound(&out);
    assert_eq!(out.steps.len(), 2);

    ad5.sub = vec![ad4.clone(), fad.clone()];
    assert!(matches!(apply(&base, &ad5), Err(OpError::GrammarViolation(_))));
    ad5.sub = vec![fad.clone()];
    assert!(matches!(apply(&base, &ad5), Err(OpError::GrammarViolation(_))));
    ad5.sub = vec![fad.dualized(), ad4];
    assert!(matches!(apply(&base, &ad5), Err(OpError::GrammarViolation(_))));
}

#[test]
fn dual_of_dual_is_primal() {
    let mc = tube(2, 8);
    let back = mc.reversed().unwrap().reversed().unwrap();
    assert_eq!(back.quiver, mc.quiver);
    let a = apply_ad1(&mc, "(0,1)", 1).unwrap();
    let b = build::apply_primal(&mc.reversed().unwrap().reversed().unwrap(), &OpSpec::new(OpKind::Ad1, "(0,1)").with_t(1), false).unwrap();
    assert_eq!(a.quiver, b.quiver);
}

#[test]
fn boundary_pivot_is_ambiguous() {
    let err = apply_ad1(&tube(2, 4), "(0,4)", 0).unwrap_err();
    assert!(matches!(err, OpError::AmbiguousAtBoundary(_)));
}

#[test]
fn script_round_trip() {
    let text = "option gating=on\n\
seed tube rank=3 window=10 algebra=FIX-D5t mouth=S6,S7,E\n\
seed linear ids=a,b\n\
op ad1* pivot=S6 t=1 ext=11 dvert=12\n\
op ad4 pivot=(0,1) r=1 y=M(a-b),Sa\n\
op ad5 pivot=Sa sub=[fad1(pivot=Sa t=1),ad4(pivot=(0,1) y=W@step1)]\n";
    let s: OperationScript = text.parse().unwrap();
    assert_eq!(s.ops.len(), 3);
    assert_eq!(s.ops[1].y, vec!["M(a-b)", "Sa"]);
    assert_eq!(s.ops[2].sub.len(), 2);
    let again: OperationScript = s.to_string().parse().unwrap();
    assert_eq!(again, s);
    assert!("op ad9 pivot=x".parse::<OperationScript>().is_err());
    assert!("op ad1 t=1".parse::<OperationScript>().is_err());
}

#[test]
fn script_errors_carry_the_step() {
    let s: OperationScript = "seed tube rank=1 window=6\nop ad1 pivot=(0,1)\nop ad1 pivot=nowhere\n".parse().unwrap();
    match run_script(&s, no_algebras) {
        Err(OpError::AtStep { step, .. }) => assert_eq!(step, 2),
        other => panic!("{other:?}"),
    }
}

fn check_random(seed: u64) {
    let (script, mc) = random_script(seed, &RandomConfig::default());
    sound(&mc);
    assert!(cyclic_components_are_sccs(&mc.quiver), "seed {seed}: {script}");
    let replay = run_script(&script, no_algebras).unwrap();
    assert_eq!(replay.quiver, mc.quiver);
}

#[test]
fn random_scripts_are_sound() {
    for seed in 0..6 {
        check_random(seed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn random_scripts_replay(seed in any::<u64>()) {
        check_random(seed);
    }

    #[test]
    fn ad1_inserts_a_full_rectangle(r in 1usize..4, l in 3usize..8, t in 0usize..3) {
        let mc = apply_ad1(&tube(r, l), "(0,1)", t).unwrap();
        sound(&mc);
        prop_assert_eq!(mc.quiver.len(), r * l + l * (t + 1) + t * (t + 1) / 2);
    }
}

