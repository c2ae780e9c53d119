//! Checks of the worked examples and structural statements, one per
//! acceptance criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::analysis::{
    brenner_bound_check, count_bound_check, count_by_dimvector, finite_type_deg_order, hom_order, placement_violations,
    multisection_parts, orbit_dimension, variety_dimension_formulas, vertex_set, CompleteList, HomOrder,
    MultisectionParts,
};
use crate::fixtures;
use crate::forms::{euler_form, tits_form, weak_nonnegativity_box, UnitForm};
use crate::ops::{mouth_module, random_script, run_script, Multicoil, RandomConfig};
use crate::qalg::{full_convex_subcategory, triangular_matrix_algebra, Algebra, Path, Quiver, Relation};
use crate::reps::{
    global_dimension, hom_dim, injective, is_brick, projective, simple, tau, DimVec, Representation,
};
use crate::tquiver::{
    build_labeled_tube, build_stable_tube, coherence_check, cyclic_vertices, is_almost_cyclic, cyclic_components_are_sccs,
    support_of_subquiver,
};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} criterion {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title)
    }
}

/// Collects sub-checks of one criterion.
struct Checker {
    passed: bool,
    details: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("[{}] {what}", if ok { "ok" } else { "FAILED" }));
        self.passed &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("[info] {}", what.into()));
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.check(false, what);
    }

    fn finish(self, id: usize, title: &'static str) -> Outcome {
        Outcome { id, title, passed: self.passed, details: self.details }
    }
}

pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    /// Modules exercised, matched by `--only`.
    pub modules: &'static [&'static str],
    run: fn() -> Outcome,
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Tits and Euler forms agree on hereditary fixtures", modules: &["forms", "qalg"], run: c1 },
    Criterion { id: 2, title: "multisection of the B8 component", modules: &["analysis", "reps", "tquiver"], run: c2 },
    Criterion { id: 3, title: "multicoil script rebuilds the algebra B", modules: &["ops", "qalg", "tquiver"], run: c3 },
    Criterion { id: 4, title: "mouth of the rank-3 D5~ tube", modules: &["reps", "forms"], run: c4 },
    Criterion { id: 5, title: "surgery invariants on random scripts", modules: &["ops", "tquiver", "analysis"], run: c5 },
    Criterion { id: 6, title: "counting by dimension vector", modules: &["analysis", "ops"], run: c6 },
    Criterion { id: 7, title: "degeneration over A2", modules: &["analysis", "reps"], run: c7 },
    Criterion { id: 8, title: "Euler characteristic identities", modules: &["forms", "reps", "analysis"], run: c8 },
    Criterion { id: 9, title: "negative controls", modules: &["cli", "forms", "tquiver"], run: c9 },
];

/// Run the criteria touching `only` (all when `None`).
pub fn run(only: Option<&str>) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter(|c| only.is_none_or(|m| c.modules.contains(&m) || m == c.id.to_string()))
        .map(|c| (c.run)())
        .collect()
}

pub fn run_one(id: usize) -> Option<Outcome> {
    CRITERIA.iter().find(|c| c.id == id).map(|c| (c.run)())
}

fn forms_agree(a: &Algebra) -> Result<bool, String> {
    let t = tits_form(a).map_err(|e| e.to_string())?.form;
    let e = euler_form(a, 8).map_err(|e| e.to_string())?;
    Ok(t == e)
}

fn c1() -> Outcome {
    let mut c = Checker::new();
    for name in ["FIX-A2", "FIX-K2", "FIX-D5t"] {
        match fixtures::algebra(name).map_err(|e| e.to_string()).and_then(|a| forms_agree(&a)) {
            Ok(ok) => c.check(ok, format!("{name}: q = chi coefficientwise")),
            Err(e) => c.fail(format!("{name}: {e}")),
        }
    }
    for r in 1..=5 {
        let a: Algebra = Arc::new(triangular_matrix_algebra(r).expect("linear algebra"));
        match forms_agree(&a) {
            Ok(ok) => c.check(ok, format!("T_{r}(K): q = chi coefficientwise")),
            Err(e) => c.fail(format!("T_{r}(K): {e}")),
        }
    }
    c.finish(1, CRITERIA[0].title)
}

fn names(g: &crate::tquiver::TranslationQuiver, s: &BTreeSet<usize>) -> BTreeSet<String> {
    MultisectionParts::ids(g, s)
}

fn strs(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Modules of the B8 component named as in the worked example.
pub fn b8_module(a: &Algebra, id: &str) -> Option<Representation> {
    let v = |k: &str| a.vertex_index(k);
    let p = |k| projective(a, v(k).unwrap());
    match id {
        "I1" | "I2" | "I3" | "I4" | "I5" | "I6" => Some(injective(a, v(&id[1..])?)),
        "P6" | "P7" | "P8" => Some(p(&id[1..])),
        "S5" | "S6" | "S7" => Some(simple(a, v(&id[1..])?)),
        _ => None,
    }
}

fn c2() -> Outcome {
    let mut c = Checker::new();
    let a = fixtures::algebra("FIX-B8").expect("fixture");
    match global_dimension(&a, 8) {
        Ok(d) => c.check(d == 4, format!("gl.dim FIX-B8 = {d}, expected 4")),
        Err(e) => c.fail(format!("gl.dim: {e}")),
    }
    let g = fixtures::b8_component();
    c.check(g.validate().is_ok(), "component fixture satisfies the mesh condition");
    let delta = vertex_set(&g, fixtures::B8_DELTA).expect("ids");
    let parts = match multisection_parts(&g, &delta) {
        Ok(p) => p,
        Err(e) => {
            c.fail(e.to_string());
            return c.finish(2, CRITERIA[1].title);
        }
    };
    let want_l = strs(&["I1", "I2", "I3", "I4", "S5", "P6"]);
    let want_r = strs(&["I6", "S7", "P8"]);
    let want_c = strs(&["S6", "P7", "P7/S6", "R", "I5"]);
    c.check(names(&g, &parts.left) == want_l, format!("Delta_l = {:?}", names(&g, &parts.left)));
    c.check(names(&g, &parts.right) == want_r, format!("Delta_r = {:?}", names(&g, &parts.right)));
    c.check(names(&g, &parts.core) == want_c, format!("Delta_c = {:?}", names(&g, &parts.core)));
    let cyc: BTreeSet<usize> = cyclic_vertices(&g).into_iter().collect();
    c.check(cyc == parts.core, "cyclic part equals Delta_c");
    let core: Vec<usize> = parts.core.iter().copied().collect();
    let sup = support_of_subquiver(&g, &core);
    c.check(sup == strs(&["5", "6", "7"]), format!("support of Delta_c = {sup:?}"));
    let v = placement_violations(&g, &parts);
    c.check(v.is_empty(), format!("cycles lie in the core and every vertex is placed ({} violations)", v.len()));
    match crate::analysis::find_multisections(&g, 40, 1 << 22) {
        Some(found) => {
            let cores: BTreeSet<BTreeSet<usize>> =
                found.iter().map(|d| crate::analysis::compute_parts(&g, d).core).collect();
            c.check(
                cores.len() == 1 && found.contains(&delta),
                format!("{} multisections found by search, {} distinct cores", found.len(), cores.len()),
            );
        }
        None => c.fail("multisection search space too large"),
    }
    // Hom(U, tau V) = 0 for U in Delta_r and V in Delta_l, on the named modules
    let op: Algebra = Arc::new(a.opposite().expect("opposite"));
    let us: Vec<Representation> = parts.right.iter().filter_map(|&x| b8_module(&a, g.id(x))).collect();
    let tvs: Vec<Representation> =
        parts.left.iter().filter_map(|&x| b8_module(&a, g.id(x))).map(|m| tau(&m, &op)).collect();
    let zero = us.iter().all(|u| tvs.iter().all(|v| hom_dim(u, v).is_ok_and(|d| d == 0)));
    c.check(zero, format!("Hom(U, tau V) = 0 on {} x {} named modules", us.len(), tvs.len()));
    c.finish(2, CRITERIA[1].title)
}

/// Arrows of `q` keyed by endpoint ids.
fn arrow_pairs(q: &Quiver) -> BTreeMap<(String, String), Vec<usize>> {
    let mut out: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (k, a) in q.arrows().iter().enumerate() {
        out.entry((q.vertex_id(a.source).to_string(), q.vertex_id(a.target).to_string())).or_default().push(k);
    }
    out
}

/// Carry a relation across quivers whose arrows are matched by endpoints.
fn transport(r: &Relation, from: &Quiver, to: &Quiver) -> Option<Relation> {
    let pairs = arrow_pairs(to);
    let terms = r
        .terms
        .iter()
        .map(|(c, p)| {
            let arrows = p
                .arrows
                .iter()
                .map(|&a| {
                    let arr = from.arrow(a);
                    let key = (from.vertex_id(arr.source).to_string(), from.vertex_id(arr.target).to_string());
                    pairs.get(&key).filter(|v| v.len() == 1).map(|v| v[0])
                })
                .collect::<Option<Vec<_>>>()?;
            Some((c.clone(), Path::from_arrows(to, arrows)?))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Relation { terms })
}

/// Result of replaying the multicoil script; shared with the CLI.
pub fn replay_multicoil() -> Result<Multicoil, String> {
    run_script(&fixtures::multicoil_script(), fixtures::resolve).map_err(|e| e.to_string())
}

fn c3() -> Outcome {
    let mut c = Checker::new();
    let mc = match replay_multicoil() {
        Ok(mc) => mc,
        Err(e) => {
            c.fail(e);
            return c.finish(3, CRITERIA[2].title);
        }
    };
    c.check(mc.steps.len() == 7, format!("{} operations applied", mc.steps.len()));
    let Some(b) = mc.algebra.clone() else {
        c.fail("the script left the algebra symbolic");
        return c.finish(3, CRITERIA[2].title);
    };
    let a23 = fixtures::algebra("FIX-A23").expect("fixture");
    let fix = full_convex_subcategory(&a23, fixtures::A23_BUILT).expect("restriction").algebra;
    let built_v: BTreeSet<String> = b.quiver().vertices().iter().cloned().collect();
    c.check(built_v == strs(fixtures::A23_BUILT), format!("vertices {:?}", built_v));
    let pb = arrow_pairs(b.quiver());
    let pf = arrow_pairs(fix.quiver());
    let only_built: Vec<_> = pb.keys().filter(|k| !pf.contains_key(k)).collect();
    let only_fix: Vec<_> = pf.keys().filter(|k| !pb.contains_key(k)).collect();
    let mult_ok = pb.iter().all(|(k, v)| pf.get(k).is_none_or(|w| w.len() == v.len()));
    c.check(
        only_built.is_empty() && only_fix.is_empty() && mult_ok,
        format!(
            "quiver equals the restriction of FIX-A23 ({} vs {} arrows; only built: {:?}; only fixture: {:?})",
            b.quiver().arrow_count(),
            fix.quiver().arrow_count(),
            only_built,
            only_fix
        ),
    );
    let mut missing = Vec::new();
    for r in fix.relations() {
        match transport(r, fix.quiver(), b.quiver()) {
            Some(t) if b.relation_vanishes(&t) => {}
            _ => missing.push(r.display(fix.quiver()).to_string()),
        }
    }
    c.check(missing.is_empty(), format!("fixture relations vanish in the built algebra (failing: {missing:?})"));
    let mut extra = Vec::new();
    for r in b.relations() {
        match transport(r, b.quiver(), fix.quiver()) {
            Some(t) if fix.relation_vanishes(&t) => {}
            _ => extra.push(r.display(b.quiver()).to_string()),
        }
    }
    c.check(extra.is_empty(), format!("built relations vanish in the fixture (failing: {extra:?})"));
    c.check(b.dim() == fix.dim(), format!("dim B = {} built, {} from the fixture", b.dim(), fix.dim()));
    match global_dimension(&b, 8) {
        Ok(d) => c.check(d <= 3, format!("gl.dim B = {d}")),
        Err(e) => c.fail(format!("gl.dim: {e}")),
    }
    c.check(mc.quiver.validate().is_ok(), "final translation quiver is valid");
    let coh = coherence_check(&mc.quiver);
    c.check(coh.passed(), format!("coherent within the window ({} failures)", coh.failures.len()));
    c.check(is_almost_cyclic(&mc.quiver), "acyclic vertices avoid the window boundary");
    c.finish(3, CRITERIA[2].title)
}

fn c4() -> Outcome {
    let mut c = Checker::new();
    let a = fixtures::algebra("FIX-D5t").expect("fixture");
    let mouth: Vec<Representation> =
        ["S6", "S7", "E"].iter().map(|t| mouth_module(&a, t).expect("mouth token")).collect();
    c.check(mouth[2] == fixtures::d5t_e(&a), "E from the mouth token equals the module file");
    for (i, x) in mouth.iter().enumerate() {
        c.check(is_brick(x), format!("mouth module {i} is a brick"));
        for (j, y) in mouth.iter().enumerate() {
            if i != j {
                let d = hom_dim(x, y).unwrap_or(usize::MAX);
                c.check(d == 0, format!("Hom(m{i}, m{j}) = {d}"));
            }
        }
    }
    let q = tits_form(&a).expect("tits form").form;
    let vd = |m: &Representation| m.dims().iter().map(|&x| x as i64).collect::<Vec<i64>>();
    let sum: Vec<i64> = (0..a.vertex_count()).map(|k| mouth.iter().map(|m| m.dims()[k] as i64).sum()).collect();
    c.check(q.evaluate(&sum) == 0, format!("q(delta) = {} for delta = {sum:?}", q.evaluate(&sum)));
    c.note(format!("q(dim E) = {}", q.evaluate(&vd(&mouth[2]))));
    c.check(weak_nonnegativity_box(&q, 6).passed(), "q is weakly nonnegative on the box of size 6");
    c.finish(4, CRITERIA[3].title)
}

/// The random-script grid: rank 1..3, window 6 or 8, ten seeds each.
pub fn sweep() -> Vec<(String, Multicoil)> {
    let mut out = Vec::new();
    for rank in 1..=3 {
        for window in [6, 8] {
            for seed in 0..10u64 {
                let cfg = RandomConfig { max_ops: 5, tube: Some((rank, window)), ..RandomConfig::default() };
                let s = seed * 1000 + (rank * 10 + window) as u64;
                let (script, mc) = random_script(s, &cfg);
                out.push((script.to_string(), mc));
            }
        }
    }
    out
}

fn c5() -> Outcome {
    let mut c = Checker::new();
    let grid = sweep();
    let ops: usize = grid.iter().map(|(_, m)| m.steps.len()).sum();
    c.note(format!("{} scripts, {ops} operations", grid.len()));
    c.check(grid.len() >= 50, "at least 50 scripts");
    let mut bad = BTreeMap::<&str, usize>::new();
    for (_, mc) in &grid {
        let g = &mc.quiver;
        let mut flag = |k: &'static str, ok: bool| {
            if !ok {
                *bad.entry(k).or_default() += 1;
            }
        };
        flag("mesh", g.validate().is_ok());
        flag("ledger", mc.ledger_violations().is_empty());
        flag("accounting", mc.accounting_violations().is_empty());
        flag("cyclic components", cyclic_components_are_sccs(g));
        flag("middle terms", brenner_bound_check(g).passed());
        flag("length", mc.steps.len() <= 5);
    }
    for k in ["mesh", "ledger", "accounting", "cyclic components", "middle terms", "length"] {
        let n = bad.get(k).copied().unwrap_or(0);
        c.check(n == 0, format!("{k}: {n} failing scripts"));
    }
    c.finish(5, CRITERIA[4].title)
}

/// Brute-force count over a tube's index set: `(n, l)` carries the sum of
/// the mouth vectors `n, n+1, ..., n+l-1` read cyclically.
fn coray_oracle(mouth: &[DimVec], window: usize, d: &DimVec) -> usize {
    let r = mouth.len();
    let mut count = 0;
    for n in 0..r {
        for l in 1..=window {
            let mut s = DimVec::new();
            for k in 0..l {
                for (key, v) in &mouth[(n + k) % r] {
                    *s.entry(key.clone()).or_default() += v;
                }
            }
            if &s == d {
                count += 1;
            }
        }
    }
    count
}

fn c6() -> Outcome {
    let mut c = Checker::new();
    let mut over = 0;
    let mut worst = 0;
    let grid = sweep();
    for (_, mc) in &grid {
        let rep = count_bound_check(&mc.quiver, None, 0);
        worst = worst.max(rep.max_count);
        over += rep.over.len();
    }
    c.check(over == 0, format!("random multicoils: no label exceeds n (largest count {worst})"));
    match replay_multicoil() {
        Ok(mc) => {
            let n = mc.algebra.as_ref().map(|a| a.vertex_count());
            let rep = count_bound_check(&mc.quiver, n, 0);
            c.check(rep.over.is_empty(), format!("script multicoil: n = {}, largest count {}", rep.n, rep.max_count));
        }
        Err(e) => c.fail(e),
    }
    let a = fixtures::algebra("FIX-D5t").expect("fixture");
    let window = 10;
    let mouth: Vec<(String, DimVec)> = ["S6", "S7", "E"]
        .iter()
        .map(|t| {
            let m = mouth_module(&a, t).expect("mouth token");
            (t.to_string(), m.dimension_vector())
        })
        .collect();
    let g = build_labeled_tube(&mouth, window);
    let vecs: Vec<DimVec> = mouth.iter().map(|(_, d)| d.clone()).collect();
    let labels: BTreeSet<DimVec> = (0..g.len()).filter_map(|x| g.label(x).cloned()).collect();
    let mismatched =
        labels.iter().filter(|d| count_by_dimvector(&g, d).len() != coray_oracle(&vecs, window, d)).count();
    c.check(mismatched == 0, format!("stable tube: counts match the coray oracle on {} labels", labels.len()));
    let delta: DimVec = vecs.iter().fold(DimVec::new(), |acc, d| crate::reps::dimvec_add(&acc, d));
    let k = count_by_dimvector(&g, &delta).len();
    c.check(k == 3 && k <= a.vertex_count(), format!("{k} vertices of dimension delta, n = {}", a.vertex_count()));
    c.check(count_by_dimvector(&g, &vecs[2]).len() == 1, "one vertex of dimension dim E");
    let tube_rep = count_bound_check(&g, Some(a.vertex_count()), 0);
    c.check(tube_rep.over.is_empty(), "stable tube respects the bound");
    c.finish(6, CRITERIA[5].title)
}

fn c7() -> Outcome {
    let mut c = Checker::new();
    let a = fixtures::algebra("FIX-A2").expect("fixture");
    let (p1, s1, s2) = (projective(&a, 0), simple(&a, 0), simple(&a, 1));
    let n = s1.direct_sum(&s2).expect("same algebra");
    let family = [s1.clone(), s2.clone(), p1.clone()];
    match hom_order(&p1, &n, &family) {
        Ok(v) => {
            c.check(v.order == HomOrder::Leq, format!("P1 {} S1+S2 (profiles {:?})", v.order, v.covariant));
            c.check(v.profiles_agree, "covariant and contravariant profiles agree");
        }
        Err(e) => c.fail(e.to_string()),
    }
    match finite_type_deg_order(&p1, &n, &family, CompleteList) {
        Ok(v) => c.check(v.degenerates, format!("P1 <=_deg S1+S2 ({})", v.provenance)),
        Err(e) => c.fail(e.to_string()),
    }
    let (op, on) = (orbit_dimension(&p1), orbit_dimension(&n));
    c.check(op == 1 && on == 0, format!("dim O(P1) = {op}, dim O(S1+S2) = {on}"));
    c.finish(7, CRITERIA[6].title)
}

fn euler_vs_ext(c: &mut Checker, a: &Algebra, label: &str, ms: &[Representation], cap: usize) -> usize {
    let chi = match euler_form(a, cap) {
        Ok(f) => f,
        Err(e) => {
            c.fail(format!("{label}: {e}"));
            return 0;
        }
    };
    let mut n = 0;
    for m in ms {
        let x: Vec<i64> = m.dims().iter().map(|&v| v as i64).collect();
        let lhs = chi.evaluate(&x);
        let rhs = crate::analysis::alternating_ext_sum(m, cap);
        let ok = rhs.as_ref().is_ok_and(|r| *r == lhs);
        c.check(ok, format!("{label} {x:?}: chi = {lhs}, alternating Ext sum = {rhs:?}"));
        n += 1;
    }
    n
}

fn standard_modules(a: &Algebra) -> Vec<Representation> {
    let n = a.vertex_count();
    let mut out: Vec<Representation> = Vec::new();
    for i in 0..n {
        for m in [simple(a, i), projective(a, i), injective(a, i)] {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// The module of dimension `delta` in the rank-3 tube with quasi-socle `S6`.
pub fn d5t_delta_module(a: &Algebra) -> Representation {
    use crate::linalg::Matrix;
    let maps = vec![
        Matrix::from_i64(1, 2, &[1, 0]),
        Matrix::from_i64(1, 2, &[1, 0]),
        Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
        Matrix::from_i64(2, 1, &[0, 1]),
        Matrix::from_i64(2, 1, &[1, 1]),
    ];
    Representation::new(a.clone(), vec![1, 1, 2, 2, 1, 1], maps).expect("module")
}

fn c8() -> Outcome {
    let mut c = Checker::new();
    let mut total = 0;
    for (name, cap) in [("FIX-A2", 3), ("FIX-D5t", 3), ("FIX-B8", 5)] {
        let a = fixtures::algebra(name).expect("fixture");
        let mut ms = standard_modules(&a);
        if name == "FIX-D5t" {
            ms.push(fixtures::d5t_e(&a));
            ms.push(d5t_delta_module(&a));
        }
        total += euler_vs_ext(&mut c, &a, name, &ms, cap);
    }
    c.check(total >= 10, format!("{total} modules checked"));
    match replay_multicoil() {
        Ok(mc) => {
            let b = mc.algebra.clone().expect("algebra");
            let mut reps: Vec<(&String, &Representation)> = mc.reps.iter().collect();
            reps.sort_by_key(|(id, m)| (m.total_dim(), (*id).clone()));
            let mut checked = 0;
            let step = (reps.len() / 12).max(1);
            for (id, m) in reps.into_iter().step_by(step).take(12) {
                match variety_dimension_formulas(&b, m, 8) {
                    Ok(r) => {
                        c.check(
                            r.tits_euler_chain(),
                            format!(
                                "{id}: q = {} >= chi = {} = End {} - Ext1 {} (Ext2 {})",
                                r.tits, r.euler, r.end, r.ext1, r.ext2
                            ),
                        );
                        checked += 1;
                    }
                    Err(e) => c.fail(format!("{id}: {e}")),
                }
            }
            c.check(checked > 0, format!("{checked} multicoil modules checked"));
        }
        Err(e) => c.fail(e),
    }
    c.finish(8, CRITERIA[7].title)
}

fn c9() -> Outcome {
    let mut c = Checker::new();
    match fixtures::algebra("FIX-NC") {
        Ok(a) => c.check(a.is_triangular() && a.vertex_count() == 7, "FIX-NC loads and validates"),
        Err(e) => c.fail(e),
    }
    let bad = UnitForm::new(vec!["1".into(), "2".into()], vec![vec![1, -3], vec![0, 1]]);
    c.check(!weak_nonnegativity_box(&bad, 3).passed(), "x^2 + y^2 - 3xy is caught by the box search");
    let mut g = build_stable_tube(2, 4);
    let (s, t) = (g.index("(0,2)").unwrap(), g.index("(1,1)").unwrap());
    g.remove_arrow(s, t);
    c.check(g.validate().is_err(), "a tube with a missing arrow fails the mesh check");
    c.check(crate::io::parse_algebra("").is_err(), "an empty algebra file is rejected");
    c.finish(9, CRITERIA[8].title)
}

/// Per-criterion reasons a criterion is known to fail on the transcribed data.
pub const KNOWN_DEVIATIONS: &[(usize, &str)] = &[(
    3,
    "the construction yields the arrow 0 -> 1 where the example's quiver has 1 -> 0; every coextension step adds arrows into the new vertex",
)];
