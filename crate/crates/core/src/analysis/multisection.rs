use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::AnalysisError;
use crate::tquiver::{cyclic_vertices, TranslationQuiver};

pub type VSet = BTreeSet<usize>;

/// A multisection `Delta` of a finite component and its derived parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisectionParts {
    pub delta: VSet,
    pub l_prime: VSet,
    pub r_prime: VSet,
    pub l_second: VSet,
    pub r_second: VSet,
    pub left: VSet,
    pub core: VSet,
    pub right: VSet,
}

impl MultisectionParts {
    pub fn ids(g: &TranslationQuiver, s: &VSet) -> BTreeSet<String> {
        s.iter().map(|&v| g.id(v).to_string()).collect()
    }
}

/// Arrows as `(source, target)` pairs indexed once per parallel copy.
struct Arrows {
    out: Vec<Vec<(usize, usize)>>,
    count: usize,
}

impl Arrows {
    fn new(g: &TranslationQuiver) -> Self {
        let mut out = vec![Vec::new(); g.len()];
        let mut count = 0;
        for x in 0..g.len() {
            for &y in g.succs(x) {
                out[x].push((count, y));
                count += 1;
            }
        }
        Arrows { out, count }
    }
}

/// Is there a nonsectional path from `x` to some vertex accepted by `goal`?
/// Paths never reuse an arrow; explored states are memoized.
fn nonsectional_path_to(g: &TranslationQuiver, arrows: &Arrows, x: usize, goal: &dyn Fn(usize) -> bool) -> bool {
    struct Search<'a> {
        g: &'a TranslationQuiver,
        arrows: &'a Arrows,
        goal: &'a dyn Fn(usize) -> bool,
        seen: HashSet<(usize, Option<usize>, bool, Vec<u64>)>,
    }
    impl Search<'_> {
        fn go(&mut self, cur: usize, prev: Option<usize>, bent: bool, used: &mut Vec<u64>) -> bool {
            if bent && (self.goal)(cur) {
                return true;
            }
            if !self.seen.insert((cur, prev, bent, used.clone())) {
                return false;
            }
            for &(a, y) in &self.arrows.out[cur] {
                let (w, bit) = (a / 64, 1u64 << (a % 64));
                if used[w] & bit != 0 {
                    continue;
                }
                let now_bent = bent || prev.is_some_and(|p| self.g.tau(y) == Some(p));
                used[w] |= bit;
                let found = self.go(y, Some(cur), now_bent, used);
                used[w] &= !bit;
                if found {
                    return true;
                }
            }
            false
        }
    }
    let mut s = Search { g, arrows, goal, seen: HashSet::new() };
    let mut used = vec![0u64; arrows.count.div_ceil(64)];
    s.go(x, None, false, &mut used)
}

/// `Delta'_l`, `Delta'_r` and everything derived from them, without checking
/// the axioms.
pub fn compute_parts(g: &TranslationQuiver, delta: &VSet) -> MultisectionParts {
    let fwd = Arrows::new(g);
    let rev = g.reversed();
    let bwd = Arrows::new(&rev);
    let l_prime: VSet =
        delta.iter().copied().filter(|&x| nonsectional_path_to(g, &fwd, x, &|y| g.is_proj(y))).collect();
    // paths ending at x from an injective, searched backwards
    let r_prime: VSet =
        delta.iter().copied().filter(|&x| nonsectional_path_to(&rev, &bwd, x, &|y| g.is_inj(y))).collect();
    let l_second: VSet =
        l_prime.iter().copied().filter(|&x| g.tau_inv(x).is_none_or(|y| !l_prime.contains(&y))).collect();
    let r_second: VSet = r_prime.iter().copied().filter(|&x| g.tau(x).is_none_or(|y| !r_prime.contains(&y))).collect();
    let mut left: VSet = delta.difference(&r_prime).copied().collect();
    left.extend(r_second.iter().filter_map(|&x| g.tau(x)));
    let mut right: VSet = delta.difference(&l_prime).copied().collect();
    right.extend(l_second.iter().filter_map(|&x| g.tau_inv(x)));
    let core = l_prime.intersection(&r_prime).copied().collect();
    MultisectionParts { delta: delta.clone(), l_prime, r_prime, l_second, r_second, left, core, right }
}

fn reach(g: &TranslationQuiver, from: &VSet, forward: bool) -> VSet {
    let mut seen = from.clone();
    let mut queue: VecDeque<usize> = from.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        let next = if forward { g.succs(x) } else { g.preds(x) };
        for &y in next {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn is_connected(g: &TranslationQuiver, s: &VSet) -> bool {
    let Some(&start) = s.iter().next() else { return false };
    let mut seen = VSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in g.succs(x).iter().chain(g.preds(x)) {
            if s.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() == s.len()
}

/// Vertices on a path between two members of `s` that are not in `s`.
fn convexity_gaps(g: &TranslationQuiver, s: &VSet) -> VSet {
    let f = reach(g, s, true);
    let b = reach(g, s, false);
    f.intersection(&b).filter(|x| !s.contains(x)).copied().collect()
}

/// The tau-orbits of the window, each sorted.
pub fn tau_orbits(g: &TranslationQuiver) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for x in 0..g.len() {
        if seen[x] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x] = true;
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for z in [g.tau(y), g.tau_inv(y)].into_iter().flatten() {
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                    queue.push(z);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn not_ms(axiom: &'static str, detail: String) -> AnalysisError {
    AnalysisError::NotAMultisection { axiom, detail }
}

/// Axioms (i)-(iv) together with fullness and connectedness. On a finite
/// window (i) and (iv) hold for every subset.
fn check_shape(g: &TranslationQuiver, delta: &VSet, orbits: &[Vec<usize>]) -> Result<(), AnalysisError> {
    let names = |s: &VSet| s.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>().join(", ");
    if !is_connected(g, delta) {
        return Err(not_ms("connected", "the subquiver is empty or disconnected".into()));
    }
    let gaps = convexity_gaps(g, delta);
    if !gaps.is_empty() {
        return Err(not_ms("ii", format!("paths pass through {}", names(&gaps))));
    }
    if let Some(o) = orbits.iter().find(|o| !o.iter().any(|x| delta.contains(x))) {
        return Err(not_ms("iii", format!("the orbit of `{}` is missed", g.id(o[0]))));
    }
    Ok(())
}

/// Check the multisection axioms on a finite component. Minimality is
/// tested by single-vertex removal only.
pub fn check_multisection(g: &TranslationQuiver, delta: &VSet) -> Result<(), AnalysisError> {
    let orbits = tau_orbits(g);
    check_shape(g, delta, &orbits)?;
    for &v in delta {
        let mut smaller = delta.clone();
        smaller.remove(&v);
        if check_shape(g, &smaller, &orbits).is_ok() {
            return Err(not_ms("v", format!("still a multisection without `{}`", g.id(v))));
        }
    }
    Ok(())
}

pub fn multisection_parts(g: &TranslationQuiver, delta: &VSet) -> Result<MultisectionParts, AnalysisError> {
    check_multisection(g, delta)?;
    Ok(compute_parts(g, delta))
}

/// Resolve vertex ids into a vertex set.
pub fn vertex_set(g: &TranslationQuiver, ids: &[&str]) -> Result<VSet, AnalysisError> {
    ids.iter().map(|id| g.index(id).ok_or_else(|| AnalysisError::UnknownVertex(id.to_string()))).collect()
}

/// Placement of vertices relative to a multisection: every cycle lies in
/// the core, and every vertex is in the core, a predecessor of the left part
/// or a successor of the right part.
pub fn placement_violations(g: &TranslationQuiver, parts: &MultisectionParts) -> Vec<String> {
    let mut out = Vec::new();
    for x in cyclic_vertices(g) {
        if !parts.core.contains(&x) {
            out.push(format!("`{}` lies on a cycle outside the core", g.id(x)));
        }
    }
    let preds_of_left = reach(g, &parts.left, false);
    let succs_of_right = reach(g, &parts.right, true);
    for x in 0..g.len() {
        if !parts.core.contains(&x) && !preds_of_left.contains(&x) && !succs_of_right.contains(&x) {
            out.push(format!("`{}` is not placed by the left, core or right part", g.id(x)));
        }
    }
    out
}

/// All multisections of a small window, found by choosing a nonempty subset
/// of every tau-orbit. `None` if the window or the search space is too large.
pub fn find_multisections(g: &TranslationQuiver, max_vertices: usize, max_candidates: u64) -> Option<Vec<VSet>> {
    if g.len() > max_vertices {
        return None;
    }
    let orbits = tau_orbits(g);
    let mut space: u64 = 1;
    for o in &orbits {
        if o.len() >= 63 {
            return None;
        }
        space = space.checked_mul((1u64 << o.len()) - 1)?;
    }
    if space > max_candidates {
        return None;
    }
    let mut choice = vec![1u64; orbits.len()];
    let mut out = Vec::new();
    loop {
        let delta: VSet = orbits
            .iter()
            .zip(&choice)
            .flat_map(|(o, &m)| o.iter().enumerate().filter(move |(k, _)| m >> k & 1 == 1).map(|(_, &v)| v))
            .collect();
        if check_multisection(g, &delta).is_ok() {
            out.push(delta);
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == orbits.len() {
                return Some(out);
            }
            choice[k] += 1;
            if choice[k] < 1u64 << orbits[k].len() {
                break;
            }
            choice[k] = 1;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b8_component, B8_DELTA};
    use crate::tquiver::TVertex;

    fn ids(g: &TranslationQuiver, s: &VSet) -> BTreeSet<String> {
        MultisectionParts::ids(g, s)
    }

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn b8_parts_match_the_worked_example() {
        let g = b8_component();
        let delta = vertex_set(&g, B8_DELTA).unwrap();
        let p = multisection_parts(&g, &delta).unwrap();
        assert_eq!(ids(&g, &p.left), set(&["I1", "I2", "I3", "I4", "S5", "P6"]));
        assert_eq!(ids(&g, &p.right), set(&["I6", "S7", "P8"]));
        assert_eq!(ids(&g, &p.core), set(&["S6", "P7", "P7/S6", "R", "I5"]));
        assert!(placement_violations(&g, &p).is_empty());
    }

    /// A linear section `a -> b -> c` with no translation.
    fn line() -> TranslationQuiver {
        let mut g = TranslationQuiver::new();
        for (k, id) in ["a", "b", "c"].iter().enumerate() {
            let mut v = TVertex::new(*id);
            v.proj = k == 0;
            v.inj = k == 2;
            g.add_vertex(v).unwrap();
        }
        g.add_arrow(0, 1);
        g.add_arrow(1, 2);
        g
    }

    #[test]
    fn a_section_has_empty_core() {
        let g = line();
        let all: VSet = (0..3).collect();
        let p = multisection_parts(&g, &all).unwrap();
        assert!(p.core.is_empty());
        assert_eq!(p.left, all);
        assert_eq!(p.right, all);
    }

    #[test]
    fn axiom_failures_are_named() {
        let g = b8_component();
        let mut delta = vertex_set(&g, B8_DELTA).unwrap();
        delta.remove(&g.index("I1").unwrap());
        let err = multisection_parts(&g, &delta).unwrap_err();
        assert!(matches!(err, AnalysisError::NotAMultisection { axiom: "iii", .. }), "{err}");
        let mut delta = vertex_set(&g, B8_DELTA).unwrap();
        delta.remove(&g.index("R").unwrap());
        let err = multisection_parts(&g, &delta).unwrap_err();
        assert!(matches!(err, AnalysisError::NotAMultisection { axiom: "ii", .. }), "{err}");
        let mut delta = vertex_set(&g, B8_DELTA).unwrap();
        delta.insert(g.index("tS5").unwrap());
        let err = multisection_parts(&g, &delta).unwrap_err();
        assert!(matches!(err, AnalysisError::NotAMultisection { axiom: "v", .. }), "{err}");
    }

    #[test]
    fn every_multisection_of_b8_has_the_same_core() {
        let g = b8_component();
        let found = find_multisections(&g, 40, 1 << 22).unwrap();
        assert!(!found.is_empty());
        let given = vertex_set(&g, B8_DELTA).unwrap();
        assert!(found.contains(&given));
        let core = compute_parts(&g, &given).core;
        for d in &found {
            assert_eq!(compute_parts(&g, d).core, core, "{:?}", ids(&g, d));
        }
    }
}
