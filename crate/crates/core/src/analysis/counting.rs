use std::collections::{BTreeMap, BTreeSet};

use crate::reps::DimVec;
use crate::tquiver::TranslationQuiver;

/// Number of middle terms of the almost split sequence ending at `x`, read
/// off as the number of arrows into `x`. `None` when `x` is projective, sits
/// on the boundary or has no recorded translate.
pub fn middle_term_count(g: &TranslationQuiver, x: usize) -> Option<usize> {
    if g.is_proj(x) || g.is_boundary(x) || g.tau(x).is_none() {
        return None;
    }
    Some(g.preds(x).len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrennerReport {
    /// `(vertex, s)` for every vertex with `s >= 5`.
    pub large: Vec<(usize, usize)>,
    pub failures: Vec<usize>,
    pub max_s: usize,
}

impl BrennerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `s(X) <= 5` everywhere, and `s(X) = 5` only with a projective-injective
/// middle term.
pub fn brenner_bound_check(g: &TranslationQuiver) -> BrennerReport {
    let mut rep = BrennerReport { large: Vec::new(), failures: Vec::new(), max_s: 0 };
    for x in 0..g.len() {
        let Some(s) = middle_term_count(g, x) else { continue };
        rep.max_s = rep.max_s.max(s);
        if s >= 5 {
            rep.large.push((x, s));
        }
        let pi = g.preds(x).iter().any(|&y| g.is_proj(y) && g.is_inj(y));
        if s > 5 || (s == 5 && !pi) {
            rep.failures.push(x);
        }
    }
    rep
}

/// Vertices whose label equals `d`. A zero `d` matches nothing.
pub fn count_by_dimvector(g: &TranslationQuiver, d: &DimVec) -> Vec<usize> {
    let d: DimVec = d.iter().filter(|(_, &n)| n != 0).map(|(k, &n)| (k.clone(), n)).collect();
    if d.is_empty() {
        return Vec::new();
    }
    (0..g.len())
        .filter(|&x| {
            g.label(x).is_some_and(|l| {
                let l: DimVec = l.iter().filter(|(_, &n)| n != 0).map(|(k, &n)| (k.clone(), n)).collect();
                l == d
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    /// Number of support vertices of the labels.
    pub n: usize,
    /// Labels occurring more than once, with their vertices.
    pub repeated: BTreeMap<String, Vec<usize>>,
    pub max_count: usize,
    /// Labels whose count exceeds `n`.
    pub over: Vec<String>,
}

/// Count every occurring label and compare with the support rank `n`, or
/// `n + slack` when given.
pub fn count_bound_check(g: &TranslationQuiver, n: Option<usize>, slack: usize) -> CountReport {
    let mut by: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut support = BTreeSet::new();
    for x in 0..g.len() {
        if let Some(l) = g.label(x) {
            let l: DimVec = l.iter().filter(|(_, &n)| n != 0).map(|(k, &n)| (k.clone(), n)).collect();
            support.extend(l.keys().cloned());
            if !l.is_empty() {
                by.entry(crate::reps::format_dimvec(&l)).or_default().push(x);
            }
        }
    }
    let n = n.unwrap_or(support.len());
    let max_count = by.values().map(Vec::len).max().unwrap_or(0);
    let over = by.iter().filter(|(_, v)| v.len() > n + slack).map(|(k, _)| k.clone()).collect();
    let repeated = by.into_iter().filter(|(_, v)| v.len() > 1).collect();
    CountReport { n, repeated, max_count, over }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tquiver::{build_labeled_tube, build_stable_tube, TVertex};

    #[test]
    fn tube_middle_terms() {
        let g = build_stable_tube(3, 6);
        assert_eq!(middle_term_count(&g, g.index("(0,1)").unwrap()), Some(1));
        assert_eq!(middle_term_count(&g, g.index("(0,3)").unwrap()), Some(2));
        let r = brenner_bound_check(&g);
        assert!(r.passed());
        assert_eq!(r.max_s, 2);
    }

    #[test]
    fn six_arrows_fail_the_bound() {
        let proj = |id: String| {
            let mut v = TVertex::new(id);
            v.proj = true;
            v
        };
        let mut g = TranslationQuiver::new();
        let t = g.add_vertex(proj("t".into())).unwrap();
        let x = g.add_vertex(TVertex::new("x")).unwrap();
        for k in 0..6 {
            let y = g.add_vertex(proj(format!("y{k}"))).unwrap();
            g.add_arrow(t, y);
            g.add_arrow(y, x);
        }
        g.set_tau(x, t);
        g.validate().unwrap();
        let r = brenner_bound_check(&g);
        assert_eq!(r.failures, vec![x]);
    }

    fn unit(k: &str) -> DimVec {
        DimVec::from([(k.to_string(), 1)])
    }

    #[test]
    fn counts_in_a_labeled_tube() {
        let mouth: Vec<(String, DimVec)> = ["a", "b", "c"].iter().map(|k| (k.to_string(), unit(k))).collect();
        let g = build_labeled_tube(&mouth, 7);
        let delta: DimVec = ["a", "b", "c"].iter().map(|k| (k.to_string(), 1)).collect();
        assert_eq!(count_by_dimvector(&g, &delta).len(), 3);
        assert_eq!(count_by_dimvector(&g, &unit("a")).len(), 1);
        assert!(count_by_dimvector(&g, &DimVec::new()).is_empty());
        let rep = count_bound_check(&g, None, 0);
        assert_eq!(rep.n, 3);
        assert!(rep.over.is_empty());
    }
}
