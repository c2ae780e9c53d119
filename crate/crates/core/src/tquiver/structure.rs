use std::collections::{BTreeSet, HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use super::TranslationQuiver;

/// `x_i != tau x_{i+2}` along the vertex sequence.
pub fn is_sectional(g: &TranslationQuiver, path: &[usize]) -> bool {
    path.windows(2).all(|w| g.has_arrow(w[0], w[1])) && path.windows(3).all(|w| g.tau(w[2]) != Some(w[0]))
}

/// Shortest sectional path from `x` to a boundary vertex, if any.
pub fn sectional_path_to_boundary(g: &TranslationQuiver, x: usize) -> Option<Vec<usize>> {
    if g.is_boundary(x) {
        return Some(vec![x]);
    }
    let mut parent: HashMap<(usize, usize), Option<(usize, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &y in g.succs(x) {
        if parent.insert((x, y), None).is_none() {
            queue.push_back((x, y));
        }
    }
    while let Some((p, c)) = queue.pop_front() {
        if g.is_boundary(c) {
            let mut path = vec![c];
            let mut state = Some((p, c));
            while let Some((a, _)) = state {
                path.push(a);
                state = parent[&state.unwrap()];
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.succs(c) {
            if g.tau(y) == Some(p) {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry((c, y)) {
                e.insert(Some((p, c)));
                queue.push_back((c, y));
            }
        }
    }
    None
}

/// Shortest sectional path from a boundary vertex to `x`, if any.
pub fn sectional_path_from_boundary(g: &TranslationQuiver, x: usize) -> Option<Vec<usize>> {
    let mut p = sectional_path_to_boundary(&g.reversed(), x)?;
    p.reverse();
    Some(p)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    /// Projective or injective vertex with its boundary-reaching sectional path.
    pub witnesses: Vec<(usize, Vec<usize>)>,
    /// Vertices without such a path.
    pub failures: Vec<usize>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every projective starts and every injective ends a sectional path
/// meeting the boundary.
pub fn coherence_check(g: &TranslationQuiver) -> CoherenceReport {
    let mut rep = CoherenceReport::default();
    for x in 0..g.len() {
        if g.is_boundary(x) {
            continue;
        }
        if g.is_proj(x) {
            match sectional_path_to_boundary(g, x) {
                Some(p) => rep.witnesses.push((x, p)),
                None => rep.failures.push(x),
            }
        }
        if g.is_inj(x) {
            match sectional_path_from_boundary(g, x) {
                Some(p) => rep.witnesses.push((x, p)),
                None => rep.failures.push(x),
            }
        }
    }
    rep.failures.dedup();
    rep
}

/// Non-boundary vertices with exactly one immediate predecessor.
pub fn mouth(g: &TranslationQuiver) -> Vec<usize> {
    (0..g.len()).filter(|&x| !g.is_boundary(x) && g.preds(x).len() == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeKind {
    Stable,
    Ray,
    Coray,
    Neither,
}

pub fn classify_tube(g: &TranslationQuiver) -> TubeKind {
    let inner = (0..g.len()).filter(|&x| !g.is_boundary(x));
    let (mut p, mut i) = (false, false);
    for x in inner {
        p |= g.is_proj(x);
        i |= g.is_inj(x);
    }
    match (p, i) {
        (false, false) => TubeKind::Stable,
        (true, false) => TubeKind::Ray,
        (false, true) => TubeKind::Coray,
        (true, true) => TubeKind::Neither,
    }
}

fn digraph(g: &TranslationQuiver) -> DiGraph<(), ()> {
    let mut d = DiGraph::new();
    let nodes: Vec<_> = (0..g.len()).map(|_| d.add_node(())).collect();
    for (s, t) in g.arrows() {
        d.add_edge(nodes[s], nodes[t], ());
    }
    d
}

/// Strongly connected components that carry an oriented cycle, each sorted.
pub fn scc_cyclic(g: &TranslationQuiver) -> Vec<Vec<usize>> {
    let d = digraph(g);
    let mut out: Vec<Vec<usize>> = tarjan_scc(&d)
        .into_iter()
        .map(|c| c.into_iter().map(|n| n.index()).collect::<Vec<_>>())
        .filter(|c| c.len() > 1 || g.has_arrow(c[0], c[0]))
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

/// Vertices lying on an oriented cycle.
pub fn cyclic_vertices(g: &TranslationQuiver) -> Vec<usize> {
    let mut v: Vec<usize> = scc_cyclic(g).into_iter().flatten().collect();
    v.sort_unstable();
    v
}

pub fn cyclic_part(g: &TranslationQuiver) -> TranslationQuiver {
    let keep: BTreeSet<usize> = cyclic_vertices(g).into_iter().collect();
    let drop: Vec<usize> = (0..g.len()).filter(|x| !keep.contains(x)).collect();
    g.remove_vertices(&drop)
}

/// Connected components of the cyclic part, as vertex sets of `g`.
pub fn cyclic_components(g: &TranslationQuiver) -> Vec<Vec<usize>> {
    let cyc = cyclic_vertices(g);
    let inside: BTreeSet<usize> = cyc.iter().copied().collect();
    let mut uf = UnionFind::<usize>::new(g.len());
    for (s, t) in g.arrows() {
        if inside.contains(&s) && inside.contains(&t) {
            uf.union(s, t);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for &x in &cyc {
        groups.entry(uf.find(x)).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Cyclic components coincide with the cyclic strongly connected components.
pub fn cyclic_components_are_sccs(g: &TranslationQuiver) -> bool {
    cyclic_components(g) == scc_cyclic(g)
}

/// Acyclic vertices of the window; the window is almost cyclic when none of
/// them is a boundary vertex.
pub fn acyclic_vertices(g: &TranslationQuiver) -> Vec<usize> {
    let cyc: BTreeSet<usize> = cyclic_vertices(g).into_iter().collect();
    (0..g.len()).filter(|x| !cyc.contains(x)).collect()
}

pub fn is_almost_cyclic(g: &TranslationQuiver) -> bool {
    acyclic_vertices(g).iter().all(|&x| !g.is_boundary(x))
}

/// Union of the supports of the labels on `subset`.
pub fn support_of_subquiver(g: &TranslationQuiver, subset: &[usize]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for &x in subset {
        if let Some(d) = g.label(x) {
            out.extend(d.iter().filter(|(_, &n)| n != 0).map(|(k, _)| k.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tquiver::{build_stable_tube, TVertex};

    #[test]
    fn tube_is_stable_cyclic_and_coherent() {
        let g = build_stable_tube(3, 5);
        assert_eq!(classify_tube(&g), TubeKind::Stable);
        assert_eq!(mouth(&g).len(), 3);
        assert_eq!(cyclic_vertices(&g).len(), 15);
        assert!(cyclic_components_are_sccs(&g));
        assert!(coherence_check(&g).passed());
        assert!(is_almost_cyclic(&g));
        let p = sectional_path_to_boundary(&g, 0).unwrap();
        assert_eq!(p.len(), 5);
        assert!(is_sectional(&g, &p));
    }

    #[test]
    fn two_tubes_give_two_components() {
        let g = build_stable_tube(2, 3);
        let mut h = build_stable_tube(1, 3);
        for x in 0..h.len() {
            let id = format!("b{}", h.id(x));
            h.rename(x, id).unwrap();
        }
        let u = g.disjoint_union(&h).unwrap();
        assert_eq!(cyclic_components(&u).len(), 2);
        assert!(cyclic_components_are_sccs(&u));
    }

    #[test]
    fn cyclic_part_is_idempotent() {
        let g = build_stable_tube(2, 4);
        let c = cyclic_part(&g);
        assert_eq!(cyclic_part(&c), c);
    }

    #[test]
    fn cut_ray_breaks_coherence() {
        let mut g = TranslationQuiver::new();
        let mut p = TVertex::new("p");
        p.proj = true;
        let a = g.add_vertex(p).unwrap();
        let b = g.add_vertex(TVertex::new("b")).unwrap();
        g.add_arrow(a, b);
        g.set_tau(b, a);
        let rep = coherence_check(&g);
        assert_eq!(rep.failures, vec![a]);
    }

    #[test]
    fn linear_window_has_no_cycles() {
        let mut g = TranslationQuiver::new();
        for k in 0..4 {
            g.add_vertex(TVertex::new(format!("v{k}"))).unwrap();
        }
        for k in 0..3 {
            g.add_arrow(k, k + 1);
        }
        assert!(cyclic_part(&g).is_empty());
    }
}
