use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with opaque string ids.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vmap: HashMap<String, usize>,
    amap: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, AlgebraError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver { vertices: Vec::new(), arrows: Vec::new(), vmap: HashMap::new(), amap: HashMap::new() };
        for v in vertices {
            q.add_vertex(v.into())?;
        }
        for (id, s, t) in arrows {
            q.add_arrow(id, &s, &t)?;
        }
        Ok(q)
    }

    pub fn empty() -> Self {
        Quiver { vertices: Vec::new(), arrows: Vec::new(), vmap: HashMap::new(), amap: HashMap::new() }
    }

    pub fn add_vertex(&mut self, id: String) -> Result<usize, AlgebraError> {
        if self.vmap.contains_key(&id) {
            return Err(AlgebraError::DuplicateId(id));
        }
        self.vmap.insert(id.clone(), self.vertices.len());
        self.vertices.push(id);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, id: String, source: &str, target: &str) -> Result<usize, AlgebraError> {
        if self.amap.contains_key(&id) {
            return Err(AlgebraError::DuplicateId(id));
        }
        let s = self.vertex_index(source).ok_or_else(|| AlgebraError::UnknownVertex(source.into()))?;
        let t = self.vertex_index(target).ok_or_else(|| AlgebraError::UnknownVertex(target.into()))?;
        self.amap.insert(id.clone(), self.arrows.len());
        self.arrows.push(Arrow { id, source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vmap.get(id).copied()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.amap.get(id).copied()
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    pub fn arrow_count_between(&self, s: usize, t: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == s && a.target == t).count()
    }

    /// Some vertex on an oriented cycle, if any.
    pub fn find_cycle_vertex(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.out_arrows(v) {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (seen < n).then(|| (0..n).find(|&v| indeg[v] > 0).unwrap())
    }

    /// Length of the longest path, or `None` on a quiver with oriented cycles.
    pub fn longest_path_len(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut depth = vec![0usize; n];
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.out_arrows(v) {
                let t = self.arrows[a].target;
                depth[t] = depth[t].max(depth[v] + 1);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle_vertex().is_none()
    }

    /// Vertices reachable from `start` by paths of length >= 0.
    pub fn reachable_from(&self, start: usize) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for a in self.out_arrows(v) {
                let t = self.arrows[a].target;
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
                .collect(),
            vmap: self.vmap.clone(),
            amap: self.amap.clone(),
        }
    }

    pub fn disjoint_union(&self, other: &Quiver) -> Result<Quiver, AlgebraError> {
        let mut q = self.clone();
        for v in &other.vertices {
            q.add_vertex(v.clone())?;
        }
        for a in &other.arrows {
            q.add_arrow(a.id.clone(), &other.vertices[a.source], &other.vertices[a.target])?;
        }
        Ok(q)
    }

    /// Full subquiver on the given vertex indices (in the given order).
    pub fn full_subquiver(&self, subset: &[usize]) -> Quiver {
        let keep: HashSet<usize> = subset.iter().copied().collect();
        let mut q = Quiver::empty();
        for &v in subset {
            q.add_vertex(self.vertices[v].clone()).expect("distinct vertices");
        }
        for a in &self.arrows {
            if keep.contains(&a.source) && keep.contains(&a.target) {
                q.add_arrow(a.id.clone(), &self.vertices[a.source], &self.vertices[a.target]).expect("fresh arrow");
            }
        }
        q
    }

    /// True when every path between vertices of `subset` stays inside it.
    pub fn is_convex(&self, subset: &[usize]) -> bool {
        let inside: HashSet<usize> = subset.iter().copied().collect();
        let mut from_inside = HashSet::new();
        for &v in subset {
            from_inside.extend(self.reachable_from(v));
        }
        let rev = self.opposite();
        let mut to_inside = HashSet::new();
        for &v in subset {
            to_inside.extend(rev.reachable_from(v));
        }
        !from_inside.iter().any(|v| !inside.contains(v) && to_inside.contains(v))
    }

    /// A fresh id not yet used by a vertex or arrow.
    pub fn fresh_id(&self, base: &str) -> String {
        if !self.vmap.contains_key(base) && !self.amap.contains_key(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}#{k}"))
            .find(|c| !self.vmap.contains_key(c) && !self.amap.contains_key(c))
            .unwrap()
    }
}

/// A path, stored as arrow indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = *arrows.first()?;
        let start = q.arrow(first).source;
        let mut end = start;
        for &a in &arrows {
            if q.arrow(a).source != end {
                return None;
            }
            end = q.arrow(a).target;
        }
        Some(Path { start, end, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    pub fn then_arrow(&self, q: &Quiver, a: usize) -> Option<Path> {
        let arr = q.arrow(a);
        if arr.source != self.end {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Some(Path { start: self.start, end: arr.target, arrows })
    }

    pub fn reversed(&self) -> Path {
        Path { start: self.end, end: self.start, arrows: self.arrows.iter().rev().copied().collect() }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }

    /// Order used to pick leading terms: longer first, then reverse lexicographic.
    pub(crate) fn degree_key(&self) -> (usize, &[usize]) {
        (self.arrows.len(), &self.arrows)
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            write!(f, "e{}", self.quiver.vertex_id(self.path.start))
        } else {
            let ids: Vec<&str> = self.path.arrows.iter().map(|&a| self.quiver.arrow(a).id.as_str()).collect();
            write!(f, "{}", ids.join(" "))
        }
    }
}

/// All paths of length <= `cap`, grouped as `out[start][end]`.
pub fn enumerate_paths(q: &Quiver, cap: usize) -> Vec<Vec<Vec<Path>>> {
    let n = q.vertex_count();
    let mut out = vec![vec![Vec::new(); n]; n];
    let mut frontier: Vec<Path> = (0..n).map(Path::trivial).collect();
    for len in 0..=cap {
        let mut next = Vec::new();
        for p in frontier {
            if len < cap {
                for a in q.out_arrows(p.end) {
                    next.push(p.then_arrow(q, a).unwrap());
                }
            }
            out[p.start][p.end].push(p);
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(
            ["1", "2", "3"],
            vec![("a".into(), "1".into(), "2".into()), ("b".into(), "2".into(), "3".into())],
        )
        .unwrap()
    }

    #[test]
    fn convexity_by_reachability() {
        let q = a3();
        assert!(q.is_convex(&[0, 1]));
        assert!(!q.is_convex(&[0, 2]));
        assert!(q.is_convex(&[0, 1, 2]));
    }

    #[test]
    fn cycle_detection() {
        assert!(a3().is_acyclic());
        let l = Quiver::new(["1"], vec![("x".into(), "1".into(), "1".into())]).unwrap();
        assert_eq!(l.find_cycle_vertex(), Some(0));
    }

    #[test]
    fn path_enumeration_counts() {
        let p = enumerate_paths(&a3(), 5);
        assert_eq!(p[0][2].len(), 1);
        assert_eq!(p[0][0].len(), 1);
        assert_eq!(p[2][0].len(), 0);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let e = Quiver::new(["1", "1"], Vec::new());
        assert!(matches!(e, Err(AlgebraError::DuplicateId(_))));
    }
}
