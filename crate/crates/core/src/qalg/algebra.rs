use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::quiver::{enumerate_paths, Path, Quiver};
use crate::error::AlgebraError;
use crate::linalg::{fmt_q, Matrix, Sparse, Q};

/// A linear combination of parallel paths, listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Q, Path)>,
}

impl Relation {
    pub fn monomial(p: Path) -> Self {
        Relation { terms: vec![(Q::one(), p)] }
    }

    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }

    pub fn end(&self) -> usize {
        self.terms[0].1.end
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.len() == self.terms[0].1.len())
    }

    pub fn validate(&self, q: &Quiver) -> Result<(), AlgebraError> {
        let shown = self.display(q).to_string();
        if self.terms.is_empty() || self.terms.iter().all(|(c, _)| c.is_zero()) {
            return Err(AlgebraError::MalformedRelation(format!("`{shown}` has no nonzero term")));
        }
        let (s, t) = (self.start(), self.end());
        for (_, p) in &self.terms {
            if p.start != s || p.end != t {
                return Err(AlgebraError::MalformedRelation(format!("`{shown}` mixes endpoints")));
            }
            if p.len() < 2 {
                return Err(AlgebraError::MalformedRelation(format!("`{shown}` has a term of length < 2")));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> RelationDisplay<'a> {
        RelationDisplay { rel: self, quiver: q }
    }
}

pub struct RelationDisplay<'a> {
    rel: &'a Relation,
    quiver: &'a Quiver,
}

impl fmt::Display for RelationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, p)) in self.rel.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !mag.is_one() {
                write!(f, "{} ", fmt_q(&mag))?;
            }
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}

/// `KQ/I` with an explicit basis of residue paths.
#[derive(Clone, Debug)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    length_cap: usize,
    nilpotency: usize,
    basis: Vec<Vec<Vec<Path>>>,
    coords: HashMap<Path, Vec<(usize, Q)>>,
    cartan: Vec<Vec<usize>>,
    proj_cache: OnceLock<Vec<Vec<Matrix>>>,
    inj_cache: OnceLock<Vec<Vec<Matrix>>>,
}

pub type Algebra = Arc<BoundQuiverAlgebra>;

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

impl BoundQuiverAlgebra {
    /// Reduce paths of length at most `length_cap` modulo the ideal and pick
    /// standard monomials. Fails unless every path of some length `N <= length_cap`
    /// reduces to zero.
    pub fn compute_path_basis(
        quiver: Quiver,
        relations: Vec<Relation>,
        length_cap: usize,
    ) -> Result<Self, AlgebraError> {
        if length_cap < 2 {
            return Err(AlgebraError::MalformedRelation("length cap must be at least 2".into()));
        }
        for r in &relations {
            r.validate(&quiver)?;
        }
        // on an acyclic quiver the whole path space is finite; use all of it
        let length_cap = match quiver.longest_path_len() {
            Some(l) => length_cap.max(l + 1),
            None => length_cap,
        };
        if quiver.find_cycle_vertex().is_some() {
            if let Some(r) = relations.iter().find(|r| !r.is_homogeneous()) {
                return Err(AlgebraError::Uncertifiable(r.display(&quiver).to_string()));
            }
        }
        let n = quiver.vertex_count();
        let mut paths = enumerate_paths(&quiver, length_cap);
        for row in paths.iter_mut() {
            for cell in row.iter_mut() {
                cell.sort_by(|a, b| b.degree_key().cmp(&a.degree_key()));
            }
        }
        let mut column: HashMap<Path, usize> = HashMap::new();
        for row in &paths {
            for cell in row {
                for (k, p) in cell.iter().enumerate() {
                    column.insert(p.clone(), k);
                }
            }
        }

        let mut systems: Vec<Vec<Sparse>> =
            (0..n).map(|i| (0..n).map(|j| Sparse::new(paths[i][j].len())).collect()).collect();
        for rel in &relations {
            let (s, t) = (rel.start(), rel.end());
            for i in 0..n {
                for u in &paths[i][s] {
                    if u.len() + rel.min_len() > length_cap {
                        continue;
                    }
                    for j in 0..n {
                        for v in &paths[t][j] {
                            if u.len() + rel.min_len() + v.len() > length_cap {
                                continue;
                            }
                            let mut row: Vec<(usize, Q)> = Vec::new();
                            for (c, p) in &rel.terms {
                                let w = u.concat(p).and_then(|x| x.concat(v)).expect("composable");
                                if w.len() <= length_cap {
                                    row.push((column[&w], c.clone()));
                                }
                            }
                            merge_duplicates(&mut row);
                            systems[i][j].push(row);
                        }
                    }
                }
            }
        }

        let mut basis = vec![vec![Vec::new(); n]; n];
        let mut coords: HashMap<Path, Vec<(usize, Q)>> = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let sys = &mut systems[i][j];
                sys.reduce_fully();
                let cell = &paths[i][j];
                // standard monomials, ascending
                let free: Vec<usize> = (0..cell.len()).rev().filter(|&c| !sys.is_pivot(c)).collect();
                let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                basis[i][j] = free.iter().map(|&c| cell[c].clone()).collect();
                for (c, p) in cell.iter().enumerate() {
                    let v = if let Some(&k) = pos.get(&c) {
                        vec![(k, Q::one())]
                    } else {
                        let mut v: Vec<(usize, Q)> =
                            sys.pivot_row(c)[1..].iter().map(|(cc, x)| (pos[cc], -x.clone())).collect();
                        v.sort_by_key(|e| e.0);
                        v
                    };
                    coords.insert(p.clone(), v);
                }
            }
        }

        let mut nilpotency = None;
        for len in 1..=length_cap {
            let all_zero = coords.iter().filter(|(p, _)| p.len() == len).all(|(_, v)| v.is_empty());
            if all_zero {
                nilpotency = Some(len);
                break;
            }
        }
        let Some(nilpotency) = nilpotency else {
            let witness = coords
                .iter()
                .filter(|(p, v)| p.len() == length_cap && !v.is_empty())
                .map(|(p, _)| p.display(&quiver).to_string())
                .min()
                .unwrap_or_default();
            return Err(AlgebraError::NotAdmissible { cap: length_cap, witness });
        };
        coords.retain(|p, _| p.len() < nilpotency);
        for row in basis.iter_mut() {
            for cell in row.iter_mut() {
                debug_assert!(cell.iter().all(|p| p.len() < nilpotency));
            }
        }
        let cartan = (0..n).map(|i| (0..n).map(|j| basis[i][j].len()).collect()).collect();
        Ok(BoundQuiverAlgebra {
            quiver,
            relations,
            length_cap,
            nilpotency,
            basis,
            coords,
            cartan,
            proj_cache: OnceLock::new(),
            inj_cache: OnceLock::new(),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    /// Smallest `N` with every path of length `N` zero in the algebra.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.quiver.vertex_index(id)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        self.quiver.vertex_id(v)
    }

    /// Residue paths from `i` to `j`.
    pub fn basis(&self, i: usize, j: usize) -> &[Path] {
        &self.basis[i][j]
    }

    /// `C[i][j]` = number of basis paths from `i` to `j`, i.e. `dim (P_i)_j`.
    pub fn cartan(&self) -> &[Vec<usize>] {
        &self.cartan
    }

    pub fn dim(&self) -> usize {
        self.cartan.iter().flatten().sum()
    }

    pub fn is_triangular(&self) -> bool {
        self.quiver.is_acyclic()
    }

    /// Coordinates of a path in the basis of its endpoint pair.
    pub fn reduce(&self, p: &Path) -> Vec<(usize, Q)> {
        if p.len() >= self.nilpotency {
            return Vec::new();
        }
        self.coords.get(p).cloned().unwrap_or_default()
    }

    /// Coordinates of a combination of parallel paths from `i` to `j`.
    pub fn reduce_combination(&self, terms: &[(Q, Path)]) -> Vec<Q> {
        let (i, j) = (terms[0].1.start, terms[0].1.end);
        let mut out = vec![Q::zero(); self.basis[i][j].len()];
        for (c, p) in terms {
            for (k, x) in self.reduce(p) {
                out[k] += c * &x;
            }
        }
        out
    }

    /// Arrow matrices of `P_i`: the basis of `(P_i)_j` is `basis(i, j)` and an
    /// arrow acts by appending itself to a path.
    pub fn projective_maps(&self, i: usize) -> &[Matrix] {
        &self.proj_cache.get_or_init(|| {
            (0..self.vertex_count())
                .map(|i| {
                    self.quiver
                        .arrows()
                        .iter()
                        .enumerate()
                        .map(|(a, arr)| {
                            let src = &self.basis[i][arr.source];
                            let tgt = &self.basis[i][arr.target];
                            let mut m = Matrix::zeros(tgt.len(), src.len());
                            for (c, b) in src.iter().enumerate() {
                                let p = b.then_arrow(&self.quiver, a).expect("composable");
                                for (r, x) in self.reduce(&p) {
                                    m.set(r, c, x);
                                }
                            }
                            m
                        })
                        .collect()
                })
                .collect()
        })[i]
    }

    /// Arrow matrices of `I_i`, with `(I_i)_j` the dual of `basis(j, i)`.
    pub fn injective_maps(&self, i: usize) -> &[Matrix] {
        &self.inj_cache.get_or_init(|| {
            (0..self.vertex_count())
                .map(|i| {
                    self.quiver
                        .arrows()
                        .iter()
                        .enumerate()
                        .map(|(a, arr)| {
                            let src = &self.basis[arr.source][i];
                            let tgt = &self.basis[arr.target][i];
                            let mut m = Matrix::zeros(tgt.len(), src.len());
                            let ap = Path { start: arr.source, end: arr.target, arrows: vec![a] };
                            for (r, qp) in tgt.iter().enumerate() {
                                let p = ap.concat(qp).expect("composable");
                                for (c, x) in self.reduce(&p) {
                                    m.set(r, c, x);
                                }
                            }
                            m
                        })
                        .collect()
                })
                .collect()
        })[i]
    }

    pub fn relation_vanishes(&self, r: &Relation) -> bool {
        self.reduce_combination(&r.terms).iter().all(Zero::is_zero)
    }

    pub fn opposite(&self) -> Result<BoundQuiverAlgebra, AlgebraError> {
        BoundQuiverAlgebra::compute_path_basis(
            self.quiver.opposite(),
            self.relations.iter().map(Relation::reversed).collect(),
            self.length_cap,
        )
    }

    /// Product algebra; vertex and arrow ids must be disjoint.
    pub fn product(&self, other: &BoundQuiverAlgebra) -> Result<BoundQuiverAlgebra, AlgebraError> {
        let quiver = self.quiver.disjoint_union(&other.quiver)?;
        let shift = self.quiver.arrow_count();
        let vshift = self.quiver.vertex_count();
        let mut relations = self.relations.clone();
        for r in &other.relations {
            relations.push(Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        (
                            c.clone(),
                            Path {
                                start: p.start + vshift,
                                end: p.end + vshift,
                                arrows: p.arrows.iter().map(|a| a + shift).collect(),
                            },
                        )
                    })
                    .collect(),
            });
        }
        BoundQuiverAlgebra::compute_path_basis(quiver, relations, self.length_cap.max(other.length_cap))
    }

    /// Translate a path of `other` into this algebra's quiver via ids.
    pub fn translate_path(&self, other: &Quiver, p: &Path) -> Option<Path> {
        let start = self.quiver.vertex_index(other.vertex_id(p.start))?;
        let end = self.quiver.vertex_index(other.vertex_id(p.end))?;
        let arrows = p
            .arrows
            .iter()
            .map(|&a| self.quiver.arrow_index(&other.arrow(a).id))
            .collect::<Option<Vec<_>>>()?;
        Some(Path { start, end, arrows })
    }
}

fn merge_duplicates(row: &mut Vec<(usize, Q)>) {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Q)> = Vec::with_capacity(row.len());
    for (c, x) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    *row = out;
}

/// Result of restricting an algebra to a vertex subset.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub algebra: BoundQuiverAlgebra,
    pub convex: bool,
    /// Whether `dim` agrees with `dim e A e` for the idempotent of the subset.
    pub matches_corner: bool,
}

/// Restriction of `(Q, I)` to a vertex subset, keeping relations supported inside it.
pub fn full_convex_subcategory(a: &BoundQuiverAlgebra, ids: &[&str]) -> Result<Restriction, AlgebraError> {
    let subset: Vec<usize> = ids
        .iter()
        .map(|id| a.vertex_index(id).ok_or_else(|| AlgebraError::UnknownVertex(id.to_string())))
        .collect::<Result<_, _>>()?;
    let sub = a.quiver.full_subquiver(&subset);
    let mut relations = Vec::new();
    for r in &a.relations {
        let translated: Option<Vec<(Q, Path)>> =
            r.terms.iter().map(|(c, p)| sub_path(&a.quiver, &sub, p).map(|p| (c.clone(), p))).collect();
        if let Some(terms) = translated {
            relations.push(Relation { terms });
        }
    }
    let convex = a.quiver.is_convex(&subset);
    let algebra = BoundQuiverAlgebra::compute_path_basis(sub, relations, a.length_cap)?;
    let corner: usize = subset.iter().flat_map(|&i| subset.iter().map(move |&j| a.cartan[i][j])).sum();
    Ok(Restriction { matches_corner: corner == algebra.dim(), algebra, convex })
}

fn sub_path(full: &Quiver, sub: &Quiver, p: &Path) -> Option<Path> {
    let start = sub.vertex_index(full.vertex_id(p.start))?;
    let end = sub.vertex_index(full.vertex_id(p.end))?;
    let arrows = p.arrows.iter().map(|&a| sub.arrow_index(&full.arrow(a).id)).collect::<Option<Vec<_>>>()?;
    Some(Path { start, end, arrows })
}

/// `T_r(K)` as the linear quiver `ids[0] -> ids[1] -> ...` without relations.
pub fn linear_algebra(ids: &[String], arrow_prefix: &str) -> Result<BoundQuiverAlgebra, AlgebraError> {
    let arrows = ids
        .windows(2)
        .enumerate()
        .map(|(k, w)| (format!("{arrow_prefix}{}", k + 1), w[0].clone(), w[1].clone()))
        .collect::<Vec<_>>();
    let q = Quiver::new(ids.iter().cloned(), arrows)?;
    BoundQuiverAlgebra::compute_path_basis(q, Vec::new(), ids.len().max(2))
}

/// `T_r(K)` with vertices `1..=r`.
pub fn triangular_matrix_algebra(r: usize) -> Result<BoundQuiverAlgebra, AlgebraError> {
    assert!(r >= 1, "r must be positive");
    let ids: Vec<String> = (1..=r).map(|k| k.to_string()).collect();
    linear_algebra(&ids, "t")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vs.iter().map(|s| s.to_string()),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
        .unwrap()
    }

    fn path(q: &Quiver, ids: &[&str]) -> Path {
        Path::from_arrows(q, ids.iter().map(|a| q.arrow_index(a).unwrap()).collect()).unwrap()
    }

    #[test]
    fn a2_basis() {
        let qv = quiver(&["1", "2"], &[("a", "1", "2")]);
        let a = BoundQuiverAlgebra::compute_path_basis(qv, vec![], 5).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.cartan(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(a.nilpotency(), 2);
    }

    #[test]
    fn loop_without_relations_is_rejected() {
        let qv = quiver(&["1"], &[("x", "1", "1")]);
        let e = BoundQuiverAlgebra::compute_path_basis(qv, vec![], 5).unwrap_err();
        assert!(matches!(e, AlgebraError::NotAdmissible { cap: 5, .. }));
    }

    #[test]
    fn loop_with_square_zero() {
        let qv = quiver(&["1"], &[("x", "1", "1")]);
        let r = Relation::monomial(path(&qv, &["x", "x"]));
        let a = BoundQuiverAlgebra::compute_path_basis(qv, vec![r], 5).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn commutative_square() {
        let qv = quiver(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]);
        let r = Relation { terms: vec![(q(1), path(&qv, &["a", "b"])), (q(-1), path(&qv, &["c", "d"]))] };
        let a = BoundQuiverAlgebra::compute_path_basis(qv.clone(), vec![r.clone()], 4).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert!(a.relation_vanishes(&r));
        let ab = a.reduce(&path(&qv, &["a", "b"]));
        let cd = a.reduce(&path(&qv, &["c", "d"]));
        assert_eq!(ab, cd);
    }

    #[test]
    fn relation_validation() {
        let qv = quiver(&["1", "2"], &[("a", "1", "2")]);
        let r = Relation::monomial(path(&qv, &["a"]));
        assert!(matches!(
            BoundQuiverAlgebra::compute_path_basis(qv, vec![r], 4),
            Err(AlgebraError::MalformedRelation(_))
        ));
    }

    #[test]
    fn triangular_dims() {
        for r in 1..=5 {
            assert_eq!(triangular_matrix_algebra(r).unwrap().dim(), r * (r + 1) / 2);
        }
    }
}
