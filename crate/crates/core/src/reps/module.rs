use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::linalg::{Matrix, Q};
use crate::qalg::{Algebra, BoundQuiverAlgebra, Path};

/// Sparse dimension vector keyed by vertex id; zero entries are omitted.
pub type DimVec = BTreeMap<String, i64>;

pub fn dimvec_add(a: &DimVec, b: &DimVec) -> DimVec {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.clone()).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn dimvec_sub(a: &DimVec, b: &DimVec) -> DimVec {
    let neg: DimVec = b.iter().map(|(k, v)| (k.clone(), -v)).collect();
    dimvec_add(a, &neg)
}

pub fn dimvec_unit(id: &str) -> DimVec {
    DimVec::from([(id.to_string(), 1)])
}

pub fn format_dimvec(d: &DimVec) -> String {
    let parts: Vec<String> = d.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("[{}]", parts.join(" "))
}

/// A finite-dimensional representation: one vector space per vertex and one
/// `dim M_t x dim M_s` matrix per arrow `s -> t`.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Algebra,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra && self.dims == other.dims && self.maps == other.maps
    }
}

impl Representation {
    /// Build and check shapes and relations.
    pub fn new(algebra: Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, AlgebraError> {
        let r = Representation { algebra, dims, maps };
        r.validate()?;
        Ok(r)
    }

    pub(crate) fn new_unchecked(algebra: Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert_eq!(dims.len(), algebra.vertex_count());
        debug_assert_eq!(maps.len(), algebra.quiver().arrow_count());
        Representation { algebra, dims, maps }
    }

    pub fn zero(algebra: Algebra) -> Self {
        let q = algebra.quiver();
        let dims = vec![0; q.vertex_count()];
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { algebra, dims, maps }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let q = self.algebra.quiver();
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrow_count() {
            return Err(AlgebraError::InvalidRepresentation("wrong number of spaces or maps".into()));
        }
        for (a, arr) in q.arrows().iter().enumerate() {
            let want = (self.dims[arr.target], self.dims[arr.source]);
            if self.maps[a].shape() != want {
                return Err(AlgebraError::InvalidRepresentation(format!(
                    "map `{}` has shape {:?}, expected {:?}",
                    arr.id,
                    self.maps[a].shape(),
                    want
                )));
            }
        }
        for rel in self.algebra.relations() {
            let (s, t) = (rel.start(), rel.end());
            let mut sum = Matrix::zeros(self.dims[t], self.dims[s]);
            for (c, p) in &rel.terms {
                sum = sum.add(&self.path_matrix(p).scale(c));
            }
            if !sum.is_zero() {
                return Err(AlgebraError::InvalidRepresentation(format!(
                    "relation `{}` does not vanish",
                    rel.display(q)
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `M_p = M_{a_k} ... M_{a_1}` for `p = a_1 ... a_k`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.start]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Image of `x in M_{p.start}` under the path.
    pub fn apply_path(&self, p: &Path, x: &[Q]) -> Vec<Q> {
        let mut v = x.to_vec();
        for &a in &p.arrows {
            v = self.maps[a].mul_vec(&v);
        }
        v
    }

    pub fn dimension_vector(&self) -> DimVec {
        (0..self.dims.len())
            .filter(|&v| self.dims[v] > 0)
            .map(|v| (self.algebra.vertex_id(v).to_string(), self.dims[v] as i64))
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn is_sincere(&self) -> bool {
        self.dims.iter().all(|&d| d > 0)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, AlgebraError> {
        if *self.algebra != *other.algebra {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Representation::new_unchecked(self.algebra.clone(), dims, maps))
    }

    /// Same representation over a larger algebra, zero at the new vertices.
    /// Arrows are matched by id and must keep their endpoints.
    pub fn extend_by_zero(&self, target: &Algebra) -> Result<Representation, AlgebraError> {
        let src = self.algebra.quiver();
        let tq = target.quiver();
        let mut dims = vec![0; tq.vertex_count()];
        for (v, id) in src.vertices().iter().enumerate() {
            let w = tq.vertex_index(id).ok_or_else(|| AlgebraError::UnknownVertex(id.clone()))?;
            dims[w] = self.dims[v];
        }
        let mut maps: Vec<Matrix> =
            tq.arrows().iter().map(|arr| Matrix::zeros(dims[arr.target], dims[arr.source])).collect();
        for (a, arr) in src.arrows().iter().enumerate() {
            match tq.arrow_index(&arr.id) {
                Some(b)
                    if tq.vertex_id(tq.arrow(b).source) == src.vertex_id(arr.source)
                        && tq.vertex_id(tq.arrow(b).target) == src.vertex_id(arr.target) =>
                {
                    maps[b] = self.maps[a].clone()
                }
                _ if self.maps[a].is_zero() => {}
                _ => return Err(AlgebraError::UnknownArrow(arr.id.clone())),
            }
        }
        Representation::new(target.clone(), dims, maps)
    }

    /// `DM` over the opposite algebra, which must have the same ids.
    pub fn dual(&self, op: &Algebra) -> Representation {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(op.clone(), self.dims.clone(), maps)
    }

    /// Restriction to the arrows and vertices of a subalgebra given by ids.
    pub fn restrict(&self, sub: &Algebra) -> Result<Representation, AlgebraError> {
        let q = self.algebra.quiver();
        let sq = sub.quiver();
        let dims = sq
            .vertices()
            .iter()
            .map(|id| q.vertex_index(id).map(|v| self.dims[v]).ok_or_else(|| AlgebraError::UnknownVertex(id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let maps = sq
            .arrows()
            .iter()
            .map(|arr| q.arrow_index(&arr.id).map(|a| self.maps[a].clone()).ok_or_else(|| AlgebraError::UnknownArrow(arr.id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(sub.clone(), dims, maps)
    }
}

pub fn projective(a: &Algebra, i: usize) -> Representation {
    let dims = (0..a.vertex_count()).map(|j| a.basis(i, j).len()).collect();
    Representation::new_unchecked(a.clone(), dims, a.projective_maps(i).to_vec())
}

pub fn injective(a: &Algebra, i: usize) -> Representation {
    let dims = (0..a.vertex_count()).map(|j| a.basis(j, i).len()).collect();
    Representation::new_unchecked(a.clone(), dims, a.injective_maps(i).to_vec())
}

pub fn simple(a: &Algebra, i: usize) -> Representation {
    let q = a.quiver();
    let mut dims = vec![0; q.vertex_count()];
    dims[i] = 1;
    let maps = q.arrows().iter().map(|arr| Matrix::zeros(dims[arr.target], dims[arr.source])).collect();
    Representation::new_unchecked(a.clone(), dims, maps)
}

/// Representation from arrow-matrix entries, e.g. "thin" modules with all
/// maps given by `1` where both ends are one-dimensional.
pub fn thin(a: &Algebra, support: &[usize]) -> Result<Representation, AlgebraError> {
    let q = a.quiver();
    let mut dims = vec![0; q.vertex_count()];
    for &v in support {
        dims[v] = 1;
    }
    let maps = q
        .arrows()
        .iter()
        .map(|arr| {
            let mut m = Matrix::zeros(dims[arr.target], dims[arr.source]);
            if dims[arr.target] == 1 && dims[arr.source] == 1 {
                m.set(0, 0, Q::from_integer(1.into()));
            }
            m
        })
        .collect();
    Representation::new(a.clone(), dims, maps)
}

pub fn arc(a: BoundQuiverAlgebra) -> Algebra {
    Arc::new(a)
}
