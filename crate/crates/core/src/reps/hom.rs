use num_traits::Zero;

use super::module::Representation;
use crate::error::AlgebraError;
use crate::linalg::{Matrix, Sparse, Q};

/// A morphism given by one matrix per vertex.
pub type Morphism = Vec<Matrix>;

fn offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for v in 0..m.dims().len() {
        off.push(total);
        total += m.dim_at(v) * n.dim_at(v);
    }
    (off, total)
}

fn hom_system(m: &Representation, n: &Representation) -> Result<(Sparse, Vec<usize>), AlgebraError> {
    if **m.algebra() != **n.algebra() {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let (off, total) = offsets(m, n);
    let mut sys = Sparse::new(total);
    let q = m.algebra().quiver();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ma, na) = (m.map(a), n.map(a));
        // unknown g_v[r][c] sits at off[v] + r * dim M_v + c
        for r in 0..n.dim_at(t) {
            for c in 0..m.dim_at(s) {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for k in 0..m.dim_at(t) {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        row.push((off[t] + r * m.dim_at(t) + k, x.clone()));
                    }
                }
                for k in 0..n.dim_at(s) {
                    let x = na.get(r, k);
                    if !x.is_zero() {
                        row.push((off[s] + k * m.dim_at(s) + c, -x.clone()));
                    }
                }
                if !row.is_empty() {
                    row.sort_by_key(|e| e.0);
                    sys.push(row);
                }
            }
        }
    }
    Ok((sys, off))
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, AlgebraError> {
    let (sys, _) = hom_system(m, n)?;
    Ok(sys.ncols() - sys.rank())
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>, AlgebraError> {
    let (mut sys, off) = hom_system(m, n)?;
    Ok(sys
        .kernel()
        .into_iter()
        .map(|v| {
            (0..m.dims().len())
                .map(|w| {
                    let (rows, cols) = (n.dim_at(w), m.dim_at(w));
                    let mut g = Matrix::zeros(rows, cols);
                    for r in 0..rows {
                        for c in 0..cols {
                            g.set(r, c, v[off[w] + r * cols + c].clone());
                        }
                    }
                    g
                })
                .collect()
        })
        .collect())
}

pub fn end_dim(m: &Representation) -> usize {
    hom_dim(m, m).expect("same algebra")
}

/// `End(M) = K`.
pub fn is_brick(m: &Representation) -> bool {
    !m.is_zero() && end_dim(m) == 1
}

pub fn is_morphism(m: &Representation, n: &Representation, f: &Morphism) -> bool {
    let q = m.algebra().quiver();
    q.arrows().iter().enumerate().all(|(a, arr)| {
        f[arr.target].mul(m.map(a)) == n.map(a).mul(&f[arr.source])
    })
}

/// Result of checking `Hom(U, V) = 0` over a family of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vanishing {
    AllZero,
    Nonzero { left: usize, right: usize, dim: usize },
}

/// `Hom(U_i, V_j) = 0` for all pairs; reports the first offending pair.
pub fn hom_vanishing_check(us: &[Representation], vs: &[Representation]) -> Result<Vanishing, AlgebraError> {
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let d = hom_dim(u, v)?;
            if d > 0 {
                return Ok(Vanishing::Nonzero { left: i, right: j, dim: d });
            }
        }
    }
    Ok(Vanishing::AllZero)
}
