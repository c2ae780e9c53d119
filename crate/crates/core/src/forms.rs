//! Integral quadratic forms attached to a triangular algebra.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::AlgebraError;
use crate::linalg::{Matrix, Q};
use crate::qalg::Algebra;
use crate::reps::{ext_dim, global_dimension, simple};

/// `q(x) = sum_i B[i][i] x_i^2 + sum_{i<j} B[i][j] x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitForm {
    ids: Vec<String>,
    coeff: Vec<Vec<i64>>,
}

impl UnitForm {
    /// Entries below the diagonal are ignored.
    pub fn new(ids: Vec<String>, coeff: Vec<Vec<i64>>) -> Self {
        let n = ids.len();
        assert!(coeff.len() == n && coeff.iter().all(|r| r.len() == n), "coefficient matrix must be n x n");
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                c[i][j] = coeff[i][j];
            }
        }
        UnitForm { ids, coeff: c }
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Coefficient of `x_i x_j` (`i <= j`), or of `x_i^2` when `i == j`.
    pub fn coefficient(&self, i: usize, j: usize) -> i64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.coeff[a][b]
    }

    pub fn is_unit(&self) -> bool {
        (0..self.rank()).all(|i| self.coeff[i][i] == 1)
    }

    pub fn evaluate(&self, x: &[i64]) -> i64 {
        assert_eq!(x.len(), self.rank(), "vector length must match the rank");
        let mut s = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in i..x.len() {
                s += self.coeff[i][j] * x[i] * x[j];
            }
        }
        s
    }

    /// The form in the variables reordered by `perm` (new index k is old `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> UnitForm {
        let n = self.rank();
        let mut c = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                c[a][b] = self.coefficient(perm[a], perm[b]);
            }
        }
        UnitForm { ids: perm.iter().map(|&k| self.ids[k].clone()).collect(), coeff: c }
    }
}

impl fmt::Display for UnitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.rank() {
            for j in i..self.rank() {
                let c = self.coeff[i][j];
                if c == 0 {
                    continue;
                }
                let mono = if i == j {
                    format!("x{}^2", self.ids[i])
                } else {
                    format!("x{} x{}", self.ids[i], self.ids[j])
                };
                let mag = c.abs();
                let body = if mag == 1 { mono } else { format!("{mag} {mono}") };
                match (first, c < 0) {
                    (true, false) => write!(f, "{body}")?,
                    (true, true) => write!(f, "-{body}")?,
                    (false, false) => write!(f, " + {body}")?,
                    (false, true) => write!(f, " - {body}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsForm {
    pub form: UnitForm,
    /// `r[i][j] = dim Ext^2(S_i, S_j)`.
    pub r: Vec<Vec<usize>>,
    /// Set when `sum r(i,j)` differs from the number of supplied relations.
    pub warning: Option<String>,
}

pub fn tits_form(a: &Algebra) -> Result<TitsForm, AlgebraError> {
    if let Some(v) = a.quiver().find_cycle_vertex() {
        return Err(AlgebraError::NotTriangular(a.vertex_id(v).to_string()));
    }
    let n = a.vertex_count();
    let simples: Vec<_> = (0..n).map(|i| simple(a, i)).collect();
    let mut r = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            r[i][j] = ext_dim(&simples[i], &simples[j], 2)?;
        }
    }
    let q = a.quiver();
    let mut coeff = vec![vec![0i64; n]; n];
    for i in 0..n {
        coeff[i][i] = 1;
        for j in i + 1..n {
            let arrows = q.arrow_count_between(i, j) + q.arrow_count_between(j, i);
            coeff[i][j] = -(arrows as i64) + (r[i][j] + r[j][i]) as i64;
        }
    }
    let total: usize = r.iter().flatten().sum();
    let warning = (total != a.relations().len()).then(|| {
        format!("{} relations supplied, minimal generating set has {}", a.relations().len(), total)
    });
    Ok(TitsForm { form: UnitForm::new(q.vertices().to_vec(), coeff), r, warning })
}

/// Matrix of the Euler bilinear form in the vertex basis: `<x, y> = x C^{-1} y^T`
/// with `C[i][j] = dim (P_i)_j`, so that `<dim P_i, y> = y_i`.
pub fn euler_bilinear(a: &Algebra, gldim_cap: usize) -> Result<Matrix, AlgebraError> {
    global_dimension(a, gldim_cap)?;
    let c = Matrix::from_rows(
        a.vertex_count(),
        a.vertex_count(),
        a.cartan().iter().map(|row| row.iter().map(|&x| Q::from_integer((x as i64).into())).collect()).collect(),
    );
    c.inverse().ok_or(AlgebraError::SingularCartan)
}

pub fn euler_form(a: &Algebra, gldim_cap: usize) -> Result<UnitForm, AlgebraError> {
    let b = euler_bilinear(a, gldim_cap)?;
    let n = a.vertex_count();
    let int = |x: &Q| -> Result<i64, AlgebraError> {
        if !x.denom().is_one() {
            return Err(AlgebraError::SingularCartan);
        }
        x.numer().to_i64().ok_or(AlgebraError::SingularCartan)
    };
    let mut coeff = vec![vec![0i64; n]; n];
    for i in 0..n {
        coeff[i][i] = int(b.get(i, i))?;
        for j in i + 1..n {
            coeff[i][j] = int(&(b.get(i, j) + b.get(j, i)))?;
        }
    }
    Ok(UnitForm::new(a.quiver().vertices().to_vec(), coeff))
}

/// `<x, y>` for integer vectors.
pub fn euler_pairing(b: &Matrix, x: &[i64], y: &[i64]) -> i64 {
    let mut s = Q::zero();
    for i in 0..x.len() {
        for j in 0..y.len() {
            if x[i] != 0 && y[j] != 0 {
                s += b.get(i, j) * Q::from_integer((x[i] * y[j]).into());
            }
        }
    }
    s.to_integer().to_i64().expect("integral pairing")
}

pub const DEFAULT_BOX: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxVerdict {
    /// `q(x) >= 0` on the box `0 <= x_i <= bound`; a bounded check only.
    Pass { bound: i64 },
    Counterexample { x: Vec<i64>, value: i64 },
}

impl BoxVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BoxVerdict::Pass { .. })
    }
}

/// Exhaustive search over the box; returns the lexicographically first
/// negative vector if any.
pub fn weak_nonnegativity_box(form: &UnitForm, bound: i64) -> BoxVerdict {
    let n = form.rank() as u32;
    let base = (bound + 1) as u64;
    let total = base.checked_pow(n).expect("box too large");
    let decode = |mut k: u64| -> Vec<i64> {
        let mut x = vec![0i64; n as usize];
        for slot in x.iter_mut().rev() {
            let (q, r) = k.div_rem(&base);
            *slot = r as i64;
            k = q;
        }
        x
    };
    let hit = (0..total).into_par_iter().find_first(|&k| form.evaluate(&decode(k)) < 0);
    match hit {
        None => BoxVerdict::Pass { bound },
        Some(k) => {
            let x = decode(k);
            let value = form.evaluate(&x);
            BoxVerdict::Counterexample { x, value }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::qalg::{BoundQuiverAlgebra, Quiver};

    fn path_algebra(vs: &[&str], arrows: &[(&str, &str)]) -> Algebra {
        let q = Quiver::new(
            vs.iter().map(|s| s.to_string()),
            arrows.iter().enumerate().map(|(k, (s, t))| (format!("a{k}"), s.to_string(), t.to_string())),
        )
        .unwrap();
        Arc::new(BoundQuiverAlgebra::compute_path_basis(q, vec![], 4).unwrap())
    }

    #[test]
    fn kronecker_tits_form() {
        let k = path_algebra(&["1", "2"], &[("1", "2"), ("1", "2")]);
        let t = tits_form(&k).unwrap().form;
        assert_eq!(t.coefficient(0, 1), -2);
        assert_eq!(t.evaluate(&[1, 1]), 0);
        assert_eq!(t.evaluate(&[2, 1]), 1);
        assert_eq!(t.to_string(), "x1^2 - 2 x1 x2 + x2^2");
        assert_eq!(euler_form(&k, 4).unwrap(), t);
        assert!(weak_nonnegativity_box(&t, 6).passed());
    }

    #[test]
    fn box_finds_first_counterexample() {
        let f = UnitForm::new(vec!["x".into(), "y".into()], vec![vec![1, -3], vec![0, 1]]);
        assert_eq!(weak_nonnegativity_box(&f, 6), BoxVerdict::Counterexample { x: vec![1, 1], value: -1 });
    }

    #[test]
    fn euler_pairing_with_projectives() {
        let a = path_algebra(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        let b = euler_bilinear(&a, 4).unwrap();
        assert_eq!(euler_pairing(&b, &[1, 1, 1], &[0, 3, 5]), 0);
        assert_eq!(euler_pairing(&b, &[0, 1, 1], &[4, 3, 5]), 3);
    }

    #[test]
    fn cyclic_quiver_has_no_tits_form() {
        let q = Quiver::new(
            ["1", "2"],
            vec![("a".to_string(), "1".to_string(), "2".to_string()), ("b".to_string(), "2".to_string(), "1".to_string())],
        )
        .unwrap();
        let ab = crate::qalg::Path::from_arrows(&q, vec![0, 1]).unwrap();
        let ba = crate::qalg::Path::from_arrows(&q, vec![1, 0]).unwrap();
        let rels = vec![crate::qalg::Relation::monomial(ab), crate::qalg::Relation::monomial(ba)];
        let a = Arc::new(BoundQuiverAlgebra::compute_path_basis(q, rels, 4).unwrap());
        assert!(matches!(tits_form(&a), Err(AlgebraError::NotTriangular(_))));
    }
}
