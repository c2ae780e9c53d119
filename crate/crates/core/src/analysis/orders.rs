use std::fmt;

use rayon::prelude::*;

use crate::error::{AlgebraError, AnalysisError};
use crate::forms::{euler_form, tits_form};
use crate::qalg::Algebra;
use crate::reps::{end_dim, ext_dim, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomOrder {
    /// `M <= N` with some strict inequality.
    Leq,
    Geq,
    Incomparable,
    /// Equal Hom-profiles on the family.
    EqualProfile,
}

impl fmt::Display for HomOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HomOrder::Leq => "<=",
            HomOrder::Geq => ">=",
            HomOrder::Incomparable => "incomparable",
            HomOrder::EqualProfile => "equal-profile",
        };
        f.write_str(s)
    }
}

/// Comparison of `M` and `N` relative to an explicit test family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderVerdict {
    pub order: HomOrder,
    /// `dim Hom(M, X)` and `dim Hom(N, X)` for each `X` of the family.
    pub covariant: Vec<(usize, usize)>,
    /// `dim Hom(X, M)` and `dim Hom(X, N)`.
    pub contravariant: Vec<(usize, usize)>,
    /// Whether both profiles give the same verdict.
    pub profiles_agree: bool,
}

fn compare(pairs: &[(usize, usize)]) -> HomOrder {
    let le = pairs.iter().all(|(a, b)| a <= b);
    let ge = pairs.iter().all(|(a, b)| a >= b);
    match (le, ge) {
        (true, true) => HomOrder::EqualProfile,
        (true, false) => HomOrder::Leq,
        (false, true) => HomOrder::Geq,
        (false, false) => HomOrder::Incomparable,
    }
}

fn profile(
    family: &[Representation],
    f: impl Fn(&Representation) -> Result<(usize, usize), AlgebraError> + Sync + Send,
) -> Result<Vec<(usize, usize)>, AlgebraError> {
    family.par_iter().map(f).collect()
}

/// `M <= N` iff `dim Hom(M, X) <= dim Hom(N, X)` for every `X` in the family.
/// The contravariant profile is computed as a cross-check.
pub fn hom_order(m: &Representation, n: &Representation, family: &[Representation]) -> Result<OrderVerdict, AnalysisError> {
    if m.dims() != n.dims() {
        return Err(AnalysisError::DimensionMismatch);
    }
    let hom = crate::reps::hom_dim;
    let covariant = profile(family, |x| Ok((hom(m, x)?, hom(n, x)?)))?;
    let contravariant = profile(family, |x| Ok((hom(x, m)?, hom(x, n)?)))?;
    let order = compare(&covariant);
    Ok(OrderVerdict { order, profiles_agree: order == compare(&contravariant), covariant, contravariant })
}

/// A degeneration verdict derived from the Hom order; never computed
/// geometrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegVerdict {
    pub hom: OrderVerdict,
    /// `M <=_deg N`.
    pub degenerates: bool,
    pub provenance: &'static str,
}

/// Caller's statement that a family lists every indecomposable module.
#[derive(Clone, Copy, Debug)]
pub struct CompleteList;

pub const DEG_PROVENANCE: &str =
    "representation-finite algebra: M <=_deg N iff M <= N (Bongartz); family attested complete by the caller";

/// Degeneration order over a representation-finite algebra, where it agrees
/// with the Hom order computed on all indecomposables.
pub fn finite_type_deg_order(
    m: &Representation,
    n: &Representation,
    indecomposables: &[Representation],
    _complete: CompleteList,
) -> Result<DegVerdict, AnalysisError> {
    let hom = hom_order(m, n, indecomposables)?;
    let degenerates = matches!(hom.order, HomOrder::Leq | HomOrder::EqualProfile) && hom.profiles_agree;
    Ok(DegVerdict { hom, degenerates, provenance: DEG_PROVENANCE })
}

/// `dim G(d) = sum d_i^2`.
pub fn dim_group(d: &[usize]) -> usize {
    d.iter().map(|x| x * x).sum()
}

/// `dim O(M) = dim G(d) - dim End(M)`.
pub fn orbit_dimension(m: &Representation) -> usize {
    dim_group(m.dims()) - end_dim(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtEndVerdict {
    pub ext1: usize,
    pub end: usize,
    /// First `k` in `2..=cap` with `Ext^k(M, M) != 0`.
    pub higher: Option<usize>,
}

impl ExtEndVerdict {
    pub fn passed(&self) -> bool {
        self.ext1 <= self.end && self.higher.is_none()
    }
}

/// `dim Ext^1(M, M) <= dim End(M)` and `Ext^k(M, M) = 0` for `2 <= k <= cap`.
pub fn ext_end_inequality(m: &Representation, cap: usize) -> Result<ExtEndVerdict, AlgebraError> {
    let ext1 = ext_dim(m, m, 1)?;
    let mut higher = None;
    for k in 2..=cap {
        if ext_dim(m, m, k)? != 0 {
            higher = Some(k);
            break;
        }
    }
    Ok(ExtEndVerdict { ext1, end: end_dim(m), higher })
}

/// Dimension data of `mod_A(d)` at a module `M` of dimension vector `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyReport {
    pub d: Vec<usize>,
    pub dim_group: usize,
    pub end: usize,
    pub ext1: usize,
    pub ext2: usize,
    pub orbit: usize,
    pub tits: i64,
    pub euler: i64,
    /// `dim G(d) - q_A(d)`, the dimension of the module variety when `d` is
    /// the vector of a periodic family.
    pub periodic_variety_dim: i64,
}

impl VarietyReport {
    /// `chi_A(d) = dim End - dim Ext^1 + dim Ext^2`.
    pub fn euler_identity(&self) -> bool {
        self.euler == self.end as i64 - self.ext1 as i64 + self.ext2 as i64
    }

    /// `q_A(d) >= chi_A(d) = dim End - dim Ext^1 >= 0`, meaningful when
    /// `Ext^2(M, M) = 0`.
    pub fn tits_euler_chain(&self) -> bool {
        self.ext2 == 0 && self.tits >= self.euler && self.euler == self.end as i64 - self.ext1 as i64 && self.euler >= 0
    }
}

pub fn variety_dimension_formulas(a: &Algebra, m: &Representation, gldim_cap: usize) -> Result<VarietyReport, AlgebraError> {
    let d: Vec<usize> = m.dims().to_vec();
    let x: Vec<i64> = d.iter().map(|&v| v as i64).collect();
    let tits = tits_form(a)?.form.evaluate(&x);
    let euler = euler_form(a, gldim_cap)?.evaluate(&x);
    let end = end_dim(m);
    let dg = dim_group(&d);
    Ok(VarietyReport {
        dim_group: dg,
        end,
        ext1: ext_dim(m, m, 1)?,
        ext2: ext_dim(m, m, 2)?,
        orbit: dg - end,
        tits,
        euler,
        periodic_variety_dim: dg as i64 - tits,
        d,
    })
}

/// `sum_k (-1)^k dim Ext^k(M, M)` for `k <= cap`.
pub fn alternating_ext_sum(m: &Representation, cap: usize) -> Result<i64, AlgebraError> {
    let mut s = 0i64;
    for k in 0..=cap {
        let e = ext_dim(m, m, k)? as i64;
        s += if k % 2 == 0 { e } else { -e };
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{algebra, d5t_e};
    use crate::reps::{projective, simple};

    fn a2() -> (Algebra, Representation, Representation, Representation) {
        let a = algebra("FIX-A2").unwrap();
        let p1 = projective(&a, 0);
        let s1 = simple(&a, 0);
        let s2 = simple(&a, 1);
        (a, p1, s1, s2)
    }

    #[test]
    fn projective_degenerates_to_semisimple() {
        let (_, p1, s1, s2) = a2();
        let n = s1.direct_sum(&s2).unwrap();
        let family = [p1.clone(), s1.clone(), s2.clone()];
        let v = hom_order(&p1, &n, &family).unwrap();
        assert_eq!(v.order, HomOrder::Leq);
        assert_eq!(v.covariant, vec![(1, 1), (1, 1), (0, 1)]);
        assert!(v.profiles_agree);
        let deg = finite_type_deg_order(&p1, &n, &family, CompleteList).unwrap();
        assert!(deg.degenerates);
        let back = finite_type_deg_order(&n, &p1, &family, CompleteList).unwrap();
        assert!(!back.degenerates);
        assert_eq!(hom_order(&p1, &p1, &family).unwrap().order, HomOrder::EqualProfile);
        assert_eq!(hom_order(&p1, &s1, &family).unwrap_err(), AnalysisError::DimensionMismatch);
    }

    #[test]
    fn orbit_dimensions_over_a2() {
        let (_, p1, s1, s2) = a2();
        assert_eq!(orbit_dimension(&s1), 0);
        assert_eq!(orbit_dimension(&p1), 1);
        assert_eq!(orbit_dimension(&s1.direct_sum(&s2).unwrap()), 0);
    }

    #[test]
    fn kronecker_mouth_modules_are_incomparable() {
        let a = algebra("FIX-K2").unwrap();
        // (K, K; 1, 0) and (K, K; 0, 1)
        let rep = |x: i64, y: i64| {
            use crate::linalg::Matrix;
            Representation::new(a.clone(), vec![1, 1], vec![Matrix::from_i64(1, 1, &[x]), Matrix::from_i64(1, 1, &[y])])
                .unwrap()
        };
        let (m, n) = (rep(1, 0), rep(0, 1));
        let v = hom_order(&m, &n, &[m.clone(), n.clone()]).unwrap();
        assert_eq!(v.order, HomOrder::Incomparable);
    }

    #[test]
    fn ext_end_over_d5t() {
        let a = algebra("FIX-D5t").unwrap();
        let e = d5t_e(&a);
        let v = ext_end_inequality(&e, 4).unwrap();
        assert_eq!((v.ext1, v.end), (0, 1));
        assert!(v.passed());
        let p = projective(&a, 0);
        assert!(ext_end_inequality(&p, 4).unwrap().passed());
    }

    /// Quasi-socle `S6`, quasi-top `E`: quasi-length 3 in the rank-3 tube.
    fn delta_module(a: &Algebra) -> Representation {
        use crate::linalg::Matrix;
        let maps = vec![
            Matrix::from_i64(1, 2, &[1, 0]),
            Matrix::from_i64(1, 2, &[1, 0]),
            Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            Matrix::from_i64(2, 1, &[0, 1]),
            Matrix::from_i64(2, 1, &[1, 1]),
        ];
        Representation::new(a.clone(), vec![1, 1, 2, 2, 1, 1], maps).unwrap()
    }

    #[test]
    fn quasi_length_three_is_the_boundary_case() {
        let a = algebra("FIX-D5t").unwrap();
        let m = delta_module(&a);
        let e = d5t_e(&a);
        let s6 = simple(&a, a.vertex_index("6").unwrap());
        assert_eq!(crate::reps::hom_dim(&s6, &m).unwrap(), 1);
        assert_eq!(crate::reps::hom_dim(&m, &e).unwrap(), 1);
        let v = ext_end_inequality(&m, 4).unwrap();
        assert_eq!((v.ext1, v.end), (1, 1));
        assert!(v.passed());
        let r = variety_dimension_formulas(&a, &m, 8).unwrap();
        assert_eq!((r.tits, r.euler, r.periodic_variety_dim), (0, 0, 12));
    }

    #[test]
    fn variety_report_for_e() {
        let a = algebra("FIX-D5t").unwrap();
        let e = d5t_e(&a);
        let r = variety_dimension_formulas(&a, &e, 8).unwrap();
        assert_eq!(r.dim_group, 6);
        assert_eq!(r.tits, 1);
        assert!(r.euler_identity());
        assert!(r.tits_euler_chain());
        assert_eq!(alternating_ext_sum(&e, 4).unwrap(), r.euler);
    }
}
