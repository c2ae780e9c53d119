use num_traits::{One, Zero};

use super::hom::{hom_dim, Morphism};
use super::module::{projective, Representation};
use crate::error::AlgebraError;
use crate::linalg::{complement_indices, to_sparse, Matrix, Sparse, Q};
use crate::qalg::Algebra;

/// Generators of `top M`: for each vertex, standard vectors completing the
/// radical `sum_a im M_a` to all of `M_v`.
pub fn top_generators(m: &Representation) -> Vec<(usize, Vec<Q>)> {
    let q = m.algebra().quiver();
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        let d = m.dim_at(v);
        if d == 0 {
            continue;
        }
        let mut rad = Vec::new();
        for a in q.in_arrows(v) {
            rad.extend(m.map(a).columns());
        }
        for k in complement_indices(&rad, d) {
            let mut e = vec![Q::zero(); d];
            e[k] = Q::one();
            out.push((v, e));
        }
    }
    out
}

/// `P = sum_g P_{v_g}`; the coordinates of `P_w` are the concatenation over
/// `g` of `basis(v_g, w)`.
pub fn projective_sum(a: &Algebra, vertices: &[usize]) -> Representation {
    let mut p = Representation::zero(a.clone());
    for &v in vertices {
        p = p.direct_sum(&projective(a, v)).expect("same algebra");
    }
    p
}

/// The morphism `sum_g P_{v_g} -> N` sending `e_{v_g}` to `x_g`.
pub fn map_from_projectives(a: &Algebra, gens: &[(usize, Vec<Q>)], target: &Representation) -> Morphism {
    (0..a.vertex_count())
        .map(|w| {
            let mut cols = Vec::new();
            for (v, x) in gens {
                for b in a.basis(*v, w) {
                    cols.push(target.apply_path(b, x));
                }
            }
            Matrix::from_columns(target.dim_at(w), &cols)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub tops: Vec<(usize, Vec<Q>)>,
    pub projective: Representation,
    pub map: Morphism,
}

impl ProjectiveCover {
    pub fn vertices(&self) -> Vec<usize> {
        self.tops.iter().map(|(v, _)| *v).collect()
    }

    /// Split a vector of `P_w` into its blocks, one per generator.
    pub fn split(&self, w: usize, x: &[Q]) -> Vec<Vec<Q>> {
        let a = self.projective.algebra();
        let mut out = Vec::new();
        let mut k = 0;
        for (v, _) in &self.tops {
            let n = a.basis(*v, w).len();
            out.push(x[k..k + n].to_vec());
            k += n;
        }
        out
    }
}

pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let a = m.algebra();
    let tops = top_generators(m);
    let verts: Vec<usize> = tops.iter().map(|(v, _)| *v).collect();
    let projective = projective_sum(a, &verts);
    let map = map_from_projectives(a, &tops, m);
    ProjectiveCover { tops, projective, map }
}

/// `ker f` with its inclusion into the source.
pub fn kernel(source: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let a = source.algebra();
    let q = a.quiver();
    let incl: Vec<Matrix> = (0..q.vertex_count())
        .map(|w| {
            let d = source.dim_at(w);
            let mut s = Sparse::new(d);
            for r in 0..f[w].rows() {
                s.push(to_sparse(&f[w].row(r)));
            }
            Matrix::from_columns(d, &s.kernel())
        })
        .collect();
    let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arr)| {
            let img = source.map(k).mul(&incl[arr.source]);
            incl[arr.target].solve_matrix(&img).expect("kernel is a subrepresentation")
        })
        .collect();
    (Representation::new_unchecked(a.clone(), dims, maps), incl)
}

/// `coker f` with the projection from the target.
pub fn cokernel(target: &Representation, f: &Morphism) -> (Representation, Morphism) {
    let a = target.algebra();
    let q = a.quiver();
    let mut proj = Vec::new();
    let mut lifts = Vec::new();
    for w in 0..q.vertex_count() {
        let d = target.dim_at(w);
        let mut s = Sparse::new(d);
        let mut basis = Vec::new();
        for c in f[w].columns() {
            if s.push(to_sparse(&c)) {
                basis.push(c);
            }
        }
        let image_rank = basis.len();
        let comp = complement_indices(&basis, d);
        let mut lift = Matrix::zeros(d, comp.len());
        for (j, &k) in comp.iter().enumerate() {
            let mut e = vec![Q::zero(); d];
            e[k] = Q::one();
            lift.set(k, j, Q::one());
            basis.push(e);
        }
        let inv = Matrix::from_columns(d, &basis).inverse().expect("basis");
        proj.push(inv.submatrix(image_rank..d, 0..d));
        lifts.push(lift);
    }
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arr)| proj[arr.target].mul(target.map(k)).mul(&lifts[arr.source]))
        .collect();
    (Representation::new_unchecked(a.clone(), dims, maps), proj)
}

#[derive(Clone, Debug)]
pub struct Syzygy {
    pub cover: ProjectiveCover,
    pub module: Representation,
    /// `Omega M -> P_0`, vertexwise.
    pub inclusion: Morphism,
}

impl Syzygy {
    /// Top generators of `Omega M`, written in the coordinates of `P_0`.
    pub fn top_in_cover(&self) -> Vec<(usize, Vec<Q>)> {
        top_generators(&self.module)
            .into_iter()
            .map(|(v, x)| (v, self.inclusion[v].mul_vec(&x)))
            .collect()
    }
}

pub fn syzygy(m: &Representation) -> Syzygy {
    let cover = projective_cover(m);
    let (module, inclusion) = kernel(&cover.projective, &cover.map);
    Syzygy { cover, module, inclusion }
}

pub fn omega(m: &Representation, k: usize) -> Representation {
    let mut x = m.clone();
    for _ in 0..k {
        x = syzygy(&x).module;
    }
    x
}

/// `dim Ext^k(M, N)`, via `Ext^k(M, N) = Ext^1(Omega^{k-1} M, N)`.
pub fn ext_dim(m: &Representation, n: &Representation, k: usize) -> Result<usize, AlgebraError> {
    if k == 0 {
        return hom_dim(m, n);
    }
    let x = omega(m, k - 1);
    let syz = syzygy(&x);
    let p0: usize = syz.cover.tops.iter().map(|(v, _)| n.dim_at(*v)).sum();
    let d = hom_dim(&syz.module, n)? + hom_dim(&x, n)?;
    Ok(d - p0)
}

/// Projective dimension, or `None` if it exceeds `cap`.
pub fn projective_dimension(m: &Representation, cap: usize) -> Option<usize> {
    let mut x = m.clone();
    if x.is_zero() {
        return Some(0);
    }
    for k in 0..=cap {
        let next = syzygy(&x).module;
        if next.is_zero() {
            return Some(k);
        }
        x = next;
    }
    None
}

/// Injective dimension, computed as `pd DM` over the opposite algebra.
pub fn injective_dimension(m: &Representation, op: &Algebra, cap: usize) -> Option<usize> {
    projective_dimension(&m.dual(op), cap)
}

pub const GLDIM_CAP: usize = 16;

pub fn global_dimension(a: &Algebra, cap: usize) -> Result<usize, AlgebraError> {
    let mut best = 0;
    for i in 0..a.vertex_count() {
        let s = super::module::simple(a, i);
        match projective_dimension(&s, cap) {
            Some(d) => best = best.max(d),
            None => return Err(AlgebraError::InfiniteGlobalDimensionWithinCap(cap)),
        }
    }
    Ok(best)
}

/// Auslander-Reiten translate `D Tr M`, built from a minimal projective
/// presentation and transposed over the opposite algebra `op`.
pub fn tau(m: &Representation, op: &Algebra) -> Representation {
    let a = m.algebra();
    let syz = syzygy(m);
    let g_verts = syz.cover.vertices();
    let h_gens = syz.top_in_cover();
    let h_verts: Vec<usize> = h_gens.iter().map(|(v, _)| *v).collect();
    let p1_dual = projective_sum(op, &h_verts);

    // e_g maps to sum_h c_{h,g} reversed, sitting in (P^op_{v_h})_{v_g}
    let gens: Vec<(usize, Vec<Q>)> = g_verts
        .iter()
        .enumerate()
        .map(|(gi, &vg)| {
            let mut img = Vec::new();
            for (vh, k) in &h_gens {
                let block = &syz.cover.split(*vh, k)[gi];
                let mut coords = vec![Q::zero(); op.basis(*vh, vg).len()];
                for (x, b) in block.iter().zip(a.basis(vg, *vh)) {
                    if x.is_zero() {
                        continue;
                    }
                    for (c, y) in op.reduce(&b.reversed()) {
                        coords[c] += x * &y;
                    }
                }
                img.extend(coords);
            }
            (vg, img)
        })
        .collect();
    let f = map_from_projectives(op, &gens, &p1_dual);
    let (tr, _) = cokernel(&p1_dual, &f);
    tr.dual(a)
}
