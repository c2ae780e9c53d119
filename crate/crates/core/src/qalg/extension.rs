use std::sync::Arc;

use num_traits::Zero;

use super::algebra::{Algebra, BoundQuiverAlgebra, Relation};
use super::quiver::Path;
use crate::error::AlgebraError;
use crate::linalg::{Matrix, Q};
use crate::reps::{projective_cover, syzygy, Morphism, Representation};

/// `A[M]`: a new source `omega` with one arrow to `v_g` per top generator
/// `m_g` of `M`, bound by the top generators of `Omega M`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: Algebra,
    pub vertex: usize,
    /// New arrow index and the top generator of `M` it points at.
    pub arrows: Vec<(usize, usize, Vec<Q>)>,
}

/// Ids for the new arrows are `arrow_ids[k]` when given, otherwise fresh.
pub fn one_point_extension(
    a: &Algebra,
    m: &Representation,
    vertex_id: &str,
    arrow_ids: &[String],
) -> Result<Extension, AlgebraError> {
    if **m.algebra() != **a {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let syz = syzygy(m);
    let tops = syz.cover.tops.clone();
    let mut quiver = a.quiver().clone();
    let omega = quiver.add_vertex(vertex_id.to_string())?;
    let mut arrows = Vec::new();
    for (k, (v, x)) in tops.iter().enumerate() {
        let id = match arrow_ids.get(k) {
            Some(id) => id.clone(),
            None => quiver.fresh_id(&format!("{vertex_id}>{}", a.vertex_id(*v))),
        };
        let idx = quiver.add_arrow(id, vertex_id, &a.vertex_id(*v).to_string())?;
        arrows.push((idx, *v, x.clone()));
    }

    let mut relations: Vec<Relation> = a.relations().to_vec();
    for (vh, k) in syz.top_in_cover() {
        let blocks = syz.cover.split(vh, &k);
        let mut terms: Vec<(Q, Path)> = Vec::new();
        for (gi, block) in blocks.iter().enumerate() {
            let (beta, vg, _) = &arrows[gi];
            for (x, b) in block.iter().zip(a.basis(*vg, vh)) {
                if x.is_zero() {
                    continue;
                }
                let head = Path { start: omega, end: *vg, arrows: vec![*beta] };
                terms.push((x.clone(), head.concat(b).expect("composable")));
            }
        }
        relations.push(Relation { terms });
    }
    let cap = a.length_cap().max(a.nilpotency() + 2);
    let ext = BoundQuiverAlgebra::compute_path_basis(quiver, relations, cap)?;
    let expected = a.dim() + 1 + m.total_dim();
    if ext.dim() != expected {
        return Err(AlgebraError::ExtensionDimension { expected, found: ext.dim() });
    }
    Ok(Extension { algebra: Arc::new(ext), vertex: omega, arrows })
}

impl Extension {
    /// The module `(K^k, X, phi)` of `A[M]`, where `phis[i]` is a morphism
    /// `M -> X` giving the image of the `i`-th basis vector at the new vertex.
    pub fn module(&self, x: &Representation, phis: &[Morphism]) -> Result<Representation, AlgebraError> {
        let base = x.extend_by_zero(&self.algebra)?;
        let mut dims = base.dims().to_vec();
        dims[self.vertex] = phis.len();
        let mut maps = base.maps().to_vec();
        for (beta, vg, mg) in &self.arrows {
            let cols: Vec<Vec<Q>> = phis.iter().map(|f| f[*vg].mul_vec(mg)).collect();
            maps[*beta] = Matrix::from_columns(x.dim_at(*vg), &cols);
        }
        Representation::new(self.algebra.clone(), dims, maps)
    }
}

/// `[M]A`: a new sink, computed as `(A^op [DM])^op`.
pub fn one_point_coextension(
    a: &Algebra,
    m: &Representation,
    vertex_id: &str,
    arrow_ids: &[String],
) -> Result<Extension, AlgebraError> {
    let op = Arc::new(a.opposite()?);
    let ext = one_point_extension(&op, &m.dual(&op), vertex_id, arrow_ids)?;
    let back = Arc::new(ext.algebra.opposite()?);
    Ok(Extension { algebra: back, vertex: ext.vertex, arrows: ext.arrows })
}

/// Number of top generators of `M`, i.e. arrows added by `A[M]`.
pub fn top_count(m: &Representation) -> usize {
    projective_cover(m).tops.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::Quiver;
    use crate::reps::{hom_dim, injective, projective, simple};

    fn a2() -> Algebra {
        let q = Quiver::new(["1", "2"], vec![("a".to_string(), "1".to_string(), "2".to_string())]).unwrap();
        Arc::new(BoundQuiverAlgebra::compute_path_basis(q, vec![], 4).unwrap())
    }

    #[test]
    fn extension_by_simple_source_adds_zero_relation() {
        let a = a2();
        let e = one_point_extension(&a, &simple(&a, 0), "w", &[]).unwrap();
        assert_eq!(e.algebra.dim(), 5);
        assert_eq!(e.algebra.relations().len(), 1);
        assert_eq!(e.algebra.relations()[0].display(e.algebra.quiver()).to_string(), "w>1 a");
    }

    #[test]
    fn radical_of_new_projective_is_the_module() {
        let a = a2();
        for m in [simple(&a, 0), simple(&a, 1), projective(&a, 0), injective(&a, 0)] {
            let e = one_point_extension(&a, &m, "w", &[]).unwrap();
            let p = projective(&e.algebra, e.vertex);
            let mut want = m.extend_by_zero(&e.algebra).unwrap().dims().to_vec();
            want[e.vertex] = 1;
            assert_eq!(p.dims(), &want[..]);
        }
    }

    #[test]
    fn coextension_adds_a_sink() {
        let a = a2();
        let e = one_point_coextension(&a, &injective(&a, 1), "w", &[]).unwrap();
        assert_eq!(e.algebra.dim(), 3 + 1 + 2);
        let i = injective(&e.algebra, e.vertex);
        assert_eq!(i.dims(), &[1, 1, 1]);
        let q = e.algebra.quiver();
        assert_eq!(q.arrow(q.arrow_index("w>2").unwrap()).target, e.vertex);
    }

    #[test]
    fn extension_module_from_morphism() {
        let a = a2();
        let m = simple(&a, 1);
        let e = one_point_extension(&a, &m, "w", &[]).unwrap();
        let x = projective(&a, 0);
        let f = crate::reps::hom_basis(&m, &x).unwrap();
        assert_eq!(f.len(), 1);
        let y = e.module(&x, &f).unwrap();
        assert_eq!(y.dims(), &[1, 1, 1]);
        assert_eq!(hom_dim(&projective(&e.algebra, e.vertex), &y).unwrap(), 1);
    }
}
