use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AlgebraDelta, Multicoil};
use crate::linalg::Matrix;
use crate::qalg::{linear_algebra, one_point_extension, Algebra, Extension};
use crate::reps::{hom_basis, projective, simple, thin, Representation};

/// How the extending module is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Family {
    /// `(A x T_t(K))[X + Y_1]`.
    WithD,
    /// `A[X]`.
    Pivot,
    /// `A[X + Y_1]` with `Y_1` in the window.
    WithY,
    /// Iterated extension through `T_r(K)`.
    WithG,
}

/// Vertex ids of the pieces of one operation.
pub(super) struct Ids {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub feed: Vec<String>,
    pub z: BTreeMap<(usize, usize), String>,
    pub xp: BTreeMap<usize, String>,
    pub yp: BTreeMap<usize, String>,
    pub w: Option<String>,
    pub d: BTreeMap<(usize, usize), String>,
    pub u: BTreeMap<(usize, usize), String>,
}

pub(super) struct Outcome {
    pub algebra: Option<Algebra>,
    pub reps: BTreeMap<String, Representation>,
    pub notes: Vec<String>,
    pub delta: AlgebraDelta,
}

pub(super) fn extend(mc: &Multicoil, family: Family, ext: &str, dverts: &[String], r: usize, ids: &Ids) -> Outcome {
    match try_extend(mc, family, ext, dverts, r, ids) {
        Ok(o) => o,
        Err(msg) => Outcome {
            algebra: None,
            reps: BTreeMap::new(),
            notes: vec![format!("step {}: algebra left symbolic: {msg}", mc.steps.len() + 1)],
            delta: AlgebraDelta::Symbolic(msg),
        },
    }
}

fn idx(a: &Algebra, id: &str) -> Result<usize, String> {
    a.vertex_index(id).ok_or_else(|| format!("unknown vertex `{id}`"))
}

fn try_extend(mc: &Multicoil, family: Family, ext: &str, dverts: &[String], r: usize, ids: &Ids) -> Result<Outcome, String> {
    let a = mc.algebra.as_ref().ok_or("no algebra attached")?;
    let rep = |id: &str| mc.rep(id).ok_or_else(|| format!("`{id}` has no representation"));
    let pivot = rep(&ids.x[0])?;
    let e_str = |e: crate::error::AlgebraError| e.to_string();
    let (base, msum): (Algebra, Vec<Representation>) = match family {
        Family::WithD if dverts.is_empty() => (a.clone(), vec![pivot.clone()]),
        Family::WithD => {
            let d = linear_algebra(dverts, &format!("{ext}:d")).map_err(e_str)?;
            let base: Algebra = Arc::new(a.product(&d).map_err(e_str)?);
            let support = dverts.iter().map(|v| idx(&base, v)).collect::<Result<Vec<_>, _>>()?;
            let y1 = thin(&base, &support).map_err(e_str)?;
            (base.clone(), vec![pivot.extend_by_zero(&base).map_err(e_str)?, y1])
        }
        Family::Pivot => (a.clone(), vec![pivot.clone()]),
        Family::WithY => (a.clone(), vec![pivot.clone(), rep(&ids.y[0])?.clone()]),
        Family::WithG => {
            let mut cur = one_point_extension(a, rep(&ids.y[0])?, &dverts[0], &[]).map_err(e_str)?.algebra;
            for k in 1..r {
                let p = projective(&cur, idx(&cur, &dverts[k - 1])?);
                cur = one_point_extension(&cur, &p, &dverts[k], &[]).map_err(e_str)?.algebra;
            }
            let top = projective(&cur, idx(&cur, &dverts[r - 1])?);
            (cur.clone(), vec![pivot.extend_by_zero(&cur).map_err(e_str)?, top])
        }
    };
    let mut m = msum[0].clone();
    for s in &msum[1..] {
        m = m.direct_sum(s).map_err(e_str)?;
    }
    let e = one_point_extension(&base, &m, ext, &[]).map_err(e_str)?;
    let new = e.algebra.clone();

    let mut notes = Vec::new();
    let mut reps = BTreeMap::new();
    for (id, x) in &mc.reps {
        match x.extend_by_zero(&new) {
            Ok(y) => {
                reps.insert(id.clone(), y);
            }
            Err(err) => notes.push(format!("`{id}` dropped: {err}")),
        }
    }
    let on_base = |id: &str| -> Option<Representation> { mc.rep(id).and_then(|x| x.extend_by_zero(&base).ok()) };
    let lift = |x: Representation| x.extend_by_zero(&new).ok();

    // modules of the added linear algebras
    let t = dverts.len();
    let mut d_reps: BTreeMap<(usize, usize), Representation> = BTreeMap::new();
    if family == Family::WithD {
        for (&(a0, b0), id) in &ids.d {
            let support: Vec<usize> = (a0..=b0).filter_map(|k| base.vertex_index(&dverts[k - 1])).collect();
            if let Ok(x) = thin(&base, &support) {
                d_reps.insert((a0, b0), x.clone());
                if let Some(y) = lift(x) {
                    reps.insert(id.clone(), y);
                }
            }
        }
    }
    if family == Family::WithG {
        let tt = ids.feed.len() - r;
        for (&(k, l), id) in &ids.u {
            if l > tt {
                let support: Vec<usize> = (l - tt..=k).filter_map(|j| base.vertex_index(&dverts[j - 1])).collect();
                if let Some(y) = thin(&base, &support).ok().and_then(lift) {
                    reps.insert(id.clone(), y);
                }
            }
        }
    }
    let feed = |j: usize| -> Option<Representation> {
        match family {
            Family::WithD => d_reps.get(&(1, t - j + 1)).cloned(),
            Family::Pivot | Family::WithY => on_base(&ids.feed[j - 1]),
            Family::WithG => None,
        }
    };
    let (z_pairs, y_pair): (&[(usize, usize)], (usize, usize)) = match family {
        Family::Pivot => (&[(0, 0), (0, 1)], (0, 0)),
        _ => (&[(0, 0), (1, 1)], (1, 0)),
    };
    let mut glue_into = |id: &str, targets: Option<Vec<Representation>>, pairs: &[(usize, usize)]| {
        let Some(ts) = targets else { return };
        match glue(&e, &base, &msum, &ts, pairs) {
            Ok(x) => {
                reps.insert(id.to_string(), x);
            }
            Err(err) => notes.push(format!("`{id}` not materialized: {err}")),
        }
    };
    for (&(i, j), id) in &ids.z {
        let ts = on_base(&ids.x[i]).zip(feed(j)).map(|(a, b)| vec![a, b]);
        glue_into(id, ts, z_pairs);
    }
    for (&i, id) in &ids.xp {
        glue_into(id, on_base(&ids.x[i]).map(|a| vec![a]), &[(0, 0)]);
    }
    for (&j, id) in &ids.yp {
        glue_into(id, feed(j).map(|a| vec![a]), &[y_pair]);
    }
    if let Some(id) = &ids.w {
        reps.insert(id.clone(), simple(&new, e.vertex));
    }
    let delta = AlgebraDelta::Exact {
        vertices: new.vertex_count() - a.vertex_count(),
        arrows: new.quiver().arrow_count() - a.quiver().arrow_count(),
        relations: new.relations().len().saturating_sub(a.relations().len()),
    };
    Ok(Outcome { algebra: Some(new), reps, notes, delta })
}

/// `(K, T_1 + ... + T_l, phi)` where `phi` has a nonzero block
/// `Hom(M_a, T_b)` for each listed pair.
fn glue(
    e: &Extension,
    base: &Algebra,
    msum: &[Representation],
    tsum: &[Representation],
    pairs: &[(usize, usize)],
) -> Result<Representation, String> {
    let mut target = tsum[0].clone();
    for t in &tsum[1..] {
        target = target.direct_sum(t).map_err(|e| e.to_string())?;
    }
    let n = base.vertex_count();
    let off = |reps: &[Representation], k: usize, v: usize| -> usize { reps[..k].iter().map(|x| x.dim_at(v)).sum() };
    let mut phi: Vec<Matrix> = (0..n).map(|v| Matrix::zeros(off(tsum, tsum.len(), v), off(msum, msum.len(), v))).collect();
    for &(a, b) in pairs {
        let basis = hom_basis(&msum[a], &tsum[b]).map_err(|e| e.to_string())?;
        let f = basis.first().ok_or_else(|| format!("Hom(M_{a}, T_{b}) = 0"))?;
        for v in 0..n {
            phi[v].paste(off(tsum, b, v), off(msum, a, v), &f[v]);
        }
    }
    e.module(&target, &[phi]).map_err(|e| e.to_string())
}
