use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::algebra_side::{self, Family, Ids};
use super::{classify_support, LedgerEntry, Multicoil, OpKind, OpSpec, Piece, ShapeKind, StepReport, Support};
use crate::error::OpError;
use crate::reps::{dimvec_add, dimvec_unit, is_brick, DimVec};
use crate::tquiver::{is_sectional, TVertex, TranslationQuiver};

#[derive(Clone, Copy, Default)]
struct Flags {
    proj: bool,
    inj: bool,
    boundary: bool,
}

struct Work {
    g: TranslationQuiver,
    step: usize,
    tag: String,
    ext: String,
    entries: Vec<LedgerEntry>,
}

impl Work {
    fn omega(&self) -> DimVec {
        dimvec_unit(&self.ext)
    }

    fn add(&mut self, piece: Piece, id: Option<String>, parts: &[usize], extra: DimVec, f: Flags) -> Result<usize, OpError> {
        let id = id.unwrap_or_else(|| format!("{piece}@step{}", self.step));
        let mut label = Some(extra.clone());
        for &p in parts {
            label = match (label, self.g.label(p)) {
                (Some(a), Some(b)) => Some(dimvec_add(&a, b)),
                _ => None,
            };
        }
        let mut v = TVertex::new(id.clone());
        v.label = label.clone();
        v.proj = f.proj;
        v.inj = f.inj;
        v.boundary = f.boundary;
        let k = self.g.add_vertex(v)?;
        self.entries.push(LedgerEntry {
            step: self.step,
            op: self.tag.clone(),
            id,
            piece,
            label,
            parts: parts.iter().map(|&p| self.g.id(p).to_string()).collect(),
            extra,
        });
        Ok(k)
    }

    fn arrow(&mut self, s: usize, t: usize) {
        self.g.add_arrow(s, t);
    }

    fn remove(&mut self, s: usize, t: usize) -> Result<(), OpError> {
        if self.g.remove_arrow(s, t) {
            Ok(())
        } else {
            Err(OpError::ShapeMismatch {
                expected: format!("arrow {} -> {}", self.g.id(s), self.g.id(t)),
                found: "no such arrow".into(),
            })
        }
    }

    /// `S<d>` for simples and `M(<d_a>-<d_b>)` otherwise, unless taken.
    fn interval_name(&self, d: &[String], a: usize, b: usize) -> String {
        let base = if a == b { format!("S{}", d[a - 1]) } else { format!("M({}-{})", d[a - 1], d[b - 1]) };
        if self.g.index(&base).is_some() {
            format!("{base}@step{}", self.step)
        } else {
            base
        }
    }
}

#[derive(Default)]
struct Layout {
    z: BTreeMap<(usize, usize), usize>,
    xp: BTreeMap<usize, usize>,
    yp: BTreeMap<usize, usize>,
    w: Option<usize>,
    u: BTreeMap<(usize, usize), usize>,
    d: BTreeMap<(usize, usize), usize>,
    /// Feeders `F_1, ..., F_T` of the first Z row.
    feed: Vec<usize>,
    removed: Vec<usize>,
    columns: Vec<Vec<usize>>,
}

fn too_tight(what: &str, need: usize, have: usize) -> OpError {
    OpError::BoundaryTooTight(format!("{what} needs {need} hosted ray vertices, window has {have}"))
}

fn check_path_end(g: &TranslationQuiver, f: &[usize]) -> Result<(), OpError> {
    for (k, &v) in f.iter().enumerate() {
        let mut want: Vec<usize> = f.get(k + 1).copied().into_iter().collect();
        let mut have = g.succs(v).to_vec();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return Err(OpError::ShapeMismatch {
                expected: format!("`{}` with successors {:?}", g.id(v), want.iter().map(|&x| g.id(x)).collect::<Vec<_>>()),
                found: format!("{:?}", have.iter().map(|&x| g.id(x)).collect::<Vec<_>>()),
            });
        }
    }
    Ok(())
}

/// Intervals of `T_t(K)` with `Y_j = [1, t-j+1]`.
fn gamma_d(w: &mut Work, d: &[String], lay: &mut Layout) -> Result<Vec<usize>, OpError> {
    let t = d.len();
    for a in 1..=t {
        for b in a..=t {
            let name = w.interval_name(d, a, b);
            let extra = (a..=b).fold(DimVec::new(), |acc, k| dimvec_add(&acc, &dimvec_unit(&d[k - 1])));
            let f = Flags { proj: b == t, inj: a == 1, boundary: false };
            let v = w.add(Piece::D(a, b), Some(name), &[], extra, f)?;
            lay.d.insert((a, b), v);
        }
    }
    let iv = lay.d.clone();
    for (&(a, b), &v) in &iv {
        if a > 1 {
            w.arrow(v, iv[&(a - 1, b)]);
        }
        if b > a {
            w.arrow(v, iv[&(a, b - 1)]);
        }
        if b < t {
            w.g.set_tau(v, iv[&(a + 1, b + 1)]);
        }
    }
    Ok((1..=t).map(|j| iv[&(1, t - j + 1)]).collect())
}

/// Delete `Y_i -> tau^{-1} Y_{i-1}` and collect the components they cut off.
fn gamma_hat(w: &mut Work, y: &[usize], pivot: usize) -> Result<Vec<usize>, OpError> {
    let mut targets = Vec::new();
    for i in 2..=y.len() {
        if let Some(u) = w.g.tau_inv(y[i - 2]) {
            if !w.g.remove_arrow(y[i - 1], u) {
                return Err(OpError::GammaHatInfinite(format!(
                    "arrow {} -> {} is cut by the window",
                    w.g.id(y[i - 1]),
                    w.g.id(u)
                )));
            }
            targets.push(u);
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<usize> = targets.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        if !seen.insert(v) {
            continue;
        }
        for &n in w.g.succs(v).iter().chain(w.g.preds(v)) {
            queue.push_back(n);
        }
    }
    if seen.contains(&pivot) {
        return Err(OpError::GammaHatInfinite("deleted part contains the pivot".into()));
    }
    if let Some(&b) = seen.iter().find(|&&v| w.g.is_boundary(v)) {
        return Err(OpError::GammaHatInfinite(format!("deleted part reaches boundary vertex `{}`", w.g.id(b))));
    }
    Ok(seen.into_iter().collect())
}

/// Rows `0..=m` of Z's fed by `f` in row 0, the ray of X's, and for finite
/// rows the closure by `Y'_j` and `W`. Used by (ad1), (ad4), (fad1), (fad4).
fn family_a(w: &mut Work, x: &[usize], f: &[usize], finite: bool, lay: &mut Layout) -> Result<(), OpError> {
    let m = x.len() - 1;
    let tt = f.len();
    let om = w.omega();
    let tinv: Vec<Option<usize>> = x.iter().map(|&v| w.g.tau_inv(v)).collect();
    let bnd = |i: usize| !finite && i == m;
    for i in 0..=m {
        for j in 1..=tt {
            let fl = Flags { proj: i == 0 && j == 1, inj: false, boundary: bnd(i) };
            let v = w.add(Piece::Z(i, j), None, &[x[i], f[j - 1]], om.clone(), fl)?;
            lay.z.insert((i, j), v);
        }
    }
    for i in 0..=m {
        let fl = Flags { proj: i == 0 && tt == 0, inj: tinv[i].is_none() && !bnd(i), boundary: bnd(i) };
        let v = w.add(Piece::XPrime(i), None, &[x[i]], om.clone(), fl)?;
        lay.xp.insert(i, v);
    }
    let z = lay.z.clone();
    let xp = lay.xp.clone();
    for i in 0..=m {
        if tt >= 1 {
            w.arrow(x[i], z[&(i, 1)]);
            for j in 1..tt {
                w.arrow(z[&(i, j)], z[&(i, j + 1)]);
            }
            w.arrow(z[&(i, tt)], xp[&i]);
        } else {
            w.arrow(x[i], xp[&i]);
        }
        if i < m {
            for j in 1..=tt {
                w.arrow(z[&(i, j)], z[&(i + 1, j)]);
            }
            w.arrow(xp[&i], xp[&(i + 1)]);
        }
    }
    for j in 1..=tt {
        w.arrow(f[j - 1], z[&(0, j)]);
    }
    for i in 1..=m {
        if let Some(u) = tinv[i - 1] {
            if w.g.remove_arrow(x[i], u) {
                w.arrow(xp[&i], u);
            }
        }
    }
    for i in 0..=m {
        if let Some(u) = tinv[i] {
            w.g.set_tau(u, xp[&i]);
        }
    }
    for i in 0..=m {
        for j in 1..=tt {
            match (i, j) {
                (0, 1) => {}
                (0, _) => w.g.set_tau(z[&(0, j)], f[j - 2]),
                (_, 1) => w.g.set_tau(z[&(i, 1)], x[i - 1]),
                _ => w.g.set_tau(z[&(i, j)], z[&(i - 1, j - 1)]),
            }
        }
        match (i, tt) {
            (0, 0) => {}
            (0, _) => w.g.set_tau(xp[&0], f[tt - 1]),
            (_, 0) => w.g.set_tau(xp[&i], x[i - 1]),
            _ => w.g.set_tau(xp[&i], z[&(i - 1, tt)]),
        }
    }
    if finite {
        let last_z: Vec<usize> = (1..=tt).map(|j| z[&(m, j)]).collect();
        closure(w, x[m], xp[&m], &last_z, f, lay)?;
    } else {
        for j in 1..=tt {
            lay.columns.push((0..=m).map(|i| z[&(i, j)]).collect());
        }
        lay.columns.push((0..=m).map(|i| xp[&i]).collect());
    }
    Ok(())
}

/// `Y'_1, ..., Y'_T` and `W` closing a finite rectangle whose last row is
/// `X_s, Z_{s1}, ..., Z_{sT}, X'_s`.
fn closure(
    w: &mut Work,
    xs: usize,
    xps: usize,
    last_z: &[usize],
    f: &[usize],
    lay: &mut Layout,
) -> Result<(), OpError> {
    let om = w.omega();
    let tt = f.len();
    let inj = Flags { proj: false, inj: true, boundary: false };
    let mut yp = Vec::new();
    for j in 1..=tt {
        let v = w.add(Piece::YPrime(j), None, &[f[j - 1]], om.clone(), inj)?;
        w.arrow(last_z[j - 1], v);
        if j > 1 {
            w.arrow(yp[j - 2], v);
        }
        w.g.set_tau(v, if j == 1 { xs } else { last_z[j - 2] });
        lay.yp.insert(j, v);
        yp.push(v);
    }
    let wv = w.add(Piece::W, None, &[], om, inj)?;
    w.arrow(xps, wv);
    if tt >= 1 {
        w.arrow(yp[tt - 1], wv);
    }
    w.g.set_tau(wv, if tt == 0 { xs } else { last_z[tt - 1] });
    lay.w = Some(wv);
    Ok(())
}

/// (ad2) and (fad2): `X'_0` projective-injective, rows `1..=m`.
fn family_b(w: &mut Work, x: &[usize], y: &[usize], finite: bool, lay: &mut Layout) -> Result<(), OpError> {
    let m = x.len() - 1;
    let t = y.len();
    if !w.g.is_inj(x[0]) {
        return Err(OpError::ShapeMismatch { expected: "injective pivot".into(), found: w.g.id(x[0]).into() });
    }
    if let Some(&v) = y.iter().find(|&&v| !w.g.is_inj(v)) {
        return Err(OpError::ShapeMismatch { expected: "injective Y path".into(), found: w.g.id(v).into() });
    }
    check_path_end(&w.g, y)?;
    let om = w.omega();
    let tinv: Vec<Option<usize>> = x.iter().map(|&v| w.g.tau_inv(v)).collect();
    let bnd = |i: usize| !finite && i == m;
    let xp0 = w.add(Piece::XPrime(0), None, &[x[0]], om.clone(), Flags { proj: true, inj: true, boundary: false })?;
    lay.xp.insert(0, xp0);
    for i in 1..=m {
        for j in 1..=t {
            let v = w.add(Piece::Z(i, j), None, &[x[i], y[j - 1]], om.clone(), Flags { boundary: bnd(i), ..Flags::default() })?;
            lay.z.insert((i, j), v);
        }
        let fl = Flags { proj: false, inj: tinv[i].is_none() && !bnd(i), boundary: bnd(i) };
        let v = w.add(Piece::XPrime(i), None, &[x[i]], om.clone(), fl)?;
        lay.xp.insert(i, v);
    }
    let z = lay.z.clone();
    let xp = lay.xp.clone();
    w.arrow(x[0], xp0);
    w.arrow(xp0, z[&(1, 1)]);
    for j in 1..=t {
        w.arrow(y[j - 1], z[&(1, j)]);
    }
    for i in 1..=m {
        w.arrow(x[i], z[&(i, 1)]);
        for j in 1..t {
            w.arrow(z[&(i, j)], z[&(i, j + 1)]);
        }
        w.arrow(z[&(i, t)], xp[&i]);
        if i < m {
            for j in 1..=t {
                w.arrow(z[&(i, j)], z[&(i + 1, j)]);
            }
            w.arrow(xp[&i], xp[&(i + 1)]);
        }
    }
    for i in 2..=m {
        if let Some(u) = tinv[i - 1] {
            if w.g.remove_arrow(x[i], u) {
                w.arrow(xp[&i], u);
            }
        }
    }
    for i in 1..=m {
        if let Some(u) = tinv[i] {
            w.g.set_tau(u, xp[&i]);
        }
    }
    for i in 1..=m {
        for j in 1..=t {
            match (i, j) {
                (_, 1) => w.g.set_tau(z[&(i, 1)], x[i - 1]),
                (1, _) => w.g.set_tau(z[&(1, j)], y[j - 2]),
                _ => w.g.set_tau(z[&(i, j)], z[&(i - 1, j - 1)]),
            }
        }
        w.g.set_tau(xp[&i], if i == 1 { y[t - 1] } else { z[&(i - 1, t)] });
    }
    if finite {
        let last_z: Vec<usize> = (1..=t).map(|j| z[&(m, j)]).collect();
        closure(w, x[m], xp[&m], &last_z, y, lay)?;
    } else {
        for j in 1..=t {
            lay.columns.push((1..=m).map(|i| z[&(i, j)]).collect());
        }
        lay.columns.push((1..=m).map(|i| xp[&i]).collect());
    }
    Ok(())
}

/// (ad3) and (fad3): rows `Z_{ij}`, `j <= min(i, t)`, after deleting the
/// parallel arrows and the part cut off by the `Y` path.
fn family_c(w: &mut Work, x: &[usize], y: &[usize], finite: bool, lay: &mut Layout) -> Result<(), OpError> {
    let m = x.len() - 1;
    let t = y.len();
    let yy = |i: usize| y[i - 1];
    if !w.g.is_inj(x[t - 1]) {
        return Err(OpError::ShapeMismatch { expected: format!("X_{} injective", t - 1), found: w.g.id(x[t - 1]).into() });
    }
    lay.removed = gamma_hat(w, y, x[0])?;
    for i in 2..=t {
        w.remove(x[i - 1], yy(i))?;
        w.remove(yy(i - 1), yy(i))?;
    }
    for i in 1..=t {
        let extra: Vec<usize> = w.g.succs(yy(i)).to_vec();
        if !extra.is_empty() {
            return Err(OpError::ShapeMismatch {
                expected: format!("`{}` without further successors", w.g.id(yy(i))),
                found: format!("{:?}", extra.iter().map(|&v| w.g.id(v)).collect::<Vec<_>>()),
            });
        }
    }
    let om = w.omega();
    let tinv: Vec<Option<usize>> = x.iter().map(|&v| w.g.tau_inv(v)).collect();
    let bnd = |i: usize| !finite && i == m;
    let xp0 = w.add(Piece::XPrime(0), None, &[x[0]], om.clone(), Flags { proj: true, ..Flags::default() })?;
    lay.xp.insert(0, xp0);
    for i in 1..=m {
        for j in 1..=i.min(t) {
            let v = w.add(Piece::Z(i, j), None, &[x[i], yy(j)], om.clone(), Flags { boundary: bnd(i), ..Flags::default() })?;
            lay.z.insert((i, j), v);
        }
        let inj = if i < t { i == t - 1 } else { tinv[i].is_none() && !bnd(i) };
        let v = w.add(Piece::XPrime(i), None, &[x[i]], om.clone(), Flags { proj: false, inj, boundary: bnd(i) })?;
        lay.xp.insert(i, v);
    }
    // (fad3) with s = t-1: Z_tt is Y'_t and X'_t is W
    let short = finite && m + 1 == t;
    let om2 = om.clone();
    let (ztt, wtt) = if short {
        let inj = Flags { inj: true, ..Flags::default() };
        let a = w.add(Piece::YPrime(t), None, &[yy(t)], om2.clone(), inj)?;
        let b = w.add(Piece::W, None, &[], om2, inj)?;
        lay.yp.insert(t, a);
        lay.w = Some(b);
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let z = |i: usize, j: usize, lay: &Layout| -> usize {
        if i == t && j == t && short {
            ztt.unwrap()
        } else {
            lay.z[&(i, j)]
        }
    };
    let xpv = |i: usize, lay: &Layout| -> usize {
        if i == t && short {
            wtt.unwrap()
        } else {
            lay.xp[&i]
        }
    };
    let top = if short { t } else { m };
    w.arrow(x[0], xp0);
    for i in 0..t {
        if i + 1 <= top {
            w.arrow(xpv(i, lay), z(i + 1, i + 1, lay));
        }
    }
    for i in 1..=t.min(top) {
        w.arrow(yy(i), z(i, i, lay));
        w.arrow(z(i, i, lay), xpv(i, lay));
        if i < t {
            w.arrow(z(i, i, lay), yy(i + 1));
        }
    }
    for i in 1..=m {
        w.arrow(x[i], z(i, 1, lay));
        for j in 1..i.min(t) {
            w.arrow(z(i, j, lay), z(i, j + 1, lay));
        }
        if i < m {
            for j in 1..=i.min(t) {
                w.arrow(z(i, j, lay), z(i + 1, j, lay));
            }
        }
        if i >= t + 1 {
            w.arrow(z(i, t, lay), xpv(i, lay));
        }
        if i >= t && i < m {
            w.arrow(xpv(i, lay), xpv(i + 1, lay));
        }
    }
    for i in (t + 1)..=m {
        if let Some(u) = tinv[i - 1] {
            if w.g.remove_arrow(x[i], u) {
                w.arrow(xpv(i, lay), u);
            }
        }
    }
    for i in t..=m {
        if let Some(u) = tinv[i] {
            w.g.set_tau(u, xpv(i, lay));
        }
    }
    for j in 2..=t {
        w.g.set_tau(yy(j), lay.xp[&(j - 2)]);
    }
    for i in 1..=top {
        let first = if short && i == t { t } else { 1 };
        for j in first..=i.min(t) {
            let v = z(i, j, lay);
            if j == 1 {
                w.g.set_tau(v, x[i - 1]);
            } else {
                w.g.set_tau(v, z(i - 1, j - 1, lay));
            }
        }
        let v = xpv(i, lay);
        if i <= t {
            w.g.set_tau(v, yy(i));
        } else {
            w.g.set_tau(v, z(i - 1, t, lay));
        }
    }
    if finite && !short {
        let last_z: Vec<usize> = (1..=t).map(|j| lay.z[&(m, j)]).collect();
        closure(w, x[m], lay.xp[&m], &last_z, y, lay)?;
    } else if finite {
        // Y'_1, ..., Y'_{t-1} close the rows below the identified corner
        let inj = Flags { inj: true, ..Flags::default() };
        let mut prev = None;
        for j in 1..t {
            let v = w.add(Piece::YPrime(j), None, &[yy(j)], om.clone(), inj)?;
            w.arrow(lay.z[&(m, j)], v);
            if let Some(p) = prev {
                w.arrow(p, v);
            }
            w.g.set_tau(v, if j == 1 { x[m] } else { lay.z[&(m, j - 1)] });
            lay.yp.insert(j, v);
            prev = Some(v);
        }
        let ytt = ztt.unwrap();
        if let Some(p) = prev {
            w.arrow(p, ytt);
        }
        w.g.set_tau(wtt.unwrap(), yy(t));
    } else {
        for j in 1..=t {
            lay.columns.push((j..=m).map(|i| lay.z[&(i, j)]).collect());
        }
        lay.columns.push((t..=m).map(|i| lay.xp[&i]).collect());
    }
    Ok(())
}

/// The `U_{kl}` rectangle of (ad4)/(fad4) with `r >= 1`; returns its top row.
fn u_block(w: &mut Work, y: &[usize], g: &[String], lay: &mut Layout) -> Result<Vec<usize>, OpError> {
    let t = y.len();
    let r = g.len();
    let unit = |k: usize| dimvec_unit(&g[k - 1]);
    let span = |a: usize, b: usize| (a..=b).fold(DimVec::new(), |acc, k| dimvec_add(&acc, &unit(k)));
    for k in 1..=r {
        for l in 1..=t + k {
            let (parts, extra) = if l <= t { (vec![y[l - 1]], span(1, k)) } else { (vec![], span(l - t, k)) };
            let v = w.add(Piece::U(k, l), None, &parts, extra, Flags { proj: l == 1, ..Flags::default() })?;
            lay.u.insert((k, l), v);
        }
    }
    let u = lay.u.clone();
    for k in 1..=r {
        for l in 1..=t + k {
            if k == 1 && l <= t {
                w.arrow(y[l - 1], u[&(1, l)]);
            }
            if l < t + k {
                w.arrow(u[&(k, l)], u[&(k, l + 1)]);
            }
            if k < r {
                w.arrow(u[&(k, l)], u[&(k + 1, l)]);
            }
            if l >= 2 {
                if k >= 2 {
                    w.g.set_tau(u[&(k, l)], u[&(k - 1, l - 1)]);
                } else if l <= t + 1 {
                    w.g.set_tau(u[&(1, l)], y[l - 2]);
                }
            }
        }
    }
    Ok((1..=t + r).map(|l| u[&(r, l)]).collect())
}

fn expect_shape(sup: &Support, kind: OpKind) -> Result<(), OpError> {
    let ok = match (kind, &sup.kind) {
        (OpKind::Ad1 | OpKind::Ad4, ShapeKind::InfiniteRay) => true,
        (OpKind::Ad2, ShapeKind::RayPlusFiniteCoray(_)) => true,
        (OpKind::Ad3, ShapeKind::ParallelMesh(_)) => true,
        (OpKind::Fad1 | OpKind::Fad4, ShapeKind::FiniteRay(_)) => true,
        (OpKind::Fad2, ShapeKind::TwoFinitePaths(..)) => true,
        (OpKind::Fad3, ShapeKind::FiniteParallelMesh(..)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let expected = match kind {
            OpKind::Ad1 | OpKind::Ad4 => "InfiniteRay",
            OpKind::Ad2 => "RayPlusFiniteCoray",
            OpKind::Ad3 => "ParallelMesh",
            OpKind::Fad1 | OpKind::Fad4 => "FiniteRay",
            OpKind::Fad2 => "TwoFinitePaths",
            OpKind::Fad3 => "FiniteParallelMesh",
            OpKind::Ad5 => "ad5 grammar",
        };
        Err(OpError::ShapeMismatch { expected: expected.into(), found: sup.kind.to_string() })
    }
}

fn default_ids(given: &[String], n: usize, ext: &str) -> Vec<String> {
    if given.len() == n {
        given.to_vec()
    } else {
        (1..=n).map(|k| format!("{ext}.{k}")).collect()
    }
}

pub(super) fn apply_primal(mc: &Multicoil, spec: &OpSpec, dual: bool) -> Result<Multicoil, OpError> {
    if spec.kind == OpKind::Ad5 {
        return apply_ad5(mc, spec, dual);
    }
    let tag = format!("{}{}", spec.kind.name(), if dual { "*" } else { "" });
    let g0 = &mc.quiver;
    let x0 = g0.index(&spec.pivot).ok_or_else(|| OpError::UnknownPivot(spec.pivot.clone()))?;
    if mc.provenance_gating && matches!(spec.kind, OpKind::Ad2 | OpKind::Ad3) {
        let ok = matches!(mc.origin.get(&spec.pivot).map(String::as_str), Some("ad1*" | "fad1*"));
        if !ok {
            return Err(OpError::BadParameter(format!("pivot `{}` does not come from (ad1*) or (fad1*)", spec.pivot)));
        }
    }
    if let Some(m) = mc.rep(&spec.pivot) {
        if !is_brick(m) {
            return Err(OpError::BadParameter(format!("pivot `{}` is not a brick", spec.pivot)));
        }
    }
    let hint = match spec.kind {
        OpKind::Ad2 | OpKind::Ad3 | OpKind::Fad2 | OpKind::Fad3 => spec.y.first().and_then(|id| g0.index(id)),
        _ => None,
    };
    let sup = classify_support(g0, x0, hint)?;
    expect_shape(&sup, spec.kind)?;
    let step = mc.steps.len() + 1;
    let ext = spec.ext.clone().unwrap_or_else(|| format!("w{step}"));
    if let Some(a) = &mc.algebra {
        if a.vertex_index(&ext).is_some() {
            return Err(OpError::BadParameter(format!("extension vertex `{ext}` already exists")));
        }
    }
    let mut w = Work { g: g0.clone(), step, tag: tag.clone(), ext: ext.clone(), entries: vec![] };
    let mut lay = Layout::default();
    let x = sup.x_path.clone();
    let m = x.len() - 1;
    let mut t = spec.t;
    let mut y_path: Vec<usize> = sup.y_path.clone();
    let mut dverts: Vec<String> = vec![];
    let family;
    match spec.kind {
        OpKind::Ad1 | OpKind::Fad1 => {
            if spec.kind == OpKind::Ad1 && m < 1 {
                return Err(too_tight("ad1", 2, m + 1));
            }
            dverts = default_ids(&spec.dvert, t, &ext);
            let f = gamma_d(&mut w, &dverts, &mut lay)?;
            lay.feed = f.clone();
            family_a(&mut w, &x, &f, spec.kind == OpKind::Fad1, &mut lay)?;
            family = Family::WithD;
        }
        OpKind::Ad2 | OpKind::Fad2 => {
            t = y_path.len();
            if spec.t != 0 && spec.t != t {
                return Err(OpError::ShapeMismatch { expected: format!("t = {}", spec.t), found: format!("t = {t}") });
            }
            if spec.kind == OpKind::Ad2 && m < 2 {
                return Err(too_tight("ad2", 3, m + 1));
            }
            if spec.kind == OpKind::Fad2 && m < 1 {
                return Err(OpError::ShapeMismatch { expected: "s >= 1".into(), found: "s = 0".into() });
            }
            lay.feed = y_path.clone();
            family_b(&mut w, &x, &y_path, spec.kind == OpKind::Fad2, &mut lay)?;
            family = Family::Pivot;
        }
        OpKind::Ad3 | OpKind::Fad3 => {
            t = y_path.len();
            if spec.t != 0 && spec.t != t {
                return Err(OpError::ShapeMismatch { expected: format!("t = {}", spec.t), found: format!("t = {t}") });
            }
            if spec.kind == OpKind::Ad3 && m < t + 1 {
                return Err(too_tight("ad3", t + 2, m + 1));
            }
            if spec.kind == OpKind::Fad3 && m + 1 < t {
                return Err(OpError::ShapeMismatch { expected: format!("s >= {}", t - 1), found: format!("s = {m}") });
            }
            lay.feed = y_path.clone();
            family_c(&mut w, &x, &y_path, spec.kind == OpKind::Fad3, &mut lay)?;
            family = Family::Pivot;
        }
        OpKind::Ad4 | OpKind::Fad4 => {
            if spec.kind == OpKind::Ad4 && m < 1 {
                return Err(too_tight("ad4", 2, m + 1));
            }
            y_path = spec
                .y
                .iter()
                .map(|id| g0.index(id).ok_or_else(|| OpError::UnknownPivot(id.clone())))
                .collect::<Result<_, _>>()?;
            if y_path.is_empty() {
                return Err(OpError::BadParameter("ad4 needs a nonempty path y".into()));
            }
            if spec.t != 0 && spec.t != y_path.len() {
                return Err(OpError::BadParameter(format!("t = {} but y has {} vertices", spec.t, y_path.len())));
            }
            t = y_path.len();
            if !is_sectional(g0, &y_path) {
                return Err(OpError::ShapeMismatch { expected: "sectional path y".into(), found: spec.y.join(",") });
            }
            if y_path.iter().any(|v| x.contains(v)) {
                return Err(OpError::BadParameter("path y meets the support of the pivot".into()));
            }
            lay.removed = gamma_hat(&mut w, &y_path, x0)?;
            check_path_end(&w.g, &y_path)?;
            let f = if spec.r == 0 {
                y_path.clone()
            } else {
                dverts = default_ids(&spec.dvert, spec.r, &ext);
                u_block(&mut w, &y_path, &dverts, &mut lay)?
            };
            lay.feed = f.clone();
            family_a(&mut w, &x, &f, spec.kind == OpKind::Fad4, &mut lay)?;
            family = if spec.r == 0 { Family::WithY } else { Family::WithG };
        }
        OpKind::Ad5 => unreachable!(),
    }

    let rays = spec.kind.is_infinite().then(|| {
        lay.columns
            .iter()
            .filter(|c| is_sectional(&w.g, c) && c.last().is_some_and(|&v| w.g.is_boundary(v)))
            .count()
    });
    let mut eff = spec.clone();
    eff.t = t;
    let expected_rays = eff.expected_rays();

    let id = |v: usize| w.g.id(v).to_string();
    let ids = Ids {
        x: x.iter().map(|&v| id(v)).collect(),
        y: y_path.iter().map(|&v| id(v)).collect(),
        feed: lay.feed.iter().map(|&v| id(v)).collect(),
        z: lay.z.iter().map(|(&k, &v)| (k, id(v))).collect(),
        xp: lay.xp.iter().map(|(&k, &v)| (k, id(v))).collect(),
        yp: lay.yp.iter().map(|(&k, &v)| (k, id(v))).collect(),
        w: lay.w.map(id),
        d: lay.d.iter().map(|(&k, &v)| (k, id(v))).collect(),
        u: lay.u.iter().map(|(&k, &v)| (k, id(v))).collect(),
    };
    let removed: Vec<String> = lay.removed.iter().map(|&v| id(v)).collect();
    let mut quiver = w.g.remove_vertices(&lay.removed);
    // vertices that acquired a translate are no longer injective
    for v in 0..quiver.len() {
        if quiver.tau_inv(v).is_some() {
            quiver.vertex_mut(v).inj = false;
        }
    }
    quiver.validate()?;

    let alg = algebra_side::extend(mc, family, &ext, &dverts, spec.r, &ids);
    let mut out = mc.clone();
    out.quiver = quiver;
    out.algebra = alg.algebra;
    out.reps = alg.reps;
    out.notes.extend(alg.notes);
    for r in &removed {
        out.reps.remove(r);
    }
    for e in &w.entries {
        out.origin.insert(e.id.clone(), tag.clone());
    }
    let inserted = w.entries.iter().map(|e| e.id.clone()).collect();
    out.ledger.extend(w.entries);
    out.steps.push(StepReport {
        step,
        op: tag,
        pivot: spec.pivot.clone(),
        shape: sup.kind,
        inserted,
        removed,
        ext,
        rays,
        expected_rays,
        algebra: alg.delta,
    });
    Ok(out)
}

/// All vertices visited by sectional walks from `p`.
fn sectional_reach(g: &TranslationQuiver, p: usize) -> BTreeSet<usize> {
    let mut seen_states = BTreeSet::new();
    let mut out = BTreeSet::from([p]);
    let mut queue: VecDeque<(usize, usize)> = g.succs(p).iter().map(|&y| (p, y)).collect();
    while let Some((a, b)) = queue.pop_front() {
        if !seen_states.insert((a, b)) {
            continue;
        }
        out.insert(b);
        for &c in g.succs(b) {
            if g.tau(c) != Some(a) {
                queue.push_back((b, c));
            }
        }
    }
    out
}

fn apply_ad5(mc: &Multicoil, spec: &OpSpec, dual: bool) -> Result<Multicoil, OpError> {
    let subs = &spec.sub;
    let grammar = |msg: &str| OpError::GrammarViolation(msg.to_string());
    if subs.len() < 2 {
        return Err(grammar("ad5 needs at least a finite operation and a final ad4"));
    }
    if !matches!(subs[0].kind, OpKind::Fad1 | OpKind::Fad2 | OpKind::Fad3) {
        return Err(grammar("ad5 must start with fad1, fad2 or fad3"));
    }
    if subs.last().unwrap().kind != OpKind::Ad4 {
        return Err(grammar("ad5 must end with ad4"));
    }
    if subs[1..subs.len() - 1].iter().any(|s| s.kind != OpKind::Fad4) {
        return Err(grammar("only fad4 may occur between the first and the last operation"));
    }
    if subs.iter().any(|s| s.dual || !s.sub.is_empty()) {
        return Err(grammar("constituents of ad5 are primal and not nested"));
    }
    let start = mc.steps.len();
    let mut cur = mc.clone();
    for (k, s) in subs.iter().enumerate() {
        let mut s = s.clone();
        if k == 0 && s.pivot.is_empty() {
            s.pivot = spec.pivot.clone();
        }
        cur = apply_primal(&cur, &s, dual)?;
    }
    let g = &cur.quiver;
    let new_proj: Vec<usize> = cur.steps[start..]
        .iter()
        .flat_map(|s| s.inserted.iter())
        .filter_map(|id| g.index(id))
        .filter(|&v| g.is_proj(v))
        .collect();
    let mut common: Option<BTreeSet<usize>> = None;
    for &p in &new_proj {
        let reach = sectional_reach(g, p);
        common = Some(match common {
            None => reach,
            Some(c) => c.intersection(&reach).copied().collect(),
        });
    }
    let shared = common.is_some_and(|c| c.iter().any(|&v| g.is_boundary(v)));
    if !shared {
        return Err(OpError::SharedSubpathMissing);
    }
    Ok(cur)
}
