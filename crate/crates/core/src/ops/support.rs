use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::OpError;
use crate::tquiver::TranslationQuiver;

/// Shape of the support of `Hom(X, -)` restricted to the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    InfiniteRay,
    RayPlusFiniteCoray(usize),
    ParallelMesh(usize),
    FiniteRay(usize),
    TwoFinitePaths(usize, usize),
    FiniteParallelMesh(usize, usize),
    Other,
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeKind::InfiniteRay => write!(f, "InfiniteRay"),
            ShapeKind::RayPlusFiniteCoray(t) => write!(f, "RayPlusFiniteCoray({t})"),
            ShapeKind::ParallelMesh(t) => write!(f, "ParallelMesh({t})"),
            ShapeKind::FiniteRay(s) => write!(f, "FiniteRay({s})"),
            ShapeKind::TwoFinitePaths(s, t) => write!(f, "TwoFinitePaths({s},{t})"),
            ShapeKind::FiniteParallelMesh(s, t) => write!(f, "FiniteParallelMesh({s},{t})"),
            ShapeKind::Other => write!(f, "Other"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Support {
    pub kind: ShapeKind,
    /// `X = X_0 -> X_1 -> ...`
    pub x_path: Vec<usize>,
    /// `Y_1 -> ... -> Y_t`, empty for single paths.
    pub y_path: Vec<usize>,
    /// `dim Hom(X, Y)` in the mesh category, for `Y` in the support.
    pub values: BTreeMap<usize, i64>,
}

/// Values beyond this mean the support is far from thin.
const HAMMOCK_LIMIT: i64 = 1 << 40;

/// Hom-dimensions from `x`, computed degree by degree on the universal
/// cover: `h(Y, d) = [Y = X, d = 0] + sum_{Z -> Y} h(Z, d-1) - h(tau Y, d-2)`.
/// Vertices outside the window count as zero; translates recorded on the
/// boundary are used.
pub fn hammock(g: &TranslationQuiver, x: usize) -> Result<BTreeMap<usize, i64>, OpError> {
    let n = g.len();
    let cap = 4 * n + 8;
    let mut layers: Vec<Vec<i64>> = vec![vec![0; n]];
    layers[0][x] = 1;
    let mut total = vec![0i64; n];
    total[x] = 1;
    for d in 1..=cap {
        let mut cur = vec![0i64; n];
        for y in 0..n {
            let mut s: i64 = g.preds(y).iter().map(|&z| layers[d - 1][z]).sum();
            if d >= 2 && !g.is_proj(y) {
                if let Some(ty) = g.tau(y) {
                    s -= layers[d - 2][ty];
                }
            }
            // predecessors outside the window are missing at the boundary
            if g.is_boundary(y) {
                s = s.max(0);
            }
            if !(0..=HAMMOCK_LIMIT).contains(&s) {
                return Err(OpError::AmbiguousAtBoundary(g.id(x).to_string()));
            }
            cur[y] = s;
            total[y] += s;
        }
        let zero_now = cur.iter().all(|&v| v == 0);
        let zero_before = layers[d - 1].iter().all(|&v| v == 0);
        layers.push(cur);
        if zero_now && zero_before {
            return Ok((0..n).filter(|&y| total[y] > 0).map(|y| (y, total[y])).collect());
        }
    }
    Err(OpError::AmbiguousAtBoundary(g.id(x).to_string()))
}

fn succs_in(g: &TranslationQuiver, v: usize, s: &BTreeSet<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = g.succs(v).iter().copied().filter(|w| s.contains(w)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Follow single successors inside `s` from `start`, never revisiting.
fn follow(g: &TranslationQuiver, start: usize, s: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let mut path = vec![start];
    let mut cur = start;
    loop {
        let mut next = succs_in(g, cur, s);
        next.retain(|w| !path.contains(w));
        match next.len() {
            0 => return Some(path),
            1 => {
                cur = next[0];
                path.push(cur);
            }
            _ => return None,
        }
    }
}

fn covers(s: &BTreeSet<usize>, parts: &[&[usize]]) -> bool {
    let mut seen = BTreeSet::new();
    for p in parts {
        for &v in *p {
            if !seen.insert(v) {
                return false;
            }
        }
    }
    seen == *s
}

/// Classify the support of `Hom(X, -)`. `y_hint` names the first vertex of
/// the finite branch when two branches leave `X`.
pub fn classify_support(g: &TranslationQuiver, x: usize, y_hint: Option<usize>) -> Result<Support, OpError> {
    if g.is_boundary(x) {
        return Err(OpError::AmbiguousAtBoundary(g.id(x).to_string()));
    }
    let values = hammock(g, x)?;
    let s: BTreeSet<usize> = values.keys().copied().collect();
    let other = |values| Support { kind: ShapeKind::Other, x_path: vec![x], y_path: vec![], values };
    let thin = values.values().all(|&v| v == 1);
    if !thin {
        return Ok(other(values));
    }
    let first = succs_in(g, x, &s);
    match first.len() {
        0 | 1 => {
            let Some(path) = follow(g, x, &s) else { return Ok(other(values)) };
            if !covers(&s, &[&path]) {
                return Ok(other(values));
            }
            let last = *path.last().unwrap();
            let kind = if g.is_boundary(last) { ShapeKind::InfiniteRay } else { ShapeKind::FiniteRay(path.len() - 1) };
            Ok(Support { kind, x_path: path, y_path: vec![], values })
        }
        2 => {
            let (a, b) = (first[0], first[1]);
            // parallel mesh: the X branch has two successors inside the support
            let two_a = succs_in(g, a, &s).len() == 2;
            let two_b = succs_in(g, b, &s).len() == 2;
            if two_a != two_b {
                let (xa, ya) = if two_a { (a, b) } else { (b, a) };
                return Ok(parallel_mesh(g, x, xa, ya, &s, values.clone()).unwrap_or_else(|| other(values)));
            }
            let (Some(pa), Some(pb)) = (follow(g, a, &s), follow(g, b, &s)) else { return Ok(other(values)) };
            let mut xp = vec![x];
            if !covers(&s, &[&xp, &pa, &pb]) {
                return Ok(other(values));
            }
            let ba = g.is_boundary(*pa.last().unwrap());
            let bb = g.is_boundary(*pb.last().unwrap());
            let kind;
            let (xs, ys) = match (ba, bb) {
                (true, true) => return Ok(other(values)),
                (true, false) => (pa, pb),
                (false, true) => (pb, pa),
                (false, false) => {
                    let all_inj = |p: &Vec<usize>| p.iter().all(|&v| g.is_inj(v));
                    match y_hint {
                        Some(h) if h == pa[0] => (pb, pa),
                        Some(h) if h == pb[0] => (pa, pb),
                        _ if all_inj(&pb) && !all_inj(&pa) => (pa, pb),
                        _ if all_inj(&pa) && !all_inj(&pb) => (pb, pa),
                        _ if pa.len() >= pb.len() => (pa, pb),
                        _ => (pb, pa),
                    }
                }
            };
            if ba || bb {
                kind = ShapeKind::RayPlusFiniteCoray(ys.len());
            } else {
                kind = ShapeKind::TwoFinitePaths(xs.len(), ys.len());
            }
            xp.extend(xs);
            Ok(Support { kind, x_path: xp, y_path: ys, values })
        }
        _ => Ok(other(values)),
    }
}

/// `Y_1 -> ... -> Y_t` over `X_0 -> ... -> X_{t-1} -> X_t -> ...` with
/// arrows `X_{i-1} -> Y_i`.
fn parallel_mesh(
    g: &TranslationQuiver,
    x0: usize,
    x1: usize,
    y1: usize,
    s: &BTreeSet<usize>,
    values: BTreeMap<usize, i64>,
) -> Option<Support> {
    let mut xs = vec![x0, x1];
    let mut ys = vec![y1];
    // climb while the current X vertex also feeds the next Y
    loop {
        let xi = *xs.last().unwrap();
        let yi = *ys.last().unwrap();
        let next_y = succs_in(g, yi, s);
        let next_x = succs_in(g, xi, s);
        if next_y.is_empty() {
            break;
        }
        if next_y.len() != 1 {
            return None;
        }
        let y_next = next_y[0];
        if !next_x.contains(&y_next) || next_x.len() != 2 {
            return None;
        }
        let x_next = *next_x.iter().find(|&&v| v != y_next)?;
        ys.push(y_next);
        xs.push(x_next);
    }
    // the remaining X vertices form a single path
    let last = *xs.last().unwrap();
    let tail = follow(g, last, s)?;
    xs.extend(tail.into_iter().skip(1));
    if !covers(s, &[&xs, &ys]) {
        return None;
    }
    let t = ys.len();
    if t < 2 {
        return None;
    }
    let end = *xs.last().unwrap();
    let kind =
        if g.is_boundary(end) { ShapeKind::ParallelMesh(t) } else { ShapeKind::FiniteParallelMesh(xs.len() - 1, t) };
    Some(Support { kind, x_path: xs, y_path: ys, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tquiver::build_stable_tube;

    #[test]
    fn mouth_of_tube_is_an_infinite_ray() {
        let g = build_stable_tube(3, 8);
        let x = g.index("(0,1)").unwrap();
        let s = classify_support(&g, x, None).unwrap();
        assert_eq!(s.kind, ShapeKind::InfiniteRay);
        assert_eq!(s.x_path.len(), 8);
    }

    #[test]
    fn rank_one_mouth_is_a_ray() {
        let g = build_stable_tube(1, 6);
        let s = classify_support(&g, 0, None).unwrap();
        assert_eq!(s.kind, ShapeKind::InfiniteRay);
    }

    #[test]
    fn interior_tube_vertex_is_not_a_ray() {
        let g = build_stable_tube(2, 8);
        let x = g.index("(0,3)").unwrap();
        match classify_support(&g, x, None) {
            Ok(s) => assert_eq!(s.kind, ShapeKind::Other),
            Err(OpError::AmbiguousAtBoundary(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
