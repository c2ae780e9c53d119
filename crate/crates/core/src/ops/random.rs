use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply, classify_support, no_algebras, seed_multicoil, Multicoil, OpKind, OpSpec, OperationScript, Seed, ShapeKind};
use crate::tquiver::{is_sectional, TranslationQuiver};

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub max_ops: usize,
    pub allow_dual: bool,
    /// Add a component of `T_t(K)` whose injective path can feed (ad4).
    pub with_linear: bool,
    /// Vertices classified per attempt.
    pub probe: usize,
    /// Fixed `(rank, window)` of the seed tube; random when unset.
    pub tube: Option<(usize, usize)>,
    /// Skip standalone finite operations and glue (ad4) only along whole
    /// injective tails.
    pub strict: bool,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_ops: 4, allow_dual: true, with_linear: true, probe: 12, tube: None, strict: false }
    }
}

/// Maximal paths `Y_1 -> ... -> Y_t` of injectives with `succs(Y_j) = {Y_{j+1}}`
/// and no successor after `Y_t`, listed by their suffixes.
pub fn injective_tails(g: &TranslationQuiver) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for end in 0..g.len() {
        if !g.succs(end).is_empty() || g.is_boundary(end) || !g.is_inj(end) {
            continue;
        }
        let mut path = vec![end];
        out.push(path.clone());
        let mut cur = end;
        loop {
            let ps: Vec<usize> = g.preds(cur).iter().copied().filter(|&p| g.is_inj(p) && g.succs(p) == [cur]).collect();
            if ps.len() != 1 || path.contains(&ps[0]) || g.is_boundary(ps[0]) {
                break;
            }
            cur = ps[0];
            path.insert(0, cur);
            if !is_sectional(g, &path) {
                break;
            }
            out.push(path.clone());
        }
    }
    out
}

fn candidates(g: &TranslationQuiver, rng: &mut ChaCha8Rng, probe: usize, strict: bool) -> Vec<OpSpec> {
    let mut verts: Vec<usize> = (0..g.len()).filter(|&v| !g.is_boundary(v)).collect();
    verts.shuffle(rng);
    let mut tails = injective_tails(g);
    if strict {
        let all = tails.clone();
        tails.retain(|p| !all.iter().any(|q| q.len() > p.len() && q.ends_with(p)));
    }
    let mut out = Vec::new();
    for &v in verts.iter().take(probe) {
        let Ok(sup) = classify_support(g, v, None) else { continue };
        let id = g.id(v).to_string();
        match sup.kind {
            ShapeKind::InfiniteRay => {
                out.push(OpSpec::new(OpKind::Ad1, &id).with_t(rng.gen_range(0..=2)));
                let usable: Vec<&Vec<usize>> = tails.iter().filter(|p| !p.iter().any(|y| sup.x_path.contains(y))).collect();
                if let Some(p) = usable.choose(rng) {
                    let y: Vec<String> = p.iter().map(|&u| g.id(u).to_string()).collect();
                    out.push(OpSpec::new(OpKind::Ad4, &id).with_y(y).with_r(rng.gen_range(0..=1)));
                }
            }
            ShapeKind::RayPlusFiniteCoray(_) => out.push(OpSpec::new(OpKind::Ad2, &id)),
            ShapeKind::ParallelMesh(_) => out.push(OpSpec::new(OpKind::Ad3, &id)),
            _ if strict => {}
            ShapeKind::FiniteRay(s) => out.push(OpSpec::new(OpKind::Fad1, &id).with_t(rng.gen_range(0..=s.min(2)))),
            ShapeKind::TwoFinitePaths(..) => out.push(OpSpec::new(OpKind::Fad2, &id)),
            ShapeKind::FiniteParallelMesh(..) => out.push(OpSpec::new(OpKind::Fad3, &id)),
            ShapeKind::Other => {}
        }
    }
    out
}

/// A script of valid operations on a formal tube, found by trial application.
pub fn random_script(seed: u64, cfg: &RandomConfig) -> (OperationScript, Multicoil) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut script = OperationScript::default();
    let (rank, window) = cfg.tube.unwrap_or_else(|| (rng.gen_range(1..=3), rng.gen_range(6..=8)));
    script.seeds.push(Seed::Tube {
        rank,
        window,
        algebra: None,
        mouth: vec![],
        name: None,
    });
    if cfg.with_linear {
        let n = rng.gen_range(1..=3);
        script.seeds.push(Seed::Linear { ids: (1..=n).map(|k| format!("y{k}")).collect() });
    }
    let mut mc = seed_multicoil(&script.seeds, no_algebras).expect("formal seeds");
    let target = rng.gen_range(1..=cfg.max_ops.max(1));
    let mut failures = 0;
    while script.ops.len() < target && failures < 8 {
        let dual = cfg.allow_dual && rng.gen_bool(0.5);
        let g = if dual { mc.quiver.reversed() } else { mc.quiver.clone() };
        let mut cands = candidates(&g, &mut rng, cfg.probe, cfg.strict);
        cands.shuffle(&mut rng);
        let mut done = false;
        for mut c in cands.into_iter().take(6) {
            c.dual = dual;
            if let Ok(next) = apply(&mc, &c) {
                mc = next;
                script.ops.push(c);
                done = true;
                break;
            }
        }
        if !done {
            failures += 1;
        }
    }
    (script, mc)
}
