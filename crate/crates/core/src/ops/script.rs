use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{apply, Multicoil, OpKind, OpSpec};
use crate::error::{OpError, ParseError};
use crate::qalg::{linear_algebra, Algebra};
use crate::reps::{dimvec_add, dimvec_unit, injective, projective, simple, tau, thin, DimVec, Representation};
use crate::tquiver::{build_labeled_tube, build_stable_tube, TVertex, TranslationQuiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    /// A stable tube. With an algebra, `mouth` names the mouth modules in
    /// translation order (`S<v>`, `P<v>`, `I<v>`, `E` or `T<v>+<w>+...`);
    /// without one, ids are `<name>(n,l)` with formal labels.
    Tube { rank: usize, window: usize, algebra: Option<String>, mouth: Vec<String>, name: Option<String> },
    /// The finite component of `T_t(K)` on the given vertex ids.
    Linear { ids: Vec<String> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperationScript {
    pub seeds: Vec<Seed>,
    pub ops: Vec<OpSpec>,
    pub gating: bool,
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn tokens(s: &str) -> Vec<String> {
    split_top(s, ' ').into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn list(v: &str) -> Vec<String> {
    split_top(v, ',').into_iter().filter(|s| !s.is_empty()).collect()
}

fn keyvals(line: usize, toks: &[String]) -> Result<BTreeMap<String, String>, ParseError> {
    let mut out = BTreeMap::new();
    for t in toks {
        let (k, v) = t.split_once('=').ok_or_else(|| ParseError::new(line, format!("expected key=value, got `{t}`")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(ParseError::new(line, format!("duplicate key `{k}`")));
        }
    }
    Ok(out)
}

fn num(line: usize, kv: &BTreeMap<String, String>, key: &str) -> Result<Option<usize>, ParseError> {
    kv.get(key)
        .map(|v| v.parse::<usize>().map_err(|_| ParseError::new(line, format!("`{key}` must be a number, got `{v}`"))))
        .transpose()
}

fn parse_op(line: usize, tag: &str, rest: &[String]) -> Result<OpSpec, ParseError> {
    let (name, dual) = match tag.strip_suffix('*') {
        Some(n) => (n, true),
        None => (tag, false),
    };
    let kind = OpKind::parse(name).ok_or_else(|| ParseError::new(line, format!("unknown operation `{tag}`")))?;
    let kv = keyvals(line, rest)?;
    for k in kv.keys() {
        if !["pivot", "t", "r", "y", "ext", "dvert", "sub"].contains(&k.as_str()) {
            return Err(ParseError::new(line, format!("unknown key `{k}`")));
        }
    }
    let mut spec = OpSpec::new(kind, kv.get("pivot").cloned().unwrap_or_default());
    spec.dual = dual;
    spec.t = num(line, &kv, "t")?.unwrap_or(0);
    spec.r = num(line, &kv, "r")?.unwrap_or(0);
    spec.y = kv.get("y").map(|v| list(v)).unwrap_or_default();
    spec.ext = kv.get("ext").cloned();
    spec.dvert = kv.get("dvert").map(|v| list(v)).unwrap_or_default();
    if let Some(sub) = kv.get("sub") {
        let inner = sub
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(line, "sub must be [op(...),...]"))?;
        for item in split_top(inner, ',') {
            let item = item.trim();
            let (t, args) = item
                .split_once('(')
                .and_then(|(t, a)| a.strip_suffix(')').map(|a| (t, a)))
                .ok_or_else(|| ParseError::new(line, format!("malformed sub-operation `{item}`")))?;
            spec.sub.push(parse_op(line, t, &tokens(args))?);
        }
    }
    if spec.pivot.is_empty() && kind != OpKind::Ad5 {
        return Err(ParseError::new(line, "missing pivot"));
    }
    Ok(spec)
}

impl FromStr for OperationScript {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut out = OperationScript::default();
        for (k, raw) in s.lines().enumerate() {
            let line = k + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let toks = tokens(text);
            match toks[0].as_str() {
                "seed" => {
                    let kind = toks.get(1).ok_or_else(|| ParseError::new(line, "seed needs a kind"))?;
                    let kv = keyvals(line, &toks[2..])?;
                    match kind.as_str() {
                        "tube" => {
                            let rank = num(line, &kv, "rank")?.ok_or_else(|| ParseError::new(line, "missing rank"))?;
                            let window =
                                num(line, &kv, "window")?.ok_or_else(|| ParseError::new(line, "missing window"))?;
                            if rank == 0 || window == 0 {
                                return Err(ParseError::new(line, "rank and window must be positive"));
                            }
                            let mouth = kv.get("mouth").map(|v| list(v)).unwrap_or_default();
                            let algebra = kv.get("algebra").cloned();
                            if algebra.is_some() && mouth.len() != rank {
                                return Err(ParseError::new(line, "mouth must list `rank` modules"));
                            }
                            out.seeds.push(Seed::Tube { rank, window, algebra, mouth, name: kv.get("name").cloned() });
                        }
                        "linear" => {
                            let ids = kv.get("ids").map(|v| list(v)).unwrap_or_default();
                            if ids.is_empty() {
                                return Err(ParseError::new(line, "linear seed needs ids"));
                            }
                            out.seeds.push(Seed::Linear { ids });
                        }
                        other => return Err(ParseError::new(line, format!("unknown seed kind `{other}`"))),
                    }
                }
                "op" => {
                    let tag = toks.get(1).ok_or_else(|| ParseError::new(line, "op needs a name"))?;
                    out.ops.push(parse_op(line, tag, &toks[2..])?);
                }
                "option" => {
                    let kv = keyvals(line, &toks[1..])?;
                    match kv.get("gating").map(String::as_str) {
                        Some("on") => out.gating = true,
                        Some("off") => out.gating = false,
                        _ => return Err(ParseError::new(line, "expected option gating=on|off")),
                    }
                }
                other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
            }
        }
        Ok(out)
    }
}

fn write_op(f: &mut fmt::Formatter<'_>, op: &OpSpec, sep: &str) -> fmt::Result {
    if !op.pivot.is_empty() {
        write!(f, "{sep}pivot={}", op.pivot)?;
    }
    if op.t != 0 {
        write!(f, " t={}", op.t)?;
    }
    if op.r != 0 {
        write!(f, " r={}", op.r)?;
    }
    if !op.y.is_empty() {
        write!(f, " y={}", op.y.join(","))?;
    }
    if let Some(e) = &op.ext {
        write!(f, " ext={e}")?;
    }
    if !op.dvert.is_empty() {
        write!(f, " dvert={}", op.dvert.join(","))?;
    }
    if !op.sub.is_empty() {
        write!(f, " sub=[")?;
        for (k, s) in op.sub.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}(", s.tag())?;
            write_op(f, s, "")?;
            write!(f, ")")?;
        }
        write!(f, "]")?;
    }
    Ok(())
}

impl fmt::Display for OperationScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gating {
            writeln!(f, "option gating=on")?;
        }
        for s in &self.seeds {
            match s {
                Seed::Tube { rank, window, algebra, mouth, name } => {
                    write!(f, "seed tube rank={rank} window={window}")?;
                    if let Some(a) = algebra {
                        write!(f, " algebra={a}")?;
                    }
                    if !mouth.is_empty() {
                        write!(f, " mouth={}", mouth.join(","))?;
                    }
                    if let Some(n) = name {
                        write!(f, " name={n}")?;
                    }
                    writeln!(f)?;
                }
                Seed::Linear { ids } => writeln!(f, "seed linear ids={}", ids.join(","))?,
            }
        }
        for op in &self.ops {
            write!(f, "op {}", op.tag())?;
            write_op(f, op, " ")?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A mouth module token over `a`.
pub fn mouth_module(a: &Algebra, token: &str) -> Result<Representation, OpError> {
    let bad = || OpError::BadParameter(format!("unknown mouth module `{token}`"));
    let vertex = |id: &str| a.vertex_index(id).ok_or_else(bad);
    if token == "E" {
        let all: Vec<usize> = (0..a.vertex_count()).collect();
        return Ok(thin(a, &all)?);
    }
    if let Some(rest) = token.strip_prefix('T') {
        let support = rest.split('+').map(vertex).collect::<Result<Vec<_>, _>>()?;
        return Ok(thin(a, &support)?);
    }
    let (head, rest) = token.split_at(1);
    match head {
        "S" => Ok(simple(a, vertex(rest)?)),
        "P" => Ok(projective(a, vertex(rest)?)),
        "I" => Ok(injective(a, vertex(rest)?)),
        _ => Err(bad()),
    }
}

fn seed_tube_with_algebra(
    rank: usize,
    window: usize,
    a: &Algebra,
    mouth: &[String],
) -> Result<(TranslationQuiver, BTreeMap<String, Representation>), OpError> {
    let mods = mouth.iter().map(|m| mouth_module(a, m)).collect::<Result<Vec<_>, _>>()?;
    let op: Algebra = Arc::new(a.opposite()?);
    for n in 0..rank {
        let prev = &mods[(n + rank - 1) % rank];
        if tau(&mods[n], &op).dims() != prev.dims() {
            return Err(OpError::BadParameter(format!(
                "tau {} does not have the dimension vector of {}",
                mouth[n],
                mouth[(n + rank - 1) % rank]
            )));
        }
    }
    let spec: Vec<(String, DimVec)> = mouth.iter().cloned().zip(mods.iter().map(|m| m.dimension_vector())).collect();
    let g = build_labeled_tube(&spec, window);
    Ok((g, mouth.iter().cloned().zip(mods).collect()))
}

fn formal_tube(rank: usize, window: usize, name: &str) -> TranslationQuiver {
    let mut g = build_stable_tube(rank, window);
    for n in 0..rank {
        for l in 1..=window {
            let x = g.index(&format!("({n},{l})")).expect("tube id");
            let label = (0..l).fold(DimVec::new(), |acc, k| dimvec_add(&acc, &dimvec_unit(&format!("{name}m{}", (n + k) % rank))));
            g.vertex_mut(x).label = Some(label);
            if !name.is_empty() {
                g.rename(x, format!("{name}({n},{l})")).expect("fresh id");
            }
        }
    }
    g
}

/// The component of `T_t(K)` with intervals `S<id>` and `M(<a>-<b>)`.
pub fn linear_component(ids: &[String]) -> TranslationQuiver {
    let t = ids.len();
    let mut g = TranslationQuiver::new();
    let mut at = BTreeMap::new();
    for a in 1..=t {
        for b in a..=t {
            let name = if a == b { format!("S{}", ids[a - 1]) } else { format!("M({}-{})", ids[a - 1], ids[b - 1]) };
            let mut v = TVertex::new(name);
            v.proj = b == t;
            v.inj = a == 1;
            v.label = Some((a..=b).fold(DimVec::new(), |acc, k| dimvec_add(&acc, &dimvec_unit(&ids[k - 1]))));
            at.insert((a, b), g.add_vertex(v).expect("distinct interval ids"));
        }
    }
    for (&(a, b), &v) in &at {
        if a > 1 {
            g.add_arrow(v, at[&(a - 1, b)]);
        }
        if b > a {
            g.add_arrow(v, at[&(a, b - 1)]);
        }
        if b < t {
            g.set_tau(v, at[&(a + 1, b + 1)]);
        }
    }
    g
}

/// Disjoint union of the seeds, with the product algebra when every seed has one.
pub fn seed_multicoil<F>(seeds: &[Seed], resolve: F) -> Result<Multicoil, OpError>
where
    F: Fn(&str) -> Result<Algebra, OpError>,
{
    let mut quiver = TranslationQuiver::new();
    let mut parts: Vec<(Option<Algebra>, BTreeMap<String, Representation>)> = Vec::new();
    for (k, s) in seeds.iter().enumerate() {
        let (g, alg, reps) = match s {
            Seed::Tube { rank, window, algebra: Some(name), mouth, .. } => {
                let a = resolve(name)?;
                let (g, reps) = seed_tube_with_algebra(*rank, *window, &a, mouth)?;
                (g, Some(a), reps)
            }
            Seed::Tube { rank, window, algebra: None, name, .. } => {
                let default = if k == 0 { String::new() } else { format!("c{k}") };
                (formal_tube(*rank, *window, name.as_deref().unwrap_or(&default)), None, BTreeMap::new())
            }
            Seed::Linear { ids } => {
                let g = linear_component(ids);
                let a: Algebra = Arc::new(linear_algebra(ids, &format!("{}:l", ids[0]))?);
                let mut reps = BTreeMap::new();
                for x in 0..g.len() {
                    let label = g.label(x).expect("linear labels");
                    let support: Vec<usize> = label.keys().filter_map(|id| a.vertex_index(id)).collect();
                    reps.insert(g.id(x).to_string(), thin(&a, &support)?);
                }
                (g, Some(a), reps)
            }
        };
        quiver = quiver.disjoint_union(&g)?;
        parts.push((alg, reps));
    }
    let mut mc = Multicoil::new(quiver);
    if !parts.is_empty() && parts.iter().all(|(a, _)| a.is_some()) {
        let mut total = (*parts[0].0.clone().unwrap()).clone();
        for (a, _) in &parts[1..] {
            total = total.product(a.as_ref().unwrap())?;
        }
        let total: Algebra = Arc::new(total);
        let mut reps = BTreeMap::new();
        for (_, rs) in &parts {
            for (id, m) in rs {
                reps.insert(id.clone(), m.extend_by_zero(&total)?);
            }
        }
        mc = mc.with_algebra(total, reps);
    } else if parts.iter().any(|(a, _)| a.is_some()) {
        mc.notes.push("some seeds carry no algebra; algebra side is symbolic".into());
    }
    Ok(mc)
}

/// Seed, then apply the operations in order; errors carry the step index.
pub fn run_script<F>(script: &OperationScript, resolve: F) -> Result<Multicoil, OpError>
where
    F: Fn(&str) -> Result<Algebra, OpError>,
{
    let mut mc = seed_multicoil(&script.seeds, resolve)?;
    mc.provenance_gating = script.gating;
    for (k, op) in script.ops.iter().enumerate() {
        mc = apply(&mc, op).map_err(|e| OpError::AtStep { step: k + 1, source: Box::new(e) })?;
    }
    Ok(mc)
}

/// Resolver for scripts without algebra seeds.
pub fn no_algebras(name: &str) -> Result<Algebra, OpError> {
    Err(OpError::BadParameter(format!("no algebra resolver for `{name}`")))
}
