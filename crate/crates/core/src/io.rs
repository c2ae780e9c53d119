//! Line-oriented text formats and DOT export.
//!
//! Algebras:
//! ```text
//! vertices 1 2 3
//! arrow a 1 2
//! arrow b 2 3
//! relation a*b
//! cap 4
//! ```
//! Paths are arrow ids joined by `*` in traversal order; a term may carry a
//! rational coefficient written before it (`relation a*b - 2 c*d`).
//!
//! Representations list `dim <vertex> <n>` and `map <arrow>` followed by the
//! rows of the matrix. Translation quivers list `vertex <id> [flags]`,
//! `arrow <s> <t>` and `tau <x> <y>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::ParseError;
use crate::linalg::{fmt_q, parse_q, Matrix, Q};
use crate::qalg::{Algebra, BoundQuiverAlgebra, Path, Quiver, Relation};
use crate::reps::{format_dimvec, DimVec, Representation};
use crate::tquiver::{TVertex, TranslationQuiver};

fn content(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(k, l)| {
        let body = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((k + 1, toks))
    })
}

fn parse_path(q: &Quiver, line: usize, tok: &str) -> Result<Path, ParseError> {
    let arrows = tok
        .split('*')
        .map(|a| q.arrow_index(a).ok_or_else(|| ParseError::new(line, format!("unknown arrow `{a}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Path::from_arrows(q, arrows).ok_or_else(|| ParseError::new(line, format!("`{tok}` is not a path")))
}

fn parse_relation(q: &Quiver, line: usize, toks: &[&str]) -> Result<Relation, ParseError> {
    let mut terms = Vec::new();
    let mut sign = Q::one();
    let mut coeff: Option<Q> = None;
    for &t in toks {
        match t {
            "+" => sign = Q::one(),
            "-" => sign = -Q::one(),
            _ if !t.contains('*') => {
                let c = parse_q(t).ok_or_else(|| ParseError::new(line, format!("bad coefficient or path `{t}`")))?;
                coeff = Some(c);
            }
            _ => {
                let p = parse_path(q, line, t)?;
                let c = coeff.take().unwrap_or_else(Q::one) * &sign;
                terms.push((c, p));
                sign = Q::one();
            }
        }
    }
    if terms.is_empty() || coeff.is_some() {
        return Err(ParseError::new(line, "relation needs paths of length at least 2"));
    }
    Ok(Relation { terms })
}

/// Parse an algebra file; the default length cap is 8.
pub fn parse_algebra(s: &str) -> Result<BoundQuiverAlgebra, ParseError> {
    let mut q = Quiver::empty();
    let mut rels: Vec<(usize, Vec<String>)> = Vec::new();
    let mut cap = 8;
    let mut seen = false;
    for (line, toks) in content(s) {
        seen = true;
        let err = |e: crate::error::AlgebraError| ParseError::new(line, e.to_string());
        match toks[0] {
            "vertices" | "vertex" => {
                for v in &toks[1..] {
                    q.add_vertex(v.to_string()).map_err(err)?;
                }
            }
            "arrow" => {
                let [_, id, s, t] = toks[..] else { return Err(ParseError::new(line, "expected arrow <id> <source> <target>")) };
                q.add_arrow(id.into(), s, t).map_err(err)?;
            }
            "relation" => rels.push((line, toks[1..].iter().map(|t| t.to_string()).collect())),
            "cap" => {
                cap = toks
                    .get(1)
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| ParseError::new(line, "expected cap <n>"))?;
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }
    if !seen {
        return Err(ParseError::new(0, "empty algebra file"));
    }
    let mut relations = Vec::new();
    for (line, toks) in &rels {
        let toks: Vec<&str> = toks.iter().map(String::as_str).collect();
        relations.push(parse_relation(&q, *line, &toks)?);
    }
    BoundQuiverAlgebra::compute_path_basis(q, relations, cap).map_err(|e| ParseError::new(0, e.to_string()))
}

fn path_text(q: &Quiver, p: &Path) -> String {
    p.arrows.iter().map(|&a| q.arrow(a).id.as_str()).collect::<Vec<_>>().join("*")
}

pub fn write_algebra(a: &BoundQuiverAlgebra) -> String {
    let q = a.quiver();
    let mut out = String::new();
    writeln!(out, "vertices {}", q.vertices().join(" ")).unwrap();
    for ar in q.arrows() {
        writeln!(out, "arrow {} {} {}", ar.id, q.vertex_id(ar.source), q.vertex_id(ar.target)).unwrap();
    }
    for r in a.relations() {
        let mut line = String::from("relation");
        for (k, (c, p)) in r.terms.iter().enumerate() {
            if k > 0 || c.is_negative() {
                line.push_str(if c.is_negative() { " -" } else { " +" });
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(line, " {}", fmt_q(&mag)).unwrap();
            }
            write!(line, " {}", path_text(q, p)).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "cap {}", a.length_cap()).unwrap();
    out
}

/// Parse a representation over `a`; omitted vertices have dimension zero.
pub fn parse_representation(a: &Algebra, s: &str) -> Result<Representation, ParseError> {
    let q = a.quiver();
    let mut dims = vec![0usize; q.vertex_count()];
    let mut rows: BTreeMap<usize, (usize, Vec<Vec<Q>>)> = BTreeMap::new();
    let mut current: Option<usize> = None;
    for (line, toks) in content(s) {
        match toks[0] {
            "dim" => {
                let [_, v, n] = toks[..] else { return Err(ParseError::new(line, "expected dim <vertex> <n>")) };
                let v = a.vertex_index(v).ok_or_else(|| ParseError::new(line, format!("unknown vertex `{v}`")))?;
                dims[v] = n.parse().map_err(|_| ParseError::new(line, "bad dimension"))?;
                current = None;
            }
            "map" => {
                let id = toks.get(1).ok_or_else(|| ParseError::new(line, "expected map <arrow>"))?;
                let k = q.arrow_index(id).ok_or_else(|| ParseError::new(line, format!("unknown arrow `{id}`")))?;
                rows.insert(k, (line, Vec::new()));
                current = Some(k);
            }
            _ => {
                let k = current.ok_or_else(|| ParseError::new(line, "matrix row outside a map block"))?;
                let row = toks
                    .iter()
                    .map(|t| parse_q(t).ok_or_else(|| ParseError::new(line, format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.get_mut(&k).unwrap().1.push(row);
            }
        }
    }
    let mut maps = Vec::new();
    for (k, ar) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[ar.target], dims[ar.source]);
        match rows.remove(&k) {
            Some((line, entries)) => {
                if entries.len() != r || entries.iter().any(|e| e.len() != c) {
                    return Err(ParseError::new(line, format!("map {} must be {r}x{c}", ar.id)));
                }
                maps.push(Matrix::from_rows(r, c, entries));
            }
            None => maps.push(Matrix::zeros(r, c)),
        }
    }
    Representation::new(a.clone(), dims, maps).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn write_representation(m: &Representation) -> String {
    let a = m.algebra();
    let q = a.quiver();
    let mut out = String::new();
    for v in 0..q.vertex_count() {
        if m.dim_at(v) > 0 {
            writeln!(out, "dim {} {}", q.vertex_id(v), m.dim_at(v)).unwrap();
        }
    }
    for (k, ar) in q.arrows().iter().enumerate() {
        let f = m.map(k);
        if f.rows() == 0 || f.cols() == 0 {
            continue;
        }
        writeln!(out, "map {}", ar.id).unwrap();
        for r in 0..f.rows() {
            let row: Vec<String> = f.row(r).iter().map(fmt_q).collect();
            writeln!(out, "  {}", row.join(" ")).unwrap();
        }
    }
    out
}

fn parse_label(line: usize, s: &str) -> Result<DimVec, ParseError> {
    let mut d = DimVec::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.rsplit_once(':').ok_or_else(|| ParseError::new(line, format!("bad label entry `{part}`")))?;
        let n: i64 = v.parse().map_err(|_| ParseError::new(line, format!("bad label entry `{part}`")))?;
        if n != 0 {
            d.insert(k.to_string(), n);
        }
    }
    Ok(d)
}

/// Parse a translation quiver; `tau x y` means `tau(x) = y`.
pub fn parse_tquiver(s: &str) -> Result<TranslationQuiver, ParseError> {
    let mut g = TranslationQuiver::new();
    let mut seen = false;
    let idx = |g: &TranslationQuiver, line: usize, id: &str| {
        g.index(id).ok_or_else(|| ParseError::new(line, format!("unknown vertex `{id}`")))
    };
    for (line, toks) in content(s) {
        seen = true;
        match toks[0] {
            "vertex" => {
                let id = toks.get(1).ok_or_else(|| ParseError::new(line, "expected vertex <id>"))?;
                let mut v = TVertex::new(*id);
                for t in &toks[2..] {
                    match *t {
                        "proj" => v.proj = true,
                        "inj" => v.inj = true,
                        "boundary" => v.boundary = true,
                        _ => {
                            if let Some(l) = t.strip_prefix("label=") {
                                v.label = Some(parse_label(line, l)?);
                            } else if let Some(l) = t.strip_prefix("layer=") {
                                v.layer = Some(l.parse().map_err(|_| ParseError::new(line, "bad layer"))?);
                            } else {
                                return Err(ParseError::new(line, format!("unknown vertex flag `{t}`")));
                            }
                        }
                    }
                }
                g.add_vertex(v).map_err(|e| ParseError::new(line, e.to_string()))?;
            }
            "arrow" | "tau" => {
                let [kind, s, t] = toks[..] else { return Err(ParseError::new(line, "expected two vertex ids")) };
                let (s, t) = (idx(&g, line, s)?, idx(&g, line, t)?);
                if kind == "arrow" {
                    g.add_arrow(s, t);
                } else {
                    if g.tau(s).is_some() || g.tau_inv(t).is_some() {
                        return Err(ParseError::new(line, "tau assigned twice"));
                    }
                    g.set_tau(s, t);
                }
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }
    if !seen {
        return Err(ParseError::new(0, "empty translation quiver file"));
    }
    Ok(g)
}

pub fn write_tquiver(g: &TranslationQuiver) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        write!(out, "vertex {}", v.id).unwrap();
        for (flag, on) in [("proj", v.proj), ("inj", v.inj), ("boundary", v.boundary)] {
            if on {
                write!(out, " {flag}").unwrap();
            }
        }
        if let Some(l) = &v.label {
            let parts: Vec<String> = l.iter().map(|(k, n)| format!("{k}:{n}")).collect();
            write!(out, " label={}", parts.join(",")).unwrap();
        }
        if let Some(l) = v.layer {
            write!(out, " layer={l}").unwrap();
        }
        out.push('\n');
    }
    let mut arrows = g.arrows();
    arrows.sort_unstable();
    for (s, t) in arrows {
        writeln!(out, "arrow {} {}", g.id(s), g.id(t)).unwrap();
    }
    for x in 0..g.len() {
        if let Some(y) = g.tau(x) {
            writeln!(out, "tau {} {}", g.id(x), g.id(y)).unwrap();
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic DOT: solid arrows, dashed translations.
pub fn tquiver_to_dot(g: &TranslationQuiver, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=LR;\n", dot_escape(name));
    for v in g.vertices() {
        let mut attrs = vec![];
        if let Some(l) = &v.label {
            attrs.push(format!("tooltip=\"{}\"", dot_escape(&format_dimvec(l))));
        }
        let shape = match (v.proj, v.inj) {
            (true, true) => "doublecircle",
            (true, false) => "box",
            (false, true) => "diamond",
            _ => "ellipse",
        };
        attrs.push(format!("shape={shape}"));
        if v.boundary {
            attrs.push("style=dotted".into());
        }
        writeln!(out, "  \"{}\" [{}];", dot_escape(&v.id), attrs.join(", ")).unwrap();
    }
    let mut arrows = g.arrows();
    arrows.sort_unstable();
    for (s, t) in arrows {
        writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(g.id(s)), dot_escape(g.id(t))).unwrap();
    }
    for x in 0..g.len() {
        if let Some(y) = g.tau(x) {
            writeln!(out, "  \"{}\" -> \"{}\" [style=dashed, constraint=false];", dot_escape(g.id(x)), dot_escape(g.id(y)))
                .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn quiver_to_dot(q: &Quiver, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n", dot_escape(name));
    for v in q.vertices() {
        writeln!(out, "  \"{}\";", dot_escape(v)).unwrap();
    }
    for a in q.arrows() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            dot_escape(q.vertex_id(a.source)),
            dot_escape(q.vertex_id(a.target)),
            dot_escape(&a.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn load_algebra(path: &std::path::Path) -> Result<Algebra, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_algebra(&text).map(Arc::new).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{projective, simple};
    use crate::tquiver::build_labeled_tube;

    const KRONECKER_PLUS: &str = "# two vertices\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelation a*c - 1/2 b*c\ncap 4\n";

    #[test]
    fn algebra_round_trip() {
        let a = parse_algebra(KRONECKER_PLUS).unwrap();
        assert_eq!(a.relations().len(), 1);
        assert_eq!(a.dim(), 3 + 3 + 1);
        let again = parse_algebra(&write_algebra(&a)).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn bad_algebra_files() {
        assert!(parse_algebra("").is_err());
        assert!(parse_algebra("vertices 1\narrow a 1 9\n").is_err());
        assert!(parse_algebra("vertices 1 2\narrow a 1 2\nrelation a\n").is_err());
        let e = parse_algebra("vertices 1\nfrobnicate\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn representation_round_trip() {
        let a: Algebra = Arc::new(parse_algebra(KRONECKER_PLUS).unwrap());
        for m in [projective(&a, 0), simple(&a, 1), projective(&a, 1)] {
            let text = write_representation(&m);
            assert_eq!(parse_representation(&a, &text).unwrap(), m);
        }
        let bad = "dim 1 1\ndim 2 1\ndim 3 1\nmap a\n 1\nmap c\n 1\n";
        assert!(parse_representation(&a, bad).is_err());
    }

    #[test]
    fn tquiver_round_trip_and_dot() {
        let mouth = vec![("x".to_string(), DimVec::from([("1".to_string(), 1)])), ("y".to_string(), DimVec::new())];
        let g = build_labeled_tube(&mouth, 3);
        let text = write_tquiver(&g);
        let back = parse_tquiver(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(tquiver_to_dot(&g, "t"), tquiver_to_dot(&back, "t"));
        assert!(parse_tquiver("vertex a\ntau a b\n").is_err());
    }
}
