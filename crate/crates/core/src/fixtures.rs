//! Worked examples shipped with the crate, embedded at compile time.

use std::path::Path;
use std::sync::Arc;

use crate::error::OpError;
use crate::io::{parse_algebra, parse_representation, parse_tquiver};
use crate::ops::OperationScript;
use crate::qalg::Algebra;
use crate::reps::Representation;
use crate::tquiver::TranslationQuiver;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub source: &'static str,
    /// Where the data is transcribed from.
    pub citation: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "FIX-A2", file: "A2.qa", source: include_str!("../fixtures/A2.qa"), citation: "hereditary A2, degeneration example" },
    Fixture { name: "FIX-K2", file: "K2.qa", source: include_str!("../fixtures/K2.qa"), citation: "Kronecker quiver" },
    Fixture { name: "FIX-B8", file: "B8.qa", source: include_str!("../fixtures/B8.qa"), citation: "multisection example, rad^2 = 0 on 8 vertices" },
    Fixture { name: "FIX-A23", file: "A23.qa", source: include_str!("../fixtures/A23.qa"), citation: "generalized multicoil algebra example, 23 vertices" },
    Fixture { name: "FIX-D5t", file: "D5t.qa", source: include_str!("../fixtures/D5t.qa"), citation: "D5~ subquiver on 4..9 of FIX-A23" },
    Fixture { name: "FIX-GL", file: "GL.qa", source: include_str!("../fixtures/GL.qa"), citation: "cycle-finite glueing of Kronecker components" },
    Fixture { name: "FIX-NC", file: "NC.qa", source: include_str!("../fixtures/NC.qa"), citation: "tame algebra that is not cycle-finite" },
];

pub const B8_COMPONENT: &str = include_str!("../fixtures/B8-component.tq");
pub const D5T_E: &str = include_str!("../fixtures/D5t-E.rep");
pub const MULTICOIL_SCRIPT: &str = include_str!("../fixtures/multicoil.script");

/// Vertices of FIX-A23 that the multicoil script builds.
pub const A23_BUILT: &[&str] = &["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "16", "17", "18", "19", "20"];

/// The multisection of the FIX-B8 component used in the worked example.
pub const B8_DELTA: &[&str] = &["I1", "I2", "I3", "I4", "I5", "I6", "P6", "P7", "P8", "S5", "S6", "S7", "P7/S6", "R"];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name.eq_ignore_ascii_case(name))
}

pub fn algebra(name: &str) -> Result<Algebra, String> {
    let f = find(name).ok_or_else(|| format!("unknown fixture `{name}`"))?;
    parse_algebra(f.source).map(Arc::new).map_err(|e| format!("{}: {e}", f.file))
}

pub fn b8_component() -> TranslationQuiver {
    parse_tquiver(B8_COMPONENT).expect("embedded component parses")
}

pub fn d5t_e(a: &Algebra) -> Representation {
    parse_representation(a, D5T_E).expect("embedded module parses")
}

pub fn multicoil_script() -> OperationScript {
    MULTICOIL_SCRIPT.parse().expect("embedded script parses")
}

/// A fixture name or a path to an algebra file.
pub fn load(name_or_path: &str) -> Result<Algebra, String> {
    match find(name_or_path) {
        Some(f) => algebra(f.name),
        None => crate::io::load_algebra(Path::new(name_or_path)),
    }
}

/// `FIX-B8-component` or a path to a translation quiver file.
pub fn load_tquiver(name_or_path: &str) -> Result<TranslationQuiver, String> {
    let text = if name_or_path.eq_ignore_ascii_case("FIX-B8-component") {
        B8_COMPONENT.to_string()
    } else {
        read(name_or_path)?
    };
    parse_tquiver(&text).map_err(|e| format!("{name_or_path}: {e}"))
}

/// `FIX-multicoil` or a path to an operation script.
pub fn load_script(name_or_path: &str) -> Result<OperationScript, String> {
    let text = if name_or_path.eq_ignore_ascii_case("FIX-multicoil") {
        MULTICOIL_SCRIPT.to_string()
    } else {
        read(name_or_path)?
    };
    text.parse().map_err(|e| format!("{name_or_path}: {e}"))
}

/// A module over `a`: a representation file, a mouth token (`S<v>`, `P<v>`,
/// `I<v>`, `E`, `T<v>+<w>`) or a comma-separated direct sum of these.
pub fn load_module(a: &Algebra, spec: &str) -> Result<Representation, String> {
    let one = |s: &str| -> Result<Representation, String> {
        if Path::new(s).is_file() {
            parse_representation(a, &read(s)?).map_err(|e| format!("{s}: {e}"))
        } else {
            crate::ops::mouth_module(a, s).map_err(|e| e.to_string())
        }
    };
    let mut parts = spec.split(',').filter(|s| !s.is_empty());
    let first = parts.next().ok_or_else(|| "empty module".to_string())?;
    parts.try_fold(one(first)?, |m, s| m.direct_sum(&one(s)?).map_err(|e| e.to_string()))
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Resolver for [`crate::ops::run_script`].
pub fn resolve(name: &str) -> Result<Algebra, OpError> {
    load(name).map_err(OpError::BadParameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{global_dimension, hom_dim, is_brick, simple};

    #[test]
    fn every_fixture_loads() {
        for f in FIXTURES {
            let a = algebra(f.name).unwrap();
            assert!(a.is_triangular(), "{}", f.name);
        }
        assert!(algebra("FIX-none").is_err());
    }

    #[test]
    fn fixture_shapes() {
        let a23 = algebra("FIX-A23").unwrap();
        assert_eq!((a23.vertex_count(), a23.quiver().arrow_count(), a23.relations().len()), (23, 27, 12));
        let b8 = algebra("FIX-B8").unwrap();
        assert_eq!(b8.dim(), 8 + 9);
        assert_eq!(global_dimension(&b8, 8).unwrap(), 4);
        let gl = algebra("FIX-GL").unwrap();
        assert_eq!((gl.vertex_count(), gl.relations().len()), (6, 6));
    }

    #[test]
    fn component_and_script_parse() {
        let g = b8_component();
        g.validate().unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(multicoil_script().ops.len(), 7);
        assert_eq!(load_tquiver("FIX-B8-component").unwrap().len(), 21);
        assert_eq!(load_script("FIX-multicoil").unwrap(), multicoil_script());
        assert!(load_tquiver("/nonexistent.tq").is_err());
    }

    #[test]
    fn d5t_mouth_is_orthogonal() {
        let a = algebra("FIX-D5t").unwrap();
        let s6 = simple(&a, a.vertex_index("6").unwrap());
        let s7 = simple(&a, a.vertex_index("7").unwrap());
        let e = d5t_e(&a);
        assert_eq!(load_module(&a, "E").unwrap(), e);
        assert_eq!(load_module(&a, "S6,S7").unwrap().total_dim(), 2);
        let ms = [s6, s7, e];
        for (i, x) in ms.iter().enumerate() {
            assert!(is_brick(x));
            for (j, y) in ms.iter().enumerate() {
                if i != j {
                    assert_eq!(hom_dim(x, y).unwrap(), 0);
                }
            }
        }
    }
}
