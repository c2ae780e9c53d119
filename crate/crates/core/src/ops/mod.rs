//! Admissible operations as surgery on a translation quiver window together
//! with the algebra it belongs to.

mod algebra_side;
mod build;
mod random;
mod script;
mod support;

pub use random::*;
pub use script::*;
pub use support::*;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::OpError;
use crate::qalg::Algebra;
use crate::reps::{dimvec_add, DimVec, Representation};
use crate::tquiver::TranslationQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Ad1,
    Ad2,
    Ad3,
    Ad4,
    Ad5,
    Fad1,
    Fad2,
    Fad3,
    Fad4,
}

impl OpKind {
    pub const ALL: [OpKind; 9] =
        [OpKind::Ad1, OpKind::Ad2, OpKind::Ad3, OpKind::Ad4, OpKind::Ad5, OpKind::Fad1, OpKind::Fad2, OpKind::Fad3, OpKind::Fad4];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Ad1 => "ad1",
            OpKind::Ad2 => "ad2",
            OpKind::Ad3 => "ad3",
            OpKind::Ad4 => "ad4",
            OpKind::Ad5 => "ad5",
            OpKind::Fad1 => "fad1",
            OpKind::Fad2 => "fad2",
            OpKind::Fad3 => "fad3",
            OpKind::Fad4 => "fad4",
        }
    }

    pub fn parse(s: &str) -> Option<OpKind> {
        OpKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether the operation acts along a boundary-reaching ray.
    pub fn is_infinite(self) -> bool {
        matches!(self, OpKind::Ad1 | OpKind::Ad2 | OpKind::Ad3 | OpKind::Ad4 | OpKind::Ad5)
    }
}

/// One operation of a script. Parameters of a dual operation refer to the
/// reversed quiver, where the primal operation is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSpec {
    pub kind: OpKind,
    pub dual: bool,
    pub pivot: String,
    pub t: usize,
    pub r: usize,
    /// The finite path `Y_1, ..., Y_t` of (ad4)/(fad4), or a hint naming
    /// `Y_1` for the two-branch shapes.
    pub y: Vec<String>,
    /// Id of the extension vertex.
    pub ext: Option<String>,
    /// Vertex ids of `T_t(K)` for (ad1)/(fad1), of `T_r(K)` for (ad4)/(fad4).
    pub dvert: Vec<String>,
    /// Constituents of (ad5).
    pub sub: Vec<OpSpec>,
}

impl OpSpec {
    pub fn new(kind: OpKind, pivot: impl Into<String>) -> Self {
        OpSpec { kind, dual: false, pivot: pivot.into(), t: 0, r: 0, y: vec![], ext: None, dvert: vec![], sub: vec![] }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn with_y<S: Into<String>>(mut self, y: impl IntoIterator<Item = S>) -> Self {
        self.y = y.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_ext(mut self, ext: impl Into<String>) -> Self {
        self.ext = Some(ext.into());
        self
    }

    pub fn with_dvert<S: Into<String>>(mut self, d: impl IntoIterator<Item = S>) -> Self {
        self.dvert = d.into_iter().map(Into::into).collect();
        self
    }

    pub fn dualized(mut self) -> Self {
        self.dual = !self.dual;
        self
    }

    pub fn tag(&self) -> String {
        format!("{}{}", self.kind.name(), if self.dual { "*" } else { "" })
    }

    /// Parallel boundary-reaching rays an infinite operation must insert.
    pub fn expected_rays(&self) -> Option<usize> {
        match self.kind {
            OpKind::Ad1 | OpKind::Ad2 | OpKind::Ad3 => Some(self.t + 1),
            OpKind::Ad4 => Some(self.t + self.r + 1),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Z(usize, usize),
    XPrime(usize),
    YPrime(usize),
    U(usize, usize),
    W,
    /// Interval `[a, b]` of a linear algebra added alongside the extension.
    D(usize, usize),
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Z(i, j) => write!(f, "Z({i},{j})"),
            Piece::XPrime(i) => write!(f, "X'({i})"),
            Piece::YPrime(j) => write!(f, "Y'({j})"),
            Piece::U(k, l) => write!(f, "U({k},{l})"),
            Piece::W => write!(f, "W"),
            Piece::D(a, b) => write!(f, "D({a},{b})"),
        }
    }
}

/// An inserted vertex. Its label should equal the sum of the labels of
/// `parts` plus `extra`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub step: usize,
    pub op: String,
    pub id: String,
    pub piece: Piece,
    pub label: Option<DimVec>,
    pub parts: Vec<String>,
    pub extra: DimVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDelta {
    Exact { vertices: usize, arrows: usize, relations: usize },
    Symbolic(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub step: usize,
    pub op: String,
    pub pivot: String,
    pub shape: ShapeKind,
    pub inserted: Vec<String>,
    pub removed: Vec<String>,
    pub ext: String,
    /// Boundary-reaching sectional rays through the inserted rectangle.
    pub rays: Option<usize>,
    pub expected_rays: Option<usize>,
    pub algebra: AlgebraDelta,
}

/// A window of a (generalized) multicoil with whatever algebra and module data
/// is known.
#[derive(Clone, Debug)]
pub struct Multicoil {
    pub quiver: TranslationQuiver,
    pub algebra: Option<Algebra>,
    /// Representations of vertices, over `algebra`.
    pub reps: BTreeMap<String, Representation>,
    pub ledger: Vec<LedgerEntry>,
    pub steps: Vec<StepReport>,
    /// Operation tag that created each inserted vertex.
    pub origin: BTreeMap<String, String>,
    /// Require (ad2)/(ad3) pivots to come from a dual operation.
    pub provenance_gating: bool,
    pub notes: Vec<String>,
}

impl Multicoil {
    pub fn new(quiver: TranslationQuiver) -> Self {
        Multicoil {
            quiver,
            algebra: None,
            reps: BTreeMap::new(),
            ledger: vec![],
            steps: vec![],
            origin: BTreeMap::new(),
            provenance_gating: false,
            notes: vec![],
        }
    }

    pub fn with_algebra(mut self, a: Algebra, reps: BTreeMap<String, Representation>) -> Self {
        self.algebra = Some(a);
        self.reps = reps;
        self
    }

    pub fn rep(&self, id: &str) -> Option<&Representation> {
        self.reps.get(id)
    }

    /// Reverse the quiver, pass to the opposite algebra and dualize modules.
    pub fn reversed(&self) -> Result<Multicoil, OpError> {
        let mut out = self.clone();
        out.quiver = self.quiver.reversed();
        if let Some(a) = &self.algebra {
            let op: Algebra = Arc::new(a.opposite()?);
            out.reps = self.reps.iter().map(|(k, m)| (k.clone(), m.dual(&op))).collect();
            out.algebra = Some(op);
        }
        Ok(out)
    }

    /// Label identity for every ledger entry whose labels are known.
    pub fn ledger_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for e in &self.ledger {
            let Some(x) = self.quiver.index(&e.id) else { continue };
            let Some(label) = self.quiver.label(x) else { continue };
            let mut want = e.extra.clone();
            let mut known = true;
            for p in &e.parts {
                match self.quiver.index(p).and_then(|v| self.quiver.label(v)) {
                    Some(l) => want = dimvec_add(&want, l),
                    None => known = false,
                }
            }
            if known && want != *label {
                bad.push(e.id.clone());
            }
        }
        bad
    }

    /// `rays == expected` for every step that reports both.
    pub fn accounting_violations(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| matches!((s.rays, s.expected_rays), (Some(a), Some(b)) if a != b))
            .map(|s| s.step)
            .collect()
    }

    pub fn inserted_ids(&self) -> BTreeSet<String> {
        self.ledger.iter().map(|e| e.id.clone()).collect()
    }
}

/// Apply one operation; dual operations run the primal one on the reversed
/// quiver and opposite algebra.
pub fn apply(mc: &Multicoil, spec: &OpSpec) -> Result<Multicoil, OpError> {
    if spec.dual {
        let mut primal = spec.clone();
        primal.dual = false;
        build::apply_primal(&mc.reversed()?, &primal, true)?.reversed()
    } else {
        build::apply_primal(mc, spec, false)
    }
}

pub fn apply_ad1(mc: &Multicoil, pivot: &str, t: usize) -> Result<Multicoil, OpError> {
    apply(mc, &OpSpec::new(OpKind::Ad1, pivot).with_t(t))
}

pub fn apply_dual(mc: &Multicoil, spec: &OpSpec) -> Result<Multicoil, OpError> {
    apply(mc, &spec.clone().dualized())
}

#[cfg(test)]
mod tests;
