use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("ideal is not admissible within length cap {cap}: path {witness} survives")]
    NotAdmissible { cap: usize, witness: String },
    #[error("relation `{0}` is not homogeneous on a quiver with oriented cycles; no admissibility certificate")]
    Uncertifiable(String),
    #[error("algebra is not triangular (oriented cycle through `{0}`)")]
    NotTriangular(String),
    #[error("global dimension exceeds cap {0}")]
    InfiniteGlobalDimensionWithinCap(usize),
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("one-point extension has dimension {found}, expected {expected}")]
    ExtensionDimension { expected: usize, found: usize },
    #[error("projective resolution did not terminate within cap {0}")]
    ResolutionCapExceeded(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("tau is not injective: `{0}` and `{1}` share an image")]
    TauNotInjective(String, String),
    #[error("tau is defined on projective or boundary vertex `{0}`")]
    TauOnProjective(String),
    #[error("tau inverse is defined on injective vertex `{0}`")]
    TauInvOnInjective(String),
    #[error("mesh condition fails at `{vertex}`: predecessors {preds:?}, successors of tau {succs:?}")]
    MeshViolation { vertex: String, preds: Vec<String>, succs: Vec<String> },
    #[error("non-projective, non-boundary vertex `{0}` has no tau")]
    MissingTau(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("support shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("support of `{0}` is undecidable within the window")]
    AmbiguousAtBoundary(String),
    #[error("window too small: {0}")]
    BoundaryTooTight(String),
    #[error("deleted part is not finite within the window: {0}")]
    GammaHatInfinite(String),
    #[error("operation grammar violated: {0}")]
    GrammarViolation(String),
    #[error("new projective rays do not share a boundary-reaching subpath")]
    SharedSubpathMissing,
    #[error("unknown pivot `{0}`")]
    UnknownPivot(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("step {step}: {source}")]
    AtStep { step: usize, source: Box<OpError> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("not a multisection: axiom ({axiom}) fails: {detail}")]
    NotAMultisection { axiom: &'static str, detail: String },
    #[error("dimension vectors differ")]
    DimensionMismatch,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}
