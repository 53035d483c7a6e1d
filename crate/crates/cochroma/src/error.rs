//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoundationError {
    #[error("partition parts must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("no exact rational {order}-th root of {value}")]
    NoExactRoot { value: String, order: u32 },
    #[error("malformed rational `{0}` (expected `p/q` or an integer)")]
    BadRational(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id `{0}` is empty or duplicated")]
    BadVertexId(String),
    #[error("vertex weights must be positive (vertex `{0}`)")]
    ZeroWeight(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("edge {{{0}, {1}}} not in the graph")]
    EdgeNotFound(String, String),
    #[error("orientation has a directed cycle")]
    CyclicOrientation,
    #[error("{op}: size bound exceeded ({detail})")]
    SizeBound { op: &'static str, detail: String },
    #[error("invalid {kind} construction: {detail}")]
    BadConstruction { kind: &'static str, detail: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymfuncError {
    #[error("basis {basis} is not available in algebra {algebra}")]
    BasisAlgebraMismatch { basis: &'static str, algebra: &'static str },
    #[error("cannot combine series over different algebras")]
    AlgebraMismatch,
    #[error("series has parts of degree above its cap")]
    CapViolation,
}

#[derive(Debug, Error)]
pub enum CsfError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symfunc(#[from] SymfuncError),
}

#[derive(Debug, Error)]
pub enum MorphismError {
    #[error("class sets overlap on {0}")]
    OverlappingClasses(u32),
    #[error("morphism undefined at part {part} (working cap {cap})")]
    PartOutOfRange { part: u32, cap: u32 },
    #[error("series must be in the power-sum basis over Lambda")]
    WrongBasis,
    #[error("solver branch budget ({0}) exceeded")]
    BranchBudget(u64),
    #[error("family must contain exactly one graph per total weight 1..=N; weight {0} duplicated or missing")]
    BadFamilyIndex(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Csf(#[from] CsfError),
    #[error(transparent)]
    Foundation(#[from] FoundationError),
}

#[derive(Debug, Error)]
pub enum KromaticError {
    #[error("{op}: bound exceeded ({detail})")]
    Bound { op: &'static str, detail: String },
    #[error("rotation step budget exceeded while normalizing a heap")]
    RotationBudget,
    #[error("graph has a triangle; the K triangle-free map does not apply")]
    NotTriangleFree,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
