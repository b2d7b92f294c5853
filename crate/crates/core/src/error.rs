use thiserror::Error;

/// Errors produced by the dimer library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    /// A graph description violates a structural invariant.
    #[error("invalid surface graph ({invariant}): {detail}")]
    InvalidGraph {
        invariant: &'static str,
        detail: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("chain is not a {variant} cycle")]
    NotACycle { variant: &'static str },
    #[error("homology class has the wrong variant or length")]
    WrongClass,
    #[error("edge {0} does not belong to the graph")]
    UnknownEdge(usize),
    #[error("edge {0} lies on the surface boundary")]
    BoundaryEdge(usize),
    #[error("dimer configuration does not match the boundary condition")]
    BoundaryMismatch,
    #[error("no dimer configuration realizes the requested boundary condition")]
    NoConfiguration,
    #[error("Kasteleyn parity obstruction: {0}")]
    ParityObstruction(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("repeated index {0} in minor")]
    RepeatedIndex(usize),
    #[error("index set of odd size")]
    OddIndexSet,
    #[error("grassmann elements use different generator counts ({0} vs {1})")]
    GeneratorMismatch(usize, usize),
    #[error("exponential of an element with nonzero constant term")]
    NotNilpotent,
    #[error("invalid cut curve: {0}")]
    InvalidCurve(String),
    #[error("invalid gluing map: {0}")]
    InvalidGluing(String),
    #[error("dimer configuration is not compatible with the gluing map")]
    IncompatibleDimer,
    #[error("graph is not bipartite: odd cycle through vertex {0}")]
    NotBipartite(usize),
    #[error("component {0} is not a sphere")]
    NotPlanar(usize),
    #[error("boundary signs do not pair opposite orientations at vertex {0}")]
    SignMismatch(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DimerError>;

pub(crate) fn invalid(invariant: &'static str, detail: impl Into<String>) -> DimerError {
    DimerError::InvalidGraph {
        invariant,
        detail: detail.into(),
    }
}
