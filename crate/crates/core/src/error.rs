use thiserror::Error;

use crate::complex::Face;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("complex has no facets")]
    Empty,
    #[error("face has repeated vertex {0}")]
    RepeatedVertex(u32),
    #[error("face must contain at least one vertex")]
    EmptyFace,
    #[error("vertex id {vertex} out of range for {n} vertices")]
    BadVertexId { vertex: u32, n: usize },
    #[error("facets of mixed dimension ({dims:?}) in a complex required to be pure")]
    NotPure { dims: Vec<usize> },
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("vertex {vertex} already belongs to face {face}")]
    VertexInFace { vertex: u32, face: Face },
    #[error("dimension {dim} out of range (valid {lo}..={hi})")]
    DimensionOutOfRange { dim: usize, lo: usize, hi: usize },
    #[error("vector length {got} does not match the {expected} faces of the basis")]
    LengthMismatch { expected: usize, got: usize },
    #[error("n = {n} exceeds the exhaustive limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("power iteration did not reach the tolerance within {0} iterations")]
    NoConvergence(usize),
    #[error("complex is not {0}-path connected")]
    NotPathConnected(usize),
    #[error("eigenpair residual {residual:e} exceeds {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },
    #[error("eigenvalue {value:e} lies in the ambiguous band [{tol:e}, {upper:e})")]
    SpectrumAmbiguous { value: f64, tol: f64, upper: f64 },
    #[error("complex is not a basic hole")]
    NotBasicHole,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("added face {0} contains the apex")]
    FaceContainsApex(Face),
    #[error("face {0} is already present")]
    DuplicateFace(Face),
    #[error("expected beta_2 = {expected}, computed {got}")]
    BettiMismatch { expected: usize, got: usize },
    #[error("no matching complex within {0} attempts")]
    BudgetExhausted(usize),
    #[error("complex has no apex vertex")]
    NoApex,
    #[error("eigenvalue error bound {bound:e} exceeds {limit:e}")]
    PrecisionInsufficient { bound: f64, limit: f64 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dense form refused for {size} faces (limit {limit})")]
    DenseTooLarge { size: usize, limit: usize },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Stable code reported by the command line tool.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Empty => "E_EMPTY",
            Error::RepeatedVertex(_) | Error::EmptyFace => "E_BAD_FACE",
            Error::BadVertexId { .. } => "E_BAD_VERTEX_ID",
            Error::NotPure { .. } => "E_NOT_PURE",
            Error::FaceNotInComplex(_) => "E_FACE_NOT_IN_COMPLEX",
            Error::VertexInFace { .. } => "E_VERTEX_IN_FACE",
            Error::DimensionOutOfRange { .. } => "E_DIMENSION_OUT_OF_RANGE",
            Error::LengthMismatch { .. } => "E_LENGTH_MISMATCH",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::NoConvergence(_) => "E_NO_CONVERGENCE",
            Error::NotPathConnected(_) => "E_NOT_PATH_CONNECTED",
            Error::ResidualTooLarge { .. } => "E_RESIDUAL_TOO_LARGE",
            Error::SpectrumAmbiguous { .. } => "E_SPECTRUM_AMBIGUOUS",
            Error::NotBasicHole => "E_NOT_BASIC_HOLE",
            Error::BadParams(_) => "E_BAD_PARAMS",
            Error::FaceContainsApex(_) => "E_FACE_CONTAINS_APEX",
            Error::DuplicateFace(_) => "E_DUPLICATE_FACE",
            Error::BettiMismatch { .. } => "E_BETTI_MISMATCH",
            Error::BudgetExhausted(_) => "E_BUDGET_EXHAUSTED",
            Error::NoApex => "E_NO_APEX",
            Error::PrecisionInsufficient { .. } => "E_PRECISION_INSUFFICIENT",
            Error::Parse { .. } => "E_PARSE",
            Error::DenseTooLarge { .. } => "E_DENSE_TOO_LARGE",
            Error::Io(_) => "E_IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
