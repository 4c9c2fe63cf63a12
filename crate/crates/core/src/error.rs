use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },

    #[error("line {line}: vertex {v} out of range for n = {n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("matrix is not symmetric (max asymmetry {max_asymmetry:e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("circulant spectrum has imaginary residue {imag:e} at k = {k}")]
    NonRealSpectrum { k: usize, imag: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("negative radicand {value:e} in bound `{bound}`")]
    NegativeRadicand { bound: &'static str, value: f64 },

    #[error("no closed form for family {0}")]
    NoClosedForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
