use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension {0} is not supported (expected 1..=8)")]
    UnsupportedDimension(usize),
    #[error("{what}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        what: String,
    },
    #[error("{0} has a non-finite coordinate")]
    NonFinite(String),
    #[error("degenerate cell (volume {volume:e})")]
    DegenerateCell { volume: f64 },
    #[error("motif is empty")]
    EmptyMotif,
    #[error("motif points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("motif index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("scale factor must be positive, got {0}")]
    InvalidScale(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing cell parameter {0}")]
    MissingCell(&'static str),
    #[error("no atom-site loop with fractional coordinates")]
    MissingSites,
    #[error("bad symmetry operation {op:?}: {message}")]
    SymOp { op: String, message: String },
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot tell the format of {0}; expected a .cif or .json file")]
    UnknownFormat(String),
}

impl IngestError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        IngestError::Parse {
            line,
            message: message.into(),
        }
    }

    /// Whether the failure comes from the cell geometry rather than syntax.
    pub fn is_degenerate_cell(&self) -> bool {
        matches!(
            self,
            IngestError::InvalidCell(_) | IngestError::Geometry(GeometryError::DegenerateCell { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdgeStreamError {
    #[error("edge stream would enumerate shell {shell}, past the cap {cap}")]
    ShellCapExceeded { shell: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    EdgeStream(#[from] EdgeStreamError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("input point list is empty")]
    EmptyInput,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("patch of {cells} cells per axis cannot certify connectivity below r(U) = {r_upper}")]
    Inconclusive { cells: usize, r_upper: f64 },
    #[error("patch half-width {given} is below the required {required}")]
    PatchTooSmall { given: usize, required: usize },
}
