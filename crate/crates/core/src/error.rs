use thiserror::Error;

/// Errors raised by matrix ingestion and the reliability computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a Likert scale needs at least 2 levels, got {0}")]
    InvalidScale(usize),

    #[error("no data rows")]
    Empty,

    #[error("ragged rows: line {line} has {found} columns, expected {expected}")]
    RaggedRows {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("value {value} out of range 1..={levels} at line {line}, column {column}")]
    OutOfRange {
        line: u64,
        column: usize,
        value: i64,
        levels: usize,
    },

    #[error("blank cell at line {line}, column {column} (missing values are not supported)")]
    BlankCell { line: u64, column: usize },

    #[error("non-integer cell {token:?} at line {line}, column {column}")]
    InvalidCell {
        line: u64,
        column: usize,
        token: String,
    },

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("matrix shape mismatch: {rows}x{cols} needs {expected} entries, got {found}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("TooFewItems: need at least 2 items, got {0}")]
    TooFewItems(usize),

    #[error("TooFewRespondents: need at least 2 respondents, got {0}")]
    TooFewRespondents(usize),

    #[error("DegenerateTotalVariance: all totals are equal, alpha is undefined")]
    DegenerateTotalVariance,

    #[error("DegenerateModalEntropy: H(w) = 0 with a positive respondent entropy")]
    DegenerateModalEntropy,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("distributions have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("SupportMismatch: q[{index}] = 0 but p[{index}] > 0")]
    SupportMismatch { index: usize },

    #[error("DisjointSupport: Bhattacharyya coefficient is 0, distance is infinite")]
    DisjointSupport,

    #[error("smoothing must be a finite non-negative number, got {0}")]
    InvalidSmoothing(f64),

    #[error("unknown measure {0:?}; valid options: kl2, vi, bc, tv, hellinger")]
    UnknownMeasure(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// True for errors where the input was valid but the quantity is undefined on it.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DegenerateTotalVariance
                | Error::DegenerateModalEntropy
                | Error::SupportMismatch { .. }
                | Error::DisjointSupport
        )
    }

    /// Short machine-readable tag used in report markers.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidScale(_) => "InvalidScale",
            Error::Empty => "Empty",
            Error::RaggedRows { .. } => "RaggedRows",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::BlankCell { .. } => "BlankCell",
            Error::InvalidCell { .. } => "InvalidCell",
            Error::Csv(_) => "Csv",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::TooFewItems(_) => "TooFewItems",
            Error::TooFewRespondents(_) => "TooFewRespondents",
            Error::DegenerateTotalVariance => "DegenerateTotalVariance",
            Error::DegenerateModalEntropy => "DegenerateModalEntropy",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::InvalidDistribution(_) => "InvalidDistribution",
            Error::SupportMismatch { .. } => "SupportMismatch",
            Error::DisjointSupport => "DisjointSupport",
            Error::InvalidSmoothing(_) => "InvalidSmoothing",
            Error::UnknownMeasure(_) => "UnknownMeasure",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
