use thiserror::Error;

/// Errors produced anywhere in the estimation pipeline.
///
/// Every variant maps onto one stable diagnostic code (see [`Error::code`])
/// that the CLI and the C ABI report verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("moment pair is infeasible: log ratio {log_ratio} must be positive")]
    InfeasibleRatio { log_ratio: f64 },

    #[error("could not bracket target {target} within {expansions} expansions (lo={lo}, hi={hi})")]
    BracketExhausted {
        target: f64,
        lo: f64,
        hi: f64,
        expansions: u32,
    },

    #[error("bisection stopped after {iterations} iterations with bracket width {width}")]
    IterationLimit { iterations: u32, width: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("column {0:?} not found in csv header")]
    MissingColumn(String),

    #[error("no data values")]
    EmptyData,

    #[error("negative value {value} at index {index}")]
    NegativeValue { index: usize, value: f64 },

    #[error("power sum of order {order} overflows")]
    OverflowAtOrder { order: f64 },

    #[error("{0} overflows the floating point range")]
    Overflow(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) | Error::EmptyData | Error::NegativeValue { .. } => "DOMAIN_ERROR",
            Error::InfeasibleRatio { .. } => "INFEASIBLE_RATIO",
            Error::BracketExhausted { .. } => "BRACKET_EXHAUSTED",
            Error::IterationLimit { .. } => "ITERATION_LIMIT",
            Error::Parse { .. } | Error::MissingColumn(_) => "PARSE_ERROR",
            Error::OverflowAtOrder { .. } | Error::Overflow(_) => "OVERFLOW",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// True for failures of the numerics on otherwise well-formed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleRatio { .. }
                | Error::BracketExhausted { .. }
                | Error::IterationLimit { .. }
                | Error::OverflowAtOrder { .. }
                | Error::Overflow(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
