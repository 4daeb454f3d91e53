use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("matrix {0} is not invertible")]
    NotInvertible(String),

    #[error("generators have mixed moduli ({0} and {1})")]
    ModulusMismatch(u32, u32),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u32, u32),

    #[error("genus formula gave a non-integral or negative value {0}")]
    Genus(String),

    #[error("group is not det-surjective; X_H is not defined over Q")]
    NotDetSurjective,

    #[error("singular model: discriminant is zero")]
    SingularModel,

    #[error("bad reduction (or excluded prime) at p = {0}")]
    BadReduction(u64),

    #[error("CM j-invariant {0}: moduli criterion requires non-CM, j not in {{0, 1728}}")]
    CmInput(BigRational),

    #[error("theorem violation: j = {0} is nonsurjective at 2, 3 and 5 but is not exceptional")]
    TheoremViolation(BigRational),

    #[error("unknown label {label}; valid labels: {}", valid.join(", "))]
    UnknownLabel { label: String, valid: Vec<String> },

    #[error("both curves are attached to the prime {0}; fiber models need distinct primes")]
    SamePrime(u32),

    #[error("sample too small: p_bound = {0} < 20")]
    SampleTooSmall(u64),

    #[error("atlas record {label}: {field}")]
    Atlas { label: String, field: String },

    #[error("{} bad input line(s):\n  {}", .0.len(), .0.join("\n  "))]
    BatchInput(Vec<String>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Rewrites the line number of a parse error; other variants pass through.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }
}
