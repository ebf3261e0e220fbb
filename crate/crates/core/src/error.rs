use thiserror::Error;

/// How a failure should be reported to a caller (and mapped to a process exit code).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent user input.
    Input,
    /// The input is well formed but a theorem hypothesis does not hold.
    Hypothesis,
    /// An internal consistency check failed. Always a bug or a broken invariant.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0}: argument must be nonzero")]
    ZeroInput(&'static str),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("d∘d ≠ 0 between degrees {degree} and {}", degree - 1)]
    NotAComplex { degree: i64 },

    #[error("homology is not Λ-torsion in degree {degree} (free rank {free_rank})")]
    NotTorsion { degree: i64, free_rank: usize },

    #[error("complex is not acyclic over the fraction field")]
    NotAcyclic,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid representation: {0}")]
    Representation(String),

    #[error("augmentation: {0}")]
    Augmentation(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Hypothesis(_) | Error::NotTorsion { .. } | Error::NotAcyclic | Error::Singular(_) => {
                ErrorKind::Hypothesis
            }
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
