use thiserror::Error;

/// Errors raised by decision procedures, certificate builders and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    /// The zero element (or an identically-zero function) is the trivial zero
    /// divisor and is rejected by the classifiers.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed certificate: {0}")]
    CertificateMalformed(String),

    #[error("numeric failure: {message}")]
    Numeric {
        message: String,
        last_iterate: Option<f64>,
    },

    #[error("not a root: remainder {remainder:e} exceeds bound {bound:e}")]
    NotARoot { remainder: f64, bound: f64 },

    #[error("unsupported product: {0}")]
    UnsupportedProduct(String),

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("composition not representable: {0}")]
    CompositionUnrepresentable(String),

    #[error("section size {given} too small, need at least {minimal}")]
    SectionTooSmall { given: usize, minimal: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric {
            message: msg.into(),
            last_iterate: None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
