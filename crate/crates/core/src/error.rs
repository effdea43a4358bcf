use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: need {needed} entries, sequence has {available}")]
    IndexOutOfRange { needed: usize, available: usize },
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },
    #[error("pole of the gamma function at z = {0}")]
    Pole(f64),
    #[error("floating-point overflow in {0}; use exact mode or a smaller index")]
    Overflow(&'static str),
    #[error("{what} did not converge (achieved relative change {achieved:e} after {evaluations} evaluations)")]
    NonConvergence {
        what: &'static str,
        achieved: f64,
        evaluations: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}
