use thiserror::Error;

/// Errors reported by the evaluators, zero finders and the CLI layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates an operation's precondition (non-finite input,
    /// negative Bessel argument, odd panel count, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The point lies outside the region where the requested asymptotic
    /// formula is defined.
    #[error("{op} is undefined at x = {x} for n = {n}; valid region: {valid}")]
    Domain {
        op: &'static str,
        x: f64,
        n: f64,
        valid: String,
    },

    /// An iteration failed to converge or left its safe bracket.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")))
    }
}
