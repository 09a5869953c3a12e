use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A boundary loop does not chain head-to-tail.
    #[error("boundary loop does not close: gap of {gap:.3e} after piece {piece}")]
    OpenLoop { piece: usize, gap: f64 },

    /// Newton iteration failed to reach the requested residual.
    #[error("newton iteration diverged after {iterations} steps; residual trace {trace:?}")]
    Divergence { iterations: usize, trace: Vec<f64> },

    /// A topology file could not be parsed.
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },

    /// A lattice scan would exceed the memory/time budget.
    #[error("hexagon lattice scan too large; m must not exceed {limit_m}")]
    Resource { limit_m: u64 },

    /// An internal invariant was violated.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
