use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A root or iteration failed to reach its tolerance.
    #[error("{op} did not converge: {msg}")]
    Convergence { op: &'static str, msg: String },

    /// Array lengths or grid shapes do not match.
    #[error("shape mismatch in {op}: {msg}")]
    Shape { op: &'static str, msg: String },

    /// Measured spectral or spatial tail exceeds the configured budget.
    #[error("truncation budget exceeded in {op}: measured tail {measured:.3e} > budget {budget:.3e}")]
    TailBudget {
        op: &'static str,
        measured: f64,
        budget: f64,
    },

    /// (q, r) pair fails the selected Strichartz admissibility relation.
    #[error("inadmissible exponents: {msg}")]
    Admissibility { msg: String },

    /// A check was invoked on a state that violates its hypotheses.
    #[error("precondition violated in {op}: {msg}")]
    Precondition { op: &'static str, msg: String },

    /// Peak tracking lost the packet.
    #[error("packet tracking failed: {msg}")]
    Tracking { msg: String },

    /// Time step violates the CFL stability bound.
    #[error("CFL violation: dt = {dt:.3e} exceeds limit {limit:.3e}")]
    Cfl { dt: f64, limit: f64 },

    /// A non-finite value appeared where a finite one is required.
    #[error("non-finite value in {op}: {msg}")]
    NonFinite { op: &'static str, msg: String },

    /// Invalid run configuration.
    #[error("configuration error: {msg}")]
    Config { msg: String },
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn shape(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Shape { op, msg: msg.into() }
    }

    pub fn precondition(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Precondition { op, msg: msg.into() }
    }
}
