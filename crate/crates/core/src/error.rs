use thiserror::Error;

/// Errors raised by the chain, capacity, protocol and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    EigenNonConvergence { index: usize, iterations: usize },

    #[error("series not converged: captured probability mass {mass:.6} after {k_max} measurements (need >= {required})")]
    Unconverged { mass: f64, k_max: usize, required: f64 },

    #[error("numerical instability: success probabilities sum to {mass} (> 1)")]
    Instability { mass: f64 },

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
