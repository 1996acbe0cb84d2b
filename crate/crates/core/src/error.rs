//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lattice: at least {needed} nodes required, got {got}")]
    TooFewNodes { needed: usize, got: usize },

    /// A 2-node circle would connect its nodes by two parallel bonds, a case
    /// the nearest-neighbour adjacency pattern does not define.
    #[error(
        "lattice: a 2-node periodic lattice is ambiguous (double bond); use reflecting boundaries"
    )]
    PeriodicDoubleBond,

    #[error("lattice: transmission rate gamma must be positive, got {got}")]
    NonPositiveGamma { got: f64 },

    #[error("node index {node} out of range for a lattice of {n_nodes} nodes")]
    NodeOutOfRange { node: usize, n_nodes: usize },

    #[error("spectral: residual tolerance {got:e} outside supported range [{min:e}, {max:e}]")]
    ToleranceOutOfRange { got: f64, min: f64, max: f64 },

    #[error(
        "spectral: Jacobi iteration did not converge within {sweeps} sweeps; \
         off-diagonal norm {achieved:e} above tolerance {tolerance:e}"
    )]
    NoConvergence {
        sweeps: usize,
        achieved: f64,
        tolerance: f64,
    },

    #[error("spectral: {check} residual {achieved:e} exceeds tolerance {tolerance:e}")]
    ResidualExceeded {
        check: &'static str,
        achieved: f64,
        tolerance: f64,
    },

    #[error("dynamics: Bloch summation requires a periodic lattice of at least 3 nodes")]
    BlochRequiresPeriodic,

    #[error("dynamics: time must be nonnegative, got {got}")]
    NegativeTime { got: f64 },

    #[error("dynamics: invalid time grid: {0}")]
    InvalidTimeGrid(&'static str),

    /// A propagator produced a squared modulus outside [0, 1] by more than
    /// rounding can explain; this is an upstream bug, not an input error.
    #[error("dynamics: probability {value} outside [0, 1] beyond rounding tolerance")]
    ProbabilityOutOfRange { value: f64 },

    #[error("specialfn: argument {argument} outside supported domain |x| <= {limit}")]
    BesselArgumentOutOfDomain { argument: f64, limit: f64 },

    #[error("specialfn: order {order} outside supported domain |n| <= {limit}")]
    BesselOrderOutOfDomain { order: i64, limit: i64 },

    #[error("analysis: {0}")]
    Analysis(String),
}
