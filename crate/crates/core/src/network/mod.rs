//! Temporal networks built from fitted lag coefficients.
//!
//! Each lag term `a_i x(t - l_i)` becomes an edge `x(t - l_i) -> x(t)` with
//! weight `|tan θ_i|`, where `θ_i` is the angle between the coefficient vector
//! and the `i`-th axis. Repeating the model at every time step expands it into
//! a time-indexed network; shortest paths into a target node then show which
//! influences are carried directly and which are relayed through other terms.

mod distance;
mod expand;
mod path;
mod stats;

use thiserror::Error;

pub use distance::{direct_distances, DistanceVector};
pub use expand::{default_window, expand_network, TemporalEdge, TemporalNetwork};
pub use path::{optimal_path_network, OptimalPathNetwork, TIE_TOLERANCE};
pub use stats::{chain_profile, node_statistics, NodeStats};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("model has no lag terms")]
    EmptyModel,
    #[error("coefficient of lag {lag} is zero; its distance would be infinite")]
    ZeroCoefficient { lag: u32 },
    #[error("coefficient of lag {lag} is not finite")]
    NonFiniteCoefficient { lag: u32 },
    #[error("{coefficients} coefficients supplied for {lags} lags")]
    LengthMismatch { lags: usize, coefficients: usize },
    #[error("lags must be positive and strictly increasing, got {0:?}")]
    InvalidLags(Vec<u32>),
    #[error("window {window} must exceed the largest lag {max_lag}")]
    WindowTooSmall { window: u32, max_lag: u32 },
    #[error("target {target} is outside the window 1..={window}")]
    TargetOutOfRange { target: u32, window: u32 },
}
