//! Reduced autoregressive model selection and temporal-network analysis.
//!
//! The pipeline is: load a [`series::TimeSeries`], select the lag subset with
//! the lowest Schwarz information criterion by exhaustive search
//! ([`model::exhaustive_search`]), convert the chosen coefficients into
//! direct distances ([`network::direct_distances`]), expand them into a
//! time-indexed network and extract the shortest-path tree into the latest
//! node ([`network::optimal_path_network`]). [`export`] writes DOT and JSON.

pub mod analysis;
pub mod export;
pub mod model;
pub mod network;
pub mod series;
pub mod simulate;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] series::SeriesError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Network(#[from] network::NetworkError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed document: {0}")]
    Document(#[from] serde_json::Error),
}
