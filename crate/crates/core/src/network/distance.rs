use serde::{Deserialize, Serialize};

use super::NetworkError;

/// Angles and direct distances of the lag terms of one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceVector {
    lags: Vec<u32>,
    angles: Vec<f64>,
    #[serde(rename = "values")]
    distances: Vec<f64>,
    /// Set for single-term models, whose only angle is 0 or π.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    degenerate: bool,
}

impl DistanceVector {
    pub fn lags(&self) -> &[u32] {
        &self.lags
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn max_lag(&self) -> u32 {
        *self.lags.last().expect("distance vectors are never empty")
    }

    pub fn distance_for(&self, lag: u32) -> Option<f64> {
        self.lags
            .iter()
            .position(|&l| l == lag)
            .map(|i| self.distances[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.lags
            .iter()
            .copied()
            .zip(self.distances.iter().copied())
    }
}

/// `θ_i = arccos(a_i / ‖a‖)` and `d_i = |tan θ_i|` for each lag coefficient.
///
/// The intercept and noise term carry no delay and must not be passed in.
pub fn direct_distances(
    coefficients: &[f64],
    lags: &[u32],
) -> Result<DistanceVector, NetworkError> {
    if coefficients.len() != lags.len() {
        return Err(NetworkError::LengthMismatch {
            lags: lags.len(),
            coefficients: coefficients.len(),
        });
    }
    if lags.is_empty() {
        return Err(NetworkError::EmptyModel);
    }
    if lags[0] == 0 || lags.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NetworkError::InvalidLags(lags.to_vec()));
    }
    for (&lag, &a) in lags.iter().zip(coefficients) {
        if !a.is_finite() {
            return Err(NetworkError::NonFiniteCoefficient { lag });
        }
        if a == 0.0 {
            return Err(NetworkError::ZeroCoefficient { lag });
        }
    }

    let norm = coefficients.iter().map(|a| a * a).sum::<f64>().sqrt();
    let angles: Vec<f64> = coefficients
        .iter()
        .map(|a| (a / norm).clamp(-1.0, 1.0).acos())
        .collect();
    let degenerate = coefficients.len() == 1;
    let distances = if degenerate {
        vec![0.0]
    } else {
        angles.iter().map(|t| t.tan().abs()).collect()
    };

    Ok(DistanceVector {
        lags: lags.to_vec(),
        angles,
        distances,
        degenerate,
    })
}
