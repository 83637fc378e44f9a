use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Schwarz information criterion of a fit. A perfect fit (zero residual sum
/// of squares) scores negative infinity and carries `perfect_fit = true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SicScore {
    #[serde(with = "crate::export::float_repr")]
    pub value: f64,
    pub perfect_fit: bool,
}

impl SicScore {
    pub fn perfect_fit() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            perfect_fit: true,
        }
    }

    /// Lower is better; perfect fits sort ahead of every finite score.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.value.total_cmp(&other.value)
    }
}

/// `n_eff * ln(sse / n_eff) + k * ln(n_eff)`.
pub fn sic_score(n_eff: usize, k: usize, sse: f64) -> Result<SicScore, ModelError> {
    if n_eff == 0 {
        return Err(ModelError::NoRows);
    }
    if !sse.is_finite() || sse < 0.0 {
        return Err(ModelError::InvalidSse(sse));
    }
    if sse == 0.0 {
        return Ok(SicScore::perfect_fit());
    }
    let n = n_eff as f64;
    Ok(SicScore {
        value: n * (sse / n).ln() + k as f64 * n.ln(),
        perfect_fit: false,
    })
}
