//! Seeded simulation of linear autoregressive series.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::model::{LagSubset, ModelError};
use crate::series::TimeSeries;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub length: usize,
    /// Samples generated and discarded before the kept window.
    pub burn_in: usize,
    pub noise_std: f64,
    pub seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            length: 1000,
            burn_in: 500,
            noise_std: 1.0,
            seed: 0,
        }
    }
}

/// Generates `x(t) = intercept + Σ a_i x(t - l_i) + e(t)` with Gaussian
/// `e(t) ~ N(0, noise_std²)` from a zero initial state. ChaCha8 keeps the
/// stream identical across platforms for a given seed.
pub fn simulate_ar(
    lags: &[u32],
    coefficients: &[f64],
    intercept: f64,
    cfg: &SimulationConfig,
) -> Result<TimeSeries, Error> {
    let subset = LagSubset::new(lags.to_vec())?;
    if subset.len() != coefficients.len() {
        return Err(ModelError::CoefficientCount {
            lags: subset.len(),
            coefficients: coefficients.len(),
        }
        .into());
    }
    if !(cfg.noise_std.is_finite() && cfg.noise_std >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise_std must be finite and non-negative, got {}",
            cfg.noise_std
        )));
    }
    let noise = Normal::new(0.0, cfg.noise_std)
        .map_err(|e| Error::InvalidParameter(format!("noise_std {}: {e}", cfg.noise_std)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let warmup = subset.max_lag().unwrap_or(0) as usize;
    let total = warmup + cfg.burn_in + cfg.length;
    let mut x = vec![0.0; total];
    for t in warmup..total {
        let mut v = intercept + noise.sample(&mut rng);
        for (&l, a) in subset.lags().iter().zip(coefficients) {
            v += a * x[t - l as usize];
        }
        x[t] = v;
    }
    let kept = x.split_off(warmup + cfg.burn_in);
    Ok(TimeSeries::new(
        format!("synthetic-seed{}", cfg.seed),
        kept,
    )?)
}
