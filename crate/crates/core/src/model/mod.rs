//! Reduced autoregressive (RAR) models: least-squares fits over lag subsets
//! and SIC-driven exhaustive subset selection.
//!
//! A model has the form
//!
//! ```text
//! x(t) = a0 + a1 x(t - l1) + ... + am x(t - lm) + e(t)
//! ```
//!
//! where the lags `l1 < ... < lm` are drawn from the dictionary `1..=max_lag`.

mod design;
mod report;
mod search;
mod sic;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use design::{fit_ols, LagDesign, SubsetSolution};
pub use report::{format_equation, model_report, ranking_table, ModelReport};
pub use search::{
    compare_models, exhaustive_search, exhaustive_search_with, SearchOptions, SelectionResult,
};
pub use sic::{sic_score, SicScore};

/// Largest dictionary the exhaustive search accepts.
pub const MAX_DICTIONARY_LAG: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("max_lag must be between 1 and {MAX_DICTIONARY_LAG}, got {0}")]
    InvalidDictionary(u32),
    #[error("lags must be positive and strictly increasing, got {0:?}")]
    InvalidSubset(Vec<u32>),
    #[error("lag {lag} exceeds the dictionary's max_lag {max_lag}")]
    LagOutOfRange { lag: u32, max_lag: u32 },
    #[error("{rows} regression rows cannot determine {params} parameters")]
    InsufficientRows { rows: usize, params: usize },
    #[error("rank-deficient design: column(s) {} are linearly dependent on the others", .columns.join(", "))]
    RankDeficient { columns: Vec<String> },
    #[error("sum of squared errors must be finite and non-negative, got {0}")]
    InvalidSse(f64),
    #[error("n_eff must be at least 1")]
    NoRows,
    #[error("every one of the {evaluated} candidate subsets was rank-deficient")]
    AllSubsetsFailed { evaluated: u64 },
    #[error("{coefficients} coefficients supplied for {lags} lags")]
    CoefficientCount { lags: usize, coefficients: usize },
    #[error("could not start worker pool: {0}")]
    WorkerPool(String),
}

/// The candidate lags `1..=max_lag` and whether a constant term is fitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagDictionary {
    max_lag: u32,
    include_intercept: bool,
}

impl LagDictionary {
    pub fn new(max_lag: u32, include_intercept: bool) -> Result<Self, ModelError> {
        if !(1..=MAX_DICTIONARY_LAG).contains(&max_lag) {
            return Err(ModelError::InvalidDictionary(max_lag));
        }
        Ok(Self {
            max_lag,
            include_intercept,
        })
    }

    pub fn max_lag(&self) -> u32 {
        self.max_lag
    }

    pub fn include_intercept(&self) -> bool {
        self.include_intercept
    }

    /// Number of lag subsets in the dictionary, `2^max_lag`.
    pub fn subset_count(&self) -> u64 {
        1u64 << self.max_lag
    }
}

/// A strictly increasing list of positive lags. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct LagSubset(Vec<u32>);

impl LagSubset {
    pub fn new(lags: Vec<u32>) -> Result<Self, ModelError> {
        let increasing = lags.windows(2).all(|w| w[0] < w[1]);
        if !increasing || lags.first() == Some(&0) {
            return Err(ModelError::InvalidSubset(lags));
        }
        Ok(Self(lags))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Bit `l - 1` of `mask` selects lag `l`.
    pub fn from_mask(mask: u32) -> Self {
        Self(
            (0..32)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        )
    }

    pub fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &l| m | 1 << (l - 1))
    }

    pub fn lags(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_lag(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn check_within(&self, dict: &LagDictionary) -> Result<(), ModelError> {
        match self.max_lag() {
            Some(lag) if lag > dict.max_lag() => Err(ModelError::LagOutOfRange {
                lag,
                max_lag: dict.max_lag(),
            }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<u32>> for LagSubset {
    type Error = ModelError;

    fn try_from(lags: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(lags)
    }
}

impl From<LagSubset> for Vec<u32> {
    fn from(s: LagSubset) -> Self {
        s.0
    }
}

impl fmt::Display for LagSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A least-squares fit of one lag subset.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub intercept: Option<f64>,
    pub lags: LagSubset,
    pub coefficients: Vec<f64>,
    /// Residuals over the regression rows `t = max_lag + 1 ..= n`.
    pub residuals: Vec<f64>,
    pub sse: f64,
    pub n_eff: usize,
    pub k: usize,
    pub sic: SicScore,
}

impl FittedModel {
    pub fn record(&self) -> ModelRecord {
        ModelRecord {
            name: None,
            intercept: self.intercept,
            lags: self.lags.lags().to_vec(),
            coefficients: self.coefficients.clone(),
            sse: Some(self.sse),
            n_eff: Some(self.n_eff),
            k: Some(self.k),
            sic: Some(self.sic.value),
            perfect_fit: self.sic.perfect_fit,
        }
    }
}

/// Serializable model description. Fit statistics are optional so that
/// published coefficient sets can be supplied without the data behind them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub intercept: Option<f64>,
    pub lags: Vec<u32>,
    pub coefficients: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sse: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_eff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::export::float_repr::option"
    )]
    pub sic: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub perfect_fit: bool,
}

impl ModelRecord {
    pub fn new(intercept: Option<f64>, lags: Vec<u32>, coefficients: Vec<f64>) -> Self {
        Self {
            name: None,
            intercept,
            lags,
            coefficients,
            sse: None,
            n_eff: None,
            k: None,
            sic: None,
            perfect_fit: false,
        }
    }

    /// Checks lag ordering and coefficient alignment.
    pub fn validate(&self) -> Result<LagSubset, ModelError> {
        let subset = LagSubset::new(self.lags.clone())?;
        if subset.len() != self.coefficients.len() {
            return Err(ModelError::CoefficientCount {
                lags: subset.len(),
                coefficients: self.coefficients.len(),
            });
        }
        Ok(subset)
    }

    pub fn equation(&self) -> String {
        format_equation(self.intercept, &self.lags, &self.coefficients)
    }
}
