use crate::series::TimeSeries;

use super::{sic_score, FittedModel, LagDictionary, LagSubset, ModelError, SicScore};

/// A pivot below this fraction of the largest diagonal entry of the subset
/// Gram matrix marks the column as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Fits whose residual sum of squares falls below this fraction of the total
/// sum of squares of the target are treated as perfect.
pub const PERFECT_FIT_TOLERANCE: f64 = 1e-12;

/// Cross-product matrix of the target and every dictionary lag over the shared
/// regression rows `t = max_lag + 1 ..= n`.
///
/// Index 0 is the target `x(t)`, index `l` is the column `x(t - l)`. With an
/// intercept the cross products are taken about the column means, which
/// absorbs the constant term and keeps the normal equations well conditioned.
#[derive(Debug, Clone)]
pub struct LagDesign<'a> {
    values: &'a [f64],
    dict: LagDictionary,
    n_eff: usize,
    means: Vec<f64>,
    cross: Vec<f64>,
}

/// Coefficients of one subset solved from the cross-product matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSolution {
    pub intercept: Option<f64>,
    pub coefficients: Vec<f64>,
    /// Residual sum of squares from the normal equations (clamped at 0).
    pub sse: f64,
    pub perfect_fit: bool,
}

impl<'a> LagDesign<'a> {
    pub fn new(series: &'a TimeSeries, dict: LagDictionary) -> Result<Self, ModelError> {
        let values = series.values();
        let w = dict.max_lag() as usize;
        let n = values.len();
        if n <= w {
            return Err(ModelError::InsufficientRows {
                rows: 0,
                params: w + usize::from(dict.include_intercept()),
            });
        }
        let n_eff = n - w;
        let dim = w + 1;
        let column = |lag: usize| &values[w - lag..n - lag];

        let means: Vec<f64> = if dict.include_intercept() {
            (0..dim)
                .map(|lag| column(lag).iter().sum::<f64>() / n_eff as f64)
                .collect()
        } else {
            vec![0.0; dim]
        };

        let mut cross = vec![0.0; dim * dim];
        for i in 0..dim {
            let (ci, mi) = (column(i), means[i]);
            for j in i..dim {
                let (cj, mj) = (column(j), means[j]);
                let s: f64 = ci.iter().zip(cj).map(|(a, b)| (a - mi) * (b - mj)).sum();
                cross[i * dim + j] = s;
                cross[j * dim + i] = s;
            }
        }

        Ok(Self {
            values,
            dict,
            n_eff,
            means,
            cross,
        })
    }

    pub fn dictionary(&self) -> &LagDictionary {
        &self.dict
    }

    pub fn n_eff(&self) -> usize {
        self.n_eff
    }

    /// Total sum of squares of the target (about its mean when an intercept is fitted).
    pub fn total_ss(&self) -> f64 {
        self.cross[0]
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.cross[i * (self.dict.max_lag() as usize + 1) + j]
    }

    /// Parameter count of a subset under this dictionary.
    pub fn parameter_count(&self, subset: &LagSubset) -> usize {
        subset.len() + usize::from(self.dict.include_intercept())
    }

    /// Solves the normal equations of `subset` by Cholesky factorization of
    /// its principal submatrix.
    pub fn solve(&self, subset: &LagSubset) -> Result<SubsetSolution, ModelError> {
        subset.check_within(&self.dict)?;
        let params = self.parameter_count(subset);
        if self.n_eff <= params {
            return Err(ModelError::InsufficientRows {
                rows: self.n_eff,
                params,
            });
        }

        let cols: Vec<usize> = subset.lags().iter().map(|&l| l as usize).collect();
        let m = cols.len();
        let max_diag = cols.iter().map(|&c| self.at(c, c)).fold(0.0_f64, f64::max);
        let tol = RANK_TOLERANCE * max_diag;

        // Lower-triangular factor, row-major.
        let mut factor = vec![0.0; m * m];
        let mut dependent = Vec::new();
        for j in 0..m {
            let mut pivot = self.at(cols[j], cols[j]);
            for p in 0..j {
                pivot -= factor[j * m + p] * factor[j * m + p];
            }
            if pivot <= tol || max_diag <= 0.0 {
                dependent.push(format!("x(t-{})", cols[j]));
                continue;
            }
            let root = pivot.sqrt();
            factor[j * m + j] = root;
            for i in j + 1..m {
                let mut s = self.at(cols[i], cols[j]);
                for p in 0..j {
                    s -= factor[i * m + p] * factor[j * m + p];
                }
                factor[i * m + j] = s / root;
            }
        }
        if !dependent.is_empty() {
            return Err(ModelError::RankDeficient { columns: dependent });
        }

        // Forward substitution L z = b, where b holds the target cross products.
        let mut z = vec![0.0; m];
        for i in 0..m {
            let mut s = self.at(cols[i], 0);
            for p in 0..i {
                s -= factor[i * m + p] * z[p];
            }
            z[i] = s / factor[i * m + i];
        }
        // Back substitution L^T beta = z.
        let mut beta = vec![0.0; m];
        for i in (0..m).rev() {
            let mut s = z[i];
            for p in i + 1..m {
                s -= factor[p * m + i] * beta[p];
            }
            beta[i] = s / factor[i * m + i];
        }

        let explained: f64 = z.iter().map(|v| v * v).sum();
        let total = self.total_ss();
        let sse = (total - explained).max(0.0);
        let intercept = self.dict.include_intercept().then(|| {
            self.means[0]
                - cols
                    .iter()
                    .zip(&beta)
                    .map(|(&c, b)| b * self.means[c])
                    .sum::<f64>()
        });

        Ok(SubsetSolution {
            intercept,
            coefficients: beta,
            sse,
            perfect_fit: sse <= PERFECT_FIT_TOLERANCE * total,
        })
    }

    /// SIC of a subset from the cross-product matrix alone.
    pub fn score(&self, subset: &LagSubset) -> Result<SicScore, ModelError> {
        let sol = self.solve(subset)?;
        self.sic_for(self.parameter_count(subset), sol.sse, sol.perfect_fit)
    }

    fn sic_for(&self, k: usize, sse: f64, perfect: bool) -> Result<SicScore, ModelError> {
        if perfect {
            Ok(SicScore::perfect_fit())
        } else {
            sic_score(self.n_eff, k, sse)
        }
    }

    /// Full fit of a subset, with residuals computed against the data.
    pub fn fit(&self, subset: &LagSubset) -> Result<FittedModel, ModelError> {
        let sol = self.solve(subset)?;
        let w = self.dict.max_lag() as usize;
        let a0 = sol.intercept.unwrap_or(0.0);
        let residuals: Vec<f64> = (w..self.values.len())
            .map(|idx| {
                let predicted = subset
                    .lags()
                    .iter()
                    .zip(&sol.coefficients)
                    .fold(a0, |acc, (&l, a)| acc + a * self.values[idx - l as usize]);
                self.values[idx] - predicted
            })
            .collect();
        let sse: f64 = residuals.iter().map(|e| e * e).sum();
        let k = self.parameter_count(subset);
        let perfect = sse <= PERFECT_FIT_TOLERANCE * self.total_ss();
        let sic = self.sic_for(k, sse, perfect)?;

        Ok(FittedModel {
            intercept: sol.intercept,
            lags: subset.clone(),
            coefficients: sol.coefficients,
            residuals,
            sse,
            n_eff: self.n_eff,
            k,
            sic,
        })
    }
}

/// Least-squares fit of one lag subset on the rows `t = max_lag + 1 ..= n`.
pub fn fit_ols(
    series: &TimeSeries,
    subset: &LagSubset,
    dict: &LagDictionary,
) -> Result<FittedModel, ModelError> {
    LagDesign::new(series, *dict)?.fit(subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(n: usize) -> TimeSeries {
        let mut v = vec![1.0];
        for _ in 1..n {
            let last = *v.last().unwrap();
            v.push(0.5 * last);
        }
        TimeSeries::new("geo", v).unwrap()
    }

    #[test]
    fn noiseless_ar1_is_recovered() {
        let s = geometric(30);
        let dict = LagDictionary::new(1, true).unwrap();
        let m = fit_ols(&s, &LagSubset::new(vec![1]).unwrap(), &dict).unwrap();
        assert!((m.coefficients[0] - 0.5).abs() < 1e-10);
        assert!(m.intercept.unwrap().abs() < 1e-10);
        assert!(m.sse < 1e-20);
        assert!(m.sic.perfect_fit);
        assert_eq!(m.k, 2);
        assert_eq!(m.n_eff, 29);
    }

    #[test]
    fn fixed_rows_regardless_of_subset() {
        let s = geometric(20);
        let dict = LagDictionary::new(5, false).unwrap();
        let m = fit_ols(&s, &LagSubset::new(vec![2]).unwrap(), &dict).unwrap();
        assert_eq!(m.n_eff, 15);
        assert_eq!(m.residuals.len(), 15);
        assert_eq!(m.k, 1);
    }

    #[test]
    fn constant_series_is_rank_deficient() {
        let s = TimeSeries::new("c", vec![3.0; 12]).unwrap();
        let dict = LagDictionary::new(2, true).unwrap();
        let err = fit_ols(&s, &LagSubset::new(vec![1, 2]).unwrap(), &dict).unwrap_err();
        match err {
            ModelError::RankDeficient { columns } => {
                assert_eq!(columns, vec!["x(t-1)".to_string(), "x(t-2)".to_string()])
            }
            other => panic!("unexpected {other:?}"),
        }
        // The intercept alone reproduces a constant exactly.
        let m = fit_ols(&s, &LagSubset::empty(), &dict).unwrap();
        assert_eq!(m.intercept, Some(3.0));
        assert!(m.sic.perfect_fit);
    }

    #[test]
    fn collinear_lags_name_the_dependent_column() {
        // Period-2 alternation makes x(t-1) and x(t-3) identical columns.
        let v: Vec<f64> = (0..40)
            .map(|i| if i % 2 == 0 { 1.0 } else { -2.0 })
            .collect();
        let s = TimeSeries::new("alt", v).unwrap();
        let dict = LagDictionary::new(3, true).unwrap();
        let err = fit_ols(&s, &LagSubset::new(vec![1, 3]).unwrap(), &dict).unwrap_err();
        assert_eq!(
            err,
            ModelError::RankDeficient {
                columns: vec!["x(t-3)".into()]
            }
        );
    }

    #[test]
    fn too_few_rows() {
        let s = TimeSeries::new("s", vec![1.0, 2.0, 4.0, 3.0]).unwrap();
        let dict = LagDictionary::new(2, true).unwrap();
        let err = fit_ols(&s, &LagSubset::new(vec![1, 2]).unwrap(), &dict).unwrap_err();
        assert_eq!(err, ModelError::InsufficientRows { rows: 2, params: 3 });
        let dict = LagDictionary::new(5, true).unwrap();
        assert!(matches!(
            LagDesign::new(&s, dict),
            Err(ModelError::InsufficientRows { .. })
        ));
    }

    #[test]
    fn gram_and_residual_sse_agree() {
        let v: Vec<f64> = (0..60)
            .map(|i| ((i * 37 % 11) as f64).sin() * 3.0 + i as f64 * 0.1)
            .collect();
        let s = TimeSeries::new("s", v).unwrap();
        let dict = LagDictionary::new(4, true).unwrap();
        let design = LagDesign::new(&s, dict).unwrap();
        let subset = LagSubset::new(vec![1, 2, 4]).unwrap();
        let sol = design.solve(&subset).unwrap();
        let fit = design.fit(&subset).unwrap();
        assert!((sol.sse - fit.sse).abs() <= 1e-9 * fit.sse);
        let direct: f64 = fit.residuals.iter().map(|e| e * e).sum();
        assert_eq!(direct, fit.sse);
    }
}
