//! Test-only oracles, independent of the library's solution paths.
#![allow(dead_code)]

pub mod dot_check;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Regression rows `t = max_lag + 1 ..= n`: returns the explicit design
/// (leading ones column when `intercept`) and the target vector.
pub fn design_matrix(
    values: &[f64],
    lags: &[u32],
    max_lag: u32,
    intercept: bool,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let w = max_lag as usize;
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for idx in w..values.len() {
        let mut row = Vec::new();
        if intercept {
            row.push(1.0);
        }
        for &l in lags {
            row.push(values[idx - l as usize]);
        }
        rows.push(row);
        y.push(values[idx]);
    }
    (rows, y)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Raw (uncentered) normal equations `XᵀX β = Xᵀy`, solved by elimination.
/// Returns `(params, sse)`; params lead with the intercept when present.
pub fn normal_equations_fit(
    values: &[f64],
    lags: &[u32],
    max_lag: u32,
    intercept: bool,
) -> (Vec<f64>, f64) {
    let (x, y) = design_matrix(values, lags, max_lag, intercept);
    let p = x.first().map_or(0, |r| r.len());
    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (row, &yi) in x.iter().zip(&y) {
        for i in 0..p {
            xty[i] += row[i] * yi;
            for j in 0..p {
                xtx[i][j] += row[i] * row[j];
            }
        }
    }
    let beta = if p == 0 {
        Vec::new()
    } else {
        gauss_solve(xtx, xty)
    };
    let sse = x
        .iter()
        .zip(&y)
        .map(|(row, yi)| {
            let fit: f64 = row.iter().zip(&beta).map(|(a, b)| a * b).sum();
            (yi - fit).powi(2)
        })
        .sum();
    (beta, sse)
}

/// Least squares by SVD of the explicit design (nalgebra).
pub fn svd_fit(values: &[f64], lags: &[u32], max_lag: u32, intercept: bool) -> Vec<f64> {
    let (x, y) = design_matrix(values, lags, max_lag, intercept);
    let p = x[0].len();
    let m = nalgebra::DMatrix::from_fn(x.len(), p, |i, j| x[i][j]);
    let v = nalgebra::DVector::from_vec(y);
    let sol = m.svd(true, true).solve(&v, 1e-14).unwrap();
    sol.iter().copied().collect()
}

pub fn sic(n: usize, k: usize, sse: f64) -> f64 {
    let n = n as f64;
    n * (sse / n).ln() + k as f64 * n.ln()
}

/// Lowest-cost forward path from `from` to `to` by enumerating every lag
/// sequence.
pub fn brute_force_distance(lags: &[u32], weights: &[f64], from: u32, to: u32) -> f64 {
    if from == to {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (&l, &w) in lags.iter().zip(weights) {
        if from + l <= to {
            best = best.min(w + brute_force_distance(lags, weights, from + l, to));
        }
    }
    best
}

pub fn random_series(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-5.0..5.0)).collect()
}

pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
