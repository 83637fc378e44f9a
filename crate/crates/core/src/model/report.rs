use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FittedModel, ModelRecord};

const MINUS: char = '\u{2212}';

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub equation: String,
    pub record: ModelRecord,
}

pub fn model_report(model: &FittedModel) -> ModelReport {
    ModelReport {
        equation: format_equation(model.intercept, model.lags.lags(), &model.coefficients),
        record: model.record(),
    }
}

/// Renders `x(t) = a0 + a1·x(t−l1) + ... + ε(t)` with 4-decimal coefficients.
pub fn format_equation(intercept: Option<f64>, lags: &[u32], coefficients: &[f64]) -> String {
    let mut terms: Vec<(f64, String)> = Vec::with_capacity(lags.len() + 1);
    if let Some(a0) = intercept {
        terms.push((a0, String::new()));
    }
    for (lag, a) in lags.iter().zip(coefficients) {
        terms.push((*a, format!("\u{b7}x(t{MINUS}{lag})")));
    }

    let mut out = String::from("x(t) = ");
    for (i, (value, suffix)) in terms.iter().enumerate() {
        let negative = value.is_sign_negative() && *value != 0.0;
        match (i, negative) {
            (0, true) => out.push(MINUS),
            (0, false) => {}
            (_, true) => write!(out, " {MINUS} ").unwrap(),
            (_, false) => out.push_str(" + "),
        }
        write!(out, "{:.4}{suffix}", value.abs()).unwrap();
    }
    if !terms.is_empty() {
        out.push_str(" + ");
    }
    out.push_str("\u{3b5}(t)");
    out
}

/// Fixed-width table of ranked models.
pub fn ranking_table(models: &[FittedModel]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>4}  {:>14}  {:>3}  lags", "rank", "SIC", "k").unwrap();
    for (i, m) in models.iter().enumerate() {
        let sic = if m.sic.perfect_fit {
            "-inf (perfect)".to_string()
        } else {
            format!("{:.4}", m.sic.value)
        };
        writeln!(out, "{:>4}  {:>14}  {:>3}  {}", i + 1, sic, m.k, m.lags).unwrap();
    }
    out
}
