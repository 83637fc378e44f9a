//! Univariate time series ingestion and description.
//!
//! Accepted text layout: one observation per line, fields separated by a comma
//! or whitespace, `#` starts a comment line. Values are used raw; nothing is
//! detrended, normalized or imputed.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const SUNSPOTS: &str = include_str!("../../../data/sunspots_1700_2008.txt");

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: cannot parse {token:?} as a number")]
    NonNumeric { line: usize, token: String },
    #[error("line {line}: non-finite value {token:?}")]
    NonFinite { line: usize, token: String },
    #[error("line {line}: expected {expected} column(s), found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: label {label} does not increase on the previous label {previous}")]
    NonIncreasingLabel {
        line: usize,
        label: f64,
        previous: f64,
    },
    #[error("series needs at least 2 observations, found {found}")]
    TooShort { found: usize },
    #[error("{labels} labels supplied for {values} values")]
    LabelLength { labels: usize, values: usize },
    #[error("value at index {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("label at index {index} does not increase")]
    UnorderedLabels { index: usize },
}

/// Column layout of a series file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesFormat {
    /// One value per line.
    #[default]
    SingleColumn,
    /// `label value` per line, e.g. `1700 5.0`.
    TwoColumn,
}

impl SeriesFormat {
    fn columns(self) -> usize {
        match self {
            SeriesFormat::SingleColumn => 1,
            SeriesFormat::TwoColumn => 2,
        }
    }
}

impl FromStr for SeriesFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single-column" | "single" | "1" => Ok(SeriesFormat::SingleColumn),
            "two-column" | "two" | "2" => Ok(SeriesFormat::TwoColumn),
            other => Err(format!(
                "unknown series format {other:?} (expected single-column or two-column)"
            )),
        }
    }
}

impl fmt::Display for SeriesFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesFormat::SingleColumn => "single-column",
            SeriesFormat::TwoColumn => "two-column",
        })
    }
}

/// An ordered, validated sequence of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    values: Vec<f64>,
    labels: Option<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self, SeriesError> {
        Self::with_labels(name, values, None)
    }

    pub fn with_labels(
        name: impl Into<String>,
        values: Vec<f64>,
        labels: Option<Vec<f64>>,
    ) -> Result<Self, SeriesError> {
        if values.len() < 2 {
            return Err(SeriesError::TooShort {
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SeriesError::NonFiniteValue { index });
        }
        if let Some(labels) = &labels {
            if labels.len() != values.len() {
                return Err(SeriesError::LabelLength {
                    labels: labels.len(),
                    values: values.len(),
                });
            }
            if let Some(index) = labels.iter().position(|l| !l.is_finite()) {
                return Err(SeriesError::NonFiniteValue { index });
            }
            if let Some(i) = labels.windows(2).position(|w| w[1] <= w[0]) {
                return Err(SeriesError::UnorderedLabels { index: i + 1 });
            }
        }
        Ok(Self {
            name: name.into(),
            values,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[f64]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false for a constructed series; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Parses series text. Line numbers in errors are 1-based physical lines.
pub fn parse_series(
    text: &str,
    format: SeriesFormat,
    name: impl Into<String>,
) -> Result<TimeSeries, SeriesError> {
    let columns = format.columns();
    let mut values = Vec::new();
    let mut labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != columns {
            return Err(SeriesError::ColumnCount {
                line,
                expected: columns,
                found: tokens.len(),
            });
        }
        let mut parsed = [0.0; 2];
        for (slot, token) in parsed.iter_mut().zip(&tokens) {
            let v: f64 = token.parse().map_err(|_| SeriesError::NonNumeric {
                line,
                token: token.to_string(),
            })?;
            if !v.is_finite() {
                return Err(SeriesError::NonFinite {
                    line,
                    token: token.to_string(),
                });
            }
            *slot = v;
        }
        match format {
            SeriesFormat::SingleColumn => values.push(parsed[0]),
            SeriesFormat::TwoColumn => {
                if let Some(&previous) = labels.last() {
                    if parsed[0] <= previous {
                        return Err(SeriesError::NonIncreasingLabel {
                            line,
                            label: parsed[0],
                            previous,
                        });
                    }
                }
                labels.push(parsed[0]);
                values.push(parsed[1]);
            }
        }
    }

    let labels = (format == SeriesFormat::TwoColumn).then_some(labels);
    TimeSeries::with_labels(name, values, labels)
}

/// Loads a series from disk; the file stem becomes the series name.
pub fn load_series(
    path: impl AsRef<Path>,
    format: SeriesFormat,
) -> Result<TimeSeries, SeriesError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| SeriesError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());
    parse_series(&text, format, name)
}

/// Writes the series in a layout `parse_series` reads back bit-exactly.
pub fn write_series<W: Write>(series: &TimeSeries, mut out: W) -> io::Result<()> {
    writeln!(out, "# {}", series.name())?;
    match series.labels() {
        Some(labels) => {
            for (label, value) in labels.iter().zip(series.values()) {
                writeln!(out, "{label:?} {value:?}")?;
            }
        }
        None => {
            for value in series.values() {
                writeln!(out, "{value:?}")?;
            }
        }
    }
    Ok(())
}

/// Annual sunspot numbers 1700-2008, bundled with the crate.
pub fn sunspots() -> TimeSeries {
    parse_series(SUNSPOTS, SeriesFormat::TwoColumn, "sunspots_1700_2008")
        .expect("bundled sunspot file is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub std_dev: f64,
}

pub fn summarize(series: &TimeSeries) -> Summary {
    let values = series.values();
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    Summary {
        n,
        min,
        max,
        mean,
        std_dev: (ss / (n - 1) as f64).sqrt(),
    }
}
