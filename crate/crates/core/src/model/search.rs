use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::series::TimeSeries;

use super::{FittedModel, LagDesign, LagDictionary, LagSubset, ModelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Number of best models kept in the ranking.
    pub top_k: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            top_k: 10,
            workers: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SelectionResult {
    pub best: FittedModel,
    /// Best models by ascending SIC, at most `top_k` of them.
    pub ranked: Vec<FittedModel>,
    pub subsets_evaluated: u64,
    /// Subsets excluded because their design was rank-deficient.
    pub rank_deficient: u64,
    pub wall_time: Duration,
}

/// Selection order: SIC, then fewer parameters, then the lexicographically
/// smaller lag list.
pub fn compare_models(a: &FittedModel, b: &FittedModel) -> Ordering {
    a.sic
        .total_cmp(&b.sic)
        .then(a.k.cmp(&b.k))
        .then_with(|| a.lags.lags().cmp(b.lags.lags()))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    sic: f64,
    k: usize,
    mask: u32,
}

impl Candidate {
    fn lags(&self) -> LagSubset {
        LagSubset::from_mask(self.mask)
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sic
            .total_cmp(&other.sic)
            .then(self.k.cmp(&other.k))
            .then_with(|| {
                if self.mask == other.mask {
                    Ordering::Equal
                } else {
                    self.lags().lags().cmp(other.lags().lags())
                }
            })
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

/// Partial result of one worker; merging is associative and commutative
/// because the candidate order is total.
struct Tally {
    limit: usize,
    worst_first: BinaryHeap<Candidate>,
    evaluated: u64,
    rank_deficient: u64,
}

impl Tally {
    fn new(limit: usize) -> Self {
        Self {
            limit,
            worst_first: BinaryHeap::with_capacity(limit + 1),
            evaluated: 0,
            rank_deficient: 0,
        }
    }

    fn offer(&mut self, c: Candidate) {
        if self.worst_first.len() < self.limit {
            self.worst_first.push(c);
        } else if let Some(worst) = self.worst_first.peek() {
            if c < *worst {
                self.worst_first.pop();
                self.worst_first.push(c);
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.evaluated += other.evaluated;
        self.rank_deficient += other.rank_deficient;
        for c in other.worst_first {
            self.offer(c);
        }
        self
    }
}

/// Exhaustive SIC search over all `2^max_lag` lag subsets.
pub fn exhaustive_search(
    series: &TimeSeries,
    dict: &LagDictionary,
    top_k: usize,
) -> Result<SelectionResult, ModelError> {
    exhaustive_search_with(
        series,
        dict,
        &SearchOptions {
            top_k,
            workers: None,
        },
    )
}

pub fn exhaustive_search_with(
    series: &TimeSeries,
    dict: &LagDictionary,
    options: &SearchOptions,
) -> Result<SelectionResult, ModelError> {
    let started = Instant::now();
    let design = LagDesign::new(series, *dict)?;
    let full = dict.max_lag() as usize + usize::from(dict.include_intercept());
    if design.n_eff() <= full {
        return Err(ModelError::InsufficientRows {
            rows: design.n_eff(),
            params: full,
        });
    }
    let limit = options.top_k.max(1);

    let run = || {
        (0..dict.subset_count())
            .into_par_iter()
            .fold(
                || Tally::new(limit),
                |mut tally, mask| {
                    let subset = LagSubset::from_mask(mask as u32);
                    tally.evaluated += 1;
                    match design.score(&subset) {
                        Ok(sic) => tally.offer(Candidate {
                            sic: sic.value,
                            k: design.parameter_count(&subset),
                            mask: mask as u32,
                        }),
                        Err(ModelError::RankDeficient { .. }) => tally.rank_deficient += 1,
                        // Row counts were checked for the largest subset above.
                        Err(other) => unreachable!("subset fit failed: {other}"),
                    }
                    tally
                },
            )
            .reduce(|| Tally::new(limit), Tally::merge)
    };
    let tally = match options.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| ModelError::WorkerPool(e.to_string()))?
            .install(run),
        None => run(),
    };

    if tally.worst_first.is_empty() {
        return Err(ModelError::AllSubsetsFailed {
            evaluated: tally.evaluated,
        });
    }
    let mut ranked = tally
        .worst_first
        .into_sorted_vec()
        .iter()
        .map(|c| design.fit(&c.lags()))
        .collect::<Result<Vec<_>, _>>()?;
    ranked.sort_by(compare_models);

    Ok(SelectionResult {
        best: ranked[0].clone(),
        ranked,
        subsets_evaluated: tally.evaluated,
        rank_deficient: tally.rank_deficient,
        wall_time: started.elapsed(),
    })
}
