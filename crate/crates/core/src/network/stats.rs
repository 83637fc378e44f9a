use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::OptimalPathNetwork;

/// Degree structure of an optimal path tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeStats {
    /// Tree edges entering each node.
    pub in_degree: BTreeMap<u32, usize>,
    /// Tree edges leaving each node (1 for every reachable non-target node).
    pub out_degree: BTreeMap<u32, usize>,
    /// Nodes with at least one incoming tree edge, by in-degree descending,
    /// ties broken by earlier time.
    pub ranking: Vec<(u32, usize)>,
}

impl NodeStats {
    pub fn max_in_degree(&self) -> usize {
        self.ranking.first().map_or(0, |&(_, d)| d)
    }

    /// Nodes on which two or more influences converge.
    pub fn hubs(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.ranking.iter().copied().filter(|&(_, d)| d >= 2)
    }

    /// A tree in which no node collects more than one influence.
    pub fn is_chain(&self) -> bool {
        self.max_in_degree() <= 1
    }
}

pub fn node_statistics(opn: &OptimalPathNetwork) -> NodeStats {
    let mut in_degree: BTreeMap<u32, usize> = opn.node_distance().keys().map(|&t| (t, 0)).collect();
    let mut out_degree = in_degree.clone();
    for e in opn.tree_edges() {
        *in_degree.entry(e.target).or_default() += 1;
        *out_degree.entry(e.source).or_default() += 1;
    }
    let mut ranking: Vec<(u32, usize)> = in_degree
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&t, &d)| (t, d))
        .collect();
    ranking.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    NodeStats {
        in_degree,
        out_degree,
        ranking,
    }
}

/// Histogram of the lags used by tree edges, ascending by lag.
pub fn chain_profile(opn: &OptimalPathNetwork) -> Vec<(u32, usize)> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for e in opn.tree_edges() {
        *counts.entry(e.lag).or_default() += 1;
    }
    counts.into_iter().collect()
}
