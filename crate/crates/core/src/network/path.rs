use std::collections::BTreeMap;

use super::{NetworkError, TemporalEdge, TemporalNetwork};

/// Path costs within this relative margin are treated as equal, so that the
/// smallest-lag tie-break does not depend on floating-point summation order.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Shortest-path tree from every node of a window into one target node.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalPathNetwork {
    target: u32,
    model_lags: Vec<u32>,
    tree_edges: Vec<TemporalEdge>,
    node_distance: BTreeMap<u32, f64>,
    next_hop: BTreeMap<u32, u32>,
}

impl OptimalPathNetwork {
    pub fn target(&self) -> u32 {
        self.target
    }

    pub fn model_lags(&self) -> &[u32] {
        &self.model_lags
    }

    /// One edge per reachable non-target node, ordered by source time.
    pub fn tree_edges(&self) -> &[TemporalEdge] {
        &self.tree_edges
    }

    /// Shortest total distance to the target; infinite when unreachable.
    pub fn node_distance(&self) -> &BTreeMap<u32, f64> {
        &self.node_distance
    }

    pub fn distance(&self, time: u32) -> Option<f64> {
        self.node_distance.get(&time).copied()
    }

    /// Shortest distance from the node `delay` steps before the target.
    pub fn distance_from_delay(&self, delay: u32) -> Option<f64> {
        self.target
            .checked_sub(delay)
            .and_then(|t| self.distance(t))
    }

    pub fn next_hop(&self, time: u32) -> Option<u32> {
        self.next_hop.get(&time).copied()
    }

    pub fn next_hops(&self) -> &BTreeMap<u32, u32> {
        &self.next_hop
    }

    /// The tree edge leaving the node `delay` steps before the target.
    pub fn edge_from_delay(&self, delay: u32) -> Option<&TemporalEdge> {
        let source = self.target.checked_sub(delay)?;
        self.tree_edges.iter().find(|e| e.source == source)
    }

    /// Node times from `time` to the target along the tree.
    pub fn path_from(&self, time: u32) -> Option<Vec<u32>> {
        let mut path = vec![time];
        let mut at = time;
        while at != self.target {
            at = self.next_hop(at)?;
            path.push(at);
        }
        Some(path)
    }

    /// Whether `time` belongs to the model structure: the target itself or a
    /// node at one of the model's lags before it.
    pub fn is_model_node(&self, time: u32) -> bool {
        time == self.target
            || self
                .target
                .checked_sub(time)
                .is_some_and(|d| self.model_lags.contains(&d))
    }

    /// Keeps only the nodes at most `max_delay` steps before the target.
    /// Paths into the target never leave this span, so distances are unchanged.
    pub fn restrict_to_delay(&self, max_delay: u32) -> OptimalPathNetwork {
        let earliest = self.target.saturating_sub(max_delay).max(1);
        let keep = |t: u32| (earliest..=self.target).contains(&t);
        OptimalPathNetwork {
            target: self.target,
            model_lags: self.model_lags.clone(),
            tree_edges: self
                .tree_edges
                .iter()
                .filter(|e| keep(e.source))
                .copied()
                .collect(),
            node_distance: self
                .node_distance
                .iter()
                .filter(|(&t, _)| keep(t))
                .map(|(&t, &d)| (t, d))
                .collect(),
            next_hop: self
                .next_hop
                .iter()
                .filter(|(&t, _)| keep(t))
                .map(|(&t, &n)| (t, n))
                .collect(),
        }
    }

    /// The model span: nodes from the target back to the largest model lag.
    pub fn model_span(&self) -> OptimalPathNetwork {
        self.restrict_to_delay(self.model_lags.last().copied().unwrap_or(0))
    }

    /// Assembles a tree from stored parts without re-running the search.
    pub fn from_parts(
        target: u32,
        model_lags: Vec<u32>,
        tree_edges: Vec<TemporalEdge>,
        node_distance: BTreeMap<u32, f64>,
    ) -> Self {
        let next_hop = tree_edges.iter().map(|e| (e.source, e.target)).collect();
        Self {
            target,
            model_lags,
            tree_edges,
            node_distance,
            next_hop,
        }
    }
}

/// Single-target shortest paths over the forward-in-time edges of `network`.
///
/// Every edge points forward in time, so sweeping sources from the target
/// backwards settles each node after all of its successors. Equal-cost
/// alternatives resolve to the smallest lag.
pub fn optimal_path_network(
    network: &TemporalNetwork,
    target: u32,
) -> Result<OptimalPathNetwork, NetworkError> {
    if !network.node_times().contains(&target) {
        return Err(NetworkError::TargetOutOfRange {
            target,
            window: network.window(),
        });
    }

    let window = network.window() as usize;
    let mut out_edges: Vec<Vec<&TemporalEdge>> = vec![Vec::new(); window + 1];
    for e in network.edges() {
        debug_assert!(e.source < e.target);
        out_edges[e.source as usize].push(e);
    }
    for edges in &mut out_edges {
        edges.sort_by_key(|e| (e.lag, e.target));
    }

    let mut dist = vec![f64::INFINITY; window + 1];
    let mut chosen: Vec<Option<&TemporalEdge>> = vec![None; window + 1];
    dist[target as usize] = 0.0;
    for u in (1..target as usize).rev() {
        for e in &out_edges[u] {
            let through = dist[e.target as usize];
            if !through.is_finite() {
                continue;
            }
            let cost = e.weight + through;
            let margin = TIE_TOLERANCE * dist[u].abs().max(1.0);
            if chosen[u].is_none() || cost < dist[u] - margin {
                dist[u] = cost;
                chosen[u] = Some(e);
            }
        }
    }

    let tree_edges: Vec<TemporalEdge> = chosen.iter().flatten().map(|e| **e).collect();
    let node_distance = (1..=network.window())
        .map(|t| (t, dist[t as usize]))
        .collect();
    let next_hop = tree_edges.iter().map(|e| (e.source, e.target)).collect();

    Ok(OptimalPathNetwork {
        target,
        model_lags: network.model_lags().to_vec(),
        tree_edges,
        node_distance,
        next_hop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{direct_distances, expand_network};

    fn toy_tree() -> OptimalPathNetwork {
        let d = direct_distances(&[1.01, -0.61, 0.11], &[1, 3, 6]).unwrap();
        let net = expand_network(&d, 7).unwrap();
        optimal_path_network(&net, 7).unwrap()
    }

    #[test]
    fn toy_routes_longest_lag_through_lag_three() {
        let opn = toy_tree();
        let d = opn.distance_from_delay(6).unwrap();
        assert!((d - 3.3311).abs() < 1e-3);
        assert!(d < 10.7265);
        assert_eq!(opn.next_hop(1), Some(4));
        assert_eq!(opn.next_hop(4), Some(7));
        assert_eq!(opn.next_hop(6), Some(7));
        assert_eq!(opn.path_from(1), Some(vec![1, 4, 7]));
    }

    #[test]
    fn target_distance_is_zero() {
        let opn = toy_tree();
        assert_eq!(opn.distance(7), Some(0.0));
        assert_eq!(opn.tree_edges().len(), 6);
    }

    #[test]
    fn nodes_after_target_are_unreachable() {
        let d = direct_distances(&[1.01, -0.61, 0.11], &[1, 3, 6]).unwrap();
        let net = expand_network(&d, 15).unwrap();
        let opn = optimal_path_network(&net, 10).unwrap();
        assert_eq!(opn.distance(12), Some(f64::INFINITY));
        assert_eq!(opn.next_hop(12), None);
        assert!(opn.tree_edges().iter().all(|e| e.source < 10));
    }

    #[test]
    fn restriction_keeps_distances() {
        let d = direct_distances(&[1.01, -0.61, 0.11], &[1, 3, 6]).unwrap();
        let net = expand_network(&d, 15).unwrap();
        let full = optimal_path_network(&net, 15).unwrap();
        let span = full.model_span();
        assert_eq!(span.node_distance().len(), 7);
        assert_eq!(span.tree_edges().len(), 6);
        assert_eq!(span.distance(9), full.distance(9));
        assert_eq!(span, toy_tree_shifted(8));
    }

    fn toy_tree_shifted(shift: u32) -> OptimalPathNetwork {
        let t = toy_tree();
        let edges = t
            .tree_edges()
            .iter()
            .map(|e| TemporalEdge {
                source: e.source + shift,
                target: e.target + shift,
                ..*e
            })
            .collect();
        let dist = t
            .node_distance()
            .iter()
            .map(|(&k, &v)| (k + shift, v))
            .collect();
        OptimalPathNetwork::from_parts(t.target() + shift, t.model_lags().to_vec(), edges, dist)
    }

    #[test]
    fn target_outside_window() {
        let d = direct_distances(&[0.5, 0.5], &[1, 2]).unwrap();
        let net = expand_network(&d, 4).unwrap();
        assert!(optimal_path_network(&net, 5).is_err());
        assert!(optimal_path_network(&net, 0).is_err());
    }

    #[test]
    fn single_node_tree() {
        let d = direct_distances(&[0.5, 0.5], &[1, 2]).unwrap();
        let net = expand_network(&d, 4).unwrap();
        let opn = optimal_path_network(&net, 1).unwrap();
        assert!(opn.tree_edges().is_empty());
        assert_eq!(opn.distance(1), Some(0.0));
    }

    #[test]
    fn equal_costs_prefer_smaller_lag() {
        // d = (1, 1): node t-2 reaches t directly (1) or via t-1 (2); node
        // t-3 can go 1+1 via t-2 or 1+1 via t-1. Both tie at 2.
        let d = direct_distances(&[0.4, 0.4], &[1, 2]).unwrap();
        let net = expand_network(&d, 4).unwrap();
        let opn = optimal_path_network(&net, 4).unwrap();
        assert_eq!(opn.next_hop(1), Some(2));
        assert_eq!(opn.next_hop(2), Some(4));
    }
}
