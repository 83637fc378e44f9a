use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{DistanceVector, NetworkError};

/// A weighted edge `source -> target` carrying one lag term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub source: u32,
    pub target: u32,
    pub lag: u32,
    pub weight: f64,
}

/// The model repeated at every time step of the window `1..=window`.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalNetwork {
    window: u32,
    distances: DistanceVector,
    edges: Vec<TemporalEdge>,
}

impl TemporalNetwork {
    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn node_times(&self) -> RangeInclusive<u32> {
        1..=self.window
    }

    /// Nodes whose lagged predecessors partly fall before the window.
    pub fn initial_times(&self) -> RangeInclusive<u32> {
        1..=self.max_lag()
    }

    pub fn is_initial(&self, time: u32) -> bool {
        time <= self.max_lag()
    }

    pub fn max_lag(&self) -> u32 {
        self.distances.max_lag()
    }

    pub fn distances(&self) -> &DistanceVector {
        &self.distances
    }

    pub fn model_lags(&self) -> &[u32] {
        self.distances.lags()
    }

    /// Edges ordered by target time, then lag.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn in_edges(&self, time: u32) -> impl Iterator<Item = &TemporalEdge> {
        self.edges.iter().filter(move |e| e.target == time)
    }
}

/// 2.5 × `max_lag` rounded up, and never less than `max_lag + 1`.
pub fn default_window(max_lag: u32) -> u32 {
    let scaled = (u64::from(max_lag) * 5).div_ceil(2) as u32;
    scaled.max(max_lag + 1)
}

/// Expands the model over `1..=window`: every node `τ` receives an edge from
/// `τ - lag` for each model lag with `τ - lag ≥ 1`.
pub fn expand_network(
    distances: &DistanceVector,
    window: u32,
) -> Result<TemporalNetwork, NetworkError> {
    let max_lag = distances.max_lag();
    if window <= max_lag {
        return Err(NetworkError::WindowTooSmall { window, max_lag });
    }
    let edges = (1..=window)
        .flat_map(|target| {
            distances
                .iter()
                .filter(move |&(lag, _)| lag < target)
                .map(move |(lag, weight)| TemporalEdge {
                    source: target - lag,
                    target,
                    lag,
                    weight,
                })
        })
        .collect();
    Ok(TemporalNetwork {
        window,
        distances: distances.clone(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::direct_distances;

    fn toy() -> DistanceVector {
        direct_distances(&[1.01, -0.61, 0.11], &[1, 3, 6]).unwrap()
    }

    #[test]
    fn toy_window_fifteen() {
        let net = expand_network(&toy(), 15).unwrap();
        assert_eq!(net.node_times().count(), 15);
        assert_eq!(net.initial_times(), 1..=6);
        let mut sources: Vec<u32> = net.in_edges(7).map(|e| e.source).collect();
        sources.sort();
        assert_eq!(sources, vec![1, 4, 6]);
        // 14 lag-1, 12 lag-3 and 9 lag-6 edges.
        assert_eq!(net.edges().len(), 35);
    }

    #[test]
    fn initial_nodes_lack_full_in_neighbourhood() {
        let net = expand_network(&toy(), 15).unwrap();
        for t in net.node_times() {
            let n = net.in_edges(t).count();
            if net.is_initial(t) {
                assert!(n < 3);
            } else {
                assert_eq!(n, 3);
            }
        }
    }

    #[test]
    fn window_must_exceed_max_lag() {
        assert_eq!(
            expand_network(&toy(), 6),
            Err(NetworkError::WindowTooSmall {
                window: 6,
                max_lag: 6
            })
        );
        assert!(expand_network(&toy(), 7).is_ok());
    }

    #[test]
    fn default_windows() {
        assert_eq!(default_window(6), 15);
        assert_eq!(default_window(9), 23);
        assert_eq!(default_window(1), 3);
        assert_eq!(default_window(15), 38);
    }
}
