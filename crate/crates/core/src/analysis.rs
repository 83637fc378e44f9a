//! Model-to-network composition and the plain-text report.

use std::fmt::Write;

use crate::model::{ranking_table, ModelRecord, SelectionResult};
use crate::network::{
    chain_profile, default_window, direct_distances, expand_network, node_statistics,
    optimal_path_network, DistanceVector, NetworkError, NodeStats, OptimalPathNetwork,
    TemporalNetwork,
};
use crate::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Full-network window; defaults to [`default_window`].
    pub window: Option<u32>,
    /// Target node time; defaults to the last node of the window.
    pub target: Option<u32>,
}

/// All network views of one model. Everything except `model` is `None` (or
/// empty) for a model without lag terms.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkAnalysis {
    pub model: ModelRecord,
    pub distances: Option<DistanceVector>,
    pub network: Option<TemporalNetwork>,
    /// Shortest-path tree over the whole window.
    pub full_tree: Option<OptimalPathNetwork>,
    /// `full_tree` restricted to the target and its model lags.
    pub tree: Option<OptimalPathNetwork>,
    pub stats: Option<NodeStats>,
    pub profile: Vec<(u32, usize)>,
}

pub fn analyze(model: &ModelRecord, options: &AnalysisOptions) -> Result<NetworkAnalysis, Error> {
    let subset = model.validate()?;
    let Some(max_lag) = subset.max_lag() else {
        return Ok(NetworkAnalysis {
            model: model.clone(),
            distances: None,
            network: None,
            full_tree: None,
            tree: None,
            stats: None,
            profile: Vec::new(),
        });
    };

    let distances = direct_distances(&model.coefficients, subset.lags())?;
    let window = options.window.unwrap_or_else(|| default_window(max_lag));
    let network = expand_network(&distances, window)?;
    let target = options.target.unwrap_or(window);
    if target <= max_lag {
        return Err(NetworkError::TargetOutOfRange { target, window }.into());
    }
    let full_tree = optimal_path_network(&network, target)?;
    let tree = full_tree.model_span();
    let stats = node_statistics(&tree);
    let profile = chain_profile(&tree);

    Ok(NetworkAnalysis {
        model: model.clone(),
        distances: Some(distances),
        network: Some(network),
        full_tree: Some(full_tree),
        tree: Some(tree),
        stats: Some(stats),
        profile,
    })
}

fn delay_name(delay: u32) -> String {
    match delay {
        0 => "x(t)".to_string(),
        d => format!("x(t\u{2212}{d})"),
    }
}

/// Human-readable summary: equation, distance table, tree, hubs and lag profile.
pub fn text_report(analysis: &NetworkAnalysis, selection: Option<&SelectionResult>) -> String {
    let mut out = String::new();
    if let Some(name) = &analysis.model.name {
        writeln!(out, "model: {name}").unwrap();
    }
    writeln!(out, "{}", analysis.model.equation()).unwrap();

    if let Some(sel) = selection {
        writeln!(
            out,
            "\nexhaustive search: {} subsets ({} rank-deficient) in {:.3} s",
            sel.subsets_evaluated,
            sel.rank_deficient,
            sel.wall_time.as_secs_f64()
        )
        .unwrap();
        out.push_str(&ranking_table(&sel.ranked));
    }

    let (Some(distances), Some(tree), Some(stats)) =
        (&analysis.distances, &analysis.tree, &analysis.stats)
    else {
        writeln!(out, "\nno lag terms: the network is a single node").unwrap();
        return out;
    };

    writeln!(out, "\ndirect distances").unwrap();
    writeln!(
        out,
        "{:>10}  {:>10}  {:>10}  {:>10}",
        "term", "coef", "angle", "DD"
    )
    .unwrap();
    for ((lag, d), (a, theta)) in distances
        .iter()
        .zip(analysis.model.coefficients.iter().zip(distances.angles()))
    {
        writeln!(
            out,
            "{:>10}  {a:>10.4}  {theta:>10.4}  {d:>10.4}",
            delay_name(lag)
        )
        .unwrap();
    }
    if distances.is_degenerate() {
        writeln!(out, "(single-term model: distance is degenerate)").unwrap();
    }

    let target = tree.target();
    writeln!(out, "\noptimal path network (target {})", delay_name(0)).unwrap();
    writeln!(
        out,
        "{:>10}  {:>10}  {:>10}  {:>10}",
        "node", "next", "distance", "DD"
    )
    .unwrap();
    for (&time, &dist) in tree.node_distance().iter().rev() {
        if time == target {
            continue;
        }
        let delay = target - time;
        let next = tree
            .next_hop(time)
            .map_or("-".to_string(), |n| delay_name(target - n));
        let direct = distances
            .distance_for(delay)
            .map_or("-".to_string(), |d| format!("{d:.4}"));
        writeln!(
            out,
            "{:>10}  {next:>10}  {dist:>10.4}  {direct:>10}",
            delay_name(delay)
        )
        .unwrap();
    }

    let class = if stats.is_chain() { "chain" } else { "hub" };
    writeln!(
        out,
        "\nstructure: {class} (max in-tree degree {})",
        stats.max_in_degree()
    )
    .unwrap();
    let hubs: Vec<String> = stats
        .ranking
        .iter()
        .map(|&(t, d)| format!("{} [{d}]", delay_name(target - t)))
        .collect();
    writeln!(out, "hub ranking: {}", hubs.join(", ")).unwrap();
    let profile: Vec<String> = analysis
        .profile
        .iter()
        .map(|(lag, n)| format!("lag {lag}: {n}"))
        .collect();
    writeln!(out, "tree lag profile: {}", profile.join(", ")).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_analysis_defaults() {
        let m = ModelRecord::new(None, vec![1, 3, 6], vec![1.01, -0.61, 0.11]);
        let a = analyze(&m, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.network.as_ref().unwrap().window(), 15);
        let tree = a.tree.as_ref().unwrap();
        assert_eq!(tree.target(), 15);
        assert_eq!(tree.node_distance().len(), 7);
        let report = text_report(&a, None);
        assert!(report.contains("structure: hub"));
        assert!(report.contains("10.7265"));
    }

    #[test]
    fn empty_model() {
        let m = ModelRecord::new(Some(1.5), vec![], vec![]);
        let a = analyze(&m, &AnalysisOptions::default()).unwrap();
        assert!(a.tree.is_none());
        assert!(text_report(&a, None).contains("single node"));
    }

    #[test]
    fn target_must_leave_room_for_model_span() {
        let m = ModelRecord::new(None, vec![1, 3, 6], vec![1.01, -0.61, 0.11]);
        let opts = AnalysisOptions {
            window: Some(15),
            target: Some(4),
        };
        assert!(analyze(&m, &opts).is_err());
    }
}
