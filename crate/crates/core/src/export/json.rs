use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::NetworkAnalysis;
use crate::model::{LagDictionary, ModelRecord, SelectionResult};
use crate::network::{DistanceVector, TemporalEdge};
use crate::series::TimeSeries;
use crate::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesInfo {
    pub name: String,
    pub n: usize,
}

impl From<&TimeSeries> for SeriesInfo {
    fn from(s: &TimeSeries) -> Self {
        Self {
            name: s.name().to_string(),
            n: s.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub tool_version: String,
    pub window: Option<u32>,
    pub target: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DistancesRecord {
    pub lags: Vec<u32>,
    pub angles: Vec<f64>,
    pub values: Vec<f64>,
}

impl From<&DistanceVector> for DistancesRecord {
    fn from(d: &DistanceVector) -> Self {
        Self {
            lags: d.lags().to_vec(),
            angles: d.angles().to_vec(),
            values: d.distances().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRecord {
    pub window: u32,
    /// Count of leading nodes without a complete in-neighborhood.
    pub initial_nodes: u32,
    pub edges: Vec<TemporalEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDistanceRecord {
    pub time: u32,
    /// Steps before the target.
    pub delay: u32,
    #[serde(with = "super::float_repr")]
    pub distance: f64,
    pub next: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub target: u32,
    pub edges: Vec<TemporalEdge>,
    pub node_distances: Vec<NodeDistanceRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HubRecord {
    pub time: u32,
    pub delay: u32,
    pub in_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub max_in_degree: usize,
    pub chain: bool,
    pub ranking: Vec<HubRecord>,
    /// `(lag, count)` of tree edges.
    pub chain_profile: Vec<(u32, usize)>,
}

/// Everything produced for one model, in one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub schema_version: String,
    pub metadata: Metadata,
    pub series: Option<SeriesInfo>,
    pub dictionary: Option<LagDictionary>,
    pub model: ModelRecord,
    pub distances: DistancesRecord,
    pub network: NetworkRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsRecord>,
}

impl ExportBundle {
    pub fn new(
        analysis: &NetworkAnalysis,
        series: Option<SeriesInfo>,
        dictionary: Option<LagDictionary>,
    ) -> Self {
        let distances = analysis
            .distances
            .as_ref()
            .map(DistancesRecord::from)
            .unwrap_or_default();
        let network = match &analysis.network {
            Some(net) => NetworkRecord {
                window: net.window(),
                initial_nodes: net.max_lag(),
                edges: net.edges().to_vec(),
            },
            None => NetworkRecord {
                window: 1,
                initial_nodes: 0,
                edges: Vec::new(),
            },
        };
        let tree = analysis.tree.as_ref().map(|t| TreeRecord {
            target: t.target(),
            edges: t.tree_edges().to_vec(),
            node_distances: t
                .node_distance()
                .iter()
                .map(|(&time, &distance)| NodeDistanceRecord {
                    time,
                    delay: t.target() - time,
                    distance,
                    next: t.next_hop(time),
                })
                .collect(),
        });
        let stats = analysis.stats.as_ref().map(|s| {
            let target = analysis.tree.as_ref().map_or(0, |t| t.target());
            StatsRecord {
                max_in_degree: s.max_in_degree(),
                chain: s.is_chain(),
                ranking: s
                    .ranking
                    .iter()
                    .map(|&(time, in_degree)| HubRecord {
                        time,
                        delay: target - time,
                        in_degree,
                    })
                    .collect(),
                chain_profile: analysis.profile.clone(),
            }
        });

        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            metadata: Metadata {
                tool: "rarnet".to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                window: analysis.network.as_ref().map(|n| n.window()),
                target: analysis.tree.as_ref().map(|t| t.target()),
            },
            series,
            dictionary,
            model: analysis.model.clone(),
            distances,
            network,
            tree,
            stats,
        }
    }
}

pub fn export_json(bundle: &ExportBundle) -> String {
    serde_json::to_string_pretty(bundle).expect("bundle serializes")
}

pub fn parse_bundle(text: &str) -> Result<ExportBundle, Error> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_secs: f64,
    pub workers: Option<usize>,
}

/// Selection results. Everything outside `timing` is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionDocument {
    pub schema_version: String,
    pub series: SeriesInfo,
    pub dictionary: LagDictionary,
    pub best: ModelRecord,
    pub ranked: Vec<ModelRecord>,
    pub subsets_evaluated: u64,
    pub rank_deficient: u64,
    pub timing: Timing,
}

pub fn selection_document(
    result: &SelectionResult,
    series: &TimeSeries,
    dictionary: &LagDictionary,
    workers: Option<usize>,
) -> SelectionDocument {
    let named = |m: &crate::model::FittedModel| ModelRecord {
        name: Some(series.name().to_string()),
        ..m.record()
    };
    SelectionDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        series: series.into(),
        dictionary: *dictionary,
        best: named(&result.best),
        ranked: result.ranked.iter().map(named).collect(),
        subsets_evaluated: result.subsets_evaluated,
        rank_deficient: result.rank_deficient,
        timing: Timing {
            wall_time_secs: result.wall_time.as_secs_f64(),
            workers,
        },
    }
}

pub fn parse_selection(text: &str) -> Result<SelectionDocument, Error> {
    Ok(serde_json::from_str(text)?)
}

/// Reads a model from a bare model record, a selection document (its best
/// model) or an export bundle (its model). The result is validated.
pub fn parse_model(text: &str) -> Result<ModelRecord, Error> {
    let value: Value = serde_json::from_str(text)?;
    let record: ModelRecord = if value.get("best").is_some() {
        serde_json::from_value::<SelectionDocument>(value)?.best
    } else if let Some(model) = value.get("model") {
        serde_json::from_value(model.clone())?
    } else {
        serde_json::from_value(value)?
    };
    record.validate()?;
    Ok(record)
}
