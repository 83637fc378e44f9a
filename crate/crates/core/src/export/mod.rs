//! DOT and JSON serialization of models, networks and optimal path trees.

mod dot;
pub mod float_repr;
mod json;

pub use dot::{export_dot, network_dot, tree_dot, DotGraph, DotOptions};
pub use json::{
    export_json, parse_bundle, parse_model, parse_selection, selection_document, ExportBundle,
    Metadata, NetworkRecord, NodeDistanceRecord, SelectionDocument, SeriesInfo, StatsRecord,
    Timing, TreeRecord, SCHEMA_VERSION,
};
