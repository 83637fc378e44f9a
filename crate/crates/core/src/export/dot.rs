use std::fmt::Write;

use crate::network::{OptimalPathNetwork, TemporalNetwork};

const MODEL_FILL: &str = "gray75";
const GAP_FILL: &str = "white";
const TREE_COLOR: &str = "firebrick";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotOptions {
    /// Decimal places of edge labels.
    pub precision: usize,
    /// Draw shortest-path tree edges bold and colored.
    pub highlight_tree: bool,
    pub title: Option<String>,
}

impl Default for DotOptions {
    fn default() -> Self {
        Self {
            precision: 4,
            highlight_tree: true,
            title: None,
        }
    }
}

/// Graph objects that can be rendered as DOT.
#[derive(Debug, Clone, Copy)]
pub enum DotGraph<'a> {
    /// A full window with absolute node times; the optional tree is
    /// highlighted and fixes which nodes count as model terms.
    Network(&'a TemporalNetwork, Option<&'a OptimalPathNetwork>),
    /// An optimal path tree with node names relative to its target.
    Tree(&'a OptimalPathNetwork),
}

pub fn export_dot(graph: DotGraph<'_>, options: &DotOptions) -> String {
    match graph {
        DotGraph::Network(net, tree) => network_dot(net, tree, options),
        DotGraph::Tree(tree) => tree_dot(tree, options),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn header(out: &mut String, name: &str, options: &DotOptions) {
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    if let Some(title) = &options.title {
        writeln!(out, "  label={};", quote(title)).unwrap();
    }
    writeln!(
        out,
        "  node [shape=circle, style=filled, fillcolor={GAP_FILL}];"
    )
    .unwrap();
}

fn relative_name(target: u32, time: u32) -> String {
    match target - time {
        0 => "t".to_string(),
        d => format!("t-{d}"),
    }
}

/// Full-window network: nodes are absolute times, initial nodes are boxes.
pub fn network_dot(
    network: &TemporalNetwork,
    tree: Option<&OptimalPathNetwork>,
    options: &DotOptions,
) -> String {
    let mut out = String::new();
    header(&mut out, "temporal_network", options);
    for t in network.node_times() {
        let mut attrs = Vec::new();
        if network.is_initial(t) {
            attrs.push("shape=box".to_string());
        }
        if tree.is_some_and(|tr| tr.is_model_node(t)) {
            attrs.push(format!("fillcolor={MODEL_FILL}"));
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{t}\";").unwrap();
        } else {
            writeln!(out, "  \"{t}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    for e in network.edges() {
        let on_tree = options.highlight_tree
            && tree.is_some_and(|tr| tr.next_hop(e.source) == Some(e.target));
        let mut attrs = format!("label=\"{:.*}\"", options.precision, e.weight);
        if on_tree {
            write!(attrs, ", color={TREE_COLOR}, penwidth=2").unwrap();
        }
        writeln!(out, "  \"{}\" -> \"{}\" [{attrs}];", e.source, e.target).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Optimal path tree with nodes named `t`, `t-1`, ... relative to the target.
/// Model-term nodes are gray, gap-filling nodes white.
pub fn tree_dot(tree: &OptimalPathNetwork, options: &DotOptions) -> String {
    let target = tree.target();
    let mut out = String::new();
    header(&mut out, "optimal_path_network", options);
    for &t in tree.node_distance().keys().filter(|&&t| t <= target).rev() {
        let fill = if tree.is_model_node(t) {
            MODEL_FILL
        } else {
            GAP_FILL
        };
        writeln!(
            out,
            "  \"{}\" [fillcolor={fill}];",
            relative_name(target, t)
        )
        .unwrap();
    }
    for e in tree.tree_edges() {
        let mut attrs = format!("label=\"{:.*}\"", options.precision, e.weight);
        if options.highlight_tree {
            write!(attrs, ", color={TREE_COLOR}, penwidth=2").unwrap();
        }
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [{attrs}];",
            relative_name(target, e.source),
            relative_name(target, e.target)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
