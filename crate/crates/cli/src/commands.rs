use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use rarnet::analysis::{analyze, text_report, AnalysisOptions, NetworkAnalysis};
use rarnet::export::{
    export_json, network_dot, parse_model, selection_document, tree_dot, DotOptions, ExportBundle,
    SeriesInfo, SCHEMA_VERSION,
};
use rarnet::model::{
    exhaustive_search_with, model_report, ranking_table, LagDictionary, ModelError, ModelRecord,
    SearchOptions, SelectionResult,
};
use rarnet::series::{load_series, summarize, sunspots, write_series, TimeSeries};
use rarnet::simulate::{simulate_ar, SimulationConfig};
use serde_json::json;
use thiserror::Error;

use crate::{
    GraphArgs, InputArgs, NetworkArgs, PipelineArgs, ReportArgs, SearchArgs, SelectArgs, SynthArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl From<rarnet::Error> for CliError {
    fn from(e: rarnet::Error) -> Self {
        match &e {
            rarnet::Error::Model(
                ModelError::RankDeficient { .. }
                | ModelError::AllSubsetsFailed { .. }
                | ModelError::InvalidSse(_)
                | ModelError::NoRows
                | ModelError::WorkerPool(_),
            ) => CliError::Numeric(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        rarnet::Error::from(e).into()
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dot,
    Json,
}

impl fmt::Display for Emit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Emit::Dot => "dot",
            Emit::Json => "json",
        })
    }
}

fn load_input(args: &InputArgs) -> Result<TimeSeries, CliError> {
    match &args.input {
        Some(path) => Ok(load_series(path, args.format).map_err(rarnet::Error::from)?),
        None => Ok(sunspots()),
    }
}

fn read_model(path: &Path) -> Result<ModelRecord, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let mut model = parse_model(&text)?;
    if model.name.is_none() {
        model.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(model)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

struct Selection {
    series: TimeSeries,
    dict: LagDictionary,
    result: SelectionResult,
}

fn run_search(input: &InputArgs, search: &SearchArgs) -> Result<Selection, CliError> {
    let dict = LagDictionary::new(search.max_lag, !search.no_intercept)?;
    let series = load_input(input)?;
    let options = SearchOptions {
        top_k: search.top_k,
        workers: search.workers,
    };
    let result = exhaustive_search_with(&series, &dict, &options)?;
    Ok(Selection {
        series,
        dict,
        result,
    })
}

fn graph_options(graph: &GraphArgs) -> AnalysisOptions {
    AnalysisOptions {
        window: graph.window,
        target: graph.target,
    }
}

pub fn select(args: &SelectArgs) -> Result<(), CliError> {
    let sel = run_search(&args.input, &args.search)?;
    let summary = summarize(&sel.series);
    let report = model_report(&sel.result.best);

    println!(
        "series {}: n = {}, min = {}, max = {}, mean = {:.4}, sd = {:.4}",
        sel.series.name(),
        summary.n,
        summary.min,
        summary.max,
        summary.mean,
        summary.std_dev
    );
    println!(
        "searched {} subsets of lags 1..={} ({} rank-deficient) in {:.3} s",
        sel.result.subsets_evaluated,
        sel.dict.max_lag(),
        sel.result.rank_deficient,
        sel.result.wall_time.as_secs_f64()
    );
    println!("selected lags {}", sel.result.best.lags);
    println!("{}", report.equation);
    println!();
    print!("{}", ranking_table(&sel.result.ranked));

    let doc = selection_document(&sel.result, &sel.series, &sel.dict, args.search.workers);
    write_file(&args.out_dir, "selection.json", &to_json(&doc))?;
    write_file(&args.out_dir, "model.json", &to_json(&doc.best))?;
    Ok(())
}

fn write_network_artifacts(
    analysis: &NetworkAnalysis,
    out_dir: &Path,
    emit: &[Emit],
) -> Result<(), CliError> {
    let (Some(_), Some(net), Some(full), Some(tree)) = (
        &analysis.distances,
        &analysis.network,
        &analysis.full_tree,
        &analysis.tree,
    ) else {
        eprintln!("model has no lag terms; no network written");
        return Ok(());
    };
    let title = analysis.model.name.clone();
    let options = DotOptions {
        title,
        ..DotOptions::default()
    };
    if emit.contains(&Emit::Dot) {
        write_file(
            out_dir,
            "network.dot",
            &network_dot(net, Some(full), &options),
        )?;
        write_file(out_dir, "tree.dot", &tree_dot(tree, &options))?;
    }
    if emit.contains(&Emit::Json) {
        let bundle = ExportBundle::new(analysis, None, None);
        let network = json!({
            "schema_version": SCHEMA_VERSION,
            "model": bundle.model,
            "distances": bundle.distances,
            "network": bundle.network,
        });
        let tree_doc = json!({
            "schema_version": SCHEMA_VERSION,
            "tree": bundle.tree,
            "stats": bundle.stats,
        });
        write_file(out_dir, "network.json", &to_json(&network))?;
        write_file(out_dir, "tree.json", &to_json(&tree_doc))?;
    }
    Ok(())
}

pub fn network(args: &NetworkArgs) -> Result<(), CliError> {
    let model = read_model(&args.model)?;
    let analysis = analyze(&model, &graph_options(&args.graph))?;
    print!("{}", text_report(&analysis, None));
    write_network_artifacts(&analysis, &args.output.out_dir, &args.output.emit)
}

pub fn pipeline(args: &PipelineArgs) -> Result<(), CliError> {
    let (model, selection) = match &args.model {
        Some(path) => (read_model(path)?, None),
        None => {
            let sel = run_search(&args.input, &args.search)?;
            let mut record = sel.result.best.record();
            record.name = Some(sel.series.name().to_string());
            (record, Some(sel))
        }
    };
    let analysis = analyze(&model, &graph_options(&args.graph))?;
    let report = text_report(&analysis, selection.as_ref().map(|s| &s.result));
    print!("{report}");

    let out = &args.output.out_dir;
    write_file(out, "report.txt", &report)?;
    if args.output.emit.contains(&Emit::Json) {
        let bundle = ExportBundle::new(
            &analysis,
            selection.as_ref().map(|s| SeriesInfo::from(&s.series)),
            selection.as_ref().map(|s| s.dict),
        );
        write_file(out, "bundle.json", &(export_json(&bundle) + "\n"))?;
        if let Some(sel) = &selection {
            let doc = selection_document(&sel.result, &sel.series, &sel.dict, args.search.workers);
            write_file(out, "selection.json", &to_json(&doc))?;
        }
    }
    write_network_artifacts(&analysis, out, &args.output.emit)
}

pub fn synth(args: &SynthArgs) -> Result<(), CliError> {
    let model = match &args.model {
        Some(path) => read_model(path)?,
        None => ModelRecord::new(None, vec![1, 2], vec![0.6, -0.3]),
    };
    let cfg = SimulationConfig {
        length: args.length,
        burn_in: args.burn_in,
        noise_std: args.noise_std,
        seed: args.seed,
    };
    let series = simulate_ar(
        &model.lags,
        &model.coefficients,
        model.intercept.unwrap_or(0.0),
        &cfg,
    )?;
    match &args.output {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
            write_series(&series, io::BufWriter::new(file)).map_err(|e| io_error(path, e))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_series(&series, &mut lock).map_err(|e| CliError::Input(e.to_string()))?;
            lock.flush().map_err(|e| CliError::Input(e.to_string()))?;
        }
    }
    Ok(())
}

pub fn report(args: &ReportArgs) -> Result<(), CliError> {
    let model = read_model(&args.model)?;
    let analysis = analyze(&model, &graph_options(&args.graph))?;
    print!("{}", text_report(&analysis, None));
    Ok(())
}
