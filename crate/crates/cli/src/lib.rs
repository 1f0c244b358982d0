//! Command-line front end: generate networks, dump metric scores, run
//! single attacks and batch experiments.

pub mod config;
pub mod format;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use miuz_core::attack::{run_attack, AttackMode, Strategy};
use miuz_core::harness::{execute, median, CellId};
use miuz_core::metrics::{self, MetricKind};
use miuz_core::netgen::{self, GenSpec};
use miuz_core::Graph;

use crate::config::ConfigBuilder;
use crate::format::{
    read_edge_list, sig6, write_curves_csv, write_edge_list, write_metrics_csv,
    write_summary_csv, write_trace_csv,
};

/// Default prefixes reported by `attack`.
pub const REPORTED_PREFIXES: [usize; 4] = [5, 10, 20, 30];

#[derive(Debug, Parser)]
#[command(name = "miuz", version, about = "Node impact and network resilience toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a scale-free network and write it as an edge list.
    Generate(GenerateArgs),
    /// Score every node of a network.
    Metrics(MetricsArgs),
    /// Attack a network and report its robustness indices.
    Attack(AttackArgs),
    /// Run a replicated attack experiment from a config.
    Batch(BatchArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub k_min: Option<usize>,
    /// Defaults to floor(sqrt(n)).
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Miuz,
    Degree,
    Betweenness,
    Harmonic,
    Random,
}

impl From<MetricArg> for MetricKind {
    fn from(arg: MetricArg) -> Self {
        match arg {
            MetricArg::Miuz => MetricKind::Miuz,
            MetricArg::Degree => MetricKind::Degree,
            MetricArg::Betweenness => MetricKind::Betweenness,
            MetricArg::Harmonic => MetricKind::Harmonic,
            MetricArg::Random => MetricKind::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreArg {
    Miuz,
    Degree,
    Betweenness,
    Harmonic,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sequential,
    Simultaneous,
}

impl From<ModeArg> for AttackMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Sequential => AttackMode::Sequential,
            ModeArg::Simultaneous => AttackMode::Simultaneous,
        }
    }
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = ScoreArg::All)]
    pub metric: ScoreArg,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub metric: MetricArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Sequential)]
    pub mode: ModeArg,
    /// Required for the random strategy.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// File of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Extra `key=value` assignments, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Mean s(q) per metric and alpha.
    #[arg(long)]
    pub curves_out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub quiet: bool,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => generate(&args),
        Command::Metrics(args) => score(&args),
        Command::Attack(args) => attack(&args),
        Command::Batch(args) => batch(&args),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_edge_list(BufReader::new(file)).with_context(|| format!("cannot read {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let mut spec = GenSpec::new(args.n, args.alpha, args.seed);
    if let Some(k_min) = args.k_min {
        spec.k_min = k_min;
    }
    if let Some(k_max) = args.k_max {
        spec.k_max = k_max;
    }
    let graph = netgen::generate(&spec)?;
    let mut out = create(&args.out)?;
    write_edge_list(&graph, &mut out)?;
    out.flush()?;
    println!(
        "nodes {} edges {} mean_degree {}",
        graph.node_count(),
        graph.edge_count(),
        sig6(2.0 * graph.edge_count() as f64 / graph.node_count() as f64)
    );
    Ok(())
}

fn score(args: &MetricsArgs) -> Result<()> {
    let graph = load_graph(&args.graph)?;
    let kinds: Vec<MetricKind> = match args.metric {
        ScoreArg::All => MetricKind::TARGETED.to_vec(),
        ScoreArg::Miuz => vec![MetricKind::Miuz],
        ScoreArg::Degree => vec![MetricKind::Degree],
        ScoreArg::Betweenness => vec![MetricKind::Betweenness],
        ScoreArg::Harmonic => vec![MetricKind::Harmonic],
    };
    let columns: Vec<_> = kinds
        .iter()
        .filter_map(|&kind| metrics::compute(&graph, kind))
        .collect();
    match &args.out {
        Some(path) => {
            let mut out = create(path)?;
            write_metrics_csv(&columns, &mut out)?;
            out.flush()?;
        }
        None => write_metrics_csv(&columns, io::stdout().lock())?,
    }
    Ok(())
}

fn attack(args: &AttackArgs) -> Result<()> {
    let graph = load_graph(&args.graph)?;
    let mut strategy = Strategy::new(args.metric.into(), args.mode.into());
    if let Some(seed) = args.seed {
        strategy = strategy.with_seed(seed);
    }
    let trace = run_attack(&graph, strategy)?;
    if let Some(path) = &args.trace_out {
        let mut out = create(path)?;
        write_trace_csv(&trace, &mut out)?;
        out.flush()?;
    }
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "R {}", sig6(trace.r_index()?))?;
    for a in REPORTED_PREFIXES {
        if a <= trace.original_n {
            writeln!(stdout, "R{a} {}", sig6(trace.r_a_index(a)?))?;
        }
    }
    Ok(())
}

fn batch(args: &BatchArgs) -> Result<()> {
    let mut builder = ConfigBuilder::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        builder
            .parse_text(&text)
            .with_context(|| format!("in {}", path.display()))?;
    }
    for assignment in &args.set {
        builder.set(assignment)?;
    }
    let config = builder.build()?;

    let quiet = args.quiet;
    let progress = move |done: usize, total: usize, cell: &CellId| {
        if !quiet {
            eprintln!(
                "[{done}/{total}] alpha {} replicate {} {}",
                sig6(cell.alpha),
                cell.replicate,
                cell.kind
            );
        }
    };
    let run = execute(&config, args.jobs, &progress)?;

    let mut out = create(&args.out)?;
    write_summary_csv(&run.summary(), &mut out)?;
    out.flush()?;
    if let Some(path) = &args.curves_out {
        let mut out = create(path)?;
        write_curves_csv(&run.lcc_curves(), &mut out)?;
        out.flush()?;
    }

    for report in run.generator_report() {
        eprintln!(
            "alpha {}: requested mean degree {}, realized {}, largest component {}",
            sig6(report.alpha),
            sig6(report.requested_mean_degree),
            sig6(report.realized_mean_degree),
            sig6(report.mean_largest_component)
        );
    }
    let points = run.breaking_points()?;
    for &alpha in &config.alphas {
        let q: Vec<f64> = points
            .iter()
            .filter(|p| p.alpha == alpha)
            .filter_map(|p| p.q.map(|q| q as f64))
            .collect();
        if let Some(m) = median(&q) {
            eprintln!(
                "alpha {}: median breaking point {} ({} of {} networks)",
                sig6(alpha),
                sig6(m),
                q.len(),
                config.replicates
            );
        }
    }
    Ok(())
}
