//! Batch experiments: sweep exponents and replicates, attack every
//! generated network with each configured strategy, and aggregate R and
//! R_a into a summary table.
//!
//! The unit of work is one (alpha, replicate, metric) cell. Each cell
//! regenerates its graph from a seed derived from its indices, so results
//! do not depend on how cells are scheduled across threads.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::attack::{breaking_point, run_attack, AttackMode, AttackTrace, Strategy};
use crate::error::{Error, Result};
use crate::metrics::MetricKind;
use crate::netgen::{self, GenSpec};

/// Index mixed into the seed of random-strategy attacks, keeping them
/// independent of the graph seed.
const RANDOM_STRATEGY_STREAM: u64 = 0x5eed_0f_a77ac4;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub alphas: Vec<f64>,
    pub replicates: usize,
    pub n: usize,
    pub metrics: Vec<MetricKind>,
    pub mode: AttackMode,
    pub a_values: Vec<usize>,
    pub master_seed: u64,
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
}

impl ExperimentConfig {
    /// Three exponents, 50 networks of 1000 nodes, the four ranking metrics
    /// under sequential attack, prefixes 5, 10, 20 and 30.
    pub fn reference_protocol(master_seed: u64) -> Self {
        Self {
            alphas: vec![2.1, 2.2, 2.3],
            replicates: 50,
            n: 1000,
            metrics: MetricKind::TARGETED.to_vec(),
            mode: AttackMode::Sequential,
            a_values: vec![5, 10, 20, 30],
            master_seed,
            k_min: None,
            k_max: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.alphas.is_empty() {
            return fail("no alphas given".into());
        }
        if self.metrics.is_empty() {
            return fail("no metrics given".into());
        }
        if self.replicates == 0 {
            return fail("replicates must be at least 1".into());
        }
        for (i, alpha) in self.alphas.iter().enumerate() {
            if self.alphas[..i].contains(alpha) {
                return fail(format!("alpha {alpha} listed twice"));
            }
        }
        for (i, kind) in self.metrics.iter().enumerate() {
            if self.metrics[..i].contains(kind) {
                return fail(format!("metric {kind} listed twice"));
            }
        }
        for &a in &self.a_values {
            if a == 0 || a > self.n {
                return fail(format!("a value {a} outside 1..={}", self.n));
            }
        }
        for alpha_index in 0..self.alphas.len() {
            self.gen_spec(alpha_index, 0).validate()?;
        }
        Ok(())
    }

    /// Generator seed for one network: `mix_seed(master_seed, [alpha_index, replicate])`.
    pub fn graph_seed(&self, alpha_index: usize, replicate: usize) -> u64 {
        netgen::mix_seed(self.master_seed, &[alpha_index as u64, replicate as u64])
    }

    pub fn gen_spec(&self, alpha_index: usize, replicate: usize) -> GenSpec {
        let mut spec = GenSpec::new(
            self.n,
            self.alphas[alpha_index],
            self.graph_seed(alpha_index, replicate),
        );
        if let Some(k_min) = self.k_min {
            spec.k_min = k_min;
        }
        if let Some(k_max) = self.k_max {
            spec.k_max = k_max;
        }
        spec
    }

    fn strategy(&self, alpha_index: usize, replicate: usize, kind: MetricKind) -> Strategy {
        let strategy = Strategy::new(kind, self.mode);
        if kind == MetricKind::Random {
            strategy.with_seed(netgen::mix_seed(
                self.master_seed,
                &[alpha_index as u64, replicate as u64, RANDOM_STRATEGY_STREAM],
            ))
        } else {
            strategy
        }
    }

    fn cells(&self) -> Vec<CellId> {
        let mut cells = Vec::new();
        for alpha_index in 0..self.alphas.len() {
            for replicate in 0..self.replicates {
                for &kind in &self.metrics {
                    cells.push(CellId {
                        alpha_index,
                        alpha: self.alphas[alpha_index],
                        replicate,
                        kind,
                    });
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellId {
    pub alpha_index: usize,
    pub alpha: f64,
    pub replicate: usize,
    pub kind: MetricKind,
}

/// Receives a call whenever a cell finishes. Calls may arrive from several
/// threads at once.
pub trait ProgressSink: Sync {
    fn cell_finished(&self, finished: usize, total: usize, cell: &CellId);
}

impl ProgressSink for () {
    fn cell_finished(&self, _: usize, _: usize, _: &CellId) {}
}

impl<F> ProgressSink for F
where
    F: Fn(usize, usize, &CellId) + Sync,
{
    fn cell_finished(&self, finished: usize, total: usize, cell: &CellId) {
        self(finished, total, cell)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub cell: CellId,
    pub r: f64,
    /// One value per configured `a`, same order.
    pub r_a: Vec<f64>,
    pub requested_mean_degree: f64,
    pub realized_mean_degree: f64,
    /// Largest component of the intact network.
    pub initial_lcc: usize,
    pub trace: AttackTrace,
}

/// Every cell of a finished experiment, ordered by alpha, replicate, then
/// the configured metric order.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub config: ExperimentConfig,
    pub records: Vec<CellRecord>,
}

fn run_cell(config: &ExperimentConfig, cell: &CellId) -> Result<CellRecord> {
    let spec = config.gen_spec(cell.alpha_index, cell.replicate);
    let (degrees, graph) = netgen::generate_with_degrees(&spec)?;
    let trace = run_attack(
        &graph,
        config.strategy(cell.alpha_index, cell.replicate, cell.kind),
    )?;
    let r = trace.r_index()?;
    let r_a = config
        .a_values
        .iter()
        .map(|&a| trace.r_a_index(a))
        .collect::<Result<_>>()?;
    let n = graph.node_count() as f64;
    Ok(CellRecord {
        cell: *cell,
        r,
        r_a,
        requested_mean_degree: degrees.iter().sum::<usize>() as f64 / n,
        realized_mean_degree: 2.0 * graph.edge_count() as f64 / n,
        initial_lcc: graph.largest_component_size(),
        trace,
    })
}

/// Runs every cell on `jobs` worker threads (0 picks the rayon default).
pub fn execute(
    config: &ExperimentConfig,
    jobs: usize,
    progress: &dyn ProgressSink,
) -> Result<ExperimentRun> {
    config.validate()?;
    let cells = config.cells();
    let total = cells.len();
    let finished = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<CellRecord>> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let record = run_cell(config, cell).map_err(|source| Error::Cell {
                    alpha: cell.alpha,
                    replicate: cell.replicate,
                    metric: cell.kind.to_string(),
                    source: Box::new(source),
                });
                let done = finished.fetch_add(1, Ordering::Relaxed) + 1;
                progress.cell_finished(done, total, cell);
                record
            })
            .collect()
    });
    let records = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExperimentRun {
        config: config.clone(),
        records,
    })
}

pub fn run_experiment(
    config: &ExperimentConfig,
    jobs: usize,
    progress: &dyn ProgressSink,
) -> Result<SummaryTable> {
    Ok(execute(config, jobs, progress)?.summary())
}

pub fn lcc_curves(
    config: &ExperimentConfig,
    jobs: usize,
    progress: &dyn ProgressSink,
) -> Result<Vec<LccCurve>> {
    Ok(execute(config, jobs, progress)?.lcc_curves())
}

/// Mean and sample standard deviation (0 for a single value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub sd: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len() as f64;
        let mean = values.iter().sum::<f64>() / count;
        let sd = if values.len() > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (count - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, sd }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub alpha: f64,
    pub kind: MetricKind,
    pub replicates: usize,
    pub r: Stat,
    /// `(a, R_a)` in configured order.
    pub r_a: Vec<(usize, Stat)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub a_values: Vec<usize>,
    /// Sorted by alpha, then metric name.
    pub rows: Vec<SummaryRow>,
}

impl SummaryTable {
    pub fn row(&self, alpha: f64, kind: MetricKind) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.alpha == alpha && r.kind == kind)
    }
}

/// Pointwise mean of `s(q)` over replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct LccCurve {
    pub alpha: f64,
    pub kind: MetricKind,
    pub mean_s: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakingPoint {
    pub alpha: f64,
    pub replicate: usize,
    pub q: Option<usize>,
    /// `s(q)` of the Miuz attack at the breaking point.
    pub s_miuz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorReport {
    pub alpha: f64,
    pub requested_mean_degree: f64,
    pub realized_mean_degree: f64,
    /// Intact largest component as a fraction of `n`.
    pub mean_largest_component: f64,
}

impl ExperimentRun {
    fn groups(&self) -> BTreeMap<(usize, &'static str), Vec<&CellRecord>> {
        let mut groups: BTreeMap<(usize, &'static str), Vec<&CellRecord>> = BTreeMap::new();
        for record in &self.records {
            groups
                .entry((record.cell.alpha_index, record.cell.kind.name()))
                .or_default()
                .push(record);
        }
        groups
    }

    /// Records for one (alpha, metric) pair, in replicate order.
    pub fn cells(&self, alpha_index: usize, kind: MetricKind) -> impl Iterator<Item = &CellRecord> {
        self.records
            .iter()
            .filter(move |r| r.cell.alpha_index == alpha_index && r.cell.kind == kind)
    }

    pub fn summary(&self) -> SummaryTable {
        let mut rows: Vec<SummaryRow> = self
            .groups()
            .into_values()
            .map(|records| {
                let first = records[0].cell;
                let r: Vec<f64> = records.iter().map(|rec| rec.r).collect();
                let r_a = self
                    .config
                    .a_values
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| {
                        let values: Vec<f64> = records.iter().map(|rec| rec.r_a[i]).collect();
                        (a, Stat::of(&values))
                    })
                    .collect();
                SummaryRow {
                    alpha: first.alpha,
                    kind: first.kind,
                    replicates: records.len(),
                    r: Stat::of(&r),
                    r_a,
                }
            })
            .collect();
        rows.sort_by(|a, b| {
            a.alpha
                .total_cmp(&b.alpha)
                .then_with(|| a.kind.name().cmp(b.kind.name()))
        });
        SummaryTable {
            a_values: self.config.a_values.clone(),
            rows,
        }
    }

    /// Mean `s(q)` curves, sorted like the summary rows.
    pub fn lcc_curves(&self) -> Vec<LccCurve> {
        let mut curves: Vec<LccCurve> = self
            .groups()
            .into_values()
            .map(|records| {
                let first = records[0].cell;
                let len = records[0].trace.strikes.len();
                let mut mean_s = vec![0.0; len];
                for rec in &records {
                    for (acc, strike) in mean_s.iter_mut().zip(&rec.trace.strikes) {
                        *acc += strike.s;
                    }
                }
                for value in &mut mean_s {
                    *value /= records.len() as f64;
                }
                LccCurve {
                    alpha: first.alpha,
                    kind: first.kind,
                    mean_s,
                }
            })
            .collect();
        curves.sort_by(|a, b| {
            a.alpha
                .total_cmp(&b.alpha)
                .then_with(|| a.kind.name().cmp(b.kind.name()))
        });
        curves
    }

    /// Breaking point of the Miuz attack against the other ranking metrics
    /// on each network. Empty when Miuz was not run.
    pub fn breaking_points(&self) -> Result<Vec<BreakingPoint>> {
        let mut out = Vec::new();
        if !self.config.metrics.contains(&MetricKind::Miuz) {
            return Ok(out);
        }
        for alpha_index in 0..self.config.alphas.len() {
            for replicate in 0..self.config.replicates {
                let traces: BTreeMap<MetricKind, AttackTrace> = self
                    .records
                    .iter()
                    .filter(|r| {
                        r.cell.alpha_index == alpha_index
                            && r.cell.replicate == replicate
                            && r.cell.kind != MetricKind::Random
                    })
                    .map(|r| (r.cell.kind, r.trace.clone()))
                    .collect();
                let q = breaking_point(&traces)?;
                let s_miuz = q.map(|q| traces[&MetricKind::Miuz].strikes[q - 1].s);
                out.push(BreakingPoint {
                    alpha: self.config.alphas[alpha_index],
                    replicate,
                    q,
                    s_miuz,
                });
            }
        }
        Ok(out)
    }

    /// Per-alpha generator statistics, averaged over replicates.
    pub fn generator_report(&self) -> Vec<GeneratorReport> {
        let first_kind = self.config.metrics[0];
        (0..self.config.alphas.len())
            .map(|alpha_index| {
                let cells: Vec<&CellRecord> = self.cells(alpha_index, first_kind).collect();
                let count = cells.len() as f64;
                let mean = |f: &dyn Fn(&CellRecord) -> f64| {
                    cells.iter().map(|c| f(c)).sum::<f64>() / count
                };
                GeneratorReport {
                    alpha: self.config.alphas[alpha_index],
                    requested_mean_degree: mean(&|c| c.requested_mean_degree),
                    realized_mean_degree: mean(&|c| c.realized_mean_degree),
                    mean_largest_component: mean(&|c| {
                        c.initial_lcc as f64 / c.trace.original_n as f64
                    }),
                }
            })
            .collect()
    }
}

/// Smallest `q` with `s(q) < 0.5`; the node count when that never happens.
pub fn strikes_to_half(trace: &AttackTrace) -> usize {
    trace
        .strikes
        .iter()
        .find(|strike| strike.s < 0.5)
        .map_or(trace.original_n, |strike| strike.q)
}

/// Median of a non-empty list (mean of the middle pair for even length).
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len().is_multiple_of(2) {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    })
}
