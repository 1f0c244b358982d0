//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::process::{Command, Stdio};
use std::time::Instant;

use miuz_core::attack::{run_attack, Strategy};
use miuz_core::harness::{execute, median, strikes_to_half, ExperimentConfig, ExperimentRun};
use miuz_core::metrics::oracle::{betweenness_bruteforce, miuz_bruteforce};
use miuz_core::metrics::{betweenness_all, miuz_all_exact, MetricKind, MiuzValue};
use miuz_core::netgen::{self, GenSpec, PowerLaw};
use miuz_core::{AttackMode, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER_SEED: u64 = 20_240_601;

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }
}

/// 240 seeded G(n, p) graphs, n <= 50, densities from sparse forests to
/// moderately dense.
fn corpus() -> Vec<Graph> {
    let densities = [0.02, 0.05, 0.08, 0.12, 0.2, 0.35];
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    (0..240)
        .map(|i| {
            let n = rng.gen_range(1..=50);
            let p = densities[i % densities.len()];
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

fn is_cut_vertex(g: &Graph, node: usize) -> bool {
    let before = g.connected_components(true).count();
    let mut h = g.clone();
    h.disconnect_node(node).unwrap();
    let after = h.connected_components(true).count();
    // The stripped node leaves the alive set, so only a cut adds a component.
    after > before
}

fn oracle_equivalence(report: &mut Report, corpus: &[Graph]) {
    let start = Instant::now();
    let mut miuz_mismatch = 0;
    let mut worst_betweenness = 0.0f64;
    for g in corpus {
        let fast = miuz_all_exact(g);
        for node in g.alive_nodes() {
            if fast[node] != Some(miuz_bruteforce(g, node).unwrap()) {
                miuz_mismatch += 1;
            }
        }
        let (a, b) = (betweenness_all(g), betweenness_bruteforce(g));
        for node in g.alive_nodes() {
            worst_betweenness = worst_betweenness.max((a.get(node).unwrap() - b.get(node).unwrap()).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report.check(
        "oracle equivalence",
        miuz_mismatch == 0 && worst_betweenness <= 1e-9 && secs < 30.0,
        format!(
            "{} graphs, {miuz_mismatch} Miuz mismatches, max betweenness error {worst_betweenness:.2e}, {secs:.2}s",
            corpus.len()
        ),
    );
}

fn articulation_equivalence(report: &mut Report, corpus: &[Graph]) {
    let mut violations = 0;
    let mut cuts = 0;
    for g in corpus {
        let scores = miuz_all_exact(g);
        let points = g.articulation_points();
        for node in g.alive_nodes() {
            let cut = is_cut_vertex(g, node);
            cuts += cut as usize;
            let positive = scores[node].unwrap() > MiuzValue::from_integer(0);
            if positive != cut || points.contains(&node) != cut {
                violations += 1;
            }
        }
    }
    report.check(
        "articulation equivalence",
        violations == 0,
        format!("{cuts} cut vertices, {violations} violations"),
    );
}

fn range_endpoints(report: &mut Report) {
    let mut failures = Vec::new();
    for n in [4usize, 10, 100] {
        let star = Graph::from_edges(n, (1..n).map(|leaf| (0, leaf))).unwrap();
        let center = miuz_all_exact(&star)[0].unwrap();
        if center != MiuzValue::from_integer(n as u64 - 1) {
            failures.push(format!("star {n}: center {center}"));
        }
    }
    let cycle = |n: usize| Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
    let complete =
        |n: usize| Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap();
    let wheel = |n: usize| {
        let rim = (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }));
        Graph::from_edges(n, rim.chain((1..n).map(|i| (0, i)))).unwrap()
    };
    let k33 = Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
    let petersen = Graph::from_edges(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]),
    )
    .unwrap();
    let mut biconnected = vec![("K2", complete(2)), ("K33", k33), ("Petersen", petersen)];
    for n in [3, 4, 7, 50] {
        biconnected.push(("cycle", cycle(n)));
        biconnected.push(("complete", complete(n)));
        biconnected.push(("wheel", wheel(n + 1)));
    }
    for (name, g) in &biconnected {
        if miuz_all_exact(g).iter().any(|s| *s != Some(MiuzValue::from_integer(0))) {
            failures.push(format!("{name} on {} nodes has a nonzero score", g.node_count()));
        }
    }
    report.check(
        "range endpoints",
        failures.is_empty(),
        if failures.is_empty() {
            format!("stars 4/10/100 score N-1, {} biconnected graphs all 0", biconnected.len())
        } else {
            failures.join("; ")
        },
    );
}

fn r_identities(report: &mut Report, corpus: &[Graph]) {
    let mut traces = 0;
    let mut worst = 0.0f64;
    for (i, g) in corpus.iter().enumerate().filter(|(_, g)| g.node_count() > 0) {
        for kind in MetricKind::ALL {
            for mode in [AttackMode::Sequential, AttackMode::Simultaneous] {
                let trace = run_attack(g, Strategy::new(kind, mode).with_seed(i as u64)).unwrap();
                let n = trace.original_n;
                worst = worst.max((trace.r_a_index(n).unwrap() - trace.r_index().unwrap()).abs());
                traces += 1;
            }
        }
    }
    let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let star_r = run_attack(&star, Strategy::sequential(MetricKind::Miuz))
        .unwrap()
        .r_index()
        .unwrap();
    report.check(
        "R identities",
        worst <= 1e-12 && star_r == 3.0 / 16.0,
        format!("{traces} traces, max |R_N - R| {worst:.1e}, star R {star_r}"),
    );
}

fn mean_of(run: &ExperimentRun, alpha_index: usize, kind: MetricKind, f: impl Fn(usize) -> f64) -> f64 {
    let cells: Vec<f64> = run
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.cell.alpha_index == alpha_index && r.cell.kind == kind)
        .map(|(i, _)| f(i))
        .collect();
    cells.iter().sum::<f64>() / cells.len() as f64
}

fn prefix_ordering(report: &mut Report, run: &ExperimentRun) {
    let position = |a: usize| run.config.a_values.iter().position(|&x| x == a).unwrap();
    let mut lines = Vec::new();
    let mut pass = true;
    for a in [5, 10] {
        let p = position(a);
        let means: BTreeMap<MetricKind, f64> = MetricKind::TARGETED
            .iter()
            .map(|&k| (k, mean_of(run, 0, k, |i| run.records[i].r_a[p])))
            .collect();
        let miuz = means[&MetricKind::Miuz];
        pass &= means.values().all(|&m| miuz <= m);
        let shown: Vec<String> = means.iter().map(|(k, m)| format!("{k} {m:.4}")).collect();
        lines.push(format!("R{a}: {}", shown.join(", ")));
    }
    report.check("prefix-index ordering at alpha 2.1", pass, lines.join("; "));
}

fn harmonic_ordering(report: &mut Report, run: &ExperimentRun) {
    let r = |k| mean_of(run, 0, k, |i| run.records[i].r);
    let (harmonic, miuz) = (r(MetricKind::Harmonic), r(MetricKind::Miuz));
    let summary = run.summary();
    let sds: Vec<String> = MetricKind::TARGETED
        .iter()
        .map(|&k| {
            let row = summary.row(run.config.alphas[0], k).unwrap();
            format!("{k} {:.5}±{:.5}", row.r.mean, row.r.sd)
        })
        .collect();
    report.check(
        "harmonic R at most Miuz R at alpha 2.1",
        harmonic <= miuz,
        format!("harmonic {harmonic:.5} vs miuz {miuz:.5} ({})", sds.join(", ")),
    );
}

fn half_network(report: &mut Report, run: &ExperimentRun) {
    let strikes: Vec<f64> = run
        .cells(0, MetricKind::Miuz)
        .map(|c| strikes_to_half(&c.trace) as f64)
        .collect();
    let m = median(&strikes).unwrap();
    report.check(
        "Miuz halves the network within 4..=25 strikes at alpha 2.1",
        (4.0..=25.0).contains(&m),
        format!("median {m} strikes over {} networks", strikes.len()),
    );
}

fn breaking_points(report: &mut Report, run: &ExperimentRun) {
    let points = run.breaking_points().unwrap();
    let s: Vec<f64> = points.iter().filter_map(|p| p.s_miuz).collect();
    let mean = s.iter().sum::<f64>() / s.len().max(1) as f64;
    let per_alpha: Vec<String> = run
        .config
        .alphas
        .iter()
        .map(|&alpha| {
            let here: Vec<_> = points.iter().filter(|p| p.alpha == alpha && p.q.is_some()).collect();
            let q: Vec<f64> = here.iter().map(|p| p.q.unwrap() as f64).collect();
            let s: Vec<f64> = here.iter().map(|p| p.s_miuz.unwrap()).collect();
            match (median(&q), median(&s)) {
                (Some(q), Some(s)) => format!("alpha {alpha}: median q* {q}, median s {s:.3} ({} nets)", here.len()),
                _ => format!("alpha {alpha}: no breaking point"),
            }
        })
        .collect();
    report.check(
        "LCC below 0.45 at breaking points",
        !s.is_empty() && mean < 0.45,
        format!("mean s {mean:.3} over {} points; {}", s.len(), per_alpha.join("; ")),
    );
}

fn batch_determinism(report: &mut Report) {
    let dir = tempfile::TempDir::new().unwrap();
    let config = dir.path().join("exp.cfg");
    fs::write(
        &config,
        "alphas = 2.1, 2.3\nreplicates = 4\nn = 200\n\
         metrics = miuz, degree, betweenness, harmonic, random\nmaster_seed = 11\n",
    )
    .unwrap();
    let run = |jobs: &str| {
        let out = dir.path().join(format!("summary-{jobs}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_miuz"))
            .args(["batch", "--quiet", "--jobs", jobs, "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(out).unwrap()
    };
    let (one, eight) = (run("1"), run("8"));
    report.check(
        "batch determinism across job counts",
        one == eight && !one.is_empty(),
        format!("{} bytes with --jobs 1, {} with --jobs 8", one.len(), eight.len()),
    );
}

fn generator_sanity(report: &mut Report) {
    let mut spec = GenSpec::new(100_000, 2.5, MASTER_SEED);
    spec.k_min = 2;
    let g = netgen::generate(&spec).unwrap();
    let mut freq = vec![0usize; spec.k_max + 1];
    for node in 0..g.node_count() {
        freq[g.degree(node).min(spec.k_max)] += 1;
    }
    let ratio = freq[2] as f64 / freq[4] as f64;
    let expected_ratio = 2f64.powf(2.5);
    let ratio_err = (ratio / expected_ratio - 1.0).abs();

    // Exact pmf at k_min by direct summation of the truncated law.
    let norm: f64 = (spec.k_min..=spec.k_max).map(|k| (k as f64).powf(-spec.alpha)).sum();
    let p_min = (spec.k_min as f64).powf(-spec.alpha) / norm;
    let observed = freq[spec.k_min] as f64 / spec.n as f64;
    let p_err = (observed / p_min - 1.0).abs();
    let law = PowerLaw::new(spec.alpha, spec.k_min, spec.k_max).unwrap();
    let pmf_agrees = (law.probability(spec.k_min) - p_min).abs() < 1e-12;
    report.check(
        "generator degree frequencies",
        ratio_err <= 0.05 && p_err <= 0.05 && pmf_agrees,
        format!(
            "freq(2)/freq(4) {ratio:.3} vs {expected_ratio:.3} ({:.1}%), freq(2) {observed:.4} vs pmf {p_min:.4} ({:.1}%)",
            100.0 * ratio_err,
            100.0 * p_err
        ),
    );
}

fn main() {
    let mut report = Report { failures: 0 };
    let corpus = corpus();
    oracle_equivalence(&mut report, &corpus);
    articulation_equivalence(&mut report, &corpus);
    range_endpoints(&mut report);
    r_identities(&mut report, &corpus);
    batch_determinism(&mut report);
    generator_sanity(&mut report);

    let config = ExperimentConfig::reference_protocol(MASTER_SEED);
    let start = Instant::now();
    let run = execute(&config, 0, &()).unwrap();
    println!(
        "reference run: {} alphas x {} networks of {} nodes, {:.0}s",
        config.alphas.len(),
        config.replicates,
        config.n,
        start.elapsed().as_secs_f64()
    );
    for g in run.generator_report() {
        println!(
            "  alpha {}: mean degree {:.3} requested, {:.3} realized, largest component {:.3}",
            g.alpha, g.requested_mean_degree, g.realized_mean_degree, g.mean_largest_component
        );
    }
    prefix_ordering(&mut report, &run);
    harmonic_ordering(&mut report, &run);
    half_network(&mut report, &run);
    breaking_points(&mut report, &run);

    if report.failures > 0 {
        println!("{} acceptance criteria failed", report.failures);
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
