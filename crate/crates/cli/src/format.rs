//! Text formats: whitespace-separated edge lists and the CSV outputs.
//!
//! Edge lists hold one `u v` pair per line. Blank lines and lines starting
//! with `#` are skipped, except that a `# nodes: N` comment fixes the node
//! count so trailing isolated nodes survive a round trip.

use std::io::{self, BufRead, Write};

use miuz_core::attack::AttackTrace;
use miuz_core::harness::{LccCurve, SummaryTable};
use miuz_core::metrics::MetricVector;
use miuz_core::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] miuz_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Formats a real with six significant digits, `%g` style: trailing zeros
/// dropped, exponent notation outside `1e-4 <= |x| < 1e6`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn node_count_hint(comment: &str) -> Option<usize> {
    let rest = comment.trim_start_matches('#').trim();
    let rest = rest.strip_prefix("nodes")?;
    rest.trim_start_matches([':', '=', ' ']).trim().parse().ok()
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    let mut node_count = 0usize;
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if let Some(n) = node_count_hint(trimmed) {
                node_count = node_count.max(n);
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| FormatError::Parse {
                line: line_no,
                message: format!("'{s}' is not a non-negative integer node id"),
            })
        };
        let [u, v] = fields.as_slice() else {
            return Err(FormatError::Parse {
                line: line_no,
                message: format!("expected two node ids, found {}", fields.len()),
            });
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if u == v {
            return Err(FormatError::Parse {
                line: line_no,
                message: format!("self-loop ({u}, {v})"),
            });
        }
        node_count = node_count.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Ok(Graph::from_edges(node_count, edges)?)
}

pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> io::Result<()> {
    writeln!(out, "# nodes: {}", graph.node_count())?;
    writeln!(out, "# edges: {}", graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// `node,<metric>...` for every node scored by all of `columns`.
pub fn write_metrics_csv<W: Write>(columns: &[MetricVector], mut out: W) -> io::Result<()> {
    let header: Vec<&str> = columns.iter().map(|c| c.kind().name()).collect();
    writeln!(out, "node,{}", header.join(","))?;
    let nodes = columns.first().map_or(0, |c| c.scores().len());
    for node in 0..nodes {
        let row: Option<Vec<String>> = columns.iter().map(|c| c.get(node).map(sig6)).collect();
        if let Some(row) = row {
            writeln!(out, "{node},{}", row.join(","))?;
        }
    }
    Ok(())
}

pub fn write_trace_csv<W: Write>(trace: &AttackTrace, mut out: W) -> io::Result<()> {
    writeln!(out, "q,node,metric,score,lcc,s")?;
    let metric = trace.strategy.kind.name();
    for strike in &trace.strikes {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            strike.q,
            strike.node,
            metric,
            strike.score.map(sig6).unwrap_or_default(),
            strike.lcc_after,
            sig6(strike.s)
        )?;
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(table: &SummaryTable, mut out: W) -> io::Result<()> {
    let mut header = String::from("alpha,metric,replicates,R_mean,R_sd");
    for a in &table.a_values {
        header.push_str(&format!(",R{a}_mean,R{a}_sd"));
    }
    writeln!(out, "{header}")?;
    for row in &table.rows {
        write!(
            out,
            "{},{},{},{},{}",
            sig6(row.alpha),
            row.kind,
            row.replicates,
            sig6(row.r.mean),
            sig6(row.r.sd)
        )?;
        for (_, stat) in &row.r_a {
            write!(out, ",{},{}", sig6(stat.mean), sig6(stat.sd))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_curves_csv<W: Write>(curves: &[LccCurve], mut out: W) -> io::Result<()> {
    writeln!(out, "alpha,metric,q,s_mean")?;
    for curve in curves {
        for (i, s) in curve.mean_s.iter().enumerate() {
            writeln!(out, "{},{},{},{}", sig6(curve.alpha), curve.kind, i + 1, sig6(*s))?;
        }
    }
    Ok(())
}
