//! Benchmark rows: one line per network with its structural statistics,
//! the engine's result and timings.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use relbat_core::oracles::{find_minimal_paths_limited, iet_reliability, MAX_PATHS};
use relbat_core::{bat_reliability, reduce_arcs, BatOptions, BinaryStateNetwork, Error};

use crate::render::csv_field;

/// Minimal paths beyond this count are reported as `>limit`.
pub const PATH_COUNT_LIMIT: usize = 100_000;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub timeout: Duration,
    pub apply_reduction: bool,
    pub use_bounds: bool,
    pub parallel_ranges: usize,
    /// Run networks concurrently. Only honoured when timings are not
    /// reported, so measurements stay serial.
    pub concurrent: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            timeout: Duration::from_secs(60),
            apply_reduction: true,
            use_bounds: true,
            parallel_ranges: 1,
            concurrent: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    Timeout,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub m_original: usize,
    pub m_reduced: usize,
    pub n_p: Option<usize>,
    pub n_c: Option<usize>,
    /// Minimal paths of the reduced network; `None` above [`PATH_COUNT_LIMIT`].
    pub mp_count: Option<usize>,
    pub connected_count: Option<u64>,
    pub reliability: Option<f64>,
    pub elapsed_bat: Option<Duration>,
    /// Inclusion-exclusion over the minimal paths, when there are at most
    /// [`MAX_PATHS`] of them.
    pub elapsed_iet: Option<Duration>,
    pub status: RowStatus,
}

pub fn bench_row(name: &str, net: &BinaryStateNetwork, cfg: &BenchConfig) -> BenchRow {
    let (reduced, _) = reduce_arcs(net);
    let mps = find_minimal_paths_limited(&reduced, PATH_COUNT_LIMIT);
    let opts = BatOptions {
        apply_reduction: cfg.apply_reduction,
        use_bounds: cfg.use_bounds,
        emit_trace: false,
        parallel_ranges: cfg.parallel_ranges,
        deadline: Some(Instant::now() + cfg.timeout),
    };
    let mut row = BenchRow {
        name: name.to_string(),
        n: net.node_count(),
        m_original: net.arc_count(),
        m_reduced: if cfg.apply_reduction {
            reduced.arc_count()
        } else {
            net.arc_count()
        },
        n_p: None,
        n_c: None,
        mp_count: mps.as_ref().map(|m| m.len()),
        connected_count: None,
        reliability: None,
        elapsed_bat: None,
        elapsed_iet: None,
        status: RowStatus::Ok,
    };
    match bat_reliability(net, &opts) {
        Ok(r) => {
            row.n_p = r.bounds.map(|b| b.n_p);
            row.n_c = r.bounds.map(|b| b.n_c);
            row.connected_count = Some(r.connected_count);
            row.reliability = Some(r.reliability);
            row.elapsed_bat = Some(r.elapsed);
        }
        Err(Error::Timeout) => row.status = RowStatus::Timeout,
        Err(e) => row.status = RowStatus::Failed(e.to_string()),
    }
    if let Some(mps) = mps.filter(|m| m.len() <= MAX_PATHS) {
        let start = Instant::now();
        if iet_reliability(&mps, &reduced).is_ok() {
            row.elapsed_iet = Some(start.elapsed());
        }
    }
    row
}

pub fn bench_all(inputs: &[(String, BinaryStateNetwork)], cfg: &BenchConfig) -> Vec<BenchRow> {
    if cfg.concurrent {
        inputs
            .par_iter()
            .map(|(name, net)| bench_row(name, net, cfg))
            .collect()
    } else {
        inputs
            .iter()
            .map(|(name, net)| bench_row(name, net, cfg))
            .collect()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn mp(row: &BenchRow) -> String {
    row.mp_count
        .map(|c| c.to_string())
        .unwrap_or_else(|| format!(">{PATH_COUNT_LIMIT}"))
}

fn secs(d: Option<Duration>) -> String {
    d.map(|d| format!("{:.6}", d.as_secs_f64()))
        .unwrap_or_else(|| "-".into())
}

fn reliability(row: &BenchRow) -> String {
    match (&row.status, row.reliability) {
        (RowStatus::Ok, Some(r)) => format!("{r:.10}"),
        (RowStatus::Timeout, _) => "timeout".into(),
        (RowStatus::Failed(_), _) => "failed".into(),
        _ => "-".into(),
    }
}

const TEXT_HEADER: [&str; 9] = ["name", "n", "m*", "m", "n_p", "n_c", "|P|", "N_BAT", "R"];

/// Aligned text table. `m*` is the original arc count and `m` the count
/// enumerated; `|P|` counts minimal paths of the reduced network.
pub fn render_table(rows: &[BenchRow], timing: bool) -> String {
    let mut cells: Vec<Vec<String>> = vec![TEXT_HEADER.iter().map(|s| s.to_string()).collect()];
    if timing {
        cells[0].extend(["T_BAT".to_string(), "T_IET".to_string()]);
    }
    for r in rows {
        let mut line = vec![
            r.name.clone(),
            r.n.to_string(),
            r.m_original.to_string(),
            r.m_reduced.to_string(),
            opt(r.n_p),
            opt(r.n_c),
            mp(r),
            opt(r.connected_count),
            reliability(r),
        ];
        if timing {
            line.extend([secs(r.elapsed_bat), secs(r.elapsed_iet)]);
        }
        cells.push(line);
    }
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|c| cells.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &cells {
        let padded: Vec<String> = line
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, &w))| {
                if i == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    }
    out
}

pub const CSV_COLUMNS: &str =
    "name,n,m_original,m_reduced,n_p,n_c,mp_count,n_bat,reliability,status";

pub fn render_csv(rows: &[BenchRow], timing: bool) -> String {
    let mut out = String::from(CSV_COLUMNS);
    if timing {
        out.push_str(",t_bat_s,t_iet_s");
    }
    out.push('\n');
    for r in rows {
        let status = match &r.status {
            RowStatus::Ok => "ok".to_string(),
            RowStatus::Timeout => "timeout".to_string(),
            RowStatus::Failed(e) => csv_field(&format!("failed: {e}")),
        };
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.name),
            r.n,
            r.m_original,
            r.m_reduced,
            opt(r.n_p),
            opt(r.n_c),
            mp(r),
            opt(r.connected_count),
            opt(r.reliability),
            status,
        );
        if timing {
            let _ = write!(out, ",{},{}", secs(r.elapsed_bat), secs(r.elapsed_iet));
        }
        out.push('\n');
    }
    out
}
