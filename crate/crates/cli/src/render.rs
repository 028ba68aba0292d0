//! Text renderings of engine reports.

use std::fmt::Write as _;

use relbat_core::{BatReport, BinaryStateNetwork, TraceRow};

/// Column names of [`compute_record`], timing column last.
pub const COMPUTE_COLUMNS: &str = "name,n,m_original,m_reduced,n_p,n_c,reliability,connected,enumerated,skipped_low,skipped_high,plsa_calls,skip_exact_low,skip_exact_high,skip_literal,elapsed_s";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

/// Human-readable summary of one run.
pub fn compute_table(name: &str, net: &BinaryStateNetwork, r: &BatReport, timing: bool) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<16}{v}");
    };
    line("network", name.to_string());
    line("nodes", net.node_count().to_string());
    line(
        "arcs",
        format!("{} ({} enumerated)", r.m_original, r.m_reduced),
    );
    match r.bounds {
        Some(b) => line("n_p / n_c", format!("{} / {}", b.n_p, b.n_c)),
        None => line("n_p / n_c", "sink unreachable".into()),
    }
    line("reliability", format!("{:.10}", r.reliability));
    line("connected", r.connected_count.to_string());
    line("enumerated", r.enumerated.to_string());
    line("skipped_low", r.skipped_low.to_string());
    line("skipped_high", r.skipped_high.to_string());
    line("plsa_calls", r.plsa_calls.to_string());
    line(
        "skip_exact",
        match r.skip_exact {
            Some((lo, hi)) => format!("{lo} below n_p + {hi} above m - n_c"),
            None => "-".into(),
        },
    );
    line(
        "skip_literal",
        match r.skip_literal {
            Some(v) => format!("{v} (published formula, not a bound)"),
            None => "-".into(),
        },
    );
    if timing {
        line("elapsed", format!("{:.6} s", r.elapsed.as_secs_f64()));
    }
    out
}

/// One comma-separated record, columns as in [`COMPUTE_COLUMNS`]. The
/// elapsed column is omitted when `timing` is false.
pub fn compute_record(name: &str, net: &BinaryStateNetwork, r: &BatReport, timing: bool) -> String {
    let mut fields = vec![
        csv_field(name),
        net.node_count().to_string(),
        r.m_original.to_string(),
        r.m_reduced.to_string(),
        opt(r.bounds.map(|b| b.n_p)),
        opt(r.bounds.map(|b| b.n_c)),
        r.reliability.to_string(),
        r.connected_count.to_string(),
        r.enumerated.to_string(),
        r.skipped_low.to_string(),
        r.skipped_high.to_string(),
        r.plsa_calls.to_string(),
        opt(r.skip_exact.map(|e| e.0)),
        opt(r.skip_exact.map(|e| e.1)),
        opt(r.skip_literal),
    ];
    if timing {
        fields.push(format!("{:.6}", r.elapsed.as_secs_f64()));
    }
    fields.join(",")
}

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from(TraceRow::CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// Quotes a field if it contains a comma, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
