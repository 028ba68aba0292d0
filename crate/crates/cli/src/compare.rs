use std::fmt::Write as _;
use std::time::{Duration, Instant};

use relbat_core::oracles::{
    brute_force_reliability, find_minimal_paths_limited, iet_reliability, sdp_reliability,
    MAX_BRUTE_FORCE_ARCS, MAX_PATHS,
};
use relbat_core::{bat_reliability, BatOptions, BinaryStateNetwork, Error};

/// Largest pairwise difference `compare` accepts.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    pub method: &'static str,
    /// `None` when the method was skipped.
    pub reliability: Option<f64>,
    pub elapsed: Duration,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub methods: Vec<MethodResult>,
    pub path_count: Option<usize>,
}

impl Comparison {
    /// Largest absolute difference between any two methods that ran.
    pub fn max_diff(&self) -> f64 {
        let values: Vec<f64> = self.methods.iter().filter_map(|m| m.reliability).collect();
        let mut worst = 0.0f64;
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                worst = worst.max((a - b).abs());
            }
        }
        worst
    }

    pub fn agrees(&self) -> bool {
        self.max_diff() <= AGREEMENT_TOLERANCE
    }

    pub fn get(&self, method: &str) -> Option<f64> {
        self.methods
            .iter()
            .find(|m| m.method == method)
            .and_then(|m| m.reliability)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Runs the engine and every oracle whose size guard admits the network.
/// The oracles work on the network as given, without reduction.
pub fn compare(net: &BinaryStateNetwork, opts: &BatOptions) -> Result<Comparison, Error> {
    let mut methods = Vec::with_capacity(4);
    let (bat, t) = timed(|| bat_reliability(net, opts));
    methods.push(MethodResult {
        method: "bat",
        reliability: Some(bat?.reliability),
        elapsed: t,
        note: None,
    });

    if net.arc_count() <= MAX_BRUTE_FORCE_ARCS {
        let (r, t) = timed(|| brute_force_reliability(net));
        methods.push(MethodResult {
            method: "brute_force",
            reliability: Some(r?),
            elapsed: t,
            note: None,
        });
    } else {
        methods.push(skipped(
            "brute_force",
            format!("m = {} > {MAX_BRUTE_FORCE_ARCS}", net.arc_count()),
        ));
    }

    let mps = find_minimal_paths_limited(net, MAX_PATHS);
    match &mps {
        Some(mps) => {
            let (r, t) = timed(|| iet_reliability(mps, net));
            methods.push(MethodResult {
                method: "iet",
                reliability: Some(r?),
                elapsed: t,
                note: None,
            });
            let (r, t) = timed(|| sdp_reliability(mps, net));
            methods.push(MethodResult {
                method: "sdp",
                reliability: Some(r?),
                elapsed: t,
                note: None,
            });
        }
        None => {
            let why = format!("more than {MAX_PATHS} minimal paths");
            methods.push(skipped("iet", why.clone()));
            methods.push(skipped("sdp", why));
        }
    }
    Ok(Comparison {
        methods,
        path_count: mps.map(|m| m.len()),
    })
}

fn skipped(method: &'static str, why: String) -> MethodResult {
    MethodResult {
        method,
        reliability: None,
        elapsed: Duration::ZERO,
        note: Some(why),
    }
}

pub fn render_compare(c: &Comparison, timing: bool, machine: bool) -> String {
    let mut out = String::new();
    if machine {
        for m in &c.methods {
            let r = m.reliability.map(|r| r.to_string()).unwrap_or_else(|| "skipped".into());
            let _ = write!(out, "{},{r}", m.method);
            if timing {
                let _ = write!(out, ",{:.6}", m.elapsed.as_secs_f64());
            }
            out.push('\n');
        }
        let _ = writeln!(out, "max_diff,{:e}", c.max_diff());
        return out;
    }
    for m in &c.methods {
        let _ = write!(out, "{:<12}", m.method);
        match (m.reliability, &m.note) {
            (Some(r), _) => {
                let _ = write!(out, "{r:.12}");
                if timing {
                    let _ = write!(out, "  {:.6} s", m.elapsed.as_secs_f64());
                }
            }
            (None, note) => {
                let _ = write!(out, "skipped ({})", note.as_deref().unwrap_or(""));
            }
        }
        out.push('\n');
    }
    if let Some(p) = c.path_count {
        let _ = writeln!(out, "{:<12}{p}", "paths");
    }
    let _ = writeln!(
        out,
        "{:<12}{:e} ({})",
        "max_diff",
        c.max_diff(),
        if c.agrees() { "agree" } else { "DISAGREE" }
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Generator;

    #[test]
    fn example_agrees() {
        let c = compare(&Generator::Fig1.generate(), &BatOptions::default()).unwrap();
        assert_eq!(c.methods.len(), 4);
        assert!(c.methods.iter().all(|m| m.reliability.is_some()));
        assert!(c.max_diff() < 1e-12);
        assert_eq!(c.path_count, Some(3));
        let text = render_compare(&c, false, true);
        assert!(text.starts_with("bat,0.9416"));
        assert!(text.lines().count() == 5);
    }

    #[test]
    fn large_network_skips_oracles() {
        // 30 arcs and 65 minimal paths; 20 arcs survive reduction.
        let net = Generator::Complete { n: 6, p: 0.9 }.generate();
        let opts = BatOptions { parallel_ranges: 8, ..Default::default() };
        let c = compare(&net, &opts).unwrap();
        assert!(c.get("brute_force").is_none());
        assert!(c.get("iet").is_none());
        assert!(c.get("bat").is_some());
        assert!(render_compare(&c, true, false).contains("skipped"));

        let chain = Generator::Chain { len: 25, p: 0.99 }.generate();
        let c = compare(&chain, &BatOptions::default()).unwrap();
        assert!(c.get("brute_force").is_none());
        assert!(c.agrees());
        assert!((c.get("iet").unwrap() - 0.99f64.powi(25)).abs() < 1e-12);
    }
}
