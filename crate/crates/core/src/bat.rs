//! Binary-addition enumeration of state vectors and the reliability engine
//! built on it.
//!
//! Every state vector of the (optionally reduced) network is visited in
//! increasing binary order. Vectors with fewer than `n_p` working arcs are
//! disconnected and vectors with fewer than `n_c` failed arcs are connected,
//! so only the band in between needs a connectivity test. The reliability is
//! the sum of the occurrence probabilities of the connected vectors.

use std::borrow::Cow;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::connectivity::ConnectivityTester;
use crate::error::{Error, Result};
use crate::graph::{reduce_arcs, skip_bound_literal, skip_count_exact, Bounds};
use crate::network::{vector_probability, BinaryStateNetwork, Reliability};
use crate::state::{StateVector, MAX_COORDS};

/// Largest arc count the engine will enumerate (the vector count must fit a
/// `u64`).
pub const MAX_ENUMERATED_ARCS: usize = 63;

/// Largest arc count accepted by [`total_probability_check`].
pub const MAX_CHECK_ARCS: usize = 24;

/// Partial sums are kept per block of `2^(m - BLOCK_BITS)` consecutive
/// vectors and added up in block order, whatever the number of workers.
const BLOCK_BITS: usize = 12;

/// Deadline polling interval, in vectors.
const POLL_MASK: u64 = 0xFFFF;

#[derive(Debug, Clone)]
pub struct BatOptions {
    /// Drop arcs that lie on no source-sink path before enumerating.
    pub apply_reduction: bool,
    /// Classify vectors by popcount against `n_p`/`n_c` where possible.
    pub use_bounds: bool,
    /// Record one [`TraceRow`] per enumerated vector.
    pub emit_trace: bool,
    /// Number of contiguous sub-ranges scanned concurrently; a power of two.
    /// Values above `2^12` are clamped to `2^12`.
    pub parallel_ranges: usize,
    /// Abort with [`Error::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
}

impl Default for BatOptions {
    fn default() -> Self {
        Self {
            apply_reduction: true,
            use_bounds: true,
            emit_trace: false,
            parallel_ranges: 1,
            deadline: None,
        }
    }
}

/// How a vector was classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestMethod {
    /// Fewer working arcs than a shortest path has.
    BoundLow,
    /// Fewer failed arcs than a minimum cut has.
    BoundHigh,
    /// Layered search.
    Plsa,
}

impl TestMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TestMethod::BoundLow => "bound-low",
            TestMethod::BoundHigh => "bound-high",
            TestMethod::Plsa => "plsa",
        }
    }
}

impl fmt::Display for TestMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based position among enumerated vectors.
    pub iteration: u64,
    /// 1-based index among connected vectors.
    pub k: Option<u64>,
    pub vector: StateVector,
    pub sum: usize,
    pub test: TestMethod,
    pub connected: bool,
    /// Occurrence probability, present for connected vectors.
    pub term: Option<Reliability>,
}

impl TraceRow {
    pub const CSV_HEADER: &'static str = "iter,k,bits,sum,test,connected,term";

    /// `iter,k,bits,sum,test,connected,term`, bits first coordinate first.
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.iteration,
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.vector.to_bit_string(),
            self.sum,
            self.test,
            if self.connected { "Y" } else { "N" },
            self.term.map(|t| t.to_string()).unwrap_or_default(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatReport {
    pub reliability: Reliability,
    pub m_original: usize,
    /// Arc count actually enumerated (equals `m_original` without reduction).
    pub m_reduced: usize,
    /// `None` when the sink is unreachable.
    pub bounds: Option<Bounds>,
    pub enumerated: u64,
    pub skipped_low: u64,
    pub skipped_high: u64,
    pub plsa_calls: u64,
    pub connected_count: u64,
    /// The published verification-saving formula evaluated verbatim. It
    /// can exceed `2^m` and is informational only.
    pub skip_literal: Option<u128>,
    /// Vector counts with popcount `< n_p` and `> m - n_c`.
    pub skip_exact: Option<(u128, u128)>,
    pub elapsed: Duration,
    /// Empty unless `emit_trace` was set.
    pub trace: Vec<TraceRow>,
}

/// Binary addition on a state vector: the last coordinate is the least
/// significant digit. Returns `None` for the all-ones vector.
pub fn increment(x: &StateVector) -> Option<StateVector> {
    if x.is_all_ones() {
        return None;
    }
    let mut y = *x;
    for i in (0..y.len()).rev() {
        if !y.get(i) {
            y.set(i, true);
            return Some(y);
        }
        y.set(i, false);
    }
    unreachable!("a zero coordinate exists")
}

/// Visits all `2^m` vectors of length `m` in increasing binary order,
/// starting from the zero vector, and returns how many were visited.
pub fn enumerate_all<F>(m: usize, mut visit: F) -> Result<u128>
where
    F: FnMut(&StateVector),
{
    if m == 0 || m > MAX_COORDS {
        return Err(Error::InvalidOptions(format!(
            "vector length must be in 1..={MAX_COORDS}, got {m}"
        )));
    }
    let mut x = StateVector::zeros(m)?;
    let mut count = 0u128;
    loop {
        visit(&x);
        count += 1;
        match increment(&x) {
            Some(next) => x = next,
            None => return Ok(count),
        }
    }
}

/// Sum of the occurrence probabilities of all `2^m` vectors; should be 1.
pub fn total_probability_check(net: &BinaryStateNetwork) -> Result<Reliability> {
    let m = net.arc_count();
    if m > MAX_CHECK_ARCS {
        return Err(Error::TooLarge {
            what: "arc count",
            value: m,
            limit: MAX_CHECK_ARCS,
        });
    }
    let mut total = 0.0;
    for value in 0..1u64 << m {
        total += vector_probability(net, &StateVector::from_value(m, value)?)?;
    }
    Ok(total)
}

#[derive(Default)]
struct RangeTally {
    block_sums: Vec<f64>,
    enumerated: u64,
    skipped_low: u64,
    skipped_high: u64,
    plsa_calls: u64,
    connected: u64,
    trace: Vec<TraceRow>,
}

struct Scan<'a> {
    m: usize,
    /// `(p, 1 - p)` per arc, in arc order.
    factors: &'a [(f64, f64)],
    low: u32,
    high: u32,
    seed: u64,
    block_len: u64,
    emit_trace: bool,
    deadline: Option<Instant>,
}

impl Scan<'_> {
    #[inline]
    fn probability(&self, bits: u64) -> f64 {
        let top = self.m - 1;
        self.factors
            .iter()
            .enumerate()
            .fold(1.0, |acc, (j, &(p, q))| {
                acc * if bits >> (top - j) & 1 == 1 { p } else { q }
            })
    }

    fn run(&self, tester: &mut ConnectivityTester, blocks: std::ops::Range<u64>) -> Result<RangeTally> {
        let mut tally = RangeTally {
            block_sums: Vec::with_capacity((blocks.end - blocks.start) as usize),
            ..Default::default()
        };
        for block in blocks {
            let lo = (block * self.block_len).max(self.seed);
            let hi = (block + 1) * self.block_len;
            let mut sum = 0.0;
            if lo < hi {
                let mut bits = lo;
                let mut pop = lo.count_ones();
                loop {
                    if bits & POLL_MASK == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
                        return Err(Error::Timeout);
                    }
                    let (test, connected) = if pop < self.low {
                        tally.skipped_low += 1;
                        (TestMethod::BoundLow, false)
                    } else if pop > self.high {
                        tally.skipped_high += 1;
                        (TestMethod::BoundHigh, true)
                    } else {
                        tally.plsa_calls += 1;
                        (TestMethod::Plsa, tester.connected_bits(bits))
                    };
                    let term = connected.then(|| self.probability(bits));
                    if let Some(t) = term {
                        sum += t;
                        tally.connected += 1;
                    }
                    if self.emit_trace {
                        tally.trace.push(TraceRow {
                            iteration: 0,
                            k: None,
                            vector: StateVector::from_value(self.m, bits)?,
                            sum: pop as usize,
                            test,
                            connected,
                            term,
                        });
                    }
                    tally.enumerated += 1;
                    bits += 1;
                    if bits == hi {
                        break;
                    }
                    // Adding one clears the trailing ones and sets one bit.
                    pop = pop + 1 - bits.trailing_zeros();
                }
            }
            tally.block_sums.push(sum);
        }
        Ok(tally)
    }
}

/// Exact source-sink reliability by exhaustive binary-addition enumeration.
pub fn bat_reliability(net: &BinaryStateNetwork, opts: &BatOptions) -> Result<BatReport> {
    let started = Instant::now();
    let work: Cow<'_, BinaryStateNetwork> = if opts.apply_reduction {
        Cow::Owned(reduce_arcs(net).0)
    } else {
        Cow::Borrowed(net)
    };
    let m = work.arc_count();
    let mut report = BatReport {
        reliability: 0.0,
        m_original: net.arc_count(),
        m_reduced: m,
        bounds: None,
        enumerated: 0,
        skipped_low: 0,
        skipped_high: 0,
        plsa_calls: 0,
        connected_count: 0,
        skip_literal: None,
        skip_exact: None,
        elapsed: Duration::ZERO,
        trace: Vec::new(),
    };
    let Some(bounds) = Bounds::of(&work) else {
        report.elapsed = started.elapsed();
        return Ok(report);
    };
    if m > MAX_ENUMERATED_ARCS {
        return Err(Error::TooLarge {
            what: "arc count",
            value: m,
            limit: MAX_ENUMERATED_ARCS,
        });
    }
    let ranges = opts.parallel_ranges;
    if !ranges.is_power_of_two() || ranges.trailing_zeros() as usize > m {
        return Err(Error::InvalidOptions(format!(
            "parallel_ranges must be a power of two not exceeding 2^{m}, got {ranges}"
        )));
    }
    report.bounds = Some(bounds);
    report.skip_literal = Some(skip_bound_literal(m, bounds.n_p, bounds.n_c)?);
    report.skip_exact = Some(skip_count_exact(m, bounds.n_p, bounds.n_c)?);

    let (low, high, seed) = if opts.use_bounds {
        (bounds.n_p, m - bounds.n_c, (1u64 << bounds.n_p) - 1)
    } else {
        (0, m, 0)
    };
    let factors: Vec<(f64, f64)> = work.arcs().iter().map(|a| (a.p, 1.0 - a.p)).collect();
    let block_bits = m.min(BLOCK_BITS);
    let blocks = 1u64 << block_bits;
    let scan = Scan {
        m,
        factors: &factors,
        low: low as u32,
        high: high as u32,
        seed,
        block_len: 1u64 << (m - block_bits),
        emit_trace: opts.emit_trace,
        deadline: opts.deadline,
    };

    let workers = (ranges as u64).min(blocks);
    let per_worker = blocks / workers;
    let template = ConnectivityTester::new(&work)?;
    let run = |r: u64| {
        let mut tester = template.clone();
        scan.run(&mut tester, r * per_worker..(r + 1) * per_worker)
    };
    let tallies: Vec<RangeTally> = if workers == 1 {
        vec![run(0)?]
    } else {
        (0..workers).into_par_iter().map(run).collect::<Result<_>>()?
    };

    let mut reliability = 0.0;
    for t in &tallies {
        for &s in &t.block_sums {
            reliability += s;
        }
        report.enumerated += t.enumerated;
        report.skipped_low += t.skipped_low;
        report.skipped_high += t.skipped_high;
        report.plsa_calls += t.plsa_calls;
        report.connected_count += t.connected;
    }
    report.reliability = reliability;
    if opts.emit_trace {
        let mut k = 0;
        report.trace = tallies.into_iter().flat_map(|t| t.trace).collect();
        for (i, row) in report.trace.iter_mut().enumerate() {
            row.iteration = i as u64 + 1;
            if row.connected {
                k += 1;
                row.k = Some(k);
            }
        }
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Arc;

    fn v(bits: &str) -> StateVector {
        StateVector::from_coords(bits.chars().map(|c| c == '1')).unwrap()
    }

    #[test]
    fn increments() {
        assert_eq!(increment(&v("00000")), Some(v("00001")));
        assert_eq!(increment(&v("00011")), Some(v("00100")));
        assert_eq!(increment(&v("11110")), Some(v("11111")));
        assert_eq!(increment(&v("11111")), None);
        assert_eq!(increment(&v("00011")).unwrap().popcount(), 1);
    }

    #[test]
    fn enumeration_covers_range() {
        let mut seen = Vec::new();
        assert_eq!(enumerate_all(3, |x| seen.push(x.value())).unwrap(), 8);
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
        let mut one = Vec::new();
        enumerate_all(1, |x| one.push(x.to_bit_string())).unwrap();
        assert_eq!(one, ["0", "1"]);
        assert!(enumerate_all(0, |_| {}).is_err());
    }

    #[test]
    fn single_arc() {
        let net = BinaryStateNetwork::new(2, vec![Arc::new(1, 2, 0.3)]).unwrap();
        assert!((total_probability_check(&net).unwrap() - 1.0).abs() < 1e-15);
        let r = bat_reliability(&net, &BatOptions::default()).unwrap();
        assert_eq!(r.reliability, 0.3);
        assert_eq!(r.enumerated, 1);
        assert_eq!(r.skipped_high, 1);
    }

    #[test]
    fn certain_arcs_give_one() {
        let net = BinaryStateNetwork::new(
            3,
            vec![Arc::new(1, 2, 1.0), Arc::new(2, 3, 1.0), Arc::new(1, 3, 1.0)],
        )
        .unwrap();
        let r = bat_reliability(&net, &BatOptions::default()).unwrap();
        assert_eq!(r.reliability, 1.0);
    }

    #[test]
    fn unreachable_sink_short_circuits() {
        let net =
            BinaryStateNetwork::new(3, vec![Arc::new(1, 2, 0.5), Arc::new(3, 2, 0.5)]).unwrap();
        for apply_reduction in [true, false] {
            let opts = BatOptions {
                apply_reduction,
                ..Default::default()
            };
            let r = bat_reliability(&net, &opts).unwrap();
            assert_eq!(r.reliability, 0.0);
            assert_eq!(r.enumerated, 0);
            assert!(r.bounds.is_none());
        }
    }

    #[test]
    fn rejects_bad_parallelism() {
        let net = BinaryStateNetwork::new(2, vec![Arc::new(1, 2, 0.3)]).unwrap();
        for parallel_ranges in [0, 3, 4] {
            let opts = BatOptions {
                parallel_ranges,
                ..Default::default()
            };
            assert!(matches!(
                bat_reliability(&net, &opts),
                Err(Error::InvalidOptions(_))
            ));
        }
    }

    #[test]
    fn expired_deadline() {
        let arcs = (1..=20).map(|i| Arc::new(i, i + 1, 0.9)).collect::<Vec<_>>();
        let mut arcs = arcs;
        arcs.push(Arc::new(1, 21, 0.5));
        let net = BinaryStateNetwork::new(21, arcs).unwrap();
        let opts = BatOptions {
            deadline: Some(Instant::now()),
            use_bounds: false,
            ..Default::default()
        };
        assert_eq!(bat_reliability(&net, &opts), Err(Error::Timeout));
    }

    #[test]
    fn trace_csv() {
        let row = TraceRow {
            iteration: 7,
            k: Some(1),
            vector: v("01001"),
            sum: 2,
            test: TestMethod::Plsa,
            connected: true,
            term: Some(0.0018),
        };
        assert_eq!(row.to_csv(), "7,1,01001,2,plsa,Y,0.0018");
    }
}
