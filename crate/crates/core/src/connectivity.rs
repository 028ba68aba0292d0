//! Layered source-to-sink search over the arcs switched on in a state vector.

use crate::error::{Error, Result};
use crate::network::BinaryStateNetwork;
use crate::state::{StateVector, MAX_COORDS};

#[derive(Debug, Clone, Copy)]
struct OutArc {
    mask: u64,
    head: u32,
}

/// Reusable connectivity tester for one network.
///
/// Adjacency is built once; the visited marks and frontier buffers are kept
/// between queries, so a query performs no allocation. Each query costs
/// `O(n + m')` where `m'` is the number of out-arcs scanned. Not shareable
/// between threads; build one per worker.
#[derive(Debug, Clone)]
pub struct ConnectivityTester {
    sink: u32,
    arc_count: usize,
    /// `out[start[u]..start[u + 1]]` are the out-arcs of node `u`.
    start: Vec<u32>,
    out: Vec<OutArc>,
    /// Node `u` is in the visited set of the current query iff
    /// `stamp[u] == epoch`.
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<u32>,
    next: Vec<u32>,
}

impl ConnectivityTester {
    pub fn new(net: &BinaryStateNetwork) -> Result<Self> {
        let m = net.arc_count();
        if m > MAX_COORDS {
            return Err(Error::TooLarge {
                what: "arc count",
                value: m,
                limit: MAX_COORDS,
            });
        }
        let n = net.node_count();
        let lists = net.out_arcs();
        let mut start = Vec::with_capacity(n + 2);
        let mut out = Vec::with_capacity(m);
        for list in &lists {
            start.push(out.len() as u32);
            out.extend(list.iter().map(|&k| OutArc {
                mask: 1u64 << (m - 1 - k),
                head: net.arc(k).head as u32,
            }));
        }
        start.push(out.len() as u32);
        Ok(Self {
            sink: n as u32,
            arc_count: m,
            start,
            out,
            stamp: vec![0; n + 1],
            epoch: 0,
            frontier: Vec::with_capacity(n),
            next: Vec::with_capacity(n),
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Tests a vector given by its binary-number value (see [`StateVector`]).
    pub fn connected_bits(&mut self, bits: u64) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.frontier.clear();
        self.frontier.push(1);
        self.stamp[1] = epoch;
        while !self.frontier.is_empty() {
            self.next.clear();
            for &u in &self.frontier {
                let (lo, hi) = (self.start[u as usize], self.start[u as usize + 1]);
                for a in &self.out[lo as usize..hi as usize] {
                    if bits & a.mask == 0 || self.stamp[a.head as usize] == epoch {
                        continue;
                    }
                    if a.head == self.sink {
                        return true;
                    }
                    self.stamp[a.head as usize] = epoch;
                    self.next.push(a.head);
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        false
    }

    pub fn is_connected(&mut self, x: &StateVector) -> Result<bool> {
        if x.len() != self.arc_count {
            return Err(Error::LengthMismatch {
                expected: self.arc_count,
                found: x.len(),
            });
        }
        Ok(self.connected_bits(x.value()))
    }
}

/// One-off connectivity query. Prefer [`ConnectivityTester`] in loops.
pub fn is_connected(net: &BinaryStateNetwork, x: &StateVector) -> Result<bool> {
    ConnectivityTester::new(net)?.is_connected(x)
}
