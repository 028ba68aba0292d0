//! Directed binary-state networks.
//!
//! Nodes are numbered `1..=n`; node 1 is the source and node `n` the sink.
//! Arcs keep the order they were supplied in, and that order fixes the
//! coordinate layout of every [`StateVector`] over the network.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// A directed arc `tail -> head` that works with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub p: f64,
}

impl Arc {
    pub fn new(tail: usize, head: usize, p: f64) -> Self {
        Self { tail, head, p }
    }
}

/// Reliability value in `[0, 1]`.
pub type Reliability = f64;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryStateNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
}

impl BinaryStateNetwork {
    /// Validates and builds a network. Arc order is preserved.
    pub fn new(nodes: usize, arcs: Vec<Arc>) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::InvalidNetwork(format!(
                "need at least 2 nodes, got {nodes}"
            )));
        }
        let mut seen = HashSet::with_capacity(arcs.len());
        for (k, a) in arcs.iter().enumerate() {
            check_arc(nodes, a).map_err(|msg| Error::InvalidNetwork(format!("arc {}: {msg}", k + 1)))?;
            if !seen.insert((a.tail, a.head)) {
                return Err(Error::InvalidNetwork(format!(
                    "arc {}: duplicate arc ({}, {})",
                    k + 1,
                    a.tail,
                    a.head
                )));
            }
        }
        Ok(Self { nodes, arcs })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn source(&self) -> usize {
        1
    }

    #[inline]
    pub fn sink(&self) -> usize {
        self.nodes
    }

    #[inline]
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, index: usize) -> &Arc {
        &self.arcs[index]
    }

    /// Out-arc indices per node (index 0 unused), each list in arc order.
    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes + 1];
        for (k, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(k);
        }
        out
    }

    /// Whether the network, ignoring arc directions, is connected.
    pub fn is_weakly_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.nodes + 1];
        for a in &self.arcs {
            adj[a.tail].push(a.head);
            adj[a.head].push(a.tail);
        }
        let mut seen = vec![false; self.nodes + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.nodes
    }

    fn check_len(&self, x: &StateVector) -> Result<()> {
        if x.len() != self.arcs.len() {
            return Err(Error::LengthMismatch {
                expected: self.arcs.len(),
                found: x.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_arc(nodes: usize, a: &Arc) -> std::result::Result<(), String> {
    for v in [a.tail, a.head] {
        if v == 0 || v > nodes {
            return Err(format!("node index {v} out of range 1..={nodes}"));
        }
    }
    if a.tail == a.head {
        return Err(format!("self-loop on node {}", a.tail));
    }
    if !(0.0..=1.0).contains(&a.p) {
        return Err(format!("probability {} outside [0, 1]", a.p));
    }
    Ok(())
}

/// Occurrence probability of `x`: the product of `p` over working arcs and
/// `1 - p` over failed arcs.
pub fn vector_probability(net: &BinaryStateNetwork, x: &StateVector) -> Result<Reliability> {
    net.check_len(x)?;
    Ok(net
        .arcs
        .iter()
        .zip(x.coords())
        .fold(1.0, |acc, (a, on)| acc * if on { a.p } else { 1.0 - a.p }))
}

/// Indices (0-based, arc order) of the arcs switched on in `x`.
pub fn subgraph_arcs(net: &BinaryStateNetwork, x: &StateVector) -> Result<Vec<usize>> {
    net.check_len(x)?;
    Ok(x.coords()
        .enumerate()
        .filter_map(|(k, on)| on.then_some(k))
        .collect())
}
