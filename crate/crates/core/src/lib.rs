//! Exact two-terminal reliability of directed binary-state networks.
//!
//! Arcs fail independently; nodes never fail. The reliability is the
//! probability that the sink (node `n`) is reachable from the source
//! (node 1) over working arcs.
//!
//! [`bat_reliability`] enumerates every state vector by binary addition,
//! classifies most of them by popcount alone using the shortest-path and
//! minimum-cut arc counts, tests the rest with a layered search, and sums the
//! probabilities of the connected ones. The [`oracles`] module holds
//! independent evaluators (state-space brute force, inclusion-exclusion and
//! sum of disjoint products over minimal paths) for cross-checking.
//!
//! ```
//! use relbat_core::{bat_reliability, parse_network, BatOptions};
//!
//! let net = parse_network("nodes=3 arcs=3\n1 2 0.9\n2 3 0.9\n1 3 0.5\n").unwrap();
//! let report = bat_reliability(&net, &BatOptions::default()).unwrap();
//! assert!((report.reliability - (0.5 + 0.5 * 0.81)).abs() < 1e-12);
//! ```

pub mod bat;
pub mod connectivity;
pub mod error;
pub mod format;
pub mod graph;
pub mod network;
pub mod oracles;
pub mod state;

pub use bat::{
    bat_reliability, enumerate_all, increment, total_probability_check, BatOptions, BatReport,
    TestMethod, TraceRow,
};
pub use connectivity::{is_connected, ConnectivityTester};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use format::{parse_network, write_network};
pub use graph::{
    min_cut_arc_count, reduce_arcs, shortest_path_arc_count, skip_bound_literal,
    skip_count_exact, Bounds, ReductionMap,
};
pub use network::{subgraph_arcs, vector_probability, Arc, BinaryStateNetwork, Reliability};
pub use state::StateVector;
