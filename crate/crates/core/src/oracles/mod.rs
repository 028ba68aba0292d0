//! Reference computations used to cross-check the enumeration engine.
//!
//! Nothing here reuses the engine's enumeration loop or connectivity tester.

mod brute_force;
mod iet;
mod paths;
mod sdp;

pub use brute_force::{brute_force_reliability, MAX_BRUTE_FORCE_ARCS};
pub use iet::iet_reliability;
pub use paths::{find_all_minimal_paths, find_minimal_paths_limited, MinimalPath, MinimalPathSet};
pub use sdp::sdp_reliability;

use crate::error::{Error, Result};
use crate::network::BinaryStateNetwork;

/// Largest minimal-path set the inclusion-exclusion and disjoint-products
/// evaluators accept.
pub const MAX_PATHS: usize = 25;

/// Per-path arc masks (bit `k` is arc `k`), after checking the size guards.
fn path_masks(mps: &MinimalPathSet, net: &BinaryStateNetwork) -> Result<Vec<u64>> {
    if mps.len() > MAX_PATHS {
        return Err(Error::TooLarge {
            what: "minimal path count",
            value: mps.len(),
            limit: MAX_PATHS,
        });
    }
    if net.arc_count() > 64 {
        return Err(Error::TooLarge {
            what: "arc count",
            value: net.arc_count(),
            limit: 64,
        });
    }
    mps.iter()
        .map(|path| {
            path.arcs().iter().try_fold(0u64, |mask, &k| {
                if k >= net.arc_count() {
                    Err(Error::InvalidNetwork(format!("path uses unknown arc {k}")))
                } else {
                    Ok(mask | 1 << k)
                }
            })
        })
        .collect()
}
