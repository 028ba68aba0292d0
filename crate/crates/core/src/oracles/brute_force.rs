use crate::error::{Error, Result};
use crate::network::{BinaryStateNetwork, Reliability};

pub const MAX_BRUTE_FORCE_ARCS: usize = 24;

/// State-space reliability of the network as given (no reduction): every
/// vector is tested with a depth-first search and the probabilities of the
/// connected ones are summed.
pub fn brute_force_reliability(net: &BinaryStateNetwork) -> Result<Reliability> {
    let m = net.arc_count();
    if m > MAX_BRUTE_FORCE_ARCS {
        return Err(Error::TooLarge {
            what: "arc count",
            value: m,
            limit: MAX_BRUTE_FORCE_ARCS,
        });
    }
    let n = net.node_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (k, a) in net.arcs().iter().enumerate() {
        adj[a.tail].push((k, a.head));
    }

    let mut seen = vec![false; n + 1];
    let mut stack = Vec::with_capacity(n);
    let mut reliability = 0.0;
    for state in 0..1u64 << m {
        // Arc k works iff bit (m - 1 - k) is set.
        let works = |k: usize| state >> (m - 1 - k) & 1 == 1;

        seen.fill(false);
        stack.clear();
        stack.push(1);
        seen[1] = true;
        let mut reached = false;
        while let Some(u) = stack.pop() {
            if u == n {
                reached = true;
                break;
            }
            for &(k, v) in &adj[u] {
                if works(k) && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if reached {
            let mut pr = 1.0;
            for (k, a) in net.arcs().iter().enumerate() {
                pr *= if works(k) { a.p } else { 1.0 - a.p };
            }
            reliability += pr;
        }
    }
    Ok(reliability)
}
