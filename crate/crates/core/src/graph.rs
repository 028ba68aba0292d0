//! Structural preprocessing: arc reduction and the popcount bounds.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::network::BinaryStateNetwork;

/// Which original arcs survived [`reduce_arcs`], both lists in arc order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

/// Arc counts of a shortest source-sink path (`n_p`) and of a minimum
/// source-sink cut (`n_c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub n_p: usize,
    pub n_c: usize,
}

impl Bounds {
    /// `None` when the sink is unreachable.
    pub fn of(net: &BinaryStateNetwork) -> Option<Self> {
        let n_p = shortest_path_arc_count(net)?;
        Some(Self {
            n_p,
            n_c: min_cut_arc_count(net),
        })
    }
}

fn reachable(nodes: usize, start: usize, adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; nodes + 1];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Drops every arc that cannot lie on a source-sink path: arcs into the
/// source, arcs out of the sink, arcs whose tail is unreachable from the
/// source and arcs whose head cannot reach the sink.
///
/// Node numbering is unchanged, so the reduced network may contain isolated
/// nodes. An empty result means the sink is unreachable.
pub fn reduce_arcs(net: &BinaryStateNetwork) -> (BinaryStateNetwork, ReductionMap) {
    let n = net.node_count();
    let mut fwd = vec![Vec::new(); n + 1];
    let mut rev = vec![Vec::new(); n + 1];
    for a in net.arcs() {
        fwd[a.tail].push(a.head);
        rev[a.head].push(a.tail);
    }
    let from_source = reachable(n, 1, &fwd);
    let to_sink = reachable(n, n, &rev);

    let (kept, removed): (Vec<usize>, Vec<usize>) = (0..net.arc_count()).partition(|&k| {
        let a = net.arc(k);
        a.tail != n && a.head != 1 && from_source[a.tail] && to_sink[a.head]
    });
    let arcs = kept.iter().map(|&k| *net.arc(k)).collect();
    let reduced = BinaryStateNetwork::new(n, arcs).expect("subset of a valid network");
    (reduced, ReductionMap { kept, removed })
}

/// Number of arcs on a shortest directed source-sink path, by breadth-first
/// layering. `None` if the sink is unreachable.
pub fn shortest_path_arc_count(net: &BinaryStateNetwork) -> Option<usize> {
    let n = net.node_count();
    let out = net.out_arcs();
    let mut dist = vec![usize::MAX; n + 1];
    dist[1] = 0;
    let mut queue = VecDeque::from([1]);
    while let Some(u) = queue.pop_front() {
        for &k in &out[u] {
            let v = net.arc(k).head;
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                if v == n {
                    return Some(dist[v]);
                }
                queue.push_back(v);
            }
        }
    }
    None
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

/// Smallest number of arcs whose removal disconnects the sink from the
/// source: the unit-capacity max-flow value, found by breadth-first
/// augmenting paths. Zero when no path exists.
pub fn min_cut_arc_count(net: &BinaryStateNetwork) -> usize {
    let n = net.node_count();
    let mut g = Residual {
        head: Vec::with_capacity(2 * net.arc_count()),
        cap: Vec::with_capacity(2 * net.arc_count()),
        adj: vec![Vec::new(); n + 1],
    };
    // Edge 2k is arc k, edge 2k+1 its residual twin.
    for a in net.arcs() {
        g.adj[a.tail].push(g.head.len());
        g.head.push(a.head);
        g.cap.push(1);
        g.adj[a.head].push(g.head.len());
        g.head.push(a.tail);
        g.cap.push(0);
    }

    let mut flow = 0;
    let mut via = vec![usize::MAX; n + 1];
    loop {
        via.fill(usize::MAX);
        let mut queue = VecDeque::from([1]);
        let mut found = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &g.adj[u] {
                let v = g.head[e];
                if g.cap[e] > 0 && v != 1 && via[v] == usize::MAX {
                    via[v] = e;
                    if v == n {
                        found = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !found {
            return flow;
        }
        let mut v = n;
        while v != 1 {
            let e = via[v];
            g.cap[e] -= 1;
            g.cap[e ^ 1] += 1;
            v = g.head[e ^ 1];
        }
        flow += 1;
    }
}

pub(crate) fn binomial(m: usize, j: usize) -> u128 {
    if j > m {
        return 0;
    }
    let j = j.min(m - j);
    (0..j).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

fn check_bound_args(m: usize, n_p: usize, n_c: usize) -> Result<()> {
    if m > 64 {
        return Err(Error::TooLarge {
            what: "arc count",
            value: m,
            limit: 64,
        });
    }
    if n_p > m || n_c > m {
        return Err(Error::InvalidOptions(format!(
            "n_p={n_p} and n_c={n_c} must not exceed m={m}"
        )));
    }
    Ok(())
}

/// The verification-saving formula exactly as published:
/// `sum_{j<n_p} 2^j C(m,j) + sum_{j>m-n_c} 2^j C(m,j)`.
///
/// This is not a bound on anything: for `m=5, n_p=n_c=2` it gives 123 while
/// only 32 vectors exist. Use [`skip_count_exact`] for the real counts.
pub fn skip_bound_literal(m: usize, n_p: usize, n_c: usize) -> Result<u128> {
    check_bound_args(m, n_p, n_c)?;
    let term = |j: usize| (1u128 << j) * binomial(m, j);
    let low: u128 = (0..n_p).map(term).sum();
    let high: u128 = (m + 1 - n_c..=m).map(term).sum();
    Ok(low + high)
}

/// Number of vectors with popcount below `n_p` and above `m - n_c`.
pub fn skip_count_exact(m: usize, n_p: usize, n_c: usize) -> Result<(u128, u128)> {
    check_bound_args(m, n_p, n_c)?;
    let low = (0..n_p).map(|j| binomial(m, j)).sum();
    let high = (m + 1 - n_c..=m).map(|j| binomial(m, j)).sum();
    Ok((low, high))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Arc;

    fn net(n: usize, arcs: &[(usize, usize)]) -> BinaryStateNetwork {
        BinaryStateNetwork::new(n, arcs.iter().map(|&(u, v)| Arc::new(u, v, 0.5)).collect())
            .unwrap()
    }

    fn fig1() -> BinaryStateNetwork {
        net(
            4,
            &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 1), (3, 1), (4, 2), (4, 3)],
        )
    }

    #[test]
    fn reduction_of_example() {
        let (reduced, map) = reduce_arcs(&fig1());
        assert_eq!(map.kept, vec![0, 1, 2, 3, 4]);
        assert_eq!(map.removed, vec![5, 6, 7, 8]);
        assert_eq!(reduced.arcs(), &fig1().arcs()[..5]);
        let (again, map2) = reduce_arcs(&reduced);
        assert_eq!(again, reduced);
        assert!(map2.removed.is_empty());
    }

    #[test]
    fn reduction_drops_dead_ends() {
        // 1 -> 2 -> 4 with a dangling 2 -> 3.
        let (reduced, map) = reduce_arcs(&net(4, &[(1, 2), (2, 3), (2, 4)]));
        assert_eq!(map.removed, vec![1]);
        assert_eq!(reduced.arc_count(), 2);
    }

    #[test]
    fn reduction_without_path_is_empty() {
        let (reduced, map) = reduce_arcs(&net(3, &[(1, 2), (3, 2)]));
        assert_eq!(reduced.arc_count(), 0);
        assert_eq!(map.removed, vec![0, 1]);
    }

    #[test]
    fn shortest_paths() {
        let (fig2, _) = reduce_arcs(&fig1());
        assert_eq!(shortest_path_arc_count(&fig2), Some(2));
        assert_eq!(shortest_path_arc_count(&net(2, &[(1, 2)])), Some(1));
        assert_eq!(
            shortest_path_arc_count(&net(5, &[(1, 2), (2, 3), (3, 4), (4, 5)])),
            Some(4)
        );
        assert_eq!(shortest_path_arc_count(&net(3, &[(2, 3)])), None);
    }

    #[test]
    fn min_cuts() {
        let (fig2, _) = reduce_arcs(&fig1());
        assert_eq!(min_cut_arc_count(&fig2), 2);
        assert_eq!(min_cut_arc_count(&fig1()), 2);
        assert_eq!(min_cut_arc_count(&net(2, &[(1, 2)])), 1);
        assert_eq!(min_cut_arc_count(&net(4, &[(1, 2), (2, 4), (1, 3), (3, 4)])), 2);
        assert_eq!(min_cut_arc_count(&net(3, &[(2, 3)])), 0);
    }

    #[test]
    fn min_cut_needs_residual_reversal() {
        // Greedy 1-2-3-6 blocks both augmenting routes unless flow on 2->3 is undone.
        let g = net(6, &[(1, 2), (2, 3), (3, 6), (1, 4), (4, 3), (2, 5), (5, 6)]);
        assert_eq!(min_cut_arc_count(&g), 2);
    }

    #[test]
    fn literal_formula() {
        assert_eq!(skip_bound_literal(5, 2, 2).unwrap(), 123);
        assert_eq!(skip_bound_literal(5, 0, 0).unwrap(), 0);
        assert_eq!(skip_bound_literal(5, 1, 1).unwrap(), 33);
        assert_eq!(skip_bound_literal(64, 64, 0).unwrap(), 3u128.pow(64) - (1u128 << 64));
        assert!(skip_bound_literal(65, 1, 1).is_err());
        assert!(skip_bound_literal(3, 4, 1).is_err());
    }

    #[test]
    fn exact_counts() {
        assert_eq!(skip_count_exact(5, 2, 2).unwrap(), (6, 6));
        assert_eq!(skip_count_exact(5, 0, 2).unwrap().0, 0);
        assert_eq!(skip_count_exact(3, 1, 1).unwrap(), (1, 1));
        assert_eq!(skip_count_exact(64, 64, 0).unwrap().0, u64::MAX as u128);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 4), 0);
    }
}
