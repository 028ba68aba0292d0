use std::collections::HashSet;

use proptest::prelude::*;

use relbat_core::oracles::{
    brute_force_reliability, find_all_minimal_paths, iet_reliability, sdp_reliability,
};
use relbat_core::{
    bat_reliability, is_connected, min_cut_arc_count, parse_network, reduce_arcs,
    shortest_path_arc_count, skip_count_exact, subgraph_arcs, total_probability_check,
    vector_probability, write_network, Arc, BatOptions, BinaryStateNetwork, ConnectivityTester,
    StateVector,
};

/// Random networks with up to `max_nodes` nodes and `max_arcs` distinct arcs.
fn network(max_nodes: usize, max_arcs: usize) -> impl Strategy<Value = BinaryStateNetwork> {
    (2..=max_nodes).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let m = max_arcs.min(pairs.len());
        (
            prop::sample::subsequence(pairs, (m / 2).max(1)..=m).prop_shuffle(),
            prop::collection::vec(0.05f64..0.95, m),
        )
            .prop_map(move |(pairs, ps)| {
                let arcs = pairs
                    .into_iter()
                    .zip(ps)
                    .map(|((u, v), p)| Arc::new(u, v, p))
                    .collect();
                BinaryStateNetwork::new(n, arcs).unwrap()
            })
    })
}

/// Depth-first reachability over the working arcs, written independently of
/// the library's testers.
fn dfs_connected(net: &BinaryStateNetwork, x: &StateVector) -> bool {
    let on: Vec<usize> = subgraph_arcs(net, x).unwrap();
    let mut seen = vec![false; net.node_count() + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(u) = stack.pop() {
        for &k in &on {
            let a = net.arc(k);
            if a.tail == u && !seen[a.head] {
                seen[a.head] = true;
                stack.push(a.head);
            }
        }
    }
    seen[net.sink()]
}

fn all_vectors(m: usize) -> impl Iterator<Item = StateVector> {
    (0..1u64 << m).map(move |v| StateVector::from_value(m, v).unwrap())
}

/// Fewest arcs whose removal disconnects the sink, by trying every subset.
fn brute_force_min_cut(net: &BinaryStateNetwork) -> usize {
    let m = net.arc_count();
    all_vectors(m)
        .filter(|x| !dfs_connected(net, x))
        .map(|x| m - x.popcount())
        .min()
        .unwrap_or(0)
}

/// Shortest simple path length, by listing every simple path.
fn brute_force_shortest(net: &BinaryStateNetwork) -> Option<usize> {
    find_all_minimal_paths(net).iter().map(|p| p.len()).min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn file_round_trip(net in network(7, 14)) {
        prop_assert_eq!(parse_network(&write_network(&net)).unwrap(), net);
    }

    #[test]
    fn probabilities_are_a_distribution(net in network(7, 14)) {
        for x in all_vectors(net.arc_count()) {
            let p = vector_probability(&net, &x).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert_eq!(subgraph_arcs(&net, &x).unwrap().len(), x.popcount());
        }
        prop_assert!((total_probability_check(&net).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tester_matches_dfs_and_is_monotone(net in network(7, 12)) {
        let m = net.arc_count();
        let mut tester = ConnectivityTester::new(&net).unwrap();
        let classes: Vec<bool> = all_vectors(m).map(|x| tester.is_connected(&x).unwrap()).collect();
        for (x, &c) in all_vectors(m).zip(&classes) {
            prop_assert_eq!(c, dfs_connected(&net, &x), "vector {:?}", x);
            prop_assert_eq!(c, is_connected(&net, &x).unwrap());
            if c {
                // Switching on any further arc keeps it connected.
                for k in 0..m {
                    let mut y = x;
                    y.set(k, true);
                    prop_assert!(classes[y.value() as usize]);
                }
            }
        }
    }

    #[test]
    fn reduction_preserves_reliability(net in network(7, 14)) {
        let (reduced, map) = reduce_arcs(&net);
        let mut all: Vec<usize> = map.kept.iter().chain(&map.removed).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..net.arc_count()).collect::<Vec<_>>());
        prop_assert!(map.kept.windows(2).all(|w| w[0] < w[1]));
        let before = brute_force_reliability(&net).unwrap();
        let after = brute_force_reliability(&reduced).unwrap();
        prop_assert!((before - after).abs() < 1e-12, "{} vs {}", before, after);
    }

    #[test]
    fn bounds_match_brute_force(net in network(7, 14)) {
        let n_p = shortest_path_arc_count(&net);
        prop_assert_eq!(n_p, brute_force_shortest(&net));
        let n_c = min_cut_arc_count(&net);
        prop_assert_eq!(n_c, brute_force_min_cut(&net));
        if let Some(n_p) = n_p {
            let m = net.arc_count();
            prop_assert!(1 <= n_p && n_p <= m && 1 <= n_c && n_c <= m);
            prop_assert!(n_p <= m - n_c + 1);
            let (low, high) = skip_count_exact(m, n_p, n_c).unwrap();
            prop_assert!(low + high <= 1u128 << m);
            // Popcount classification is sound.
            for x in all_vectors(m) {
                if x.popcount() < n_p {
                    prop_assert!(!dfs_connected(&net, &x));
                }
                if x.popcount() > m - n_c {
                    prop_assert!(dfs_connected(&net, &x));
                }
            }
        }
    }

    #[test]
    fn minimal_paths_characterise_connectivity(net in network(6, 12)) {
        let mps = find_all_minimal_paths(&net);
        let unique: HashSet<_> = mps.iter().collect();
        prop_assert_eq!(unique.len(), mps.len());
        prop_assert!(mps.iter().all(|p| p.is_valid_in(&net)));
        let m = net.arc_count();
        let indicators: Vec<u64> = mps
            .iter()
            .map(|p| p.arcs().iter().fold(0u64, |acc, &k| acc | 1 << (m - 1 - k)))
            .collect();
        for x in all_vectors(m) {
            let dominates = indicators.iter().any(|&ind| x.value() & ind == ind);
            prop_assert_eq!(dominates, dfs_connected(&net, &x));
        }
    }

    #[test]
    fn evaluators_agree(net in network(7, 14)) {
        let oracle = brute_force_reliability(&net).unwrap();
        let mps = find_all_minimal_paths(&net);
        prop_assume!(mps.len() <= 20);
        let iet = iet_reliability(&mps, &net).unwrap();
        let sdp = sdp_reliability(&mps, &net).unwrap();
        prop_assert!((iet - oracle).abs() < 1e-10, "iet {} vs {}", iet, oracle);
        prop_assert!((sdp - oracle).abs() < 1e-10, "sdp {} vs {}", sdp, oracle);
        let mut plain = None;
        for apply_reduction in [true, false] {
            for use_bounds in [true, false] {
                for emit_trace in [false, true] {
                    let opts = BatOptions { apply_reduction, use_bounds, emit_trace, ..Default::default() };
                    let r = bat_reliability(&net, &opts).unwrap();
                    prop_assert!((r.reliability - oracle).abs() < 1e-12);
                    prop_assert!((0.0..=1.0 + 1e-12).contains(&r.reliability));
                    prop_assert_eq!(r.enumerated, r.skipped_low + r.skipped_high + r.plsa_calls);
                    prop_assert!(r.connected_count >= r.skipped_high);
                    if emit_trace {
                        prop_assert_eq!(r.trace.len() as u64, r.enumerated);
                        prop_assert!(r.trace.windows(2).all(|w| w[0].vector.value() < w[1].vector.value()));
                        prop_assert_eq!(Some(r.reliability), plain);
                    } else {
                        plain = Some(r.reliability);
                    }
                }
            }
        }
    }

    #[test]
    fn counters_follow_from_bounds(net in network(7, 14)) {
        let report = bat_reliability(&net, &BatOptions::default()).unwrap();
        let Some(b) = report.bounds else {
            prop_assert_eq!(report.enumerated, 0);
            return Ok(());
        };
        let m = report.m_reduced;
        let seeded = (1u64 << b.n_p) - 1;
        let (low, high) = skip_count_exact(m, b.n_p, b.n_c).unwrap();
        prop_assert_eq!(report.enumerated, (1u64 << m) - seeded);
        prop_assert_eq!(report.skipped_low as u128, low - seeded as u128);
        prop_assert_eq!(report.skipped_high as u128, high);
        prop_assert_eq!(report.skip_exact, Some((low, high)));
    }

    #[test]
    fn parallel_ranges_are_bit_identical(net in network(8, 16), b in 0u32..5) {
        let seq = bat_reliability(&net, &BatOptions::default()).unwrap();
        prop_assume!(seq.bounds.is_some() && (b as usize) <= seq.m_reduced);
        let opts = BatOptions { parallel_ranges: 1 << b, emit_trace: true, ..Default::default() };
        let par = bat_reliability(&net, &opts).unwrap();
        prop_assert_eq!(par.reliability.to_bits(), seq.reliability.to_bits());
        prop_assert_eq!(par.enumerated, seq.enumerated);
        prop_assert_eq!(par.connected_count, seq.connected_count);
        prop_assert!(par.trace.iter().enumerate().all(|(i, r)| r.iteration == i as u64 + 1));
    }
}
