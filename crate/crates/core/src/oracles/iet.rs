use super::{path_masks, MinimalPathSet};
use crate::error::Result;
use crate::network::{BinaryStateNetwork, Reliability};

/// Inclusion-exclusion over the path events: the probability that a set of
/// paths all work is the product of `p` over the union of their arcs.
///
/// Walks all `2^π - 1` non-empty subsets, extending the arc union and its
/// probability incrementally as each path is added.
pub fn iet_reliability(mps: &MinimalPathSet, net: &BinaryStateNetwork) -> Result<Reliability> {
    let masks = path_masks(mps, net)?;
    let p: Vec<f64> = net.arcs().iter().map(|a| a.p).collect();
    let mut total = 0.0;
    add_subsets(&masks, &p, 0, 0, 1.0, false, &mut total);
    Ok(total)
}

fn add_subsets(
    masks: &[u64],
    p: &[f64],
    from: usize,
    union: u64,
    prob: f64,
    negative: bool,
    total: &mut f64,
) {
    for j in from..masks.len() {
        let mut fresh = masks[j] & !union;
        let mut pr = prob;
        while fresh != 0 {
            pr *= p[fresh.trailing_zeros() as usize];
            fresh &= fresh - 1;
        }
        // Odd-sized subsets add, even-sized subtract.
        if negative {
            *total -= pr;
        } else {
            *total += pr;
        }
        add_subsets(masks, p, j + 1, union | masks[j], pr, !negative, total);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Arc;
    use crate::oracles::find_all_minimal_paths;

    #[test]
    fn reduced_example_term_by_term() {
        let net = BinaryStateNetwork::new(
            4,
            vec![
                Arc::new(1, 2, 0.8),
                Arc::new(1, 3, 0.9),
                Arc::new(2, 3, 0.7),
                Arc::new(2, 4, 0.8),
                Arc::new(3, 4, 0.9),
            ],
        )
        .unwrap();
        let mps = find_all_minimal_paths(&net);
        let expanded = 0.64 + 0.81 + 0.504 - 0.5184 - 0.4032 - 0.4536 + 0.36288;
        let r = iet_reliability(&mps, &net).unwrap();
        assert!((r - expanded).abs() < 1e-12);
        assert!((r - 0.94168).abs() < 1e-12);
    }

    #[test]
    fn small_unions() {
        let net =
            BinaryStateNetwork::new(2, vec![Arc::new(1, 2, 0.8)]).unwrap();
        let mps = MinimalPathSet::from_paths(vec![vec![0]]);
        assert_eq!(iet_reliability(&mps, &net).unwrap(), 0.8);

        // Arc-disjoint paths with probabilities 0.6 and 0.7 (the second
        // has a certain arc).
        let net = BinaryStateNetwork::new(
            3,
            vec![Arc::new(1, 3, 0.6), Arc::new(1, 2, 0.7), Arc::new(2, 3, 1.0)],
        )
        .unwrap();
        let mps = find_all_minimal_paths(&net);
        let r = iet_reliability(&mps, &net).unwrap();
        assert!((r - (0.6 + 0.7 - 0.6 * 0.7)).abs() < 1e-15);
    }

    #[test]
    fn too_many_paths() {
        let mps = MinimalPathSet::from_paths(vec![vec![0]; 26]);
        let net = BinaryStateNetwork::new(2, vec![Arc::new(1, 2, 0.8)]).unwrap();
        assert!(iet_reliability(&mps, &net).is_err());
    }
}
