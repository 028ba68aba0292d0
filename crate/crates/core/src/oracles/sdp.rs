use super::{path_masks, MinimalPathSet};
use crate::error::Result;
use crate::network::{BinaryStateNetwork, Reliability};

/// Sum of disjoint products: term `i` is the probability that path `i` works
/// while every earlier path has at least one failed arc outside path `i`.
///
/// Each "at least one fails" condition is split into mutually exclusive
/// cases (the first `t - 1` arcs work and arc `t` fails) and the remaining
/// conditions are conditioned on that assignment recursively.
pub fn sdp_reliability(mps: &MinimalPathSet, net: &BinaryStateNetwork) -> Result<Reliability> {
    let masks = path_masks(mps, net)?;
    let p: Vec<f64> = net.arcs().iter().map(|a| a.p).collect();
    let mut total = 0.0;
    for (i, &path) in masks.iter().enumerate() {
        let works: f64 = bits(path).map(|k| p[k]).product();
        let earlier: Vec<u64> = masks[..i].iter().map(|&m| m & !path).collect();
        total += works * all_broken(earlier, &p);
    }
    Ok(total)
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            k
        })
    })
}

/// Probability that each arc set contains at least one failed arc. All arcs
/// in `sets` are still free.
fn all_broken(mut sets: Vec<u64>, p: &[f64]) -> f64 {
    // A set with every arc working violates its condition outright.
    if sets.contains(&0) {
        return 0.0;
    }
    // A superset's condition is implied by its subset's.
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&t| t & s == t) {
            kept.push(s);
        }
    }
    let Some((&first, rest)) = kept.split_first() else {
        return 1.0;
    };

    let mut total = 0.0;
    let mut prefix = 1.0;
    let mut working = 0u64;
    for k in bits(first) {
        let failed = 1u64 << k;
        let branch: Vec<u64> = rest
            .iter()
            .filter(|&&s| s & failed == 0)
            .map(|&s| s & !working)
            .collect();
        total += prefix * (1.0 - p[k]) * all_broken(branch, p);
        prefix *= p[k];
        working |= failed;
    }
    total
}
