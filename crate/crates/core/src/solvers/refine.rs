//! Neighbour-count post-processing and list pruning.

use log::warn;

use crate::linear::{IndexSet, SignedGraph};

use super::config::{CandidateList, SolverConfig};

/// `ceil(3k/4)`: midway between the neighbour counts of clique members and
/// of outsiders for a candidate that is close to the clique.
pub fn post_process_threshold(k: usize) -> usize {
    (3 * k).div_ceil(4)
}

/// All vertices with at least `ceil(3k/4)` neighbours in `candidate`.
pub fn post_process(g: &SignedGraph, candidate: &IndexSet, k: usize) -> IndexSet {
    let n = g.n();
    let mask = candidate.mask(n);
    let threshold = post_process_threshold(k);
    IndexSet::from_sorted_unchecked(
        (0..n)
            .filter(|&v| g.neighbors_in_mask(v, &mask) >= threshold)
            .collect(),
    )
}

const TRIM_ROUNDS: usize = 3;

/// Repeatedly drops vertices missing two or more internal neighbours.
pub fn trim_to_clique(g: &SignedGraph, set: &IndexSet) -> IndexSet {
    let mut current = set.clone();
    for _ in 0..TRIM_ROUNDS {
        let size = current.len();
        if size < 3 {
            break;
        }
        let mask = current.mask(g.n());
        let kept: Vec<usize> = current
            .iter()
            .filter(|&v| g.neighbors_in_mask(v, &mask) + 2 >= size)
            .collect();
        if kept.len() == size {
            break;
        }
        current = IndexSet::from_sorted_unchecked(kept);
    }
    current
}

pub fn max_list_len(n: usize, k: usize) -> usize {
    2 * n / k
}

/// Keeps trimmed cliques of size in `[k, (1 + gamma) k]`, greedily in list
/// order, each overlapping every earlier kept one in fewer than
/// `k / overlap_den` vertices.
pub fn prune_list(
    cands: &CandidateList,
    g: &SignedGraph,
    k: usize,
    cfg: &SolverConfig,
) -> CandidateList {
    let max_size = ((1.0 + cfg.gamma) * k as f64).floor() as usize;
    let mut kept: Vec<IndexSet> = Vec::new();
    for cand in cands.iter() {
        if cand.len() < k || kept.iter().any(|s| s == cand) {
            continue;
        }
        let trimmed = trim_to_clique(g, cand);
        if trimmed.len() < k || trimmed.len() > max_size || !g.is_clique(&trimmed) {
            continue;
        }
        let disjoint_enough = kept.iter().all(|s| {
            (s.intersection_len(&trimmed) as u64) * cfg.overlap_den < k as u64
        });
        if disjoint_enough {
            kept.push(trimmed);
        }
    }
    let cap = max_list_len(g.n(), k);
    if kept.len() > cap {
        warn!(
            "pruned list has {} candidates, truncating to 2n/k = {cap}",
            kept.len()
        );
        kept.truncate(cap);
    }
    CandidateList::new(kept)
}
