//! Inner-product candidates from sampled vertices and triples.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linear::{xor_popcount, IndexSet, SignedGraph, Triple};
use crate::rng;

use super::config::{CandidateList, SolverConfig};
use super::refine::{post_process, prune_list};

/// Vertices whose column has inner product at least the threshold with
/// the packed probe vector.
fn threshold_scan(g: &SignedGraph, probe: &[u64], k: usize, cfg: &SolverConfig) -> IndexSet {
    let n = g.n() as i64;
    IndexSet::from_sorted_unchecked(
        (0..g.n())
            .filter(|&v| {
                let inner = n - 2 * xor_popcount(probe, g.row(v)) as i64;
                cfg.accepts(inner, k)
            })
            .collect(),
    )
}

/// `S_u`: vertices `v` with `<A^u, A^v> >= k/2` (by default).
pub fn candidate_single(g: &SignedGraph, k: usize, u: usize, cfg: &SolverConfig) -> Result<IndexSet> {
    g.check_vertex(u)?;
    Ok(threshold_scan(g, g.row(u), k, cfg))
}

/// `S_{u1u2u3}`: vertices `v` with `<A^u1 ⊙ A^u2 ⊙ A^u3, A^v> >= k/2`.
pub fn candidate_triple(
    g: &SignedGraph,
    k: usize,
    t: Triple,
    cfg: &SolverConfig,
) -> Result<IndexSet> {
    for u in t {
        g.check_vertex(u)?;
    }
    Ok(threshold_scan(g, &g.triple_words(t[0], t[1], t[2]), k, cfg))
}

fn check_solver_args(g: &SignedGraph, k: usize, cfg: &SolverConfig) -> Result<()> {
    cfg.check()?;
    if k < 4 {
        return Err(Error::arg(format!("k = {k} is below the minimum of 4")));
    }
    if k > g.n() {
        return Err(Error::arg(format!("k = {k} exceeds n = {}", g.n())));
    }
    Ok(())
}

/// The triple drawn for sample `index` under `seed`.
pub fn sampled_triple(n: usize, seed: u64, index: u64) -> Triple {
    let mut r = rng::indexed(seed, index);
    [r.random_range(0..n), r.random_range(0..n), r.random_range(0..n)]
}

pub fn sampled_vertex(n: usize, seed: u64, index: u64) -> usize {
    rng::indexed(seed, index).random_range(0..n)
}

/// Post-processed triple candidates for samples `0..budget`, unpruned and
/// in sample order (empty results included).
pub fn triple_candidates(
    g: &SignedGraph,
    k: usize,
    cfg: &SolverConfig,
    seed: u64,
    budget: usize,
) -> Result<Vec<IndexSet>> {
    check_solver_args(g, k, cfg)?;
    let n = g.n();
    Ok((0..budget as u64)
        .into_par_iter()
        .map(|i| {
            let t = sampled_triple(n, seed, i);
            let raw = threshold_scan(g, &g.triple_words(t[0], t[1], t[2]), k, cfg);
            post_process(g, &raw, k)
        })
        .collect())
}

pub fn single_candidates(
    g: &SignedGraph,
    k: usize,
    cfg: &SolverConfig,
    seed: u64,
    budget: usize,
) -> Result<Vec<IndexSet>> {
    check_solver_args(g, k, cfg)?;
    let n = g.n();
    Ok((0..budget as u64)
        .into_par_iter()
        .map(|i| {
            let u = sampled_vertex(n, seed, i);
            post_process(g, &threshold_scan(g, g.row(u), k, cfg), k)
        })
        .collect())
}

/// Triple-sampling recovery: `ceil(10 (n/k)^3)` samples by default, each
/// post-processed, then pruned to a short list of nearly disjoint cliques.
pub fn solve_semirandom(
    g: &SignedGraph,
    k: usize,
    cfg: &SolverConfig,
    seed: u64,
) -> Result<CandidateList> {
    let budget = cfg.triple_budget(g.n(), k);
    let raw = triple_candidates(g, k, cfg, seed, budget)?;
    Ok(prune_list(&CandidateList::new(raw), g, k, cfg))
}

/// Single-vertex variant with `ceil(10 n/k)` samples by default.
pub fn solve_single_full(
    g: &SignedGraph,
    k: usize,
    cfg: &SolverConfig,
    seed: u64,
) -> Result<CandidateList> {
    let budget = cfg.single_budget(g.n(), k);
    let raw = single_candidates(g, k, cfg, seed, budget)?;
    Ok(prune_list(&CandidateList::new(raw), g, k, cfg))
}
