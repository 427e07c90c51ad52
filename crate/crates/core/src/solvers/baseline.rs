//! Degree and spectral baselines.

use std::cmp::Reverse;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linear::{IndexSet, SignedGraph, WORD};
use crate::rng;

use super::config::SolverConfig;
use super::refine::post_process;

fn check_k(g: &SignedGraph, k: usize) -> Result<()> {
    if k > g.n() {
        return Err(Error::arg(format!("k = {k} exceeds n = {}", g.n())));
    }
    Ok(())
}

/// The `k` highest-degree vertices, ties to the smaller index.
pub fn solve_degree(g: &SignedGraph, k: usize) -> Result<IndexSet> {
    check_k(g, k)?;
    let mut order: Vec<(Reverse<usize>, usize)> = (0..g.n())
        .map(|v| (Reverse(g.degree(v).expect("in range")), v))
        .collect();
    order.sort_unstable();
    IndexSet::new(order.into_iter().take(k).map(|(_, v)| v).collect(), g.n())
}

/// Top eigenvector of the ±1 matrix by power iteration, `k` largest
/// magnitudes, then one post-processing pass.
pub fn solve_spectral(g: &SignedGraph, k: usize, cfg: &SolverConfig) -> Result<IndexSet> {
    check_k(g, k)?;
    let n = g.n();
    if n == 0 {
        return Ok(IndexSet::empty());
    }
    let mut r = rng::stream(0, "spectral");
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut r)).collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    for _ in 0..cfg.power_iters {
        signed_matvec(g, &x, &mut y);
        std::mem::swap(&mut x, &mut y);
        if !normalize(&mut x) {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].abs().total_cmp(&x[a].abs()).then(a.cmp(&b)));
    order.truncate(k);
    let top = IndexSet::new(order, n)?;
    Ok(post_process(g, &top, k))
}

fn normalize(x: &mut [f64]) -> bool {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// `y = A x` for the ±1 matrix. Uses per-byte subset-sum tables so each
/// row costs one lookup per 8 columns.
pub(crate) fn signed_matvec(g: &SignedGraph, x: &[f64], y: &mut [f64]) {
    let n = g.n();
    let groups = n.div_ceil(8);
    let mut table = vec![0.0f64; groups * 256];
    for gi in 0..groups {
        let t = &mut table[gi * 256..(gi + 1) * 256];
        for b in 1usize..256 {
            let low = b.trailing_zeros() as usize;
            let col = gi * 8 + low;
            let add = if col < n { x[col] } else { 0.0 };
            t[b] = t[b & (b - 1)] + add;
        }
    }
    let total: f64 = x.iter().sum();
    let bytes_per_word = WORD / 8;
    for (i, out) in y.iter_mut().enumerate() {
        let mut plus = 0.0;
        for (wi, &word) in g.row(i).iter().enumerate() {
            for j in 0..bytes_per_word {
                let gi = wi * bytes_per_word + j;
                if gi >= groups {
                    break;
                }
                let byte = (word >> (8 * j)) as usize & 0xff;
                plus += table[gi * 256 + byte];
            }
        }
        // entries +1 on set bits, -1 elsewhere
        *out = 2.0 * plus - total;
    }
}
