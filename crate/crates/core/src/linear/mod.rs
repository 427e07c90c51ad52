//! Bit-packed ±1 vectors and the signed adjacency matrix.
//!
//! Inner products are exact integers computed by XOR and popcount:
//! `<x, y> = n - 2 * hamming(x, y)`.

mod graph;
pub mod spc1;
mod vector;

pub use graph::{GraphBuilder, SignedGraph};
pub use vector::{IndexSet, IntVector, SignedVector};

pub(crate) use vector::{xor_popcount, WORD};

use crate::error::{Error, Result};

/// An ordered vertex triple `(u1, u2, u3)`; repeats are allowed.
pub type Triple = [usize; 3];

/// Largest accepted aggregate size; keeps `i32` coordinates exact.
pub const MAX_AGGREGATE: usize = 1 << 20;

pub fn column(g: &SignedGraph, v: usize) -> Result<SignedVector> {
    g.column(v)
}

pub fn inner(x: &SignedVector, y: &SignedVector) -> Result<i64> {
    x.inner(y)
}

pub fn triple_column(g: &SignedGraph, u1: usize, u2: usize, u3: usize) -> Result<SignedVector> {
    g.triple_column(u1, u2, u3)
}

pub fn degree(g: &SignedGraph, v: usize) -> Result<usize> {
    g.degree(v)
}

pub fn l1_norm(t: &IntVector) -> u64 {
    t.l1_norm()
}

/// `T · 1_B`: coordinatewise sum of the product columns of `triples`.
pub fn aggregate(g: &SignedGraph, triples: &[Triple]) -> Result<IntVector> {
    if triples.len() > MAX_AGGREGATE {
        return Err(Error::arg(format!(
            "aggregate over {} triples exceeds the cap of {MAX_AGGREGATE}",
            triples.len()
        )));
    }
    for t in triples {
        for &u in t {
            g.check_vertex(u)?;
        }
    }
    let n = g.n();
    // Count +1 entries per coordinate, then map count c to 2c - |B|.
    let mut plus = vec![0i32; n];
    for &[a, b, c] in triples {
        let words = g.triple_words(a, b, c);
        for (wi, &word) in words.iter().enumerate() {
            let base = wi * WORD;
            let end = (base + WORD).min(n);
            for (bit, p) in plus[base..end].iter_mut().enumerate() {
                *p += (word >> bit & 1) as i32;
            }
        }
    }
    let size = triples.len() as i32;
    Ok(IntVector::from(
        plus.into_iter().map(|c| 2 * c - size).collect::<Vec<_>>(),
    ))
}

/// `<T^{u1u2u3}, A^v>` without materializing either vector.
pub(crate) fn triple_inner(g: &SignedGraph, t: Triple, v: usize) -> i64 {
    let (a, b, c, d) = (g.row(t[0]), g.row(t[1]), g.row(t[2]), g.row(v));
    let diff: u32 = a
        .iter()
        .zip(b)
        .zip(c)
        .zip(d)
        .map(|(((w, x), y), z)| (w ^ x ^ y ^ z).count_ones())
        .sum();
    g.n() as i64 - 2 * i64::from(diff)
}
