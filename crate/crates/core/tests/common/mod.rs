//! Independent oracles: dense ±1 matrices read entry by entry from the
//! serialized upper triangle, and plain loops over them.

#![allow(dead_code, clippy::needless_range_loop)]

use semiclique::linear::GraphBuilder;
use semiclique::{generate, AdversaryStrategy, IndexSet, Instance, InstanceParams, SignedGraph};

pub type Dense = Vec<Vec<i64>>;

/// Dense matrix view with `+1` diagonal, decoded pair by pair from the
/// packed upper triangle.
pub fn dense(g: &SignedGraph) -> Dense {
    let n = g.n();
    let bytes = g.packed_upper_triangle();
    let mut a = vec![vec![-1i64; n]; n];
    let mut pair = 0usize;
    for i in 0..n {
        a[i][i] = 1;
        for j in i + 1..n {
            let bit = (bytes[pair / 8] >> (pair % 8)) & 1;
            if bit == 1 {
                a[i][j] = 1;
                a[j][i] = 1;
            }
            pair += 1;
        }
    }
    a
}

pub fn col(a: &Dense, v: usize) -> Vec<i64> {
    a.iter().map(|row| row[v]).collect()
}

pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn triple(a: &Dense, t: [usize; 3]) -> Vec<i64> {
    (0..a.len()).map(|w| a[w][t[0]] * a[w][t[1]] * a[w][t[2]]).collect()
}

pub fn aggregate(a: &Dense, b: &[[usize; 3]]) -> Vec<i64> {
    let mut out = vec![0i64; a.len()];
    for &t in b {
        for (o, x) in out.iter_mut().zip(triple(a, t)) {
            *o += x;
        }
    }
    out
}

pub fn restrict(x: &[i64], idx: &[usize]) -> Vec<i64> {
    idx.iter().map(|&i| x[i]).collect()
}

pub fn l1(x: &[i64]) -> i64 {
    x.iter().map(|v| v.abs()).sum()
}

pub fn degree(a: &Dense, v: usize) -> usize {
    (0..a.len()).filter(|&w| w != v && a[v][w] == 1).count()
}

/// `{v : 2 * <x, A^v> >= k}`.
pub fn threshold_set(a: &Dense, x: &[i64], k: usize) -> Vec<usize> {
    (0..a.len()).filter(|&v| 2 * dot(x, &col(a, v)) >= k as i64).collect()
}

pub fn post_process(a: &Dense, cand: &[usize], k: usize) -> Vec<usize> {
    let need = (3 * k).div_ceil(4);
    (0..a.len())
        .filter(|&v| cand.iter().filter(|&&w| w != v && a[v][w] == 1).count() >= need)
        .collect()
}

pub fn is_clique(a: &Dense, set: &[usize]) -> bool {
    set.iter().all(|&u| set.iter().all(|&v| u == v || a[u][v] == 1))
}

/// All maximum cliques by subset enumeration; only for `n <= 20`.
pub fn maximum_cliques(a: &Dense) -> Vec<Vec<usize>> {
    let n = a.len();
    assert!(n <= 20);
    let mut adj = vec![0u32; n];
    for (u, row) in a.iter().enumerate() {
        for (v, &x) in row.iter().enumerate() {
            if u != v && x == 1 {
                adj[u] |= 1 << v;
            }
        }
    }
    let mut best = 0;
    let mut found = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones();
        if size < best {
            continue;
        }
        let clique = (0..n).filter(|&u| mask >> u & 1 == 1).all(|u| mask & !(1 << u) & !adj[u] == 0);
        if !clique {
            continue;
        }
        if size > best {
            best = size;
            found.clear();
        }
        found.push((0..n).filter(|&u| mask >> u & 1 == 1).collect());
    }
    found
}

pub fn random(n: usize, k: usize, seed: u64) -> Instance {
    generate(&InstanceParams::new(n, k, seed, AdversaryStrategy::Random)).unwrap()
}

/// `generate(n=8, k=4, seed=42, random)` with vertices relabeled so the
/// planted set becomes `{0, 1, 2, 3}`: planted vertices first, each group
/// keeping its original order.
pub fn tiny8() -> Instance {
    let base = random(8, 4, 42);
    let order: Vec<usize> = base.planted().iter().chain(base.outside().iter()).collect();
    let g = base.graph();
    let mut b = GraphBuilder::new(8);
    for i in 0..8 {
        for j in i + 1..8 {
            b.set_edge(i, j, g.has_edge(order[i], order[j]));
        }
    }
    Instance::from_parts(b.build(), IndexSet::range(4), base.params().clone())
}
