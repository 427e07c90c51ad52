use crate::error::{Error, Result};

use super::vector::{and_popcount, word_count, IndexSet, SignedVector, WORD};

/// Undirected simple graph viewed as a symmetric ±1 matrix with +1 diagonal.
///
/// Rows are stored bit-packed and include the diagonal bit, so a row is
/// exactly the matrix column `A^v`. The canonical serialized form is the
/// packed upper triangle (see [`SignedGraph::packed_upper_triangle`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SignedGraph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl SignedGraph {
    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.set_edge(u, v, true);
            }
        }
        b.build()
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Packed matrix column `A^v` (diagonal bit set). Panics if `v >= n`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.bit(u, v)
    }

    /// Matrix entry in {+1, -1}; the diagonal is +1.
    pub fn entry(&self, u: usize, v: usize) -> i8 {
        if self.bit(u, v) {
            1
        } else {
            -1
        }
    }

    fn bit(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::arg(format!("vertex {v} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    pub fn column(&self, v: usize) -> Result<SignedVector> {
        self.check_vertex(v)?;
        Ok(SignedVector::from_words(self.n, self.row(v).to_vec()))
    }

    /// Entrywise product of three columns.
    pub fn triple_column(&self, u1: usize, u2: usize, u3: usize) -> Result<SignedVector> {
        self.check_vertex(u1)?;
        self.check_vertex(u2)?;
        self.check_vertex(u3)?;
        Ok(SignedVector::from_words(self.n, self.triple_words(u1, u2, u3)))
    }

    /// Product of three ±1 signs is +1 iff an odd number of them are +1,
    /// which for bits is a plain XOR.
    pub(crate) fn triple_words(&self, u1: usize, u2: usize, u3: usize) -> Vec<u64> {
        let (a, b, c) = (self.row(u1), self.row(u2), self.row(u3));
        a.iter().zip(b).zip(c).map(|((x, y), z)| x ^ y ^ z).collect()
    }

    /// Number of neighbours, self excluded.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.row_popcount(v) - 1)
    }

    fn row_popcount(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside the set given by `mask`.
    pub(crate) fn neighbors_in_mask(&self, v: usize, mask: &[u64]) -> usize {
        let with_self = and_popcount(self.row(v), mask);
        let self_in = mask[v / WORD] >> (v % WORD) & 1;
        with_self - self_in as usize
    }

    pub fn neighbors_in(&self, v: usize, set: &IndexSet) -> Result<usize> {
        self.check_vertex(v)?;
        set.check_within(self.n)?;
        Ok(self.neighbors_in_mask(v, &set.mask(self.n)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.row_popcount(v) - 1).sum::<usize>() / 2
    }

    /// Whether every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &IndexSet) -> bool {
        if set.check_within(self.n).is_err() {
            return false;
        }
        let mask = set.mask(self.n);
        set.iter()
            .all(|v| self.neighbors_in_mask(v, &mask) + 1 == set.len())
    }

    /// Number of bytes in the packed upper triangle: ceil(n(n-1)/2 / 8).
    pub fn packed_len(n: usize) -> usize {
        (n * n.saturating_sub(1) / 2).div_ceil(8)
    }

    /// Upper triangle `(i, j), i < j`, in lexicographic order, one bit per
    /// pair, least significant bit first within each byte.
    pub fn packed_upper_triangle(&self) -> Vec<u8> {
        let mut out = vec![0u8; Self::packed_len(self.n)];
        let mut pos = 0usize;
        for i in 0..self.n {
            let row = self.row(i);
            for j in i + 1..self.n {
                if row[j / WORD] >> (j % WORD) & 1 == 1 {
                    out[pos / 8] |= 1 << (pos % 8);
                }
                pos += 1;
            }
        }
        out
    }

    pub fn from_packed_upper_triangle(n: usize, bytes: &[u8]) -> Result<Self> {
        let expected = Self::packed_len(n);
        if bytes.len() != expected {
            return Err(Error::Format(format!(
                "packed triangle for n = {n} needs {expected} bytes, got {}",
                bytes.len()
            )));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if !pairs.is_multiple_of(8) && bytes[expected - 1] >> (pairs % 8) != 0 {
            return Err(Error::Format("nonzero padding bits after last pair".into()));
        }
        let mut b = GraphBuilder::new(n);
        let mut pos = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if bytes[pos / 8] >> (pos % 8) & 1 == 1 {
                    b.set_edge(i, j, true);
                }
                pos += 1;
            }
        }
        Ok(b.build())
    }
}

/// Mutable edge set used to assemble a [`SignedGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let stride = word_count(n);
        let mut rows = vec![0u64; n * stride];
        for v in 0..n {
            rows[v * stride + v / WORD] |= 1 << (v % WORD);
        }
        GraphBuilder { n, stride, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "self-loops are not representable");
        for (a, b) in [(u, v), (v, u)] {
            let word = &mut self.rows[a * self.stride + b / WORD];
            if present {
                *word |= 1 << (b % WORD);
            } else {
                *word &= !(1 << (b % WORD));
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn build(self) -> SignedGraph {
        SignedGraph {
            n: self.n,
            stride: self.stride,
            rows: self.rows,
        }
    }
}

impl From<SignedGraph> for GraphBuilder {
    fn from(g: SignedGraph) -> Self {
        GraphBuilder {
            n: g.n,
            stride: g.stride,
            rows: g.rows,
        }
    }
}
