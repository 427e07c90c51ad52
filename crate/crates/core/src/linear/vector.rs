use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Sorted, duplicate-free vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Builds a set from arbitrary-order indices, all of which must be `< n`.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::arg(format!("duplicate index {}", w[0])));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::arg(format!("index {last} out of range for length {n}")));
            }
        }
        Ok(IndexSet { indices })
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet { indices }
    }

    pub fn empty() -> Self {
        IndexSet::default()
    }

    pub fn range(n: usize) -> Self {
        IndexSet {
            indices: (0..n).collect(),
        }
    }

    /// Indices in `0..n` not in `self`.
    pub fn complement(&self, n: usize) -> Self {
        let mut out = Vec::with_capacity(n.saturating_sub(self.len()));
        let mut it = self.indices.iter().peekable();
        for i in 0..n {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        IndexSet { indices: out }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.indices
    }

    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        let (mut a, mut b) = (self.indices.iter().peekable(), other.indices.iter().peekable());
        let mut count = 0;
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    count += 1;
                    a.next();
                    b.next();
                }
            }
        }
        count
    }

    /// Bit mask over `0..n` with bit `i` set for members.
    pub fn mask(&self, n: usize) -> Vec<u64> {
        let mut words = vec![0u64; word_count(n)];
        for &i in &self.indices {
            words[i / WORD] |= 1 << (i % WORD);
        }
        words
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last >= n => Err(Error::arg(format!(
                "index {last} out of range for length {n}"
            ))),
            _ => Ok(()),
        }
    }

    /// Parses the comma-separated form produced by `Display`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(IndexSet::empty());
        }
        let indices = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad vertex index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(indices, n).map_err(|e| Error::Format(e.to_string()))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, i) in self.indices.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A vector in {+1, -1}^len, bit 1 meaning +1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedVector {
    len: usize,
    words: Vec<u64>,
}

impl SignedVector {
    pub fn all_ones(len: usize) -> Self {
        let mut words = vec![u64::MAX; word_count(len)];
        if !len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (len % WORD)) - 1;
            }
        }
        SignedVector { len, words }
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let mut words = vec![0u64; word_count(signs.len())];
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => words[i / WORD] |= 1 << (i % WORD),
                -1 => {}
                other => return Err(Error::arg(format!("coordinate {i} is {other}, not ±1"))),
            }
        }
        Ok(SignedVector {
            len: signs.len(),
            words,
        })
    }

    /// Wraps packed words; bits past `len` must be zero.
    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        debug_assert!(len.is_multiple_of(WORD) || words.last().is_none_or(|w| w >> (len % WORD) == 0));
        SignedVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> i8 {
        assert!(i < self.len, "coordinate {i} out of range for length {}", self.len);
        if self.words[i / WORD] >> (i % WORD) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn to_signs(&self) -> Vec<i8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Number of coordinates where the two vectors differ.
    pub fn hamming(&self, other: &SignedVector) -> Result<usize> {
        self.check_len(other)?;
        Ok(xor_popcount(&self.words, &other.words))
    }

    pub fn inner(&self, other: &SignedVector) -> Result<i64> {
        let d = self.hamming(other)?;
        Ok(self.len as i64 - 2 * d as i64)
    }

    /// Entrywise product.
    pub fn product(&self, other: &SignedVector) -> Result<SignedVector> {
        self.check_len(other)?;
        // +1·+1 and -1·-1 are +1: equal bits give a set bit.
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| !(a ^ b))
            .collect();
        if !self.len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (self.len % WORD)) - 1;
            }
        }
        Ok(SignedVector::from_words(self.len, words))
    }

    pub fn restrict(&self, idx: &IndexSet) -> Result<SignedVector> {
        idx.check_within(self.len)?;
        let mut words = vec![0u64; word_count(idx.len())];
        for (j, i) in idx.iter().enumerate() {
            if self.words[i / WORD] >> (i % WORD) & 1 == 1 {
                words[j / WORD] |= 1 << (j % WORD);
            }
        }
        Ok(SignedVector::from_words(idx.len(), words))
    }

    /// Sum of the coordinates.
    pub fn sum(&self) -> i64 {
        let ones: u64 = self.words.iter().map(|w| u64::from(w.count_ones())).sum();
        2 * ones as i64 - self.len as i64
    }

    fn check_len(&self, other: &SignedVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::arg(format!(
                "length mismatch: {} vs {}",
                self.len, other.len
            )));
        }
        Ok(())
    }
}

pub(crate) fn xor_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}

pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Integer-valued vector, e.g. a sum of product columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVector {
    values: Vec<i32>,
}

impl IntVector {
    pub fn zeros(len: usize) -> Self {
        IntVector {
            values: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i32 {
        self.values[i]
    }

    /// Adds `sign(x_w)` to every coordinate.
    pub fn add_signed(&mut self, x: &SignedVector) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::arg(format!(
                "length mismatch: {} vs {}",
                self.len(),
                x.len()
            )));
        }
        for (wi, &word) in x.words().iter().enumerate() {
            let base = wi * WORD;
            let end = (base + WORD).min(self.values.len());
            for (bit, v) in self.values[base..end].iter_mut().enumerate() {
                *v += ((word >> bit & 1) as i32) * 2 - 1;
            }
        }
        Ok(())
    }

    pub fn restrict(&self, idx: &IndexSet) -> Result<IntVector> {
        idx.check_within(self.len())?;
        Ok(IntVector {
            values: idx.iter().map(|i| self.values[i]).collect(),
        })
    }

    pub fn l1_norm(&self) -> u64 {
        self.values.iter().map(|v| u64::from(v.unsigned_abs())).sum()
    }

    /// `Σ_w self_w · x_w`.
    pub fn dot_signed(&self, x: &SignedVector) -> Result<i64> {
        if x.len() != self.len() {
            return Err(Error::arg(format!(
                "length mismatch: {} vs {}",
                self.len(),
                x.len()
            )));
        }
        Ok(self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| i64::from(v) * i64::from(x.get(i)))
            .sum())
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(other)
            .map(|(&v, &g)| f64::from(v) * g)
            .sum()
    }
}

impl From<Vec<i32>> for IntVector {
    fn from(values: Vec<i32>) -> Self {
        IntVector { values }
    }
}

impl From<&SignedVector> for IntVector {
    fn from(x: &SignedVector) -> Self {
        IntVector {
            values: x.to_signs().into_iter().map(i32::from).collect(),
        }
    }
}
