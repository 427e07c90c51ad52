use std::fmt;

use crate::error::{Error, Result};
use crate::linear::IndexSet;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Acceptance threshold `k * num / den` on inner products.
    pub threshold_num: u64,
    pub threshold_den: u64,
    /// Size slack: pruned candidates have at most `(1 + gamma) k` vertices.
    pub gamma: f64,
    /// Sampled tuples; `None` uses the solver's default budget.
    pub sample_budget: Option<usize>,
    /// Two kept candidates overlap in fewer than `k / overlap_den` vertices.
    pub overlap_den: u64,
    pub power_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            threshold_num: 1,
            threshold_den: 2,
            gamma: 0.1,
            sample_budget: None,
            overlap_den: 2,
            power_iters: 100,
        }
    }
}

impl SolverConfig {
    pub fn check(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 0.25) {
            return Err(Error::arg(format!("gamma = {} must lie in (0, 1/4)", self.gamma)));
        }
        if self.threshold_num == 0 || self.threshold_den == 0 || self.overlap_den == 0 {
            return Err(Error::arg("thresholds must be positive"));
        }
        Ok(())
    }

    pub(crate) fn accepts(&self, inner: i64, k: usize) -> bool {
        i128::from(inner) * i128::from(self.threshold_den)
            >= k as i128 * i128::from(self.threshold_num)
    }

    /// `ceil(10 (n/k)^3)` unless overridden.
    pub fn triple_budget(&self, n: usize, k: usize) -> usize {
        self.sample_budget.unwrap_or_else(|| {
            let (n, k) = (n as u128, k as u128);
            (10 * n * n * n).div_ceil(k * k * k) as usize
        })
    }

    /// `ceil(10 n/k)` unless overridden.
    pub fn single_budget(&self, n: usize, k: usize) -> usize {
        self.sample_budget.unwrap_or_else(|| (10 * n).div_ceil(k))
    }
}

/// Guesses of the planted set, in the order they were produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateList {
    sets: Vec<IndexSet>,
}

impl CandidateList {
    /// Drops empty sets.
    pub fn new(sets: Vec<IndexSet>) -> Self {
        CandidateList {
            sets: sets.into_iter().filter(|s| !s.is_empty()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IndexSet> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &IndexSet) -> bool {
        self.sets.iter().any(|s| s == set)
    }

    pub fn as_slice(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn into_vec(self) -> Vec<IndexSet> {
        self.sets
    }
}

/// One set per line, comma-separated sorted indices.
impl fmt::Display for CandidateList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
