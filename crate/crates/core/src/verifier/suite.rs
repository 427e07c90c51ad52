use std::fmt;
use std::str::FromStr;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::instance::adversary::sample_distinct_triples;
use crate::instance::{AdversaryStrategy, Instance};
use crate::rng;

use super::checks::*;
use super::report::BoundReport;

/// Named checks with the sample sizes used by `verify` and sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// Bad pair and bad triple counts for sampled outside vertices.
    Bad,
    L1,
    Gaussian,
    Boring,
    Holder,
    Diamond,
    Symmetrization,
}

pub const BAD_VERTICES: usize = 32;
pub const BAD_TRIPLE_SAMPLES: usize = 100_000;
pub const L1_SIZES: [usize; 4] = [1, 4, 16, 64];
pub const GAUSSIAN_SIZES: [usize; 2] = [100, 1000];

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Bad,
        Check::L1,
        Check::Gaussian,
        Check::Boring,
        Check::Holder,
        Check::Diamond,
        Check::Symmetrization,
    ];

    /// Whether the check can run on `i` at all.
    pub fn applies_to(self, i: &Instance) -> bool {
        match self {
            Check::Holder => matches!(i.params().adversary, AdversaryStrategy::SignMatch { .. }),
            Check::Symmetrization => i.n() <= SYM_MAX_N,
            _ => i.k() < i.n(),
        }
    }

    pub fn run(self, i: &Instance, seed: u64) -> Result<Vec<BoundReport>> {
        if i.k() >= i.n() {
            return Err(Error::arg(format!("{self} needs vertices outside the planted set")));
        }
        let seed = rng::derive_seed(seed, &[&self.to_string()]);
        let (n, k) = (i.n(), i.k());
        let mut out = Vec::new();
        match self {
            Check::Bad => {
                let bound = (n as f64 / k as f64).powi(2);
                for v in sample_outside(i, BAD_VERTICES, seed) {
                    let pairs = bad_pairs(i, v)?;
                    out.push(BoundReport::new("bad_pairs", i, k, 1, pairs as f64, bound, 1.0));
                    let est = bad_triples_estimate(i, v, BAD_TRIPLE_SAMPLES, seed)?;
                    out.push(BoundReport::new(
                        "bad_triples",
                        i,
                        est.evaluated as usize,
                        1,
                        est.estimate,
                        bound,
                        1.0,
                    ));
                }
            }
            Check::L1 => {
                for b in L1_SIZES.into_iter().filter(|&b| b as u128 <= (k as u128).pow(3)) {
                    let stats = l1_aggregate_stats(i, b, 100, rng::derive_seed(seed, &[&b.to_string()]))?;
                    out.push(stats.mean_report);
                    out.push(stats.max_report);
                }
            }
            Check::Gaussian => {
                for m in GAUSSIAN_SIZES {
                    out.push(gaussian_max_stat(i, m, 50, rng::derive_seed(seed, &[&m.to_string()]))?);
                }
            }
            Check::Boring => out.push(boring_part_stat(i, None, 4, 100, seed)?.report),
            Check::Holder => {
                let pool = &i.trace().pool;
                if pool.is_empty() {
                    return Err(Error::arg("holder check needs a sign_match instance"));
                }
                for &v in &i.trace().victims {
                    out.push(holder_equality_check(i, v, pool)?.report);
                }
            }
            Check::Diamond => out.push(diamond_to_success(i, 101, usize::MAX, seed)?.report),
            Check::Symmetrization => {
                let pool = 16.min(k.pow(3));
                let mut r = rng::stream(seed, "sym_family");
                let family: Vec<_> = sample_distinct_triples(i.planted(), pool, &mut r)
                    .into_iter()
                    .map(|t| vec![t])
                    .collect();
                out.push(sym_deviation_estimate(i, &family, 200, seed)?);
            }
        }
        Ok(out)
    }
}

/// Up to `count` distinct outside vertices, in increasing order.
pub fn sample_outside(i: &Instance, count: usize, seed: u64) -> Vec<usize> {
    let outside = i.outside();
    let mut picked: Vec<usize> = if count >= outside.len() {
        outside.into_vec()
    } else {
        let mut r = rng::stream(seed, "outside_sample");
        index::sample(&mut r, outside.len(), count)
            .into_iter()
            .map(|j| outside.as_slice()[j])
            .collect()
    };
    picked.sort_unstable();
    picked
}

/// Parses a comma-separated list such as `l1,holder`; `all` selects every check.
pub fn parse_checks(text: &str) -> Result<Vec<Check>> {
    if text.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    text.split(',').map(str::parse).collect()
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Bad => "bad",
            Check::L1 => "l1",
            Check::Gaussian => "gaussian",
            Check::Boring => "boring",
            Check::Holder => "holder",
            Check::Diamond => "diamond",
            Check::Symmetrization => "sym",
        })
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.to_string() == s.trim())
            .ok_or_else(|| Error::arg(format!("unknown check {:?}", s.trim())))
    }
}
