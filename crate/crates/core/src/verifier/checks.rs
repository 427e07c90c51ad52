use std::f64::consts::PI;

use log::debug;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::instance::adversary::sample_distinct_triples;
use crate::instance::{resample, AdversaryStrategy, Instance};
use crate::linear::{aggregate, triple_inner, IndexSet, IntVector, Triple, MAX_AGGREGATE, WORD};
use crate::rng::{self, StreamRng};

use super::report::BoundReport;

/// Above this many triples in `S^3` the bad-triple count is sampled.
pub const EXACT_TRIPLE_LIMIT: u128 = 1_000_000;
/// Constant on deviation terms (max ℓ¹ draw, boring part).
pub const DEVIATION_CONSTANT: f64 = 10.0;
/// Constant in the union bound for Gaussian maxima.
pub const GAUSSIAN_CONSTANT: f64 = 2.0;
/// Allowed slack between the two sides of the symmetrization inequality.
pub const SYMMETRIZATION_SLACK: f64 = 3.0;
pub const SYM_MAX_N: usize = 256;
pub const SYM_MAX_FAMILY: usize = 10_000;

fn bad(inner: i64, k: usize) -> bool {
    2 * inner >= k as i64
}

fn check_outside(i: &Instance, v: usize) -> Result<()> {
    i.graph().check_vertex(v)?;
    if i.planted().contains(v) {
        return Err(Error::arg(format!("vertex {v} is in the planted set")));
    }
    Ok(())
}

fn random_member(i: &Instance, r: &mut StreamRng) -> usize {
    let s = i.planted().as_slice();
    s[r.random_range(0..s.len())]
}

fn random_triple(i: &Instance, r: &mut StreamRng) -> Triple {
    [random_member(i, r), random_member(i, r), random_member(i, r)]
}

fn random_outside(outside: &IndexSet, r: &mut StreamRng) -> usize {
    outside.as_slice()[r.random_range(0..outside.len())]
}

/// Number of `u in S` with `<A^u, A^v> >= k/2`.
pub fn bad_pairs(i: &Instance, v: usize) -> Result<usize> {
    check_outside(i, v)?;
    let g = i.graph();
    let col = g.column(v)?;
    Ok(i.planted()
        .iter()
        .filter(|&u| bad(g.column(u).expect("planted in range").inner(&col).expect("same n"), i.k()))
        .count())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleEstimate {
    /// Estimated number of bad triples in `S^3`.
    pub estimate: f64,
    pub bad: u64,
    pub evaluated: u64,
    pub exact: bool,
}

/// Number of `(u1, u2, u3) in S^3` whose product column has inner product
/// at least `k/2` with `A^v`; exact when `k^3 <= 10^6`, otherwise `k^3`
/// times the bad fraction among `m` uniform samples.
pub fn bad_triples_estimate(i: &Instance, v: usize, m: usize, seed: u64) -> Result<TripleEstimate> {
    check_outside(i, v)?;
    if m == 0 {
        return Err(Error::arg("sample size m must be at least 1"));
    }
    let g = i.graph();
    let k = i.k();
    let total = (k as u128).pow(3);
    let s = i.planted().as_slice();
    if total <= EXACT_TRIPLE_LIMIT {
        let mut count = 0u64;
        for &a in s {
            for &b in s {
                for &c in s {
                    count += u64::from(bad(triple_inner(g, [a, b, c], v), k));
                }
            }
        }
        return Ok(TripleEstimate {
            estimate: count as f64,
            bad: count,
            evaluated: total as u64,
            exact: true,
        });
    }
    let mut r = rng::stream(rng::derive_seed(seed, &["bad_triples", &v.to_string()]), "triples");
    let count = (0..m)
        .filter(|_| bad(triple_inner(g, random_triple(i, &mut r), v), k))
        .count() as u64;
    Ok(TripleEstimate {
        estimate: total as f64 * count as f64 / m as f64,
        bad: count,
        evaluated: m as u64,
        exact: false,
    })
}

/// `T_{V\S} 1_B` as an integer vector indexed like the outside set.
pub fn outside_aggregate(i: &Instance, triples: &[Triple]) -> Result<IntVector> {
    aggregate(i.graph(), triples)?.restrict(&i.outside())
}

#[derive(Clone, Debug, PartialEq)]
pub struct L1Stats {
    pub draws: Vec<u64>,
    pub mean: f64,
    pub max: u64,
    /// Mean against `(n-k) sqrt|B|`.
    pub mean_report: BoundReport,
    /// Max against `(n-k) sqrt|B| + 10 |B| sqrt(3 (n-k) ln k)`.
    pub max_report: BoundReport,
}

pub fn l1_mean_bound(n: usize, k: usize, b_size: usize) -> f64 {
    (n - k) as f64 * (b_size as f64).sqrt()
}

pub fn l1_max_bound(n: usize, k: usize, b_size: usize) -> f64 {
    let outside = (n - k) as f64;
    l1_mean_bound(n, k, b_size)
        + DEVIATION_CONSTANT * b_size as f64 * (3.0 * outside * (k as f64).ln()).sqrt()
}

/// ℓ¹ norm of `T_{V\S} 1_B` over `reps` uniform draws of `|B| = b_size`
/// distinct triples from `S^3`.
pub fn l1_aggregate_stats(i: &Instance, b_size: usize, reps: usize, seed: u64) -> Result<L1Stats> {
    if b_size == 0 || b_size > MAX_AGGREGATE {
        return Err(Error::arg(format!("b_size = {b_size} must lie in [1, 2^20]")));
    }
    if b_size as u128 > (i.k() as u128).pow(3) {
        return Err(Error::arg(format!("b_size = {b_size} exceeds k^3")));
    }
    if reps == 0 {
        return Err(Error::arg("reps must be at least 1"));
    }
    let mut r = rng::stream(seed, "l1_aggregate");
    let outside = i.outside();
    let draws = (0..reps)
        .map(|_| {
            let b = sample_distinct_triples(i.planted(), b_size, &mut r);
            Ok(aggregate(i.graph(), &b)?.restrict(&outside)?.l1_norm())
        })
        .collect::<Result<Vec<u64>>>()?;
    let mean = draws.iter().sum::<u64>() as f64 / reps as f64;
    let max = draws.iter().copied().max().unwrap_or(0);
    let (n, k) = (i.n(), i.k());
    Ok(L1Stats {
        mean_report: BoundReport::new("l1_mean", i, b_size, reps, mean, l1_mean_bound(n, k, b_size), 1.0),
        max_report: BoundReport::new("l1_max", i, b_size, reps, max as f64, l1_max_bound(n, k, b_size), 1.0),
        draws,
        mean,
        max,
    })
}

fn gaussian_vector(len: usize, r: &mut StreamRng) -> Vec<f64> {
    (0..len).map(|_| StandardNormal.sample(r)).collect()
}

/// `<g, T^t_{V\S}>` for a Gaussian vector indexed like the outside set.
fn gaussian_inner(i: &Instance, outside: &IndexSet, g: &[f64], t: Triple) -> f64 {
    let graph = i.graph();
    let (a, b, c) = (graph.row(t[0]), graph.row(t[1]), graph.row(t[2]));
    outside
        .iter()
        .zip(g)
        .map(|(w, &gw)| {
            let (wi, bit) = (w / WORD, w % WORD);
            if (a[wi] ^ b[wi] ^ c[wi]) >> bit & 1 == 1 {
                gw
            } else {
                -gw
            }
        })
        .sum()
}

pub fn gaussian_max_bound(n: usize, k: usize, m: usize) -> f64 {
    GAUSSIAN_CONSTANT * (2.0 * (n - k) as f64 * (m as f64).ln()).sqrt()
}

/// Mean over `reps` of `max_t <g, T^t_{V\S}>` with fresh `g` each rep and
/// `triples_for_rep(rep)` giving that rep's triples.
fn gaussian_max_mean(
    i: &Instance,
    reps: usize,
    seed: u64,
    mut triples_for_rep: impl FnMut(usize) -> Vec<Triple>,
) -> (f64, f64) {
    let outside = i.outside();
    let mut r = rng::stream(seed, rng::GAUSSIAN);
    let mut sum = 0.0;
    let mut coordinate_max = 0.0;
    for rep in 0..reps {
        let g = gaussian_vector(outside.len(), &mut r);
        let best = triples_for_rep(rep)
            .into_iter()
            .map(|t| gaussian_inner(i, &outside, &g, t))
            .fold(f64::NEG_INFINITY, f64::max);
        sum += best;
        coordinate_max += g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    }
    (sum / reps as f64, coordinate_max / reps as f64)
}

/// Mean of the maximum of `m_triples` correlated Gaussians
/// `<g, T^t_{V\S}>`, triples uniform from `S^3` per rep, against
/// `2 sqrt(2 (n-k) ln m)`.
pub fn gaussian_max_stat(i: &Instance, m_triples: usize, reps: usize, seed: u64) -> Result<BoundReport> {
    if m_triples < 2 || reps == 0 {
        return Err(Error::arg("gaussian_max_stat needs m_triples >= 2 and reps >= 1"));
    }
    let mut r = rng::stream(seed, "gaussian_triples");
    let (mean_max, coordinate_max) = gaussian_max_mean(i, reps, seed, |_| {
        (0..m_triples).map(|_| random_triple(i, &mut r)).collect()
    });
    let bound = gaussian_max_bound(i.n(), i.k(), m_triples);
    // Bounding through the largest coordinate is far weaker; logged only.
    debug!(
        "gaussian max {mean_max:.2} vs bound {bound:.2}; coordinate route (n-k) E max g_j = {:.2}",
        (i.n() - i.k()) as f64 * coordinate_max
    );
    Ok(BoundReport::new("gaussian_max", i, m_triples, reps, mean_max, bound, 1.0))
}

/// Mean of `max_t <g, T^t_{V\S}>` over fixed triples; the observed value of
/// the returned report is that mean.
pub fn gaussian_max_fixed(i: &Instance, triples: &[Triple], reps: usize, seed: u64) -> Result<BoundReport> {
    if triples.is_empty() || reps == 0 {
        return Err(Error::arg("gaussian_max_fixed needs triples and reps"));
    }
    for t in triples {
        for &u in t {
            i.graph().check_vertex(u)?;
        }
    }
    let (mean_max, _) = gaussian_max_mean(i, reps, seed, |_| triples.to_vec());
    let bound = gaussian_max_bound(i.n(), i.k(), triples.len().max(2));
    Ok(BoundReport::new("gaussian_max_fixed", i, triples.len(), reps, mean_max, bound, 1.0))
}

/// `(<t, A^v_{V\S}>, ||t||_1)` for `t = T_{V\S} 1_B`.
pub fn holder_sides(i: &Instance, v: usize, triples: &[Triple]) -> Result<(i64, u64)> {
    i.graph().check_vertex(v)?;
    let outside = i.outside();
    let t = outside_aggregate(i, triples)?;
    let col = i.graph().column(v)?.restrict(&outside)?;
    Ok((t.dot_signed(&col)?, t.l1_norm()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolderCheck {
    pub lhs: i64,
    pub rhs: u64,
    /// Sum of `|t_w|` over sign mismatches at coordinates the adversary did
    /// not control.
    pub defect: u64,
    pub holds: bool,
    pub report: BoundReport,
}

/// Exact accounting for a sign-matching victim: `lhs = rhs - 2 * defect`,
/// where only `v` itself and edges owned by earlier victims may disagree
/// in sign with `t`.
pub fn holder_equality_check(i: &Instance, v: usize, triples: &[Triple]) -> Result<HolderCheck> {
    if !matches!(i.params().adversary, AdversaryStrategy::SignMatch { .. }) {
        return Err(Error::arg("holder equality needs a sign_match instance"));
    }
    let victims = &i.trace().victims;
    let position = victims
        .iter()
        .position(|&x| x == v)
        .ok_or_else(|| Error::arg(format!("vertex {v} is not a recorded victim")))?;
    let uncontrolled: Vec<usize> = victims[..=position].to_vec();

    let outside = i.outside();
    let t = outside_aggregate(i, triples)?;
    let col = i.graph().column(v)?.restrict(&outside)?;
    let lhs = t.dot_signed(&col)?;
    let rhs = t.l1_norm();
    let defect: u64 = outside
        .iter()
        .enumerate()
        .filter(|&(_, w)| uncontrolled.contains(&w))
        .filter(|&(j, _)| i64::from(t.get(j)) * i64::from(col.get(j)) < 0)
        .map(|(j, _)| u64::from(t.get(j).unsigned_abs()))
        .sum();
    let expected = rhs as i64 - 2 * defect as i64;
    let holds = lhs == expected;
    let report = BoundReport::new("holder_equality", i, triples.len(), 1, lhs as f64, expected as f64, 1.0)
        .with_pass(holds);
    Ok(HolderCheck {
        lhs,
        rhs,
        defect,
        holds,
        report,
    })
}

/// `(<T_S 1_B, A^v_S>, |B| * sum_{w in S} A^v_w)`; equal whenever
/// `B ⊆ S^3` because product columns are all-ones on `S`.
pub fn boring_part_identity(i: &Instance, triples: &[Triple], v: usize) -> Result<(i64, i64)> {
    i.graph().check_vertex(v)?;
    let planted = i.planted();
    let t = aggregate(i.graph(), triples)?.restrict(planted)?;
    let col = i.graph().column(v)?.restrict(planted)?;
    Ok((t.dot_signed(&col)?, triples.len() as i64 * col.sum()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoringStats {
    pub identity_failures: usize,
    /// `sum_{w in S} A^v_w` per rep.
    pub sums: Vec<i64>,
    pub within_bound: usize,
    pub report: BoundReport,
}

pub fn boring_bound(n: usize, k: usize) -> f64 {
    DEVIATION_CONSTANT * (k as f64 * (n as f64).ln()).sqrt()
}

/// Checks the boring-part identity on `reps` draws of `B` and `v` (or the
/// fixed `v`), and how often `|sum_{w in S} A^v_w| <= 10 sqrt(k ln n)`.
/// Passes with no identity failures and at least 99% of reps in bound.
pub fn boring_part_stat(
    i: &Instance,
    v: Option<usize>,
    b_size: usize,
    reps: usize,
    seed: u64,
) -> Result<BoringStats> {
    if let Some(v) = v {
        check_outside(i, v)?;
    }
    if reps == 0 || b_size == 0 || b_size > MAX_AGGREGATE {
        return Err(Error::arg("boring_part_stat needs reps >= 1 and 1 <= b_size <= 2^20"));
    }
    let outside = i.outside();
    if outside.is_empty() && v.is_none() {
        return Err(Error::arg("no outside vertices to sample"));
    }
    let mut r = rng::stream(seed, "boring");
    let bound = boring_bound(i.n(), i.k());
    let mut failures = 0;
    let mut sums = Vec::with_capacity(reps);
    for _ in 0..reps {
        let vertex = v.unwrap_or_else(|| random_outside(&outside, &mut r));
        let b: Vec<Triple> = (0..b_size).map(|_| random_triple(i, &mut r)).collect();
        let (lhs, rhs) = boring_part_identity(i, &b, vertex)?;
        failures += usize::from(lhs != rhs);
        sums.push(rhs / b_size as i64);
    }
    let within = sums.iter().filter(|s| s.unsigned_abs() as f64 <= bound).count();
    let worst = sums.iter().map(|s| s.unsigned_abs()).max().unwrap_or(0) as f64;
    let pass = failures == 0 && within * 100 >= reps * 99;
    let report = BoundReport::new("boring_part", i, b_size, reps, worst, bound, 1.0).with_pass(pass);
    Ok(BoringStats {
        identity_failures: failures,
        sums,
        within_bound: within,
        report,
    })
}

/// Compares `E_A[max_B (||t||_1 - E_A ||t||_1)]` with
/// `sqrt(2 pi) E_A E_g [max_B <g, t>]` by resampling the random edges for
/// the fixed planted set. `E_A ||t||_1` comes from an independent batch of
/// `reps` resamples. The report's ratio is lhs / rhs and passes at 3.
pub fn sym_deviation_estimate(
    i: &Instance,
    family: &[Vec<Triple>],
    reps: usize,
    seed: u64,
) -> Result<BoundReport> {
    if i.n() > SYM_MAX_N {
        return Err(Error::arg(format!("n = {} exceeds {SYM_MAX_N}", i.n())));
    }
    if family.is_empty() || family.len() > SYM_MAX_FAMILY {
        return Err(Error::arg(format!(
            "family size {} must lie in [1, {SYM_MAX_FAMILY}]",
            family.len()
        )));
    }
    if reps == 0 {
        return Err(Error::arg("reps must be at least 1"));
    }
    let norms = |inst: &Instance| -> Result<Vec<IntVector>> {
        family.iter().map(|b| outside_aggregate(inst, b)).collect()
    };
    let salt = |batch: &str, rep: usize| rng::derive_seed(seed, &["sym", batch, &rep.to_string()]);

    let mut expected = vec![0.0f64; family.len()];
    for rep in 0..reps {
        let inst = resample(i, salt("mean", rep))?;
        for (e, t) in expected.iter_mut().zip(norms(&inst)?) {
            *e += t.l1_norm() as f64;
        }
    }
    expected.iter_mut().for_each(|e| *e /= reps as f64);

    let mut r = rng::stream(seed, rng::GAUSSIAN);
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for rep in 0..reps {
        let inst = resample(i, salt("main", rep))?;
        let ts = norms(&inst)?;
        let g = gaussian_vector(i.n() - i.k(), &mut r);
        lhs += ts
            .iter()
            .zip(&expected)
            .map(|(t, e)| t.l1_norm() as f64 - e)
            .fold(f64::NEG_INFINITY, f64::max);
        rhs += ts.iter().map(|t| t.dot(&g)).fold(f64::NEG_INFINITY, f64::max);
    }
    lhs /= reps as f64;
    rhs *= (2.0 * PI).sqrt() / reps as f64;
    Ok(BoundReport::new(
        "symmetrization",
        i,
        family.len(),
        reps,
        lhs,
        rhs,
        SYMMETRIZATION_SLACK,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiamondStats {
    /// Estimated misclassified outside vertices per sampled triple.
    pub counts: Vec<f64>,
    pub median: f64,
    pub report: BoundReport,
}

/// Median over sampled triples in `S^3` of the number of outside vertices
/// the triple misclassifies, against `max(n^3/k^5, 0.1 k)`.
pub fn diamond_to_success(
    i: &Instance,
    triple_samples: usize,
    v_samples: usize,
    seed: u64,
) -> Result<DiamondStats> {
    if triple_samples == 0 || v_samples == 0 {
        return Err(Error::arg("diamond_to_success needs positive sample sizes"));
    }
    let outside = i.outside();
    let mut r = rng::stream(seed, "diamond");
    let vs: Vec<usize> = if v_samples >= outside.len() {
        outside.as_slice().to_vec()
    } else {
        index::sample(&mut r, outside.len(), v_samples)
            .into_iter()
            .map(|j| outside.as_slice()[j])
            .collect()
    };
    let scale = if vs.is_empty() {
        0.0
    } else {
        outside.len() as f64 / vs.len() as f64
    };
    let counts: Vec<f64> = (0..triple_samples)
        .map(|_| {
            let t = random_triple(i, &mut r);
            let bad_vs = vs.iter().filter(|&&v| bad(triple_inner(i.graph(), t, v), i.k())).count();
            bad_vs as f64 * scale
        })
        .collect();
    let mut sorted = counts.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    let (n, k) = (i.n() as f64, i.k() as f64);
    let bound = (n.powi(3) / k.powi(5)).max(0.1 * k);
    Ok(DiamondStats {
        report: BoundReport::new("diamond_median", i, triple_samples, v_samples, median, bound, 1.0),
        counts,
        median,
    })
}
