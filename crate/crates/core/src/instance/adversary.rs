//! Adversarial fillings of `G[V \ S]`.
//!
//! Every strategy sees the planted set and all cut edges through
//! [`CutView`], and can only write outside-outside pairs through
//! [`OutsideEdges`].

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::Result;
use crate::linear::{aggregate, GraphBuilder, IndexSet, IntVector, SignedGraph, Triple};
use crate::rng::StreamRng;

use super::params::AdversaryStrategy;

/// Read access to the planted set and the already drawn random edges.
pub struct CutView<'a> {
    pub k: usize,
    pub planted: &'a IndexSet,
    pub outside: &'a IndexSet,
    /// Complete `G[S]` plus the cut edges; no outside-outside edges.
    pub partial: &'a SignedGraph,
}

impl CutView<'_> {
    pub fn n(&self) -> usize {
        self.partial.n()
    }

    pub fn cut_edge(&self, s: usize, w: usize) -> bool {
        self.partial.has_edge(s, w)
    }
}

/// Write-only target for the adversary: edges among outside vertices.
pub struct OutsideEdges {
    inside: Vec<bool>,
    edges: GraphBuilder,
}

impl OutsideEdges {
    pub fn new(n: usize, planted: &IndexSet) -> Self {
        let mut inside = vec![false; n];
        for v in planted.iter() {
            inside[v] = true;
        }
        OutsideEdges {
            inside,
            edges: GraphBuilder::new(n),
        }
    }

    pub fn set(&mut self, u: usize, v: usize, present: bool) {
        assert!(
            !self.inside[u] && !self.inside[v],
            "adversary may only set edges inside V \\ S, got ({u}, {v})"
        );
        self.edges.set_edge(u, v, present);
    }

    pub fn has(&self, u: usize, v: usize) -> bool {
        self.edges.has_edge(u, v)
    }

    /// Neighbours of `v` among outside vertices.
    pub fn outside_degree(&self, v: usize) -> usize {
        self.edges.row(v).iter().map(|w| w.count_ones() as usize).sum::<usize>() - 1
    }

    pub(crate) fn into_builder(self) -> GraphBuilder {
        self.edges
    }
}

/// What the adversary did, kept with the instance as ground truth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdversaryTrace {
    pub fake_cliques: Vec<IndexSet>,
    /// Victims in processing order.
    pub victims: Vec<usize>,
    pub pool: Vec<Triple>,
    /// `T_{V\S} 1_pool`, indexed like the outside set.
    pub signature: Option<IntVector>,
}

/// Hands out single fair bits from 64-bit draws.
struct Coins<'a> {
    rng: &'a mut StreamRng,
    word: u64,
    left: u32,
}

impl<'a> Coins<'a> {
    fn new(rng: &'a mut StreamRng) -> Self {
        Coins { rng, word: 0, left: 0 }
    }

    fn flip(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.random();
            self.left = 64;
        }
        let bit = self.word & 1 == 1;
        self.word >>= 1;
        self.left -= 1;
        bit
    }
}

/// Independent fair coin for every outside pair not excluded by `skip`,
/// pairs visited in lexicographic order.
fn fill_random(
    edges: &mut OutsideEdges,
    outside: &IndexSet,
    rng: &mut StreamRng,
    skip: impl Fn(usize, usize) -> bool,
) {
    let verts = outside.as_slice();
    let mut coins = Coins::new(rng);
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !skip(u, v) {
                edges.set(u, v, coins.flip());
            }
        }
    }
}

pub(crate) fn draw_cut_edges(b: &mut GraphBuilder, planted: &IndexSet, rng: &mut StreamRng) {
    let n = b.n();
    let mut inside = vec![false; n];
    for v in planted.iter() {
        inside[v] = true;
    }
    let mut coins = Coins::new(rng);
    for u in 0..n {
        for v in u + 1..n {
            if inside[u] != inside[v] {
                b.set_edge(u, v, coins.flip());
            }
        }
    }
}

pub fn apply(
    strategy: &AdversaryStrategy,
    view: &CutView<'_>,
    rng: &mut StreamRng,
) -> Result<(OutsideEdges, AdversaryTrace)> {
    strategy.check(view.n(), view.k)?;
    match *strategy {
        AdversaryStrategy::Random => {
            let mut edges = OutsideEdges::new(view.n(), view.planted);
            fill_random(&mut edges, view.outside, rng, |_, _| false);
            Ok((edges, AdversaryTrace::default()))
        }
        AdversaryStrategy::FakeCliques { count } => fake_cliques(view, count, rng),
        AdversaryStrategy::DegreeBoost {
            target_count,
            boost,
        } => degree_boost(view, target_count, boost, rng),
        AdversaryStrategy::SignMatch { victims, pool } => sign_match(view, victims, pool, rng),
    }
}

pub fn fake_cliques(
    view: &CutView<'_>,
    count: usize,
    rng: &mut StreamRng,
) -> Result<(OutsideEdges, AdversaryTrace)> {
    AdversaryStrategy::FakeCliques { count }.check(view.n(), view.k)?;
    let mut edges = OutsideEdges::new(view.n(), view.planted);
    fill_random(&mut edges, view.outside, rng, |_, _| false);

    let mut order = view.outside.as_slice().to_vec();
    order.shuffle(rng);
    let mut supports = Vec::with_capacity(count);
    for chunk in order.chunks_exact(view.k).take(count) {
        for (i, &u) in chunk.iter().enumerate() {
            for &v in &chunk[i + 1..] {
                edges.set(u, v, true);
            }
        }
        supports.push(IndexSet::new(chunk.to_vec(), view.n())?);
    }
    Ok((
        edges,
        AdversaryTrace {
            fake_cliques: supports,
            ..AdversaryTrace::default()
        },
    ))
}

fn pick_victims(view: &CutView<'_>, count: usize, rng: &mut StreamRng) -> Vec<usize> {
    let verts = view.outside.as_slice();
    let mut picked: Vec<usize> = index::sample(rng, verts.len(), count)
        .into_iter()
        .map(|i| verts[i])
        .collect();
    picked.sort_unstable();
    picked
}

pub fn degree_boost(
    view: &CutView<'_>,
    target_count: usize,
    boost: usize,
    rng: &mut StreamRng,
) -> Result<(OutsideEdges, AdversaryTrace)> {
    AdversaryStrategy::DegreeBoost {
        target_count,
        boost,
    }
    .check(view.n(), view.k)?;
    let mut edges = OutsideEdges::new(view.n(), view.planted);
    fill_random(&mut edges, view.outside, rng, |_, _| false);

    let victims = pick_victims(view, target_count, rng);
    let cap = view.outside.len() - 1;
    let baselines: Vec<usize> = victims.iter().map(|&v| edges.outside_degree(v)).collect();
    for (&v, &base) in victims.iter().zip(&baselines) {
        let target = (base + boost).min(cap);
        let mut partners: Vec<usize> = view
            .outside
            .iter()
            .filter(|&w| w != v && !edges.has(v, w))
            .collect();
        partners.shuffle(rng);
        let need = target.saturating_sub(edges.outside_degree(v));
        for w in partners.into_iter().take(need) {
            edges.set(v, w, true);
        }
    }
    Ok((
        edges,
        AdversaryTrace {
            victims,
            ..AdversaryTrace::default()
        },
    ))
}

/// `pool` distinct uniform triples from `S^3`.
pub(crate) fn sample_distinct_triples(
    planted: &IndexSet,
    pool: usize,
    rng: &mut StreamRng,
) -> Vec<Triple> {
    let s = planted.as_slice();
    let k = s.len();
    let total = k * k * k;
    if pool * 2 > total {
        let mut all: Vec<Triple> = (0..total)
            .map(|i| [s[i / (k * k)], s[i / k % k], s[i % k]])
            .collect();
        let (head, _) = all.partial_shuffle(rng, pool);
        return head.to_vec();
    }
    let mut seen = HashSet::with_capacity(pool);
    let mut out = Vec::with_capacity(pool);
    while out.len() < pool {
        let t = [
            s[rng.random_range(0..k)],
            s[rng.random_range(0..k)],
            s[rng.random_range(0..k)],
        ];
        if seen.insert(t) {
            out.push(t);
        }
    }
    out
}

pub fn sign_match(
    view: &CutView<'_>,
    victims: usize,
    pool: usize,
    rng: &mut StreamRng,
) -> Result<(OutsideEdges, AdversaryTrace)> {
    AdversaryStrategy::SignMatch { victims, pool }.check(view.n(), view.k)?;
    let victims = pick_victims(view, victims, rng);
    let pool = sample_distinct_triples(view.planted, pool, rng);
    // Outside rows of the product columns only read cut edges.
    let signature = aggregate(view.partial, &pool)?.restrict(view.outside)?;

    let mut edges = OutsideEdges::new(view.n(), view.planted);
    let mut is_victim = vec![false; view.n()];
    let mut coins = Coins::new(rng);
    for &v in victims.iter() {
        for (j, w) in view.outside.iter().enumerate() {
            // Pairs with an earlier victim are already fixed.
            if w == v || is_victim[w] {
                continue;
            }
            let present = match signature.get(j) {
                t if t > 0 => true,
                t if t < 0 => false,
                _ => coins.flip(),
            };
            edges.set(v, w, present);
        }
        is_victim[v] = true;
    }
    fill_random(&mut edges, view.outside, rng, |u, v| is_victim[u] || is_victim[v]);
    Ok((
        edges,
        AdversaryTrace {
            victims,
            pool,
            signature: Some(signature),
            ..AdversaryTrace::default()
        },
    ))
}
