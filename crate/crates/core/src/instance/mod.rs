//! Semirandom planted-clique instances.
//!
//! `G[S]` is complete, every `S x (V \ S)` pair is an independent fair
//! coin, and `G[V \ S]` is written by an [`AdversaryStrategy`] that can
//! read the cut edges.

pub mod adversary;
mod io;
mod params;

pub use adversary::{AdversaryTrace, CutView, OutsideEdges};
pub use io::{load, save, InstancePaths};
pub use params::{AdversaryStrategy, InstanceParams};

use rand::seq::index;

use crate::error::Result;
use crate::linear::{GraphBuilder, IndexSet, SignedGraph};
use crate::rng::{self, StreamRng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: SignedGraph,
    planted: IndexSet,
    params: InstanceParams,
    trace: AdversaryTrace,
}

impl Instance {
    /// Assembles an instance without checking it; see [`validate`].
    pub fn from_parts(graph: SignedGraph, planted: IndexSet, params: InstanceParams) -> Self {
        Instance {
            graph,
            planted,
            params,
            trace: AdversaryTrace::default(),
        }
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn planted(&self) -> &IndexSet {
        &self.planted
    }

    pub fn outside(&self) -> IndexSet {
        self.planted.complement(self.graph.n())
    }

    pub fn params(&self) -> &InstanceParams {
        &self.params
    }

    pub fn trace(&self) -> &AdversaryTrace {
        &self.trace
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.planted.len()
    }
}

pub fn generate(p: &InstanceParams) -> Result<Instance> {
    p.check()?;
    let mut planted_rng = rng::stream(p.seed, rng::PLANTED);
    let mut chosen = index::sample(&mut planted_rng, p.n, p.k).into_vec();
    chosen.sort_unstable();
    let planted = IndexSet::new(chosen, p.n)?;
    generate_with(
        p,
        planted,
        &mut rng::stream(p.seed, rng::CUT),
        &mut rng::stream(p.seed, rng::ADVERSARY),
    )
}

/// Same planted set and parameters, fresh cut edges and adversary stream.
///
/// Used to estimate expectations over the random edges for a fixed `S`.
pub fn resample(i: &Instance, salt: u64) -> Result<Instance> {
    let seed = rng::derive_seed(i.params.seed, &["resample", &salt.to_string()]);
    generate_with(
        &i.params,
        i.planted.clone(),
        &mut rng::stream(seed, rng::CUT),
        &mut rng::stream(seed, rng::ADVERSARY),
    )
}

fn generate_with(
    p: &InstanceParams,
    planted: IndexSet,
    cut_rng: &mut StreamRng,
    adv_rng: &mut StreamRng,
) -> Result<Instance> {
    p.check()?;
    let mut b = GraphBuilder::new(p.n);
    let s = planted.as_slice();
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            b.set_edge(u, v, true);
        }
    }
    adversary::draw_cut_edges(&mut b, &planted, cut_rng);
    let partial = b.build();
    let outside = planted.complement(p.n);
    let view = CutView {
        k: p.k,
        planted: &planted,
        outside: &outside,
        partial: &partial,
    };
    let (edges, trace) = adversary::apply(&p.adversary, &view, adv_rng)?;

    // The two edge sets are disjoint, so rows merge by OR.
    let extra = edges.into_builder().build();
    let mut b = GraphBuilder::from(partial);
    for u in outside.iter() {
        for v in outside.iter().filter(|&v| v > u) {
            if extra.has_edge(u, v) {
                b.set_edge(u, v, true);
            }
        }
    }
    Ok(Instance {
        graph: b.build(),
        planted,
        params: p.clone(),
        trace,
    })
}

/// Human-readable violations; empty iff the instance is consistent.
pub fn validate(i: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let g = &i.graph;
    if g.n() != i.params.n {
        out.push(format!("graph has {} vertices, params say {}", g.n(), i.params.n));
    }
    if i.planted.len() != i.params.k {
        out.push(format!(
            "planted set has {} vertices, params say k = {}",
            i.planted.len(),
            i.params.k
        ));
    }
    if let Some(&last) = i.planted.as_slice().last() {
        if last >= g.n() {
            out.push(format!("planted vertex {last} out of range"));
            return out;
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.entry(u, v) != g.entry(v, u) {
                out.push(format!("asymmetric pair ({u}, {v})"));
            }
        }
        if g.entry(u, u) != 1 {
            out.push(format!("diagonal entry ({u}, {u}) is not +1"));
        }
    }
    let s = i.planted.as_slice();
    for (a, &u) in s.iter().enumerate() {
        for &v in &s[a + 1..] {
            if !g.has_edge(u, v) {
                out.push(format!("planted pair ({u}, {v}) is not an edge"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: usize, seed: u64, adversary: AdversaryStrategy) -> InstanceParams {
        InstanceParams::new(n, k, seed, adversary)
    }

    #[test]
    fn k_equals_n_gives_complete_graph() {
        let i = generate(&params(8, 8, 3, AdversaryStrategy::Random)).unwrap();
        assert_eq!(i.graph(), &SignedGraph::complete(8));
        assert!(validate(&i).is_empty());
    }

    #[test]
    fn k_larger_than_n_rejected() {
        assert!(generate(&params(8, 9, 3, AdversaryStrategy::Random)).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let p = params(40, 8, 11, AdversaryStrategy::SignMatch { victims: 3, pool: 20 });
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        let q = InstanceParams { seed: 12, ..p.clone() };
        assert_ne!(generate(&p).unwrap().graph(), generate(&q).unwrap().graph());
    }

    #[test]
    fn flipped_clique_edge_reported() {
        let i = generate(&params(8, 4, 42, AdversaryStrategy::Random)).unwrap();
        let s = i.planted().as_slice().to_vec();
        let mut b = GraphBuilder::from(i.graph().clone());
        b.set_edge(s[0], s[2], false);
        let bad = Instance::from_parts(b.build(), i.planted().clone(), i.params().clone());
        let v = validate(&bad);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains(&format!("({}, {})", s[0], s[2])), "{v:?}");
    }

    #[test]
    fn resample_keeps_planted_set() {
        let i = generate(&params(30, 6, 5, AdversaryStrategy::Random)).unwrap();
        let r = resample(&i, 1).unwrap();
        assert_eq!(r.planted(), i.planted());
        assert_ne!(r.graph(), i.graph());
        assert!(validate(&r).is_empty());
    }
}
