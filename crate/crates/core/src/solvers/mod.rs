//! Recovery algorithms. Solvers take a [`SignedGraph`] and never see the
//! planted set.

mod baseline;
mod config;
mod refine;
mod sampling;

pub use baseline::{solve_degree, solve_spectral};
pub use config::{CandidateList, SolverConfig};
pub use refine::{max_list_len, post_process, post_process_threshold, prune_list, trim_to_clique};
pub use sampling::{
    candidate_single, candidate_triple, sampled_triple, sampled_vertex, single_candidates,
    solve_semirandom, solve_single_full, triple_candidates,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linear::SignedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverKind {
    Degree,
    Spectral,
    Single,
    Triple,
}

impl SolverKind {
    pub fn run(self, g: &SignedGraph, k: usize, cfg: &SolverConfig, seed: u64) -> Result<CandidateList> {
        Ok(match self {
            SolverKind::Degree => CandidateList::new(vec![solve_degree(g, k)?]),
            SolverKind::Spectral => CandidateList::new(vec![solve_spectral(g, k, cfg)?]),
            SolverKind::Single => solve_single_full(g, k, cfg, seed)?,
            SolverKind::Triple => solve_semirandom(g, k, cfg, seed)?,
        })
    }

    /// Number of sampled vertices or triples the solver evaluates.
    pub fn samples(self, n: usize, k: usize, cfg: &SolverConfig) -> usize {
        match self {
            SolverKind::Degree => 0,
            SolverKind::Spectral => cfg.power_iters,
            SolverKind::Single => cfg.single_budget(n, k),
            SolverKind::Triple => cfg.triple_budget(n, k),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Degree => "degree",
            SolverKind::Spectral => "spectral",
            SolverKind::Single => "single",
            SolverKind::Triple => "triple",
        })
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "degree" => Ok(SolverKind::Degree),
            "spectral" => Ok(SolverKind::Spectral),
            "single" => Ok(SolverKind::Single),
            "triple" | "semirandom" => Ok(SolverKind::Triple),
            other => Err(Error::arg(format!("unknown solver {other:?}"))),
        }
    }
}
