//! Deterministic sweeps over `(n, k, adversary, solver)` cells.
//!
//! Every trial derives its instance seed and solver seed from the master
//! seed and the cell, so output files depend only on the config and not on
//! the worker count.

mod config;

pub use config::{k_sqrt_nlogn, Cell, CellBlock, ExperimentConfig, KRule};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{generate, InstanceParams};
use crate::rng;
use crate::solvers::{SolverConfig, SolverKind};
use crate::verifier::{write_reports_file, BoundReport, Check};

pub const TRIALS_HEADER: [&str; 10] = [
    "n", "k", "adversary", "solver", "trial", "seed", "recovered", "list_len", "samples", "wall_ms",
];
pub const SUMMARY_HEADER: [&str; 8] = [
    "n",
    "k",
    "adversary",
    "solver",
    "trials",
    "success_rate",
    "mean_list_len",
    "mean_wall_ms",
];

/// Checks written to `bounds.csv` when a sweep has `verify = on`.
pub const SWEEP_CHECKS: [Check; 4] = [Check::L1, Check::Gaussian, Check::Boring, Check::Holder];

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub n: usize,
    pub k: usize,
    pub adversary: String,
    pub solver: SolverKind,
    pub trial: usize,
    /// Instance seed; the solver seed is derived from it.
    pub seed: u64,
    /// The output list contains exactly the planted set.
    pub recovered: bool,
    pub list_len: usize,
    pub samples: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub k: usize,
    pub adversary: String,
    pub solver: String,
    pub trials: usize,
    pub success_rate: f64,
    pub mean_list_len: f64,
    pub mean_wall_ms: f64,
}

fn cell_parts(cell: &Cell, trial: usize) -> [String; 5] {
    [
        cell.n.to_string(),
        cell.k.to_string(),
        cell.adversary.to_string(),
        cell.solver.to_string(),
        trial.to_string(),
    ]
}

pub fn instance_seed(master: u64, cell: &Cell, trial: usize) -> u64 {
    let parts = cell_parts(cell, trial);
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    rng::derive_seed(master, &refs)
}

pub fn solver_seed(master: u64, cell: &Cell, trial: usize) -> u64 {
    let parts = cell_parts(cell, trial);
    let mut refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    refs.push("solve");
    rng::derive_seed(master, &refs)
}

/// Runs one trial. The planted set is consulted only after the solver
/// returns.
pub fn run_trial(master: u64, cell: &Cell, trial: usize, solver: &SolverConfig, timing: bool) -> Result<TrialRecord> {
    let seed = instance_seed(master, cell, trial);
    let params = InstanceParams::new(cell.n, cell.k, seed, cell.adversary.clone());
    let instance = generate(&params)?;
    let start = Instant::now();
    let list = cell
        .solver
        .run(instance.graph(), cell.k, solver, solver_seed(master, cell, trial))?;
    let wall_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(TrialRecord {
        n: cell.n,
        k: cell.k,
        adversary: cell.adversary.to_string(),
        solver: cell.solver,
        trial,
        seed,
        recovered: list.contains(instance.planted()),
        list_len: list.len(),
        samples: cell.solver.samples(cell.n, cell.k, solver),
        wall_ms,
    })
}

pub fn run_cell(cfg: &ExperimentConfig, cell: &Cell) -> Result<Vec<TrialRecord>> {
    if cell.k < 2 || cell.k > cell.n {
        return Err(Error::Config {
            line: 0,
            message: format!("infeasible cell {cell}"),
        });
    }
    cell.adversary.check(cell.n, cell.k)?;
    cfg.solver.check()?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg.seed, cell, t, &cfg.solver, cfg.timing))
        .collect()
}

/// Per-cell aggregates in order of first appearance.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<CellSummary>> {
    if records.is_empty() {
        return Err(Error::arg("no trial records to summarize"));
    }
    let mut out: Vec<(CellSummary, usize, usize, u64)> = Vec::new();
    for r in records {
        let solver = r.solver.to_string();
        let slot = out
            .iter()
            .position(|(s, ..)| s.n == r.n && s.k == r.k && s.adversary == r.adversary && s.solver == solver);
        let idx = slot.unwrap_or_else(|| {
            let blank = CellSummary {
                n: r.n,
                k: r.k,
                adversary: r.adversary.clone(),
                solver,
                trials: 0,
                success_rate: 0.0,
                mean_list_len: 0.0,
                mean_wall_ms: 0.0,
            };
            out.push((blank, 0, 0, 0));
            out.len() - 1
        });
        let entry = &mut out[idx];
        entry.0.trials += 1;
        entry.1 += usize::from(r.recovered);
        entry.2 += r.list_len;
        entry.3 += r.wall_ms;
    }
    Ok(out
        .into_iter()
        .map(|(mut s, hits, lens, wall)| {
            let t = s.trials as f64;
            s.success_rate = hits as f64 / t;
            s.mean_list_len = lens as f64 / t;
            s.mean_wall_ms = wall as f64 / t;
            s
        })
        .collect())
}

pub fn write_trials<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIALS_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.adversary.clone(),
            r.solver.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.recovered.to_string(),
            r.list_len.to_string(),
            r.samples.to_string(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<trials>", e))?;
    Ok(())
}

pub fn write_summary<W: Write>(out: W, rows: &[CellSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in rows {
        w.write_record([
            s.n.to_string(),
            s.k.to_string(),
            s.adversary.clone(),
            s.solver.clone(),
            s.trials.to_string(),
            s.success_rate.to_string(),
            s.mean_list_len.to_string(),
            s.mean_wall_ms.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<summary>", e))?;
    Ok(())
}

pub fn read_summary(path: &Path) -> Result<Vec<CellSummary>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(SUMMARY_HEADER) {
        return Err(Error::Format(format!("{}: unexpected summary header", path.display())));
    }
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let line = idx + 2;
        let field = |j: usize| record.get(j).unwrap_or("");
        let bad = |what: &str| Error::Format(format!("{}:{line}: bad {what}", path.display()));
        rows.push(CellSummary {
            n: field(0).parse().map_err(|_| bad("n"))?,
            k: field(1).parse().map_err(|_| bad("k"))?,
            adversary: field(2).to_string(),
            solver: field(3).to_string(),
            trials: field(4).parse().map_err(|_| bad("trials"))?,
            success_rate: field(5).parse().map_err(|_| bad("success_rate"))?,
            mean_list_len: field(6).parse().map_err(|_| bad("mean_list_len"))?,
            mean_wall_ms: field(7).parse().map_err(|_| bad("mean_wall_ms"))?,
        });
    }
    Ok(rows)
}

/// Files written by [`sweep`].
#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub trials: PathBuf,
    pub summary: PathBuf,
    pub bounds: Option<PathBuf>,
    pub manifest: PathBuf,
    pub records: Vec<TrialRecord>,
}

pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    cfg.check()?;
    let cells = cfg.expand();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::arg(format!("cannot start worker pool: {e}")))?;

    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..cfg.trials).map(move |t| (c, t)))
        .collect();
    info!("sweep: {} cells, {} trials", cells.len(), jobs.len());
    let mut records: Vec<(usize, TrialRecord)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, t)| Ok((c, run_trial(cfg.seed, &cells[c], t, &cfg.solver, cfg.timing)?)))
            .collect::<Result<_>>()
    })?;
    records.sort_by_key(|(c, r)| (*c, r.trial));
    let records: Vec<TrialRecord> = records.into_iter().map(|(_, r)| r).collect();

    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let trials = cfg.out.join("trials.csv");
    write_trials(create(&trials)?, &records)?;
    let summary = cfg.out.join("summary.csv");
    write_summary(create(&summary)?, &summarize(&records)?)?;

    let bounds = if cfg.verify {
        let reports = pool.install(|| sweep_reports(cfg, &cells))?;
        let path = cfg.out.join("bounds.csv");
        write_reports_file(&path, &reports)?;
        Some(path)
    } else {
        None
    };

    let manifest = cfg.out.join("manifest");
    fs::write(&manifest, render_manifest(cfg, &cells)).map_err(|e| Error::io(&manifest, e))?;
    Ok(SweepOutput {
        trials,
        summary,
        bounds,
        manifest,
        records,
    })
}

/// Verifier reports on one instance per distinct `(n, k, adversary)`.
fn sweep_reports(cfg: &ExperimentConfig, cells: &[Cell]) -> Result<Vec<BoundReport>> {
    let mut seen = Vec::new();
    for c in cells {
        let key = (c.n, c.k, c.adversary.clone());
        if !seen.contains(&key) {
            seen.push(key);
        }
    }
    let batches: Vec<Vec<BoundReport>> = seen
        .par_iter()
        .map(|(n, k, adversary)| {
            let adv = adversary.to_string();
            let seed = rng::derive_seed(cfg.seed, &[&n.to_string(), &k.to_string(), &adv, "verify"]);
            let instance = generate(&InstanceParams::new(*n, *k, seed, adversary.clone()))?;
            let mut out = Vec::new();
            for check in SWEEP_CHECKS {
                if check.applies_to(&instance) {
                    out.extend(check.run(&instance, seed)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(batches.into_iter().flatten().collect())
}

fn render_manifest(cfg: &ExperimentConfig, cells: &[Cell]) -> String {
    let mut s = String::from("# resolved config\n");
    s.push_str(&cfg.render());
    s.push_str("\n# k formula: ceil(c * sqrt(n * ln n)), natural log\n");
    s.push_str("\n# cells and per-trial instance seeds\n");
    for cell in cells {
        let seeds: Vec<String> = (0..cfg.trials)
            .map(|t| instance_seed(cfg.seed, cell, t).to_string())
            .collect();
        s.push_str(&format!("{cell} seeds={}\n", seeds.join(",")));
    }
    s
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|e| Error::io(path, e))
}
