use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::instance::AdversaryStrategy;
use crate::solvers::{SolverConfig, SolverKind};

/// How a cell picks its clique sizes.
#[derive(Clone, Debug, PartialEq)]
pub enum KRule {
    Explicit(Vec<usize>),
    /// `k = ceil(c * sqrt(n ln n))`.
    SqrtNLogN(f64),
}

impl KRule {
    pub fn resolve(&self, n: usize) -> Vec<usize> {
        match self {
            KRule::Explicit(ks) => ks.clone(),
            KRule::SqrtNLogN(c) => vec![k_sqrt_nlogn(*c, n)],
        }
    }
}

impl fmt::Display for KRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KRule::Explicit(ks) => write!(f, "{}", join(ks)),
            KRule::SqrtNLogN(c) => write!(f, "c_sqrt_nlogn({c})"),
        }
    }
}

pub fn k_sqrt_nlogn(c: f64, n: usize) -> usize {
    let n = n as f64;
    (c * (n * n.ln()).sqrt()).ceil() as usize
}

/// One `[cell]` block before expansion into concrete cells.
#[derive(Clone, Debug, PartialEq)]
pub struct CellBlock {
    pub ns: Vec<usize>,
    pub k: KRule,
    pub adversaries: Vec<AdversaryStrategy>,
    pub solvers: Vec<SolverKind>,
    /// Line of the `[cell]` header, for error messages.
    pub line: usize,
}

/// A single point of the sweep grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub n: usize,
    pub k: usize,
    pub adversary: AdversaryStrategy,
    pub solver: SolverKind,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} adversary={} solver={}", self.n, self.k, self.adversary, self.solver)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub out: PathBuf,
    pub threads: Option<usize>,
    /// Record wall-clock times; when off every `wall_ms` is 0 so reruns are
    /// byte-identical.
    pub timing: bool,
    /// Also write verifier reports to `bounds.csv`.
    pub verify: bool,
    pub solver: SolverConfig,
    pub cells: Vec<CellBlock>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            trials: 1,
            out: PathBuf::from("results"),
            threads: None,
            timing: true,
            verify: false,
            solver: SolverConfig::default(),
            cells: Vec::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut current: Option<PartialCell> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if content == "[cell]" {
                if let Some(cell) = current.take() {
                    cfg.cells.push(cell.finish()?);
                }
                current = Some(PartialCell::new(line));
                continue;
            }
            if content.starts_with('[') {
                return Err(config(line, format!("unknown section {content}")));
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| config(line, format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(config(line, format!("empty value for {key}")));
            }
            match current.as_mut() {
                Some(cell) => cell.set(key, value, line)?,
                None => cfg.set_global(key, value, line)?,
            }
        }
        if let Some(cell) = current.take() {
            cfg.cells.push(cell.finish()?);
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn set_global(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        match key {
            "seed" => self.seed = number(value, line)?,
            "trials" => self.trials = number(value, line)?,
            "out" => self.out = PathBuf::from(value),
            "threads" => self.threads = Some(number(value, line)?),
            "timing" => self.timing = switch(value, line)?,
            "verify" => self.verify = switch(value, line)?,
            "gamma" => self.solver.gamma = number(value, line)?,
            "threshold" => {
                let (num, den) = value
                    .split_once('/')
                    .ok_or_else(|| config(line, "threshold must look like num/den"))?;
                self.solver.threshold_num = number(num.trim(), line)?;
                self.solver.threshold_den = number(den.trim(), line)?;
            }
            "overlap_den" => self.solver.overlap_den = number(value, line)?,
            "power_iters" => self.solver.power_iters = number(value, line)?,
            "budget" => self.solver.sample_budget = Some(number(value, line)?),
            "n" | "k" | "adversary" | "solver" => {
                return Err(config(line, format!("{key} belongs inside a [cell] block")))
            }
            _ => return Err(config(line, format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Checks global settings and cell feasibility, before any trial runs.
    pub fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(config(0, "trials must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(config(0, "threads must be at least 1"));
        }
        self.solver.check().map_err(|e| config(0, e.to_string()))?;
        if self.cells.is_empty() {
            return Err(config(0, "no [cell] blocks"));
        }
        for block in &self.cells {
            for &n in &block.ns {
                for k in block.k.resolve(n) {
                    if k < 2 || k > n {
                        return Err(config(block.line, format!("cell has k = {k} outside [2, n = {n}]")));
                    }
                    for adversary in &block.adversaries {
                        adversary.check(n, k).map_err(|e| config(block.line, e.to_string()))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Concrete cells in config order: block, n, k, adversary, solver.
    pub fn expand(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for block in &self.cells {
            for &n in &block.ns {
                for k in block.k.resolve(n) {
                    for adversary in &block.adversaries {
                        for &solver in &block.solvers {
                            cells.push(Cell {
                                n,
                                k,
                                adversary: adversary.clone(),
                                solver,
                            });
                        }
                    }
                }
            }
        }
        cells
    }

    /// Canonical text form; parsing it yields an equal config.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("seed = {}\n", self.seed));
        s.push_str(&format!("trials = {}\n", self.trials));
        s.push_str(&format!("out = {}\n", self.out.display()));
        if let Some(t) = self.threads {
            s.push_str(&format!("threads = {t}\n"));
        }
        s.push_str(&format!("timing = {}\n", on_off(self.timing)));
        s.push_str(&format!("verify = {}\n", on_off(self.verify)));
        let sc = &self.solver;
        s.push_str(&format!("gamma = {}\n", sc.gamma));
        s.push_str(&format!("threshold = {}/{}\n", sc.threshold_num, sc.threshold_den));
        s.push_str(&format!("overlap_den = {}\n", sc.overlap_den));
        s.push_str(&format!("power_iters = {}\n", sc.power_iters));
        if let Some(b) = sc.sample_budget {
            s.push_str(&format!("budget = {b}\n"));
        }
        for block in &self.cells {
            s.push_str("\n[cell]\n");
            s.push_str(&format!("n = {}\n", join(&block.ns)));
            s.push_str(&format!("k = {}\n", block.k));
            for a in &block.adversaries {
                s.push_str(&format!("adversary = {a}\n"));
            }
            s.push_str(&format!("solver = {}\n", join(&block.solvers)));
        }
        s
    }
}

struct PartialCell {
    line: usize,
    ns: Option<Vec<usize>>,
    k: Option<KRule>,
    adversaries: Vec<AdversaryStrategy>,
    solvers: Vec<SolverKind>,
}

impl PartialCell {
    fn new(line: usize) -> Self {
        PartialCell {
            line,
            ns: None,
            k: None,
            adversaries: Vec::new(),
            solvers: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        match key {
            "n" => self.ns = Some(list(value, line)?),
            "k" => self.k = Some(parse_k(value, line)?),
            "adversary" => self
                .adversaries
                .push(value.parse().map_err(|e: Error| config(line, e.to_string()))?),
            "solver" => {
                for name in value.split(',') {
                    self.solvers.push(name.parse().map_err(|e: Error| config(line, e.to_string()))?);
                }
            }
            _ => return Err(config(line, format!("unknown cell key {key:?}"))),
        }
        Ok(())
    }

    fn finish(self) -> Result<CellBlock> {
        let missing = |what: &str| config(self.line, format!("[cell] block has no {what}"));
        let ns = self.ns.clone().ok_or_else(|| missing("n"))?;
        let k = self.k.clone().ok_or_else(|| missing("k"))?;
        if self.adversaries.is_empty() {
            return Err(missing("adversary"));
        }
        if self.solvers.is_empty() {
            return Err(missing("solver"));
        }
        Ok(CellBlock {
            ns,
            k,
            adversaries: self.adversaries,
            solvers: self.solvers,
            line: self.line,
        })
    }
}

fn parse_k(value: &str, line: usize) -> Result<KRule> {
    if let Some(rest) = value.strip_prefix("c_sqrt_nlogn") {
        let c = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| config(line, "expected c_sqrt_nlogn(c)"))?;
        let c: f64 = number(c.trim(), line)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(config(line, "c must be positive"));
        }
        return Ok(KRule::SqrtNLogN(c));
    }
    Ok(KRule::Explicit(list(value, line)?))
}

fn list(value: &str, line: usize) -> Result<Vec<usize>> {
    value.split(',').map(|v| number(v.trim(), line)).collect()
}

fn number<T: std::str::FromStr>(value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| config(line, format!("cannot parse {value:?} as a number")))
}

fn switch(value: &str, line: usize) -> Result<bool> {
    match value {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(config(line, format!("expected on/off, got {value:?}"))),
    }
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn config(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}
