use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// One measured statistic against its theoretical ceiling.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub adversary: String,
    /// `|B|` or the number of sampled triples, depending on the check.
    pub size: usize,
    pub reps: usize,
    pub observed: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
}

impl BoundReport {
    /// Passes when `observed / bound <= slack`.
    pub fn new(
        name: &str,
        i: &Instance,
        size: usize,
        reps: usize,
        observed: f64,
        bound: f64,
        slack: f64,
    ) -> Self {
        let ratio = ratio(observed, bound);
        BoundReport {
            name: name.to_string(),
            n: i.n(),
            k: i.k(),
            adversary: i.params().adversary.to_string(),
            size,
            reps,
            observed,
            bound,
            ratio,
            pass: ratio <= slack,
        }
    }

    pub(crate) fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

fn ratio(observed: f64, bound: f64) -> f64 {
    if bound != 0.0 {
        observed / bound
    } else if observed == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "name",
    "n",
    "k",
    "adversary",
    "b_size_or_m",
    "reps",
    "observed",
    "bound",
    "ratio",
    "pass",
];

pub fn write_reports<W: Write>(out: W, reports: &[BoundReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.name.clone(),
            r.n.to_string(),
            r.k.to_string(),
            r.adversary.clone(),
            r.size.to_string(),
            r.reps.to_string(),
            format!("{:.6}", r.observed),
            format!("{:.6}", r.bound),
            format!("{:.6}", r.ratio),
            r.pass.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn write_reports_file(path: &Path, reports: &[BoundReport]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_reports(std::io::BufWriter::new(file), reports)
}
