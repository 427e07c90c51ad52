//! Monte Carlo checks of the quantities behind the triple-sampling
//! analysis: bad pair and bad triple counts, the ℓ¹ norm of aggregated
//! product columns, Gaussian maxima, and the symmetrization inequality.
//!
//! Constants hidden in asymptotic bounds are pinned per check and every
//! report carries the raw ratio.

mod checks;
mod report;
mod suite;

pub use checks::*;
pub use report::{write_reports, write_reports_file, BoundReport, CSV_HEADER};
pub use suite::{parse_checks, sample_outside, Check, BAD_TRIPLE_SAMPLES, BAD_VERTICES, GAUSSIAN_SIZES, L1_SIZES};
