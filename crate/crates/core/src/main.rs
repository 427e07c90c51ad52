use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::warn;

use semiclique::harness::{sweep, ExperimentConfig};
use semiclique::instance::{load, save};
use semiclique::linear::spc1;
use semiclique::solvers::{SolverConfig, SolverKind};
use semiclique::verifier::{parse_checks, write_reports_file, Check};
use semiclique::{generate, AdversaryStrategy, Error, InstanceParams};

const EXIT_USAGE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "semiclique", version, about = "Planted clique recovery in the semirandom model")]
struct Cli {
    /// Worker threads (falls back to SEMICLIQUE_THREADS, then all cores).
    #[arg(long, global = true, env = "SEMICLIQUE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance: `<out>.spc1` (graph) and `<out>.meta` (planted set).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "random")]
        adversary: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover candidate cliques from a graph file; prints one set per line.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "triple")]
        solver: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled vertices or triples.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run verifier checks on a saved instance and write bounds.csv.
    Verify {
        /// Instance stem or its `.spc1` path; the `.meta` sidecar must sit next to it.
        #[arg(long, alias = "instance")]
        graph: PathBuf,
        /// Comma-separated: bad, l1, gaussian, boring, holder, diamond, sym, or `all`.
        #[arg(long, default_value = "l1,gaussian,boring")]
        checks: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "bounds.csv")]
        out: PathBuf,
    },
    /// Plot success rate against k from a summary.csv.
    Plot {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Lib(Error),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            warn!("could not size worker pool: {e}");
        }
    }
    match run(cli.command, cli.threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(failed)) => {
            eprintln!("error: {failed} check report(s) failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Argument(_) => EXIT_USAGE,
                Error::Config { .. } => EXIT_CONFIG,
                Error::Io { .. } | Error::Format(_) | Error::Validation(_) | Error::Csv(_) => EXIT_IO,
            })
        }
    }
}

fn run(command: Command, threads: Option<usize>) -> Result<(), Failure> {
    match command {
        Command::Gen {
            n,
            k,
            seed,
            adversary,
            out,
        } => {
            let adversary: AdversaryStrategy = adversary.parse()?;
            let instance = generate(&InstanceParams::new(n, k, seed, adversary))?;
            let paths = save(&instance, &out)?;
            println!("graph: {}", paths.graph.display());
            println!("planted: {}", paths.meta.display());
            println!("adversary: {}", instance.params().adversary);
        }
        Command::Solve {
            graph,
            k,
            solver,
            seed,
            budget,
        } => {
            let solver: SolverKind = solver.parse()?;
            let g = spc1::read(&graph)?;
            let cfg = SolverConfig {
                sample_budget: budget,
                ..SolverConfig::default()
            };
            for set in solver.run(&g, k, &cfg, seed)?.iter() {
                println!("{set}");
            }
        }
        Command::Sweep { config } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if threads.is_some() {
                cfg.threads = threads;
            }
            let out = sweep(&cfg)?;
            println!("trials: {}", out.trials.display());
            println!("summary: {}", out.summary.display());
            if let Some(bounds) = &out.bounds {
                println!("bounds: {}", bounds.display());
            }
            println!("manifest: {}", out.manifest.display());
        }
        Command::Verify {
            graph,
            checks,
            seed,
            out,
        } => {
            let instance = load(stem(&graph))?;
            let mut reports = Vec::new();
            for check in parse_checks(&checks)? {
                if !check.applies_to(&instance) {
                    return Err(Error::Argument(format!("check {check} does not apply to this instance")).into());
                }
                reports.extend(Check::run(check, &instance, seed)?);
            }
            write_reports_file(&out, &reports)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            println!("bounds: {} ({} reports, {failed} failed)", out.display(), reports.len());
            if failed > 0 {
                return Err(Failure::Verify(failed));
            }
        }
        Command::Plot { summary, out } => {
            semiclique::plot::plot_summary(&summary, &out)?;
            println!("plot: {}", out.display());
        }
    }
    Ok(())
}

fn stem(path: &Path) -> PathBuf {
    match path.extension() {
        Some(ext) if ext == "spc1" || ext == "meta" => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}
