use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use maxsurf::cli::{self, CliError};
use maxsurf::config::{ConfigError, JobConfig, Suite};

#[derive(Parser)]
#[command(name = "maxsurf", version, about = "Maximal surfaces in Lorentz-Minkowski space from Björling data")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct Overrides {
    /// Path to the JSON job configuration.
    #[arg(long)]
    config: PathBuf,
    /// Overrides `family.id`.
    #[arg(long)]
    family: Option<String>,
    /// Overrides `family.a`.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Overrides `family.lambda`.
    #[arg(long)]
    lambda: Option<f64>,
    /// Overrides `family.mu`.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Overrides `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the surface on the configured grid and write meshes.
    Sample(Overrides),
    /// Run a verification suite and write a JSON report.
    Verify {
        #[command(flatten)]
        o: Overrides,
        /// Overrides `verify.suite`.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// List family ids and parameter constraints.
    Families,
}

fn load(o: &Overrides) -> Result<JobConfig, CliError> {
    let mut cfg = JobConfig::load(&o.config)?;
    if let Some(f) = &o.family {
        cfg.family.id = f.clone();
    }
    if o.a.is_some() {
        cfg.family.a = o.a;
    }
    if o.lambda.is_some() {
        cfg.family.lambda = o.lambda;
    }
    if o.mu.is_some() {
        cfg.family.mu = o.mu;
    }
    if let Some(d) = &o.out {
        cfg.output.dir = d.clone();
    }
    Ok(cfg)
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("MAXSURF_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError::new("MAXSURF_THREADS", format!("expected a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| ConfigError::new("MAXSURF_THREADS", e.to_string()).into())
}

fn run(args: Args) -> Result<bool, CliError> {
    init_threads()?;
    match args.cmd {
        Cmd::Families => {
            print!("{}", cli::families_text());
            Ok(true)
        }
        Cmd::Sample(o) => {
            let cfg = load(&o)?;
            for p in cli::cmd_sample(&cfg)? {
                println!("wrote {}", p.display());
            }
            Ok(true)
        }
        Cmd::Verify { o, suite } => {
            let mut cfg = load(&o)?;
            if let Some(s) = suite {
                cfg.verify.suite = s;
            }
            let report = cli::cmd_verify(&cfg)?;
            for c in &report.checks {
                println!(
                    "{:<4} {:<22} residual {:<12.3e} tol {:.1e}",
                    if c.passed { "ok" } else { "FAIL" },
                    c.name,
                    c.max_residual,
                    c.tolerance
                );
            }
            println!("{}", if report.passed { "all checks passed" } else { "some checks failed" });
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("maxsurf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
