use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dynlab::commands::{cmd_classify, cmd_density, cmd_diffs, cmd_orbit, cmd_verify, CliError};
use dynlab::config::{Format, RunConfig, FACTOR_BUDGET_ENV};
use dynlab_core::primeledger::LedgerMode;

/// Exact dynamics of rational maps over Q and prime factors of orbit differences.
#[derive(Parser)]
#[command(name = "dynlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print x_0, ..., x_steps.
    Orbit(Common),
    /// Run the exceptional-family tests and exact-period checks.
    Classify(Common),
    /// Factor numerators of x_(n+D) - x_n and report primitive primes.
    Diffs(Common),
    /// Run a named verification suite ("all" runs every suite).
    Verify(Common),
    /// Count primes up to checkpoints for the Fermat numbers or an orbit.
    Density {
        #[command(flatten)]
        common: Common,
        /// Checkpoints x, comma separated.
        #[arg(long, value_delimiter = ',')]
        x: Vec<u64>,
    },
}

#[derive(Args)]
struct Common {
    /// TOML file with the same keys as the long flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    map: Option<String>,
    /// Field declaration, e.g. "w: w^2+w+1".
    #[arg(long)]
    field: Option<String>,
    /// Starting point: a rational number or "inf".
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "Nmax")]
    n_max: Option<usize>,
    #[arg(long = "M")]
    m: Option<usize>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<LedgerMode>,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, env = FACTOR_BUDGET_ENV)]
    factor_budget_ms: Option<u64>,
    #[arg(long)]
    digit_cap: Option<usize>,
    #[arg(long)]
    tower_budget: Option<usize>,
    /// Tabulate differences even without a wandering certificate.
    #[arg(long)]
    allow_unknown: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Disable data-parallel execution.
    #[arg(long)]
    sequential: bool,
}

fn parse_mode(s: &str) -> Result<LedgerMode, String> {
    match s {
        "numerator" => Ok(LedgerMode::Numerator),
        "projective" => Ok(LedgerMode::Projective),
        _ => Err(format!("expected numerator or projective, got '{s}'")),
    }
}

impl Common {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p).map_err(CliError::Input)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            map: self.map,
            field: self.field,
            x0: self.x0,
            steps: self.steps,
            n_max: self.n_max,
            m: self.m,
            mode: self.mode,
            suite: self.suite,
            format: self.format,
            factor_budget_ms: self.factor_budget_ms,
            digit_cap: self.digit_cap,
            tower_budget: self.tower_budget,
            allow_unknown: self.allow_unknown.then_some(true),
            seed: self.seed,
            sequential: self.sequential.then_some(true),
        };
        Ok(base.overlay(flags))
    }
}

fn run(cli: Cli) -> Result<dynlab::commands::Output, CliError> {
    match cli.cmd {
        Cmd::Orbit(c) => cmd_orbit(&c.resolve()?),
        Cmd::Classify(c) => cmd_classify(&c.resolve()?),
        Cmd::Diffs(c) => cmd_diffs(&c.resolve()?),
        Cmd::Verify(c) => cmd_verify(&c.resolve()?),
        Cmd::Density { common, x } => cmd_density(&common.resolve()?, &x),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                dynlab::report::exit::INPUT as u8
            } else {
                0
            });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("dynlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
