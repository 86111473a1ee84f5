mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Operational(String),
}

impl From<ortho_sing::Error> for CliError {
    fn from(e: ortho_sing::Error) -> Self {
        use ortho_sing::Error as E;
        match e {
            E::Domain(_) | E::Precondition(_) | E::InvalidMeasure(_) | E::Hypothesis(_) => Self::Usage(e.to_string()),
            _ => Self::Operational(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ortho-sing", version, about = "Zero spacing of orthogonal polynomials at weight singularities")]
struct Cli {
    /// JSON experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (falls back to ORTHO_SING_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled grids (overrides the config's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zeros j_k of c J_a(x) + d J_(a+1)(x).
    BesselZeros {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
        #[arg(long)]
        kmax: usize,
        /// Also list j_(-1) .. j_(-kmax).
        #[arg(long)]
        negative: bool,
    },
    /// Recurrence coefficients (a_k, b_k) of the configured measure.
    Recurrence,
    /// Zeros of p_n, optionally indexed around a center.
    Zeros,
    /// Scaled zeros near a singularity against the Bessel prediction.
    Spacing,
    /// Inequalities, the large-k gap limit and simplicity on sampled grids.
    VerifySturm,
    /// Gap convergence per residue class of n.
    Theorem1,
    /// Recurrence values of the monic polynomial against the asymptotic formulas.
    AsymCompare,
}

const EXIT_OPERATIONAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

fn threads(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("ORTHO_SING_THREADS") {
            Ok(v) => Some(
                v.trim().parse().map_err(|_| CliError::Usage(format!("ORTHO_SING_THREADS=`{v}` is not a count")))?,
            ),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(CliError::Usage("thread count must be positive".into()));
    }
    Ok(n)
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let mut outcome = dispatch(&cli)?;
    if let Some(path) = &cli.config {
        if !matches!(cli.command, Command::BesselZeros { .. }) {
            outcome.csv.meta(format!("config={}", ExperimentConfig::load(path)?.to_json()));
        }
    }
    Ok(outcome)
}

fn dispatch(cli: &Cli) -> Result<commands::Outcome, CliError> {
    if let Some(n) = threads(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Operational(format!("thread pool: {e}")))?;
    }
    let config = || -> Result<ExperimentConfig, CliError> {
        let path = cli.config.as_ref().ok_or_else(|| CliError::Usage("this command needs --config".into()))?;
        ExperimentConfig::load(path)
    };
    match cli.command {
        Command::BesselZeros { a, c, d, kmax, negative } => commands::bessel_zeros(a, c, d, kmax, negative),
        Command::Recurrence => commands::recurrence(&config()?),
        Command::Zeros => commands::zeros(&config()?),
        Command::Spacing => commands::spacing(&config()?),
        Command::VerifySturm => {
            let cfg = config()?;
            commands::verify_sturm(&cfg, cli.seed.or(cfg.seed).unwrap_or(0))
        }
        Command::Theorem1 => commands::theorem1(&config()?),
        Command::AsymCompare => commands::asym_compare(&config()?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, CliError::Usage(_)) { EXIT_USAGE } else { EXIT_OPERATIONAL });
        }
    };
    let text = outcome.csv.render();
    let written = match &out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_OPERATIONAL);
    }
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    if outcome.violation {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}
