use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steadydim::rational::parse_rational;
use steadydim::{analyze, parse_network, Error, NetworkMatrices, Rational, ReactionNetwork, SamplerConfig};

mod batch;
mod render;

#[derive(Parser)]
#[command(name = "steadydim", version, about = "Generic steady-state dimension and finiteness for mass-action networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the generic dimension of the steady states and finiteness per compatibility class.
    ///
    /// A directory argument analyzes every `.crn` file in it and prints one JSON line per file.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Print the stoichiometric, reactant, row-basis and conservation matrices.
    Matrices {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a concentration vector is a (degenerate) steady state.
    CheckPoint {
        path: PathBuf,
        /// Comma-separated positive rate constants, e.g. `1,3/2,2`.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        /// Comma-separated positive concentrations.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SamplerArgs {
    #[arg(long, env = "STEADYDIM_SEED", default_value_t = 0)]
    seed: u64,
    /// Random evaluations before the symbolic fallback.
    #[arg(long, default_value_t = 5)]
    retries: usize,
    /// Sample coordinates are drawn from [-bound, bound].
    #[arg(long, default_value_t = 65536)]
    bound: u64,
}

impl SamplerArgs {
    fn config(&self) -> SamplerConfig {
        SamplerConfig {
            retries: self.retries,
            sample_bound: self.bound,
            ..SamplerConfig::with_seed(self.seed)
        }
    }
}

/// Failure carrying the process exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::BudgetExhausted(_) | Error::MissingAssignment(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

pub fn load_network(path: &Path) -> Result<ReactionNetwork, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_network(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to stdout, appending a newline if missing. A closed pipe is not an error.
pub fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    let _ = out.flush();
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|t| {
            parse_rational(t.trim())
                .ok_or_else(|| Failure::usage(format!("--{flag}: cannot parse {:?} as a rational", t.trim())))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { path, json, sampler } => {
            let cfg = sampler.config();
            cfg.validate()?;
            if path.is_dir() {
                return batch::analyze_dir(&path, &cfg);
            }
            let net = load_network(&path)?;
            let report = analyze(&net, &cfg)?;
            if json {
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                emit(&render::analysis_text(&report));
            }
        }
        Command::Matrices { path, json } => {
            let net = load_network(&path)?;
            let mats = NetworkMatrices::from_network(&net);
            if json {
                emit(&serde_json::to_string_pretty(&render::matrices_json(&net, &mats)).expect("matrices serialize"));
            } else {
                emit(&render::matrices_text(&net, &mats));
            }
        }
        Command::CheckPoint { path, kappa, x, json } => {
            let net = load_network(&path)?;
            let kappa = parse_list("kappa", &kappa)?;
            let x = parse_list("x", &x)?;
            if let Some(k) = kappa.iter().find(|k| **k <= Rational::from_integer(0.into())) {
                return Err(Failure::usage(format!("--kappa: rate constants must be positive, got {k}")));
            }
            if let Some(v) = x.iter().find(|v| **v <= Rational::from_integer(0.into())) {
                return Err(Failure::usage(format!("--x: concentrations must be positive, got {v}")));
            }
            let mats = NetworkMatrices::from_network(&net);
            let check = steadydim::nondegen::check_steady_state(&mats, &kappa, &x)?;
            if json {
                emit(&serde_json::to_string_pretty(&render::check_json(&check)).expect("check serializes"));
            } else {
                emit(&render::check_text(&check));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
