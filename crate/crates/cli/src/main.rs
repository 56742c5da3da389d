use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use curvelab::commands::{analyze, lambda, semigroup};
use curvelab::experiment::experiment;
use curvelab::input::{parse_curve, parse_family, Switch};
use curvelab::{CliError, Outcome, RunConfig, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, PRIME_BITS_VAR};

#[derive(Parser)]
#[command(name = "curvelab", version, about = "Invariants of plane curve singularities in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of a curve with all cross-checks.
    Analyze(Args),
    /// Characteristic data, intersections and the semigroup of values.
    Semigroup(Args),
    /// The Kähler value set and its Θ numbers.
    Lambda(Args),
    /// Random pairs in an equisingularity class (takes a family file).
    Experiment(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Curve file (family file for `experiment`).
    spec: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed expansion order for equations and truncation bound.
    #[arg(long)]
    truncation: Option<u32>,
    /// Run the colength oracles.
    #[arg(long, value_enum)]
    oracle: Option<Switch>,
    /// Emit the JSON report instead of a text summary.
    #[arg(long)]
    json: bool,
}

fn prime_bits() -> Result<Option<u32>, CliError> {
    match std::env::var(PRIME_BITS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Invalid(format!("{PRIME_BITS_VAR} must be an integer, got \"{v}\""))),
        Err(_) => Ok(None),
    }
}

fn run(command: Command) -> Result<(Outcome, Args), CliError> {
    let (kind, args) = match command {
        Command::Analyze(a) => ("analyze", a),
        Command::Semigroup(a) => ("semigroup", a),
        Command::Lambda(a) => ("lambda", a),
        Command::Experiment(a) => ("experiment", a),
    };
    let cfg =
        RunConfig { seed: args.seed, truncation: args.truncation, oracle: args.oracle, prime_bits: prime_bits()? };
    let text =
        std::fs::read_to_string(&args.spec).map_err(|source| CliError::Read { path: args.spec.clone(), source })?;
    let path = args.spec.display().to_string();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.jobs {
        if n == 0 {
            return Err(CliError::Invalid("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Invalid(format!("cannot start worker threads: {e}")))?;
    let outcome = pool.install(|| match kind {
        "experiment" => experiment(&parse_family(&path, &text)?, &cfg),
        _ => {
            let input = parse_curve(&path, &text)?;
            match kind {
                "analyze" => analyze(&input, &cfg),
                "semigroup" => semigroup(&input, &cfg),
                _ => lambda(&input, &cfg),
            }
        }
    })?;
    Ok((outcome, args))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, args) = match run(cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let body = if args.json { &outcome.json } else { &outcome.text };
    match &args.out {
        Some(path) => {
            if let Err(source) = std::fs::write(path, body) {
                eprintln!("error: {}", CliError::Write { path: path.clone(), source });
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.all_pass { EXIT_PASS } else { EXIT_FAIL })
}
