use clap::{Args, Parser, Subcommand};
use projlogic::config::{SuiteConfig, SuiteName};
use projlogic::report::{emit_report, render_report, ReportDocument};
use projlogic::suites::run_suite;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

/// Numerical verification of fuzzy quantum logic on complex projective
/// phase space.
#[derive(Parser)]
#[command(name = "projlogic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a machine-readable report.
    Verify(VerifyArgs),
    /// List the tolerance names accepted by --tol.
    Tolerances,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: geometry, measure, star, logic, tnorm, dynamics, mik,
    /// main-theorem, or all.
    suite: String,

    /// Hilbert-space dimension (2..=8).
    #[arg(long, default_value_t = 3)]
    dim: usize,

    /// Monte-Carlo sample count (>= 100).
    #[arg(long, default_value_t = 20_000)]
    samples: usize,

    /// Master seed; every reported number is a pure function of it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Tolerance override, repeatable: --tol name=value.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,

    /// Projector/effect family file for the logic and main-theorem suites.
    #[arg(long)]
    family: Option<PathBuf>,

    /// Extra operator files joining the random corpora.
    #[arg(long = "operators", value_name = "FILE", num_args = 1..)]
    operators: Vec<PathBuf>,

    /// Report output path; stdout when omitted.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Worker threads (0 = library default). Results are identical at any
    /// thread count.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn parse_tol_override(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{raw}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad value in `{raw}`: {e}"))?;
    Ok((name.to_string(), value))
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig, String> {
    let suite = SuiteName::from_str(&args.suite)?;
    let mut config = SuiteConfig::new(args.dim, args.samples, args.seed, vec![suite])
        .map_err(|e| e.to_string())?;
    for raw in &args.tol {
        let (name, value) = parse_tol_override(raw)?;
        config
            .apply_tol_override(&name, value)
            .map_err(|e| e.to_string())?;
    }
    config.family = args.family.clone();
    config.operators = args.operators.clone();
    config.threads = args.threads;
    Ok(config)
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let config = match build_config(args) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let run = || run_suite(&config);
    let records = if config.threads > 0 {
        let pool = match rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
        {
            Ok(pool) => pool,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
        pool.install(run)
    } else {
        run()
    };

    let records = match records {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    for record in &records {
        eprintln!(
            "{} {} [{}] max_error {:.3e} tolerance {:.3e}",
            if record.passed { "PASS" } else { "FAIL" },
            record.name,
            record.law,
            record.max_error,
            record.tolerance,
        );
    }

    let document = ReportDocument::new(&config, records);
    match &args.report {
        Some(path) => {
            if let Err(e) = emit_report(&document, path) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => {
            let bytes = match render_report(&document) {
                Ok(bytes) => bytes,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            use std::io::Write;
            if std::io::stdout().write_all(&bytes).is_err() {
                return ExitCode::from(2);
            }
        }
    }

    if document.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Tolerances => {
            let defaults = projlogic_core::Tolerances::default();
            for name in projlogic_core::Tolerances::names() {
                println!("{name} = {}", defaults.get(name).expect("listed name"));
            }
            ExitCode::SUCCESS
        }
    }
}
