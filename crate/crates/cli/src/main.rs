use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdl_cli::analysis::analyze;
use qdl_cli::figures::{write_figure, DEFAULT_RESOLUTION};
use qdl_cli::verify::{self, Suite, VerifyConfig};
use qdl_cli::{configure_threads, exit, CliError, Result};
use qdl_core::nonlocality::BruteForceOptions;
use qdl_core::{Scenario, ScenarioParams};

/// Complementarity and nonlocality of a monitored qubit under decoherence.
#[derive(Parser)]
#[command(name = "qdl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single parameter point and print a key=value report.
    Analyze(AnalyzeArgs),
    /// Write the data grid behind one of the seven figures as CSV.
    Figure(FigureArgs),
    /// Run the verification suites and print a pass/fail summary.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OptimizerArgs {
    /// Offset into the optimizer's start sequence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restarts of the brute-force CHSH optimizer.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
}

impl OptimizerArgs {
    fn options(&self) -> Result<BruteForceOptions> {
        if self.restarts == 0 {
            return Err(CliError::Usage("--restarts must be at least 1".into()));
        }
        Ok(BruteForceOptions {
            restarts: self.restarts,
            seed: self.seed,
            ..BruteForceOptions::default()
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// free, system, meter or combined.
    #[arg(long)]
    scenario: String,
    /// Distinguishability D.
    #[arg(long)]
    d: f64,
    /// Path weight r (free scenario only).
    #[arg(long)]
    r: Option<f64>,
    /// System robustness R_S.
    #[arg(long = "r-s")]
    r_s: Option<f64>,
    /// Meter robustness R_M.
    #[arg(long = "r-m")]
    r_m: Option<f64>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure number, 1 to 7.
    n: u8,
    /// Grid points per axis.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid points per axis.
    #[arg(long, default_value_t = verify::DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Grid points per axis for the brute-force suite.
    #[arg(long, default_value_t = verify::DEFAULT_BRUTE_RESOLUTION)]
    brute_resolution: usize,
    /// Replace every residual tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Run one suite or discrepancy probe only.
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

fn params_for(args: &AnalyzeArgs, scenario: Scenario) -> Result<ScenarioParams> {
    let reject = |flag: &str| {
        Err(CliError::Usage(format!(
            "{flag} does not apply to scenario '{scenario}'"
        )))
    };
    match scenario {
        Scenario::Free => {
            if args.r_s.is_some() {
                return reject("--r-s");
            }
            if args.r_m.is_some() {
                return reject("--r-m");
            }
        }
        _ if args.r.is_some() => return reject("--r"),
        Scenario::SystemDecoherence if args.r_m.is_some() => return reject("--r-m"),
        Scenario::MeterDecoherence if args.r_s.is_some() => return reject("--r-s"),
        _ => {}
    }
    let params = ScenarioParams::new(
        args.r.unwrap_or(0.5),
        args.d,
        args.r_s.unwrap_or(1.0),
        args.r_m.unwrap_or(1.0),
    )?;
    params.validate_for(scenario)?;
    Ok(params)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze(args) => {
            let scenario: Scenario = args.scenario.parse()?;
            let params = params_for(&args, scenario)?;
            let report = analyze(scenario, &params, &args.optimizer.options()?)?;
            print!("{}", report.render());
            Ok(exit::OK)
        }
        Command::Figure(args) => {
            let rows = write_figure(args.n, args.resolution, &args.out)?;
            println!("wrote {rows} rows to {}", args.out.display());
            Ok(exit::OK)
        }
        Command::Verify(args) => {
            let suites = match &args.suite {
                Some(name) => vec![name.parse::<Suite>()?],
                None => Suite::ALL.to_vec(),
            };
            let config = VerifyConfig {
                resolution: args.resolution,
                brute_resolution: args.brute_resolution,
                tolerance: args.tolerance,
                suites,
                brute: args.optimizer.options()?,
                ..VerifyConfig::default()
            };
            match verify::run(&config) {
                Ok(report) => {
                    print!("{}", report.render());
                    Ok(if report.passed() {
                        exit::OK
                    } else {
                        exit::VERIFY_FAILED
                    })
                }
                // a computation that errors out mid-suite is a failed check
                Err(CliError::Core(e)) => {
                    eprintln!("qdl: verification aborted: {e}");
                    Ok(exit::VERIFY_FAILED)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    let code =
        configure_threads(std::env::var("QDL_THREADS").ok().as_deref()).and_then(|()| run(cli));
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("qdl: {e}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
