//! `circnorm`: exact norms, bounds, estimates, sweeps and verification for
//! circulant matrices.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use circnorm_core::estimator::estimate_norm_p;
use circnorm_core::format::fmt_g15;
use circnorm_core::norms::norm_p;
use circnorm_core::sweep::{sweep, to_csv, to_json};
use circnorm_core::verify::{self, VerifyConfig};
use circnorm_core::{Circulant, EstimatorOptions, Exponent, NormValue, TwoParamCirculant};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "circnorm",
    version,
    about = "Induced p-norms of circulant matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact norm or certified interval for A(n, a, b)
    Exact {
        #[command(flatten)]
        matrix: TwoParamArgs,
        /// Exponent, 1 <= p <= inf ("inf" accepted)
        #[arg(long)]
        p: Exponent,
    },
    /// Numerical estimate by dual power iteration
    Estimate(EstimateArgs),
    /// Bounds and estimates over a geometric grid of exponents
    Sweep(SweepArgs),
    /// Run every invariant suite and report pass counts
    Verify {
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Args)]
struct TwoParamArgs {
    /// Dimension
    #[arg(long)]
    n: usize,
    /// Diagonal value (any sign)
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Off-diagonal value, >= 0
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
}

impl TwoParamArgs {
    fn build(&self) -> circnorm_core::Result<TwoParamCirculant> {
        TwoParamCirculant::new(self.n, self.a, self.b)
    }
}

#[derive(Args)]
struct EstimatorArgs {
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl EstimatorArgs {
    fn options(&self) -> EstimatorOptions {
        EstimatorOptions {
            restarts: self.restarts,
            max_iterations: self.max_iter,
            tolerance: self.tol,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, required_unless_present = "first_row", conflicts_with = "first_row", requires_all = ["a", "b"])]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    b: Option<f64>,
    /// Comma-separated first row of a general circulant
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    first_row: Option<Vec<f64>>,
    #[arg(long)]
    p: Exponent,
    /// Also print the maximizing unit vector
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    estimator: EstimatorArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    matrix: TwoParamArgs,
    #[arg(long, default_value_t = 2.0)]
    p_min: f64,
    #[arg(long, default_value_t = 16.0)]
    p_max: f64,
    #[arg(long, default_value_t = 8)]
    p_steps: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[command(flatten)]
    estimator: EstimatorArgs,
}

fn main() -> ExitCode {
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
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> circnorm_core::Result<ExitCode> {
    match command {
        Command::Exact { matrix, p } => {
            let result = norm_p(&matrix.build()?, p)?;
            match result.value {
                NormValue::Exact { value } => {
                    println!("EXACT {} ({})", fmt_g15(value), result.certificate)
                }
                NormValue::Interval { lower, upper } => {
                    println!(
                        "INTERVAL [{}, {}] ({})",
                        fmt_g15(lower),
                        fmt_g15(upper),
                        result.certificate
                    )
                }
            }
        }
        Command::Estimate(args) => {
            let matrix = match (&args.first_row, args.n) {
                (Some(row), _) => Circulant::new(row.clone())?,
                (None, Some(n)) => {
                    TwoParamCirculant::new(n, args.a.unwrap_or(0.0), args.b.unwrap_or(0.0))?
                        .to_circulant()
                }
                (None, None) => unreachable!("clap requires one of --n or --first-row"),
            };
            let report = estimate_norm_p(&matrix, args.p, &args.estimator.options())?;
            println!("value {}", fmt_g15(report.value));
            println!("converged {}", report.converged);
            println!("iterations {}", report.iterations_used);
            println!("restarts {}", report.restarts_run);
            if args.witness {
                let w: Vec<String> = report.witness.iter().map(|&v| fmt_g15(v)).collect();
                println!("witness {}", w.join(","));
            }
        }
        Command::Sweep(args) => {
            let rows = sweep(
                &args.matrix.build()?,
                args.p_min,
                args.p_max,
                args.p_steps,
                &args.estimator.options(),
            )?;
            match args.format {
                TableFormat::Csv => print!("{}", to_csv(&rows)?),
                TableFormat::Json => println!("{}", to_json(&rows)?),
            }
        }
        Command::Verify { max_n, seed, cases } => {
            let report = verify::run(&VerifyConfig { max_n, seed, cases })?;
            for suite in &report.suites {
                let status = if suite.ok() { "PASS" } else { "FAIL" };
                println!(
                    "{:<14} {:>5}/{:<5} {status}",
                    suite.name, suite.passed, suite.total
                );
                for failure in &suite.failures {
                    eprintln!("  {}: {failure}", suite.name);
                }
            }
            if !report.all_passed() {
                println!("verification FAILED (seed {seed}, max-n {max_n}, cases {cases})");
                return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
            }
            println!("all suites passed");
        }
    }
    Ok(ExitCode::SUCCESS)
}
