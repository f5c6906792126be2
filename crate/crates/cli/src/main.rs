#![allow(clippy::result_large_err)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdet::config::{parse_q_values, ConfigSummary};
use qdet::parse::parse_list;
use qdet::report::{exit_status, human_summary};
use qdet::{emit_report, parse_expression, parse_suites, run_suite, CliError, QMode, WorkbenchConfig};
use qdet_core::minors::{minor_value, MinorIndex, MinorMethod};
use qdet_core::qmatrix::MatrixShape;

#[derive(Parser)]
#[command(name = "qdet", version, about = "Exact checks in quantum matrix algebras and their determinantal quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a minor or an expression.
    #[command(subcommand)]
    Compute(ComputeCommand),
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Rows and columns of γ, e.g. "1,3|1,2". Without it, every minor is used.
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Comma separated suites, or "all".
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, default_value = "report.json")]
    report: PathBuf,
    #[arg(long, default_value = "exact")]
    q_mode: String,
    /// Specialization points for --q-mode specialize, e.g. 7/3,5/2.
    #[arg(long)]
    q_values: Option<String>,
    /// Cache directory; QDET_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Samples for the pbw suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Record wall times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum ComputeCommand {
    /// Expand a quantum minor.
    Minor {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    /// Reduce an expression to normal form.
    Expr {
        #[command(flatten)]
        shape: ShapeArgs,
        text: String,
    },
}

fn shape_of(a: &ShapeArgs) -> Result<MatrixShape, CliError> {
    MatrixShape::new(a.m, a.n).map_err(|e| CliError::Config(e.to_string()))
}

fn verify(args: VerifyArgs) -> Result<u8, CliError> {
    let mut config = WorkbenchConfig::new(args.shape.m, args.shape.n);
    config.gamma = args.gamma;
    config.max_degree = args.max_degree;
    config.suites = parse_suites(&args.suites)?;
    config.q_mode = match args.q_mode.parse()? {
        QMode::Specialize(_) => {
            let text = args.q_values.unwrap_or_else(|| "7/3,5/2".to_string());
            QMode::Specialize(parse_q_values(&text)?)
        }
        QMode::Exact => QMode::Exact,
    };
    config.report_path = Some(args.report.clone());
    config.cache_dir = std::env::var_os("QDET_CACHE").map(PathBuf::from).or(args.cache);
    config.jobs = args.jobs;
    config.samples = args.samples;
    config.timings = args.timings;
    let reports = run_suite(&config)?;
    emit_report(&ConfigSummary::from(&config), &reports, &args.report)?;
    print!("{}", human_summary(&reports));
    Ok(exit_status(&reports))
}

fn compute(cmd: ComputeCommand) -> Result<(), CliError> {
    match cmd {
        ComputeCommand::Minor { shape, rows, cols } => {
            let shape = shape_of(&shape)?;
            let mu = MinorIndex::new(parse_list(&rows)?, parse_list(&cols)?)?;
            println!("{}", minor_value(shape, &mu, MinorMethod::LaplaceFirstRow)?);
        }
        ComputeCommand::Expr { shape, text } => {
            println!("{}", parse_expression(&text, shape_of(&shape)?)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args).map(ExitCode::from),
        Command::Compute(cmd) => compute(cmd).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
