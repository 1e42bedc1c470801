use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use algint_cli::commands::{analyze, decompose_cmd, integrate, periods, Job, Outcome};
use algint_cli::Failure;
use clap::{Parser, ValueEnum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Discriminant, Newton polygon, punctures, degenerate points, genus.
    Analyze,
    /// Period matrices, tau, S and diagnostics.
    Periods,
    /// Times and blocks of a rational differential.
    Decompose,
    /// Complete or incomplete integral of a rational differential.
    Integrate,
}

/// Integrals of rational differentials on plane algebraic curves.
#[derive(Parser, Debug)]
#[command(name = "algint", version)]
struct Cli {
    command: Command,
    /// Curve file (JSON).
    #[arg(long)]
    curve: PathBuf,
    /// Cycle file (JSON), or `auto` for the default marking of y^2 = f(x).
    #[arg(long, default_value = "auto")]
    cycles: String,
    /// Form file (JSON) with `num` and `den`.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Integration cycle (`A1 - 2*B1 + C0`) or arc (`arc:x0,x1,...[@sheet]`).
    #[arg(long)]
    gamma: Option<String>,
    /// Target number of correct digits of the quadratures (4..=14).
    #[arg(long, default_value_t = 12)]
    precision: u32,
    /// Seed of the pseudo-random sample points.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Exit with status 4 if any consistency check fails.
    #[arg(long)]
    check: bool,
    /// Write the report to this file (atomically) instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn write_report(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("cannot write the report: {e}"));
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io)?;
            stdout.write_all(b"\n").map_err(io)
        }
        Some(path) => {
            let tmp = path.with_extension("partial");
            std::fs::write(&tmp, format!("{text}\n")).map_err(io)?;
            std::fs::rename(&tmp, path).map_err(io)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let job = Job {
        curve: cli.curve.clone(),
        cycles: cli.cycles.clone(),
        form: cli.form.clone(),
        gamma: cli.gamma.clone(),
        precision: cli.precision,
        seed: cli.seed,
    };
    let outcome: Outcome = match cli.command {
        Command::Analyze => analyze(&job)?,
        Command::Periods => periods(&job)?,
        Command::Decompose => decompose_cmd(&job)?,
        Command::Integrate => integrate(&job)?,
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    write_report(&cli.output, &text)?;
    match outcome.failure() {
        Some(f) if cli.check => Err(f),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("algint: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
