use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drinfeld_core::drinfeld::{export_phi, from_json, Format};
use drinfeld_core::ff::prime_power;
use drinfeld_core::poly::Poly;
use drinfeld_core::runner::{
    identity_sweep, verify_phi, Check, Counts, IdentityOptions, Report, VerifyOptions,
    ARTIFACT_VERSION,
};
use drinfeld_core::{expand_phi, ModularPoly};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Construct and verify the Drinfeld modular polynomial Phi_T(X, Y) over F_q[T].
#[derive(Debug, Parser)]
#[command(name = "drinfeld", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand Phi_T and write it out.
    Compute(ComputeArgs),
    /// Expand Phi_T and run the selected checks.
    Verify(VerifyArgs),
    /// Sweep the identity checks over a range of q and e.
    Identity(IdentityArgs),
    /// Re-emit a stored JSON export in another format.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Cas,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
            OutFormat::Cas => Format::Cas,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every random draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    report_json: Option<PathBuf>,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long, value_parser = parse_q)]
    q: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_q)]
    q: u64,
    /// `all` or a comma-separated subset of the check names.
    #[arg(long, default_value = "all", value_parser = parse_checks)]
    checks: CheckList,
    /// Specialisations per oracle.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    /// Add 1 to the coefficient of X^m Y^n before checking.
    #[arg(long, value_name = "M,N", value_parser = parse_pair, hide = true)]
    perturb: Option<Pair>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Largest q for the catalan, tower and zero-window sweeps.
    #[arg(long, default_value_t = 256)]
    q_max: u64,
    /// Largest e for the char0 sweep.
    #[arg(long, default_value_t = 64)]
    e_max: u64,
    #[arg(long, default_value = "catalan,char0,tower,zero-window", value_parser = parse_checks)]
    checks: CheckList,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long, value_parser = parse_q)]
    q: u64,
    /// JSON file written by `compute --format json`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[command(flatten)]
    common: Common,
}

fn parse_q(s: &str) -> Result<u64, String> {
    s.parse::<u64>()
        .ok()
        .filter(|&q| prime_power(q).is_some() && q < 1 << 32)
        .ok_or_else(|| "q must be a prime power".to_string())
}

#[derive(Debug, Clone)]
struct CheckList(Vec<Check>);

fn parse_checks(s: &str) -> Result<CheckList, String> {
    Check::parse_list(s)
        .map(CheckList)
        .map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy)]
struct Pair(u32, u32);

fn parse_pair(s: &str) -> Result<Pair, String> {
    let (m, n) = s.split_once(',').ok_or("expected M,N")?;
    Ok(Pair(
        m.trim().parse().map_err(|_| "bad M")?,
        n.trim().parse().map_err(|_| "bad N")?,
    ))
}

enum Failure {
    Usage(String),
    Io(String),
}

type Outcome = Result<bool, Failure>;

fn io_err(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| io_err(path, e)),
        None => io::stdout()
            .lock()
            .write_all(content.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn write_report(report: &Report, common: &Common) -> Result<(), Failure> {
    if let Some(path) = &common.report_json {
        fs::write(path, report.to_json()).map_err(|e| io_err(path, e))?;
    }
    Ok(())
}

fn expand(q: u64) -> Result<ModularPoly, Failure> {
    expand_phi(q).map_err(|e| Failure::Usage(e.to_string()))
}

fn compute(args: &ComputeArgs) -> Outcome {
    let phi = expand(args.q)?;
    emit(
        args.common.out.as_deref(),
        &export_phi(&phi, args.format.into()),
    )?;
    let report = Report {
        version: ARTIFACT_VERSION,
        command: format!("compute --q {}", args.q),
        seed: args.common.seed,
        q: Some(args.q),
        counts: Some(Counts::of(&phi)),
        results: Vec::new(),
        millis: None,
    };
    write_report(&report, &args.common)?;
    Ok(true)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let mut phi = expand(args.q)?;
    if let Some(Pair(m, n)) = args.perturb {
        let c = phi.coeff(m, n);
        let bumped = c
            .checked_add(&Poly::one(phi.field()))
            .and_then(|c| phi.with_coeff(m, n, c))
            .map_err(|e| Failure::Usage(e.to_string()))?;
        phi = bumped;
    }
    let opts = VerifyOptions {
        checks: args.checks.0.clone(),
        seed: args.common.seed,
        trials: args.trials,
        timings: args.common.timings,
    };
    let report = verify_phi(&phi, &opts);
    emit(args.common.out.as_deref(), &report.to_text())?;
    write_report(&report, &args.common)?;
    Ok(report.passed())
}

fn identity(args: &IdentityArgs) -> Outcome {
    let report = identity_sweep(&IdentityOptions {
        checks: args.checks.0.clone(),
        q_max: args.q_max,
        e_max: args.e_max,
        seed: args.common.seed,
        timings: args.common.timings,
    });
    emit(args.common.out.as_deref(), &report.to_text())?;
    write_report(&report, &args.common)?;
    Ok(report.passed())
}

fn reexport(args: &ExportArgs) -> Outcome {
    let text = fs::read_to_string(&args.input).map_err(|e| io_err(&args.input, e))?;
    let phi =
        from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", args.input.display())))?;
    if phi.q() as u64 != args.q {
        return Err(Failure::Usage(format!(
            "{} holds q = {}, not {}",
            args.input.display(),
            phi.q(),
            args.q
        )));
    }
    emit(
        args.common.out.as_deref(),
        &export_phi(&phi, args.format.into()),
    )?;
    Ok(true)
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
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Identity(a) => identity(a),
        Command::Export(a) => reexport(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
