use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordef::pretty::{render_document, render_verify};
use ordef::problem::{parse_problem, AlgebraicInput, AnalyticInput, CohomologyInput, ConsistencyInput, Kind};
use ordef::report;
use ordef::suites::{run_verify, Suite, VerifyOptions, DEFAULT_GRID_CAP};
use ordef::CliError;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "ordef", version, about = "Equivariant deformation dimensions of ordinary and Mumford curves")]
struct Cli {
    /// Render a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deformation dimensions from algebraic or analytic data.
    #[command(subcommand)]
    Dim(DimCommand),
    /// Compare the algebraic and analytic dimensions of a paired problem.
    Consistency {
        /// Problem file, or `-` for standard input.
        file: String,
    },
    /// Local cohomology of `(Z/p)^t x| Z/n` acting on the tangent module.
    Cohomology(CohomologyArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum DimCommand {
    /// Quotient data `{p, g_Y, branch, group_order?}`.
    Algebraic { file: String },
    /// A graph of groups `{p, vertices, edges}`.
    Analytic { file: String },
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    t: u32,
    #[arg(long, default_value_t = 1)]
    n: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeat to select several. Defaults to all.
    #[arg(long = "suite", value_name = "NAME", value_parser = parse_suite)]
    suites: Vec<Suite>,
    /// Only run cases in this characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Upper bound on p^t for grid-based suites.
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    grid_cap: u64,
    #[arg(long, hide = true)]
    disable_nilpotence: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite `{s}`; expected one of {}", names.join(", "))
    })
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(text)
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn write_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn json_text(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(doc: &Value, pretty: bool) {
    write_out(&if pretty { render_document(doc) } else { json_text(doc) });
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Dim(DimCommand::Algebraic { file }) => {
            let input: AlgebraicInput = parse_problem(&read_input(&file)?, Kind::Algebraic)?;
            emit(&report::algebraic(&input)?, pretty);
            Ok(0)
        }
        Command::Dim(DimCommand::Analytic { file }) => {
            let input: AnalyticInput = parse_problem(&read_input(&file)?, Kind::Analytic)?;
            emit(&report::analytic(&input)?, pretty);
            Ok(0)
        }
        Command::Consistency { file } => {
            let input: ConsistencyInput = parse_problem(&read_input(&file)?, Kind::Consistency)?;
            let (doc, ok) = report::consistency(&input)?;
            emit(&doc, pretty);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Cohomology(a) => {
            let (doc, ok) = report::cohomology(&CohomologyInput { p: a.p, t: a.t, n: a.n })?;
            emit(&doc, pretty);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Verify(a) => {
            let opts = VerifyOptions {
                suites: if a.suites.is_empty() { Suite::ALL.to_vec() } else { a.suites },
                p: a.p,
                grid_cap: a.grid_cap,
                nilpotence_slack: a.disable_nilpotence,
            };
            let rep = run_verify(&opts);
            write_out(&if pretty { render_verify(&rep) } else { json_text(&rep.to_json()) });
            if let Some((s, c)) = rep.first_failure() {
                eprintln!("verification failed: {s} / {}", c.case);
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ordef: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
