//! Command-line interface: `hopfcyc verify|cohomology|transport <input>`
//! and `hopfcyc fixtures list`.
//!
//! `<input>` is either a session file path or the name of a built-in
//! fixture.  Exit status is 0 when every check passes, 1 on check failure,
//! and 2 on input or usage errors.

use clap::{Parser, Subcommand};
use hopfcyc::session::{
    cmd_cohomology, cmd_transport, cmd_verify, fixture_spec, fixtures, parse_session, RunOptions,
    SessionSpec,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hopfcyc",
    about = "Exact-arithmetic engine for bicrossed-product Hopf algebras and Hopf-cyclic cohomology"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Session file path or built-in fixture name.
    input: String,
    /// Write the machine-readable report (JSON) to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Maximum degree for randomized property runs.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Seed for randomized property runs.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the requested axiom checkers from the session's `[run]` section.
    Verify(CommonArgs),
    /// Periodic Lie-algebra cohomology of the session's module.
    Cohomology(CommonArgs),
    /// Transport a Tot-complex cocycle through Alexander–Whitney and Ψ.
    Transport(CommonArgs),
    /// Built-in fixture management.
    Fixtures {
        #[command(subcommand)]
        sub: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List the built-in fixtures.
    List,
}

fn load_spec(input: &str) -> Result<SessionSpec, String> {
    if let Some(spec) = fixture_spec(input) {
        return Ok(spec);
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read `{input}`: {e} (and no such fixture)"))?;
    parse_session(&text).map_err(|e| format!("{input}: {e}"))
}

fn write_report<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), String> {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(value)
            .map_err(|e| format!("cannot serialize report: {e}"))?;
        std::fs::write(path, json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.cmd {
        Cmd::Verify(args) => {
            let spec = load_spec(&args.input)?;
            let opts = RunOptions::merged(&spec, args.max_degree, args.seed);
            let report = cmd_verify(&spec, &opts)?;
            print!("{report}");
            write_report(&args.report, &report)?;
            Ok(report.passed())
        }
        Cmd::Cohomology(args) => {
            let spec = load_spec(&args.input)?;
            let opts = RunOptions::merged(&spec, args.max_degree, args.seed);
            let out = cmd_cohomology(&spec, &opts)?;
            print!("{out}");
            write_report(&args.report, &out)?;
            Ok(true)
        }
        Cmd::Transport(args) => {
            let spec = load_spec(&args.input)?;
            let opts = RunOptions::merged(&spec, args.max_degree, args.seed);
            let out = cmd_transport(&spec, &opts)?;
            print!("{out}");
            write_report(&args.report, &out)?;
            Ok(out.passed())
        }
        Cmd::Fixtures { sub: FixturesCmd::List } => {
            for (name, desc) in fixtures() {
                println!("{name}: {desc}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
