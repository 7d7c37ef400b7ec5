// `!(x <= limit)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod batch;
mod bundle;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rdual_core::Tolerances;

use args::Cli;
use commands::{describe, execute, write_artifact, CliError, Context};
use report::{RunReport, Verdict};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = Tolerances::default();
    let tol = match Tolerances::new(cli.global.tol_rank, cli.global.tol_cert, defaults.exact_rel) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let ctx = Context {
        tol,
        jobs: cli.global.jobs,
    };
    let (name, inputs) = describe(&cli.command);

    let (report, artifact) = match execute(&cli.command, &ctx) {
        Ok(produced) => (
            RunReport::from_outcome(&name, inputs, tol, produced.outcome),
            produced.artifact,
        ),
        Err(CliError::Usage(msg)) => return usage_error(&msg),
        Err(CliError::Compute(msg)) => (RunReport::failed(&name, inputs, tol, msg), None),
    };

    let body = serde_json::to_value(&report).expect("plain data");
    let text = serde_json::to_string_pretty(&body).expect("plain data");
    // a closed pipe (e.g. `| head`) is not an error of the run
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    eprint!("{}", report.summary());

    if let Some(path) = &cli.global.out {
        // commands without an artifact write their report
        let value = artifact.unwrap_or(body);
        if let Err(CliError::Usage(msg) | CliError::Compute(msg)) = write_artifact(path, &value) {
            return usage_error(&msg);
        }
    }
    match report.verdict {
        Verdict::Fail => ExitCode::from(EXIT_FAIL),
        Verdict::Pass | Verdict::Measured => ExitCode::SUCCESS,
    }
}
