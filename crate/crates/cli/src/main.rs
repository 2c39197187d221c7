//! `spinc`: spin^C Dirac spectra on product manifolds from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails, 2 on usage or
//! parse errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use commands::{Check, CliError, CmdResult, EtaArgs};
use report::{RunReport, Status};

#[derive(Debug, Parser)]
#[command(name = "spinc", version, about = "Spectra of spin^C Dirac operators on M1^{2p} x M2^{2q+1}")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify Clifford relations and the j0/j1 properties in dimension n.
    CliffordCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        dim: u8,
    },
    /// Assemble the product spectrum of an even and an odd factor.
    Assemble {
        /// Even factor: torus:a1,a2 | file:path | config:path
        #[arg(long)]
        f1: String,
        /// Odd factor: circle:a | file:path | config:path
        #[arg(long)]
        f2: String,
        #[arg(long)]
        cutoff: String,
        /// Also write the assembled spectrum to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eta function values.
    Eta {
        /// Circle holonomy a: spectrum {n + a}.
        #[arg(long, allow_hyphen_values = true)]
        circle: Option<String>,
        /// Spectrum file.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Model descriptor.
        #[arg(long)]
        model: Option<String>,
        /// Evaluate the partial sum at this s.
        #[arg(long)]
        s: Option<f64>,
        /// Closed-form eta(0) of a circle lattice.
        #[arg(long)]
        zero: bool,
        /// Truncation for generated spectra.
        #[arg(long, default_value = "1000")]
        cutoff: String,
    },
    /// Index of the positive-chirality Dirac operator from characteristic numbers.
    Index {
        #[arg(long)]
        dim: u32,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c1sq: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<i64>,
        /// Declare w2 = 0 (then c1 must be even).
        #[arg(long)]
        w2_zero: bool,
    },
    /// Dense-matrix checks on the flat T^2 x S^1.
    Oracle {
        /// Torus holonomies a1,a2.
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
        /// Circle holonomy a3.
        #[arg(long, allow_hyphen_values = true)]
        s1: String,
        #[arg(long, default_value = "5")]
        cutoff: String,
        #[arg(long, value_enum, value_delimiter = ',')]
        check: Vec<Check>,
        /// Run proposition parts on the flat symbols of T^{2p} x T^{2q+1} instead.
        #[arg(long)]
        symbol: Option<String>,
    },
}

fn run(command: Command) -> (&'static str, CmdResult) {
    match command {
        Command::CliffordCheck { dim } => ("clifford-check", commands::clifford_check(dim.into())),
        Command::Assemble { f1, f2, cutoff, out } => ("assemble", commands::assemble(&f1, &f2, &cutoff, out)),
        Command::Eta { circle, spec, model, s, zero, cutoff } => ("eta", commands::eta(EtaArgs { circle, spec, model, s, zero, cutoff })),
        Command::Index { dim, c1, c1sq, p1, w2_zero } => ("index", commands::index(dim, c1, c1sq, p1, w2_zero)),
        Command::Oracle { t2, s1, cutoff, check, symbol } => ("oracle", commands::oracle(&t2, &s1, &cutoff, &check, symbol.as_deref())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = run(cli.command);
    let (report, text) = match result {
        Ok(outcome) => {
            let status = match outcome.failure {
                Some(message) => Status::Failed { message },
                None => Status::Ok,
            };
            (RunReport::new(name, outcome.inputs, outcome.results, status), outcome.text)
        }
        Err(CliError { code, message }) => {
            let status = if code == 1 { Status::Failed { message: message.clone() } } else { Status::Error { message: message.clone() } };
            (RunReport::new(name, Value::Null, Value::Null, status), String::new())
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
    } else {
        print!("{text}");
        match &report.status {
            Status::Ok => {}
            Status::Failed { message } => eprintln!("check failed: {message}"),
            Status::Error { message } => eprintln!("error: {message}"),
        }
    }
    ExitCode::from(report.exit_code())
}
