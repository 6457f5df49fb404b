mod input;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use inose_core::padic::{DEFAULT_MAX_PRECISION, DEFAULT_PRECISION};
use inose_core::selftest::{run_all, SuiteConfig};
use inose_core::{Error, PrecisionPolicy};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "inose",
    version,
    about = "Reduction of elliptic curves, Kummer and Shioda-Inose surfaces over p-adic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Initial p-adic working precision in digits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Precision at which retries stop.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRECISION)]
    max_precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Read the input document from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduction type of y^2 = x^3 + a x + b: {"p", "a", "b"}.
    AnalyzeCurve,
    /// Good reduction of Km(C1 x C2): {"p", "c1": [a, b], "c2": [a, b]}.
    AnalyzeKummer,
    /// Verdict for a normalized pencil {"p", "a", "b_m1", "b_0", "b_1"}
    /// or a K3 pencil {"p", "A": [..], "B": [..]}.
    AnalyzeSi,
    /// The 24-curve configuration and its IV* fibers.
    ShowConfig,
    /// Galois-image degree bounds.
    Bounds,
    /// Run the property suite; exits nonzero on any failure.
    Selftest {
        /// Corpus seed.
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        /// Small corpora instead of the acceptance sizes.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_PRECISION: u8 = 3;
const EXIT_SCOPE: u8 = 4;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(e) if e.is_precision() => EXIT_PRECISION,
        Some(e) if e.is_out_of_scope() => EXIT_SCOPE,
        Some(Error::Inconsistent(_)) => EXIT_FAILURE,
        Some(_) => EXIT_INPUT,
        // I/O and argument problems.
        None => EXIT_INPUT,
    }
}

fn read_document(path: Option<&PathBuf>) -> anyhow::Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
    };
    Ok(input::parse_document(&text)?)
}

fn run(cli: &Cli) -> anyhow::Result<(Value, bool)> {
    let policy = PrecisionPolicy::new(cli.precision, cli.max_precision)?;
    let doc = || read_document(cli.input.as_ref());
    let report = match &cli.command {
        Command::AnalyzeCurve => report::analyze_curve(&doc()?, &policy)?,
        Command::AnalyzeKummer => report::analyze_kummer(&doc()?, &policy)?,
        Command::AnalyzeSi => report::analyze_si(&doc()?, &policy)?,
        Command::ShowConfig => report::show_config()?,
        Command::Bounds => report::bounds()?,
        Command::Selftest { seed, quick } => {
            let mut cfg = if *quick {
                SuiteConfig::quick(*seed)
            } else {
                SuiteConfig::full(*seed)
            };
            cfg.policy = policy;
            let reports = run_all(&cfg);
            let ok = reports.iter().all(|r| r.passed);
            if matches!(cli.format, Format::Text) {
                let mut out = io::stdout().lock();
                for r in &reports {
                    let _ = writeln!(out, "{r}");
                }
                return Ok((Value::Null, ok));
            }
            return Ok((report::selftest(&reports), ok));
        }
    };
    Ok((report, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
                Format::Text if report.is_null() => String::new(),
                Format::Text => report::to_text(&report),
            };
            if !text.is_empty() {
                // A closed pipe (`inose ... | head`) is not an error.
                let _ = writeln!(io::stdout().lock(), "{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
