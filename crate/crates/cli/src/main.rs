//! `primsum`: prime zeta functions, translated Erdős sums of the k-almost
//! primes, and the constants built from them.

mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use primsum_core::almost_prime::almost_zeta_at;
use primsum_core::prime_zeta::prime_zeta_at;
use primsum_core::roots::{build_table, FamilyRegistry, Workspace};
use primsum_core::translated::TranslatedSums;
use primsum_core::verify::{all_passed, Status, SuiteOptions, SuiteRegistry};
use primsum_core::{make_context, round_f64_for_display, round_for_display, Arg, Error};

use output::{format_err, table_records, write_records, write_table, Document, Format, Kind, Meta, OutputRecord};

const EXIT_COMPUTE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "primsum", version, about = "Prime zeta functions and translated Erdős sums of the k-almost primes")]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, default_value_t = 30)]
    precision: u32,
    /// Decimal places shown in the output.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of s_k, t_k, s'_k, sigma_k and h_k for k = 2..kmax.
    Table {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(2..=20))]
        kmax: u32,
    },
    /// Evaluate P(s), P_k(s), f(N_k, h) or D_k(h) = f(N_k, h) - f(N_1, h).
    Eval {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        h: Option<f64>,
    },
    /// Locate one root: sk, tk, spk, sigma, hk or hinf.
    Roots {
        family: String,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run a verification suite: orderings, theorem2, envelope or oracle.
    Verify {
        suite: String,
        /// Enumeration bound for the oracle suite.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "P")]
    P,
    #[value(name = "Pk")]
    Pk,
    #[value(name = "f")]
    F,
    #[value(name = "D")]
    D,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PrecisionTooLow(_) | Error::Domain { .. } | Error::Unknown { .. } => {
                Failure::Usage(e.to_string())
            }
            Error::Family { ref source, .. } if matches!(**source, Error::Domain { .. }) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<Box<dyn std::error::Error>> for Failure {
    fn from(e: Box<dyn std::error::Error>) -> Self {
        Failure::Compute(format!("output: {e}"))
    }
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
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag {flag}")))
}

/// Runs the command; `Ok(false)` means a verification check failed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let ctx = make_context(cli.precision)?;
    let digits = cli.digits;
    let mut doc = Document {
        meta: Meta {
            precision: cli.precision,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        records: Vec::new(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut passed = true;

    match &cli.command {
        Command::Table { kmax } => {
            doc.records = table_records(&build_table(*kmax, &ctx)?, digits);
            write_table(&mut out, &doc, cli.format)?;
            out.flush().ok();
            return Ok(true);
        }
        Command::Eval { target, k, s, h } => {
            let (name, value, err) = match target {
                Target::P => {
                    let s = require(*s, "--s")?;
                    let p = prime_zeta_at(&Arg::from_f64(s, &ctx)?, false, &ctx)?;
                    (format!("P({s})"), p.value, p.err_bound)
                }
                Target::Pk => {
                    let (k, s) = (require(*k, "--k")?, require(*s, "--s")?);
                    let p = almost_zeta_at(k, &Arg::from_f64(s, &ctx)?, false, &ctx)?;
                    (format!("P_{k}({s})"), p.value, p.err_bound)
                }
                Target::F => {
                    let (k, h) = (require(*k, "--k")?, require(*h, "--h")?);
                    let r = TranslatedSums::new(k, &ctx).f(k, h)?;
                    (format!("f(N_{k},{h})"), r.value, r.err_bound)
                }
                Target::D => {
                    let (k, h) = (require(*k, "--k")?, require(*h, "--h")?);
                    let r = TranslatedSums::new(k, &ctx).difference(k, h)?;
                    (format!("D_{k}({h})"), r.value, r.err_bound)
                }
            };
            doc.records.push(OutputRecord {
                kind: Kind::Constant,
                name,
                k: *k,
                value: round_for_display(&value, digits),
                err_bound: format_err(err),
                status: None,
            });
        }
        Command::Roots { family, k } => {
            let family = FamilyRegistry::default().get(family)?;
            let k = if family.takes_k() {
                Some(require(*k, "--k")?)
            } else {
                None
            };
            let mut ws = Workspace::new(&ctx);
            let r = family.solve(k.unwrap_or(0), &mut ws)?;
            doc.records.push(OutputRecord {
                kind: Kind::Constant,
                name: family.symbol().to_string(),
                k,
                value: round_f64_for_display(r.root, digits),
                err_bound: format_err(r.bracket.1 - r.bracket.0),
                status: None,
            });
        }
        Command::Verify { suite, limit } => {
            let suite = SuiteRegistry::default().get(suite)?;
            let checks = suite.run(&SuiteOptions { limit: *limit }, &ctx)?;
            passed = all_passed(&checks);
            doc.records = checks
                .iter()
                .map(|c| OutputRecord {
                    kind: Kind::Check,
                    name: c.name.clone(),
                    k: c.k,
                    value: format!("{:.6e}", c.value),
                    err_bound: format_err(c.err_bound),
                    status: Some(c.status.as_str().to_string()),
                })
                .collect();
            if cli.format == Format::Text {
                let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
                write_records(&mut out, &doc, cli.format)?;
                writeln!(
                    out,
                    "{}: {} pass, {} fail, {} report",
                    suite.name(),
                    count(Status::Pass),
                    count(Status::Fail),
                    count(Status::Report)
                )
                .ok();
                return Ok(passed);
            }
        }
    }
    write_records(&mut out, &doc, cli.format)?;
    out.flush().ok();
    Ok(passed)
}
