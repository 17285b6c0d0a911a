//! `maxcurve` — verification runs for the maximal-curve laboratory.
//!
//! Exit codes: 0 when every executed check passes, 1 when any check fails,
//! 2 on usage errors (bad parameters, caps, unwritable paths).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use maxcurve_cli::config::{parse_config_file, RawConfig, Section, UsageError};
use maxcurve_cli::{render, run};

#[derive(Parser)]
#[command(name = "maxcurve", version, about = "Exact verification runs for a family of maximal curves over F_{q^2}, q = n^3")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the three exact polynomial identities in F_{n^2}[X]
    VerifyIdentities(CommonArgs),
    /// Enumerate the rational points; --emit writes the JSONL dump
    Points(CommonArgs),
    /// Point count vs the Hasse-Weil bound, surface containment, smoothness
    Maximality(CommonArgs),
    /// Generator actions, group closures and fixed-point counts
    Aut(CommonArgs),
    /// Weierstrass semigroup, order sequence and decompositions
    Semigroup(CommonArgs),
    /// Riemann-Roch basis dimensions and evaluation ranks
    RrBasis(CommonArgs),
    /// Quotient-curve genus/order table per divisor of n^2-n+1
    Quotients(CommonArgs),
    /// The two incompatible bounds on a Hermitian covering degree
    Covering(CommonArgs),
    /// Aggregate report over all sections
    #[command(visible_alias = "verify")]
    Report(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Curve parameter n = p^h, a prime power
    #[arg(long)]
    n: Option<u64>,
    /// Field characteristic (use together with --h)
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree over the prime field (use together with --p)
    #[arg(long)]
    h: Option<u32>,
    /// Output format: json | csv | md | text
    #[arg(long)]
    format: Option<String>,
    /// Path for the JSONL point dump (points subcommand)
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Refuse point enumeration when q^2 exceeds this
    #[arg(long)]
    max_field_size: Option<u64>,
    /// Refuse group closures expected to exceed this many elements
    #[arg(long)]
    max_closure: Option<u64>,
    /// Suppress runtime fields so output is byte-identical across runs
    #[arg(long)]
    no_timing: bool,
    /// Include enumeration- and closure-backed checks in the report
    #[arg(long)]
    all: bool,
    /// key=value file mirroring the long flags; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn into_raw(self) -> Result<RawConfig, UsageError> {
        let flags = RawConfig {
            n: self.n,
            p: self.p,
            h: self.h,
            format: self.format,
            emit: self.emit,
            max_field_size: self.max_field_size,
            max_closure: self.max_closure,
            no_timing: self.no_timing,
            all: self.all,
        };
        match self.config {
            None => Ok(flags),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    UsageError(format!("cannot read config {}: {e}", path.display()))
                })?;
                Ok(flags.or(parse_config_file(&text)?))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, section) = match cli.cmd {
        Cmd::VerifyIdentities(a) => (a, Section::Identities),
        Cmd::Points(a) => (a, Section::Points),
        Cmd::Maximality(a) => (a, Section::Maximality),
        Cmd::Aut(a) => (a, Section::Aut),
        Cmd::Semigroup(a) => (a, Section::Semigroup),
        Cmd::RrBasis(a) => (a, Section::RrBasis),
        Cmd::Quotients(a) => (a, Section::Quotients),
        Cmd::Covering(a) => (a, Section::Covering),
        Cmd::Report(a) => (a, Section::Report),
    };

    let outcome = args
        .into_raw()
        .and_then(|raw| raw.validate())
        .and_then(|cfg| run(&cfg, section).map(|report| (cfg, report)));
    match outcome {
        Ok((cfg, report)) => {
            print!("{}", render(&report, cfg.format, section));
            if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
