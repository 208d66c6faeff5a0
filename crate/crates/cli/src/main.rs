//! `gkdim`: counting, GK estimation, identity checks and evaluation ranks
//! for relatively free graded Grassmann algebras.
//!
//! Exit status: 0 on success or MATCH, 1 on a mathematical mismatch, 2 on a
//! usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Outcome, UsageError};
use config::{parse_multidegree, Format, RunConfig};
use gkdim_core::spanning::EkBound;
use gkdim_core::{FieldSpec, GradingSpec, MultiDegree};

#[derive(Parser)]
#[command(name = "gkdim", version, about = "Growth of relatively free graded Grassmann algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_grading(s: &str) -> Result<GradingSpec, String> {
    s.parse().map_err(|e: gkdim_core::Error| e.to_string())
}

fn parse_char(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    FieldSpec::new(p).map(|f| f.characteristic()).map_err(|e| e.to_string())
}

fn parse_ek_bound(s: &str) -> Result<EkBound, String> {
    s.parse().map_err(|e: gkdim_core::Error| e.to_string())
}

#[derive(Args, Clone)]
struct Common {
    /// kstar:K, inf or k:K
    #[arg(long, default_value = "inf", value_parser = parse_grading)]
    grading: GradingSpec,
    /// 0 or an odd prime
    #[arg(long = "char", default_value = "0", value_parser = parse_char)]
    characteristic: u64,
    /// Variables of each parity
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to FILE instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Growth table, Hilbert coefficients and closed-form reconciliation
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 30)]
        tmax: u32,
        /// Emit the growth table as a LaTeX tabular
        #[arg(long)]
        latex: bool,
        /// Hilbert coefficients by multidegree
        #[arg(long)]
        multivariate: bool,
        /// Admissibility bound for k:K (exact, commutators, letters)
        #[arg(long, value_parser = parse_ek_bound)]
        alt_ek_bound: Option<EkBound>,
    },
    /// GK dimension from the cumulative growth table
    Gk {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 30)]
        tmax: u32,
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, value_parser = parse_ek_bound)]
        alt_ek_bound: Option<EkBound>,
    },
    /// Check the defining identities on random graded substitutions
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Truncation E(n)
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Additional polynomial to check, e.g. "z1" or "[y1,y2]z1"
        #[arg(long)]
        extra: Vec<String>,
    },
    /// Evaluation rank against spanning counts, per multidegree
    Rank {
        #[command(flatten)]
        common: Common,
        /// Every multidegree of total degree up to this
        #[arg(long)]
        total: Option<u32>,
        /// A single multidegree as y-exponents/z-exponents, e.g. 2,0/1,1
        #[arg(long, value_parser = parse_multidegree)]
        multidegree: Vec<MultiDegree>,
        /// Truncation E(n); derived per multidegree when absent
        #[arg(long)]
        n: Option<usize>,
        /// Evaluation points per multidegree
        #[arg(long)]
        points: Option<usize>,
        /// Exit 1 unless every component is exact
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 8)]
        max_word_total: u32,
        #[arg(long, value_parser = parse_ek_bound)]
        alt_ek_bound: Option<EkBound>,
    },
}

fn base(name: &str, c: &Common, m: usize) -> RunConfig {
    RunConfig::new(name, c.grading, c.characteristic, m, c.seed, c.format)
}

fn run(cmd: Command) -> (Result<Outcome, UsageError>, Option<PathBuf>) {
    match cmd {
        Command::Count {
            common,
            tmax,
            latex,
            multivariate,
            alt_ek_bound,
        } => {
            let mut cfg = base("count", &common, common.m.unwrap_or(1));
            cfg.tmax = Some(tmax);
            cfg.latex = latex;
            cfg.ek_bound = alt_ek_bound.unwrap_or_default();
            (commands::count(&cfg, multivariate), common.out)
        }
        Command::Gk {
            common,
            tmax,
            window,
            alt_ek_bound,
        } => {
            let mut cfg = base("gk", &common, common.m.unwrap_or(1));
            cfg.tmax = Some(tmax);
            cfg.window = Some(window);
            cfg.ek_bound = alt_ek_bound.unwrap_or_default();
            (commands::gk(&cfg), common.out)
        }
        Command::Verify {
            common,
            trials,
            n,
            extra,
        } => {
            let m = common.m.unwrap_or_else(|| default_template_m(&common));
            let mut cfg = base("verify", &common, m);
            cfg.trials = Some(trials);
            cfg.n = Some(n);
            cfg.extra = extra;
            (commands::verify(&cfg), common.out)
        }
        Command::Rank {
            common,
            total,
            multidegree,
            n,
            points,
            strict,
            max_word_total,
            alt_ek_bound,
        } => {
            let m = common
                .m
                .or_else(|| multidegree.first().map(MultiDegree::m))
                .unwrap_or(1);
            let mut cfg = base("rank", &common, m);
            cfg.total = total;
            cfg.multidegrees = multidegree;
            cfg.n = n;
            cfg.points = points;
            cfg.strict = strict;
            cfg.max_word_total = Some(max_word_total);
            cfg.ek_bound = alt_ek_bound.unwrap_or_default();
            (commands::rank(&cfg), common.out)
        }
    }
}

/// Enough variables that no identity template is skipped.
fn default_template_m(c: &Common) -> usize {
    FieldSpec::new(c.characteristic)
        .and_then(|f| gkdim_core::freealg::identity_templates(c.grading, f, 1))
        .map(|s| s.variables_needed().max(1))
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = run(cli.command);
    match result {
        Ok(Outcome { text, code }) => {
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code as u8)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
