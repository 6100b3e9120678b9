//! Command-line front end behind the `eulersum` binary.
//!
//! `run` parses arguments, resolves a [`CliConfig`] (defaults, then an
//! optional TOML file, then flags) and dispatches to one subcommand. Exit
//! codes: 0 success, 2 parse or bad input, 3 evaluation, 4 no relation,
//! 5 verification failure.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::{cmd_constants, cmd_discover, cmd_discover_basis, cmd_eval, cmd_reduce, cmd_stieltjes, cmd_verify};
pub use config::{CliConfig, ConfigFile, OutputFormat, Overrides, DEFAULT_CUTOFF, DEFAULT_DIGITS, DEFAULT_EM_ORDER};

pub const DEFAULT_TOL: u32 = 40;
pub const DEFAULT_WORKERS: usize = 1;
pub const DEFAULT_BASIS_ORDER: u32 = 8;

#[derive(Debug, Error)]
pub enum CliError {
    /// Already formatted, usually with a caret line.
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Eval(String),
    #[error("{0}")]
    NoRelation(String),
    #[error("{0}")]
    Verification(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Eval(_) => 3,
            CliError::NoRelation(_) => 4,
            CliError::Verification(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "eulersum", version, about = "High-precision Euler sums: evaluation, relation finding, reduction")]
struct Args {
    /// TOML file with any of: digits, cutoff, em_order, format, cache, corpus
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits (at least 30)
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Euler-Maclaurin cutoff k (at least 1000)
    #[arg(long, short = 'k', global = true)]
    cutoff: Option<u64>,
    /// Euler-Maclaurin order s (5..=21)
    #[arg(long, short = 's', global = true)]
    em_order: Option<u32>,
    #[arg(long, value_enum, global = true)]
    format: Option<OutputFormat>,
    /// Constant cache file
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Formula corpus; `core`, `appendix` and `knowledge` name the bundled ones
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a sum such as "M(1;2)" or "S(1;(2,1,2))"
    Eval {
        spec: String,
        /// Choose k and s from the requested digits instead of the configured values
        #[arg(long)]
        auto: bool,
    },
    /// Find a closed form by integer relation detection
    Discover {
        #[arg(required_unless_present = "no_sum")]
        spec: Option<String>,
        /// Run on the basis constants alone and report the exclusion bound
        #[arg(long)]
        no_sum: bool,
        /// Basis order for --no-sum
        #[arg(long, default_value_t = DEFAULT_BASIS_ORDER)]
        order: u32,
        #[arg(long, value_enum, default_value = "multipair")]
        mode: ModeArg,
        /// Write the per-iteration log10 min|y| trace to this file
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Print the symbolic derivation of a closed form
    Reduce { spec: String },
    /// Stieltjes coefficient rows and constants
    Stieltjes {
        #[arg(long, value_enum)]
        kind: TableKind,
        /// One value or an inclusive range a..b
        #[arg(long)]
        p: Option<String>,
    },
    /// Check every record of a corpus numerically
    Verify {
        /// Required agreement in digits
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: u32,
        #[arg(long, default_value_t = DEFAULT_WORKERS)]
        workers: usize,
    },
    /// Print constants: pi, gamma, log2, zN, M(a,b) or any closed form
    Constants {
        #[arg(required = true)]
        names: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Multipair,
    Classic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
    #[value(name = "gammaH")]
    GammaH,
    #[value(name = "gammah")]
    Gammah,
    #[value(name = "estimate")]
    Estimate,
    /// M(m;2) against the integral estimate N_m
    #[value(name = "im2")]
    Im2,
}

impl TableKind {
    fn default_range(self) -> RangeInclusive<u32> {
        match self {
            TableKind::D => 2..=20,
            TableKind::E => 2..=21,
            TableKind::GammaH | TableKind::Gammah | TableKind::Estimate => 3..=11,
            TableKind::Im2 => 1..=9,
        }
    }
}

/// "5", "3..11" or "3..=11"; both ends inclusive.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Input(format!("bad range '{text}': expected N or A..B"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        None => {
            let n = num(text)?;
            Ok(n..=n)
        }
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(args, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(args: Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let file = args.config.as_deref().map(ConfigFile::load).transpose()?;
    let flags = Overrides {
        digits: args.digits,
        cutoff: args.cutoff,
        em_order: args.em_order,
        format: args.format,
        cache: args.cache,
        corpus: args.corpus,
    };
    let cfg = CliConfig::resolve(file, flags)?;
    match args.command {
        Command::Eval { spec, auto } => cmd_eval(&spec, auto, &cfg, out),
        Command::Discover { no_sum: true, order, mode, log, .. } => cmd_discover_basis(order, mode, log.as_deref(), &cfg, out),
        Command::Discover { spec, mode, log, .. } => {
            cmd_discover(spec.as_deref().unwrap_or_default(), mode, log.as_deref(), &cfg, out, err)
        }
        Command::Reduce { spec } => cmd_reduce(&spec, &cfg, out),
        Command::Stieltjes { kind, p } => {
            let range = match p {
                Some(t) => parse_range(&t)?,
                None => kind.default_range(),
            };
            cmd_stieltjes(kind, range, &cfg, out)
        }
        Command::Verify { tol, workers } => cmd_verify(tol, workers, &cfg, out),
        Command::Constants { names } => cmd_constants(&names, &cfg, out),
    }
}
