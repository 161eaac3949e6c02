mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphoseq::Budget;

/// Morphic sequences, tree functions, mix-DFAOs, kernels, rewriting and turtle figures.
#[derive(Debug, Parser)]
#[command(name = "morphoseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of the sequence, or an arithmetic subsequence of it.
    Generate {
        spec: PathBuf,
        #[arg(short, long)]
        n: usize,
        /// Print the uncoded fixed point over Γ.
        #[arg(long)]
        pure: bool,
        #[command(flatten)]
        progression: Progression,
    },
    /// Print `n P(n) R(n) depth(n)` for nodes 1..=N of the tree function.
    Tree {
        spec: PathBuf,
        #[arg(short, long)]
        n: usize,
    },
    /// Print the mix-DFAO of the spec.
    Automaton {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        minimize: bool,
    },
    /// Print φ_M(N), or with --inverse the index of a digit word.
    Phi {
        spec: PathBuf,
        value: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Print the subsequence kernel classes, or staircase evidence.
    Kernel {
        /// Spec file; omit when --staircase is given.
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 32)]
        witness_len: usize,
        /// Staircase parameter file (gaps, limit, witness_len, max_depth).
        #[arg(long, conflicts_with_all = ["spec", "rationality"])]
        staircase: Option<PathBuf>,
        /// Also report subtree signature counts up to this depth.
        #[arg(long)]
        rationality: Option<usize>,
        /// Tree nodes materialized for --rationality.
        #[arg(long, default_value_t = 20_000)]
        nodes: usize,
    },
    /// Reduce the start term of the rewriting system.
    Rewrite {
        spec: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Print only the stable prefix after the last step.
        #[arg(long)]
        quiet: bool,
    },
    /// Trace the turtle figure of the sequence.
    Turtle {
        spec: PathBuf,
        /// Turning angles in degrees, e.g. "0=140,1=-80".
        #[arg(long)]
        angles: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// BASE or BASE,HORIZON; the horizon defaults to 10×BASE.
        #[arg(long, value_parser = parse_closure)]
        check_closure: Option<(usize, usize)>,
    },
    /// Cross-check two specs: prefixes, tree shapes and kernel counts.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        n: usize,
        /// Applied to the first spec only.
        #[command(flatten)]
        progression: Progression,
        #[arg(long, default_value_t = 32)]
        witness_len: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
struct Progression {
    #[arg(long, default_value_t = 0)]
    offset: usize,
    #[arg(long, default_value_t = 1)]
    step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

fn parse_closure(s: &str) -> Result<(usize, usize), String> {
    let mut parts = s.split(',');
    let base: usize = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse()
        .map_err(|e| format!("base: {e}"))?;
    let horizon = match parts.next() {
        Some(h) => h.trim().parse().map_err(|e| format!("horizon: {e}"))?,
        None => base.checked_mul(10).ok_or("base too large")?,
    };
    if parts.next().is_some() {
        return Err("expected BASE or BASE,HORIZON".into());
    }
    Ok((base, horizon))
}

pub const BUDGET_VAR: &str = "MORPHOSEQ_BUDGET";

fn budget() -> Result<Budget, commands::Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget)
            .map_err(|e| commands::Failure::Usage(format!("{BUDGET_VAR}=`{v}`: {e}"))),
        Err(_) => Ok(Budget::DEFAULT),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = Vec::new();
    let result = budget().and_then(|b| commands::run(cli.command, b, &mut out));
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(&out);
    let _ = lock.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("morphoseq: {f}");
            ExitCode::from(f.code())
        }
    }
}
