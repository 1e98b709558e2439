//! `superh`: dimension tables, decompositions, branching and the verification
//! suites from the command line.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! a usage or parse error.

mod commands;
mod output;
mod range;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;
use range::Span;
use superh_core::{Error, Status};

#[derive(Parser, Debug)]
#[command(name = "superh", version, about = "Harmonic analysis on superspace R^{m|2n}")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Grid {
    /// Bosonic dimension, `a` or `a..b` (inclusive).
    #[arg(short, long = "m", value_name = "RANGE")]
    m: Span,
    /// Number of fermionic pairs, `a` or `a..b`.
    #[arg(short, long = "n", value_name = "RANGE")]
    n: Span,
    /// Degree, `a` or `a..b`.
    #[arg(short, long = "k", value_name = "RANGE", default_value = "0..6")]
    k: Span,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim H_k, dim of the simple module L_(k,0,...,0), and the window flag.
    Dims(Grid),
    /// Run a verification suite (or `all`) for degrees up to the top of -k.
    Check {
        /// sl2, lb, killing, projections, fischer, integrals, irreducibility,
        /// windows, branching or all.
        suite: String,
        #[command(flatten)]
        grid: Grid,
    },
    /// Integrate a polynomial over the supersphere by both methods.
    Integrate {
        /// e.g. "x1^2 + 3*xg1*xg2".
        expr: String,
        #[arg(short, long = "m")]
        m: usize,
        #[arg(short, long = "n")]
        n: usize,
    },
    /// The so(m) + sp(2n) pieces of H_k.
    Decompose(Grid),
    /// Branching of L_(k,0,...,0) to osp(m-1|2n), verified explicitly.
    Branch(Grid),
    /// Fischer decomposition of P_k for degrees up to the top of -k.
    Fischer(Grid),
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SUPERH_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| format!("SUPERH_THREADS={raw:?} is not a number"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("superh: {e}");
        return ExitCode::from(2);
    }
    let report = match commands::run(&cli.command, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("superh: {e}");
            return ExitCode::from(match e {
                Error::Inconsistent(_) => 1,
                _ => 2,
            });
        }
    };
    if let Err(e) = output::write(&report, cli.format, &mut io::stdout().lock()) {
        eprintln!("superh: {e}");
        return ExitCode::from(1);
    }
    if report.status == Status::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
