//! `mzv`: evaluate, regularize and verify.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or domain error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "mzv", version, about = "Regularized multiple zeta values and symmetric-sum identities")]
#[command(after_help = "Indices are written k1,k2,...,kr and sum over 0 < m1 < ... < mr; \
the last entry must be at least 2 for convergence.")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    prec_bits: u32,
    /// Truncation point N of the partial sums.
    #[arg(long, global = true, default_value_t = 100_000)]
    trunc: u64,
    /// Number of Euler-Maclaurin correction terms.
    #[arg(long, global = true, default_value_t = 6)]
    tail_order: u32,
    /// Order of the series behind the maps between regularizations (default: as needed).
    #[arg(long, global = true)]
    series_order: Option<usize>,
    /// Tolerance; overrides the per-identity defaults.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `suite` and `table` (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Value cache: read at start when present, written back at exit.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ζ(m), ζ(K) or ζ*(K).
    Eval {
        /// zeta, mzv or mzsv.
        kind: String,
        /// m for zeta, k1,...,kr otherwise.
        index: String,
    },
    /// Regularized polynomial in T, symbolic and numeric.
    Reg {
        /// harm, star-harm, shuffle (or sh), star-sh.
        flavor: String,
        index: String,
        /// For shuffle: `word` (recursion on words) or `rho` (ρ applied to harm).
        #[arg(long, default_value = "word")]
        route: String,
    },
    /// Check one identity.
    Verify {
        /// Identity name; see --list.
        #[arg(required_unless_present = "list")]
        identity: Option<String>,
        /// List identities and their parameters.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        /// Proper subset B of 1..r, comma separated.
        #[arg(long)]
        b: Option<String>,
        /// Display number of the worked example (1, 2 or 3).
        #[arg(long)]
        display: Option<u32>,
        #[arg(long)]
        route: Option<String>,
    },
    /// Reproduce the worked example as a table.
    Table {
        /// Only `example1` is available.
        #[arg(default_value = "example1")]
        which: String,
        #[arg(long, default_value = "2,3,4")]
        k: String,
        #[arg(long, default_value = "2,3")]
        l: String,
    },
    /// List set partitions of {1..r} with their coefficients.
    Partitions {
        r: u32,
        /// Only partitions with no block inside B (the restricted family).
        #[arg(long)]
        b: Option<String>,
        /// Print the count only.
        #[arg(long)]
        count: bool,
    },
    /// Bell polynomials and Stirling numbers.
    Bell {
        r: usize,
        /// Partial polynomial B_{r,k}; omitted gives the complete Y_r.
        k: Option<usize>,
        /// Print Stirling tables up to r instead.
        #[arg(long)]
        stirling: bool,
    },
    /// Run the acceptance matrix.
    Suite {
        /// Also run the Hoffman, shuffle-MZV and depth-one families.
        #[arg(long)]
        extended: bool,
        /// Print every report, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.global, cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
