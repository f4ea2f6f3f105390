//! Thin command-line front end; all work happens in the library's `cli`
//! module so runs are scriptable and testable in-process.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use twisted_circulants::cli::{self, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "twisted-circulants",
    about = "Spectral scans for sums of twisted circulants and exact random-walk mixing on finite Heisenberg groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// Root seed for all sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output path (default stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for record streams.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads for parameter sweeps (affects speed only).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Operator norms of (M(r1,s1)+M(r2,s2))/2 over parameter quadruples.
    Spectrum {
        /// Odd prime modulus.
        #[arg(long)]
        n: u64,
        /// Explicit quadruples "r1,s1,r2,s2[;...]" instead of a scan.
        #[arg(long)]
        pairs: Option<String>,
        /// Enumerate all generating-regime quadruples (n <= 13).
        #[arg(long)]
        exhaustive: bool,
        /// Sample count when scanning without --exhaustive.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Equal-slopes closed-form norm over the (product, k) grid.
    Grid {
        #[arg(long)]
        n: u64,
        /// "caption" (1 - 1/n), "text" (cos(2 pi/n)), or a number in [0,1).
        #[arg(long, default_value = "caption")]
        threshold: String,
    },
    /// Exact total-variation decay of the walk, with optional Fourier bound.
    Mix {
        /// Odd prime modulus for H(n).
        #[arg(long, conflicts_with_all = ["p", "d"])]
        n: Option<u64>,
        /// Odd prime modulus for H(p,d).
        #[arg(long, requires = "d")]
        p: Option<u64>,
        /// Dimension d for H(p,d).
        #[arg(long, requires = "p")]
        d: Option<usize>,
        /// Step pairs "s1,r1;s2,r2" for H(n) (default "1,0;0,1").
        #[arg(long)]
        gens: Option<String>,
        /// Total-variation threshold.
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Also emit the representation-theoretic upper bound per step.
        #[arg(long)]
        bound: bool,
    },
    /// Re-run named invariant suites and emit a JSON report.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated odd primes.
        #[arg(long, default_value = "3,5,7,11,13", value_delimiter = ',')]
        n_list: Vec<u64>,
    },
    /// Cross-check one principal-series representation of H(p,d).
    Rep {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let command = match cli.command {
        CliCommand::Spectrum { n, pairs, exhaustive, samples } => {
            Command::Spectrum { n, pairs, exhaustive, samples }
        }
        CliCommand::Grid { n, threshold } => Command::Grid { n, threshold },
        CliCommand::Mix { n, p, d, gens, eps, max_steps, bound } => {
            Command::Mix { n, p, d, gens, eps, max_steps, bound }
        }
        CliCommand::Verify { suite, n_list } => Command::Verify { suite, n_list },
        CliCommand::Rep { p, d, c } => Command::Rep { p, d, c },
    };
    let config = RunConfig {
        command,
        seed: cli.seed,
        out: cli.out,
        format: match cli.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        },
        threads: cli.threads,
    };
    std::process::exit(cli::run(&config));
}
