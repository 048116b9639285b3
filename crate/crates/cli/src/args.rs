use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chm", version, about = "Exact checks and searches for circulant Hadamard matrices")]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct SeqInput {
    /// Sequence over '+' and '-', e.g. "-+++".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seq_file")]
    pub seq: Option<String>,

    /// File with one '+'/'-' sequence per line.
    #[arg(long)]
    pub seq_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, weight and autocorrelation verdicts for a sequence.
    Verify {
        #[command(flatten)]
        input: SeqInput,
    },
    /// Per-k spectral status, pair-count summaries and basis coefficients.
    Analyze {
        #[command(flatten)]
        input: SeqInput,
        /// "all" or a single multiplier k.
        #[arg(long, default_value = "all")]
        k: String,
    },
    /// Enumerate circulant Hadamard first rows of order n.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "exhaustive")]
        strategy: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Restrict prunedDFS to the two admissible weights.
        #[arg(long)]
        weight_filter: bool,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resumable progress file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Maximum number of solutions listed.
        #[arg(long, default_value_t = chm_core::search::DEFAULT_SOLUTION_CAP)]
        cap: usize,
        /// Leading entries fixed per shard.
        #[arg(long)]
        shard_bits: Option<usize>,
    },
    /// Solve k·j ≡ c (mod n); c defaults to n/2.
    Congruence {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// Rank of the first-quadrant cosine basis.
    BasisRank {
        /// One or more orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Roots of unity with their first-quadrant basis membership (approximate coordinates).
    Roots {
        #[arg(long)]
        n: usize,
    },
    /// Order-level lemma checks; lemma 3 needs n = 4t².
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        which: Vec<u8>,
    },
    /// Re-validate the solutions stored in a search report.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run every applicable search strategy and compare.
    CrossValidate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}
