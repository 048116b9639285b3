//! Ground-truth enumeration of circulant Hadamard first rows.
//!
//! Three strategies are provided and must agree wherever they all apply:
//!
//! * [`Strategy::Exhaustive`] tests all `2ⁿ` sequences;
//! * [`Strategy::WeightConstrained`] tests only sequences with `(n ∓ √n)/2`
//!   entries equal to `−1` (perfect-square `n`);
//! * [`Strategy::PrunedDfs`] assigns entries left to right and abandons a
//!   branch once a partial autocorrelation can no longer reach zero.
//!
//! Work is split into shards by fixing the first `P` entries. Shards run on a
//! rayon pool and their results are merged in prefix order, so reports do not
//! depend on scheduling or on the number of jobs.

pub mod checkpoint;
mod kernel;

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::exact_sqrt;
use crate::seqcore::{lemma1_check, lemma2_check, CheckStatus, Sequence};
use crate::spectra::full_spectral_verdict;
use checkpoint::{CheckpointHeader, CheckpointWriter};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SOLUTION_CAP: usize = 1024;
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 24;
/// Sequences are handled as `u64` masks.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid order {0}: search supports 1 ≤ n ≤ 64")]
    InvalidOrder(usize),
    #[error("order {0} is not a perfect square; the weight constraint needs one")]
    NotSquare(usize),
    #[error("order {n} exceeds the exhaustive cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("jobs must be at least 1")]
    NoJobs,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "weightConstrained")]
    WeightConstrained,
    #[serde(rename = "prunedDFS")]
    PrunedDfs,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::WeightConstrained => "weightConstrained",
            Strategy::PrunedDfs => "prunedDFS",
        })
    }
}

impl FromStr for Strategy {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "weightconstrained" | "weight" => Ok(Strategy::WeightConstrained),
            "pruneddfs" | "dfs" => Ok(Strategy::PrunedDfs),
            _ => Err(SearchError::UnknownStrategy(s.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub strategy: Strategy,
    pub jobs: usize,
    /// Restrict [`Strategy::PrunedDfs`] to the two admissible weights.
    pub weight_filter: bool,
    /// Maximum number of solutions listed in the report; counts stay exact.
    pub cap: usize,
    pub max_exhaustive_n: usize,
    /// Number of leading entries fixed per shard; derived from `jobs` if unset.
    pub shard_bits: Option<usize>,
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(n: usize, strategy: Strategy) -> Self {
        Self {
            n,
            strategy,
            jobs: 1,
            weight_filter: false,
            cap: DEFAULT_SOLUTION_CAP,
            max_exhaustive_n: DEFAULT_MAX_EXHAUSTIVE_N,
            shard_bits: None,
            checkpoint: None,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn weight_filter(mut self, on: bool) -> Self {
        self.weight_filter = on;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn max_exhaustive_n(mut self, max: usize) -> Self {
        self.max_exhaustive_n = max;
        self
    }

    pub fn shard_bits(mut self, bits: usize) -> Self {
        self.shard_bits = Some(bits);
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    /// Smallest `P` with `2^P ≥ 4·jobs`, at least 12 when checkpointing, at most `n`.
    fn effective_shard_bits(&self) -> usize {
        let bits = self.shard_bits.unwrap_or_else(|| {
            let min = (4 * self.jobs).next_power_of_two().trailing_zeros() as usize;
            if self.checkpoint.is_some() {
                min.max(12)
            } else {
                min
            }
        });
        bits.clamp(1, self.n)
    }
}

/// The `−1` counts `(n − √n)/2` and `(n + √n)/2`.
pub fn admissible_weights(n: usize) -> Option<[usize; 2]> {
    exact_sqrt(n as u64).map(|s| {
        let s = s as usize;
        [(n - s) / 2, (n + s) / 2]
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub n: usize,
    pub strategy: Strategy,
    #[serde(default)]
    pub weight_filter: bool,
    /// Exact number of first rows found.
    pub raw_count: u64,
    /// Number of classes up to rotation and negation.
    pub canonical_count: Option<u64>,
    /// Sorted, at most `cap` entries.
    pub solutions: Vec<String>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub cap: usize,
}

impl SearchReport {
    pub fn truncated(&self) -> bool {
        (self.solutions.len() as u64) < self.raw_count
    }
}

struct ShardOutcome {
    found: Vec<u64>,
    nodes: u64,
}

fn run_shard(cfg: &SearchConfig, p: usize, prefix: u64, weights: Option<&[usize]>) -> ShardOutcome {
    let n = cfg.n;
    let mut found = Vec::new();
    let nodes = match cfg.strategy {
        Strategy::Exhaustive => kernel::scan_all(n, p, prefix, &mut found),
        Strategy::WeightConstrained => kernel::scan_weights(n, p, prefix, weights.unwrap(), &mut found),
        Strategy::PrunedDfs => {
            let mut dfs = kernel::PrunedDfs::new(n, weights);
            if dfs.seed(p, prefix) {
                dfs.run(p);
            }
            found = dfs.found;
            dfs.nodes
        }
    };
    // Every reported row is re-verified with integer autocorrelation.
    assert!(found.iter().all(|&m| Sequence::from_bits(n, m).unwrap().is_circulant_hadamard()));
    ShardOutcome { found, nodes }
}

/// Runs a search and returns its report.
pub fn enumerate(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let n = cfg.n;
    if n == 0 || n > MAX_ORDER {
        return Err(SearchError::InvalidOrder(n));
    }
    if cfg.jobs == 0 {
        return Err(SearchError::NoJobs);
    }
    if cfg.strategy == Strategy::Exhaustive && n > cfg.max_exhaustive_n {
        return Err(SearchError::CapExceeded { n, cap: cfg.max_exhaustive_n });
    }
    let weighted = cfg.strategy == Strategy::WeightConstrained || (cfg.strategy == Strategy::PrunedDfs && cfg.weight_filter);
    let weights = if weighted { Some(admissible_weights(n).ok_or(SearchError::NotSquare(n))?) } else { None };
    // With the weight filter, the pruned search covers the lower weight only and
    // recovers the upper-weight rows by negation, which maps one onto the other
    // and preserves the autocorrelation.
    let fold_negation = cfg.strategy == Strategy::PrunedDfs && weighted && n > 1;
    let dfs_weights: Option<Vec<usize>> = match (weights, fold_negation) {
        (Some([lo, _]), true) => Some(vec![lo]),
        (Some(ws), false) => Some(ws.to_vec()),
        (None, _) => None,
    };

    let p = cfg.effective_shard_bits();
    let header = CheckpointHeader { n, strategy: cfg.strategy, weight_filter: cfg.weight_filter, shard_bits: p };
    let (done, writer) = match &cfg.checkpoint {
        Some(path) => (checkpoint::load(path, &header)?, Some(Mutex::new(CheckpointWriter::open(path, &header)?))),
        None => (Default::default(), None),
    };
    let pending: Vec<u64> = (0..1u64 << p).filter(|pre| !done.contains_key(pre)).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let outcomes: Vec<Result<(u64, ShardOutcome), SearchError>> = pool.install(|| {
        pending
            .par_iter()
            .map(|&prefix| {
                let out = run_shard(cfg, p, prefix, dfs_weights.as_deref());
                if let Some(w) = &writer {
                    w.lock().unwrap().record(prefix, &out.found)?;
                }
                Ok((prefix, out))
            })
            .collect()
    });

    let mut masks: Vec<u64> = done.into_values().flatten().collect();
    let mut nodes = 0;
    for outcome in outcomes {
        let (_, out) = outcome?;
        nodes += out.nodes;
        masks.extend(out.found);
    }
    if fold_negation {
        let full = kernel::full_mask(n);
        let negated: Vec<u64> = masks.iter().map(|m| !m & full).collect();
        masks.extend(negated);
    }

    let mut rows: Vec<Sequence> = masks.iter().map(|&m| Sequence::from_bits(n, m).unwrap()).collect();
    rows.sort_by_cached_key(|s| s.to_string());
    rows.dedup();
    let canonical: BTreeSet<String> = rows.iter().map(|s| canonicalize(s).to_string()).collect();
    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        n,
        strategy: cfg.strategy,
        weight_filter: cfg.weight_filter,
        raw_count: rows.len() as u64,
        canonical_count: Some(canonical.len() as u64),
        solutions: rows.iter().take(cfg.cap).map(ToString::to_string).collect(),
        nodes_explored: nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        cap: cfg.cap,
    })
}

/// Representative of the class of `seq` under rotation and global negation.
///
/// Of `seq` and its negation, the one with fewer `−1` entries is kept (both
/// on a tie), and the lexicographically least rotation is taken with `'-'`
/// ordered before `'+'`. For the order-4 rows this sends all eight solutions
/// to `-+++`.
pub fn canonicalize(seq: &Sequence) -> Sequence {
    let n = seq.len();
    let minus = seq.minus_count();
    let mut candidates = Vec::with_capacity(2);
    if 2 * minus <= n {
        candidates.push(seq.clone());
    }
    if 2 * minus >= n {
        candidates.push(seq.negated());
    }
    // −1 < +1 numerically, which is the '-' < '+' string order.
    candidates
        .iter()
        .flat_map(|c| (0..n).map(move |s| c.rotated(s)))
        .min_by(|a, b| a.entries().cmp(b.entries()))
        .expect("n ≥ 1")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub weight_filter: bool,
    pub raw_count: u64,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub n: usize,
    pub runs: Vec<StrategyRun>,
    pub solutions: Vec<String>,
    pub solution_sets_agree: bool,
    /// Whether the spectral check applied (`4 | n`).
    pub spectral_checked: bool,
    pub spectral_ok: bool,
    pub lemmas_ok: bool,
    pub pass: bool,
}

/// Runs every applicable strategy at order `n` and checks that they agree,
/// and that each solution passes the spectral and lemma checks.
pub fn cross_validate(n: usize, jobs: usize, max_exhaustive_n: usize) -> Result<CrossValidation, SearchError> {
    if n > max_exhaustive_n {
        return Err(SearchError::CapExceeded { n, cap: max_exhaustive_n });
    }
    let mut configs = vec![
        SearchConfig::new(n, Strategy::Exhaustive),
        SearchConfig::new(n, Strategy::PrunedDfs),
    ];
    if admissible_weights(n).is_some() {
        configs.push(SearchConfig::new(n, Strategy::WeightConstrained));
        configs.push(SearchConfig::new(n, Strategy::PrunedDfs).weight_filter(true));
    }
    let reports = configs
        .into_iter()
        .map(|c| enumerate(&c.jobs(jobs).cap(usize::MAX).max_exhaustive_n(max_exhaustive_n)))
        .collect::<Result<Vec<_>, _>>()?;
    let solutions = reports[0].solutions.clone();
    let solution_sets_agree = reports.iter().all(|r| r.solutions == solutions);
    let rows: Vec<Sequence> = solutions.iter().map(|s| s.parse().expect("report rows parse")).collect();
    let spectral_checked = n.is_multiple_of(4);
    let spectral_ok = !spectral_checked
        || rows.iter().all(|s| full_spectral_verdict(&s.minus_indices()).expect("4 | n").overall);
    let lemmas_ok = rows
        .iter()
        .all(|s| lemma1_check(s).status != CheckStatus::Fail && lemma2_check(s).pass);
    let runs = reports
        .iter()
        .map(|r| StrategyRun {
            strategy: r.strategy,
            weight_filter: r.weight_filter,
            raw_count: r.raw_count,
            nodes_explored: r.nodes_explored,
        })
        .collect();
    Ok(CrossValidation {
        n,
        runs,
        solutions,
        solution_sets_agree,
        spectral_checked,
        spectral_ok,
        lemmas_ok,
        pass: solution_sets_agree && spectral_ok && lemmas_ok,
    })
}
