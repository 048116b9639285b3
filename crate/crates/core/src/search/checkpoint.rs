//! Resumable progress for sharded searches.
//!
//! ```text
//! # chm search checkpoint
//! n=36
//! strategy=prunedDFS
//! weight_filter=true
//! shard_bits=12
//! solution=<sequence>      (zero or more, belonging to the next prefix line)
//! prefix=011010010110
//! ```
//!
//! A `prefix=` line marks a completed shard; character `i` of the bitstring is
//! `1` when entry `i` is `−1`. Solution lines not followed by a prefix line
//! belong to an interrupted write and are dropped on load.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{SearchError, Strategy};
use crate::seqcore::Sequence;

const MAGIC: &str = "# chm search checkpoint";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub n: usize,
    pub strategy: Strategy,
    pub weight_filter: bool,
    pub shard_bits: usize,
}

impl CheckpointHeader {
    fn render(&self) -> String {
        format!(
            "{MAGIC}\nn={}\nstrategy={}\nweight_filter={}\nshard_bits={}\n",
            self.n, self.strategy, self.weight_filter, self.shard_bits
        )
    }
}

/// Completed shards and the solution masks they produced.
pub type CompletedShards = BTreeMap<u64, Vec<u64>>;

fn bad(msg: impl Into<String>) -> SearchError {
    SearchError::Checkpoint(msg.into())
}

pub fn prefix_string(prefix: u64, bits: usize) -> String {
    (0..bits).map(|i| if prefix >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_prefix(s: &str, bits: usize) -> Result<u64, SearchError> {
    if s.len() != bits {
        return Err(bad(format!("prefix {s:?} has length {}, expected {bits}", s.len())));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (i, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(bad(format!("invalid prefix character {ch:?}"))),
    })
}

/// Loads completed shards from `path`, or returns an empty map if the file
/// does not exist. The header must match `expected`.
pub fn load(path: &Path, expected: &CheckpointHeader) -> Result<CompletedShards, SearchError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(CompletedShards::new()),
        Err(e) => return Err(e.into()),
    };
    let mut lines = BufReader::new(file).lines();
    let mut header = Vec::new();
    for _ in 0..5 {
        header.push(lines.next().ok_or_else(|| bad("truncated header"))??);
    }
    let got = header.join("\n") + "\n";
    if got != expected.render() {
        return Err(bad(format!("header mismatch: file has\n{got}expected\n{}", expected.render())));
    }
    let mut done = CompletedShards::new();
    let mut pending = Vec::new();
    for line in lines {
        let line = line?;
        if let Some(s) = line.strip_prefix("solution=") {
            let seq: Sequence = s.parse().map_err(|e| bad(format!("bad solution line: {e}")))?;
            if seq.len() != expected.n {
                return Err(bad(format!("solution {s} has the wrong order")));
            }
            pending.push(seq.to_bits().expect("n ≤ 64"));
        } else if let Some(p) = line.strip_prefix("prefix=") {
            done.insert(parse_prefix(p, expected.shard_bits)?, std::mem::take(&mut pending));
        } else if !line.trim().is_empty() {
            return Err(bad(format!("unrecognized line {line:?}")));
        }
    }
    Ok(done)
}

/// Append-only writer; creates the file with a header if needed.
pub struct CheckpointWriter {
    file: File,
    n: usize,
    shard_bits: usize,
}

impl CheckpointWriter {
    pub fn open(path: &Path, header: &CheckpointHeader) -> Result<Self, SearchError> {
        let exists = path.exists() && std::fs::metadata(path)?.len() > 0;
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if !exists {
            file.write_all(header.render().as_bytes())?;
            file.flush()?;
        }
        Ok(Self { file, n: header.n, shard_bits: header.shard_bits })
    }

    /// Records a finished shard as a single write.
    pub fn record(&mut self, prefix: u64, solutions: &[u64]) -> Result<(), SearchError> {
        let mut block = String::new();
        for &m in solutions {
            block.push_str(&format!("solution={}\n", Sequence::from_bits(self.n, m).expect("n ≤ 64")));
        }
        block.push_str(&format!("prefix={}\n", prefix_string(prefix, self.shard_bits)));
        self.file.write_all(block.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }
}
