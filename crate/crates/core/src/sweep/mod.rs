//! Per-`n` solving pipeline and range sweeps.
//!
//! [`solve`] chains the constructors cheapest-first: residue-class paths and
//! prime lifting, then the divisor-pair witness search, then the bounded
//! witness search, and finally the exhaustive oracle. [`sweep_range`] runs it
//! over an interval on several threads and merges by `n`, so the output does
//! not depend on the worker count.

mod checkpoint;
mod report;

use std::fs::OpenOptions;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Int};
use crate::oracle::first_solution;
use crate::theorem2::{all_primes_1_mod_24, theorem2_dispatch};
use crate::theorem34::{theorem3_search, theorem4_search, DEFAULT_K_BOUND};
use crate::triple::{ConstructError, Method, UnitTriple};

pub use checkpoint::Checkpoint;
pub use report::{emit_report, parse_report, read_report, stats, write_report, ReportFormat, ReportStats};

/// Records computed between checkpoint syncs.
pub const BATCH_SIZE: u128 = 1000;
/// Consecutive values handed to one worker before moving to the next.
pub const BLOCK_SIZE: u128 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Solved,
    NoDistinctSolution,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Solved => "Solved",
            Status::NoDistinctSolution => "NoDistinctSolution",
            Status::Error => "Error",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Status::Solved, Status::NoDistinctSolution, Status::Error]
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown status {s:?}"))
    }
}

/// Outcome for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: u128,
    pub method: Method,
    pub x1: Option<u128>,
    pub x2: Option<u128>,
    pub x3: Option<u128>,
    pub status: Status,
    pub hard: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SweepRecord {
    fn solved(n: u128, triple: &UnitTriple<u128>, hard: bool) -> Self {
        let [x1, x2, x3] = triple.xs();
        SweepRecord {
            n,
            method: triple.method(),
            x1: Some(x1),
            x2: Some(x2),
            x3: Some(x3),
            status: Status::Solved,
            hard,
            detail: None,
        }
    }

    fn without_triple(n: u128, method: Method, status: Status, hard: bool, detail: Option<String>) -> Self {
        SweepRecord {
            n,
            method,
            x1: None,
            x2: None,
            x3: None,
            status,
            hard,
            detail,
        }
    }

    pub fn triple(&self) -> Option<[u128; 3]> {
        Some([self.x1?, self.x2?, self.x3?])
    }
}

/// True iff every prime divisor of `n` is `1 (mod 24)`; such `n` are themselves `1 (mod 24)`.
pub fn classify_hard<T: Int>(n: T) -> Result<bool, ArithError> {
    if n < T::lit(2) {
        return Err(ArithError::Domain("classify_hard requires n >= 2"));
    }
    let hard = all_primes_1_mod_24(n)?;
    debug_assert!(!hard || n % T::lit(24) == T::one());
    Ok(hard)
}

fn try_solve(n: u128, k_bound: u128, stage: &mut Method) -> Result<SweepRecord, ConstructError> {
    let hard = classify_hard(n)?;
    *stage = Method::PrimeLift;
    if let Some(t) = theorem2_dispatch(n)? {
        return Ok(SweepRecord::solved(n, &t, hard));
    }
    if !n.is_even() {
        *stage = Method::Theorem4;
        if let Some((t, _)) = theorem4_search(n)? {
            return Ok(SweepRecord::solved(n, &t, hard));
        }
        *stage = Method::Theorem3Search;
        if let Some((t, _)) = theorem3_search(n, k_bound)? {
            return Ok(SweepRecord::solved(n, &t, hard));
        }
    }
    *stage = Method::Oracle;
    Ok(match first_solution(4, n)? {
        Some(t) => SweepRecord::solved(n, &t, hard),
        None => SweepRecord::without_triple(n, Method::NoDistinctSolution, Status::NoDistinctSolution, hard, None),
    })
}

/// Solves `4/n` through the fallback chain. Failures become `Status::Error`
/// records tagged with the stage that failed.
pub fn solve(n: u128, k_bound: u128) -> SweepRecord {
    let mut stage = Method::Even;
    match try_solve(n, k_bound, &mut stage) {
        Ok(r) => r,
        Err(e) => {
            log::warn!("n = {n}: {e}");
            let hard = classify_hard(n).unwrap_or(false);
            SweepRecord::without_triple(n, stage, Status::Error, hard, Some(e.to_string()))
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("{}: line {line}: {reason}", path.display())]
    Checkpoint { path: PathBuf, line: usize, reason: String },
    #[error("malformed report: {0}")]
    Report(String),
}

impl SweepError {
    pub(crate) fn io(path: &Path, source: io::Error) -> Self {
        SweepError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub start: u128,
    pub end: u128,
    pub workers: usize,
    pub k_bound: u128,
    pub checkpoint_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    pub report_format: ReportFormat,
}

impl SweepConfig {
    pub fn new(start: u128, end: u128) -> Self {
        SweepConfig {
            start,
            end,
            workers: 1,
            k_bound: u128::from(DEFAULT_K_BOUND),
            checkpoint_path: None,
            report_path: None,
            report_format: ReportFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.start < 2 {
            return Err(SweepError::InvalidConfig("start must be at least 2".into()));
        }
        if self.start > self.end {
            return Err(SweepError::InvalidConfig(format!(
                "start {} exceeds end {}",
                self.start, self.end
            )));
        }
        if self.workers == 0 {
            return Err(SweepError::InvalidConfig("workers must be at least 1".into()));
        }
        if self.k_bound == 0 {
            return Err(SweepError::InvalidConfig("k_bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// Solves every `n` in `[lo, hi]`, splitting consecutive blocks round-robin
/// over `workers` threads, and returns the records ordered by `n`.
pub fn solve_block_cyclic(lo: u128, hi: u128, workers: usize, k_bound: u128) -> Vec<SweepRecord> {
    if lo > hi {
        return Vec::new();
    }
    let blocks = (hi - lo) / BLOCK_SIZE + 1;
    let workers = workers.max(1);
    let worker_count = u128::try_from(workers).unwrap_or(u128::MAX).min(blocks);
    let run = |w: u128| {
        let mut out = Vec::new();
        let mut b = w;
        while b < blocks {
            let first = lo + b * BLOCK_SIZE;
            let last = (first + BLOCK_SIZE - 1).min(hi);
            out.extend((first..=last).map(|n| solve(n, k_bound)));
            b += worker_count;
        }
        out
    };
    let mut records: Vec<SweepRecord> = if worker_count <= 1 {
        run(0)
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..worker_count).map(|w| s.spawn(move || run(w))).collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    records.sort_unstable_by_key(|r| r.n);
    records
}

fn check_report_writable(path: &Path) -> Result<(), SweepError> {
    OpenOptions::new()
        .write(true)
        .create(true)
        .truncate(false)
        .open(path)
        .map(drop)
        .map_err(|e| SweepError::io(path, e))
}

/// One record per `n` in `[start, end]`, ordered by `n`.
///
/// With a checkpoint, previously completed records are loaded instead of
/// recomputed and new records are appended in batches of [`BATCH_SIZE`].
/// Output paths are opened before any computation starts.
pub fn sweep_range(config: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    config.validate()?;
    if let Some(path) = &config.report_path {
        check_report_writable(path)?;
    }
    let mut checkpoint = config
        .checkpoint_path
        .as_deref()
        .map(|p| Checkpoint::open(p, config.start, config.end))
        .transpose()?;
    let mut records = checkpoint.as_mut().map(Checkpoint::take_loaded).unwrap_or_default();
    if !records.is_empty() {
        log::info!("resuming: {} records loaded from checkpoint", records.len());
    }
    let mut next = config.start + records.len() as u128;
    while next <= config.end {
        let hi = next.saturating_add(BATCH_SIZE - 1).min(config.end);
        let batch = solve_block_cyclic(next, hi, config.workers, config.k_bound);
        if let Some(cp) = checkpoint.as_mut() {
            cp.append(&batch)?;
        }
        records.extend(batch);
        log::debug!("swept through n = {hi}");
        if hi == u128::MAX {
            break;
        }
        next = hi + 1;
    }
    if let Some(path) = &config.report_path {
        emit_report(&records, config.report_format, path)?;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_examples() {
        let r = solve(7, 999);
        assert_eq!(r.status, Status::Solved);
        assert_eq!(r.method, Method::Mod4Is3);
        assert_eq!(r.triple(), Some([3, 6, 14]));

        let r = solve(2, 999);
        assert_eq!(r.status, Status::NoDistinctSolution);
        assert_eq!(r.method, Method::NoDistinctSolution);
        assert_eq!(r.triple(), None);

        let r = solve(25, 999);
        assert_eq!((r.method, r.triple()), (Method::PrimeLift, Some([10, 25, 50])));
    }

    #[test]
    fn hard_class_falls_through_theorem2() {
        // 73 is reached by the bounded witness search (δ = 1, k = 219, m = 11) before the oracle.
        let r = solve(73, 999);
        assert!(r.hard);
        assert_eq!(r.status, Status::Solved);
        assert_eq!((r.method, r.triple()), (Method::Theorem3Search, Some([20, 219, 4380])));
        let r = solve(73, 99);
        assert_eq!((r.method, r.triple()), (Method::Theorem3Search, Some([20, 292, 730])));
        // With k limited to 1 and 3 the oracle takes over.
        let r = solve(73, 3);
        assert_eq!((r.method, r.triple()), (Method::Oracle, Some([20, 210, 30660])));
    }

    #[test]
    fn classify_hard_examples() {
        assert_eq!(classify_hard(73u64), Ok(true));
        assert_eq!(classify_hard(25u64), Ok(false));
        assert_eq!(classify_hard(5329u64), Ok(true));
        assert_eq!(5329 % 24, 1);
        assert!(classify_hard(1u64).is_err());
    }

    #[test]
    fn overflow_becomes_an_error_record() {
        let n = 1u128 << 127;
        let r = solve(n, 999);
        assert_eq!(r.status, Status::Error);
        assert!(r.detail.is_some());
        assert_eq!(r.triple(), None);
    }

    #[test]
    fn block_cyclic_is_independent_of_worker_count() {
        let one = solve_block_cyclic(2, 300, 1, 999);
        assert_eq!(one.len(), 299);
        assert!(one.windows(2).all(|w| w[0].n + 1 == w[1].n));
        for w in [2, 3, 7, 64] {
            assert_eq!(solve_block_cyclic(2, 300, w, 999), one);
        }
    }

    #[test]
    fn config_validation() {
        assert!(SweepConfig::new(3, 100).validate().is_ok());
        assert!(SweepConfig::new(1, 100).validate().is_err());
        assert!(SweepConfig::new(10, 9).validate().is_err());
        let mut c = SweepConfig::new(3, 10);
        c.workers = 0;
        assert!(c.validate().is_err());
    }
}
