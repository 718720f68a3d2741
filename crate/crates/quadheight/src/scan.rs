//! Block-parallel range scans with ordered output and checkpointing.
//!
//! The range is cut into fixed blocks of `d`; workers claim blocks from an
//! atomic counter and the calling thread merges finished blocks back into
//! ascending order before handing them to the sink.

use std::collections::BTreeMap;
use std::fs::File;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::thread;

use quadheight_core::{scan_record, squarefree_sieve_with, PrimeTable, ScanRecord, SquarefreeD};

use crate::checkpoint::{self, Checkpoint};
use crate::error::{Error, Result};
use crate::table::{reopen_after, CsvSink, RecordSink};

pub const DEFAULT_BLOCK: u64 = 1024;

/// Ranges up to this get a smallest-prime-factor table.
pub const SPF_LIMIT: u64 = 1 << 22;

/// `d mod modulus` in `residues`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ResidueClass {
    pub fn new(modulus: u64, residues: Vec<u64>) -> Result<Self> {
        if modulus == 0 || residues.iter().any(|&r| r >= modulus) {
            return Err(Error::Usage(format!("invalid residue class mod {modulus}")));
        }
        Ok(ResidueClass { modulus, residues })
    }

    pub fn contains(&self, d: u64) -> bool {
        self.residues.contains(&(d % self.modulus))
    }

    /// `r` (meaning mod 4) or `r:m`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("bad class {s:?}: expected r or r:m"));
        let (r, m) = match s.split_once(':') {
            Some((r, m)) => (r, m),
            None => (s, "4"),
        };
        let r = parse_u64(r).ok_or_else(bad)?;
        let m = parse_u64(m).ok_or_else(bad)?;
        Self::new(m, vec![r])
    }
}

fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Shared prime data for a scan up to `hi`.
pub fn table_for(hi: u64) -> PrimeTable {
    let table = PrimeTable::for_range(hi);
    if hi <= SPF_LIMIT {
        table.with_spf(hi)
    } else {
        table
    }
}

/// Runs `work` over blocks `[start, start + block)` of `[lo, hi]` on
/// `workers` threads and feeds the results to `emit` in block order,
/// together with the last `d` of the block. `emit` may stop the scan early.
pub fn run_blocks<T, W, E>(lo: u64, hi: u64, workers: usize, block: u64, work: W, mut emit: E) -> Result<()>
where
    T: Send,
    W: Fn(u64, u64) -> T + Sync,
    E: FnMut(u64, T) -> Result<ControlFlow<()>>,
{
    if lo > hi {
        return Ok(());
    }
    let block = block.max(1);
    let count = (hi - lo) / block + 1;
    let bounds = |i: u64| {
        let start = lo + i * block;
        (start, (start + block - 1).min(hi))
    };
    if workers <= 1 {
        for i in 0..count {
            let (s, e) = bounds(i);
            if emit(e, work(s, e))?.is_break() {
                break;
            }
        }
        return Ok(());
    }
    let next = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(u64, T)>();
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, stop, work) = (&next, &stop, &work);
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let (s, e) = bounds(i);
                if tx.send((i, work(s, e))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut want = 0u64;
        for (i, out) in rx {
            pending.insert(i, out);
            while let Some(out) = pending.remove(&want) {
                let (_, e) = bounds(want);
                want += 1;
                let flow = emit(e, out);
                if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                    stop.store(true, Ordering::Relaxed);
                    return flow.map(|_| ());
                }
            }
        }
        Ok(())
    })
}

/// Records for the square-free `d` in `[lo, hi]`.
pub fn block_records(lo: u64, hi: u64, table: &PrimeTable, class: Option<&ResidueClass>) -> Vec<ScanRecord> {
    squarefree_sieve_with(lo, hi, table)
        .iter()
        .filter(|&d| class.is_none_or(|c| c.contains(d)))
        .map(|d| scan_record(SquarefreeD::new_unchecked(d), table))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub lo: u64,
    pub hi: u64,
    pub workers: usize,
    pub block: u64,
    pub class: Option<ResidueClass>,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many records, as if killed (checkpoint left at the
    /// last completed block).
    pub halt_after: Option<u64>,
}

impl ScanConfig {
    pub fn new(lo: u64, hi: u64) -> Self {
        ScanConfig {
            lo,
            hi,
            workers: 1,
            block: DEFAULT_BLOCK,
            class: None,
            checkpoint: None,
            halt_after: None,
        }
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.workers = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo < 2 {
            return Err(Error::Usage("--from must be at least 2".into()));
        }
        if self.lo > self.hi {
            return Err(Error::Usage("--from exceeds --to".into()));
        }
        if self.hi > quadheight_core::MAX_D {
            return Err(Error::Usage(format!("--to exceeds {}", quadheight_core::MAX_D)));
        }
        if self.workers == 0 || self.block == 0 {
            return Err(Error::Usage("workers and block size must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSummary {
    /// First `d` processed in this run (after any resume).
    pub start: u64,
    pub emitted: u64,
    pub halted: bool,
}

/// Scans `[lo, hi]` into `sink`, resuming from the checkpoint if present.
pub fn scan_range(cfg: &ScanConfig, sink: &mut dyn RecordSink) -> Result<ScanSummary> {
    cfg.validate()?;
    let start = match &cfg.checkpoint {
        Some(path) => match checkpoint::load(path)? {
            Some(cp) => cp.last_completed_d.saturating_add(1).max(cfg.lo),
            None => cfg.lo,
        },
        None => cfg.lo,
    };
    let mut summary = ScanSummary { start, emitted: 0, halted: false };
    if start > cfg.hi {
        return Ok(summary);
    }
    let table = table_for(cfg.hi);
    let class = cfg.class.as_ref();
    run_blocks(
        start,
        cfg.hi,
        cfg.workers,
        cfg.block,
        |s, e| block_records(s, e, &table, class),
        |last, records| {
            for rec in &records {
                if cfg.halt_after.is_some_and(|h| summary.emitted >= h) {
                    sink.flush()?;
                    summary.halted = true;
                    return Ok(ControlFlow::Break(()));
                }
                sink.write(rec)?;
                summary.emitted += 1;
            }
            sink.flush()?;
            if let Some(path) = &cfg.checkpoint {
                checkpoint::store(path, Checkpoint { last_completed_d: last })?;
            }
            Ok(ControlFlow::Continue(()))
        },
    )?;
    Ok(summary)
}

/// Scans to a CSV file. With a checkpoint in place, rows past it are
/// dropped and the scan continues from there.
pub fn scan_to_csv(cfg: &ScanConfig, out: &std::path::Path) -> Result<ScanSummary> {
    cfg.validate()?;
    let resume = match &cfg.checkpoint {
        Some(path) => checkpoint::load(path)?,
        None => None,
    };
    match resume {
        Some(cp) if out.exists() => {
            let file = reopen_after(out, cp.last_completed_d)?;
            let mut sink = CsvSink::append(std::io::BufWriter::new(file));
            scan_range(cfg, &mut sink)
        }
        _ => {
            if let Some(path) = &cfg.checkpoint {
                // A stale checkpoint without its CSV means a fresh start.
                if resume.is_some() {
                    std::fs::remove_file(path).map_err(|e| Error::io(path, e))?;
                }
            }
            let file = File::create(out).map_err(|e| Error::io(out, e))?;
            let mut sink = CsvSink::new(std::io::BufWriter::new(file))?;
            scan_range(cfg, &mut sink)
        }
    }
}

/// All records of `[lo, hi]` in memory.
pub fn scan_collect(lo: u64, hi: u64, workers: usize) -> Result<Vec<ScanRecord>> {
    let mut out = Vec::new();
    scan_range(&ScanConfig::new(lo, hi).workers(workers), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range() {
        let recs = scan_collect(2, 10, 1).unwrap();
        let ds: Vec<u64> = recs.iter().map(|r| r.d).collect();
        assert_eq!(ds, [2, 3, 5, 6, 7, 10]);
    }

    #[test]
    fn order_independent_of_workers() {
        let mut cfg = ScanConfig::new(2, 700);
        cfg.block = 37;
        let mut one = Vec::new();
        scan_range(&cfg, &mut one).unwrap();
        cfg.workers = 5;
        let mut five = Vec::new();
        scan_range(&cfg, &mut five).unwrap();
        assert_eq!(one, five);
    }

    #[test]
    fn run_blocks_stops_early() {
        let mut seen = Vec::new();
        run_blocks(1, 100, 3, 10, |s, _| s, |_, s| {
            seen.push(s);
            Ok(if s >= 31 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) })
        })
        .unwrap();
        assert_eq!(seen, [1, 11, 21, 31]);
    }

    #[test]
    fn class_parsing() {
        assert_eq!(ResidueClass::parse("1").unwrap(), ResidueClass { modulus: 4, residues: vec![1] });
        assert_eq!(ResidueClass::parse("1:8").unwrap().modulus, 8);
        assert!(ResidueClass::parse("4").is_err());
        assert!(ResidueClass::parse("x:3").is_err());
        let recs = {
            let mut cfg = ScanConfig::new(2, 60);
            cfg.class = Some(ResidueClass::parse("1:8").unwrap());
            let mut v = Vec::new();
            scan_range(&cfg, &mut v).unwrap();
            v
        };
        assert_eq!(recs.iter().map(|r| r.d).collect::<Vec<_>>(), [17, 33, 41, 57]);
    }

    #[test]
    fn validation() {
        assert!(ScanConfig::new(1, 10).validate().is_err());
        assert!(ScanConfig::new(10, 2).validate().is_err());
        assert!(ScanConfig::new(2, 10).workers(0).validate().is_err());
    }
}
