//! Range statistics: ratio census, per-class maxima and pair failures.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use quadheight_core::{
    pair_exists_with, qv_cmp, squarefree_sieve_with, Approx, QuadValue, ScanRecord, SquarefreeD,
};

use crate::error::{Error, Result};
use crate::scan::{run_blocks, scan_range, table_for, ResidueClass, ScanConfig, DEFAULT_BLOCK};
use crate::table::FnSink;

/// A decimal literal `0.xyz…` as an exact fraction.
pub fn parse_threshold(s: &str) -> Result<(i128, i128)> {
    let bad = || Error::Usage(format!("threshold {s:?} must be a decimal strictly between 0.5 and 1"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !digits_ok(int) || !digits_ok(frac) || frac.len() > 30 {
        return Err(bad());
    }
    let den = 10i128.pow(frac.len() as u32);
    let num = format!("{int}{frac}").parse::<i128>().map_err(|_| bad())?;
    if 2 * num <= den || num >= den {
        return Err(bad());
    }
    Ok((num, den))
}

/// `L/√D > num/den`, exactly.
pub fn ratio_exceeds(l: &QuadValue, num: i128, den: i128) -> Result<bool> {
    let bound = l.field().sqrt_disc().scale(num, den)?;
    Ok(qv_cmp(l, &bound)?.is_gt())
}

/// Square-free `d ∈ [lo, hi]` with `L(d)/√D` strictly above `threshold`.
pub fn census_ratio(lo: u64, hi: u64, threshold: &str, workers: usize) -> Result<Vec<u64>> {
    let (num, den) = parse_threshold(threshold)?;
    let mut hits = Vec::new();
    let mut failure = None;
    let mut sink = FnSink(|rec: &ScanRecord| match ratio_exceeds(&rec.l, num, den) {
        Ok(true) => hits.push(rec.d),
        Ok(false) => {}
        Err(e) => {
            failure.get_or_insert(e);
        }
    });
    scan_range(&ScanConfig::new(lo, hi).workers(workers), &mut sink)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(hits),
    }
}

/// The record with the largest ratio in each residue class (smallest `d`
/// on ties).
pub fn sup_per_class(lo: u64, hi: u64, classes: &ResidueClass, workers: usize) -> Result<BTreeMap<u64, ScanRecord>> {
    let mut best: BTreeMap<u64, (Approx, ScanRecord)> = BTreeMap::new();
    let mut failure = None;
    let mut sink = FnSink(|rec: &ScanRecord| {
        if !classes.contains(rec.d) {
            return;
        }
        let ratio = match rec.exact_ratio() {
            Ok(r) => Approx::from_quad(&r),
            Err(e) => {
                failure.get_or_insert(e);
                return;
            }
        };
        let slot = best.entry(rec.d % classes.modulus);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((ratio, rec.clone()));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                if ratio > o.get().0 {
                    o.insert((ratio, rec.clone()));
                }
            }
        }
    });
    scan_range(&ScanConfig::new(lo, hi).workers(workers), &mut sink)?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(best.into_iter().map(|(r, (_, rec))| (r, rec)).collect())
}

/// Square-free `d ∈ [lo, hi]` without an `(a, c)` pair. The even variant
/// only looks at `d ≡ 1 (mod 4)`.
pub fn pair_failures(lo: u64, hi: u64, even: bool, workers: usize) -> Result<Vec<u64>> {
    ScanConfig::new(lo, hi).workers(workers).validate()?;
    let table = table_for(hi);
    let mut fails = Vec::new();
    run_blocks(
        lo,
        hi,
        workers,
        DEFAULT_BLOCK * 16,
        |s, e| {
            squarefree_sieve_with(s, e, &table)
                .iter()
                .filter(|&d| !even || d % 4 == 1)
                .filter(|&d| pair_exists_with(SquarefreeD::new_unchecked(d), even, &table).is_none())
                .collect::<Vec<u64>>()
        },
        |_, block| {
            fails.extend(block);
            Ok(ControlFlow::Continue(()))
        },
    )?;
    Ok(fails)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_parsing() {
        assert_eq!(parse_threshold("0.9").unwrap(), (9, 10));
        assert_eq!(parse_threshold("0.993150").unwrap(), (993150, 1000000));
        assert!(parse_threshold("0.5").is_err());
        assert!(parse_threshold("1").is_err());
        assert!(parse_threshold("0.9x").is_err());
        assert!(parse_threshold(".9").is_err());
    }

    #[test]
    fn census_small() {
        assert_eq!(census_ratio(2, 30, "0.95", 1).unwrap(), Vec::<u64>::new());
        assert_eq!(census_ratio(2, 30, "0.9", 1).unwrap(), [29]);
        assert_eq!(census_ratio(2, 1000, "0.99", 2).unwrap(), [293]);
    }

    #[test]
    fn exact_threshold_edge() {
        // 17/√293 = 0.99315060432…
        let d = SquarefreeD::new(293).unwrap();
        let l = QuadValue::integer(17, d);
        assert!(ratio_exceeds(&l, 99315060, 100000000).unwrap());
        assert!(!ratio_exceeds(&l, 99315061, 100000000).unwrap());
    }

    #[test]
    fn pair_failures_small() {
        assert_eq!(pair_failures(2, 1000, false, 2).unwrap(), [47, 62, 83, 167, 227, 318, 398, 447, 635, 827]);
    }
}
