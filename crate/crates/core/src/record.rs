//! One row of a range scan.

use alloc::string::String;

use crate::error::Result;
use crate::lmin::lmin_with;
use crate::mahler::{canonicalize, mahler_measure};
use crate::primes::PrimeTable;
use crate::quad::{Rounding, QuadValue, SquarefreeD};
use crate::structure::is_exceptional_with;

/// Digits after the point in [`ScanRecord::ratio`].
pub const RATIO_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub d: u64,
    pub dmod4: u64,
    pub disc: u64,
    pub l: QuadValue,
    /// `L/√D`, rounded half-even to [`RATIO_DIGITS`] places.
    pub ratio: String,
    pub witness_a: u64,
    pub witness_c: u64,
    pub k: u64,
    pub exceptional: bool,
}

impl ScanRecord {
    pub fn field(&self) -> SquarefreeD {
        self.l.field()
    }

    /// Recomputes `M((a + √d)/c)` from the stored witness.
    pub fn witness_measure(&self) -> Result<QuadValue> {
        let alpha = canonicalize(self.witness_a as i64, 1, self.witness_c as i64, self.field())?;
        Ok(mahler_measure(&alpha).value)
    }

    /// `L/√D` as an exact field element.
    pub fn exact_ratio(&self) -> Result<QuadValue> {
        self.l.over_sqrt_disc()
    }
}

/// `L(d)/√D` rendered as in scan output.
pub fn ratio_string(l: &QuadValue) -> String {
    l.over_sqrt_disc().expect("fits").to_decimal_rounded(RATIO_DIGITS, Rounding::HalfEven)
}

/// Computes the record for `d`; `table` must cover `√d`.
pub fn scan_record(d: SquarefreeD, table: &PrimeTable) -> ScanRecord {
    let m = lmin_with(d, table);
    ScanRecord {
        d: d.get(),
        dmod4: d.mod4(),
        disc: d.discriminant(),
        ratio: ratio_string(&m.value),
        l: m.value,
        witness_a: m.witness.a(),
        witness_c: m.witness.c(),
        k: m.k,
        exceptional: is_exceptional_with(d, table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_293() {
        let d = SquarefreeD::new(293).unwrap();
        let r = scan_record(d, &PrimeTable::up_to(100));
        assert_eq!(r.ratio, "0.993150604323");
        assert_eq!((r.witness_a, r.witness_c, r.k), (15, 2, 1));
        assert_eq!(r.disc, 293);
        assert!(r.exceptional);
        assert_eq!(r.witness_measure().unwrap(), r.l);
    }
}
