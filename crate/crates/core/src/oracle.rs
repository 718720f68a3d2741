//! Brute-force reference for `L(d)` over integer quadratics.
//!
//! Independent of the candidate-family search: it enumerates every primitive
//! `Ax² + Bx + C` whose discriminant is `d·f²` inside a box that contains all
//! polynomials of measure at most `√D` (since `M ≥ A`, `M ≥ |C|` and
//! `|B| ≤ 2M`), and measures each from its roots.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::gcd_u64;
use crate::error::{Error, Result};
use crate::quad::{qv_cmp, QuadValue, SquarefreeD};

/// Cost guard for [`oracle_lmin`].
pub const ORACLE_MAX_D: u64 = 500;

/// A primitive irreducible quadratic found by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OraclePoly {
    pub lead: i64,
    pub mid: i64,
    pub constant: i64,
    /// `B² − 4AC = d·f²`.
    pub f: i64,
    pub measure: QuadValue,
}

/// Every primitive quadratic in the search box with roots in `Q(√d)`.
pub fn oracle_polys(d: SquarefreeD) -> Result<Vec<OraclePoly>> {
    let dv = d.get();
    if dv > ORACLE_MAX_D {
        return Err(Error::OracleTooLarge(dv));
    }
    let disc = d.discriminant();
    let side = (disc.isqrt() + 1) as i64;
    let one = QuadValue::one(d);
    let mut out = Vec::new();
    for lead in 1..=side {
        for mid in -2 * side..=2 * side {
            for constant in -side..=side {
                let delta = mid * mid - 4 * lead * constant;
                if delta <= 0 || delta % dv as i64 != 0 {
                    continue;
                }
                let ff = (delta / dv as i64) as u64;
                let f = ff.isqrt();
                if f * f != ff {
                    continue;
                }
                let g = gcd_u64(
                    gcd_u64(lead as u64, mid.unsigned_abs()),
                    constant.unsigned_abs(),
                );
                if g != 1 {
                    continue;
                }
                // roots (−B ± f√d)/(2A)
                let r1 = QuadValue::new(-mid as i128, f as i128, 2 * lead as i128, d)?;
                let r2 = QuadValue::new(-mid as i128, -(f as i128), 2 * lead as i128, d)?;
                let big1 = qv_cmp(&r1.abs()?, &one)? == Ordering::Greater;
                let big2 = qv_cmp(&r2.abs()?, &one)? == Ordering::Greater;
                let measure = match (big1, big2) {
                    (false, false) => QuadValue::integer(lead as i128, d),
                    (true, false) => r1.abs()?.scale(lead as i128, 1)?,
                    (false, true) => r2.abs()?.scale(lead as i128, 1)?,
                    (true, true) => QuadValue::integer(constant.abs() as i128, d),
                };
                out.push(OraclePoly { lead, mid, constant, f: f as i64, measure });
            }
        }
    }
    Ok(out)
}

/// Minimum measure over [`oracle_polys`].
pub fn oracle_lmin(d: SquarefreeD) -> Result<QuadValue> {
    let polys = oracle_polys(d)?;
    let mut best: Option<QuadValue> = None;
    for p in polys {
        best = match best {
            Some(b) if qv_cmp(&b, &p.measure)? != Ordering::Greater => Some(b),
            _ => Some(p.measure),
        };
    }
    Ok(best.expect("the box always contains (m + √d)/2"))
}
