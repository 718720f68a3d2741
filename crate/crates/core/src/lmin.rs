//! `L(d)`, the least Mahler measure of an irrational in `Q(√d)`.
//!
//! Anything with measure below `√D` has the shape `α = (a + √d)/c` with
//! `0 ≤ a < √d` and `c | d − a²` (for `d ≡ 1 mod 4`: `c` even and
//! `2c | d − a²`). For those, `M(α) = ε·max{c, a + √d, (d − a²)/c}`, so the
//! search runs over `a` and the divisors of `d − a²`, pruned by the best
//! value so far.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::mahler::{canonicalize, mahler_measure, MeasureResult};
use crate::primes::{for_each_divisor_upto, NormFactors, PrimeTable};
use crate::quad::{cmp_parts, QuadValue, SquarefreeD};

/// `(a, c)` with `a² < d` meeting the divisibility conditions above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Candidate {
    a: u64,
    c: u64,
    d: SquarefreeD,
}

impl Candidate {
    pub fn new(a: u64, c: u64, d: SquarefreeD) -> Result<Self> {
        let invalid = Error::InvalidCandidate { d: d.get(), a, c };
        if c == 0 || a > d.isqrt() {
            return Err(invalid);
        }
        let n = d.get() - a * a;
        let ok = if d.eps_is_half() {
            c % 2 == 0 && n % (2 * c) == 0
        } else {
            n % c == 0
        };
        if ok {
            Ok(Candidate { a, c, d })
        } else {
            Err(invalid)
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn field(&self) -> SquarefreeD {
        self.d
    }
}

/// `(p + q√d)/r` without normalization, for the inner loop.
type Raw = (i128, i128, i128);

fn raw_max(a: u64, c: u64, n: u64, d: u64) -> Raw {
    let int: Raw = (c as i128, 0, 1);
    let surd: Raw = (a as i128, 1, 1);
    let frac: Raw = (n as i128, 0, c as i128);
    let mut best = int;
    for x in [surd, frac] {
        if cmp_parts(x, best, d) == Ordering::Greater {
            best = x;
        }
    }
    best
}

fn raw_to_value(raw: Raw, d: SquarefreeD) -> QuadValue {
    let (n, m) = d.epsilon();
    QuadValue::new(raw.0 * n as i128, raw.1 * n as i128, raw.2 * m as i128, d)
        .expect("candidate values fit")
}

/// `ε·max{c, a + √d, (d − a²)/c}`.
pub fn candidate_measure(cand: &Candidate) -> QuadValue {
    let d = cand.d;
    let n = d.get() - cand.a * cand.a;
    raw_to_value(raw_max(cand.a, cand.c, n, d.get()), d)
}

/// The unique integer in `(√d − 2, √d)` with the parity of `d`.
pub(crate) fn lemma_ex_m(d: SquarefreeD) -> u64 {
    let s = d.isqrt();
    if s % 2 == d.get() % 2 {
        s
    } else {
        s - 1
    }
}

/// Measure of `(m + √d)/2`: `2` for `d = 2`, `(√d + m)/2` for `d ≡ 1 (mod 4)`,
/// `√d + m` otherwise.
pub fn lemma_ex_measure(d: SquarefreeD) -> QuadValue {
    if d.get() == 2 {
        return QuadValue::integer(2, d);
    }
    let m = lemma_ex_m(d) as i128;
    let den = if d.eps_is_half() { 2 } else { 1 };
    QuadValue::new(m, 1, den, d).expect("den > 0")
}

/// `L(d)` with a fresh prime table.
pub fn lmin(d: SquarefreeD) -> MeasureResult {
    let table = PrimeTable::for_range(d.get());
    lmin_with(d, &table)
}

/// `L(d)` using a shared prime table covering `√d` (or a smallest-prime-factor
/// table covering `d`).
///
/// The witness is the minimizer with the smallest `c`, then smallest `a`.
pub fn lmin_with(d: SquarefreeD, table: &PrimeTable) -> MeasureResult {
    let dv = d.get();
    let root = d.isqrt();
    let half = d.eps_is_half();

    let m = lemma_ex_m(d);
    let mut best = raw_max(m, 2, dv - m * m, dv);
    let mut best_key = (2u64, m);

    // c ≤ ⌊B⌋ and a ≤ ⌊B − √d⌋ for the current best raw value B.
    let limits = |b: Raw| -> (u64, i128) {
        let c_max = QuadValue::new(b.0, b.1, b.2, d).expect("fits").floor();
        let a_lim = QuadValue::new(b.0, b.1 - b.2, b.2, d).expect("fits").floor();
        (c_max.max(0) as u64, a_lim)
    };
    let (mut c_max, mut a_max) = limits(best);

    let mut nf = NormFactors::new(dv, table);
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(16);
    let mut divisors: Vec<u64> = Vec::with_capacity(64);

    let (mut a, step) = if half { (1u64, 2u64) } else { (0u64, 1u64) };
    while a <= root && (a as i128) <= a_max {
        let n = dv - a * a;
        factors.clear();
        factors.extend_from_slice(nf.factor(a));
        divisors.clear();
        if half {
            // c = 2e with e | n/4.
            for f in factors.iter_mut() {
                if f.0 == 2 {
                    f.1 -= 2;
                }
            }
            for_each_divisor_upto(&factors, c_max / 2, &mut |e| divisors.push(2 * e));
        } else {
            for_each_divisor_upto(&factors, c_max, &mut |c| divisors.push(c));
        }
        for &c in &divisors {
            // n/c ≤ B < c_max + 1
            if (n as u128) >= c as u128 * (c_max as u128 + 1) {
                continue;
            }
            let raw = raw_max(a, c, n, dv);
            let better = match cmp_parts(raw, best, dv) {
                Ordering::Less => true,
                Ordering::Equal => (c, a) < best_key,
                Ordering::Greater => false,
            };
            if better {
                best = raw;
                best_key = (c, a);
                (c_max, a_max) = limits(best);
            }
        }
        a += step;
    }

    let (c, a) = best_key;
    let witness = canonicalize(a as i64, 1, c as i64, d).expect("valid candidate");
    let result = mahler_measure(&witness);
    debug_assert_eq!(result.value, raw_to_value(best, d));
    result
}
