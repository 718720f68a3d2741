//! Search for `(a, c)` with `a < d^(2/5)`, `|c − √d| < d^(2/5)` and
//! `c | d − a²`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::ceil_root;
use crate::primes::{for_each_divisor_upto, PrimeTable};
use crate::quad::SquarefreeD;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairWitness {
    pub d: u64,
    pub a: u64,
    pub c: u64,
    /// `c` even with `2c | d − a²`.
    pub even: bool,
}

/// Sign of `p + q√d`.
fn surd_sign(p: &BigInt, q: &BigInt, d: u64) -> i32 {
    let sign = |x: &BigInt| if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 };
    let (sp, sq) = (sign(p), sign(q));
    if sp == 0 || sq == 0 || sp == sq {
        return if sp != 0 { sp } else { sq };
    }
    let lhs = p * p;
    let rhs = q * q * BigInt::from(d);
    match lhs.cmp(&rhs) {
        core::cmp::Ordering::Greater => sp,
        core::cmp::Ordering::Less => sq,
        core::cmp::Ordering::Equal => 0,
    }
}

/// `|c − √d| < d^(2/5)`, decided by `(c − √d)^10 < d^4`.
fn in_window_exact(c: u64, d: u64) -> bool {
    let bd = BigInt::from(d);
    // x = c − √d as (u, v)
    let (u, v) = (BigInt::from(c), BigInt::from(-1));
    // x² = (u² + v²d) + 2uv√d
    let (su, sv) = (&u * &u + &v * &v * &bd, BigInt::from(2) * &u * &v);
    let mut pu = BigInt::from(1);
    let mut pv = BigInt::from(0);
    for _ in 0..5 {
        let nu = &pu * &su + &pv * &sv * &bd;
        let nv = &pu * &sv + &pv * &su;
        pu = nu;
        pv = nv;
    }
    let d4 = bd.pow(4);
    surd_sign(&(pu - d4), &pv, d) < 0
}

/// Integer candidates `[lo, hi]` for the open window around `√d`. Every `c`
/// strictly inside is in the window; the two ends need [`in_window_exact`].
fn window(d: u64) -> (u64, u64) {
    let s = d.isqrt();
    let d2 = (d as u128) * (d as u128);
    let y = ceil_root(d2, 5);
    let t = if y.pow(5) == d2 { y } else { y - 1 } as u64;
    // c + t ≥ s + 1 gives c > √d − w; c ≤ s + t gives c < √d + w.
    ((s + 1).saturating_sub(t + 1).max(1), s + t + 1)
}

/// `a⁵ < d²`, i.e. `a < d^(2/5)`.
fn a_in_range(a: u64, d: u64) -> bool {
    (a as u128).pow(5) < (d as u128).pow(2)
}

/// First witness in `(a, c)` order, if any.
pub fn pair_exists(d: SquarefreeD, even_variant: bool) -> Option<PairWitness> {
    pair_exists_with(d, even_variant, &PrimeTable::for_range(d.get()))
}

/// As [`pair_exists`] with a prime table able to factor numbers up to `d`.
pub fn pair_exists_with(d: SquarefreeD, even_variant: bool, table: &PrimeTable) -> Option<PairWitness> {
    let dv = d.get();
    let (lo, hi) = window(dv);
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(16);
    let mut divisors: Vec<u64> = Vec::with_capacity(64);
    let mut a = 0u64;
    while a_in_range(a, dv) && a * a < dv {
        let n = dv - a * a;
        if even_variant && n % 4 != 0 {
            a += 1;
            continue;
        }
        factors.clear();
        table.factor_into(n, &mut factors);
        divisors.clear();
        if even_variant {
            for f in factors.iter_mut() {
                if f.0 == 2 {
                    f.1 -= 2;
                }
            }
            for_each_divisor_upto(&factors, hi / 2, &mut |e| divisors.push(2 * e));
        } else {
            for_each_divisor_upto(&factors, hi, &mut |c| divisors.push(c));
        }
        divisors.retain(|&c| c >= lo);
        divisors.sort_unstable();
        let hit = divisors
            .iter()
            .copied()
            .find(|&c| (c != lo && c != hi) || in_window_exact(c, dv));
        if let Some(c) = hit {
            return Some(PairWitness { d: dv, a, c, even: even_variant });
        }
        a += 1;
    }
    None
}
