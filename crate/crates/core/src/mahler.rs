//! Quadratic irrationals `(a + b√d)/c`, their minimal integer polynomial and
//! exact Mahler measure.

use core::cmp::Ordering;
use core::fmt;

use crate::arith::{gcd_u128, gcd_u64};
use crate::error::{Error, Result};
use crate::quad::{qv_cmp, QuadValue, SquarefreeD};

/// Inputs to [`canonicalize`] must stay below this bound so that every
/// coefficient of the minimal polynomial fits in 128 bits.
pub const COEFF_LIMIT: u64 = 1 << 32;

/// `α = (a + b√d)/c` with `a ≥ 0`, `b > 0`, `c > 0`, `gcd(a, b, c) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    a: u64,
    b: u64,
    c: u64,
    d: SquarefreeD,
}

impl QuadIrrational {
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn field(&self) -> SquarefreeD {
        self.d
    }

    /// `α` as a field element.
    pub fn value(&self) -> QuadValue {
        QuadValue::new(self.a as i128, self.b as i128, self.c as i128, self.d)
            .expect("c > 0")
    }

    /// The conjugate `ᾱ = (a − b√d)/c`.
    pub fn conjugate(&self) -> QuadValue {
        QuadValue::new(self.a as i128, -(self.b as i128), self.c as i128, self.d)
            .expect("c > 0")
    }

    /// `a² − b²d`.
    pub fn norm_numerator(&self) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        a * a - b * b * self.d.get() as i128
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = if self.b == 1 {
            alloc::format!("√{}", self.d)
        } else {
            alloc::format!("{}√{}", self.b, self.d)
        };
        match (self.a, self.c) {
            (0, 1) => f.write_str(&surd),
            (0, c) => write!(f, "{surd}/{c}"),
            (a, 1) => write!(f, "{a}+{surd}"),
            (a, c) => write!(f, "({a}+{surd})/{c}"),
        }
    }
}

/// Maps `(±a ± b√d)/±c` to the representative with `a ≥ 0`, `b, c > 0` and
/// coprime entries. Uses `M(α) = M(−α) = M(ᾱ)`.
pub fn canonicalize(a: i64, b: i64, c: i64, d: SquarefreeD) -> Result<QuadIrrational> {
    if b == 0 {
        return Err(Error::NotIrrational);
    }
    if c == 0 {
        return Err(Error::InvalidDenominator);
    }
    let (a, b, c) = (a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
    if a >= COEFF_LIMIT || b >= COEFF_LIMIT || c >= COEFF_LIMIT {
        return Err(Error::Overflow);
    }
    let g = gcd_u64(gcd_u64(a, b), c);
    Ok(QuadIrrational { a: a / g, b: b / g, c: c / g, d })
}

/// Smallest `k > 0` with `k(x − α)(x − ᾱ) ∈ Z[x]`:
/// `k = lcm(c / gcd(c, 2a), c² / gcd(c², a² − b²d))`.
pub fn lead_coeff_k(alpha: &QuadIrrational) -> u64 {
    let c = alpha.c as u128;
    let k1 = c / gcd_u128(c, 2 * alpha.a as u128);
    let c2 = c * c;
    let k2 = c2 / gcd_u128(c2, alpha.norm_numerator().unsigned_abs());
    let k = k1 / gcd_u128(k1, k2) * k2;
    k as u64
}

/// `M(α)` together with the data that certifies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureResult {
    pub value: QuadValue,
    pub k: u64,
    pub witness: QuadIrrational,
    /// `(k, −2ak/c, k(a² − b²d)/c²)`, the minimal polynomial.
    pub poly: (i128, i128, i128),
}

impl MeasureResult {
    /// The minimal polynomial rendered as `kx²+bx+c`.
    pub fn poly_string(&self) -> alloc::string::String {
        let (a2, a1, a0) = self.poly;
        let mut s = match a2 {
            1 => alloc::string::String::from("x²"),
            k => alloc::format!("{k}x²"),
        };
        match a1 {
            0 => {}
            1 => s.push_str("+x"),
            -1 => s.push_str("-x"),
            b if b > 0 => s.push_str(&alloc::format!("+{b}x")),
            b => s.push_str(&alloc::format!("{b}x")),
        }
        match a0 {
            0 => {}
            c if c > 0 => s.push_str(&alloc::format!("+{c}")),
            c => s.push_str(&alloc::format!("{c}")),
        }
        s
    }
}

/// `M(α) = k·max{1, |α|}·max{1, |ᾱ|}`, exactly.
pub fn mahler_measure(alpha: &QuadIrrational) -> MeasureResult {
    let d = alpha.d;
    let k = lead_coeff_k(alpha);
    let c = alpha.c as i128;
    let kk = k as i128;
    let norm = alpha.norm_numerator();

    let one = QuadValue::one(d);
    let root = alpha.value();
    let conj_abs = alpha.conjugate().abs().expect("fits");
    let big = |x: &QuadValue| qv_cmp(x, &one).expect("same field") == Ordering::Greater;

    // c² / k is an integer because k | c².
    let c2_over_k = c * c / kk;
    let value = match (big(&root), big(&conj_abs)) {
        (false, false) => QuadValue::integer(kk, d),
        (true, false) => root.scale(kk, 1).expect("fits"),
        (false, true) => conj_abs.scale(kk, 1).expect("fits"),
        (true, true) => QuadValue::new(norm.abs(), 0, c2_over_k, d).expect("fits"),
    };
    let a = alpha.a as i128;
    let poly = (kk, -2 * a * kk / c, norm / c2_over_k);
    MeasureResult { value, k, witness: *alpha, poly }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(d: u64) -> SquarefreeD {
        SquarefreeD::new(d).unwrap()
    }

    fn brute_k(alpha: &QuadIrrational) -> u64 {
        let c = alpha.c as i128;
        let two_a = 2 * alpha.a as i128;
        let n = alpha.norm_numerator();
        (1..=(c * c) as u64)
            .find(|&k| (k as i128 * two_a) % c == 0 && (k as i128 * n) % (c * c) == 0)
            .unwrap()
    }

    #[test]
    fn canonical_examples() {
        let q = canonicalize(-3, 1, 2, sf(41)).unwrap();
        assert_eq!((q.a(), q.b(), q.c()), (3, 1, 2));
        let q = canonicalize(2, 2, 4, sf(5)).unwrap();
        assert_eq!((q.a(), q.b(), q.c()), (1, 1, 2));
        let q = canonicalize(0, 1, -1, sf(2)).unwrap();
        assert_eq!((q.a(), q.b(), q.c()), (0, 1, 1));
        assert_eq!(canonicalize(1, 0, 2, sf(2)), Err(Error::NotIrrational));
        assert_eq!(canonicalize(1, 1, 0, sf(2)), Err(Error::InvalidDenominator));
    }

    #[test]
    fn lead_coefficient_examples() {
        assert_eq!(lead_coeff_k(&canonicalize(1, 1, 2, sf(5)).unwrap()), 1);
        assert_eq!(lead_coeff_k(&canonicalize(3, 1, 2, sf(19)).unwrap()), 2);
        let x = canonicalize(3, 1, 4, sf(41)).unwrap();
        assert_eq!(brute_k(&x), 2);
        assert_eq!(lead_coeff_k(&x), 2);
    }

    #[test]
    fn measure_examples() {
        let d5 = sf(5);
        let m = mahler_measure(&canonicalize(1, 1, 2, d5).unwrap());
        assert_eq!(m.value, QuadValue::new(1, 1, 2, d5).unwrap());
        assert_eq!(m.poly, (1, -1, -1));
        assert_eq!(m.poly_string(), "x²-x-1");

        let d293 = sf(293);
        let m = mahler_measure(&canonicalize(15, 1, 2, d293).unwrap());
        assert_eq!(m.value, QuadValue::integer(17, d293));

        let d2 = sf(2);
        let m = mahler_measure(&canonicalize(0, 1, 2, d2).unwrap());
        assert_eq!(m.value, QuadValue::integer(2, d2));
        assert_eq!(m.poly, (2, 0, -1));

        let d41 = sf(41);
        let m = mahler_measure(&canonicalize(3, 1, 4, d41).unwrap());
        assert_eq!(m.k, 2);
        assert_eq!(m.value, QuadValue::new(3, 1, 2, d41).unwrap());
    }

    #[test]
    fn brute_force_k_small_range() {
        for d in [2u64, 3, 5, 13, 17, 41] {
            let d = sf(d);
            for a in 0..12 {
                for b in 1..5 {
                    for c in 1..30 {
                        let x = canonicalize(a, b, c, d).unwrap();
                        assert_eq!(lead_coeff_k(&x), brute_k(&x), "{x}");
                    }
                }
            }
        }
    }
}
