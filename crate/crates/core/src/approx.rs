//! Fixed-point reals with 64 decimal places.
//!
//! Used only where values from different fields meet (a ratio in `Q(√d)`
//! against a bound involving `√5` or `√3`, ratios of different `d`). Every
//! operation truncates, so each result is within a few units of `10^-64`.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::quad::{QuadValue, Rounding};

/// Decimal places carried.
pub const PLACES: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Approx(BigInt);

fn unit() -> BigInt {
    BigInt::from(10u32).pow(PLACES)
}

impl Approx {
    pub fn from_int(n: i128) -> Self {
        Approx(BigInt::from(n) * unit())
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Approx((BigInt::from(num) * unit()).div_floor(&BigInt::from(den)))
    }

    /// Parses a plain decimal literal such as `0.9` or `-12.5`.
    pub fn parse(s: &str) -> Option<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return None;
        }
        if frac.len() > PLACES as usize {
            return None;
        }
        let mut digits = String::from(int);
        digits.push_str(frac);
        for _ in frac.len()..PLACES as usize {
            digits.push('0');
        }
        let v = BigInt::parse_bytes(digits.as_bytes(), 10)?;
        Some(Approx(if neg { -v } else { v }))
    }

    /// Value of an exact field element.
    pub fn from_quad(x: &QuadValue) -> Self {
        let scale = unit();
        let p = BigInt::from(x.p()) * &scale;
        let q = BigInt::from(x.q());
        let d = BigUint::from(x.field().get());
        let surd_mag = BigInt::from((q.magnitude() * q.magnitude() * d * scale.magnitude() * scale.magnitude()).sqrt());
        let surd = if q.is_negative() { -surd_mag } else { surd_mag };
        Approx((p + surd).div_floor(&BigInt::from(x.den())))
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "square root of a negative number");
        let v: BigUint = self.0.magnitude() * unit().magnitude();
        Approx(BigInt::from(v.sqrt()))
    }

    pub fn half(&self) -> Self {
        Approx(self.0.div_floor(&BigInt::from(2)))
    }

    pub fn is_positive(&self) -> bool {
        self.0.sign() == Sign::Plus
    }

    pub fn to_f64(&self) -> f64 {
        let (q, r) = self.0.div_mod_floor(&unit());
        q.to_f64().unwrap_or(f64::NAN) + r.to_f64().unwrap_or(0.0) / 1e64
    }

    /// Decimal rendering with `digits ≤ 64` places.
    pub fn to_decimal(&self, digits: u32, rounding: Rounding) -> String {
        assert!(digits <= PLACES);
        let negative = self.0.is_negative();
        let mag = BigInt::from(self.0.magnitude().clone());
        let drop = BigInt::from(10u32).pow(PLACES - digits);
        let (mut n, rem) = mag.div_rem(&drop);
        if rounding == Rounding::HalfEven {
            let twice: BigInt = rem * 2;
            if twice > drop || (twice == drop && n.is_odd()) {
                n += 1;
            }
        }
        let mut s = n.to_str_radix(10);
        let digits = digits as usize;
        while s.len() <= digits {
            s.insert(0, '0');
        }
        let split = s.len() - digits;
        let mut out = String::new();
        if negative && !n.is_zero() {
            out.push('-');
        }
        out.push_str(&s[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&s[split..]);
        }
        out
    }

    /// `true` when `self ≤ other + slack`.
    pub fn le_with_slack(&self, other: &Self, slack: &Self) -> bool {
        self.cmp(&(other + slack)) != Ordering::Greater
    }
}

impl Add for &Approx {
    type Output = Approx;
    fn add(self, rhs: &Approx) -> Approx {
        Approx(&self.0 + &rhs.0)
    }
}

impl Sub for &Approx {
    type Output = Approx;
    fn sub(self, rhs: &Approx) -> Approx {
        Approx(&self.0 - &rhs.0)
    }
}

impl Mul for &Approx {
    type Output = Approx;
    fn mul(self, rhs: &Approx) -> Approx {
        Approx((&self.0 * &rhs.0).div_floor(&unit()))
    }
}

impl Div for &Approx {
    type Output = Approx;
    fn div(self, rhs: &Approx) -> Approx {
        assert!(!rhs.0.is_zero(), "division by zero");
        Approx((&self.0 * unit()).div_floor(&rhs.0))
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12).min(PLACES as usize) as u32;
        f.write_str(&self.to_decimal(digits, Rounding::Truncate))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::SquarefreeD;

    #[test]
    fn sqrt_two() {
        let r = Approx::from_int(2).sqrt();
        assert_eq!(r.to_decimal(20, Rounding::Truncate), "1.41421356237309504880");
    }

    #[test]
    fn agrees_with_exact_rendering() {
        let d = SquarefreeD::new(293).unwrap();
        let x = QuadValue::new(15, 1, 2, d).unwrap();
        assert_eq!(
            Approx::from_quad(&x).to_decimal(40, Rounding::Truncate),
            x.to_decimal(40)
        );
        let y = QuadValue::new(15, -1, 2, d).unwrap();
        assert_eq!(
            Approx::from_quad(&y).to_decimal(30, Rounding::Truncate),
            y.to_decimal(30)
        );
    }

    #[test]
    fn parse_literals() {
        assert_eq!(Approx::parse("0.9"), Some(Approx::from_ratio(9, 10)));
        assert_eq!(Approx::parse("-1.25"), Some(Approx::from_ratio(-5, 4)));
        assert_eq!(Approx::parse("x"), None);
        assert_eq!(Approx::parse(""), None);
    }

    #[test]
    fn arithmetic() {
        let a = Approx::from_ratio(1, 3);
        let b = &a * &Approx::from_int(3);
        assert_eq!(b.to_decimal(10, Rounding::HalfEven), "1.0000000000");
        let c = &Approx::from_int(1) / &Approx::from_int(8);
        assert_eq!(c.to_decimal(3, Rounding::Truncate), "0.125");
    }
}
