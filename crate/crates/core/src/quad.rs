//! Exact numbers `(p + q√d)/den` in a fixed real quadratic field.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{floor_div, gcd_i128};
use crate::error::{Error, FieldDefect, Result};

/// Largest `d` accepted by [`SquarefreeD::new`].
pub const MAX_D: u64 = 1 << 62;

/// A square-free integer `d ≥ 2`, i.e. the real quadratic field `Q(√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeD {
    d: u64,
    root: u64,
}

impl SquarefreeD {
    /// Validates `d` by trial division up to `√d`.
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidField { d, defect: FieldDefect::TooSmall });
        }
        if d > MAX_D {
            return Err(Error::InvalidField { d, defect: FieldDefect::TooLarge });
        }
        if let Some(p) = square_factor(d) {
            return Err(Error::InvalidField { d, defect: FieldDefect::SquareFactor(p) });
        }
        Ok(Self::new_unchecked(d))
    }

    /// For callers that already sieved `d` (range scans).
    pub fn new_unchecked(d: u64) -> Self {
        debug_assert!((2..=MAX_D).contains(&d));
        SquarefreeD { d, root: d.isqrt() }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.d
    }

    /// `⌊√d⌋`; strictly below `√d` since `d` is not a square.
    #[inline]
    pub fn isqrt(self) -> u64 {
        self.root
    }

    /// Field discriminant: `d` if `d ≡ 1 (mod 4)`, else `4d`.
    pub fn discriminant(self) -> u64 {
        if self.d % 4 == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// `ε = ½` exactly when `d ≡ 1 (mod 4)`, otherwise `ε = 1`.
    #[inline]
    pub fn eps_is_half(self) -> bool {
        self.d % 4 == 1
    }

    /// `ε` as `(numerator, denominator)`.
    pub fn epsilon(self) -> (u64, u64) {
        if self.eps_is_half() {
            (1, 2)
        } else {
            (1, 1)
        }
    }

    pub fn mod4(self) -> u64 {
        self.d % 4
    }

    pub fn mod8(self) -> u64 {
        self.d % 8
    }

    /// `√D` as an element of the field.
    pub fn sqrt_disc(self) -> QuadValue {
        let q = if self.eps_is_half() { 1 } else { 2 };
        QuadValue { p: 0, q, den: 1, d: self }
    }
}

impl fmt::Display for SquarefreeD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)
    }
}

/// Smallest `p` with `p² | n`, found by trial division.
pub fn square_factor(mut n: u64) -> Option<u64> {
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Some(p);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    None
}

/// An exact real number `(p + q√d)/den` with `den > 0` and
/// `gcd(p, q, den) = 1`.
///
/// Because `√d` is irrational the normalized triple is unique, so the derived
/// equality is equality of the represented numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadValue {
    p: i128,
    q: i128,
    den: i128,
    d: SquarefreeD,
}

/// Normalizes `(p + q√d)/den`: positive denominator, no common factor.
pub fn qv_normalize(p: i128, q: i128, den: i128, d: SquarefreeD) -> Result<QuadValue> {
    if den == 0 {
        return Err(Error::InvalidDenominator);
    }
    let (mut p, mut q, mut den) = (p, q, den);
    if den < 0 {
        p = p.checked_neg().ok_or(Error::Overflow)?;
        q = q.checked_neg().ok_or(Error::Overflow)?;
        den = den.checked_neg().ok_or(Error::Overflow)?;
    }
    let g = gcd_i128(gcd_i128(p, q), den);
    if g > 1 {
        p /= g;
        q /= g;
        den /= g;
    }
    Ok(QuadValue { p, q, den, d })
}

/// Exact ordering of two values of the same field.
pub fn qv_cmp(x: &QuadValue, y: &QuadValue) -> Result<Ordering> {
    if x.d != y.d {
        return Err(Error::FieldMismatch(x.d.d, y.d.d));
    }
    Ok(cmp_parts((x.p, x.q, x.den), (y.p, y.q, y.den), x.d.d))
}

/// Compares `(p1 + q1√d)/r1` with `(p2 + q2√d)/r2` for positive `r1, r2`.
///
/// Stays in `i128` while every product fits and switches to big integers
/// otherwise.
pub(crate) fn cmp_parts(x: (i128, i128, i128), y: (i128, i128, i128), d: u64) -> Ordering {
    let small = (|| {
        let u = x.0.checked_mul(y.2)?.checked_sub(y.0.checked_mul(x.2)?)?;
        let v = x.1.checked_mul(y.2)?.checked_sub(y.1.checked_mul(x.2)?)?;
        surd_sign_i128(u, v, d)
    })();
    match small {
        Some(o) => o,
        None => {
            let big = |a: i128| BigInt::from(a);
            let u = big(x.0) * big(y.2) - big(y.0) * big(x.2);
            let v = big(x.1) * big(y.2) - big(y.1) * big(x.2);
            surd_sign_big(&u, &v, d)
        }
    }
}

/// Sign of `u + v√d` as an ordering against zero, or `None` on overflow.
fn surd_sign_i128(u: i128, v: i128, d: u64) -> Option<Ordering> {
    let su = u.cmp(&0);
    let sv = v.cmp(&0);
    if su != Ordering::Less && sv != Ordering::Less {
        return Some(if su == Ordering::Equal && sv == Ordering::Equal {
            Ordering::Equal
        } else {
            Ordering::Greater
        });
    }
    if su != Ordering::Greater && sv != Ordering::Greater {
        return Some(Ordering::Less);
    }
    // Mixed signs; u² ≠ v²d because d is not a square.
    let vv = v.checked_mul(v)?.checked_mul(d as i128)?;
    let uu = u.checked_mul(u);
    let u_dominates = match uu {
        Some(uu) => uu > vv,
        None => true,
    };
    Some(match (su, u_dominates) {
        (Ordering::Greater, true) | (Ordering::Less, false) => Ordering::Greater,
        _ => Ordering::Less,
    })
}

fn surd_sign_big(u: &BigInt, v: &BigInt, d: u64) -> Ordering {
    let (su, sv) = (u.sign(), v.sign());
    if su != Sign::Minus && sv != Sign::Minus {
        return if su == Sign::NoSign && sv == Sign::NoSign {
            Ordering::Equal
        } else {
            Ordering::Greater
        };
    }
    if su != Sign::Plus && sv != Sign::Plus {
        return Ordering::Less;
    }
    let u_dominates = u * u > v * v * BigInt::from(d);
    if (su == Sign::Plus) == u_dominates {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Rounding rule for decimal rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Drop the remaining digits (magnitude rounded toward zero).
    Truncate,
    /// Round to nearest, ties to even.
    HalfEven,
}

impl QuadValue {
    pub fn new(p: i128, q: i128, den: i128, d: SquarefreeD) -> Result<Self> {
        qv_normalize(p, q, den, d)
    }

    pub fn integer(n: i128, d: SquarefreeD) -> Self {
        QuadValue { p: n, q: 0, den: 1, d }
    }

    pub fn zero(d: SquarefreeD) -> Self {
        Self::integer(0, d)
    }

    pub fn one(d: SquarefreeD) -> Self {
        Self::integer(1, d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: SquarefreeD) -> Self {
        QuadValue { p: 0, q: 1, den: 1, d }
    }

    #[inline]
    pub fn p(&self) -> i128 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> i128 {
        self.q
    }

    #[inline]
    pub fn den(&self) -> i128 {
        self.den
    }

    #[inline]
    pub fn field(&self) -> SquarefreeD {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn signum(&self) -> Ordering {
        cmp_parts((self.p, self.q, self.den), (0, 0, 1), self.d.d)
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(QuadValue {
            p: self.p.checked_neg().ok_or(Error::Overflow)?,
            q: self.q.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
            d: self.d,
        })
    }

    pub fn abs(&self) -> Result<Self> {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            Ok(*self)
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::FieldMismatch(self.d.d, other.d.d))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let o = Error::Overflow;
        let p = self.p.checked_mul(other.den).ok_or(o.clone())?
            .checked_add(other.p.checked_mul(self.den).ok_or(o.clone())?)
            .ok_or(o.clone())?;
        let q = self.q.checked_mul(other.den).ok_or(o.clone())?
            .checked_add(other.q.checked_mul(self.den).ok_or(o.clone())?)
            .ok_or(o.clone())?;
        let den = self.den.checked_mul(other.den).ok_or(o)?;
        qv_normalize(p, q, den, self.d)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let o = || Error::Overflow;
        let d = self.d.d as i128;
        let pp = self.p.checked_mul(other.p).ok_or_else(o)?;
        let qq = self.q.checked_mul(other.q).ok_or_else(o)?.checked_mul(d).ok_or_else(o)?;
        let p = pp.checked_add(qq).ok_or_else(o)?;
        let q = self.p.checked_mul(other.q).ok_or_else(o)?
            .checked_add(self.q.checked_mul(other.p).ok_or_else(o)?)
            .ok_or_else(o)?;
        let den = self.den.checked_mul(other.den).ok_or_else(o)?;
        qv_normalize(p, q, den, self.d)
    }

    /// Multiplies by the rational `num/den`.
    pub fn scale(&self, num: i128, den: i128) -> Result<Self> {
        let o = || Error::Overflow;
        qv_normalize(
            self.p.checked_mul(num).ok_or_else(o)?,
            self.q.checked_mul(num).ok_or_else(o)?,
            self.den.checked_mul(den).ok_or_else(o)?,
            self.d,
        )
    }

    /// Multiplies by `ε`.
    pub fn times_eps(&self) -> Result<Self> {
        let (n, m) = self.d.epsilon();
        self.scale(n as i128, m as i128)
    }

    /// `self / √D`.
    pub fn over_sqrt_disc(&self) -> Result<Self> {
        // 1/√D = √d/d or √d/(2d)
        let scale = if self.d.eps_is_half() { 1 } else { 2 };
        let inv = QuadValue { p: 0, q: 1, den: 1, d: self.d }.scale(1, scale * self.d.d as i128)?;
        self.mul(&inv)
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        qv_cmp(self, other)
    }

    /// `⌊self⌋`.
    pub fn floor(&self) -> i128 {
        if self.q == 0 {
            return floor_div(self.p, self.den);
        }
        // ⌊(p + s)/den⌋ = ⌊(p + ⌊s⌋)/den⌋ for irrational s = q√d.
        let t = floor_q_sqrt(self.q, self.d.d);
        match t {
            Some(t) => match self.p.checked_add(t) {
                Some(n) => floor_div(n, self.den),
                None => self.floor_big(),
            },
            None => self.floor_big(),
        }
    }

    fn floor_big(&self) -> i128 {
        let n = BigInt::from(self.p) + floor_q_sqrt_big(&BigInt::from(self.q), self.d.d);
        let f = n.div_floor(&BigInt::from(self.den));
        i128::try_from(f).expect("floor fits in i128")
    }

    /// Decimal expansion truncated to `digits` places (error below one unit
    /// in the last place).
    pub fn to_decimal(&self, digits: u32) -> String {
        self.to_decimal_rounded(digits, Rounding::Truncate)
    }

    /// Decimal expansion with an explicit rounding rule.
    pub fn to_decimal_rounded(&self, digits: u32, rounding: Rounding) -> String {
        let negative = self.signum() == Ordering::Less;
        let sign = if negative { -1 } else { 1 };
        let p = BigInt::from(self.p) * sign;
        let q = BigInt::from(self.q) * sign;
        let den = BigInt::from(self.den);
        let scale = BigInt::from(10u32).pow(digits);
        let big_p = &p * &scale;
        let big_q = &q * &scale;

        let floor_of = |pp: &BigInt, qq: &BigInt| -> BigInt {
            (pp + floor_q_sqrt_big(qq, self.d.d)).div_floor(&den)
        };
        let mut n = floor_of(&big_p, &big_q);
        if rounding == Rounding::HalfEven {
            let up = if self.q == 0 {
                let rem = &big_p - &n * &den;
                let twice: BigInt = rem * 2;
                twice > den || (twice == den && n.is_odd())
            } else {
                let n2 = floor_of(&(&big_p * 2), &(&big_q * 2));
                n2 - &n * 2 == BigInt::from(1)
            };
            if up {
                n += 1;
            }
        }
        let negative = negative && !n.is_zero();
        format_fixed(n.magnitude(), digits, negative)
    }
}

/// `⌊q√d⌋` in `i128`, `None` on overflow.
fn floor_q_sqrt(q: i128, d: u64) -> Option<i128> {
    let qq = q.unsigned_abs().checked_mul(q.unsigned_abs())?;
    let sq = qq.checked_mul(d as u128)?;
    let r = sq.isqrt() as i128;
    Some(if q >= 0 { r } else { -(r + 1) })
}

fn floor_q_sqrt_big(q: &BigInt, d: u64) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    let sq: BigUint = q.magnitude() * q.magnitude() * BigUint::from(d);
    let r = BigInt::from(sq.sqrt());
    if q.is_positive() {
        r
    } else {
        -(r + 1u32)
    }
}

fn format_fixed(n: &BigUint, digits: u32, negative: bool) -> String {
    let mut s = n.to_string();
    let digits = digits as usize;
    if s.len() <= digits {
        let pad = digits + 1 - s.len();
        let mut z = String::with_capacity(digits + 1);
        for _ in 0..pad {
            z.push('0');
        }
        z.push_str(&s);
        s = z;
    }
    let mut out = String::with_capacity(s.len() + 2);
    if negative {
        out.push('-');
    }
    let split = s.len() - digits;
    out.push_str(&s[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&s[split..]);
    }
    out
}

impl PartialOrd for QuadValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        qv_cmp(self, other).ok()
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.d;
        let surd = match self.q {
            0 => None,
            1 => Some(alloc::format!("√{d}")),
            -1 => Some(alloc::format!("-√{d}")),
            q => Some(alloc::format!("{q}√{d}")),
        };
        let num = match (self.p, surd) {
            (p, None) => alloc::format!("{p}"),
            (0, Some(s)) => s,
            (p, Some(s)) if s.starts_with('-') => alloc::format!("{p}{s}"),
            (p, Some(s)) => alloc::format!("{p}+{s}"),
        };
        if self.den == 1 {
            f.write_str(&num)
        } else if self.p != 0 && self.q != 0 {
            write!(f, "({num})/{}", self.den)
        } else {
            write!(f, "{num}/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(d: u64) -> SquarefreeD {
        SquarefreeD::new(d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let v = qv_normalize(2, 2, 4, sf(5)).unwrap();
        assert_eq!((v.p(), v.q(), v.den()), (1, 1, 2));
        let v = qv_normalize(0, 4, 6, sf(2)).unwrap();
        assert_eq!((v.p(), v.q(), v.den()), (0, 2, 3));
        let v = qv_normalize(3, 0, -1, sf(7)).unwrap();
        assert_eq!((v.p(), v.q(), v.den()), (-3, 0, 1));
        assert_eq!(qv_normalize(1, 1, 0, sf(7)), Err(Error::InvalidDenominator));
    }

    #[test]
    fn compare_examples() {
        let d5 = sf(5);
        let golden = QuadValue::new(1, 1, 2, d5).unwrap();
        assert_eq!(qv_cmp(&golden, &QuadValue::integer(2, d5)), Ok(Ordering::Less));
        let d13 = sf(13);
        let z = QuadValue::zero(d13);
        assert_eq!(qv_cmp(&z, &z), Ok(Ordering::Equal));
        let x = QuadValue::new(-7, 2, 1, d13).unwrap();
        assert_eq!(qv_cmp(&x, &z), Ok(Ordering::Greater));
        assert_eq!(qv_cmp(&x, &golden), Err(Error::FieldMismatch(13, 5)));
    }

    #[test]
    fn compare_falls_back_to_big_integers() {
        let d = sf(3);
        let huge = i128::MAX / 4;
        let x = QuadValue::new(huge, -1, 3, d).unwrap();
        let y = QuadValue::new(huge, 1, 3, d).unwrap();
        assert_eq!(qv_cmp(&x, &y), Ok(Ordering::Less));
        let z = QuadValue::new(-huge, huge / 2, 7, d).unwrap();
        assert_eq!(z.signum(), Ordering::Less);
    }

    #[test]
    fn decimal_examples() {
        let d293 = sf(293);
        let r = QuadValue::integer(17, d293).over_sqrt_disc().unwrap();
        assert_eq!(r.to_decimal(6), "0.993150");
        let d3 = sf(3);
        let v = QuadValue::new(3, 1, 6, d3).unwrap();
        assert_eq!(v.to_decimal(6), "0.788675");
        assert_eq!(QuadValue::integer(2, d3).to_decimal(3), "2.000");
        assert_eq!(QuadValue::integer(2, d3).to_decimal(0), "2");
    }

    #[test]
    fn decimal_rounding() {
        let d293 = sf(293);
        let r = QuadValue::integer(17, d293).over_sqrt_disc().unwrap();
        assert_eq!(r.to_decimal_rounded(6, Rounding::HalfEven), "0.993151");
        assert_eq!(r.to_decimal_rounded(12, Rounding::HalfEven), "0.993150604323");
        let d2 = sf(2);
        let half = QuadValue::new(1, 0, 8, d2).unwrap(); // 0.125
        assert_eq!(half.to_decimal_rounded(2, Rounding::HalfEven), "0.12");
        let h = QuadValue::new(3, 0, 8, d2).unwrap(); // 0.375
        assert_eq!(h.to_decimal_rounded(2, Rounding::HalfEven), "0.38");
        let neg = QuadValue::new(-1, 1, 1, d2).unwrap().neg().unwrap(); // 1-√2
        assert_eq!(neg.to_decimal(4), "-0.4142");
        assert_eq!(neg.to_decimal_rounded(3, Rounding::HalfEven), "-0.414");
    }

    #[test]
    fn floor_matches_definition() {
        let d = sf(41);
        assert_eq!(QuadValue::new(3, 1, 2, d).unwrap().floor(), 4);
        assert_eq!(QuadValue::new(3, -1, 2, d).unwrap().floor(), -2);
        assert_eq!(QuadValue::new(-7, 0, 2, d).unwrap().floor(), -4);
    }

    #[test]
    fn square_free_validation() {
        assert_eq!(
            SquarefreeD::new(50),
            Err(Error::InvalidField { d: 50, defect: FieldDefect::SquareFactor(5) })
        );
        assert_eq!(
            SquarefreeD::new(1),
            Err(Error::InvalidField { d: 1, defect: FieldDefect::TooSmall })
        );
        let d = sf(293);
        assert_eq!(d.discriminant(), 293);
        assert!(d.eps_is_half());
        assert_eq!(sf(398).discriminant(), 1592);
    }

    #[test]
    fn display() {
        let d = sf(5);
        assert_eq!(QuadValue::new(1, 1, 2, d).unwrap().to_string(), "(1+√5)/2");
        assert_eq!(QuadValue::new(0, 3, 2, d).unwrap().to_string(), "3√5/2");
        assert_eq!(QuadValue::new(18, -1, 1, d).unwrap().to_string(), "18-√5");
        assert_eq!(QuadValue::integer(17, d).to_string(), "17");
    }
}
