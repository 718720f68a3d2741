//! Residue symbols, modular square roots, and the structural results on
//! `L(d)`: the closed form for non-residue ("exceptional") `d`, their
//! `(kA)² ± 2A` / `((2k−1)A)² ± 4A` shape, and upper bounds on `L(d)/√D`
//! from a square root of `d` modulo a prime power.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::approx::Approx;
use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::lmin::lmin;
use crate::mahler::{canonicalize, mahler_measure, MeasureResult};
use crate::primes::PrimeTable;
use crate::quad::{qv_cmp, QuadValue, SquarefreeD};

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi(a: i64, n: u64) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let a = (a as i128).rem_euclid(n as i128) as u64;
    Ok(jacobi_odd(a, n))
}

/// Jacobi symbol for `0 ≤ a`, odd `n`, by quadratic reciprocity.
pub(crate) fn jacobi_odd(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// A square root of the residue `a` modulo an odd prime `p` (Tonelli–Shanks).
pub(crate) fn sqrt_mod_prime_small(a: u64, p: u64) -> u64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while jacobi_odd(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Smallest `r0 ∈ [0, p^l)` with `r0² ≡ d (mod p^l)`, for `p ∤ d`.
///
/// Odd `p`: Tonelli–Shanks then Hensel lifting. `p = 2`: needs `d ≡ 1 (mod 8)`
/// once `l ≥ 3`, and the smallest of the four roots is returned.
pub fn sqrt_mod_prime_power(d: i64, p: u64, l: u32) -> Result<u64> {
    if p < 2 || l == 0 {
        return Err(Error::OutOfRange("need a prime p and l ≥ 1"));
    }
    let q = p.checked_pow(l).filter(|&q| q < (1 << 62)).ok_or(Error::OutOfRange("p^l too large"))?;
    let dq = (d as i128).rem_euclid(q as i128) as u64;
    if (d as i128).rem_euclid(p as i128) == 0 {
        return Err(Error::RamifiedPrime { d, p });
    }
    let not_residue = Error::NotAResidue { d, modulus: q };
    if p == 2 {
        if l <= 2 {
            return (0..q).find(|&r| r * r % q == dq).ok_or(not_residue);
        }
        if dq % 8 != 1 {
            return Err(not_residue);
        }
        let mut r = 1u64;
        for k in 3..l {
            // r² ≡ d mod 2^k; fix the next bit.
            let m = 1u64 << (k + 1);
            if mul_mod(r, r, m) != dq % m {
                r += 1 << (k - 1);
            }
        }
        let half = q / 2;
        let roots = [r % q, (q - r) % q, (r + half) % q, (q - r + half) % q];
        let best = roots.into_iter().min().expect("four roots");
        debug_assert_eq!(mul_mod(best, best, q), dq);
        return Ok(best);
    }
    let dp = dq % p;
    if jacobi_odd(dp, p) != 1 {
        return Err(not_residue);
    }
    let mut r = sqrt_mod_prime_small(dp, p);
    let mut pk = p;
    for _ in 1..l {
        pk *= p;
        // r ← r − (r² − d)/(2r) mod p^(k+1)
        let r2 = mul_mod(r, r, pk);
        let diff = (r2 + pk - dq % pk) % pk;
        let inv = inv_mod(mul_mod(2, r, pk), pk).expect("2r is a unit");
        r = (r + pk - mul_mod(diff, inv, pk)) % pk;
    }
    let r = r.min(q - r);
    debug_assert_eq!(mul_mod(r, r, q), dq);
    Ok(r)
}

fn table_for(d: SquarefreeD) -> PrimeTable {
    PrimeTable::up_to(d.isqrt() + 1)
}

/// Whether every odd prime `p ∤ d` below `√d` (for `d ≡ 2, 3 mod 4`) or
/// `√d/2` (for `d ≡ 5 mod 8`) has `(d/p) = −1`. Always `false` for
/// `d ≡ 1 (mod 8)`.
pub fn is_exceptional(d: SquarefreeD) -> bool {
    is_exceptional_with(d, &table_for(d))
}

/// As [`is_exceptional`] with a prime table covering `√d`.
pub fn is_exceptional_with(d: SquarefreeD, table: &PrimeTable) -> bool {
    let dv = d.get();
    if dv % 8 == 1 {
        return false;
    }
    // p < ½√D  <=>  4p² < D, which is p² < d or 4p² < d by class.
    let disc = d.discriminant() as u128;
    let mut primes = table.odd_primes_below(u64::MAX);
    loop {
        let p = match primes.next() {
            Some(p) => p,
            None => {
                assert!(
                    4 * (table.limit() as u128).pow(2) >= disc,
                    "prime table too small"
                );
                return true;
            }
        };
        if 4 * (p as u128) * (p as u128) >= disc {
            return true;
        }
        if dv % p != 0 && jacobi_odd(dv % p, p) != -1 {
            return false;
        }
    }
}

/// Smallest odd prime `p ∤ d` with `(d/p) = 1` and `p < ½√D`.
pub fn first_split_prime(d: SquarefreeD) -> Option<u64> {
    first_split_prime_with(d, &table_for(d))
}

pub fn first_split_prime_with(d: SquarefreeD, table: &PrimeTable) -> Option<u64> {
    let dv = d.get();
    let disc = d.discriminant() as u128;
    table
        .odd_primes_below(u64::MAX)
        .take_while(|&p| 4 * (p as u128) * (p as u128) < disc)
        .find(|&p| dv % p != 0 && jacobi_odd(dv % p, p) == 1)
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    PrimeTable::up_to(n.isqrt() + 1).factor_into(n, &mut factors);
    let mut divs = Vec::from([1u64]);
    for (p, e) in factors {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// `ε·max{c, kA + √d, (d − k²A²)/c}`, the measure of `(kA + √d)/c`.
fn reduced_measure(d: SquarefreeD, a: u64, c: u64) -> QuadValue {
    let dv = d.get() as i128;
    let c = c as i128;
    let a = a as i128;
    let candidates = [
        QuadValue::integer(c, d),
        QuadValue::new(a, 1, 1, d).expect("den 1"),
        QuadValue::new(dv - a * a, 0, c, d).expect("c > 0"),
    ];
    let mut best = candidates[0];
    for x in &candidates[1..] {
        if qv_cmp(x, &best).expect("same field") == Ordering::Greater {
            best = *x;
        }
    }
    best.times_eps().expect("fits")
}

/// `L(d)` for exceptional `d` from the odd divisors `A < √d` of `d` alone.
///
/// With `m_A` the integer in `(√d/A − 2, √d/A)` of the parity of `d`, the
/// minimum is taken over `(kA + √d)/(2A)` for `k ∈ {m_A, m_A − 2}` and, when
/// `d ≢ 1 (mod 4)`, `(kA + √d)/A` for `k ∈ {m_A, m_A − 1}`, all with `k ≥ 0`.
/// The result is checked against `√D − 2ε·max A`.
pub fn nonresidue_lmin(d: SquarefreeD) -> Result<QuadValue> {
    if !is_exceptional(d) {
        return Err(Error::NotExceptional(d.get()));
    }
    let dv = d.get();
    let root = d.isqrt();
    let mut best: Option<QuadValue> = None;
    let mut max_a = 0u64;
    for a_div in divisors_of(dv) {
        if a_div % 2 == 0 || a_div * a_div >= dv {
            continue;
        }
        max_a = max_a.max(a_div);
        let t = root / a_div;
        let m = if t % 2 == dv % 2 { t } else { t - 1 };
        let mut consider = |k: i64, c: u64| {
            if k < 0 {
                return;
            }
            let v = reduced_measure(d, k as u64 * a_div, c);
            best = match best {
                Some(b) if qv_cmp(&b, &v).expect("same field") != Ordering::Greater => Some(b),
                _ => Some(v),
            };
        };
        let m = m as i64;
        consider(m, 2 * a_div);
        consider(m - 2, 2 * a_div);
        if !d.eps_is_half() {
            consider(m, a_div);
            consider(m - 1, a_div);
        }
    }
    let value = best.expect("A = 1 always qualifies");
    let lower = nonresidue_lower_bound(d, max_a);
    if qv_cmp(&value, &lower)? == Ordering::Less {
        return Err(Error::BoundViolated(dv));
    }
    Ok(value)
}

/// `√D − 2ε·max_a`.
pub fn nonresidue_lower_bound(d: SquarefreeD, max_a: u64) -> QuadValue {
    let shift = if d.eps_is_half() { max_a } else { 2 * max_a } as i128;
    d.sqrt_disc().sub(&QuadValue::integer(shift, d)).expect("fits")
}

/// Largest odd divisor `A < √d` of `d`.
pub fn max_odd_divisor_below_root(d: SquarefreeD) -> u64 {
    divisors_of(d.get())
        .into_iter()
        .filter(|&a| a % 2 == 1 && a * a < d.get())
        .max()
        .unwrap_or(1)
}

/// Which of the four shapes an exceptional `d` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormVariant {
    /// `(kA)² + 2A`
    SquarePlusTwoA,
    /// `(kA)² − 2A`
    SquareMinusTwoA,
    /// `((2k−1)A)² + 4A`
    OddSquarePlusFourA,
    /// `((2k−1)A)² − 4A`
    OddSquareMinusFourA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExceptionalForm {
    pub a: u64,
    pub k: u64,
    pub variant: FormVariant,
}

impl ExceptionalForm {
    /// The multiplier of `A` inside the square: `k` or `2k − 1`.
    pub fn multiplier(&self) -> u64 {
        match self.variant {
            FormVariant::SquarePlusTwoA | FormVariant::SquareMinusTwoA => self.k,
            _ => 2 * self.k - 1,
        }
    }

    pub fn eval(&self) -> i128 {
        let base = (self.multiplier() * self.a) as i128;
        let a = self.a as i128;
        base * base
            + match self.variant {
                FormVariant::SquarePlusTwoA => 2 * a,
                FormVariant::SquareMinusTwoA => -2 * a,
                FormVariant::OddSquarePlusFourA => 4 * a,
                FormVariant::OddSquareMinusFourA => -4 * a,
            }
    }
}

impl fmt::Display for ExceptionalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sign, t) = match self.variant {
            FormVariant::SquarePlusTwoA => ('+', 2),
            FormVariant::SquareMinusTwoA => ('-', 2),
            FormVariant::OddSquarePlusFourA => ('+', 4),
            FormVariant::OddSquareMinusFourA => ('-', 4),
        };
        write!(f, "({}·{})²{}{}·{}", self.multiplier(), self.a, sign, t, self.a)
    }
}

/// Writes an exceptional `d ≢ 1 (mod 8)` as `(kA)² ± 2A` or
/// `((2k−1)A)² ± 4A`, following `d = N² + r`, `N = ⌊√d⌋`, `1 ≤ r ≤ 2N`.
pub fn decompose_exceptional(d: SquarefreeD) -> Result<ExceptionalForm> {
    let dv = d.get();
    if dv % 8 == 1 || !is_exceptional(d) {
        return Err(Error::NotExceptional(dv));
    }
    let fail = Error::DecompositionFailed(dv);
    let n = d.isqrt();
    let r = dv - n * n;
    let five_mod_eight = dv % 8 == 5;
    let (a, base, plus) = if r % 2 == 0 {
        let a = if five_mod_eight {
            if r % 4 != 0 {
                return Err(fail);
            }
            r / 4
        } else {
            r / 2
        };
        (a, n, true)
    } else {
        let m = n - (r - 1) / 2;
        let a = if five_mod_eight {
            if m % 2 != 0 {
                return Err(fail);
            }
            m / 2
        } else {
            m
        };
        (a, n + 1, false)
    };
    let disc = d.discriminant() as u128;
    let valid = a > 0
        && a % 2 == 1
        && dv % a == 0
        && base % a == 0
        && crate::quad::square_factor(a).is_none()
        && 4 * (a as u128) * (a as u128) < disc;
    if !valid {
        return Err(fail);
    }
    let mult = base / a;
    let form = if five_mod_eight {
        if mult % 2 == 0 {
            return Err(fail);
        }
        let variant = if plus {
            FormVariant::OddSquarePlusFourA
        } else {
            FormVariant::OddSquareMinusFourA
        };
        ExceptionalForm { a, k: (mult + 1) / 2, variant }
    } else {
        let variant = if plus {
            FormVariant::SquarePlusTwoA
        } else {
            FormVariant::SquareMinusTwoA
        };
        ExceptionalForm { a, k: mult, variant }
    };
    if form.eval() != dv as i128 {
        return Err(fail);
    }
    Ok(form)
}

/// Branch of the piecewise bound in [`lambda_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaBranch {
    /// `0 < λ < ¼(√5 − 1)`: `½(1 + λ + √((1 − λ)² − 4λ²))`
    Low,
    /// `¼(√5 − 1) ≤ λ ≤ ½(√3 − 1)`: `1/(4λ)`
    Middle,
    /// `½(√3 − 1) < λ < 1`: `½(1 + λ)`
    High,
}

impl fmt::Display for LambdaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaBranch::Low => "low",
            LambdaBranch::Middle => "middle",
            LambdaBranch::High => "high",
        })
    }
}

/// Exact branch selection: `λ < ¼(√5−1) ⇔ (4λ+1)² < 5` and
/// `λ > ½(√3−1) ⇔ (2λ+1)² > 3`.
pub fn lambda_branch(lambda: &QuadValue) -> Result<LambdaBranch> {
    let d = lambda.field();
    let zero = QuadValue::zero(d);
    let one = QuadValue::one(d);
    if qv_cmp(lambda, &zero)? != Ordering::Greater || qv_cmp(lambda, &one)? != Ordering::Less {
        return Err(Error::OutOfRange("λ must lie in (0, 1)"));
    }
    let four = lambda.scale(4, 1)?.add(&one)?;
    if qv_cmp(&four.mul(&four)?, &QuadValue::integer(5, d))? == Ordering::Less {
        return Ok(LambdaBranch::Low);
    }
    let two = lambda.scale(2, 1)?.add(&one)?;
    if qv_cmp(&two.mul(&two)?, &QuadValue::integer(3, d))? == Ordering::Greater {
        return Ok(LambdaBranch::High);
    }
    Ok(LambdaBranch::Middle)
}

/// Value of one branch at `λ` (no range check).
pub fn lambda_branch_value(branch: LambdaBranch, lambda: &Approx) -> Approx {
    let one = Approx::from_int(1);
    match branch {
        LambdaBranch::Low => {
            let u = &one - lambda;
            let radicand = &(&u * &u) - &(&Approx::from_int(4) * &(lambda * lambda));
            (&(&one + lambda) + &radicand.sqrt()).half()
        }
        LambdaBranch::Middle => &one / &(&Approx::from_int(4) * lambda),
        LambdaBranch::High => (&one + lambda).half(),
    }
}

/// Upper bound on `L(d)/√D` when `d` is a square modulo `q` with
/// `q = λ√d` (odd `q`) or `q = 4λ√d` (`4 | q`).
pub fn lambda_bound(lambda: &QuadValue) -> Result<Approx> {
    let branch = lambda_branch(lambda)?;
    Ok(lambda_branch_value(branch, &Approx::from_quad(lambda)))
}

/// `½(1 + p/(1 + √((p−1)² + 4)))`, the bound on `L(d)/√D` whenever `(d/p) = 1`.
pub fn prime_class_bound(p: u64) -> Approx {
    let pm = (p - 1) as i128;
    let s = &Approx::from_int(1) + &Approx::from_int(pm * pm + 4).sqrt();
    (&Approx::from_int(1) + &(&Approx::from_int(p as i128) / &s)).half()
}

/// `q = p^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub l: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.p.pow(self.l)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.l)
        }
    }
}

/// An explicit `α₁, α₂` pair bounding `L(d)` from a square root of `d`
/// modulo `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub d: SquarefreeD,
    pub q: PrimePower,
    pub r0: u64,
    /// The lifted representative in the window below `√d`.
    pub r: i64,
    pub lambda: QuadValue,
    pub branch: LambdaBranch,
    /// Theoretical bound on `L(d)/√D`.
    pub bound: Approx,
    pub alpha1: MeasureResult,
    pub alpha2: MeasureResult,
    /// The smaller of the two measures.
    pub achieved: MeasureResult,
    /// `achieved/√D`.
    pub achieved_ratio: Approx,
    pub lmin: QuadValue,
}

/// Slack allowed when a ratio in `Q(√d)` meets a bound in another field.
pub fn cross_field_slack() -> Approx {
    Approx::from_ratio(1, 1_000_000_000)
}

/// Builds the certificate for `q = p^l` (odd `p`, or `p = 2` with `l ≥ 2`).
pub fn residue_upper_bound(d: SquarefreeD, q: PrimePower) -> Result<BoundCertificate> {
    let dv = d.get();
    let odd = q.p % 2 == 1;
    if !odd && q.l < 2 {
        return Err(Error::OutOfRange("a power of two must be divisible by 4"));
    }
    let qv = q.p.checked_pow(q.l).ok_or(Error::OutOfRange("p^l too large"))?;
    let lambda = if odd {
        QuadValue::new(0, qv as i128, dv as i128, d)?
    } else {
        QuadValue::new(0, qv as i128, 4 * dv as i128, d)?
    };
    let branch = lambda_branch(&lambda)?;
    let r0 = sqrt_mod_prime_power(dv as i64, q.p, q.l)?;

    let s = d.isqrt() as i64;
    // Largest r < √d in the residue class; the window has length `step`.
    let (step, residue) = if odd {
        let q2 = 2 * qv as i64;
        let r0 = r0 as i64;
        let res = if (r0 - dv as i64).rem_euclid(2) == 0 { r0 } else { r0 + qv as i64 };
        (q2, res)
    } else {
        ((qv / 2) as i64, r0 as i64)
    };
    let r = s - (s - residue).rem_euclid(step);
    let alpha1 = mahler_measure(&canonicalize(r, 1, step, d)?);
    let alpha2 = mahler_measure(&canonicalize(r - step, 1, step, d)?);
    let achieved = if qv_cmp(&alpha2.value, &alpha1.value)? == Ordering::Less {
        alpha2
    } else {
        alpha1
    };
    let bound = lambda_branch_value(branch, &Approx::from_quad(&lambda));
    let achieved_ratio = Approx::from_quad(&achieved.value.over_sqrt_disc()?);
    let lmin = lmin(d).value;

    let cert = BoundCertificate {
        d,
        q,
        r0,
        r,
        lambda,
        branch,
        bound,
        alpha1,
        alpha2,
        achieved,
        achieved_ratio,
        lmin,
    };
    if !cert.holds()? {
        return Err(Error::BoundViolated(dv));
    }
    Ok(cert)
}

impl BoundCertificate {
    /// `achieved ≥ L(d)` exactly and `achieved/√D ≤ bound + 10⁻⁹`.
    pub fn holds(&self) -> Result<bool> {
        let above_min = qv_cmp(&self.achieved.value, &self.lmin)? != Ordering::Less;
        let below_bound = self.achieved_ratio.le_with_slack(&self.bound, &cross_field_slack());
        Ok(above_min && below_bound)
    }
}

/// `2^l` with `¼(√5−1)√d ≤ 2^(l−2) ≤ ½(√5−1)√d`, for `d ≡ 1 (mod 8)`.
pub fn two_adic_modulus(d: SquarefreeD) -> Option<PrimePower> {
    if d.get() % 8 != 1 {
        return None;
    }
    let phi = &Approx::from_int(5).sqrt() - &Approx::from_int(1);
    let root = Approx::from_int(d.get() as i128).sqrt();
    let lower = (&phi * &root).half().half();
    let upper = (&phi * &root).half();
    let mut l = 2u32;
    loop {
        let x = Approx::from_int(1i128 << (l - 2));
        if x >= lower {
            return (x <= upper).then_some(PrimePower { p: 2, l });
        }
        l += 1;
    }
}

/// `p^l` with `√d/s ≤ p^l ≤ p√d/s`, `s = 1 + √((p−1)² + 4)`.
pub fn prime_modulus(d: SquarefreeD, p: u64) -> Option<PrimePower> {
    let pm = (p - 1) as i128;
    let s = &Approx::from_int(1) + &Approx::from_int(pm * pm + 4).sqrt();
    let root = Approx::from_int(d.get() as i128).sqrt();
    let lower = &root / &s;
    let upper = &(&root * &Approx::from_int(p as i128)) / &s;
    let mut l = 1u32;
    let mut pl = p as i128;
    while Approx::from_int(pl) < lower {
        l += 1;
        pl = pl.checked_mul(p as i128)?;
    }
    (Approx::from_int(pl) <= upper).then_some(PrimePower { p, l })
}

/// Certificates from `d ≡ 1 (mod 8)` and from the first split prime, in that
/// order. Empty when neither applies.
pub fn certificates(d: SquarefreeD) -> Result<Vec<BoundCertificate>> {
    let mut out = Vec::new();
    if let Some(q) = two_adic_modulus(d) {
        out.push(residue_upper_bound(d, q)?);
    }
    if let Some(p) = first_split_prime(d) {
        if let Some(q) = prime_modulus(d, p) {
            out.push(residue_upper_bound(d, q)?);
        }
    }
    Ok(out)
}

/// The certificate with the smallest achieved measure (ties: smaller bound,
/// then earlier in [`certificates`] order).
pub fn best_certificate(d: SquarefreeD) -> Result<Option<BoundCertificate>> {
    let mut best: Option<BoundCertificate> = None;
    for cert in certificates(d)? {
        let replace = match &best {
            None => true,
            Some(b) => match qv_cmp(&cert.achieved.value, &b.achieved.value)? {
                Ordering::Less => true,
                Ordering::Equal => cert.bound < b.bound,
                Ordering::Greater => false,
            },
        };
        if replace {
            best = Some(cert);
        }
    }
    Ok(best)
}
