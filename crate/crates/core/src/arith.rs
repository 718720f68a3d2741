//! Small integer helpers shared by the exact modules.

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128
}

/// Floor division with a positive divisor.
pub fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if a % b < 0 {
        q - 1
    } else {
        q
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `a^5 < b²` style helper: smallest integer `x ≥ 0` with `x^n ≥ v`, where
/// `n` is small. Used for the `d^(2/5)` window.
pub fn ceil_root(v: u128, n: u32) -> u128 {
    let mut lo = 0u128;
    let mut hi = 1u128;
    while checked_pow(hi, n).map_or(false, |x| x < v) {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if checked_pow(mid, n).map_or(false, |x| x < v) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

fn checked_pow(x: u128, n: u32) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..n {
        acc = acc.checked_mul(x)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_div_negative() {
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-8, 2), -4);
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }

    #[test]
    fn fifth_root_window() {
        // a < d^(2/5)  <=>  a^5 < d^2
        assert_eq!(ceil_root(827 * 827, 5), 15);
        assert_eq!(ceil_root(32, 5), 2);
        assert_eq!(ceil_root(33, 5), 3);
    }
}
