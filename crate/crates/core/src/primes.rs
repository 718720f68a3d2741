//! Prime tables, square-free sieving and factorization of `d − a²`.

use alloc::vec;
use alloc::vec::Vec;

use crate::structure::{jacobi_odd, sqrt_mod_prime_small};

/// Primes up to a limit, optionally with a smallest-prime-factor table for
/// constant-time factoring of small integers.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    primes: Vec<u32>,
    limit: u64,
    spf: Vec<u32>,
}

impl PrimeTable {
    /// All primes `≤ limit`.
    pub fn up_to(limit: u64) -> Self {
        let limit = limit.max(2);
        assert!(limit < u32::MAX as u64, "prime table limit too large");
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        PrimeTable { primes, limit, spf: Vec::new() }
    }

    /// Primes up to `√max_n`, enough to factor or sieve anything `≤ max_n`.
    pub fn for_range(max_n: u64) -> Self {
        Self::up_to(max_n.isqrt() + 1)
    }

    /// Adds a smallest-prime-factor table covering `[0, spf_limit]`.
    pub fn with_spf(mut self, spf_limit: u64) -> Self {
        let n = spf_limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        self.spf = spf;
        self
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Largest `n` covered by the smallest-prime-factor table.
    pub fn spf_limit(&self) -> u64 {
        (self.spf.len() as u64).saturating_sub(1)
    }

    /// Odd primes strictly below `bound`.
    pub fn odd_primes_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().skip(1).map(|&p| p as u64).take_while(move |&p| p < bound)
    }

    /// Appends the factorization of `n ≥ 1` to `out` as `(prime, exponent)`.
    pub fn factor_into(&self, mut n: u64, out: &mut Vec<(u64, u32)>) {
        if n < self.spf.len() as u64 {
            while n > 1 {
                let p = self.spf[n as usize] as u64;
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            return;
        }
        for &p in &self.primes {
            let p = p as u64;
            if p * p > n {
                break;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
        }
        // Past the table: continue with odd trial divisors.
        let mut p = (self.limit + 1) | 1;
        while n > 1 && p.saturating_mul(p) <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += 2;
        }
        if n > 1 {
            out.push((n, 1));
        }
    }
}

/// Square-free flags for a contiguous range `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeSet {
    lo: u64,
    flags: Vec<bool>,
}

impl SquarefreeSet {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.flags.len() as u64 - 1
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.lo && n <= self.hi() && self.flags[(n - self.lo) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let lo = self.lo;
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(move |(i, _)| lo + i as u64)
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }
}

const SEGMENT: u64 = 1 << 16;

/// Square-free integers in `[lo, hi]` (`2 ≤ lo ≤ hi`).
pub fn squarefree_sieve(lo: u64, hi: u64) -> SquarefreeSet {
    squarefree_sieve_with(lo, hi, &PrimeTable::for_range(hi))
}

/// As [`squarefree_sieve`], reusing a prime table covering `√hi`.
pub fn squarefree_sieve_with(lo: u64, hi: u64, table: &PrimeTable) -> SquarefreeSet {
    assert!(2 <= lo && lo <= hi, "invalid range [{lo}, {hi}]");
    assert!(table.limit().saturating_mul(table.limit()) >= hi || table.limit() >= hi.isqrt());
    let mut flags = vec![true; (hi - lo + 1) as usize];
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = hi.min(seg_lo.saturating_add(SEGMENT - 1));
        for &p in table.primes() {
            let sq = p as u64 * p as u64;
            if sq > seg_hi {
                break;
            }
            let mut m = seg_lo.div_ceil(sq) * sq;
            while m <= seg_hi {
                flags[(m - lo) as usize] = false;
                m += sq;
            }
        }
        if seg_hi == u64::MAX {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    SquarefreeSet { lo, flags }
}

/// Factorizations of `n_a = d − a²` for ascending `a`.
///
/// Below the table's smallest-prime-factor limit each `n_a` is factored
/// directly. Otherwise `a` is processed in growing blocks: for every prime
/// `p ≤ √d` the roots of `x² ≡ d (mod p)` mark exactly the `a` with
/// `p | n_a`, and whatever remains after dividing those primes out is 1 or a
/// single prime.
pub(crate) struct NormFactors<'t> {
    d: u64,
    table: &'t PrimeTable,
    direct: bool,
    roots: Vec<(u32, u32, u32)>,
    block_start: u64,
    block_len: u64,
    rem: Vec<u64>,
    found: Vec<Vec<(u64, u32)>>,
    out: Vec<(u64, u32)>,
}

const FIRST_BLOCK: u64 = 64;
const MAX_BLOCK: u64 = 4096;

impl<'t> NormFactors<'t> {
    pub(crate) fn new(d: u64, table: &'t PrimeTable) -> Self {
        let direct = d <= table.spf_limit();
        assert!(
            direct || table.limit() >= d.isqrt(),
            "prime table too small for d={d}"
        );
        NormFactors {
            d,
            table,
            direct,
            roots: Vec::new(),
            block_start: 0,
            block_len: 0,
            rem: Vec::new(),
            found: Vec::new(),
            out: Vec::new(),
        }
    }

    fn compute_roots(&mut self) {
        let d = self.d;
        let root = d.isqrt();
        for &p in self.table.primes() {
            let p64 = p as u64;
            if p64 > root {
                break;
            }
            let dm = d % p64;
            if p == 2 {
                self.roots.push((2, dm as u32, dm as u32));
            } else if dm == 0 {
                self.roots.push((p, 0, 0));
            } else if jacobi_odd(dm, p64) == 1 {
                let r = sqrt_mod_prime_small(dm, p64);
                self.roots.push((p, r as u32, (p64 - r) as u32));
            }
        }
    }

    fn sieve_block(&mut self, start: u64) {
        if self.roots.is_empty() {
            self.compute_roots();
        }
        let len = if self.block_len == 0 {
            FIRST_BLOCK
        } else {
            (self.block_len * 2).min(MAX_BLOCK)
        };
        self.block_start = start;
        self.block_len = len;
        let d = self.d;
        self.rem.clear();
        self.rem.extend((0..len).map(|i| {
            let a = start + i;
            d.checked_sub(a * a).unwrap_or(0)
        }));
        self.found.resize_with(len as usize, Vec::new);
        for f in &mut self.found {
            f.clear();
        }
        for &(p, r1, r2) in &self.roots {
            let p = p as u64;
            let off = start % p;
            let hit = |r: u64, rem: &mut [u64], found: &mut [Vec<(u64, u32)>]| {
                let mut i = (r + p - off) % p;
                while i < len {
                    let n = &mut rem[i as usize];
                    if *n != 0 {
                        let mut e = 0;
                        while *n % p == 0 {
                            *n /= p;
                            e += 1;
                        }
                        found[i as usize].push((p, e));
                    }
                    i += p;
                }
            };
            hit(r1 as u64, &mut self.rem, &mut self.found);
            if r2 != r1 {
                hit(r2 as u64, &mut self.rem, &mut self.found);
            }
        }
    }

    /// Factorization of `d − a²`; `a` must satisfy `a² < d` and calls must
    /// not go backwards past the current block.
    pub(crate) fn factor(&mut self, a: u64) -> &[(u64, u32)] {
        self.out.clear();
        if self.direct {
            let n = self.d - a * a;
            self.table.factor_into(n, &mut self.out);
            return &self.out;
        }
        if self.block_len == 0 || a >= self.block_start + self.block_len {
            self.sieve_block(a);
        }
        debug_assert!(a >= self.block_start);
        let i = (a - self.block_start) as usize;
        self.out.extend_from_slice(&self.found[i]);
        if self.rem[i] > 1 {
            self.out.push((self.rem[i], 1));
        }
        &self.out
    }
}

/// Calls `f` on each divisor of `prod p^e ≤ bound`.
pub(crate) fn for_each_divisor_upto(
    factors: &[(u64, u32)],
    bound: u64,
    f: &mut impl FnMut(u64),
) {
    fn rec(factors: &[(u64, u32)], acc: u64, bound: u64, f: &mut impl FnMut(u64)) {
        match factors.split_first() {
            None => f(acc),
            Some((&(p, e), rest)) => {
                let mut x = acc;
                for i in 0..=e {
                    rec(rest, x, bound, f);
                    if i == e {
                        break;
                    }
                    match x.checked_mul(p) {
                        Some(y) if y <= bound => x = y,
                        _ => break,
                    }
                }
            }
        }
    }
    if bound >= 1 {
        rec(factors, 1, bound, f);
    }
}
