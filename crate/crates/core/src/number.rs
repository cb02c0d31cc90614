//! Small-integer number theory used throughout: primality, factorization,
//! valuations and modular inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `n` by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation of a nonzero u64.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// p-adic valuation of a nonzero big integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Removes every factor `p` from `n`, returning the cofactor and the count.
pub fn strip_prime(n: &BigInt, p: u64) -> (BigInt, u32) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() || n.is_zero() {
            return (n, e);
        }
        n = q;
        e += 1;
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m` (m ≥ 1), if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

pub fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Factorization of a big integer by trial division over primes up to `limit`.
/// Returns `None` when a cofactor larger than `limit²` remains.
pub fn factorize_big(n: &BigInt, limit: u64) -> Option<Vec<(u64, u32)>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= limit {
        let db = BigInt::from(d);
        if &db * &db > n {
            break;
        }
        let (rest, e) = strip_prime(&n, d);
        if e > 0 {
            out.push((d, e));
            n = rest;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some(out);
    }
    let small = n.to_u64()?;
    if small <= limit.saturating_mul(limit) {
        out.push((small, 1));
        out.sort_unstable();
        Some(out)
    } else {
        None
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
