//! Independent reference computations on small integer data.

#![allow(dead_code)]

use std::collections::BTreeMap;

use heyde::Rational;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `m/d` in lowest terms with a positive denominator.
pub fn reduced(m: i64, d: i64) -> (i64, i64) {
    let g = gcd(m, d).max(1) * d.signum();
    (m / g, d / g)
}

/// Whether every prime factor of `n` is in `primes`.
pub fn only_primes(n: i64, primes: &[i64]) -> bool {
    let mut n = n.abs();
    for &p in primes {
        while n % p == 0 {
            n /= p;
        }
    }
    n == 1
}

pub fn prime_factors(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `[1, c, …, c]` on the `n`-torsion of `ℤ(N)`, extended by zero, at the
/// character `j/N`.
pub fn extension_value(j: i64, big_n: i64, n: i64, c: &Rational) -> Rational {
    let j = j.rem_euclid(big_n);
    if j == 0 {
        Rational::one()
    } else if j % (big_n / n) == 0 {
        c.clone()
    } else {
        Rational::zero()
    }
}

/// Inverse transform of [`extension_value`] in closed form:
/// `p(x) = ((1 − c) + c·n·[n | x]) / N`.
pub fn extension_pmf(big_n: i64, n: i64, c: &Rational) -> Vec<Rational> {
    (0..big_n)
        .map(|x| {
            let base = Rational::one() - c.clone();
            let bump = if x % n == 0 { c.mul_int(n) } else { Rational::zero() };
            (base + bump) * r(1, big_n)
        })
        .collect()
}

/// First `(u, v)` in `ℤ(N)²` where `g1(u+pv)g2(u+qv) ≠ g1(u−pv)g2(u−qv)`.
pub fn cyclic_symmetry_failure(
    g1: &dyn Fn(i64) -> Rational,
    g2: &dyn Fn(i64) -> Rational,
    big_n: i64,
    p: i64,
    q: i64,
) -> Option<(i64, i64)> {
    for u in 0..big_n {
        for v in 0..big_n {
            let lhs = g1(u + p * v) * g2(u + q * v);
            let rhs = g1(u - p * v) * g2(u - q * v);
            if lhs != rhs {
                return Some((u, v));
            }
        }
    }
    None
}

/// `max |P(L₁=h, L₂=g) − P(L₁=h, L₂=−g)|` for independent `ξ₁ ~ p1`,
/// `ξ₂ ~ p2` on `ℤ(N)`, `L₁ = ξ₁ + ξ₂`, `L₂ = pξ₁ + qξ₂`.
pub fn cyclic_symmetry_deviation(p1: &[Rational], p2: &[Rational], p: i64, q: i64) -> Rational {
    let n = p1.len() as i64;
    let mut joint: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    for x1 in 0..n {
        for x2 in 0..n {
            let w = p1[x1 as usize].clone() * p2[x2 as usize].clone();
            if w.is_zero() {
                continue;
            }
            let key = ((x1 + x2).rem_euclid(n), (p * x1 + q * x2).rem_euclid(n));
            let slot = joint.entry(key).or_insert_with(Rational::zero);
            *slot = slot.clone() + w;
        }
    }
    let zero = Rational::zero();
    let mut worst = Rational::zero();
    for (&(h, g), pr) in &joint {
        let mirror = joint.get(&(h, (-g).rem_euclid(n))).unwrap_or(&zero);
        let d = (pr.clone() - mirror.clone()).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}
