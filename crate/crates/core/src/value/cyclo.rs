//! Exact elements of cyclotomic fields `ℚ(ζ_n)`.
//!
//! An element is a polynomial in `ζ_n` of degree below `φ(n)`, reduced
//! modulo the cyclotomic polynomial `Φ_n`. Powers `1, ζ, …, ζ^{φ(n)−1}`
//! form a basis, so zero testing is coefficientwise and values that happen
//! to be rational are recognized exactly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::number::{factorize, lcm_u64};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u64,
    coeffs: Vec<Rational>,
}

fn cyclotomic(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(&n) {
        return c.clone();
    }
    // Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d, coefficients low degree first.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic(d));
        }
    }
    let out = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, out.clone());
    out
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Reduces `Σ c_k x^k` modulo `x^n − 1` and then `Φ_n`.
fn reduce(n: u64, poly: Vec<(usize, Rational)>) -> Vec<Rational> {
    let nn = n as usize;
    let mut folded = vec![Rational::zero(); nn];
    for (k, c) in poly {
        if !c.is_zero() {
            let slot = &mut folded[k % nn];
            *slot = &*slot + c;
        }
    }
    let phi = cyclotomic(n);
    let deg = phi.len() - 1;
    let terms: Vec<(usize, i64)> = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    for i in (deg..nn).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[i], Rational::zero());
        let shift = i - deg;
        for &(j, pj) in &terms {
            let slot = &mut folded[shift + j];
            *slot = &*slot - c.mul_int(pj);
        }
    }
    folded.truncate(deg);
    folded
}

impl Cyclo {
    pub fn rational(r: Rational) -> Self {
        Cyclo {
            n: 1,
            coeffs: vec![r],
        }
    }

    pub fn zero() -> Self {
        Cyclo::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Cyclo::rational(Rational::one())
    }

    /// `e^{2πiθ}` for rational `θ`.
    pub fn root_of_unity(theta: &Rational) -> Self {
        let t = theta.fract_mod1();
        let n = t.denom().to_u64().expect("root of unity order fits in u64");
        let k = t.numer().to_usize().expect("numerator below denominator");
        Cyclo {
            n,
            coeffs: reduce(n, vec![(k, Rational::one())]),
        }
    }

    /// `Σ c_k ζ_n^k`; exponents may exceed `n`.
    pub fn from_powers(n: u64, powers: Vec<(usize, Rational)>) -> Self {
        Cyclo {
            n,
            coeffs: reduce(n, powers),
        }
    }

    /// Coefficients with respect to powers of `ζ_m`, for `n | m`.
    pub fn powers_over(&self, m: u64) -> Vec<(usize, Rational)> {
        assert_eq!(m % self.n, 0, "{} does not divide {m}", self.n);
        let step = (m / self.n) as usize;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i * step, c.clone()))
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// Same element written over `ℚ(ζ_m)`, `n | m`.
    fn lift(&self, m: u64) -> Cyclo {
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let poly = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i * step, c.clone()))
            .collect();
        Cyclo {
            n: m,
            coeffs: reduce(m, poly),
        }
    }

    fn common(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let m = lcm_u64(self.n, other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclo { n: a.n, coeffs }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if self.n == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.n == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = self.common(other);
        let mut poly = Vec::new();
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly.push((i + j, x * y));
                }
            }
        }
        Cyclo {
            n: a.n,
            coeffs: reduce(a.n, poly),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        Cyclo {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugate, `ζ ↦ ζ^{−1}`.
    pub fn conj(&self) -> Cyclo {
        if self.n <= 2 {
            return self.clone();
        }
        let n = self.n as usize;
        let poly = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| ((n - i) % n, c.clone()))
            .collect();
        Cyclo {
            n: self.n,
            coeffs: reduce(self.n, poly),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let base = std::f64::consts::TAU / self.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(c.to_f64(), base * i as f64))
            .sum()
    }

    /// Dimension `φ(n)` of the field this element is written in.
    pub fn degree(&self) -> u64 {
        totient(self.n)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for Cyclo {}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.n)?,
                _ => write!(f, "{c}*z{}^{i}", self.n)?,
            }
        }
        f.write_str(")")
    }
}
