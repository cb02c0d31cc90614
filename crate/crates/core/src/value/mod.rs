//! Values of characteristic functions.
//!
//! Exact values are finite sums `Σ c_E·e^{−E}` with rational exponents
//! `E ≥ 0` and cyclotomic coefficients `c_E`. Distinct rational exponents
//! give linearly independent exponentials over the algebraic numbers, so
//! two such sums are equal exactly when their coefficients agree term by
//! term. Values that cannot be written this way (Gaussians with a float
//! coefficient) fall back to `f64` complex numbers.

pub mod cyclo;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use cyclo::Cyclo;

use crate::group::Phase;
use crate::rational::Rational;

/// Absolute tolerance for comparisons involving floating values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    terms: BTreeMap<Rational, Cyclo>,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Self::term(Rational::zero(), Cyclo::rational(r))
    }

    pub fn phase(p: &Phase) -> Self {
        Self::term(Rational::zero(), Cyclo::root_of_unity(p.turns()))
    }

    /// `e^{−E}`.
    pub fn exp_neg(e: Rational) -> Self {
        Self::term(e, Cyclo::one())
    }

    pub fn term(e: Rational, c: Cyclo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ExactValue { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Cyclo)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let sum = match terms.get(e) {
                Some(cur) => cur.add(c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), sum);
            }
        }
        ExactValue { terms }
    }

    pub fn sub(&self, other: &ExactValue) -> ExactValue {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, other: &ExactValue) -> ExactValue {
        let mut out = ExactValue::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out = out.add(&ExactValue::term(e1 + e2, c1.mul(c2)));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> ExactValue {
        if r.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.scale(r)))
                .collect(),
        }
    }

    pub fn conj(&self) -> ExactValue {
        ExactValue {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                if e.is_zero() {
                    c.as_rational()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// `(E, c)` when the value is a single term `c·e^{−E}`.
    pub fn single_term(&self) -> Option<(&Rational, &Cyclo)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_complex() * (-e.to_f64()).exp())
            .sum()
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c.as_rational().is_some_and(|r| r.is_one()) {
                write!(f, "exp(-{e})")?;
            } else {
                write!(f, "{c}*exp(-{e})")?;
            }
        }
        Ok(())
    }
}

/// A characteristic-function value, exact when possible.
#[derive(Clone, Debug)]
pub enum CfValue {
    Exact(ExactValue),
    Approx(Complex64),
}

impl CfValue {
    pub fn one() -> Self {
        CfValue::Exact(ExactValue::one())
    }

    pub fn zero() -> Self {
        CfValue::Exact(ExactValue::zero())
    }

    pub fn rational(r: Rational) -> Self {
        CfValue::Exact(ExactValue::rational(r))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CfValue::Exact(_))
    }

    pub fn exact(&self) -> Option<&ExactValue> {
        match self {
            CfValue::Exact(v) => Some(v),
            CfValue::Approx(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            CfValue::Exact(v) => v.to_complex(),
            CfValue::Approx(z) => *z,
        }
    }

    pub fn mul(&self, other: &CfValue) -> CfValue {
        match (self, other) {
            (CfValue::Exact(a), CfValue::Exact(b)) => CfValue::Exact(a.mul(b)),
            _ => CfValue::Approx(self.to_complex() * other.to_complex()),
        }
    }

    pub fn add(&self, other: &CfValue) -> CfValue {
        match (self, other) {
            (CfValue::Exact(a), CfValue::Exact(b)) => CfValue::Exact(a.add(b)),
            _ => CfValue::Approx(self.to_complex() + other.to_complex()),
        }
    }

    pub fn scale(&self, r: &Rational) -> CfValue {
        match self {
            CfValue::Exact(a) => CfValue::Exact(a.scale(r)),
            CfValue::Approx(z) => CfValue::Approx(z * r.to_f64()),
        }
    }

    pub fn conj(&self) -> CfValue {
        match self {
            CfValue::Exact(a) => CfValue::Exact(a.conj()),
            CfValue::Approx(z) => CfValue::Approx(z.conj()),
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            CfValue::Exact(a) => a.is_zero(),
            CfValue::Approx(z) => z.norm() <= tol,
        }
    }

    /// Exact equality when both sides are exact, otherwise `|a − b| ≤ tol`.
    pub fn agrees(&self, other: &CfValue, tol: f64) -> bool {
        match (self, other) {
            (CfValue::Exact(a), CfValue::Exact(b)) => a == b,
            _ => (self.to_complex() - other.to_complex()).norm() <= tol,
        }
    }

    /// `|f|²` as a value.
    pub fn modulus_sq(&self) -> CfValue {
        self.mul(&self.conj())
    }
}

impl fmt::Display for CfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfValue::Exact(v) => write!(f, "{v}"),
            CfValue::Approx(z) => {
                if z.im == 0.0 {
                    write!(f, "~{:.12e}", z.re)
                } else {
                    write!(f, "~({:.12e}{:+.12e}i)", z.re, z.im)
                }
            }
        }
    }
}

/// Serializable snapshot of a value, as stored in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub text: String,
    pub exact: bool,
    pub re: f64,
    pub im: f64,
}

impl From<&CfValue> for ValueRecord {
    fn from(v: &CfValue) -> Self {
        let z = v.to_complex();
        ValueRecord {
            text: v.to_string(),
            exact: v.is_exact(),
            re: z.re,
            im: z.im,
        }
    }
}
