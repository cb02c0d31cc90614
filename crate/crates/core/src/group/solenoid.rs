//! Points of the a-adic solenoid and the character pairing with `H_a`.
//!
//! A point is `(t, d)` with `t` on the dense line `ℝ → Σ_a` and `d` a
//! truncated a-adic integer. For `y = m/A`, `A = a₀⋯a_{N−1}`,
//! `(x, y) = e^{2πi(y·t − m·ρ(d)/A)}`. The sign of the fiber term makes the
//! pairing trivial on `B = {(n, n·u)}`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::aadic::AadicInteger;
use crate::group::dual::DualElement;
use crate::rational::Rational;

/// A unit complex number `e^{2πiθ}` with rational `θ ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(turns: Rational) -> Self {
        Phase(turns.fract_mod1())
    }

    pub fn one() -> Self {
        Phase(Rational::zero())
    }

    pub fn turns(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 + &other.0)
    }

    pub fn conj(&self) -> Phase {
        Phase::new(-&self.0)
    }

    pub fn pow(&self, k: i64) -> Phase {
        Phase::new(self.0.mul_int(k))
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = std::f64::consts::TAU * self.0.to_f64();
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            write!(f, "e(2pi i*{})", self.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolenoidPoint {
    pub t: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<AadicInteger>,
}

impl SolenoidPoint {
    pub fn new(t: Rational, d: Option<AadicInteger>) -> Self {
        SolenoidPoint { t, d }
    }

    pub fn zero() -> Self {
        SolenoidPoint {
            t: Rational::zero(),
            d: None,
        }
    }

    pub fn add(&self, other: &SolenoidPoint) -> Result<SolenoidPoint> {
        let d = match (&self.d, &other.d) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Ok(SolenoidPoint {
            t: &self.t + &other.t,
            d,
        })
    }
}

/// Character value `(x, y)` as an exact phase.
pub fn character_eval(x: &SolenoidPoint, y: &DualElement) -> Result<Phase> {
    if y.host().is_torsion() {
        return Err(Error::HostMismatch(format!(
            "solenoid characters live in H_a, not {}",
            y.host()
        )));
    }
    let line = y.value() * &x.t;
    let fiber = match &x.d {
        None => Rational::zero(),
        Some(d) => {
            let a = Rational::from_int(d.modulus());
            let m = y.value() * &a;
            if !m.is_integer() {
                return Err(Error::Truncation(format!(
                    "{y} needs a deeper truncation than level {}",
                    d.level()
                )));
            }
            m * Rational::from_int(d.valuation()) / a
        }
    };
    Ok(Phase::new(line - fiber))
}
