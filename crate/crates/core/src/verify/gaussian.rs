//! Exponent algebra for Gaussian solutions `f_j(y) = e^{−λ_j y²}`.

use serde::{Deserialize, Serialize};

use super::equation::{EquationSpec, Factor};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `uu·u² + uv·uv + vv·v²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    pub uu: Rational,
    pub uv: Rational,
    pub vv: Rational,
}

impl QuadForm {
    pub fn zero() -> Self {
        QuadForm {
            uu: Rational::zero(),
            uv: Rational::zero(),
            vv: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.uu.is_zero() && self.uv.is_zero() && self.vv.is_zero()
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        &self.uu * u.square() + &self.uv * u * v + &self.vv * v.square()
    }

    fn add_factor(&mut self, f: &Factor, lambda: &Rational, sign: i64) {
        let (a, b) = (f.u, f.v);
        let l = lambda.mul_int(sign);
        self.uu = &self.uu + l.mul_int(a * a);
        self.uv = &self.uv + l.mul_int(2 * a * b);
        self.vv = &self.vv + l.mul_int(b * b);
    }
}

/// LHS exponent minus RHS exponent, as a form in `(u, v)`; the equation
/// holds for Gaussians exactly where it vanishes.
pub fn gaussian_residual(eq: &EquationSpec, lambdas: &[Rational]) -> QuadForm {
    let mut q = QuadForm::zero();
    for f in &eq.left {
        q.add_factor(f, &lambdas[f.function], -1);
    }
    for f in &eq.right {
        q.add_factor(f, &lambdas[f.function], 1);
    }
    q
}

pub(crate) fn float_residual(eq: &EquationSpec, lambdas: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    let mut add = |f: &Factor, sign: f64| {
        let l = sign * lambdas[f.function];
        let (a, b) = (f.u as f64, f.v as f64);
        out[0] += l * a * a;
        out[1] += l * 2.0 * a * b;
        out[2] += l * b * b;
    };
    for f in &eq.left {
        add(f, -1.0);
    }
    for f in &eq.right {
        add(f, 1.0);
    }
    out
}

/// Whether `e^{−λ₁y²}, e^{−λ₂y²}` solve the symmetry equation for `(p, q)`.
pub fn symmetry_holds_for_gaussians(p: i64, q: i64, l1: &Rational, l2: &Rational) -> bool {
    gaussian_residual(&EquationSpec::symmetry(p, q), &[l1.clone(), l2.clone()]).is_zero()
}

/// Nonnegative solutions of `4pq·λ₁ + (p+q)²·λ₂ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum LambdaSolution {
    /// Only `λ₁ = λ₂ = 0`.
    Trivial,
    /// `λ₂ = ratio·λ₁`, `λ₁ ≥ 0`.
    Ray { ratio: Rational },
}

pub fn lambda_constraint(p: i64, q: i64) -> Result<LambdaSolution> {
    if p + q == 0 {
        return Err(Error::InvalidArgument(
            "p + q = 0: multiplication by p + q is not an automorphism".into(),
        ));
    }
    let pq = p * q;
    if pq > 0 {
        return Ok(LambdaSolution::Trivial);
    }
    if pq == 0 {
        return Err(Error::ZeroMultiplier);
    }
    let s = (p + q) * (p + q);
    Ok(LambdaSolution::Ray {
        ratio: Rational::new(4 * pq.abs(), s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn symmetry_residual_is_bilinear() {
        // LHS − RHS = −4uv(λ₁p + λ₂q)
        let q = gaussian_residual(&EquationSpec::symmetry(2, -1), &[rat(1, 1), rat(3, 1)]);
        assert!(q.uu.is_zero() && q.vv.is_zero());
        assert_eq!(q.uv, rat(-4 * (2 - 3), 1));
        assert!(symmetry_holds_for_gaussians(1, -3, &rat(3, 1), &rat(1, 1)));
        assert!(symmetry_holds_for_gaussians(2, -1, &rat(1, 1), &rat(2, 1)));
    }

    #[test]
    fn constraint_solutions() {
        assert_eq!(lambda_constraint(1, 2).unwrap(), LambdaSolution::Trivial);
        assert_eq!(lambda_constraint(1, -2).unwrap(), LambdaSolution::Ray { ratio: rat(8, 1) });
        assert_eq!(lambda_constraint(1, -3).unwrap(), LambdaSolution::Ray { ratio: rat(3, 1) });
        assert!(lambda_constraint(2, -2).is_err());
    }
}
