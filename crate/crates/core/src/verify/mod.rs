//! Checking functional equations on finite grids of the dual group, plus
//! the parameter algebra around Gaussian solutions.

mod equation;
mod gaussian;
mod grid;
mod implication;
mod generator;
mod extraction;
mod diagonal;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use equation::{EquationKind, EquationSpec, Factor};
pub use gaussian::{
    gaussian_residual, lambda_constraint, symmetry_holds_for_gaussians, LambdaSolution, QuadForm,
};
pub use grid::GridSpec;
pub use implication::{check_lemma6_implication, heyde_to_independence, ImplicationReport};
pub use generator::{lemma7_subgroup, SubgroupReport};
pub use extraction::{forward_differences, lemma8_extract, lemma8_extract_with, ExtractionReport};
pub use diagonal::{derive_t2_identities, DiagonalReport};

use crate::charfn::{CharFnExpr, Lambda};
use crate::error::{Error, Result};
use crate::group::DualElement;
use crate::rational::Rational;
use crate::value::{CfValue, ExactValue, ValueRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Violated => "VIOLATED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub u: Rational,
    pub v: Rational,
    pub lhs: ValueRecord,
    pub rhs: ValueRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub equation: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
    pub exact_pairs: u64,
    pub tolerance_used: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn inconclusive(equation: &str, note: impl Into<String>) -> Self {
        VerificationReport {
            equation: equation.to_string(),
            status: Status::Inconclusive,
            witness: None,
            pairs_checked: 0,
            exact_pairs: 0,
            tolerance_used: 0.0,
            note: Some(note.into()),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Both sides of an equation at one `(u, v)`.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub holds: bool,
    pub exact: bool,
    pub lhs: CfValue,
    pub rhs: CfValue,
}

fn side(factors: &[Factor], fns: &[CharFnExpr], u: &DualElement, v: &DualElement) -> Result<CfValue> {
    let mut acc = CfValue::one();
    for f in factors {
        let y = DualElement::lin(f.u, u, f.v, v)?;
        let val = fns[f.function].eval(&y)?;
        if val.is_zero(0.0) {
            return Ok(CfValue::zero());
        }
        acc = acc.mul(&val);
    }
    Ok(acc)
}

fn ensure_arity(eq: &EquationSpec, fns: &[CharFnExpr]) -> Result<()> {
    if eq.arity() > fns.len() {
        return Err(Error::InvalidArgument(format!(
            "{} references {} functions, {} supplied",
            eq.name,
            eq.arity(),
            fns.len()
        )));
    }
    Ok(())
}

/// Evaluates both sides at a single pair.
pub fn check_pair(
    eq: &EquationSpec,
    fns: &[CharFnExpr],
    u: &DualElement,
    v: &DualElement,
    tol: f64,
) -> Result<PairCheck> {
    ensure_arity(eq, fns)?;
    let lhs = side(&eq.left, fns, u, v)?;
    let rhs = side(&eq.right, fns, u, v)?;
    Ok(PairCheck {
        holds: lhs.agrees(&rhs, tol),
        exact: lhs.is_exact() && rhs.is_exact(),
        lhs,
        rhs,
    })
}

/// Bare Gaussian coefficients, when every referenced function is one.
fn gaussian_lambdas(eq: &EquationSpec, fns: &[CharFnExpr]) -> Option<Vec<Lambda>> {
    fns[..eq.arity()]
        .iter()
        .map(|f| match f {
            CharFnExpr::Gaussian { lambda } => Some(lambda.clone()),
            _ => None,
        })
        .collect()
}

/// Checks the identity at every grid pair. Exact values are compared
/// exactly; pure Gaussian equations are decided on the exponent form;
/// other floating comparisons use the absolute tolerance `tol`.
pub fn verify_equation(
    eq: &EquationSpec,
    fns: &[CharFnExpr],
    grid: &GridSpec,
    tol: f64,
) -> Result<VerificationReport> {
    ensure_arity(eq, fns)?;
    let pairs = grid.pairs(eq.is_univariate())?;
    if pairs.is_empty() {
        return Ok(VerificationReport::inconclusive(&eq.name, "empty grid"));
    }
    if let Some(lambdas) = gaussian_lambdas(eq, fns) {
        return Ok(verify_gaussian(eq, fns, &lambdas, &pairs, tol));
    }
    let outcomes: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(u, v)| {
            let lhs = side(&eq.left, fns, u, v)?;
            let rhs = side(&eq.right, fns, u, v)?;
            Ok((lhs.agrees(&rhs, tol), lhs.is_exact() && rhs.is_exact()))
        })
        .collect::<Result<_>>()?;
    let exact_pairs = outcomes.iter().filter(|o| o.1).count() as u64;
    let witness = match outcomes.iter().position(|o| !o.0) {
        Some(i) => {
            let (u, v) = &pairs[i];
            let c = check_pair(eq, fns, u, v, tol)?;
            Some(Witness {
                u: u.value().clone(),
                v: v.value().clone(),
                lhs: ValueRecord::from(&c.lhs),
                rhs: ValueRecord::from(&c.rhs),
            })
        }
        None => None,
    };
    Ok(VerificationReport {
        equation: eq.name.clone(),
        status: if witness.is_some() {
            Status::Violated
        } else {
            Status::Verified
        },
        witness,
        pairs_checked: pairs.len() as u64,
        exact_pairs,
        tolerance_used: if exact_pairs == pairs.len() as u64 { 0.0 } else { tol },
        note: None,
    })
}

fn verify_gaussian(
    eq: &EquationSpec,
    fns: &[CharFnExpr],
    lambdas: &[Lambda],
    pairs: &[(DualElement, DualElement)],
    tol: f64,
) -> VerificationReport {
    let exact: Option<Vec<Rational>> = lambdas
        .iter()
        .map(|l| match l {
            Lambda::Exact(r) => Some(r.clone()),
            Lambda::Float(_) => None,
        })
        .collect();
    let first_bad = match &exact {
        Some(ls) => {
            let form = gaussian_residual(eq, ls);
            pairs
                .iter()
                .position(|(u, v)| !form.eval(u.value(), v.value()).is_zero())
        }
        None => {
            let ls: Vec<f64> = lambdas.iter().map(Lambda::to_f64).collect();
            let form = gaussian::float_residual(eq, &ls);
            pairs.iter().position(|(u, v)| {
                let (a, b) = (u.value().to_f64(), v.value().to_f64());
                (form[0] * a * a + form[1] * a * b + form[2] * b * b).abs() > tol
            })
        }
    };
    let witness = first_bad.map(|i| {
        let (u, v) = &pairs[i];
        let c = check_pair(eq, fns, u, v, tol).ok();
        let rec = |s: Option<&CfValue>| {
            ValueRecord::from(s.unwrap_or(&CfValue::Exact(ExactValue::zero())))
        };
        Witness {
            u: u.value().clone(),
            v: v.value().clone(),
            lhs: rec(c.as_ref().map(|c| &c.lhs)),
            rhs: rec(c.as_ref().map(|c| &c.rhs)),
        }
    });
    let n = pairs.len() as u64;
    VerificationReport {
        equation: eq.name.clone(),
        status: if witness.is_some() {
            Status::Violated
        } else {
            Status::Verified
        },
        witness,
        pairs_checked: n,
        exact_pairs: if exact.is_some() { n } else { 0 },
        tolerance_used: if exact.is_some() { 0.0 } else { tol },
        note: Some("decided on the exponent quadratic form".into()),
    }
}
