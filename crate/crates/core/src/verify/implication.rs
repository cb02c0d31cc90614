//! From a symmetric conditional distribution to independent linear forms.
//!
//! If `L₂ = δ₁ξ₁ + δ₂ξ₂` given `L₁ = ξ₁ + ξ₂` is symmetric, then
//! `L'₁ = (δ₁+δ₂)ξ₁ + 2δ₂ξ₂` and `L'₂ = 2δ₁ξ₁ + (δ₁+δ₂)ξ₂` are independent.

use serde::{Deserialize, Serialize};

use super::{verify_equation, EquationSpec, GridSpec, Status, VerificationReport};
use crate::charfn::CharFnExpr;
use crate::error::Result;

/// Coefficients of `L'₁` and `L'₂`.
pub fn heyde_to_independence(d1: i64, d2: i64) -> ((i64, i64), (i64, i64)) {
    ((d1 + d2, 2 * d2), (2 * d1, d1 + d2))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImplicationReport {
    pub premise: VerificationReport,
    pub conclusion: VerificationReport,
    /// False only when the premise is verified and the conclusion is not.
    pub implication_holds: bool,
}

pub fn check_lemma6_implication(
    fns: &[CharFnExpr],
    d1: i64,
    d2: i64,
    grid: &GridSpec,
    tol: f64,
) -> Result<ImplicationReport> {
    let premise = verify_equation(&EquationSpec::symmetry(d1, d2), fns, grid, tol)?;
    let conclusion = if premise.status == Status::Verified {
        verify_equation(&EquationSpec::transformed_independence(d1, d2), fns, grid, tol)?
    } else {
        VerificationReport::inconclusive(
            "transformed-independence",
            "premise not verified; implication vacuous",
        )
    };
    let implication_holds = premise.status != Status::Verified || conclusion.is_verified();
    Ok(ImplicationReport {
        premise,
        conclusion,
        implication_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transformed_coefficients() {
        assert_eq!(heyde_to_independence(1, -3), ((-2, -6), (2, -2)));
        assert_eq!(heyde_to_independence(1, 1), ((2, 2), (2, 2)));
    }
}
