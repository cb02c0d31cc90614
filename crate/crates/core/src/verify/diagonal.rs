//! Single-variable consequences of the normalized independence equation.
//!
//! With `ν_j = |μ̂'_j|²`, independence of `ξ'₁ + ξ'₂` and
//! `4pq·ξ'₁ + (p+q)²·ξ'₂` forces, along the diagonal `u = 4pq·y`,
//! `v = −y`, the two identities checked here.

use serde::{Deserialize, Serialize};

use super::{verify_equation, EquationSpec, GridSpec, Status, VerificationReport};
use crate::charfn::{symmetrize, CharFnExpr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagonalReport {
    pub premise: VerificationReport,
    pub first: VerificationReport,
    pub second: VerificationReport,
    /// False only when the premise is verified and a consequence is not.
    pub implication_holds: bool,
}

pub fn derive_t2_identities(
    fns: &[CharFnExpr],
    p: i64,
    q: i64,
    grid: &GridSpec,
    tol: f64,
) -> Result<DiagonalReport> {
    if fns.len() < 2 {
        return Err(Error::InvalidArgument("two functions are required".into()));
    }
    let nu: Vec<CharFnExpr> = fns[..2].iter().map(symmetrize).collect();
    let premise = verify_equation(&EquationSpec::normalized_independence(p, q), &nu, grid, tol)?;
    let (first, second) = if premise.status == Status::Verified {
        (
            verify_equation(&EquationSpec::diagonal_first(p, q), &nu, grid, tol)?,
            verify_equation(&EquationSpec::diagonal_second(p, q), &nu, grid, tol)?,
        )
    } else {
        let note = "premise not verified; implication vacuous";
        (
            VerificationReport::inconclusive("diagonal-first", note),
            VerificationReport::inconclusive("diagonal-second", note),
        )
    };
    let implication_holds =
        premise.status != Status::Verified || (first.is_verified() && second.is_verified());
    Ok(DiagonalReport {
        premise,
        first,
        second,
        implication_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Host, PrimeProfile};
    use crate::rational::rat;

    fn grid() -> GridSpec {
        GridSpec::boxed(Host::ha(PrimeProfile::infinite(&[2, 3]).unwrap()), 6, 6)
    }

    #[test]
    fn gaussians_on_the_constraint_line() {
        // p = 1, q = −3: −12·λ₁ + 4·λ₂ = 0 for ν, i.e. λ₂ = 3λ₁.
        let fns = [CharFnExpr::gaussian(rat(1, 2)), CharFnExpr::gaussian(rat(3, 2))];
        let r = derive_t2_identities(&fns, 1, -3, &grid(), 1e-9).unwrap();
        assert!(r.premise.is_verified());
        assert!(r.first.is_verified() && r.second.is_verified());
        assert!(r.implication_holds);
    }

    #[test]
    fn off_line_is_vacuous() {
        let fns = [CharFnExpr::gaussian(rat(1, 1)), CharFnExpr::gaussian(rat(1, 1))];
        let r = derive_t2_identities(&fns, 1, -3, &grid(), 1e-9).unwrap();
        assert_eq!(r.premise.status, Status::Violated);
        assert_eq!(r.first.status, Status::Inconclusive);
        assert!(r.implication_holds);
    }

    #[test]
    fn printed_second_identity_fails_for_gaussians() {
        let g = grid();
        let nu = [CharFnExpr::gaussian(rat(1, 1)), CharFnExpr::gaussian(rat(3, 1))];
        let printed = verify_equation(&EquationSpec::diagonal_second_printed(1, -3), &nu, &g, 1e-9);
        assert_eq!(printed.unwrap().status, Status::Violated);
    }
}
