//! Nonvanishing of `g₁g₂` along a cyclic subgroup.
//!
//! For `g₁(u+av)g₂(u+bv) = g₁(u)g₁(av)g₂(u)g₂(bv)` and `y₀ = c·z₀` with
//! `g₁(y₀)g₂(y₀) ≠ 0`, the product `g₁g₂` has no zeros on `{k·ab·z₀}`.
//! The subgroup is infinite, so the check runs over a window `|k| ≤ K`.

use serde::{Deserialize, Serialize};

use crate::charfn::CharFnExpr;
use crate::error::{Error, Result};
use crate::group::DualElement;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupReport {
    /// `|a − b|`.
    pub c: i64,
    pub z0: Rational,
    /// `a·b·z₀`.
    pub generator: Rational,
    pub window: i64,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_k: Option<i64>,
    pub degenerate: bool,
}

pub fn lemma7_subgroup(
    g1: &CharFnExpr,
    g2: &CharFnExpr,
    a: i64,
    b: i64,
    y0: &DualElement,
    window: i64,
) -> Result<SubgroupReport> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroMultiplier);
    }
    let nonzero = |y: &DualElement| -> Result<bool> {
        Ok(!g1.eval(y)?.mul(&g2.eval(y)?).is_zero(0.0))
    };
    if !nonzero(y0)? {
        return Err(Error::Hypothesis(format!("g1(y0)g2(y0) = 0 at y0 = {y0}")));
    }
    let c = (a - b).abs();
    let z0 = if y0.is_zero() {
        y0.clone()
    } else if c == 0 {
        return Err(Error::InvalidArgument(format!(
            "a = b gives c = 0, and {y0} is not in the zero subgroup"
        )));
    } else {
        y0.divide(c)?
    };
    let generator = z0.scale(a * b);
    let degenerate = generator.is_zero();
    let mut failing_k = None;
    if !degenerate {
        for k in -window..=window {
            if !nonzero(&generator.scale(k))? {
                failing_k = Some(k);
                break;
            }
        }
    }
    Ok(SubgroupReport {
        c,
        z0: z0.value().clone(),
        generator: generator.value().clone(),
        window,
        holds: failing_k.is_none(),
        failing_k,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Host, PrimeProfile};
    use crate::rational::rat;

    #[test]
    fn gaussians_never_vanish() {
        let h = Host::ha(PrimeProfile::infinite(&[2, 3]).unwrap());
        let g = CharFnExpr::gaussian(rat(1, 1));
        let r = lemma7_subgroup(&g, &g, 4, 9, &h.element(rat(5, 3)).unwrap(), 50).unwrap();
        assert!(r.holds && !r.degenerate);
        assert_eq!(r.z0, rat(1, 3));
        assert_eq!(r.generator, rat(12, 1));
        let zero = lemma7_subgroup(&g, &g, 4, 9, &h.zero(), 50).unwrap();
        assert!(zero.degenerate && zero.holds);
        assert!(lemma7_subgroup(&g, &g, 2, 9, &h.element(rat(1, 5)).unwrap_or(h.zero()), 5).is_ok());
    }
}
