//! Recovering Gaussian coefficients from positive solutions.
//!
//! With `φ_j = −ln g_j` sampled on `{k·cab·z : |k| ≤ K}`, `c = |b − a|`,
//! the third finite difference of `φ_j` must vanish and `φ_j(y) = λ_j y²`
//! must fit. A vanishing third difference alone still admits linear terms,
//! so the quadratic fit residual and the odd part of `φ_j` decide.

use serde::{Deserialize, Serialize};

use crate::charfn::CharFnExpr;
use crate::error::{Error, Result};
use crate::group::DualElement;
use crate::rational::Rational;
use crate::value::CfValue;

/// `k`-th forward differences of a sequence with unit step.
pub fn forward_differences(seq: &[Rational], order: usize) -> Vec<Rational> {
    let mut cur = seq.to_vec();
    for _ in 0..order {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaEstimate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rational>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtractionReport {
    pub lambda1: LambdaEstimate,
    pub lambda2: LambdaEstimate,
    pub max_residual: f64,
    pub max_third_difference: f64,
    pub max_odd_part: f64,
    pub exact: bool,
    pub accepted: bool,
    pub window: i64,
    /// Sampling step `c·a·b·z`.
    pub step: Rational,
    pub reading: String,
}

#[derive(Clone, Debug)]
struct Phi {
    exact: Option<Rational>,
    approx: f64,
}

fn phi_of(v: &CfValue, y: &DualElement, tol: f64) -> Result<Phi> {
    let violated = || Error::Hypothesis(format!("0 < g(y) <= 1 fails at y = {y}"));
    if let Some(e) = v.exact() {
        if let Some((ex, c)) = e.single_term() {
            if let Some(c) = c.as_rational() {
                if !c.is_positive() {
                    return Err(violated());
                }
                let approx = ex.to_f64() - c.to_f64().ln();
                if approx < -tol {
                    return Err(violated());
                }
                let exact = c.is_one().then(|| ex.clone());
                return Ok(Phi { exact, approx });
            }
        }
        if e.is_zero() {
            return Err(violated());
        }
    }
    let z = v.to_complex();
    if z.re <= 0.0 || z.im.abs() > tol || z.re > 1.0 + tol {
        return Err(violated());
    }
    Ok(Phi {
        exact: None,
        approx: -z.re.ln(),
    })
}

struct Fit {
    lambda: LambdaEstimate,
    residual: f64,
    third: f64,
    odd: f64,
    exact: bool,
}

fn fit(phis: &[Phi], ys: &[Rational], window: usize) -> Fit {
    let all_exact: Option<Vec<Rational>> = phis.iter().map(|p| p.exact.clone()).collect();
    let third = match &all_exact {
        Some(ex) => forward_differences(ex, 3)
            .iter()
            .map(|d| d.to_f64().abs())
            .fold(0.0, f64::max),
        None => {
            let mut cur: Vec<f64> = phis.iter().map(|p| p.approx).collect();
            for _ in 0..3 {
                cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
            }
            cur.iter().map(|d| d.abs()).fold(0.0, f64::max)
        }
    };
    let odd = (1..=window)
        .map(|k| (phis[window + k].approx - phis[window - k].approx).abs() / 2.0)
        .fold(0.0, f64::max);
    if let Some(ex) = &all_exact {
        let ratios: Vec<Rational> = ex
            .iter()
            .zip(ys)
            .filter(|(_, y)| !y.is_zero())
            .map(|(p, y)| p / y.square())
            .collect();
        let zero_ok = ex[window].is_zero();
        if zero_ok && !ratios.is_empty() && ratios.iter().all(|r| *r == ratios[0]) {
            return Fit {
                lambda: LambdaEstimate {
                    value: ratios[0].to_f64(),
                    exact: Some(ratios[0].clone()),
                },
                residual: 0.0,
                third,
                odd,
                exact: true,
            };
        }
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (p, y) in phis.iter().zip(ys) {
        let y2 = y.square().to_f64();
        num += p.approx * y2;
        den += y2 * y2;
    }
    let lambda = if den > 0.0 { num / den } else { 0.0 };
    let residual = phis
        .iter()
        .zip(ys)
        .map(|(p, y)| (p.approx - lambda * y.square().to_f64()).abs())
        .fold(0.0, f64::max);
    Fit {
        lambda: LambdaEstimate {
            exact: None,
            value: lambda,
        },
        residual,
        third,
        odd,
        exact: false,
    }
}

/// Extraction for arbitrary evaluators, e.g. planted non-quadratic `φ`.
pub fn lemma8_extract_with(
    g1: &dyn Fn(&DualElement) -> Result<CfValue>,
    g2: &dyn Fn(&DualElement) -> Result<CfValue>,
    a: i64,
    b: i64,
    z: &DualElement,
    window: i64,
    tol: f64,
) -> Result<ExtractionReport> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroMultiplier);
    }
    if window < 2 {
        return Err(Error::InvalidArgument("window must be at least 2".into()));
    }
    let c = (b - a).abs().max(1);
    let step = z.scale(c * a * b);
    let points: Vec<DualElement> = (-window..=window).map(|k| step.scale(k)).collect();
    let ys: Vec<Rational> = points.iter().map(|p| p.value().clone()).collect();
    let phis = |g: &dyn Fn(&DualElement) -> Result<CfValue>| -> Result<Vec<Phi>> {
        points.iter().map(|y| phi_of(&g(y)?, y, tol)).collect()
    };
    let w = window as usize;
    let f1 = fit(&phis(g1)?, &ys, w);
    let f2 = fit(&phis(g2)?, &ys, w);
    let max_residual = f1.residual.max(f2.residual);
    let max_third_difference = f1.third.max(f2.third);
    let max_odd_part = f1.odd.max(f2.odd);
    let accepted = max_residual <= tol
        && max_third_difference <= tol
        && max_odd_part <= tol
        && f1.lambda.value >= -tol
        && f2.lambda.value >= -tol;
    Ok(ExtractionReport {
        lambda1: f1.lambda,
        lambda2: f2.lambda,
        max_residual,
        max_third_difference,
        max_odd_part,
        exact: f1.exact && f2.exact,
        accepted,
        window,
        step: step.value().clone(),
        reading: "g1(y) = exp(-lambda1 y^2) and g2(y) = exp(-lambda2 y^2) on the sampled subgroup"
            .into(),
    })
}

pub fn lemma8_extract(
    g1: &CharFnExpr,
    g2: &CharFnExpr,
    a: i64,
    b: i64,
    z: &DualElement,
    window: i64,
    tol: f64,
) -> Result<ExtractionReport> {
    lemma8_extract_with(&|y| g1.eval(y), &|y| g2.eval(y), a, b, z, window, tol)
}
