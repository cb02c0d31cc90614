//! Membership in `Γ(X)`, `I(X)` and `Γ(X)∗I(X)`.
//!
//! Trees built from Gaussians, subgroup indicators, products, conjugates
//! and shifts are classified structurally. Anything else is probed for a
//! certificate that no `(x,y)·e^{−λy²}·1_S(y)` can match it:
//!
//! * on a torsion host Gaussians are degenerate, so class members have
//!   modulus 0 or 1 and any other modulus certifies;
//! * the support of a class member is a subgroup;
//! * on `H_a`, `|f(y)|² = e^{−2λy²}` on the support. With
//!   `|f(y_i)|² = c_i e^{−E_i}`, `c_i` rational, a common real `λ` exists
//!   only if `y₂²E₁ = y₁²E₂` and `c₁^{y₂²} = c₂^{y₁²}` (logarithms of
//!   algebraic numbers other than 1 are transcendental).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CharFnExpr;
use crate::error::Result;
use crate::group::DualElement;
use crate::number::{factorize_big, lcm_u64};
use crate::rational::Rational;
use crate::value::{CfValue, ExactValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassTag {
    GaussianClass,
    IdempotentClass,
    GaussianTimesIdempotent,
    Outside,
    Unknown,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::GaussianClass => "GAUSSIAN_CLASS",
            ClassTag::IdempotentClass => "IDEMPOTENT_CLASS",
            ClassTag::GaussianTimesIdempotent => "GAUSSIAN_TIMES_IDEMPOTENT",
            ClassTag::Outside => "OUTSIDE",
            ClassTag::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Certificate {
    /// Torsion host, `0 < |f(y)| < 1`.
    FractionalModulus { point: Rational, modulus_sq: String },
    /// `f(a) ≠ 0`, `f(b) ≠ 0`, `f(a − b) = 0`.
    SupportNotSubgroup { a: Rational, b: Rational },
    /// No common Gaussian coefficient fits `|f|²` at both points.
    GaussianInconsistent { y1: Rational, y2: Rational },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub tag: ClassTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// `(gaussian leaves, idempotent leaves)` when the tree is in the grammar.
fn structure(f: &CharFnExpr) -> Option<(bool, bool)> {
    let zero_one = |t: &[Rational]| t.iter().all(|v| v.is_zero() || v.is_one());
    match f {
        CharFnExpr::Gaussian { lambda } => Some((!lambda.is_zero(), false)),
        CharFnExpr::SubgroupIndicator { .. } => Some((false, true)),
        // A positive definite 0/1 table is the indicator of a subgroup.
        CharFnExpr::TorsionExtension { table, .. } | CharFnExpr::Pullback { table, .. } => {
            zero_one(table).then_some((false, true))
        }
        CharFnExpr::CosetPiecewise { pieces, .. } => {
            let values: Vec<Rational> = pieces.iter().map(|p| p.value.clone()).collect();
            zero_one(&values).then_some((false, true))
        }
        CharFnExpr::Product { children } => {
            children.iter().try_fold((false, false), |(g, i), c| {
                let (cg, ci) = structure(c)?;
                Some((g || cg, i || ci))
            })
        }
        CharFnExpr::Mixture { children, .. } if children.len() == 1 => structure(&children[0]),
        CharFnExpr::Mixture { .. } => None,
        CharFnExpr::Conjugate { child } | CharFnExpr::Shift { child, .. } => structure(child),
    }
}

/// Probe points derived from the subgroups and tables in the tree.
pub fn default_probes(f: &CharFnExpr) -> Vec<DualElement> {
    let hosts = f.hosts();
    let Some(host) = hosts.first() else {
        return Vec::new();
    };
    if host.is_torsion() {
        let mut n: u64 = 1;
        f.visit(&mut |node| {
            let order = match node {
                CharFnExpr::TorsionExtension { order, .. } => Some(*order),
                CharFnExpr::SubgroupIndicator { subgroup } => subgroup.order(),
                CharFnExpr::Pullback { outer, .. } | CharFnExpr::CosetPiecewise { outer, .. } => {
                    outer.order()
                }
                _ => None,
            };
            if let Some(o) = order {
                n = lcm_u64(n, o);
            }
        });
        if n == 1 {
            if let Some(ps) = host.denominator_primes() {
                n = ps.iter().map(|p| p.pow(2)).product();
            }
        }
        let n = n.min(4096);
        return (0..n)
            .filter_map(|k| host.element(Rational::new(k as i64, n as i64)).ok())
            .collect();
    }
    let mut primes: Vec<u64> = Vec::new();
    f.visit(&mut |node| {
        let specs = match node {
            CharFnExpr::SubgroupIndicator { subgroup } => vec![subgroup],
            CharFnExpr::Pullback { outer, sub, .. } => vec![outer, sub],
            CharFnExpr::CosetPiecewise { outer, inner, .. } => vec![outer, inner],
            _ => vec![],
        };
        for s in specs {
            primes.extend(s.primes());
        }
    });
    primes.sort_unstable();
    primes.dedup();
    let d: i64 = primes.iter().map(|&p| (p * p) as i64).product::<i64>().clamp(1, 150);
    let range = 2 * d;
    (-range..=range)
        .filter_map(|m| host.element(Rational::new(m, d)).ok())
        .collect()
}

pub fn classify(f: &CharFnExpr) -> Classification {
    let probes = default_probes(f);
    classify_with_probes(f, &probes).unwrap_or(Classification {
        tag: ClassTag::Unknown,
        certificate: None,
    })
}

pub fn classify_with_probes(f: &CharFnExpr, probes: &[DualElement]) -> Result<Classification> {
    if let Some((g, i)) = structure(f) {
        let tag = match (g, i) {
            (true, true) => ClassTag::GaussianTimesIdempotent,
            (true, false) => ClassTag::GaussianClass,
            _ => ClassTag::IdempotentClass,
        };
        return Ok(Classification {
            tag,
            certificate: None,
        });
    }
    let certificate = find_certificate(f, probes)?;
    Ok(Classification {
        tag: if certificate.is_some() {
            ClassTag::Outside
        } else {
            ClassTag::Unknown
        },
        certificate,
    })
}

const MAX_SUPPORT: usize = 64;

fn find_certificate(f: &CharFnExpr, probes: &[DualElement]) -> Result<Option<Certificate>> {
    let Some(host) = probes.first().map(|p| p.host().clone()) else {
        return Ok(None);
    };
    let mut support: Vec<(DualElement, CfValue)> = Vec::new();
    for y in probes {
        let v = f.eval(y)?;
        if v.is_zero(0.0) {
            continue;
        }
        let m = v.modulus_sq();
        if host.is_torsion() {
            if let Some(e) = m.exact() {
                if !e.is_zero() && *e != ExactValue::one() {
                    return Ok(Some(Certificate::FractionalModulus {
                        point: y.value().clone(),
                        modulus_sq: e.to_string(),
                    }));
                }
            }
        }
        if support.len() < MAX_SUPPORT && v.is_exact() {
            support.push((y.clone(), m));
        }
    }
    for (i, (a, _)) in support.iter().enumerate() {
        for (b, _) in &support[..i] {
            let d = a.sub(b)?;
            if f.eval(&d)?.exact().is_some_and(|e| e.is_zero()) {
                return Ok(Some(Certificate::SupportNotSubgroup {
                    a: a.value().clone(),
                    b: b.value().clone(),
                }));
            }
        }
    }
    if !host.is_torsion() {
        let terms: Vec<(&DualElement, Rational, Rational)> = support
            .iter()
            .filter(|(y, _)| !y.is_zero())
            .filter_map(|(y, m)| {
                let (e, c) = m.exact()?.single_term()?;
                let c = c.as_rational()?;
                c.is_positive().then(|| (y, e.clone(), c))
            })
            .collect();
        for (i, (y1, e1, c1)) in terms.iter().enumerate() {
            for (y2, e2, c2) in &terms[..i] {
                let s1 = y1.value().square();
                let s2 = y2.value().square();
                let exponents_agree = &s2 * e1 == &s1 * e2;
                match powers_agree(c1, &s2, c2, &s1) {
                    Some(true) if exponents_agree => {}
                    Some(_) => {
                        return Ok(Some(Certificate::GaussianInconsistent {
                            y1: y1.value().clone(),
                            y2: y2.value().clone(),
                        }))
                    }
                    None => {}
                }
            }
        }
    }
    Ok(None)
}

/// Whether `c1^a = c2^b` for positive rationals, via prime exponents.
fn powers_agree(c1: &Rational, a: &Rational, c2: &Rational, b: &Rational) -> Option<bool> {
    const LIMIT: u64 = 1_000_000;
    let exps = |c: &Rational| -> Option<Vec<(u64, i64)>> {
        let mut out: Vec<(u64, i64)> = Vec::new();
        for (p, e) in factorize_big(c.numer(), LIMIT)? {
            out.push((p, e as i64));
        }
        for (p, e) in factorize_big(c.denom(), LIMIT)? {
            out.push((p, -(e as i64)));
        }
        Some(out)
    };
    let f1 = exps(c1)?;
    let f2 = exps(c2)?;
    let mut primes: Vec<u64> = f1.iter().chain(&f2).map(|(p, _)| *p).collect();
    primes.sort_unstable();
    primes.dedup();
    let get = |f: &[(u64, i64)], p: u64| f.iter().find(|(q, _)| *q == p).map_or(0, |x| x.1);
    Some(primes.into_iter().all(|p| {
        a.mul_int(get(&f1, p)) == b.mul_int(get(&f2, p))
    }))
}
