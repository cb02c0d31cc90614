//! Closed-form characteristic functions on dual groups.
//!
//! A [`CharFnExpr`] is an expression tree whose leaves are Gaussians,
//! subgroup indicators and finite tables, combined by products
//! (convolution of distributions), mixtures, conjugation (reflection) and
//! character shifts.

mod classify;
mod psd;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub use classify::{classify, classify_with_probes, default_probes, Certificate, ClassTag, Classification};
pub use psd::{psd_check, rational_psd, PsdReport};

use crate::error::{Error, Result};
use crate::group::{character_eval, DualElement, Host, SolenoidPoint, SubgroupSpec};
use crate::rational::Rational;
use crate::value::{CfValue, ExactValue, DEFAULT_TOLERANCE};

/// Gaussian coefficient: exact rational or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Lambda {
    Exact(Rational),
    Float(f64),
}

impl Lambda {
    pub fn to_f64(&self) -> f64 {
        match self {
            Lambda::Exact(r) => r.to_f64(),
            Lambda::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Lambda::Exact(r) => r.is_zero(),
            Lambda::Float(x) => *x == 0.0,
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Exact(r) => write!(f, "{r}"),
            Lambda::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Lambda::Exact(r) => r.serialize(s),
            Lambda::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Lambda;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string, an integer or a float")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Lambda, E> {
                v.parse().map(Lambda::Exact).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Lambda, E> {
                Ok(Lambda::Exact(Rational::from_int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Lambda, E> {
                Ok(Lambda::Exact(Rational::from_int(v)))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Lambda, E> {
                Ok(Lambda::Float(v))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub representative: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum CharFnExpr {
    /// `y ↦ exp(−λy²)` on a subgroup of `ℚ`.
    Gaussian { lambda: Lambda },
    /// Haar characteristic function: 1 on the subgroup, 0 elsewhere.
    SubgroupIndicator { subgroup: SubgroupSpec },
    /// Constant on the cosets of `inner` listed in `pieces`, 0 on the
    /// remaining cosets and off `outer`.
    CosetPiecewise {
        outer: SubgroupSpec,
        inner: SubgroupSpec,
        pieces: Vec<Piece>,
    },
    /// `g₀(k/n) = table[k]` on `Y_(n)`, 0 elsewhere.
    TorsionExtension {
        host: Host,
        order: u64,
        table: Vec<Rational>,
    },
    /// A table on `outer/sub ≅ ℤ(k)` pulled back to `outer`, 0 off `outer`.
    Pullback {
        outer: SubgroupSpec,
        sub: SubgroupSpec,
        table: Vec<Rational>,
    },
    Product { children: Vec<CharFnExpr> },
    Mixture {
        weights: Vec<Rational>,
        children: Vec<CharFnExpr>,
    },
    Conjugate { child: Box<CharFnExpr> },
    Shift {
        point: SolenoidPoint,
        child: Box<CharFnExpr>,
    },
}

fn table_label(table_len: usize, label: &DualElement) -> usize {
    // label = j/k in ℤ(k), k = table length.
    let v = label.value();
    let k = BigInt::from(table_len);
    (v.numer() * &k / v.denom())
        .to_usize()
        .expect("label below table length")
}

impl CharFnExpr {
    pub fn gaussian(lambda: Rational) -> Self {
        CharFnExpr::Gaussian {
            lambda: Lambda::Exact(lambda),
        }
    }

    pub fn gaussian_f64(lambda: f64) -> Self {
        CharFnExpr::Gaussian {
            lambda: Lambda::Float(lambda),
        }
    }

    pub fn indicator(subgroup: SubgroupSpec) -> Self {
        CharFnExpr::SubgroupIndicator { subgroup }
    }

    pub fn torsion_extension(host: Host, order: u64, table: Vec<Rational>) -> Result<Self> {
        let f = CharFnExpr::TorsionExtension { host, order, table };
        f.validate()?;
        Ok(f)
    }

    pub fn pullback(outer: SubgroupSpec, sub: SubgroupSpec, table: Vec<Rational>) -> Result<Self> {
        let f = CharFnExpr::Pullback { outer, sub, table };
        f.validate()?;
        Ok(f)
    }

    pub fn coset_piecewise(
        outer: SubgroupSpec,
        inner: SubgroupSpec,
        pieces: Vec<Piece>,
    ) -> Result<Self> {
        let f = CharFnExpr::CosetPiecewise {
            outer,
            inner,
            pieces,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn product(children: Vec<CharFnExpr>) -> Self {
        CharFnExpr::Product { children }
    }

    pub fn mixture(weights: Vec<Rational>, children: Vec<CharFnExpr>) -> Result<Self> {
        let f = CharFnExpr::Mixture { weights, children };
        f.validate()?;
        Ok(f)
    }

    pub fn conjugate(child: CharFnExpr) -> Self {
        CharFnExpr::Conjugate {
            child: Box::new(child),
        }
    }

    pub fn shift(point: SolenoidPoint, child: CharFnExpr) -> Self {
        CharFnExpr::Shift {
            point,
            child: Box::new(child),
        }
    }

    /// Parses and validates a JSON expression.
    pub fn from_json(s: &str) -> Result<Self> {
        let f: CharFnExpr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        f.validate()?;
        Ok(f)
    }

    /// Checks structural invariants: normalized, real symmetric, positive
    /// definite tables and proper mixture weights.
    pub fn validate(&self) -> Result<()> {
        match self {
            CharFnExpr::Gaussian { lambda } => {
                let ok = match lambda {
                    Lambda::Exact(r) => !r.is_negative(),
                    Lambda::Float(x) => x.is_finite() && *x >= 0.0,
                };
                if ok {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "Gaussian coefficient must be nonnegative, got {lambda}"
                    )))
                }
            }
            CharFnExpr::SubgroupIndicator { .. } => Ok(()),
            CharFnExpr::CosetPiecewise {
                outer,
                inner,
                pieces,
            } => {
                let table = piecewise_table(outer, inner, pieces)?;
                validate_table(&table)
            }
            CharFnExpr::TorsionExtension { host, order, table } => {
                if !host.is_torsion() {
                    return Err(Error::InvalidArgument(format!(
                        "torsion extension needs a torsion host, got {host}"
                    )));
                }
                let sub = SubgroupSpec::torsion(host, *order)?;
                if sub.order() != Some(*order) {
                    return Err(Error::InvalidTable(format!(
                        "{host} has no subgroup of order {order}"
                    )));
                }
                if table.len() as u64 != *order {
                    return Err(Error::InvalidTable(format!(
                        "table has {} entries for Y_({order})",
                        table.len()
                    )));
                }
                validate_table(table)
            }
            CharFnExpr::Pullback { outer, sub, table } => {
                let k = outer.index_of(sub)?;
                if table.len() as u64 != k {
                    return Err(Error::InvalidTable(format!(
                        "table has {} entries for a quotient of order {k}",
                        table.len()
                    )));
                }
                validate_table(table)
            }
            CharFnExpr::Product { children } => children.iter().try_for_each(Self::validate),
            CharFnExpr::Mixture { weights, children } => {
                if weights.len() != children.len() || weights.is_empty() {
                    return Err(Error::InvalidArgument(
                        "mixture needs one weight per child".into(),
                    ));
                }
                if weights.iter().any(|w| !w.is_positive()) {
                    return Err(Error::InvalidArgument("mixture weights must be positive".into()));
                }
                let total = weights.iter().fold(Rational::zero(), |a, w| a + w);
                if !total.is_one() {
                    return Err(Error::InvalidArgument(format!(
                        "mixture weights sum to {total}"
                    )));
                }
                children.iter().try_for_each(Self::validate)
            }
            CharFnExpr::Conjugate { child } | CharFnExpr::Shift { child, .. } => child.validate(),
        }
    }

    pub fn eval(&self, y: &DualElement) -> Result<CfValue> {
        match self {
            CharFnExpr::Gaussian { lambda } => {
                if y.host().is_torsion() {
                    return Err(Error::HostMismatch(format!(
                        "Gaussian factors need a torsion-free host, got {}",
                        y.host()
                    )));
                }
                let y2 = y.value().square();
                Ok(match lambda {
                    Lambda::Exact(l) => CfValue::Exact(ExactValue::exp_neg(l * y2)),
                    Lambda::Float(l) => CfValue::Approx(Complex64::new((-l * y2.to_f64()).exp(), 0.0)),
                })
            }
            CharFnExpr::SubgroupIndicator { subgroup } => Ok(indicator_value(subgroup.member(y)?)),
            CharFnExpr::CosetPiecewise {
                outer,
                inner,
                pieces,
            } => {
                if !outer.member(y)? {
                    return Ok(CfValue::zero());
                }
                let label = outer.quotient_project(inner, y)?;
                for piece in pieces {
                    let rep = outer.host().element(piece.representative.clone())?;
                    if outer.quotient_project(inner, &rep)? == label {
                        return Ok(CfValue::rational(piece.value.clone()));
                    }
                }
                Ok(CfValue::zero())
            }
            CharFnExpr::TorsionExtension { host, order, table } => {
                host.ensure_same(y.host())?;
                let scaled = y.value().mul_int(*order as i64);
                match scaled.to_integer() {
                    Some(k) => {
                        let idx = k.to_usize().expect("torsion index") % table.len();
                        Ok(CfValue::rational(table[idx].clone()))
                    }
                    None => Ok(CfValue::zero()),
                }
            }
            CharFnExpr::Pullback { outer, sub, table } => {
                if !outer.member(y)? {
                    return Ok(CfValue::zero());
                }
                let label = outer.quotient_project(sub, y)?;
                Ok(CfValue::rational(table[table_label(table.len(), &label)].clone()))
            }
            CharFnExpr::Product { children } => {
                let mut acc = CfValue::one();
                for c in children {
                    let v = c.eval(y)?;
                    if v.is_zero(0.0) {
                        return Ok(CfValue::zero());
                    }
                    acc = acc.mul(&v);
                }
                Ok(acc)
            }
            CharFnExpr::Mixture { weights, children } => {
                let mut acc = CfValue::zero();
                for (w, c) in weights.iter().zip(children) {
                    acc = acc.add(&c.eval(y)?.scale(w));
                }
                Ok(acc)
            }
            CharFnExpr::Conjugate { child } => Ok(child.eval(y)?.conj()),
            CharFnExpr::Shift { point, child } => {
                let v = child.eval(y)?;
                let phase = character_eval(point, y)?;
                Ok(CfValue::Exact(ExactValue::phase(&phase)).mul(&v))
            }
        }
    }

    /// Whether every Gaussian leaf has an exact coefficient.
    pub fn is_exact(&self) -> bool {
        match self {
            CharFnExpr::Gaussian { lambda } => matches!(lambda, Lambda::Exact(_)),
            CharFnExpr::Product { children } | CharFnExpr::Mixture { children, .. } => {
                children.iter().all(Self::is_exact)
            }
            CharFnExpr::Conjugate { child } | CharFnExpr::Shift { child, .. } => child.is_exact(),
            _ => true,
        }
    }

    /// Hosts mentioned anywhere in the tree.
    pub fn hosts(&self) -> Vec<Host> {
        let mut out: Vec<Host> = Vec::new();
        self.visit(&mut |node| {
            let h = match node {
                CharFnExpr::SubgroupIndicator { subgroup } => Some(subgroup.host().clone()),
                CharFnExpr::CosetPiecewise { outer, .. } | CharFnExpr::Pullback { outer, .. } => {
                    Some(outer.host().clone())
                }
                CharFnExpr::TorsionExtension { host, .. } => Some(host.clone()),
                _ => None,
            };
            if let Some(h) = h {
                if !out.iter().any(|o| o.same_group(&h)) {
                    out.push(h);
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut dyn FnMut(&CharFnExpr)) {
        f(self);
        match self {
            CharFnExpr::Product { children } | CharFnExpr::Mixture { children, .. } => {
                for c in children {
                    c.visit(f);
                }
            }
            CharFnExpr::Conjugate { child } | CharFnExpr::Shift { child, .. } => child.visit(f),
            _ => {}
        }
    }
}

fn indicator_value(member: bool) -> CfValue {
    if member {
        CfValue::one()
    } else {
        CfValue::zero()
    }
}

/// Table on `outer/inner ≅ ℤ(k)` described by coset pieces.
fn piecewise_table(
    outer: &SubgroupSpec,
    inner: &SubgroupSpec,
    pieces: &[Piece],
) -> Result<Vec<Rational>> {
    let k = outer.index_of(inner)?;
    let mut table: Vec<Option<Rational>> = vec![None; k as usize];
    for piece in pieces {
        let rep = outer.host().element(piece.representative.clone())?;
        if !outer.member(&rep)? {
            return Err(Error::InvalidTable(format!(
                "representative {rep} lies outside {outer}"
            )));
        }
        let idx = table_label(k as usize, &outer.quotient_project(inner, &rep)?);
        if table[idx].is_some() {
            return Err(Error::InvalidTable(format!(
                "two pieces share the coset of {rep}"
            )));
        }
        table[idx] = Some(piece.value.clone());
    }
    Ok(table
        .into_iter()
        .map(|v| v.unwrap_or_else(Rational::zero))
        .collect())
}

/// A table on `ℤ(k)` must be normalized, real symmetric and positive
/// definite on the cyclic group.
fn validate_table(table: &[Rational]) -> Result<()> {
    let k = table.len();
    if k == 0 || !table[0].is_one() {
        return Err(Error::InvalidTable("value at 0 must be 1".into()));
    }
    for j in 1..k {
        if table[j] != table[k - j] {
            return Err(Error::InvalidTable(format!(
                "entries {j} and {} differ, so f(-y) != conj f(y)",
                k - j
            )));
        }
    }
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|a| (0..k).map(|b| table[(a + k - b) % k].clone()).collect())
        .collect();
    if !rational_psd(gram) {
        return Err(Error::InvalidTable(format!(
            "table {} is not positive definite",
            table.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(())
}

/// `|f|²` as the expression `f · f̄`.
pub fn symmetrize(f: &CharFnExpr) -> CharFnExpr {
    CharFnExpr::product(vec![f.clone(), CharFnExpr::conjugate(f.clone())])
}

/// True iff `|f(y)| < 1` at every nonzero probe; `points` must contain 0.
pub fn full_support_check(f: &CharFnExpr, points: &[DualElement]) -> Result<bool> {
    if !points.iter().any(DualElement::is_zero) {
        return Err(Error::InvalidArgument("probe set must contain 0".into()));
    }
    for y in points.iter().filter(|y| !y.is_zero()) {
        let m = f.eval(y)?.modulus_sq();
        let unit = match &m {
            CfValue::Exact(v) => *v == ExactValue::one(),
            CfValue::Approx(z) => z.re >= 1.0 - DEFAULT_TOLERANCE,
        };
        if unit {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Multiplicity, PrimeProfile};
    use crate::rational::rat;

    fn h23() -> Host {
        Host::ha(PrimeProfile::infinite(&[2, 3]).unwrap())
    }

    fn omega1(h: &Host) -> CharFnExpr {
        let dyadic = SubgroupSpec::bounded(h, PrimeProfile::infinite(&[2]).unwrap()).unwrap();
        let l = SubgroupSpec::bounded(
            h,
            PrimeProfile::infinite(&[2]).unwrap().with(3, Multiplicity::Finite(1)).unwrap(),
        )
        .unwrap();
        CharFnExpr::coset_piecewise(
            l,
            dyadic,
            vec![
                Piece { representative: rat(0, 1), value: rat(1, 1) },
                Piece { representative: rat(1, 3), value: rat(1, 2) },
                Piece { representative: rat(2, 3), value: rat(1, 2) },
            ],
        )
        .unwrap()
    }

    #[test]
    fn gaussian_value() {
        let h = h23();
        let g = CharFnExpr::gaussian(rat(3, 1));
        let v = g.eval(&h.element(rat(1, 2)).unwrap()).unwrap();
        let (e, _) = v.exact().unwrap().single_term().unwrap();
        assert_eq!(e, &rat(3, 4));
        assert!(g.eval(&Host::prufer(2).unwrap().zero()).is_err());
    }

    #[test]
    fn piecewise_values() {
        let h = h23();
        let w = omega1(&h);
        let at = |n, d| w.eval(&h.element(rat(n, d)).unwrap()).unwrap().exact().unwrap().as_rational().unwrap();
        assert_eq!(at(1, 3), rat(1, 2));
        assert_eq!(at(1, 4), rat(1, 1));
        assert_eq!(at(5, 12), rat(1, 2));
        assert_eq!(at(1, 9), rat(0, 1));
        let s = symmetrize(&w);
        let v = s.eval(&h.element(rat(1, 3)).unwrap()).unwrap();
        assert_eq!(v.exact().unwrap().as_rational(), Some(rat(1, 4)));
    }

    #[test]
    fn torsion_tables() {
        let h = Host::prufer(2).unwrap();
        let f = CharFnExpr::torsion_extension(h.clone(), 2, vec![rat(1, 1), rat(1, 3)]).unwrap();
        let half = h.element(rat(1, 2)).unwrap();
        assert_eq!(f.eval(&half).unwrap().exact().unwrap().as_rational(), Some(rat(1, 3)));
        assert!(f.eval(&h.element(rat(1, 4)).unwrap()).unwrap().is_zero(0.0));
        assert!(CharFnExpr::torsion_extension(h.clone(), 2, vec![rat(1, 1), rat(2, 1)]).is_err());
        assert!(CharFnExpr::torsion_extension(h, 3, vec![rat(1, 1); 3]).is_err());
    }

    #[test]
    fn full_support() {
        let h = h23();
        let pts: Vec<_> = [(0, 1), (1, 4), (1, 3)]
            .iter()
            .map(|&(n, d)| h.element(rat(n, d)).unwrap())
            .collect();
        assert!(!full_support_check(&omega1(&h), &pts).unwrap());
        assert!(full_support_check(&CharFnExpr::gaussian(rat(1, 2)), &pts).unwrap());
        assert!(full_support_check(&CharFnExpr::gaussian(rat(1, 2)), &pts[1..]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let h = h23();
        let f = CharFnExpr::product(vec![CharFnExpr::gaussian(rat(3, 1)), omega1(&h)]);
        let js = serde_json::to_string(&f).unwrap();
        assert!(js.contains(r#""kind":"product""#));
        assert!(js.contains(r#""lambda":"3""#));
        assert_eq!(CharFnExpr::from_json(&js).unwrap(), f);
        let float: CharFnExpr = serde_json::from_str(r#"{"kind":"gaussian","lambda":0.5}"#).unwrap();
        assert_eq!(float, CharFnExpr::gaussian_f64(0.5));
    }
}
