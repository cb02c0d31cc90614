//! Finite quotient models: `X = ℤ(n₁) × ⋯ × ℤ(n_k)` with exact probability
//! vectors, the exact joint law of `(ξ₁ + ξ₂, pξ₁ + qξ₂)`, and a seeded
//! sampler for demonstrations.
//!
//! Characters of the model are identified with `Σ k_i/n_i ∈ ℚ/ℤ`, which is
//! injective when the moduli are pairwise coprime.

use std::collections::{BTreeMap, HashMap};

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charfn::CharFnExpr;
use crate::error::{Error, Result};
use crate::group::{DualElement, Host};
use crate::number::{gcd_i64, lcm_u64, prime_divisors};
use crate::rational::Rational;
use crate::value::{CfValue, Cyclo, ExactValue};
use crate::verify::{verify_equation, EquationSpec, GridSpec, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    #[serde(rename = "Z")]
    moduli: Vec<u64>,
}

impl FiniteModel {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::InvalidArgument("moduli must be positive".into()));
        }
        Ok(FiniteModel { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    /// Mixed-radix coordinates, first modulus most significant.
    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &n) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&c, &n)| acc * n as usize + (c % n) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).zip(&self.moduli).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&sum)
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        let c: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| (x as i128 * k as i128).rem_euclid(n as i128) as u64)
            .collect();
        self.index(&c)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(a, -1)
    }

    /// `(x, k)` as a fraction of a turn.
    pub fn pairing(&self, x: usize, k: usize) -> Rational {
        let (cx, ck) = (self.coords(x), self.coords(k));
        cx.iter()
            .zip(&ck)
            .zip(&self.moduli)
            .fold(Rational::zero(), |acc, ((&a, &b), &n)| {
                acc + Rational::new((a * b % n) as i64, n as i64)
            })
            .fract_mod1()
    }

    /// Image of character `k` in `ℚ/ℤ`.
    pub fn embed(&self, k: usize) -> Result<Rational> {
        for (i, &a) in self.moduli.iter().enumerate() {
            for &b in &self.moduli[i + 1..] {
                if gcd_i64(a as i64, b as i64) != 1 {
                    return Err(Error::Unsupported(format!(
                        "moduli {a} and {b} are not coprime; the character group does not embed in Q/Z"
                    )));
                }
            }
        }
        Ok(self
            .coords(k)
            .iter()
            .zip(&self.moduli)
            .fold(Rational::zero(), |acc, (&c, &n)| acc + Rational::new(c as i64, n as i64))
            .fract_mod1())
    }

    /// The torsion host carrying `f`, or `∏ ℤ(p^∞)` over the primes of the order.
    pub fn host_for(&self, f: &CharFnExpr) -> Result<Host> {
        match f.hosts().into_iter().next() {
            Some(h) if h.is_torsion() => Ok(h),
            Some(h) => Err(Error::Unsupported(format!(
                "finite models need a torsion host, {h} is torsion-free"
            ))),
            None => {
                let primes = prime_divisors(self.order() as u64);
                if primes.is_empty() {
                    Host::cyclic(1)
                } else {
                    Host::prufer_product(&primes)
                }
            }
        }
    }

    /// Embedded characters in index order.
    pub fn characters(&self, host: &Host) -> Result<Vec<DualElement>> {
        (0..self.order()).map(|k| host.element(self.embed(k)?)).collect()
    }

    fn exponent_lcm(&self) -> u64 {
        self.moduli.iter().fold(1, |a, &b| lcm_u64(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pmf {
    pub model: FiniteModel,
    pub probabilities: Vec<Rational>,
}

impl Pmf {
    pub fn new(model: FiniteModel, probabilities: Vec<Rational>) -> Result<Self> {
        if probabilities.len() != model.order() {
            return Err(Error::InvalidArgument(format!(
                "{} probabilities for a group of order {}",
                probabilities.len(),
                model.order()
            )));
        }
        if probabilities.iter().any(Rational::is_negative) {
            return Err(Error::InvalidArgument("negative probability".into()));
        }
        let total = probabilities.iter().fold(Rational::zero(), |a, b| a + b);
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}")));
        }
        Ok(Pmf {
            model,
            probabilities,
        })
    }

    pub fn point_mass(model: FiniteModel, x: usize) -> Result<Self> {
        let mut p = vec![Rational::zero(); model.order()];
        *p.get_mut(x)
            .ok_or_else(|| Error::InvalidArgument(format!("{x} is outside the group")))? =
            Rational::one();
        Self::new(model, p)
    }

    pub fn uniform(model: FiniteModel) -> Self {
        let n = model.order();
        let p = vec![Rational::new(1, n as i64); n];
        Pmf {
            model,
            probabilities: p,
        }
    }

    fn support(&self) -> Vec<(usize, &Rational)> {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }
}

fn cyclotomic_value(v: CfValue, y: &DualElement) -> Result<Cyclo> {
    let outside = || {
        Error::Unsupported(format!(
            "value at {y} is not a cyclotomic number; Gaussian factors have no finite model"
        ))
    };
    let e = v.exact().ok_or_else(outside)?;
    if e.is_zero() {
        return Ok(Cyclo::zero());
    }
    match e.single_term() {
        Some((ex, c)) if ex.is_zero() => Ok(c.clone()),
        _ => Err(outside()),
    }
}

/// Inverse transform `p(x) = (1/N)·Σ_k f(k)·conj((x, k))` of `f` restricted
/// to the embedded characters, in exact arithmetic.
pub fn charfn_to_pmf(f: &CharFnExpr, model: &FiniteModel) -> Result<Pmf> {
    let host = model.host_for(f)?;
    let chars = model.characters(&host)?;
    let values: Vec<Cyclo> = chars
        .iter()
        .map(|y| cyclotomic_value(f.eval(y)?, y))
        .collect::<Result<_>>()?;
    let m = values.iter().fold(model.exponent_lcm(), |a, v| lcm_u64(a, v.order()));
    let powers: Vec<Vec<(usize, Rational)>> = values.iter().map(|v| v.powers_over(m)).collect();
    let n = model.order();
    let probabilities = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut terms = Vec::new();
            for (k, pw) in powers.iter().enumerate() {
                let shift = (-model.pairing(x, k)).fract_mod1().mul_int(m as i64);
                let shift = shift.to_i64().expect("integral exponent") as usize;
                terms.extend(pw.iter().map(|(j, c)| (j + shift, c.clone())));
            }
            let total = Cyclo::from_powers(m, terms).as_rational().ok_or_else(|| {
                Error::NotCharacteristic(format!("probability at {x} is irrational"))
            })?;
            let p = total * Rational::new(1, n as i64);
            if p.is_negative() {
                return Err(Error::NotCharacteristic(format!("p({x}) = {p} is negative")));
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    Pmf::new(model.clone(), probabilities)
}

/// Forward transform `f(k) = Σ_x p(x)·(x, k)` for each character index.
pub fn pmf_to_charfn(pmf: &Pmf) -> Vec<CfValue> {
    let model = &pmf.model;
    let m = model.exponent_lcm();
    (0..model.order())
        .map(|k| {
            let terms = pmf
                .support()
                .into_iter()
                .map(|(x, p)| {
                    let e = model.pairing(x, k).mul_int(m as i64);
                    (e.to_i64().expect("integral exponent") as usize, p.clone())
                })
                .collect();
            CfValue::Exact(ExactValue::term(Rational::zero(), Cyclo::from_powers(m, terms)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SymmetryCheck {
    pub symmetric: bool,
    /// `max |P(L₁=h, L₂=g) − P(L₁=h, L₂=−g)|`.
    pub worst_deviation: Rational,
    /// First `(h, g)` in index order with a nonzero deviation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

/// Exact joint law of `(L₁, L₂) = (ξ₁ + ξ₂, pξ₁ + qξ₂)`.
pub fn joint_law(pmf1: &Pmf, pmf2: &Pmf, p: i64, q: i64) -> Result<BTreeMap<(usize, usize), Rational>> {
    if pmf1.model != pmf2.model {
        return Err(Error::InvalidArgument("distributions live on different models".into()));
    }
    let model = &pmf1.model;
    let s2 = pmf2.support();
    let partial: Vec<HashMap<(usize, usize), Rational>> = pmf1
        .support()
        .into_par_iter()
        .map(|(x1, p1)| {
            let mut acc: HashMap<(usize, usize), Rational> = HashMap::new();
            for &(x2, p2) in &s2 {
                let key = (model.add(x1, x2), model.add(model.scale(x1, p), model.scale(x2, q)));
                let slot = acc.entry(key).or_insert_with(Rational::zero);
                *slot = &*slot + p1 * p2;
            }
            acc
        })
        .collect();
    let mut out = BTreeMap::new();
    for part in partial {
        for (k, v) in part {
            let slot = out.entry(k).or_insert_with(Rational::zero);
            *slot = &*slot + v;
        }
    }
    Ok(out)
}

/// Whether `L₂` given `L₁` is symmetric, by exhaustive enumeration.
pub fn conditional_symmetry_enumerate(pmf1: &Pmf, pmf2: &Pmf, p: i64, q: i64) -> Result<SymmetryCheck> {
    let joint = joint_law(pmf1, pmf2, p, q)?;
    let model = &pmf1.model;
    let zero = Rational::zero();
    let mut worst = Rational::zero();
    let mut witness = None;
    let mut keys: Vec<(usize, usize)> = joint.keys().copied().collect();
    keys.extend(joint.keys().map(|&(h, g)| (h, model.neg(g))));
    keys.sort_unstable();
    keys.dedup();
    for (h, g) in keys {
        let a = joint.get(&(h, g)).unwrap_or(&zero);
        let b = joint.get(&(h, model.neg(g))).unwrap_or(&zero);
        let d = (a - b).abs();
        if !d.is_zero() && witness.is_none() {
            witness = Some((h, g));
        }
        if d > worst {
            worst = d;
        }
    }
    Ok(SymmetryCheck {
        symmetric: worst.is_zero(),
        worst_deviation: worst,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceReport {
    pub equation: VerificationReport,
    pub enumeration: SymmetryCheck,
    /// Both verdicts agree.
    pub agree: bool,
}

/// Checks the characteristic-function equation on the embedded characters
/// and the conditional symmetry of the realized distributions, and compares.
pub fn crossvalidate_lemma1(
    f1: &CharFnExpr,
    f2: &CharFnExpr,
    model: &FiniteModel,
    p: i64,
    q: i64,
) -> Result<EquivalenceReport> {
    let host = model.host_for(f1)?;
    host.ensure_same(&model.host_for(f2)?)?;
    let values = (0..model.order()).map(|k| model.embed(k)).collect::<Result<_>>()?;
    let grid = GridSpec::Points { host, values };
    let equation = verify_equation(
        &EquationSpec::symmetry(p, q),
        &[f1.clone(), f2.clone()],
        &grid,
        0.0,
    )?;
    let enumeration = conditional_symmetry_enumerate(
        &charfn_to_pmf(f1, model)?,
        &charfn_to_pmf(f2, model)?,
        p,
        q,
    )?;
    let agree = equation.is_verified() == enumeration.symmetric;
    Ok(EquivalenceReport {
        equation,
        enumeration,
        agree,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EmpiricalTable {
    pub samples: u64,
    pub seed: u64,
    /// `counts[h][g]` = number of draws with `L₁ = h`, `L₂ = g`.
    pub counts: BTreeMap<usize, BTreeMap<usize, u64>>,
    /// `max |P̂(g | h) − P̂(−g | h)|`.
    pub max_asymmetry: f64,
}

/// Draws `n` independent pairs and tabulates `(L₁, L₂)`.
pub fn sample_forms(pmf1: &Pmf, pmf2: &Pmf, p: i64, q: i64, n: u64, seed: u64) -> Result<EmpiricalTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    if pmf1.model != pmf2.model {
        return Err(Error::InvalidArgument("distributions live on different models".into()));
    }
    let model = &pmf1.model;
    let weights = |pmf: &Pmf| {
        WeightedIndex::new(pmf.probabilities.iter().map(Rational::to_f64))
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    };
    let (d1, d2) = (weights(pmf1)?, weights(pmf2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for _ in 0..n {
        let (x1, x2) = (d1.sample(&mut rng), d2.sample(&mut rng));
        let h = model.add(x1, x2);
        let g = model.add(model.scale(x1, p), model.scale(x2, q));
        *counts.entry(h).or_default().entry(g).or_default() += 1;
    }
    let mut max_asymmetry: f64 = 0.0;
    for row in counts.values() {
        let total = row.values().sum::<u64>() as f64;
        for (&g, &c) in row {
            let mirror = row.get(&model.neg(g)).copied().unwrap_or(0);
            max_asymmetry = max_asymmetry.max((c as f64 - mirror as f64).abs() / total);
        }
    }
    Ok(EmpiricalTable {
        samples: n,
        seed,
        counts,
        max_asymmetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{default_c, lemma2_construct, lemma2_construct_unchecked};
    use crate::group::SubgroupSpec;
    use crate::rational::rat;

    fn z(n: u64) -> FiniteModel {
        FiniteModel::cyclic(n).unwrap()
    }

    #[test]
    fn two_torsion_pmf() {
        let c = lemma2_construct(3, &default_c()).unwrap();
        let pmf = charfn_to_pmf(&c.mu1, &z(8)).unwrap();
        for (x, p) in pmf.probabilities.iter().enumerate() {
            assert_eq!(*p, if x % 2 == 0 { rat(1, 6) } else { rat(1, 12) });
        }
        let back = pmf_to_charfn(&pmf);
        let chars = z(8).characters(&Host::prufer(2).unwrap()).unwrap();
        for (y, v) in chars.iter().zip(&back) {
            assert!(c.mu1.eval(y).unwrap().agrees(v, 0.0));
        }
    }

    #[test]
    fn degenerate_and_haar() {
        let host = Host::prufer(2).unwrap();
        let one = CharFnExpr::indicator(SubgroupSpec::whole(&host));
        assert_eq!(charfn_to_pmf(&one, &z(8)).unwrap(), Pmf::point_mass(z(8), 0).unwrap());
        let haar = CharFnExpr::indicator(SubgroupSpec::torsion(&host, 1).unwrap());
        assert_eq!(charfn_to_pmf(&haar, &z(8)).unwrap(), Pmf::uniform(z(8)));
    }

    #[test]
    fn hand_enumerations() {
        let c = lemma2_construct(3, &default_c()).unwrap();
        let pmf = charfn_to_pmf(&c.mu1, &z(8)).unwrap();
        let r = conditional_symmetry_enumerate(&pmf, &pmf, 1, 3).unwrap();
        assert!(r.symmetric && r.worst_deviation.is_zero());
        let delta = Pmf::point_mass(z(8), 1).unwrap();
        assert!(conditional_symmetry_enumerate(&delta, &delta, 1, 3).unwrap().symmetric);
        let r = conditional_symmetry_enumerate(&delta, &delta, 1, 2).unwrap();
        assert!(!r.symmetric);
        assert_eq!(r.worst_deviation, rat(1, 1));
        let zero = Pmf::point_mass(z(8), 0).unwrap();
        assert!(conditional_symmetry_enumerate(&zero, &zero, 1, 2).unwrap().symmetric);
    }

    #[test]
    fn oracle_agreement() {
        let good = lemma2_construct(3, &default_c()).unwrap();
        for k in 1..=5 {
            let r = crossvalidate_lemma1(&good.mu1, &good.mu2, &z(1 << k), 1, 3).unwrap();
            assert!(r.agree && r.enumeration.symmetric, "k = {k}");
        }
        let bad = lemma2_construct_unchecked(5, &default_c()).unwrap();
        let r = crossvalidate_lemma1(&bad.mu1, &bad.mu2, &z(8), 1, 5).unwrap();
        assert!(r.agree && !r.enumeration.symmetric);
        assert!(r.equation.witness.is_some() && r.enumeration.witness.is_some());
    }

    #[test]
    fn product_models() {
        let m = FiniteModel::new(vec![3, 4]).unwrap();
        assert_eq!(m.embed(m.index(&[1, 1])).unwrap(), rat(7, 12));
        assert!(FiniteModel::new(vec![2, 2]).unwrap().embed(1).is_err());
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"Z":[3,4]}"#);
    }

    #[test]
    fn seeded_sampling() {
        let c = lemma2_construct(3, &default_c()).unwrap();
        let pmf = charfn_to_pmf(&c.mu1, &z(8)).unwrap();
        let a = sample_forms(&pmf, &pmf, 1, 3, 2000, 7).unwrap();
        let b = sample_forms(&pmf, &pmf, 1, 3, 2000, 7).unwrap();
        assert_eq!(a, b);
        let one = sample_forms(&pmf, &pmf, 1, 3, 1, 0).unwrap();
        assert_eq!(one.counts.values().map(BTreeMap::len).sum::<usize>(), 1);
    }
}
