//! Subgroups of the dual groups described by local exponent bounds.
//!
//! A subgroup `S` of a host is determined by one exponent `ε_p ∈ ℤ ∪ {∞}`
//! per prime: `y ∈ S` iff `v_p(y) ≥ −ε_p` for every `p`. Positive parts
//! form the denominator bound, negative parts the numerator divisor (only
//! possible inside `ℚ`). This family contains every subgroup the
//! constructions need (`H`, `L`, `H^{(n)} = nH`, `Y_{(n)}`) and is closed
//! under multiplication by integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::dual::{DualElement, Host};
use crate::group::profile::{Multiplicity, PrimeProfile};
use crate::number::{self, mod_inverse, valuation_u64};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Exponent {
    Finite(i64),
    Infinite,
}

impl From<Multiplicity> for Exponent {
    fn from(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(b) => Exponent::Finite(b as i64),
            Multiplicity::Infinite => Exponent::Infinite,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubgroupSpec {
    host: Host,
    bound: PrimeProfile,
    #[serde(skip_serializing_if = "is_one")]
    numerator_divisor: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion_order: Option<u64>,
}

fn is_one(n: &u64) -> bool {
    *n == 1
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct SubgroupRepr {
    host: Host,
    bound: PrimeProfile,
    #[serde(default = "one")]
    numerator_divisor: u64,
    #[serde(default)]
    torsion_order: Option<u64>,
}

fn one() -> u64 {
    1
}

impl<'de> Deserialize<'de> for SubgroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubgroupRepr::deserialize(d)?;
        SubgroupSpec::new(r.host, r.bound, r.numerator_divisor, r.torsion_order)
            .map_err(serde::de::Error::custom)
    }
}

impl SubgroupSpec {
    /// Builds and canonicalizes a subgroup description.
    pub fn new(
        host: Host,
        bound: PrimeProfile,
        numerator_divisor: u64,
        torsion_order: Option<u64>,
    ) -> Result<Self> {
        if numerator_divisor == 0 {
            return Err(Error::InvalidArgument("numerator divisor must be positive".into()));
        }
        if !bound.le(&host.full_bound()) {
            return Err(Error::InvalidArgument(format!(
                "bound {bound} exceeds host {host}"
            )));
        }
        if host.is_torsion() {
            if numerator_divisor != 1 {
                return Err(Error::InvalidArgument(
                    "numerator divisors only apply to subgroups of Q".into(),
                ));
            }
            let mut exps = BTreeMap::new();
            for (p, m) in bound.entries() {
                exps.insert(p, Exponent::from(m));
            }
            let mut others = Exponent::from(bound.others());
            if let Some(n) = torsion_order {
                if n == 0 {
                    return Err(Error::InvalidArgument("torsion order must be positive".into()));
                }
                let primes: BTreeSet<u64> = exps
                    .keys()
                    .copied()
                    .chain(host.denominator_primes().unwrap_or_default())
                    .chain(number::prime_divisors(n))
                    .collect();
                let base = others;
                for p in primes {
                    let cur = exps.get(&p).copied().unwrap_or(base);
                    let cap = Exponent::Finite(valuation_u64(n, p) as i64);
                    exps.insert(p, cur.min(cap));
                }
                others = Exponent::Finite(0);
            }
            Ok(Self::from_exponents(host, others, exps))
        } else {
            if torsion_order.is_some() {
                return Err(Error::InvalidArgument(
                    "torsion orders only apply to torsion hosts".into(),
                ));
            }
            let mut exps = BTreeMap::new();
            for (p, m) in bound.entries() {
                exps.insert(p, Exponent::from(m));
            }
            let others = Exponent::from(bound.others());
            for (p, e) in number::factorize(numerator_divisor) {
                let cur = exps.get(&p).copied().unwrap_or(others);
                exps.insert(p, sub_exp(cur, e as i64));
            }
            Ok(Self::from_exponents(host, others, exps))
        }
    }

    fn from_exponents(host: Host, others: Exponent, exps: BTreeMap<u64, Exponent>) -> Self {
        let others_m = match others {
            Exponent::Infinite => Multiplicity::Infinite,
            Exponent::Finite(_) => Multiplicity::Finite(0),
        };
        let mut bound = if others_m.is_infinite() {
            PrimeProfile::universal()
        } else {
            PrimeProfile::empty()
        };
        let mut divisor: u64 = 1;
        for (p, e) in exps {
            let m = match e {
                Exponent::Infinite => Multiplicity::Infinite,
                Exponent::Finite(k) if k >= 0 => Multiplicity::Finite(k as u32),
                Exponent::Finite(k) => {
                    divisor = divisor.saturating_mul(p.saturating_pow((-k) as u32));
                    Multiplicity::Finite(0)
                }
            };
            if host.is_torsion() && m == Multiplicity::Finite(0) && !others_m.is_infinite() {
                continue;
            }
            bound = bound.with(p, m).expect("keys are primes");
        }
        let torsion_order = if host.is_torsion() && !bound.others().is_infinite() {
            let mut order: u64 = 1;
            let mut finite = true;
            for (p, m) in bound.entries() {
                match m {
                    Multiplicity::Finite(b) => order = order.saturating_mul(p.saturating_pow(b)),
                    Multiplicity::Infinite => finite = false,
                }
            }
            finite.then_some(order)
        } else {
            None
        };
        SubgroupSpec {
            host,
            bound,
            numerator_divisor: divisor,
            torsion_order,
        }
    }

    /// The whole host group.
    pub fn whole(host: &Host) -> Self {
        Self::new(host.clone(), host.full_bound(), 1, None).expect("host bound is valid")
    }

    /// Elements whose denominators are bounded by `bound`.
    pub fn bounded(host: &Host, bound: PrimeProfile) -> Result<Self> {
        Self::new(host.clone(), bound, 1, None)
    }

    /// The `n`-torsion `Y_{(n)}` of a torsion host.
    pub fn torsion(host: &Host, n: u64) -> Result<Self> {
        if !host.is_torsion() {
            return Err(Error::InvalidArgument(format!("{host} is torsion-free")));
        }
        Self::new(host.clone(), host.full_bound(), 1, Some(n))
    }

    /// The `s`-local subgroup `{m / s₁^{n₁}⋯s_l^{n_l}}` of `H_a` for the
    /// primes of `|s|`; `ℤ` when `|s| = 1`.
    pub fn local(host: &Host, s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroMultiplier);
        }
        let primes = number::prime_divisors(s.unsigned_abs());
        Self::bounded(host, PrimeProfile::infinite(&primes)?)
    }

    pub fn host(&self) -> &Host {
        &self.host
    }

    pub fn bound(&self) -> &PrimeProfile {
        &self.bound
    }

    pub fn numerator_divisor(&self) -> u64 {
        self.numerator_divisor
    }

    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion_order
    }

    fn exponent(&self, p: u64) -> Exponent {
        let b = Exponent::from(self.bound.multiplicity(p));
        if self.numerator_divisor > 1 && self.numerator_divisor.is_multiple_of(p) {
            sub_exp(b, valuation_u64(self.numerator_divisor, p) as i64)
        } else {
            b
        }
    }

    fn listed_primes(&self) -> BTreeSet<u64> {
        self.bound
            .entries()
            .map(|(p, _)| p)
            .chain(number::prime_divisors(self.numerator_divisor))
            .collect()
    }

    pub fn member(&self, y: &DualElement) -> Result<bool> {
        self.host.ensure_same(y.host())?;
        let v = y.value();
        if v.is_zero() {
            return Ok(true);
        }
        if !self.bound.admits_denominator(v.denom()) {
            return Ok(false);
        }
        if self.numerator_divisor > 1 {
            let d = BigInt::from(self.numerator_divisor);
            if !(v.numer() % d).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `n·S`.
    pub fn scale(&self, n: i64) -> Result<SubgroupSpec> {
        if n == 0 {
            return Err(Error::ZeroMultiplier);
        }
        let mut exps: BTreeMap<u64, Exponent> = self
            .listed_primes()
            .into_iter()
            .map(|p| (p, self.exponent(p)))
            .collect();
        for (p, e) in number::factorize(n.unsigned_abs()) {
            let cur = self.exponent(p);
            let mut next = sub_exp(cur, e as i64);
            if self.host.is_torsion() {
                next = next.max(Exponent::Finite(0));
            }
            exps.insert(p, next);
        }
        let others = Exponent::from(self.bound.others());
        Ok(Self::from_exponents(self.host.clone(), others, exps))
    }

    /// Whether `sub ⊆ self`.
    pub fn contains(&self, sub: &SubgroupSpec) -> bool {
        if !self.host.same_group(&sub.host) {
            return false;
        }
        if sub.bound.others() > self.bound.others() {
            return false;
        }
        self.listed_primes()
            .union(&sub.listed_primes())
            .all(|&p| sub.exponent(p) <= self.exponent(p))
    }

    /// Per-prime gaps `ε_p(self) − ε_p(sub)` for a finite-index `sub`.
    fn gaps(&self, sub: &SubgroupSpec) -> Result<Vec<(u64, u32)>> {
        if !self.contains(sub) {
            return Err(Error::InvalidArgument(format!("{sub} is not contained in {self}")));
        }
        if self.bound.others().is_infinite() && !sub.bound.others().is_infinite() {
            return Err(Error::InfiniteQuotient(format!("[{self} : {sub}]")));
        }
        let mut out = Vec::new();
        for p in self.listed_primes().union(&sub.listed_primes()) {
            match (self.exponent(*p), sub.exponent(*p)) {
                (Exponent::Infinite, Exponent::Infinite) => {}
                (Exponent::Infinite, Exponent::Finite(_)) => {
                    return Err(Error::InfiniteQuotient(format!("[{self} : {sub}] at {p}")))
                }
                (Exponent::Finite(a), Exponent::Finite(b)) if a > b => {
                    out.push((*p, (a - b) as u32));
                }
                _ => {}
            }
        }
        Ok(out)
    }

    /// Index `[self : sub]`.
    pub fn index_of(&self, sub: &SubgroupSpec) -> Result<u64> {
        let mut k: u64 = 1;
        for (p, g) in self.gaps(sub)? {
            k = p
                .checked_pow(g)
                .and_then(|f| k.checked_mul(f))
                .ok_or_else(|| Error::InfiniteQuotient("index overflows u64".into()))?;
        }
        Ok(k)
    }

    /// Coset label of `y` in `self / sub ≅ ℤ(k)`, as an element of the
    /// cyclic group `ℤ(k)`. The map is a homomorphism with kernel `sub`.
    pub fn quotient_project(&self, sub: &SubgroupSpec, y: &DualElement) -> Result<DualElement> {
        let gaps = self.gaps(sub)?;
        let k = self.index_of(sub)?;
        if !self.member(y)? {
            return Err(Error::NotInHost {
                value: y.to_string(),
                host: self.to_string(),
            });
        }
        let target = Host::cyclic(k)?;
        let mut label = Rational::zero();
        for (p, g) in gaps {
            let modulus = BigInt::from(p.pow(g));
            let c = if self.host.is_torsion() {
                // p-primary component of y, multiplied by p^{ε_p(sub)}.
                let part = primary_component(y.value(), p);
                let Exponent::Finite(e_sub) = sub.exponent(p) else {
                    unreachable!("finite gap")
                };
                let shifted = part * Rational::from_int(BigInt::from(p).pow(e_sub as u32));
                (shifted.fract_mod1() * Rational::from_int(modulus.clone()))
                    .to_integer()
                    .expect("component lies in Y_(p^g)")
            } else {
                let Exponent::Finite(e) = self.exponent(p) else {
                    unreachable!("finite gap")
                };
                let scaled = if e >= 0 {
                    y.value() * Rational::from_int(BigInt::from(p).pow(e as u32))
                } else {
                    y.value() / Rational::from_int(BigInt::from(p).pow((-e) as u32))
                };
                let inv = mod_inverse(scaled.denom(), &modulus).expect("p-local integer");
                (scaled.numer() * inv).mod_floor(&modulus)
            };
            label = label + Rational::new(c, modulus);
        }
        target.element(label)
    }

    /// Primes appearing in the description.
    pub fn primes(&self) -> Vec<u64> {
        self.listed_primes().into_iter().collect()
    }

    /// Order of a finite subgroup (torsion hosts, or `{0}`).
    pub fn order(&self) -> Option<u64> {
        self.torsion_order
    }

    /// Enumerates a finite subgroup of a torsion host.
    pub fn elements(&self) -> Result<Vec<DualElement>> {
        let n = self.torsion_order.ok_or_else(|| {
            Error::InvalidArgument(format!("{self} is not a finite subgroup"))
        })?;
        (0..n)
            .map(|j| self.host.element(Rational::new(j as i64, n as i64)))
            .collect()
    }
}

fn sub_exp(e: Exponent, k: i64) -> Exponent {
    match e {
        Exponent::Infinite => Exponent::Infinite,
        Exponent::Finite(a) => Exponent::Finite(a - k),
    }
}

/// The p-primary part of a rational modulo 1.
fn primary_component(y: &Rational, p: u64) -> Rational {
    let y = y.fract_mod1();
    let d = y.denom();
    let (rest, e) = number::strip_prime(d, p);
    if e == 0 {
        return Rational::zero();
    }
    let pe = BigInt::from(p).pow(e);
    let inv = mod_inverse(&rest, &pe).expect("coprime");
    let num = (y.numer() * inv).mod_floor(&pe);
    Rational::new(num, pe)
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}: den {}", self.host, self.bound)?;
        if self.numerator_divisor > 1 {
            write!(f, ", num %{}", self.numerator_divisor)?;
        }
        if let Some(n) = self.torsion_order {
            write!(f, ", order {n}")?;
        }
        f.write_str(">")
    }
}

/// Convenience for tests: the torsion order as `u64`, when finite.
pub fn finite_order(s: &SubgroupSpec) -> Option<u64> {
    s.torsion_order.and_then(|n| n.to_u64())
}
