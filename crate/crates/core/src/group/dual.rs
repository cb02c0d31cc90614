//! Dual groups and their elements.
//!
//! Every dual group used here embeds in `ℚ` or in `ℚ/ℤ`, so an element is a
//! single reduced rational together with a tag naming the group it lives in.
//! Torsion hosts (Prüfer groups, their finite products, finite cyclic
//! groups) store the representative in `[0, 1)` and add modulo 1.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::profile::{Multiplicity, PrimeProfile};
use crate::number::{self, is_prime, valuation_u64};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Host {
    /// `H_a ⊂ ℚ`, the dual of the a-adic solenoid.
    #[serde(rename = "hA")]
    Ha { profile: Arc<PrimeProfile> },
    /// `ℤ(p^∞)`, the dual of the p-adic integers.
    Prufer { p: u64 },
    /// `ℤ(p₁^∞) × ⋯ × ℤ(p_k^∞)`, realized inside `ℚ/ℤ`.
    PruferProduct { primes: Vec<u64> },
    /// `ℤ(n)` as `{k/n} ⊂ ℚ/ℤ`.
    Cyclic { n: u64 },
}

impl Host {
    pub fn ha(profile: PrimeProfile) -> Self {
        Host::Ha {
            profile: Arc::new(profile),
        }
    }

    pub fn prufer(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Host::Prufer { p })
    }

    /// Product of Prüfer groups over the distinct primes given; a single
    /// prime collapses to [`Host::Prufer`].
    pub fn prufer_product(primes: &[u64]) -> Result<Self> {
        let mut ps: Vec<u64> = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        if let Some(&bad) = ps.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{bad} is not prime")));
        }
        match ps.len() {
            0 => Err(Error::InvalidArgument("empty Prüfer product".into())),
            1 => Ok(Host::Prufer { p: ps[0] }),
            _ => Ok(Host::PruferProduct { primes: ps }),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        Ok(Host::Cyclic { n })
    }

    pub fn is_torsion(&self) -> bool {
        !matches!(self, Host::Ha { .. })
    }

    pub fn profile(&self) -> Option<&PrimeProfile> {
        match self {
            Host::Ha { profile } => Some(profile),
            _ => None,
        }
    }

    /// Largest exponent of `p` allowed in a denominator.
    pub fn cap(&self, p: u64) -> Multiplicity {
        match self {
            Host::Ha { profile } => profile.multiplicity(p),
            Host::Prufer { p: q } => {
                if *q == p {
                    Multiplicity::Infinite
                } else {
                    Multiplicity::Finite(0)
                }
            }
            Host::PruferProduct { primes } => {
                if primes.contains(&p) {
                    Multiplicity::Infinite
                } else {
                    Multiplicity::Finite(0)
                }
            }
            Host::Cyclic { n } => Multiplicity::Finite(valuation_u64(*n, p)),
        }
    }

    /// The denominator-bound profile describing the whole host.
    pub fn full_bound(&self) -> PrimeProfile {
        match self {
            Host::Ha { profile } => (**profile).clone(),
            Host::Prufer { p } => PrimeProfile::infinite(&[*p]).expect("prime"),
            Host::PruferProduct { primes } => PrimeProfile::infinite(primes).expect("primes"),
            Host::Cyclic { n } => {
                let mut out = PrimeProfile::empty();
                for (p, e) in number::factorize(*n) {
                    out = out.with(p, Multiplicity::Finite(e)).expect("prime");
                }
                out
            }
        }
    }

    fn admits_denominator(&self, d: &BigInt) -> bool {
        match self {
            Host::Ha { profile } => profile.admits_denominator(d),
            Host::Prufer { p } => number::strip_prime(d, *p).0.is_one(),
            Host::PruferProduct { primes } => {
                let mut rest = d.clone();
                for &p in primes {
                    rest = number::strip_prime(&rest, p).0;
                }
                rest.is_one()
            }
            Host::Cyclic { n } => (BigInt::from(*n) % d).is_zero(),
        }
    }

    /// Same abstract group, treating a one-prime product as a Prüfer group.
    pub fn same_group(&self, other: &Host) -> bool {
        match (self, other) {
            (Host::Ha { profile: a }, Host::Ha { profile: b }) => Arc::ptr_eq(a, b) || a == b,
            (Host::Prufer { p }, Host::PruferProduct { primes })
            | (Host::PruferProduct { primes }, Host::Prufer { p }) => primes == &[*p],
            (Host::PruferProduct { primes: a }, Host::PruferProduct { primes: b }) => {
                let mut a = a.clone();
                let mut b = b.clone();
                a.sort_unstable();
                b.sort_unstable();
                a.dedup();
                b.dedup();
                a == b
            }
            _ => self == other,
        }
    }

    pub fn ensure_same(&self, other: &Host) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::HostMismatch(format!("{self} vs {other}")))
        }
    }

    /// Primes that may appear in denominators, when finitely many.
    pub fn denominator_primes(&self) -> Option<Vec<u64>> {
        match self {
            Host::Ha { profile } => {
                if profile.others().is_infinite() {
                    None
                } else {
                    Some(profile.entries().map(|(p, _)| p).collect())
                }
            }
            Host::Prufer { p } => Some(vec![*p]),
            Host::PruferProduct { primes } => Some(primes.clone()),
            Host::Cyclic { n } => Some(number::prime_divisors(*n)),
        }
    }

    pub fn element(&self, value: Rational) -> Result<DualElement> {
        DualElement::new(self.clone(), value)
    }

    pub fn zero(&self) -> DualElement {
        DualElement {
            value: Rational::zero(),
            host: self.clone(),
        }
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Host::Ha { profile } => write!(f, "H_a{profile}"),
            Host::Prufer { p } => write!(f, "Z({p}^inf)"),
            Host::PruferProduct { primes } => {
                let parts: Vec<String> = primes.iter().map(|p| format!("Z({p}^inf)")).collect();
                f.write_str(&parts.join(" x "))
            }
            Host::Cyclic { n } => write!(f, "Z({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DualElement {
    value: Rational,
    host: Host,
}

#[derive(Deserialize)]
struct DualElementRepr {
    value: Rational,
    host: Host,
}

impl<'de> Deserialize<'de> for DualElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DualElementRepr::deserialize(d)?;
        DualElement::new(r.host, r.value).map_err(serde::de::Error::custom)
    }
}

impl DualElement {
    /// Validates membership; torsion values are reduced modulo 1.
    pub fn new(host: Host, value: Rational) -> Result<Self> {
        let value = if host.is_torsion() {
            value.fract_mod1()
        } else {
            value
        };
        if !host.admits_denominator(value.denom()) {
            return Err(Error::NotInHost {
                value: value.to_string(),
                host: host.to_string(),
            });
        }
        Ok(DualElement { value, host })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn host(&self) -> &Host {
        &self.host
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn wrap(&self, value: Rational) -> DualElement {
        let value = if self.host.is_torsion() {
            value.fract_mod1()
        } else {
            value
        };
        DualElement {
            value,
            host: self.host.clone(),
        }
    }

    pub fn add(&self, other: &DualElement) -> Result<DualElement> {
        self.host.ensure_same(&other.host)?;
        Ok(self.wrap(&self.value + &other.value))
    }

    pub fn sub(&self, other: &DualElement) -> Result<DualElement> {
        self.host.ensure_same(&other.host)?;
        Ok(self.wrap(&self.value - &other.value))
    }

    pub fn neg(&self) -> DualElement {
        self.wrap(-&self.value)
    }

    /// `k·y`; every host is closed under integer multiples.
    pub fn scale(&self, k: i64) -> DualElement {
        self.wrap(self.value.mul_int(k))
    }

    /// `a·u + b·v`.
    pub fn lin(a: i64, u: &DualElement, b: i64, v: &DualElement) -> Result<DualElement> {
        u.host.ensure_same(&v.host)?;
        Ok(u.wrap(u.value.mul_int(a) + v.value.mul_int(b)))
    }

    /// Some `z` in the host with `c·z = self`.
    pub fn divide(&self, c: i64) -> Result<DualElement> {
        if c == 0 {
            return Err(Error::ZeroMultiplier);
        }
        if !self.host.is_torsion() {
            let z = &self.value / Rational::from_int(c);
            return DualElement::new(self.host.clone(), z).map_err(|_| {
                Error::NotInHost {
                    value: format!("{}/{c}", self.value),
                    host: self.host.to_string(),
                }
            });
        }
        // (y + j)/c satisfies c·z ≡ y (mod 1) for every integer j.
        for j in 0..c.unsigned_abs() {
            let cand = (&self.value + Rational::from_int(j)) / Rational::from_int(c);
            if let Ok(z) = DualElement::new(self.host.clone(), cand) {
                return Ok(z);
            }
        }
        Err(Error::NotInHost {
            value: format!("{}/{c}", self.value),
            host: self.host.to_string(),
        })
    }

    /// Order of a torsion element; `None` for nonzero elements of `H_a`.
    pub fn order(&self) -> Option<u64> {
        if self.host.is_torsion() {
            self.value.denom().to_u64()
        } else if self.is_zero() {
            Some(1)
        } else {
            None
        }
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
