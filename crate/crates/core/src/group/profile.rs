//! Prime-multiplicity profiles of a sequence `a = (a₀, a₁, …)`.
//!
//! The dual group `H_a ⊂ ℚ` and every question about multiplication maps
//! being automorphisms depend only on how often each prime divides the
//! terms of `a`, so the sequence is stored as that finite profile.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::number::{self, factorize, is_prime};

/// Total multiplicity of one prime across the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    /// Whether `p^e` may divide a denominator.
    pub fn admits(self, e: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => e <= m,
            Multiplicity::Infinite => true,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeProfile {
    primes: BTreeMap<u64, Multiplicity>,
    /// Multiplicity of every prime not listed: `Finite(0)` or `Infinite`.
    others: Multiplicity,
}

impl Default for PrimeProfile {
    fn default() -> Self {
        PrimeProfile::empty()
    }
}

impl PrimeProfile {
    /// The profile with every multiplicity zero; as a denominator bound it
    /// describes `ℤ`.
    pub fn empty() -> Self {
        PrimeProfile {
            primes: BTreeMap::new(),
            others: Multiplicity::Finite(0),
        }
    }

    /// Every prime occurs infinitely often: the universal solenoid, `H_a = ℚ`.
    pub fn universal() -> Self {
        PrimeProfile {
            primes: BTreeMap::new(),
            others: Multiplicity::Infinite,
        }
    }

    /// Profile in which each listed prime has infinite multiplicity.
    pub fn infinite(primes: &[u64]) -> Result<Self> {
        let mut out = PrimeProfile::empty();
        for &p in primes {
            out = out.with(p, Multiplicity::Infinite)?;
        }
        Ok(out)
    }

    /// Profile of a finite sequence prefix `a₀ … a_{N−1}`.
    pub fn from_sequence(terms: &[u64]) -> Result<Self> {
        let mut out = PrimeProfile::empty();
        for &a in terms {
            if a < 2 {
                return Err(Error::InvalidArgument(format!(
                    "sequence terms must exceed 1, got {a}"
                )));
            }
            for (p, e) in factorize(a) {
                let cur = match out.multiplicity(p) {
                    Multiplicity::Finite(m) => m,
                    Multiplicity::Infinite => continue,
                };
                out = out.with(p, Multiplicity::Finite(cur + e))?;
            }
        }
        Ok(out)
    }

    /// Returns a copy with the multiplicity of `p` replaced.
    pub fn with(mut self, p: u64, m: Multiplicity) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if m == self.others {
            self.primes.remove(&p);
        } else {
            self.primes.insert(p, m);
        }
        Ok(self)
    }

    pub fn multiplicity(&self, p: u64) -> Multiplicity {
        self.primes.get(&p).copied().unwrap_or(self.others)
    }

    pub fn others(&self) -> Multiplicity {
        self.others
    }

    /// Explicitly listed primes with their multiplicities.
    pub fn entries(&self) -> impl Iterator<Item = (u64, Multiplicity)> + '_ {
        self.primes.iter().map(|(&p, &m)| (p, m))
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &PrimeProfile) -> bool {
        if self.others > other.others {
            return false;
        }
        self.primes
            .keys()
            .chain(other.primes.keys())
            .all(|&p| self.multiplicity(p) <= other.multiplicity(p))
    }

    /// Whether a positive denominator `d` divides some `a₀⋯a_n`.
    pub fn admits_denominator(&self, d: &BigInt) -> bool {
        let mut rest = d.clone();
        for (&p, &m) in &self.primes {
            let (r, e) = number::strip_prime(&rest, p);
            if !m.admits(e) {
                return false;
            }
            rest = r;
        }
        rest.is_one() || self.others.is_infinite()
    }

    /// Whether `f_n : y ↦ ny` is an automorphism of `H_a` (equivalently of
    /// the solenoid): every prime factor of `|n|` occurs infinitely often.
    pub fn is_automorphism(&self, n: i64) -> Result<bool> {
        Ok(self.prime_witness(n)?.is_none())
    }

    /// First prime factor of `|n|` with finite multiplicity, if any.
    pub fn prime_witness(&self, n: i64) -> Result<Option<u64>> {
        if n == 0 {
            return Err(Error::ZeroMultiplier);
        }
        Ok(factorize(n.unsigned_abs())
            .into_iter()
            .map(|(p, _)| p)
            .find(|&p| !self.multiplicity(p).is_infinite()))
    }

    /// Existence of coprime `p, q` with `f_p, f_q, f_{p±q}` automorphisms,
    /// which holds exactly when `f_2` and `f_3` are automorphisms.
    pub fn heyde_admissible(&self) -> bool {
        self.multiplicity(2).is_infinite() && self.multiplicity(3).is_infinite()
    }

    /// Primes with infinite multiplicity among the listed ones.
    pub fn infinite_primes(&self) -> Vec<u64> {
        self.primes
            .iter()
            .filter(|(_, m)| m.is_infinite())
            .map(|(&p, _)| p)
            .collect()
    }
}

impl fmt::Display for PrimeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, m)) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{m}")?;
        }
        if self.others.is_infinite() {
            if !self.primes.is_empty() {
                f.write_str(", ")?;
            }
            f.write_str("others:inf")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MultRepr {
    Count(u32),
    Word(String),
}

impl MultRepr {
    fn parse(self) -> Result<Multiplicity> {
        match self {
            MultRepr::Count(n) => Ok(Multiplicity::Finite(n)),
            MultRepr::Word(w) if w == "inf" || w == "infinite" => Ok(Multiplicity::Infinite),
            MultRepr::Word(w) => w
                .parse::<u32>()
                .map(Multiplicity::Finite)
                .map_err(|_| Error::Parse(format!("invalid multiplicity {w:?}"))),
        }
    }

    fn from_mult(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(n) => MultRepr::Count(n),
            Multiplicity::Infinite => MultRepr::Word("inf".into()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    primes: BTreeMap<String, MultRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    others: Option<MultRepr>,
}

impl Serialize for PrimeProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ProfileRepr {
            primes: self
                .primes
                .iter()
                .map(|(p, &m)| (p.to_string(), MultRepr::from_mult(m)))
                .collect(),
            others: self
                .others
                .is_infinite()
                .then(|| MultRepr::from_mult(Multiplicity::Infinite)),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PrimeProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ProfileRepr::deserialize(deserializer)?;
        let others = match repr.others {
            None => Multiplicity::Finite(0),
            Some(m) => m.parse().map_err(D::Error::custom)?,
        };
        if !matches!(others, Multiplicity::Finite(0) | Multiplicity::Infinite) {
            return Err(D::Error::custom("\"others\" must be 0 or \"inf\""));
        }
        let mut out = PrimeProfile {
            primes: BTreeMap::new(),
            others,
        };
        // Sort numerically so that validation errors are deterministic.
        let mut entries = Vec::new();
        for (k, v) in repr.primes {
            let p: u64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid prime key {k:?}")))?;
            entries.push((p, v.parse().map_err(D::Error::custom)?));
        }
        entries.sort_by_key(|e| e.0);
        for (p, m) in entries {
            out = out.with(p, m).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
