//! Truncated a-adic integers `Δ_a / (a₀⋯a_{N−1})Δ_a` with carry addition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AadicInteger {
    base: Vec<u64>,
    digits: Vec<u64>,
}

#[derive(Deserialize)]
struct AadicRepr {
    base: Vec<u64>,
    digits: Vec<u64>,
}

impl<'de> Deserialize<'de> for AadicInteger {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AadicRepr::deserialize(d)?;
        AadicInteger::new(r.base, r.digits).map_err(serde::de::Error::custom)
    }
}

impl AadicInteger {
    pub fn new(base: Vec<u64>, digits: Vec<u64>) -> Result<Self> {
        if base.len() != digits.len() {
            return Err(Error::InvalidArgument(format!(
                "{} digits for a base of length {}",
                digits.len(),
                base.len()
            )));
        }
        if let Some(&a) = base.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidArgument(format!("base entries must exceed 1, got {a}")));
        }
        if let Some((j, (&x, &a))) = digits
            .iter()
            .zip(&base)
            .enumerate()
            .find(|(_, (&x, &a))| x >= a)
        {
            return Err(Error::InvalidArgument(format!(
                "digit {j} is {x}, must be below {a}"
            )));
        }
        Ok(AadicInteger { base, digits })
    }

    pub fn zero(base: Vec<u64>) -> Result<Self> {
        let digits = vec![0; base.len()];
        Self::new(base, digits)
    }

    /// Image of an integer (reduced modulo `a₀⋯a_{N−1}`).
    pub fn from_integer(base: Vec<u64>, n: &BigInt) -> Result<Self> {
        let z = Self::zero(base)?;
        let mut rest = n.mod_floor(&z.modulus());
        let digits = z
            .base
            .iter()
            .map(|&a| {
                let (q, r) = rest.div_rem(&BigInt::from(a));
                rest = q;
                r.to_u64().expect("digit below base")
            })
            .collect();
        Ok(AadicInteger {
            base: z.base,
            digits,
        })
    }

    /// The element `u = (1, 0, 0, …)`.
    pub fn one(base: Vec<u64>) -> Result<Self> {
        Self::from_integer(base, &BigInt::from(1))
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn level(&self) -> usize {
        self.base.len()
    }

    /// `a₀⋯a_{N−1}`.
    pub fn modulus(&self) -> BigInt {
        self.base.iter().map(|&a| BigInt::from(a)).product()
    }

    /// Positional valuation `ρ(x) = Σ x_j·a₀⋯a_{j−1}`.
    pub fn valuation(&self) -> BigInt {
        let mut place = BigInt::from(1);
        let mut acc = BigInt::zero();
        for (&x, &a) in self.digits.iter().zip(&self.base) {
            acc += &place * x;
            place *= a;
        }
        acc
    }

    fn ensure_base(&self, other: &AadicInteger) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!(
                "{:?} vs {:?}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    /// Digitwise sum with carry: `x_j + y_j + t_{j−1} = t_j·a_j + z_j`; the
    /// final carry leaves the truncation.
    pub fn add(&self, other: &AadicInteger) -> Result<AadicInteger> {
        self.ensure_base(other)?;
        let mut carry = 0u64;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .zip(&self.base)
            .map(|((&x, &y), &a)| {
                let s = x + y + carry;
                carry = s / a;
                s % a
            })
            .collect();
        Ok(AadicInteger {
            base: self.base.clone(),
            digits,
        })
    }

    pub fn neg(&self) -> AadicInteger {
        Self::from_integer(self.base.clone(), &-self.valuation()).expect("base already valid")
    }

    pub fn sub(&self, other: &AadicInteger) -> Result<AadicInteger> {
        self.add(&other.neg())
    }

    /// Restriction to the first `n` digits.
    pub fn truncate(&self, n: usize) -> Result<AadicInteger> {
        if n > self.level() {
            return Err(Error::Truncation(format!(
                "cannot extend level {} to {n}",
                self.level()
            )));
        }
        Ok(AadicInteger {
            base: self.base[..n].to_vec(),
            digits: self.digits[..n].to_vec(),
        })
    }
}

impl fmt::Display for AadicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ai(base: &[u64], digits: &[u64]) -> AadicInteger {
        AadicInteger::new(base.to_vec(), digits.to_vec()).unwrap()
    }

    #[test]
    fn carries() {
        let one = ai(&[2, 2, 2], &[1, 0, 0]);
        assert_eq!(one.add(&one).unwrap(), ai(&[2, 2, 2], &[0, 1, 0]));
        let x = ai(&[2, 3, 4], &[1, 2, 3]);
        assert_eq!(x.valuation(), BigInt::from(23));
        let s = x.add(&ai(&[2, 3, 4], &[1, 0, 0])).unwrap();
        assert_eq!(s, AadicInteger::zero(vec![2, 3, 4]).unwrap());
        let z = AadicInteger::zero(vec![2, 3, 4]).unwrap();
        assert_eq!(x.add(&z).unwrap(), x);
    }

    #[test]
    fn negation_and_integers() {
        let x = AadicInteger::from_integer(vec![3, 5], &BigInt::from(-1)).unwrap();
        assert_eq!(x.digits(), &[2, 4]);
        assert_eq!(x.neg(), AadicInteger::one(vec![3, 5]).unwrap());
        assert!(x.add(&ai(&[5, 3], &[0, 0])).is_err());
    }

    #[test]
    fn validation() {
        assert!(AadicInteger::new(vec![2, 3], vec![1, 3]).is_err());
        assert!(AadicInteger::new(vec![1], vec![0]).is_err());
        let js = r#"{"base": [2,3,4], "digits": [1,2,3]}"#;
        let x: AadicInteger = serde_json::from_str(js).unwrap();
        assert_eq!(x.valuation(), BigInt::from(23));
        assert!(serde_json::from_str::<AadicInteger>(r#"{"base":[2],"digits":[2]}"#).is_err());
    }
}
