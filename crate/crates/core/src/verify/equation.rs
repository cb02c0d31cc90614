//! Bilinear functional-equation templates
//! `∏ f_j(a_j u + b_j v) = ∏ f_k(c_k u + d_k v)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub function: usize,
    pub u: i64,
    pub v: i64,
}

impl Factor {
    pub fn new(function: usize, u: i64, v: i64) -> Self {
        Factor { function, u, v }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSpec {
    pub name: String,
    pub left: Vec<Factor>,
    pub right: Vec<Factor>,
}

/// Named equation families accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationKind {
    /// `f₁(u+pv)f₂(u+qv) = f₁(u−pv)f₂(u−qv)`.
    Symmetry,
    /// `f₁(q₁u+v)f₂(u+q₂v) = f₁(q₁u−v)f₂(u−q₂v)` with `(q₁, q₂) = (p, q)`.
    SplitSymmetry,
    /// `f₁(u+pv)f₂(u+qv) = f₁(u)f₁(pv)f₂(u)f₂(qv)`.
    Independence,
    /// Independence of `(δ₁+δ₂)ξ₁+2δ₂ξ₂` and `2δ₁ξ₁+(δ₁+δ₂)ξ₂`, `δ = (p, q)`.
    TransformedIndependence,
    /// Independence of `ξ₁+ξ₂` and `4pqξ₁+(p+q)²ξ₂`.
    NormalizedIndependence,
    /// `ν₁((p−q)²y) = ν₁((p+q)²y)ν₁(4pqy)ν₂((p+q)²y)²`.
    DiagonalFirst,
    /// `ν₂((p−q)²y) = ν₁(4pqy)²ν₂(4pqy)ν₂((p+q)²y)`.
    DiagonalSecond,
    /// The second diagonal identity with `ν₁(4pqy)` to the first power.
    DiagonalSecondPrinted,
}

impl EquationKind {
    pub const ALL: [EquationKind; 8] = [
        EquationKind::Symmetry,
        EquationKind::SplitSymmetry,
        EquationKind::Independence,
        EquationKind::TransformedIndependence,
        EquationKind::NormalizedIndependence,
        EquationKind::DiagonalFirst,
        EquationKind::DiagonalSecond,
        EquationKind::DiagonalSecondPrinted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::Symmetry => "symmetry",
            EquationKind::SplitSymmetry => "split-symmetry",
            EquationKind::Independence => "independence",
            EquationKind::TransformedIndependence => "transformed-independence",
            EquationKind::NormalizedIndependence => "normalized-independence",
            EquationKind::DiagonalFirst => "diagonal-first",
            EquationKind::DiagonalSecond => "diagonal-second",
            EquationKind::DiagonalSecondPrinted => "diagonal-second-printed",
        }
    }

    pub fn build(self, p: i64, q: i64) -> EquationSpec {
        match self {
            EquationKind::Symmetry => EquationSpec::symmetry(p, q),
            EquationKind::SplitSymmetry => EquationSpec::split_symmetry(p, q),
            EquationKind::Independence => EquationSpec::independence(1, 1, p, q),
            EquationKind::TransformedIndependence => EquationSpec::transformed_independence(p, q),
            EquationKind::NormalizedIndependence => EquationSpec::normalized_independence(p, q),
            EquationKind::DiagonalFirst => EquationSpec::diagonal_first(p, q),
            EquationKind::DiagonalSecond => EquationSpec::diagonal_second(p, q),
            EquationKind::DiagonalSecondPrinted => EquationSpec::diagonal_second_printed(p, q),
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown equation {s:?}")))
    }
}

impl EquationSpec {
    pub fn new(name: impl Into<String>, left: Vec<Factor>, right: Vec<Factor>) -> Self {
        EquationSpec {
            name: name.into(),
            left,
            right,
        }
    }

    /// Symmetry of `L₂ = pξ₁ + qξ₂` given `L₁ = ξ₁ + ξ₂`.
    pub fn symmetry(p: i64, q: i64) -> Self {
        Self::new(
            "symmetry",
            vec![Factor::new(0, 1, p), Factor::new(1, 1, q)],
            vec![Factor::new(0, 1, -p), Factor::new(1, 1, -q)],
        )
    }

    /// Symmetry for `L₁ = q₁ξ₁ + ξ₂`, `L₂ = ξ₁ + q₂ξ₂`.
    pub fn split_symmetry(q1: i64, q2: i64) -> Self {
        Self::new(
            "split-symmetry",
            vec![Factor::new(0, q1, 1), Factor::new(1, 1, q2)],
            vec![Factor::new(0, q1, -1), Factor::new(1, 1, -q2)],
        )
    }

    /// Independence of `L₁ = α₁ξ₁ + α₂ξ₂` and `L₂ = β₁ξ₁ + β₂ξ₂`.
    pub fn independence(a1: i64, a2: i64, b1: i64, b2: i64) -> Self {
        Self::new(
            "independence",
            vec![Factor::new(0, a1, b1), Factor::new(1, a2, b2)],
            vec![
                Factor::new(0, a1, 0),
                Factor::new(0, 0, b1),
                Factor::new(1, a2, 0),
                Factor::new(1, 0, b2),
            ],
        )
    }

    pub fn transformed_independence(d1: i64, d2: i64) -> Self {
        let (l1, l2) = crate::verify::heyde_to_independence(d1, d2);
        let mut eq = Self::independence(l1.0, l1.1, l2.0, l2.1);
        eq.name = "transformed-independence".into();
        eq
    }

    pub fn normalized_independence(p: i64, q: i64) -> Self {
        let mut eq = Self::independence(1, 1, 4 * p * q, (p + q) * (p + q));
        eq.name = "normalized-independence".into();
        eq
    }

    pub fn diagonal_first(p: i64, q: i64) -> Self {
        let (d, s, m) = ((p - q) * (p - q), (p + q) * (p + q), 4 * p * q);
        Self::new(
            "diagonal-first",
            vec![Factor::new(0, d, 0)],
            vec![
                Factor::new(0, s, 0),
                Factor::new(0, m, 0),
                Factor::new(1, s, 0),
                Factor::new(1, s, 0),
            ],
        )
    }

    pub fn diagonal_second(p: i64, q: i64) -> Self {
        let (d, s, m) = ((p - q) * (p - q), (p + q) * (p + q), 4 * p * q);
        Self::new(
            "diagonal-second",
            vec![Factor::new(1, d, 0)],
            vec![
                Factor::new(0, m, 0),
                Factor::new(0, m, 0),
                Factor::new(1, m, 0),
                Factor::new(1, s, 0),
            ],
        )
    }

    pub fn diagonal_second_printed(p: i64, q: i64) -> Self {
        let (d, s, m) = ((p - q) * (p - q), (p + q) * (p + q), 4 * p * q);
        Self::new(
            "diagonal-second-printed",
            vec![Factor::new(1, d, 0)],
            vec![Factor::new(0, m, 0), Factor::new(1, m, 0), Factor::new(1, s, 0)],
        )
    }

    /// True when no factor depends on `v`.
    pub fn is_univariate(&self) -> bool {
        self.left.iter().chain(&self.right).all(|f| f.v == 0)
    }

    /// Number of functions referenced.
    pub fn arity(&self) -> usize {
        self.left
            .iter()
            .chain(&self.right)
            .map(|f| f.function + 1)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Factor]| {
            fs.iter()
                .map(|x| format!("f{}({}u{:+}v)", x.function + 1, x.u, x.v))
                .collect::<Vec<_>>()
                .join("*")
        };
        write!(f, "{}: {} = {}", self.name, side(&self.left), side(&self.right))
    }
}
