//! Finite, deterministically ordered point sets of a dual group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{DualElement, Host};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GridSpec {
    /// All `k/order`, `0 ≤ k < order`; on a Prüfer host this is `ℤ(p^k)`.
    Truncation { host: Host, order: u64 },
    /// `{m/denominator : |m| ≤ bound}`.
    Box {
        host: Host,
        denominator: u64,
        bound: u64,
    },
    /// Explicit points; pairs are all ordered pairs of points.
    Points { host: Host, values: Vec<Rational> },
    /// Explicit `(u, v)` pairs.
    Pairs {
        host: Host,
        pairs: Vec<(Rational, Rational)>,
    },
}

impl GridSpec {
    pub fn truncation(host: Host, order: u64) -> Self {
        GridSpec::Truncation { host, order }
    }

    pub fn boxed(host: Host, denominator: u64, bound: u64) -> Self {
        GridSpec::Box {
            host,
            denominator,
            bound,
        }
    }

    pub fn host(&self) -> &Host {
        match self {
            GridSpec::Truncation { host, .. }
            | GridSpec::Box { host, .. }
            | GridSpec::Points { host, .. }
            | GridSpec::Pairs { host, .. } => host,
        }
    }

    pub fn points(&self) -> Result<Vec<DualElement>> {
        match self {
            GridSpec::Truncation { host, order } => {
                if *order == 0 {
                    return Err(Error::InvalidArgument("truncation order must be positive".into()));
                }
                (0..*order)
                    .map(|k| host.element(Rational::new(k as i64, *order as i64)))
                    .collect()
            }
            GridSpec::Box {
                host,
                denominator,
                bound,
            } => {
                if *denominator == 0 {
                    return Err(Error::InvalidArgument("box denominator must be positive".into()));
                }
                let b = *bound as i64;
                let mut out: Vec<DualElement> = Vec::new();
                for m in -b..=b {
                    let y = host.element(Rational::new(m, *denominator as i64))?;
                    if !out.contains(&y) {
                        out.push(y);
                    }
                }
                Ok(out)
            }
            GridSpec::Points { host, values } => {
                values.iter().map(|v| host.element(v.clone())).collect()
            }
            GridSpec::Pairs { host, pairs } => {
                let mut out = Vec::new();
                for (u, v) in pairs {
                    out.push(host.element(u.clone())?);
                    out.push(host.element(v.clone())?);
                }
                Ok(out)
            }
        }
    }

    /// `(u, v)` pairs in grid order (`u` major). Univariate equations use
    /// `v = 0`.
    pub fn pairs(&self, univariate: bool) -> Result<Vec<(DualElement, DualElement)>> {
        if let GridSpec::Pairs { host, pairs } = self {
            return pairs
                .iter()
                .map(|(u, v)| Ok((host.element(u.clone())?, host.element(v.clone())?)))
                .collect();
        }
        let pts = self.points()?;
        let zero = self.host().zero();
        if univariate {
            return Ok(pts.into_iter().map(|u| (u, zero.clone())).collect());
        }
        let mut out = Vec::with_capacity(pts.len() * pts.len());
        for u in &pts {
            for v in &pts {
                out.push((u.clone(), v.clone()));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PrimeProfile;
    use crate::rational::rat;

    #[test]
    fn enumeration_sizes() {
        let p = Host::prufer(3).unwrap();
        assert_eq!(GridSpec::truncation(p, 81).pairs(false).unwrap().len(), 6561);
        let h = Host::ha(PrimeProfile::infinite(&[2, 3]).unwrap());
        let g = GridSpec::boxed(h.clone(), 24, 24);
        assert_eq!(g.points().unwrap().len(), 49);
        assert_eq!(g.pairs(true).unwrap().len(), 49);
        assert!(GridSpec::boxed(h, 5, 3).points().is_err());
    }

    #[test]
    fn json_shape() {
        let g: GridSpec = serde_json::from_str(
            r#"{"kind":"pairs","host":{"kind":"prufer","p":2},"pairs":[["3/8","1/8"]]}"#,
        )
        .unwrap();
        let pairs = g.pairs(false).unwrap();
        assert_eq!(pairs[0].0.value(), &rat(3, 8));
    }
}
