//! Positive semidefiniteness of Gram matrices `G_jk = f(y_j − y_k)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::CharFnExpr;
use crate::error::{Error, Result};
use crate::group::DualElement;
use crate::rational::Rational;
use crate::value::CfValue;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Decided by exact elimination rather than by the eigenvalue bound.
    pub exact: bool,
    pub size: usize,
}

/// Exact PSD test for a symmetric rational matrix by `LDLᵀ` elimination.
/// A zero pivot forces its whole row to vanish.
#[allow(clippy::needless_range_loop)]
pub fn rational_psd(mut a: Vec<Vec<Rational>>) -> bool {
    let n = a.len();
    for i in 0..n {
        let pivot = a[i][i].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if a[i][i + 1..].iter().any(|x| !x.is_zero()) {
                return false;
            }
            continue;
        }
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let factor = &a[r][i] / &pivot;
            for c in i + 1..n {
                let delta = &factor * &a[i][c];
                a[r][c] = &a[r][c] - delta;
            }
            a[r][i] = Rational::zero();
        }
    }
    true
}

fn min_eigenvalue(g: &[Vec<CfValue>]) -> f64 {
    let n = g.len();
    if n == 0 {
        return 0.0;
    }
    // Real symmetric embedding [[A, −B], [B, A]] of the Hermitian A + iB.
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = g[r % n][c % n].to_complex();
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    m.symmetric_eigenvalues().min()
}

#[allow(clippy::needless_range_loop)]
pub fn psd_check(f: &CharFnExpr, points: &[DualElement], tol: f64) -> Result<PsdReport> {
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(Error::InvalidArgument(format!("repeated point {a}")));
        }
    }
    let n = points.len();
    let mut g: Vec<Vec<CfValue>> = Vec::with_capacity(n);
    for a in points {
        let row = points
            .iter()
            .map(|b| f.eval(&a.sub(b)?))
            .collect::<Result<Vec<_>>>()?;
        g.push(row);
    }
    for j in 0..n {
        for k in j..n {
            if !g[j][k].agrees(&g[k][j].conj(), tol) {
                return Err(Error::NonHermitian(j, k));
            }
        }
    }
    let min_eig = min_eigenvalue(&g);
    let rational: Option<Vec<Vec<Rational>>> = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.exact().and_then(|e| e.as_rational()))
                .collect()
        })
        .collect();
    let (psd, exact) = match rational {
        Some(m) => (rational_psd(m), true),
        None => (min_eig >= -tol, false),
    };
    Ok(PsdReport {
        psd,
        min_eigenvalue: min_eig,
        exact,
        size: n,
    })
}
