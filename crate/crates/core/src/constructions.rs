//! Explicit pairs of characteristic functions for which the conditional
//! distribution of `L₂ = pξ₁ + qξ₂` given `L₁ = ξ₁ + ξ₂` is symmetric,
//! each bundled with its functional equation, expected classes and a
//! default verification grid.

use serde::{Deserialize, Serialize};

use crate::charfn::{CharFnExpr, ClassTag};
use crate::error::{Error, Result};
use crate::group::{Host, PrimeProfile, SubgroupSpec};
use crate::number::{gcd_i64, prime_divisors};
use crate::rational::{rat, Rational};
use crate::value::CfValue;
use crate::verify::{EquationSpec, GridSpec};

/// Table value used wherever a construction allows an arbitrary one.
pub fn default_c() -> Rational {
    rat(1, 3)
}

/// `[1, c, c, …, c]` on `ℤ(k)`: positive definite for `−1/(k−1) ≤ c ≤ 1`.
pub fn constant_table(k: u64, c: &Rational) -> Vec<Rational> {
    let mut t = vec![c.clone(); k as usize];
    t[0] = Rational::one();
    t
}

/// Coprime `(p, q)` on a solenoid with `f_p, f_q, f_{p±q}` automorphisms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub p: i64,
    pub q: i64,
    pub profile: PrimeProfile,
}

impl CaseSpec {
    pub fn new(p: i64, q: i64, profile: PrimeProfile) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::ZeroMultiplier);
        }
        if gcd_i64(p, q) != 1 {
            return Err(Error::InvalidArgument(format!("p = {p} and q = {q} are not coprime")));
        }
        for n in [p, q, p + q, p - q] {
            if n == 0 || !profile.is_automorphism(n)? {
                return Err(Error::Hypothesis(format!("multiplication by {n} is not an automorphism")));
            }
        }
        Ok(CaseSpec { p, q, profile })
    }

    pub fn s(&self) -> i64 {
        self.p - self.q
    }

    pub fn host(&self) -> Host {
        Host::ha(self.profile.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionResult {
    pub name: String,
    pub provenance: String,
    pub p: i64,
    pub q: i64,
    pub mu1: CharFnExpr,
    pub mu2: CharFnExpr,
    pub equation: EquationSpec,
    pub expected_class1: ClassTag,
    pub expected_class2: ClassTag,
    pub default_grid: GridSpec,
}

impl ConstructionResult {
    pub fn functions(&self) -> [CharFnExpr; 2] {
        [self.mu1.clone(), self.mu2.clone()]
    }

    fn checked(self) -> Result<Self> {
        let zero = self.default_grid.host().zero();
        for f in [&self.mu1, &self.mu2] {
            f.validate()?;
            if !f.eval(&zero)?.agrees(&CfValue::one(), 0.0) {
                return Err(Error::NotCharacteristic("value at 0 is not 1".into()));
            }
        }
        Ok(self)
    }
}

/// Expected class of a positive definite table pulled back or extended by 0.
fn table_class(table: &[Rational]) -> ClassTag {
    if table.iter().all(|v| v.is_zero() || v.is_one()) {
        ClassTag::IdempotentClass
    } else if table.iter().any(|v| !v.is_zero() && !v.abs().is_one()) {
        ClassTag::Outside
    } else {
        ClassTag::Unknown
    }
}

fn two_torsion_pair(q: i64, c: &Rational, name: &str) -> Result<ConstructionResult> {
    if c.abs() >= Rational::one() {
        return Err(Error::InvalidArgument(format!("c = {c} must lie in (-1, 1)")));
    }
    let host = Host::prufer(2)?;
    let g = CharFnExpr::torsion_extension(host.clone(), 2, vec![Rational::one(), c.clone()])?;
    let class = if c.is_zero() {
        ClassTag::IdempotentClass
    } else {
        ClassTag::Outside
    };
    ConstructionResult {
        name: name.into(),
        provenance: format!("identical pair on Z(2^inf), value {c} on the element of order 2"),
        p: 1,
        q,
        mu1: g.clone(),
        mu2: g,
        equation: EquationSpec::symmetry(1, q),
        expected_class1: class,
        expected_class2: class,
        default_grid: GridSpec::truncation(host, 64),
    }
    .checked()
}

/// Identically distributed pair on `ℤ(2^∞)` for `|q| = 2` or `q ≡ 3 mod 4`.
pub fn lemma2_construct(q: i64, c: &Rational) -> Result<ConstructionResult> {
    if q.abs() != 2 && q.rem_euclid(4) != 3 {
        return Err(Error::Hypothesis(format!(
            "q = {q}: requires |q| = 2 or q = 3 mod 4"
        )));
    }
    two_torsion_pair(q, c, "two-torsion")
}

/// The same pair without the hypothesis on `q`; used as a negative control.
pub fn lemma2_construct_unchecked(q: i64, c: &Rational) -> Result<ConstructionResult> {
    two_torsion_pair(q, c, "two-torsion-unchecked")
}

fn truncation_order(n: u64) -> u64 {
    let primes = prime_divisors(n);
    let rad: u64 = primes.iter().product();
    let mut order = n * rad;
    while let Some(&p) = primes.iter().find(|&&p| order * p <= 100) {
        order *= p;
    }
    order
}

/// Identically distributed pair on `∏ ℤ(p_i^∞)`, `p_i | 2m+1`, for
/// `q = 4m + 1`. `table` lives on `Y_(|2m+1|)` and defaults to a constant.
pub fn lemma3_construct(q: i64, table: Option<Vec<Rational>>) -> Result<ConstructionResult> {
    if q.rem_euclid(4) != 1 {
        return Err(Error::Hypothesis(format!("q = {q} is not 1 mod 4")));
    }
    let m = (q - 1).div_euclid(4);
    if m == 0 || m == -1 {
        return Err(Error::Hypothesis(format!("q = {q} gives m = {m}")));
    }
    let n = (2 * m + 1).unsigned_abs();
    let host = Host::prufer_product(&prime_divisors(n))?;
    let table = table.unwrap_or_else(|| constant_table(n, &default_c()));
    if table.len() as u64 != n {
        return Err(Error::InvalidTable(format!("expected {n} entries, got {}", table.len())));
    }
    let class = table_class(&table);
    let g = CharFnExpr::torsion_extension(host.clone(), n, table)?;
    ConstructionResult {
        name: "odd-torsion".into(),
        provenance: format!("identical pair on the {n}-torsion, where q acts as -1"),
        p: 1,
        q,
        mu1: g.clone(),
        mu2: g,
        equation: EquationSpec::symmetry(1, q),
        expected_class1: class,
        expected_class2: class,
        default_grid: GridSpec::truncation(host, truncation_order(n)),
    }
    .checked()
}

fn local_box(host: &Host, s: i64) -> GridSpec {
    let d: u64 = prime_divisors(s.unsigned_abs()).iter().map(|p| p.pow(3)).product();
    GridSpec::boxed(host.clone(), d, 20)
}

fn quotient_pullback(
    h: &SubgroupSpec,
    k: i64,
    table: Option<Vec<Rational>>,
) -> Result<(CharFnExpr, ClassTag)> {
    let sub = h.scale(k)?;
    let index = h.index_of(&sub)?;
    let table = table.unwrap_or_else(|| constant_table(index, &default_c()));
    if table.len() as u64 != index {
        return Err(Error::InvalidTable(format!(
            "quotient by {k} has {index} elements, table has {}",
            table.len()
        )));
    }
    let class = table_class(&table);
    Ok((CharFnExpr::pullback(h.clone(), sub, table)?, class))
}

/// `|p|, |q| > 1`: tables on `H/pH` and `H/qH` for the `(p−q)`-local `H`.
pub fn case1a_construct(
    spec: &CaseSpec,
    table1: Option<Vec<Rational>>,
    table2: Option<Vec<Rational>>,
) -> Result<ConstructionResult> {
    if spec.p.abs() == 1 || spec.q.abs() == 1 {
        return Err(Error::InvalidArgument(
            "|p| = 1 or |q| = 1: use the split construction".into(),
        ));
    }
    let host = spec.host();
    let h = SubgroupSpec::local(&host, spec.s())?;
    let (mu1, c1) = quotient_pullback(&h, spec.p, table1)?;
    let (mu2, c2) = quotient_pullback(&h, spec.q, table2)?;
    ConstructionResult {
        name: "local-quotients".into(),
        provenance: format!(
            "pullbacks from H/{}H and H/{}H, H the {}-local subgroup",
            spec.p.abs(),
            spec.q.abs(),
            spec.s().abs()
        ),
        p: spec.p,
        q: spec.q,
        mu1,
        mu2,
        equation: EquationSpec::symmetry(spec.p, spec.q),
        expected_class1: c1,
        expected_class2: c2,
        default_grid: local_box(&host, spec.s()),
    }
    .checked()
}

/// `p = 1`, `q = q₁q₂` with `|q_j| > 1`: tables on `H/q₁H` and `H/q₂H`,
/// checked against the split equation.
pub fn case1b_construct(
    spec: &CaseSpec,
    q1: i64,
    q2: i64,
    table1: Option<Vec<Rational>>,
    table2: Option<Vec<Rational>>,
) -> Result<ConstructionResult> {
    if spec.p != 1 {
        return Err(Error::InvalidArgument("normalize to p = 1 first".into()));
    }
    if q1 * q2 != spec.q {
        return Err(Error::InvalidArgument(format!("{q1} * {q2} != {}", spec.q)));
    }
    if q1.abs() <= 1 || q2.abs() <= 1 {
        return Err(Error::Hypothesis(format!(
            "q = {} admits no split with |q1|, |q2| > 1; use the prime-q constructions",
            spec.q
        )));
    }
    let host = spec.host();
    let h = SubgroupSpec::local(&host, spec.s())?;
    let (mu1, c1) = quotient_pullback(&h, q1, table1)?;
    let (mu2, c2) = quotient_pullback(&h, q2, table2)?;
    ConstructionResult {
        name: "split-local-quotients".into(),
        provenance: format!(
            "pullbacks from H/{}H and H/{}H, H the {}-local subgroup",
            q1.abs(),
            q2.abs(),
            spec.s().abs()
        ),
        p: 1,
        q: spec.q,
        mu1,
        mu2,
        equation: EquationSpec::split_symmetry(q1, q2),
        expected_class1: c1,
        expected_class2: c2,
        default_grid: local_box(&host, spec.s()),
    }
    .checked()
}

/// `p = 1, q = −3`: `μ₁ = e^{−3y²}·ω₁`, `μ₂ = e^{−y²}·1_H` with `H` the
/// dyadic rationals, `L = H + ⟨1/3⟩` and `ω₁ = ½(1_H + 1_L)`.
pub fn remark2_pair(profile: &PrimeProfile) -> Result<ConstructionResult> {
    if !profile.heyde_admissible() {
        return Err(Error::Hypothesis(
            "multiplication by 2 and 3 must be automorphisms".into(),
        ));
    }
    let host = Host::ha(profile.clone());
    let h = SubgroupSpec::bounded(&host, PrimeProfile::infinite(&[2])?)?;
    let l = SubgroupSpec::bounded(
        &host,
        PrimeProfile::infinite(&[2])?.with(3, crate::group::Multiplicity::Finite(1))?,
    )?;
    let half = rat(1, 2);
    let omega1 = CharFnExpr::mixture(
        vec![half.clone(), half],
        vec![CharFnExpr::indicator(h.clone()), CharFnExpr::indicator(l)],
    )?;
    let mu1 = CharFnExpr::product(vec![CharFnExpr::gaussian(rat(3, 1)), omega1]);
    let mu2 = CharFnExpr::product(vec![CharFnExpr::gaussian(rat(1, 1)), CharFnExpr::indicator(h)]);
    ConstructionResult {
        name: "gaussian-coset".into(),
        provenance: "Gaussians 3 and 1 times the dyadic/one-third coset mixture and the dyadic indicator".into(),
        p: 1,
        q: -3,
        mu1,
        mu2,
        equation: EquationSpec::symmetry(1, -3),
        expected_class1: ClassTag::Outside,
        expected_class2: ClassTag::GaussianTimesIdempotent,
        default_grid: GridSpec::boxed(host, 24, 24),
    }
    .checked()
}

/// Nonzero nonnegative `(λ₁, λ₂)` with `λ₁p + λ₂q = 0`; none when `pq > 0`.
pub fn gaussian_sym_pair(p: i64, q: i64) -> Option<(Rational, Rational)> {
    if p == 0 || q == 0 || p.signum() == q.signum() {
        return None;
    }
    let g = gcd_i64(p, q);
    Some((Rational::from_int(q.abs() / g), Rational::from_int(p.abs() / g)))
}

/// The Gaussian pair of [`gaussian_sym_pair`] on `H_a` for the primes of
/// `p, q, p ± q`, 2 and 3.
pub fn gaussian_construct(p: i64, q: i64) -> Result<ConstructionResult> {
    let (l1, l2) = gaussian_sym_pair(p, q).ok_or_else(|| {
        Error::Hypothesis(format!("pq > 0: only the degenerate pair solves ({p}, {q})"))
    })?;
    let mut primes = vec![2, 3];
    for n in [p, q, p + q, p - q] {
        if n != 0 {
            primes.extend(prime_divisors(n.unsigned_abs()));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let host = Host::ha(PrimeProfile::infinite(&primes)?);
    ConstructionResult {
        name: "gaussian".into(),
        provenance: format!("Gaussian pair with coefficients {l1} and {l2}"),
        p,
        q,
        mu1: CharFnExpr::gaussian(l1),
        mu2: CharFnExpr::gaussian(l2),
        equation: EquationSpec::symmetry(p, q),
        expected_class1: ClassTag::GaussianClass,
        expected_class2: ClassTag::GaussianClass,
        default_grid: GridSpec::boxed(host, 6, 12),
    }
    .checked()
}

/// Checks `qv = −v` for every `v` in `Y_(|2m+1|)`, `q = 4m + 1`.
pub fn odd_torsion_negation(q: i64) -> Result<bool> {
    let c = lemma3_construct(q, None)?;
    let GridSpec::Truncation { host, .. } = &c.default_grid else {
        unreachable!("torsion constructions use truncation grids")
    };
    let n = ((q - 1).div_euclid(2) + 1).unsigned_abs();
    let torsion = SubgroupSpec::torsion(host, n)?;
    let elements = torsion.elements()?;
    Ok(elements.len() as u64 == n && elements.iter().all(|v| v.scale(q) == v.neg()))
}

/// Every construction with its default parameters.
pub fn catalog() -> Result<Vec<ConstructionResult>> {
    let c = default_c();
    let profile = PrimeProfile::infinite(&[2, 3, 5, 7])?;
    let mut out = Vec::new();
    for q in [2, -2, 3, 7, -5] {
        out.push(lemma2_construct(q, &c)?);
    }
    for q in [5, 13] {
        out.push(lemma3_construct(q, None)?);
    }
    out.push(case1a_construct(&CaseSpec::new(2, 5, profile.clone())?, None, None)?);
    let split = CaseSpec::new(1, 6, profile)?;
    out.push(case1b_construct(&split, 2, 3, None, None)?);
    out.push(case1b_construct(&split, 3, 2, None, None)?);
    out.push(remark2_pair(&PrimeProfile::infinite(&[2, 3])?)?);
    out.push(gaussian_construct(1, -3)?);
    out.push(gaussian_construct(2, -1)?);
    Ok(out)
}

impl ConstructionResult {
    /// Unique label within [`catalog`].
    pub fn label(&self) -> String {
        match &self.equation.name[..] {
            "split-symmetry" => format!(
                "{}(q1={},q2={})",
                self.name, self.equation.left[0].u, self.equation.left[1].v
            ),
            _ => format!("{}(p={},q={})", self.name, self.p, self.q),
        }
    }
}
