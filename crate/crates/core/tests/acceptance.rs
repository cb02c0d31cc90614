//! Acceptance criteria. Each criterion prints one line; the process exits
//! nonzero when any of them fails.

mod common;

use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use common::*;
use heyde::charfn::{classify, CharFnExpr, ClassTag};
use heyde::constructions::{
    case1a_construct, case1b_construct, catalog, lemma2_construct, lemma2_construct_unchecked,
    lemma3_construct, odd_torsion_negation, remark2_pair, CaseSpec,
};
use heyde::finmodel::{charfn_to_pmf, crossvalidate_lemma1, FiniteModel};
use heyde::group::{DualElement, Host, Multiplicity, PrimeProfile};
use heyde::suite::{run_suite, Expectation, Level, SuiteOptions};
use heyde::value::{CfValue, ExactValue};
use heyde::verify::{
    check_lemma6_implication, heyde_to_independence, lambda_constraint, lemma8_extract,
    lemma8_extract_with, verify_equation, EquationSpec, GridSpec, LambdaSolution, Status,
};
use heyde::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute tolerance for floating comparisons in equation checks.
const TOL: f64 = 1e-9;
/// Residual bound for Gaussian coefficient extraction.
const EXTRACTION_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

/// Label, distribution, torsion order, model order, p, q.
type Triple = (String, CharFnExpr, i64, i64, i64, i64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Gaussian coset pair on the box `{m/24 : |m| ≤ 24}`.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = remark2_pair(&PrimeProfile::infinite(&[2, 3]).map_err(fail)?).map_err(fail)?;
    let grid = GridSpec::boxed(c.default_grid.host().clone(), 24, 24);
    let report = verify_equation(&c.equation, &c.functions(), &grid, TOL).map_err(fail)?;
    within(start.elapsed(), Duration::from_secs(5))?;

    // ω₁ = 1 on dyadics, 1/2 on denominators 2^k·3, 0 elsewhere; ω₂ = 1_dyadic.
    let omega1 = |m: i64| {
        let (_, d) = reduced(m, 24);
        if only_primes(d, &[2]) {
            r(1, 1)
        } else if only_primes(d, &[2, 3]) && d % 9 != 0 {
            r(1, 2)
        } else {
            r(0, 1)
        }
    };
    let omega2 = |m: i64| {
        let (_, d) = reduced(m, 24);
        if only_primes(d, &[2]) {
            r(1, 1)
        } else {
            r(0, 1)
        }
    };
    let exponent = |a: i64, b: i64| r(3 * a * a + b * b, 24 * 24);
    let mut oracle_failure = None;
    for u in -24..=24 {
        for v in -24..=24 {
            let cl = omega1(u + v) * omega2(u - 3 * v);
            let cr = omega1(u - v) * omega2(u + 3 * v);
            let both_zero = cl.is_zero() && cr.is_zero();
            let holds = both_zero || (cl == cr && exponent(u + v, u - 3 * v) == exponent(u - v, u + 3 * v));
            if !holds && oracle_failure.is_none() {
                oracle_failure = Some((u, v));
            }
        }
    }
    ensure(oracle_failure.is_none(), || format!("reference check fails at {oracle_failure:?} / 24"))?;
    ensure(report.status == Status::Verified, || format!("library reports {}", report.status))?;
    ensure(report.pairs_checked == 49 * 49 && report.exact_pairs == report.pairs_checked, || {
        format!("{} pairs, {} exact", report.pairs_checked, report.exact_pairs)
    })?;
    Ok(format!("{} pairs, all exact, {:.2?}", report.pairs_checked, start.elapsed()))
}

/// `g = [1, c]` on `ℤ(2)` extended by zero, at `j/2^k`.
fn two_torsion_value(j: i64, k: u32, c: &Rational) -> Rational {
    let n = 1i64 << k;
    extension_value(j, n, 2, c)
}

/// Two-torsion pair on `ℤ(2^k)`, `k = 3..6`, plus the forced controls.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let c = r(1, 3);
    let host = Host::prufer(2).map_err(fail)?;
    let mut pairs_at_64 = 0;
    for q in [2, -2, 3, 7, -5] {
        let cons = lemma2_construct(q, &c).map_err(fail)?;
        for k in 3..=6u32 {
            let n = 1i64 << k;
            let grid = GridSpec::truncation(host.clone(), n as u64);
            let rep = verify_equation(&cons.equation, &cons.functions(), &grid, TOL).map_err(fail)?;
            let g = |j: i64| two_torsion_value(j, k, &c);
            let oracle = cyclic_symmetry_failure(&g, &g, n, 1, q);
            ensure(oracle.is_none(), || format!("reference check fails for q = {q}, k = {k} at {oracle:?}"))?;
            ensure(rep.status == Status::Verified, || format!("q = {q}, k = {k}: {}", rep.status))?;
            if k == 6 {
                pairs_at_64 = rep.pairs_checked;
            }
        }
    }
    ensure(pairs_at_64 >= 4096, || format!("only {pairs_at_64} pairs at k = 6"))?;
    let mut witnesses = Vec::new();
    for q in [5, 13] {
        let cons = lemma2_construct_unchecked(q, &c).map_err(fail)?;
        let k = 6;
        let n = 1i64 << k;
        let grid = GridSpec::truncation(host.clone(), n as u64);
        let rep = verify_equation(&cons.equation, &cons.functions(), &grid, TOL).map_err(fail)?;
        ensure(rep.status == Status::Violated, || format!("control q = {q}: {}", rep.status))?;
        let w = rep.witness.ok_or_else(|| format!("control q = {q}: no witness"))?;
        let (u, v) = (
            (w.u.clone() * Rational::from_int(n)).to_i64().ok_or("witness off grid")?,
            (w.v.clone() * Rational::from_int(n)).to_i64().ok_or("witness off grid")?,
        );
        let g = |j: i64| two_torsion_value(j, k, &c);
        let (lhs, rhs) = (g(u + v) * g(u + q * v), g(u - v) * g(u - q * v));
        ensure(lhs != rhs, || format!("control q = {q}: witness ({u}, {v}) does not fail"))?;
        let reported = (Rational::from_str(&w.lhs.text), Rational::from_str(&w.rhs.text));
        ensure(reported == (Ok(lhs.clone()), Ok(rhs.clone())), || {
            format!("control q = {q}: witness values {reported:?} vs {lhs}, {rhs}")
        })?;
        witnesses.push(format!("q={q} at ({}, {})", w.u, w.v));
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "20 grids verified, {pairs_at_64} pairs at k = 6; controls violated: {}",
        witnesses.join(", ")
    ))
}

/// Odd-torsion pairs for `q = 5` on `ℤ(3⁴)` and `q = 13` on `ℤ(7²)`.
fn criterion_3() -> Outcome {
    let c = r(1, 3);
    let mut summary = Vec::new();
    for (q, p_host, order) in [(5i64, 3u64, 81i64), (13, 7, 49)] {
        let n = (q - 1) / 2 + 1;
        let table: Vec<Rational> = (0..n).map(|i| if i == 0 { r(1, 1) } else { c.clone() }).collect();
        let cons = lemma3_construct(q, Some(table)).map_err(fail)?;
        let grid = GridSpec::truncation(Host::prufer(p_host).map_err(fail)?, order as u64);
        let rep = verify_equation(&cons.equation, &cons.functions(), &grid, TOL).map_err(fail)?;
        let g = |j: i64| extension_value(j, order, n, &c);
        let oracle = cyclic_symmetry_failure(&g, &g, order, 1, q);
        ensure(oracle.is_none(), || format!("reference check fails for q = {q} at {oracle:?}"))?;
        ensure(rep.status == Status::Verified, || format!("q = {q}: {}", rep.status))?;
        ensure(rep.pairs_checked == (order * order) as u64, || format!("q = {q}: {} pairs", rep.pairs_checked))?;
        let negation = (0..n).all(|j| (q * j + j) % n == 0);
        ensure(negation, || format!("q = {q} does not act as -1 on the {n}-torsion"))?;
        ensure(odd_torsion_negation(q).map_err(fail)?, || format!("library negation check fails for q = {q}"))?;
        summary.push(format!("q={q}: {} pairs, qv = -v on Y({n})", rep.pairs_checked));
    }
    Ok(summary.join("; "))
}

/// Local-quotient value: 0 off `ℤ[1/s]`, 1 on `kH`, `c` on the rest of `H`.
fn local_value(m: i64, den: i64, s_primes: &[i64], k: i64, c: &Rational) -> Rational {
    let (a, d) = reduced(m, den);
    if !only_primes(d, s_primes) {
        Rational::zero()
    } else if a % k == 0 {
        Rational::one()
    } else {
        c.clone()
    }
}

/// Local-quotient constructions for `(2, 5)` and `(1, 6)`.
fn criterion_4() -> Outcome {
    let c = r(1, 3);
    let profile = PrimeProfile::infinite(&[2, 3, 5, 7]).map_err(fail)?;
    let mut summary = Vec::new();

    let a = case1a_construct(&CaseSpec::new(2, 5, profile.clone()).map_err(fail)?, None, None).map_err(fail)?;
    let GridSpec::Box { denominator, bound, .. } = a.default_grid.clone() else {
        return Err("local quotient grid is not a box".into());
    };
    ensure(denominator == 27 && bound == 20, || format!("grid {denominator}, {bound}"))?;
    let rep = verify_equation(&a.equation, &a.functions(), &a.default_grid, TOL).map_err(fail)?;
    let den = denominator as i64;
    let mut failure = None;
    for u in -20..=20 {
        for v in -20..=20 {
            let lhs = local_value(u + 2 * v, den, &[3], 2, &c) * local_value(u + 5 * v, den, &[3], 5, &c);
            let rhs = local_value(u - 2 * v, den, &[3], 2, &c) * local_value(u - 5 * v, den, &[3], 5, &c);
            if lhs != rhs && failure.is_none() {
                failure = Some((u, v));
            }
        }
    }
    ensure(failure.is_none(), || format!("(2,5) reference check fails at {failure:?}"))?;
    ensure(rep.status == Status::Verified, || format!("(2,5): {}", rep.status))?;
    summary.push(format!("(2,5) {} pairs", rep.pairs_checked));
    let mut classes = vec![(a.label(), a.mu1.clone()), (a.label(), a.mu2.clone())];

    let split = CaseSpec::new(1, 6, profile).map_err(fail)?;
    for (q1, q2) in [(2i64, 3i64), (3, 2)] {
        let b = case1b_construct(&split, q1, q2, None, None).map_err(fail)?;
        let rep = verify_equation(&b.equation, &b.functions(), &b.default_grid, TOL).map_err(fail)?;
        let GridSpec::Box { denominator, bound, .. } = b.default_grid.clone() else {
            return Err("split grid is not a box".into());
        };
        ensure(denominator == 125 && bound == 20, || format!("grid {denominator}, {bound}"))?;
        let den = denominator as i64;
        let mut failure = None;
        for u in -20..=20 {
            for v in -20..=20 {
                let lhs = local_value(q1 * u + v, den, &[5], q1, &c) * local_value(u + q2 * v, den, &[5], q2, &c);
                let rhs = local_value(q1 * u - v, den, &[5], q1, &c) * local_value(u - q2 * v, den, &[5], q2, &c);
                if lhs != rhs && failure.is_none() {
                    failure = Some((u, v));
                }
            }
        }
        ensure(failure.is_none(), || format!("(1,6) split {q1}*{q2} reference check fails at {failure:?}"))?;
        ensure(rep.status == Status::Verified, || format!("(1,6) split {q1}*{q2}: {}", rep.status))?;
        summary.push(format!("(1,6) split {q1}*{q2} {} pairs", rep.pairs_checked));
        classes.push((b.label(), b.mu1.clone()));
        classes.push((b.label(), b.mu2.clone()));
    }
    for (label, f) in &classes {
        let cl = classify(f);
        ensure(cl.tag == ClassTag::Outside && cl.certificate.is_some(), || {
            format!("{label}: classified {:?}", cl.tag)
        })?;
    }
    summary.push(format!("{} distributions certified outside", classes.len()));
    Ok(summary.join("; "))
}

/// Gaussian pairs: verdicts against the closed-form coefficient conditions.
fn criterion_5() -> Outcome {
    let host = Host::ha(PrimeProfile::universal());
    let grid = GridSpec::boxed(host, 6, 6);
    let gauss = |l: i64| CharFnExpr::gaussian(Rational::from_int(l));
    let mut cases = 0;
    let mut checks = 0;
    for p in -7i64..=7 {
        for q in -7i64..=7 {
            if p == 0 || q == 0 || p + q == 0 || gcd(p, q) != 1 {
                continue;
            }
            cases += 1;
            let (m, s) = (4 * p * q, (p + q) * (p + q));
            let mut lambdas = vec![(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1)];
            if p * q < 0 {
                lambdas.push((q.abs(), p.abs()));
                lambdas.push((s, -m));
            }
            for (l1, l2) in lambdas {
                let fns = [gauss(l1), gauss(l2)];
                let sym = verify_equation(&EquationSpec::symmetry(p, q), &fns, &grid, TOL).map_err(fail)?;
                let want = l1 * p + l2 * q == 0;
                ensure(sym.is_verified() == want, || {
                    format!("symmetry ({p},{q}) lambda ({l1},{l2}): {} vs closed form {want}", sym.status)
                })?;
                let ind = verify_equation(&EquationSpec::normalized_independence(p, q), &fns, &grid, TOL)
                    .map_err(fail)?;
                let want = m * l1 + s * l2 == 0;
                ensure(ind.is_verified() == want, || {
                    format!("independence ({p},{q}) lambda ({l1},{l2}): {} vs closed form {want}", ind.status)
                })?;
                checks += 2;
            }
            let sol = lambda_constraint(p, q).map_err(fail)?;
            if p * q > 0 {
                let nonneg: Vec<(i64, i64)> = (0..=10)
                    .flat_map(|a| (0..=10).map(move |b| (a, b)))
                    .filter(|&(a, b)| m * a + s * b == 0)
                    .collect();
                ensure(nonneg == vec![(0, 0)], || format!("({p},{q}): search found {nonneg:?}"))?;
                ensure(sol == LambdaSolution::Trivial, || format!("({p},{q}): {sol:?}"))?;
            } else {
                let want = LambdaSolution::Ray { ratio: r(-m, s) };
                ensure(sol == want, || format!("({p},{q}): {sol:?}"))?;
            }
        }
    }
    Ok(format!("{cases} coefficient pairs, {checks} equation verdicts match"))
}

/// Symmetry implies independence of the transformed forms.
fn criterion_6() -> Outcome {
    let printed = heyde_to_independence(1, -3);
    ensure(printed == ((-2, -6), (2, -2)), || format!("(1,-3) transforms to {printed:?}"))?;
    let mut nonvacuous = 0;
    let mut vacuous = Vec::new();
    let all = catalog().map_err(fail)?;
    for c in &all {
        let rep = check_lemma6_implication(&c.functions(), c.p, c.q, &c.default_grid, TOL).map_err(fail)?;
        ensure(rep.implication_holds, || format!("{}: premise verified, conclusion {}", c.label(), rep.conclusion.status))?;
        if rep.premise.is_verified() {
            nonvacuous += 1;
        } else {
            vacuous.push(c.label());
        }
        // Gaussian pairs: independence of a₁ξ₁+a₂ξ₂, b₁ξ₁+b₂ξ₂ iff λ₁a₁b₁ + λ₂a₂b₂ = 0.
        if let (CharFnExpr::Gaussian { .. }, Some(l1), Some(l2)) = (&c.mu1, lambda_of(&c.mu1), lambda_of(&c.mu2)) {
            let ((a1, a2), (b1, b2)) = heyde_to_independence(c.p, c.q);
            let closed = l1.mul_int(a1 * b1) + l2.mul_int(a2 * b2);
            ensure(closed.is_zero() == rep.conclusion.is_verified(), || {
                format!("{}: closed form {closed} vs {}", c.label(), rep.conclusion.status)
            })?;
        }
    }
    ensure(vacuous.iter().all(|l| l.starts_with("split-local-quotients")), || {
        format!("unexpectedly vacuous: {vacuous:?}")
    })?;
    Ok(format!(
        "{nonvacuous} of {} constructions imply independence, vacuous for {}; (1,-3) -> (-2,-6)/(2,-2)",
        all.len(),
        vacuous.join(", ")
    ))
}

fn lambda_of(f: &CharFnExpr) -> Option<Rational> {
    let host = Host::ha(PrimeProfile::universal());
    let one = f.eval(&host.element(Rational::one()).ok()?).ok()?;
    match one.exact()?.single_term()? {
        (e, c) if c.as_rational()?.is_one() => Some(e.clone()),
        _ => None,
    }
}

/// Characteristic-function verdicts against exact enumeration on finite models.
fn criterion_7() -> Outcome {
    let c = r(1, 3);
    let mut triples: Vec<Triple> = Vec::new();
    for q in [2, -2, 3, 7, -5, 5, 13, -3] {
        let cons = lemma2_construct_unchecked(q, &c).map_err(fail)?;
        for big_n in [8, 16, 32] {
            triples.push((cons.label(), cons.mu1.clone(), 2, big_n, 1, q));
        }
    }
    let five = lemma3_construct(5, None).map_err(fail)?;
    for (p, q) in [(1, 5), (1, 2), (2, -1), (1, -1)] {
        triples.push((five.label(), five.mu1.clone(), 3, 27, p, q));
    }
    triples.push((five.label(), five.mu1.clone(), 3, 9, 1, 5));
    let thirteen = lemma3_construct(13, None).map_err(fail)?;
    for big_n in [7, 49] {
        triples.push((thirteen.label(), thirteen.mu1.clone(), 7, big_n, 1, 13));
    }
    triples.push((thirteen.label(), thirteen.mu1.clone(), 7, 49, 1, 3));

    let (mut sym, mut asym) = (0, 0);
    for (label, f, n, big_n, p, q) in &triples {
        let model = FiniteModel::cyclic(*big_n as u64).map_err(fail)?;
        let ctx = || format!("{label} on Z({big_n}) with ({p},{q})");
        let pmf = charfn_to_pmf(f, &model).map_err(fail)?;
        let reference = extension_pmf(*big_n, *n, &c);
        ensure(pmf.probabilities == reference, || format!("{}: inverse transform differs", ctx()))?;
        let deviation = cyclic_symmetry_deviation(&reference, &reference, *p, *q);
        let g = |j: i64| extension_value(j, *big_n, *n, &c);
        let direct = cyclic_symmetry_failure(&g, &g, *big_n, *p, *q).is_none();
        let report = crossvalidate_lemma1(f, f, &model, *p, *q).map_err(fail)?;
        let eq_ok = report.equation.is_verified();
        ensure(report.agree, || format!("{}: library verdicts disagree", ctx()))?;
        ensure(eq_ok == deviation.is_zero() && eq_ok == direct, || {
            format!("{}: equation {eq_ok}, reference enumeration {}, reference equation {direct}", ctx(), deviation.is_zero())
        })?;
        ensure(report.enumeration.worst_deviation == deviation, || {
            format!("{}: deviation {} vs {deviation}", ctx(), report.enumeration.worst_deviation)
        })?;
        if eq_ok {
            sym += 1;
        } else {
            asym += 1;
        }
    }
    ensure(triples.len() >= 30, || format!("only {} triples", triples.len()))?;
    Ok(format!("{} triples agree ({sym} symmetric with zero deviation, {asym} asymmetric)", triples.len()))
}

/// Gaussian coefficient extraction on `|k| ≤ 50`.
fn criterion_8() -> Outcome {
    let host = Host::ha(PrimeProfile::infinite(&[2, 3]).map_err(fail)?);
    let z = host.element(r(1, 6)).map_err(fail)?;
    let exact = lemma8_extract(
        &CharFnExpr::gaussian(r(5, 1)),
        &CharFnExpr::gaussian(r(2, 1)),
        1,
        2,
        &z,
        50,
        EXTRACTION_TOL,
    )
    .map_err(fail)?;
    ensure(exact.accepted && exact.max_residual < EXTRACTION_TOL, || format!("exact path: {exact:?}"))?;
    ensure(exact.lambda1.exact == Some(r(5, 1)) && exact.lambda2.exact == Some(r(2, 1)), || {
        format!("exact path recovered {:?}, {:?}", exact.lambda1, exact.lambda2)
    })?;
    // Finer step keeps e^{-5y^2} above f64 underflow on the whole window.
    let fine = host.element(r(1, 48)).map_err(fail)?;
    let float = lemma8_extract(
        &CharFnExpr::gaussian_f64(5.0),
        &CharFnExpr::gaussian_f64(2.0),
        1,
        2,
        &fine,
        50,
        EXTRACTION_TOL,
    )
    .map_err(fail)?;
    ensure(float.accepted && float.max_residual < EXTRACTION_TOL, || format!("fitted path: {float:?}"))?;
    ensure(
        (float.lambda1.value - 5.0).abs() < EXTRACTION_TOL && (float.lambda2.value - 2.0).abs() < EXTRACTION_TOL,
        || format!("fitted path recovered {}, {}", float.lambda1.value, float.lambda2.value),
    )?;
    let quartic = |y: &DualElement| Ok(CfValue::Exact(ExactValue::exp_neg(y.value().pow(4))));
    let linear = |y: &DualElement| Ok(CfValue::Exact(ExactValue::exp_neg(y.value().square() + y.value().clone())));
    let one = host.element(r(1, 1)).map_err(fail)?;
    for (name, phi) in [("y^4", &quartic as &dyn Fn(&DualElement) -> _), ("y^2 + y", &linear)] {
        let rep = lemma8_extract_with(phi, phi, 1, 2, &one, 50, EXTRACTION_TOL).map_err(fail)?;
        ensure(!rep.accepted, || format!("planted {name} accepted"))?;
    }
    Ok(format!(
        "(5, 2) recovered, residual {:.1e} exact and {:.1e} fitted; y^4 and y^2 + y rejected",
        exact.max_residual, float.max_residual
    ))
}

/// Admissibility against a search over `|p|, |q| ≤ 12`.
fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let primes = [2i64, 3, 5, 7, 11];
    let (mut yes, mut no) = (0, 0);
    for i in 0..10 {
        let infinite: Vec<i64> = if i < 2 {
            // One admissible and one inadmissible profile for certain.
            if i == 0 { vec![2, 3] } else { vec![2, 5, 7] }
        } else {
            primes.iter().copied().filter(|_| rng.random_bool(0.6)).collect()
        };
        let mut profile = PrimeProfile::empty();
        for &p in &primes {
            let m = if infinite.contains(&p) {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(rng.random_range(0..4))
            };
            profile = profile.with(p as u64, m).map_err(fail)?;
        }
        let aut = |n: i64| n != 0 && prime_factors(n).iter().all(|p| infinite.contains(p));
        let brute = (-12i64..=12).any(|p| {
            (-12i64..=12).any(|q| p != 0 && q != 0 && gcd(p, q) == 1 && [p, q, p + q, p - q].into_iter().all(aut))
        });
        ensure(profile.heyde_admissible() == brute, || {
            format!("profile {profile}: admissible {} vs search {brute}", profile.heyde_admissible())
        })?;
        if brute {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("10 profiles agree ({yes} admissible, {no} not)"))
}

/// The small suite.
fn criterion_10() -> Outcome {
    let start = Instant::now();
    let run = run_suite(&SuiteOptions {
        level: Level::Small,
        plant_fault: false,
        seed: 0,
    });
    let elapsed = start.elapsed();
    let r = &run.report;
    let red: Vec<&str> = r.entries.iter().filter(|e| !e.green).map(|e| e.name.as_str()).collect();
    ensure(r.all_green, || format!("red entries: {red:?}"))?;
    within(elapsed, Duration::from_secs(60))?;
    let negative = r.entries.iter().filter(|e| e.expected == Expectation::Fail).count();
    Ok(format!(
        "{} entries green ({} positive, {negative} negative controls red as expected) in {elapsed:.2?}",
        r.entries.len(),
        r.entries.len() - negative
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("coset Gaussian pair", criterion_1),
        ("two-torsion matrix", criterion_2),
        ("odd-torsion pairs", criterion_3),
        ("local quotients", criterion_4),
        ("Gaussian criteria", criterion_5),
        ("symmetry to independence", criterion_6),
        ("finite-model equivalence", criterion_7),
        ("Gaussian extraction", criterion_8),
        ("admissibility", criterion_9),
        ("small suite", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
