//! The default verification matrix: every construction against its
//! equation, class, positive definiteness, the independence implication and
//! the finite-model oracle, plus negative controls that must fail.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::charfn::{classify, psd_check, CharFnExpr};
use crate::constructions::{
    catalog, default_c, lemma2_construct, lemma2_construct_unchecked, lemma3_construct,
    odd_torsion_negation, ConstructionResult,
};
use crate::error::Result;
use crate::finmodel::{crossvalidate_lemma1, FiniteModel};
use crate::group::{Host, PrimeProfile};
use crate::rational::{rat, Rational};
use crate::value::ExactValue;
use crate::verify::{
    check_lemma6_implication, derive_t2_identities, gaussian_residual, lemma7_subgroup,
    lemma8_extract, lemma8_extract_with, symmetry_holds_for_gaussians, verify_equation,
    EquationSpec, GridSpec, Status,
};
use crate::value::CfValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Small,
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteOptions {
    pub level: Level,
    /// Adds a construction with an invalid table, which must turn the run red.
    #[serde(default)]
    pub plant_fault: bool,
    #[serde(default)]
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            level: Level::Small,
            plant_fault: false,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub expected: Expectation,
    pub observed: String,
    pub green: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub level: Level,
    pub entries: Vec<SuiteEntry>,
    pub passed: usize,
    pub failed: usize,
    pub all_green: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub report: SuiteReport,
    /// Milliseconds per entry; kept apart so reports compare byte for byte.
    pub timing: BTreeMap<String, f64>,
}

struct Runner {
    entries: Vec<SuiteEntry>,
    timing: BTreeMap<String, f64>,
}

/// What a check observed, and whether it passed.
type Outcome = (bool, String);

impl Runner {
    fn run(&mut self, name: String, expected: Expectation, check: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (passed, observed) = match check() {
            Ok(o) => o,
            Err(e) => (false, format!("error: {e}")),
        };
        self.timing.insert(name.clone(), start.elapsed().as_secs_f64() * 1e3);
        let green = passed == (expected == Expectation::Pass);
        self.entries.push(SuiteEntry {
            name,
            expected,
            observed,
            green,
        });
    }
}

fn enlarge(grid: &GridSpec, level: Level) -> GridSpec {
    if level == Level::Small {
        return grid.clone();
    }
    match grid.clone() {
        GridSpec::Truncation { host, order } => {
            let p = match &host {
                Host::Prufer { p } => *p,
                _ => 1,
            };
            GridSpec::Truncation {
                host,
                order: order * p * p,
            }
        }
        GridSpec::Box {
            host,
            denominator,
            bound,
        } => GridSpec::Box {
            host,
            denominator,
            bound: bound * 2,
        },
        g => g,
    }
}

fn status_outcome(status: Status, pairs: u64, want: Status) -> Outcome {
    (status == want, format!("{status} ({pairs} pairs)"))
}

fn random_point_sets(c: &ConstructionResult, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<crate::group::DualElement>>> {
    let pts = c.default_grid.points()?;
    Ok((0..5)
        .map(|_| {
            let size = rng.random_range(1..=10.min(pts.len()));
            pts.choose_multiple(rng, size).cloned().collect()
        })
        .collect())
}

fn construction_entries(r: &mut Runner, c: &ConstructionResult, opts: &SuiteOptions, rng: &mut ChaCha8Rng) {
    let label = c.label();
    let grid = enlarge(&c.default_grid, opts.level);
    let fns = c.functions();
    r.run(format!("{label}/equation"), Expectation::Pass, || {
        let rep = verify_equation(&c.equation, &fns, &grid, 1e-9)?;
        Ok(status_outcome(rep.status, rep.pairs_checked, Status::Verified))
    });
    r.run(format!("{label}/classes"), Expectation::Pass, || {
        let (a, b) = (classify(&c.mu1).tag, classify(&c.mu2).tag);
        Ok((
            a == c.expected_class1 && b == c.expected_class2,
            format!("{a}, {b}"),
        ))
    });
    let sets = random_point_sets(c, rng);
    r.run(format!("{label}/positive-definite"), Expectation::Pass, || {
        let sets = sets?;
        let mut worst = f64::INFINITY;
        for pts in &sets {
            for f in [&c.mu1, &c.mu2] {
                let rep = psd_check(f, pts, 1e-9)?;
                if !rep.psd {
                    return Ok((false, format!("not PSD, min eigenvalue {:e}", rep.min_eigenvalue)));
                }
                worst = worst.min(rep.min_eigenvalue);
            }
        }
        Ok((true, format!("PSD on {} point sets, min eigenvalue {worst:.3e}", sets.len())))
    });
    if c.equation.name == "symmetry" {
        r.run(format!("{label}/independence-implication"), Expectation::Pass, || {
            let rep = check_lemma6_implication(&fns, c.p, c.q, &grid, 1e-9)?;
            Ok((
                rep.implication_holds,
                format!("premise {}, conclusion {}", rep.premise.status, rep.conclusion.status),
            ))
        });
    }
}

fn torsion_controls(r: &mut Runner, level: Level) {
    let max_k = if level == Level::Small { 6 } else { 8 };
    let host = Host::prufer(2).expect("2 is prime");
    for q in [2, -2, 3, 7, -5] {
        for k in 3..=max_k {
            r.run(format!("two-torsion(q={q})/Z(2^{k})"), Expectation::Pass, || {
                let c = lemma2_construct(q, &default_c())?;
                let rep = verify_equation(&c.equation, &c.functions(), &GridSpec::truncation(host.clone(), 1 << k), 0.0)?;
                Ok(status_outcome(rep.status, rep.pairs_checked, Status::Verified))
            });
        }
    }
    for q in [5, 13] {
        r.run(format!("control/two-torsion-forced(q={q})"), Expectation::Fail, || {
            let c = lemma2_construct_unchecked(q, &default_c())?;
            let rep = verify_equation(&c.equation, &c.functions(), &c.default_grid, 0.0)?;
            let w = rep
                .witness
                .as_ref()
                .map(|w| format!(" at (u,v) = ({}, {})", w.u, w.v))
                .unwrap_or_default();
            Ok((rep.status == Status::Verified, format!("{}{w}", rep.status)))
        });
    }
    for q in [5, 13] {
        r.run(format!("odd-torsion(q={q})/negation"), Expectation::Pass, || {
            let ok = odd_torsion_negation(q)?;
            Ok((ok, format!("qv = -v on the torsion: {ok}")))
        });
    }
}

fn oracle_entries(r: &mut Runner) {
    let mut triples: Vec<(String, CharFnExpr, i64, FiniteModel)> = Vec::new();
    for q in [2, -2, 3, 7, -5] {
        let c = lemma2_construct(q, &default_c()).expect("valid construction");
        for k in 1..=5 {
            triples.push((c.label(), c.mu1.clone(), q, FiniteModel::cyclic(1 << k).expect("positive")));
        }
    }
    for (q, orders) in [(5, vec![3, 9, 27]), (13, vec![7, 49])] {
        let c = lemma3_construct(q, None).expect("valid construction");
        for n in orders {
            triples.push((c.label(), c.mu1.clone(), q, FiniteModel::cyclic(n).expect("positive")));
        }
    }
    for q in [5, 13] {
        let c = lemma2_construct_unchecked(q, &default_c()).expect("valid table");
        for n in [8, 16] {
            triples.push((c.label(), c.mu1.clone(), q, FiniteModel::cyclic(n).expect("positive")));
        }
    }
    for (label, f, q, model) in triples {
        r.run(format!("finite-model/{label}/Z({})", model.order()), Expectation::Pass, || {
            let rep = crossvalidate_lemma1(&f, &f, &model, 1, q)?;
            Ok((
                rep.agree,
                format!(
                    "equation {}, enumeration symmetric = {}, deviation {}",
                    rep.equation.status, rep.enumeration.symmetric, rep.enumeration.worst_deviation
                ),
            ))
        });
    }
}

fn gaussian_entries(r: &mut Runner) {
    r.run("gaussian/criteria(|p|,|q|<=7)".into(), Expectation::Pass, || {
        let mut checked = 0;
        for p in -7i64..=7 {
            for q in -7i64..=7 {
                if p == 0 || q == 0 || p + q == 0 || crate::number::gcd_i64(p, q) != 1 {
                    continue;
                }
                for l1 in 0..=4 {
                    for l2 in 0..=4 {
                        let (a, b) = (Rational::from_int(l1), Rational::from_int(l2));
                        let sym = symmetry_holds_for_gaussians(p, q, &a, &b);
                        let ind = gaussian_residual(
                            &EquationSpec::normalized_independence(p, q),
                            &[a.clone(), b.clone()],
                        )
                        .is_zero();
                        let pos = l1 * p + l2 * q == 0;
                        let lin = 4 * p * q * l1 + (p + q) * (p + q) * l2 == 0;
                        if sym != pos || ind != lin || (p * q > 0 && lin && (l1, l2) != (0, 0)) {
                            return Ok((false, format!("mismatch at p={p}, q={q}, lambda=({l1},{l2})")));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok((true, format!("{checked} cases")))
    });
    r.run("control/gaussian-same-sign(p=1,q=3)".into(), Expectation::Fail, || {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3])?);
        let fns = [CharFnExpr::gaussian(rat(3, 1)), CharFnExpr::gaussian(rat(1, 1))];
        let rep = verify_equation(&EquationSpec::symmetry(1, 3), &fns, &GridSpec::boxed(host, 6, 6), 1e-9)?;
        Ok((rep.is_verified(), rep.status.to_string()))
    });
    r.run("gaussian/diagonal-identities".into(), Expectation::Pass, || {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3])?);
        let fns = [CharFnExpr::gaussian(rat(1, 2)), CharFnExpr::gaussian(rat(3, 2))];
        let rep = derive_t2_identities(&fns, 1, -3, &GridSpec::boxed(host, 6, 6), 1e-9)?;
        Ok((
            rep.premise.is_verified() && rep.implication_holds,
            format!("premise {}, {}, {}", rep.premise.status, rep.first.status, rep.second.status),
        ))
    });
    r.run("gaussian/nonvanishing-subgroup".into(), Expectation::Pass, || {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3])?);
        let g = CharFnExpr::gaussian(rat(1, 1));
        let rep = lemma7_subgroup(&g, &g, 4, 9, &host.element(rat(5, 3))?, 50)?;
        Ok((rep.holds, format!("generator {}, window {}", rep.generator, rep.window)))
    });
    r.run("gaussian/extraction(5,2)".into(), Expectation::Pass, || {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3])?);
        let rep = lemma8_extract(
            &CharFnExpr::gaussian(rat(5, 1)),
            &CharFnExpr::gaussian(rat(2, 1)),
            1,
            2,
            &host.element(rat(1, 6))?,
            50,
            1e-10,
        )?;
        Ok((
            rep.accepted && rep.lambda1.value == 5.0 && rep.lambda2.value == 2.0,
            format!("lambda = ({}, {}), residual {:e}", rep.lambda1.value, rep.lambda2.value, rep.max_residual),
        ))
    });
    r.run("control/extraction-linear-term".into(), Expectation::Fail, || {
        let host = Host::ha(PrimeProfile::infinite(&[2, 3])?);
        let planted = |y: &crate::group::DualElement| {
            let v = y.value();
            Ok(CfValue::Exact(ExactValue::exp_neg(v.square() + v)))
        };
        let rep = lemma8_extract_with(&planted, &planted, 1, 2, &host.element(rat(1, 1))?, 50, 1e-10)?;
        Ok((rep.accepted, format!("residual {:e}", rep.max_residual)))
    });
}

fn admissibility_entry(r: &mut Runner, seed: u64) {
    r.run("profiles/admissibility".into(), Expectation::Pass, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let mut profile = PrimeProfile::empty();
            for p in [2u64, 3, 5, 7, 11] {
                if rng.random_bool(0.6) {
                    profile = profile.with(p, crate::group::Multiplicity::Infinite)?;
                }
            }
            let mut found = false;
            'search: for p in -12i64..=12 {
                for q in -12i64..=12 {
                    if p == 0 || q == 0 || crate::number::gcd_i64(p, q) != 1 {
                        continue;
                    }
                    let ns = [p, q, p + q, p - q];
                    if ns.iter().all(|&n| n != 0) && ns.iter().all(|&n| profile.is_automorphism(n).unwrap_or(false)) {
                        found = true;
                        break 'search;
                    }
                }
            }
            if found != profile.heyde_admissible() {
                return Ok((false, format!("disagreement on {profile:?}")));
            }
        }
        Ok((true, "10 profiles agree".into()))
    });
}

fn planted_fault(r: &mut Runner) {
    r.run("planted/two-torsion(c=2)/positive-definite".into(), Expectation::Pass, || {
        let host = Host::prufer(2)?;
        let f = CharFnExpr::TorsionExtension {
            host: host.clone(),
            order: 2,
            table: vec![Rational::one(), rat(2, 1)],
        };
        let pts = [host.zero(), host.element(rat(1, 2))?];
        let rep = psd_check(&f, &pts, 1e-9)?;
        Ok((rep.psd, format!("psd = {}, min eigenvalue {}", rep.psd, rep.min_eigenvalue)))
    });
}

pub fn run_suite(opts: &SuiteOptions) -> SuiteRun {
    let mut r = Runner {
        entries: Vec::new(),
        timing: BTreeMap::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    match catalog() {
        Ok(cs) => {
            for c in &cs {
                construction_entries(&mut r, c, opts, &mut rng);
            }
        }
        Err(e) => r.run("catalog".into(), Expectation::Pass, || Err(e)),
    }
    torsion_controls(&mut r, opts.level);
    oracle_entries(&mut r);
    gaussian_entries(&mut r);
    admissibility_entry(&mut r, opts.seed);
    if opts.plant_fault {
        planted_fault(&mut r);
    }
    r.entries.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = r.entries.iter().filter(|e| e.green).count();
    let failed = r.entries.len() - passed;
    SuiteRun {
        report: SuiteReport {
            level: opts.level,
            passed,
            failed,
            all_green: failed == 0,
            entries: r.entries,
        },
        timing: r.timing,
    }
}
