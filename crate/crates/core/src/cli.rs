//! Command-line front end.
//!
//! Every command prints a JSON envelope `{command, config, result, timing}`
//! where `config` is the merged configuration that produced `result`.
//! Exit codes: 0 success or outcome as expected, 1 outcome contrary to
//! expectation, 2 usage or input error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charfn::CharFnExpr;
use crate::constructions::{
    case1a_construct, case1b_construct, default_c, gaussian_construct, lemma2_construct,
    lemma2_construct_unchecked, lemma3_construct, remark2_pair, CaseSpec, ConstructionResult,
};
use crate::error::{Error, Result};
use crate::finmodel::{charfn_to_pmf, conditional_symmetry_enumerate, joint_law, sample_forms, FiniteModel};
use crate::group::PrimeProfile;
use crate::rational::Rational;
use crate::render::render;
use crate::suite::{run_suite, Level, SuiteOptions};
use crate::value::DEFAULT_TOLERANCE;
use crate::verify::{verify_equation, EquationKind, GridSpec, Status};

#[derive(Parser, Debug)]
#[command(name = "heyde", version, about = "Heyde-type characterization checks on a-adic solenoids")]
pub struct Cli {
    /// JSON file with the subcommand's parameters, or a previous report whose
    /// `config` is reused; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Do not print to stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Whether multiplication by n is an automorphism of the solenoid.
    Aut(AutArgs),
    /// Build one of the stored constructions.
    Construct(ConstructArgs),
    /// Check a functional equation on a grid.
    Verify(VerifyArgs),
    /// Exact or sampled joint law of the linear forms on a finite model.
    Simulate(SimulateArgs),
    /// Run the default verification matrix.
    Suite(SuiteArgs),
    /// Summarize a JSON report as text.
    Render(RenderArgs),
}

macro_rules! mergeable {
    ($t:ident { $($f:ident),* $(,)? }) => {
        impl $t {
            fn merge(self, file: $t) -> $t {
                $t { $($f: self.$f.or(file.$f)),* }
            }
        }
    };
}

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct AutArgs {
    /// Prime profile as inline JSON or a file, e.g. {"primes":{"2":"inf"}}.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}
mergeable!(AutArgs { profile, n });

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionName {
    TwoTorsion,
    TwoTorsionUnchecked,
    OddTorsion,
    LocalQuotients,
    SplitLocalQuotients,
    GaussianCoset,
    Gaussian,
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.into()))
            .map_err(|_| Error::Parse(format!("unknown construction {s:?}")))
    }
}

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct ConstructArgs {
    /// two-torsion, two-torsion-unchecked, odd-torsion, local-quotients,
    /// split-local-quotients, gaussian-coset or gaussian.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<ConstructionName>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q1: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q2: Option<i64>,
    /// Table value off the identity.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table2: Option<String>,
}
mergeable!(ConstructArgs { name, p, q, q1, q2, c, profile, table1, table2 });

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Verified,
    Violated,
}

impl FromStr for Expect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.into()))
            .map_err(|_| Error::Parse(format!("expected verified or violated, got {s:?}")))
    }
}

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<EquationKind>,
    /// Characteristic-function expression, inline JSON or a file.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist1: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist2: Option<String>,
    /// Grid specification, inline JSON or a file.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    /// Output of `construct`; supplies the pair, equation and grid.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Expected status: verified (default) or violated.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}
mergeable!(VerifyArgs { p, q, equation, dist1, dist2, grid, construction, tol, expect });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct SimulateArgs {
    /// Finite model, e.g. {"Z":[8]}.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist1: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist2: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    /// Exact enumeration (the default).
    #[arg(long, conflicts_with = "sample", num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    /// Draw this many samples instead of enumerating.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
mergeable!(SimulateArgs { model, p, q, dist1, dist2, construction, exact, sample, seed });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct SuiteArgs {
    /// small or full.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
    /// Include a construction with an invalid table.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plant_fault: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
mergeable!(SuiteArgs { level, plant_fault, seed });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct RenderArgs {
    /// Report file; stdin when absent or "-".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}
mergeable!(RenderArgs { report });

/// Inline JSON when it starts with `{` or `[`, otherwise a file path.
fn load_json<T: DeserializeOwned>(src: &str) -> Result<T> {
    let text = if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else {
        fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

/// A construction, either bare or inside a `construct` envelope.
fn load_construction(src: &str) -> Result<ConstructionResult> {
    let mut v: Value = load_json(src)?;
    if let Some(inner) = v.get_mut("result") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

fn load_config<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let mut v: Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            if let Some(inner) = v.get_mut("config") {
                v = inner.take();
            }
            serde_json::from_value(v).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")))
}

fn parse_table(s: &Option<String>) -> Result<Option<Vec<Rational>>> {
    s.as_ref()
        .map(|t| t.split(',').map(|x| Rational::from_str(x.trim())).collect())
        .transpose()
}

fn profile_or(s: &Option<String>, default: &[u64]) -> Result<PrimeProfile> {
    match s {
        Some(src) => load_json(src),
        None => PrimeProfile::infinite(default),
    }
}

/// Result of one command: JSON payload and exit code.
struct Outcome {
    result: Value,
    code: u8,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn cmd_aut(a: &AutArgs) -> Result<Outcome> {
    let profile: PrimeProfile = load_json(&required(a.profile.clone(), "profile")?)?;
    let n = required(a.n, "n")?;
    Ok(Outcome {
        result: json!({
            "isAut": profile.is_automorphism(n)?,
            "heydeAdmissible": profile.heyde_admissible(),
            "primeWitness": profile.prime_witness(n)?,
        }),
        code: 0,
    })
}

fn cmd_construct(a: &ConstructArgs) -> Result<Outcome> {
    let c = a.c.clone().unwrap_or_else(default_c);
    let (t1, t2) = (parse_table(&a.table1)?, parse_table(&a.table2)?);
    let r = match required(a.name, "name")? {
        ConstructionName::TwoTorsion => lemma2_construct(a.q.unwrap_or(3), &c)?,
        ConstructionName::TwoTorsionUnchecked => lemma2_construct_unchecked(a.q.unwrap_or(5), &c)?,
        ConstructionName::OddTorsion => lemma3_construct(a.q.unwrap_or(5), t1)?,
        ConstructionName::LocalQuotients => {
            let spec = CaseSpec::new(a.p.unwrap_or(2), a.q.unwrap_or(5), profile_or(&a.profile, &[2, 3, 5, 7])?)?;
            case1a_construct(&spec, t1, t2)?
        }
        ConstructionName::SplitLocalQuotients => {
            let spec = CaseSpec::new(1, a.q.unwrap_or(6), profile_or(&a.profile, &[2, 3, 5, 7])?)?;
            case1b_construct(&spec, a.q1.unwrap_or(2), a.q2.unwrap_or(3), t1, t2)?
        }
        ConstructionName::GaussianCoset => remark2_pair(&profile_or(&a.profile, &[2, 3])?)?,
        ConstructionName::Gaussian => gaussian_construct(a.p.unwrap_or(1), a.q.unwrap_or(-3))?,
    };
    Ok(Outcome {
        result: to_value(&r),
        code: 0,
    })
}

fn load_pair(
    dist1: &Option<String>,
    dist2: &Option<String>,
    construction: &Option<ConstructionResult>,
) -> Result<Vec<CharFnExpr>> {
    let load = |s: &String| -> Result<CharFnExpr> {
        let f: CharFnExpr = load_json(s)?;
        f.validate()?;
        Ok(f)
    };
    let f1 = match (dist1, construction) {
        (Some(s), _) => load(s)?,
        (None, Some(c)) => c.mu1.clone(),
        (None, None) => return Err(Error::InvalidArgument("--dist1 or --construction is required".into())),
    };
    let f2 = match (dist2, construction) {
        (Some(s), _) => load(s)?,
        (None, Some(c)) if dist1.is_none() => c.mu2.clone(),
        _ => f1.clone(),
    };
    Ok(vec![f1, f2])
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let construction: Option<ConstructionResult> = a.construction.as_deref().map(load_construction).transpose()?;
    let fns = load_pair(&a.dist1, &a.dist2, &construction)?;
    let equation = match (a.equation, &construction) {
        (Some(k), c) => k.build(
            a.p.or(c.as_ref().map(|c| c.p)).unwrap_or(1),
            required(a.q.or(c.as_ref().map(|c| c.q)), "q")?,
        ),
        (None, Some(c)) => c.equation.clone(),
        (None, None) => EquationKind::Symmetry.build(a.p.unwrap_or(1), required(a.q, "q")?),
    };
    let grid: GridSpec = match (&a.grid, &construction) {
        (Some(g), _) => load_json(g)?,
        (None, Some(c)) => c.default_grid.clone(),
        (None, None) => return Err(Error::InvalidArgument("--grid is required".into())),
    };
    let report = verify_equation(&equation, &fns, &grid, a.tol.unwrap_or(DEFAULT_TOLERANCE))?;
    let want = match a.expect.unwrap_or(Expect::Verified) {
        Expect::Verified => Status::Verified,
        Expect::Violated => Status::Violated,
    };
    Ok(Outcome {
        code: if report.status == want { 0 } else { 1 },
        result: to_value(&report),
    })
}

fn cmd_simulate(a: &SimulateArgs) -> Result<Outcome> {
    let model: FiniteModel = load_json(a.model.as_deref().unwrap_or(r#"{"Z":[8]}"#))?;
    let construction: Option<ConstructionResult> = a.construction.as_deref().map(load_construction).transpose()?;
    let fns = load_pair(&a.dist1, &a.dist2, &construction)?;
    let p = a.p.or(construction.as_ref().map(|c| c.p)).unwrap_or(1);
    let q = required(a.q.or(construction.as_ref().map(|c| c.q)), "q")?;
    let pmf1 = charfn_to_pmf(&fns[0], &model)?;
    let pmf2 = charfn_to_pmf(&fns[1], &model)?;
    let result = match a.sample {
        Some(n) => to_value(&sample_forms(&pmf1, &pmf2, p, q, n, a.seed.unwrap_or(0))?),
        None => {
            let joint: Vec<Value> = joint_law(&pmf1, &pmf2, p, q)?
                .into_iter()
                .map(|((h, g), pr)| json!({"l1": h, "l2": g, "probability": pr}))
                .collect();
            json!({
                "pmf1": pmf1.probabilities,
                "pmf2": pmf2.probabilities,
                "joint": joint,
                "symmetry": conditional_symmetry_enumerate(&pmf1, &pmf2, p, q)?,
            })
        }
    };
    Ok(Outcome { result, code: 0 })
}

fn cmd_suite(a: &SuiteArgs, timing: &mut Value) -> Result<Outcome> {
    let level = match a.level.as_deref().unwrap_or("small") {
        "small" => Level::Small,
        "full" => Level::Full,
        other => return Err(Error::InvalidArgument(format!("unknown level {other:?}"))),
    };
    let run = run_suite(&SuiteOptions {
        level,
        plant_fault: a.plant_fault.unwrap_or(false),
        seed: a.seed.unwrap_or(0),
    });
    timing["entriesMs"] = to_value(&run.timing);
    Ok(Outcome {
        code: if run.report.all_green { 0 } else { 1 },
        result: to_value(&run.report),
    })
}

fn args<T: DeserializeOwned>(config: Value) -> Result<T> {
    serde_json::from_value(config).map_err(|e| Error::Parse(format!("config: {e}")))
}

/// Runs `aut`, `construct`, `verify`, `simulate` or `suite` on a JSON
/// configuration with the same keys as the report `config` field. Returns
/// the `result` payload and the exit code the command-line tool would use.
pub fn execute(command: &str, config: Value) -> Result<(Value, u8)> {
    let o = match command {
        "aut" => cmd_aut(&args(config)?)?,
        "construct" => cmd_construct(&args(config)?)?,
        "verify" => cmd_verify(&args(config)?)?,
        "simulate" => cmd_simulate(&args(config)?)?,
        "suite" => cmd_suite(&args(config)?, &mut json!({}))?,
        other => return Err(Error::InvalidArgument(format!("unknown command {other:?}"))),
    };
    Ok((o.result, o.code))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    if let Some(path) = &cli.out {
        fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    }
    if !cli.quiet {
        print!("{text}");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let mut timing = json!({});
    let (name, config, outcome) = match &cli.command {
        Command::Aut(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            ("aut", to_value(&a), cmd_aut(&a)?)
        }
        Command::Construct(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            ("construct", to_value(&a), cmd_construct(&a)?)
        }
        Command::Verify(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            ("verify", to_value(&a), cmd_verify(&a)?)
        }
        Command::Simulate(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            ("simulate", to_value(&a), cmd_simulate(&a)?)
        }
        Command::Suite(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            let o = cmd_suite(&a, &mut timing)?;
            ("suite", to_value(&a), o)
        }
        Command::Render(a) => {
            let a = a.clone().merge(load_config(&cli.config)?);
            let text = match a.report.as_deref() {
                None | Some("-") => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    s
                }
                Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
            };
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            emit(cli, &render(&v)?)?;
            return Ok(0);
        }
    };
    timing["elapsedMs"] = json!(start.elapsed().as_secs_f64() * 1e3);
    let envelope = json!({
        "command": name,
        "config": config,
        "result": outcome.result,
        "timing": timing,
    });
    emit(cli, &(serde_json::to_string_pretty(&envelope).expect("json") + "\n"))?;
    Ok(outcome.code)
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
