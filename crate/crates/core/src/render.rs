//! Plain-text summaries of JSON reports.

use std::fmt::Write;

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::constructions::ConstructionResult;
use crate::error::{Error, Result};
use crate::suite::{SuiteReport, SuiteRun};
use crate::verify::{ImplicationReport, Status, DiagonalReport, VerificationReport};

/// One-line summary of a verification report.
pub fn verification_line(r: &VerificationReport) -> String {
    let mut s = match r.status {
        Status::Verified => {
            let how = if r.note.as_deref().is_some_and(|n| n.contains("quadratic form")) {
                "exponent form, exact".to_string()
            } else if r.exact_pairs == r.pairs_checked {
                "exact".to_string()
            } else {
                format!("tolerance {:e}", r.tolerance_used)
            };
            format!("VERIFIED ({} pairs, {how})", r.pairs_checked)
        }
        Status::Violated => match &r.witness {
            Some(w) => format!(
                "VIOLATED at (u,v) = ({}, {}): lhs = {}, rhs = {}",
                w.u, w.v, w.lhs.text, w.rhs.text
            ),
            None => "VIOLATED".to_string(),
        },
        Status::Inconclusive => format!("INCONCLUSIVE ({} pairs)", r.pairs_checked),
    };
    if r.status != Status::Verified {
        if let Some(n) = &r.note {
            let _ = write!(s, " [{n}]");
        }
    }
    format!("{}: {s}", r.equation)
}

fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "suite ({:?}): {} green, {} red",
        r.level, r.passed, r.failed
    );
    for e in &r.entries {
        let mark = if e.green { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {} [expect {:?}] {}", e.name, e.expected, e.observed);
    }
    out
}

fn construction_text(c: &ConstructionResult) -> String {
    format!(
        "{} (p = {}, q = {})\n  {}\n  equation {}\n  expected classes {}, {}\n",
        c.name, c.p, c.q, c.provenance, c.equation, c.expected_class1, c.expected_class2
    )
}

fn parse<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("report schema: {e}")))
}

/// Renders any report produced by the command-line tool.
pub fn render(v: &Value) -> Result<String> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("report schema: expected an object".into()))?;
    if let (Some(cmd), Some(result)) = (obj.get("command"), obj.get("result")) {
        let body = render(result)?;
        return Ok(format!("{}\n{body}", cmd.as_str().unwrap_or("?")));
    }
    if obj.contains_key("status") {
        return Ok(verification_line(&parse(v)?) + "\n");
    }
    if obj.contains_key("report") && obj.contains_key("timing") {
        return Ok(suite_text(&parse::<SuiteRun>(v)?.report));
    }
    if obj.contains_key("entries") {
        return Ok(suite_text(&parse(v)?));
    }
    if obj.contains_key("first") {
        let r: DiagonalReport = parse(v)?;
        return Ok(format!(
            "premise {}\n{}\n{}\nimplication holds: {}\n",
            verification_line(&r.premise),
            verification_line(&r.first),
            verification_line(&r.second),
            r.implication_holds
        ));
    }
    if obj.contains_key("conclusion") {
        let r: ImplicationReport = parse(v)?;
        return Ok(format!(
            "premise {}\nconclusion {}\nimplication holds: {}\n",
            verification_line(&r.premise),
            verification_line(&r.conclusion),
            r.implication_holds
        ));
    }
    if obj.contains_key("mu1") {
        return Ok(construction_text(&parse(v)?));
    }
    if let Some(a) = obj.get("isAut") {
        return Ok(format!(
            "automorphism: {a}, admissible: {}, witness: {}\n",
            obj.get("heydeAdmissible").unwrap_or(&Value::Null),
            obj.get("primeWitness").unwrap_or(&Value::Null)
        ));
    }
    Err(Error::Parse("report schema: unrecognized report".into()))
}
