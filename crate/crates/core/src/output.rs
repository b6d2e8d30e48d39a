//! CSV and JSON renderings. Every float is written with 17 significant
//! digits so values survive a round trip bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::asymptotic::{AsymptoticReport, AsymptoticSolution, ExactRelations};
use crate::darkstate::{Absence, Candidate, ExistenceCondition, GIndependent};
use crate::poly::{RationalPoly, UniPoly, Var};
use crate::spectrum::SpectrumScan;

pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        // keep the sign of negative zero out of data files
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// JSON number with 17 significant digits; `null` for non-finite input.
pub fn float17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&fmt17(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Rewrite every non-integer number in `v` with 17 significant digits.
pub fn with_float17(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => float17(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(with_float17).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, with_float17(v)))
                .collect::<Map<String, Value>>(),
        ),
        other => other,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<Value> {
    Ok(with_float17(serde_json::to_value(value)?))
}

pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(&to_json(value)?)?;
    s.push('\n');
    Ok(s)
}

pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn exact_json(exact: Option<&ExactRelations>) -> Value {
    match exact {
        Some(e) => json!({ "a2": rational_string(&e.a2), "b2": rational_string(&e.b2) }),
        None => Value::Null,
    }
}

pub fn asymptotic_solution_json(sol: &AsymptoticSolution) -> Value {
    with_float17(json!({
        "N": sol.n,
        "parity": sol.parity,
        "delta10": sol.delta10,
        "delta20": sol.delta20,
        "exact": exact_json(sol.exact.as_ref()),
        "residual_history": sol
            .residual_history
            .iter()
            .map(|(g, d)| json!({ "g": g, "delta_drift": d }))
            .collect::<Vec<_>>(),
    }))
}

pub fn asymptotic_report_json(report: &AsymptoticReport, exact: Option<&ExactRelations>) -> Value {
    with_float17(json!({
        "N": report.n,
        "parity": report.parity,
        "delta10": report.delta10,
        "delta20": report.delta20,
        "exact": exact_json(exact),
        "ladder": report.ladder,
        "monotone": report.monotone,
    }))
}

/// Terms in descending graded-lex order, coefficients as exact strings.
pub fn polynomial_json(p: &RationalPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            json!({
                "a": m.exp(Var::A),
                "b": m.exp(Var::B),
                "g": m.exp(Var::G),
                "coefficient": c.to_string(),
            })
        })
        .collect();
    json!({ "text": p.to_string(), "terms": terms })
}

pub fn secular_json(cond: &ExistenceCondition) -> Value {
    json!({
        "N": cond.n,
        "parity": cond.parity,
        "last_detuning": cond.last_detuning.name(),
        "degree_in_g": cond.secular.degree_in(Var::G),
        "polynomial": polynomial_json(&cond.secular),
    })
}

fn univariate_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn candidates_json(candidates: &[Candidate]) -> Value {
    to_json(&candidates).unwrap_or(Value::Null)
}

pub fn g_independent_json(n: usize, parity: crate::Parity, outcome: &GIndependent) -> Value {
    let body = match outcome {
        GIndependent::Solutions { pairs, candidates } => json!({
            "kind": "solutions",
            "pairs": pairs.iter().map(|(d1, d2)| json!({ "delta1": d1, "delta2": d2 })).collect::<Vec<_>>(),
            "candidates": candidates_json(candidates),
        }),
        GIndependent::Family { relation } => json!({
            "kind": "family",
            "relation": polynomial_json(relation),
        }),
        GIndependent::Absent(Absence::ConstantCoefficient { g_power, coefficient }) => json!({
            "kind": "absent",
            "reason": "constant_coefficient",
            "g_power": g_power,
            "coefficient": polynomial_json(coefficient),
        }),
        GIndependent::Absent(Absence::Inadmissible { candidates }) => json!({
            "kind": "absent",
            "reason": "inadmissible",
            "candidates": candidates_json(candidates),
        }),
        GIndependent::Absent(Absence::NoCommonRoot { var, eliminants, gcd }) => json!({
            "kind": "absent",
            "reason": "no_common_root",
            "variable": format!("{}^2", var.name()),
            "eliminants": eliminants.iter().map(univariate_json).collect::<Vec<_>>(),
            "gcd": univariate_json(gcd),
        }),
        GIndependent::Absent(Absence::NoJointRoot { candidates }) => json!({
            "kind": "absent",
            "reason": "no_joint_root",
            "candidates": candidates_json(candidates),
        }),
    };
    let mut out = json!({ "N": n, "parity": parity, "summary": outcome.to_string() });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    with_float17(out)
}

/// `g, E_1, …, E_k` with `k` the largest level count; absent levels blank.
pub fn scan_csv(scan: &SpectrumScan) -> String {
    let k = scan.max_levels();
    let mut out = String::from("g");
    for i in 1..=k {
        let _ = write!(out, ",E_{i}");
    }
    out.push('\n');
    for (g, levels) in scan.g_grid.iter().zip(&scan.levels) {
        out.push_str(&fmt17(*g));
        for i in 0..k {
            out.push(',');
            if let Some(e) = levels.get(i) {
                out.push_str(&fmt17(*e));
            }
        }
        out.push('\n');
    }
    out
}

pub fn populations_csv(populations: &[(usize, f64)]) -> String {
    let mut out = String::from("n,probability\n");
    for (n, p) in populations {
        let _ = writeln!(out, "{n},{}", fmt17(*p));
    }
    out
}
