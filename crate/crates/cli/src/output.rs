//! Text and structured (JSON) rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};
use yamacalc_core::theorems::{
    Certificate, CheckStatus, Conclusion, EinsteinVerdict, HypothesisCheck, InvariantReport, InvariantValue,
    Quantity,
};
use yamacalc_core::{Catalog, ExactReal};

fn approx(v: &ExactReal) -> String {
    format!("~{:.6}", v.approx())
}

fn value_line(label: &str, v: &InvariantValue, with_approx: bool) -> String {
    let hint = |x: &ExactReal| if with_approx { format!(" ({}, non-authoritative)", approx(x)) } else { String::new() };
    match v {
        InvariantValue::Exact { value, rule } => format!("{label} = {value}{}  [{rule}]", hint(value)),
        InvariantValue::Bounds { lower, upper } => {
            let mut parts = Vec::new();
            if let Some(b) = lower {
                parts.push(format!(">= {}{}  [{}]", b.value, hint(&b.value), b.rule));
            }
            if let Some(b) = upper {
                parts.push(format!("<= {}{}  [{}]", b.value, hint(&b.value), b.rule));
            }
            format!("{label} {}", parts.join(", "))
        }
        InvariantValue::Unknown => format!("{label} unknown"),
    }
}

fn symbol(q: Quantity) -> &'static str {
    match q {
        Quantity::Yamabe => "Y",
        Quantity::IS => "I_s",
        Quantity::IR => "I_r",
        Quantity::Einstein => "Einstein",
    }
}

fn conclusion_text(c: &Conclusion) -> String {
    match c {
        Conclusion::Exact { quantity, value } => format!("{} = {value}", symbol(*quantity)),
        Conclusion::Interval { quantity, interval } => format!("{} in {interval}", symbol(*quantity)),
        Conclusion::LowerBound { quantity, value } => format!("{} >= {value}", symbol(*quantity)),
        Conclusion::UpperBound { quantity, value } => format!("{} <= {value}", symbol(*quantity)),
        Conclusion::Verdict { obstructed, detail } => {
            format!("{}: {detail}", if *obstructed { "obstructed" } else { "no obstruction" })
        }
    }
}

fn check_line(out: &mut String, c: &HypothesisCheck) {
    let mark = match c.status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Unknown => "????",
    };
    let _ = writeln!(out, "      {mark}  {}  ({})", c.condition, c.evidence);
}

fn certificate_text(out: &mut String, cert: &Certificate) {
    let state = if cert.fired() { "fired" } else { "not applicable" };
    let _ = writeln!(out, "  [{state}] {} -- {}", cert.rule_id, cert.anchor.result);
    if !cert.anchor.statement.is_empty() {
        let _ = writeln!(out, "      statement: {}", cert.anchor.statement);
    }
    for c in &cert.checks {
        check_line(out, c);
    }
    if let Some(c) = &cert.conclusion {
        let _ = writeln!(out, "      => {}", conclusion_text(c));
    }
    for n in &cert.notes {
        let _ = writeln!(out, "      note: {n}");
    }
}

pub fn report_text(r: &InvariantReport, with_approx: bool) -> String {
    let mut out = String::new();
    let b = &r.betti;
    let _ = writeln!(out, "expression: {}", r.expression);
    let _ = writeln!(
        out,
        "betti: b1 = {}, b+ = {}, b- = {}, chi = {}, tau = {}",
        b.b1, b.b_plus, b.b_minus, b.chi, b.tau
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(
            out,
            "witness: ({}), m = {}, N = {}{}",
            w.blocks.join(", "),
            w.m,
            w.rest,
            if w.auto_completed { " [auto-completed]" } else { "" }
        );
    }
    let _ = writeln!(out, "{}", value_line("Yamabe", &r.invariants.yamabe, with_approx));
    let _ = writeln!(out, "{}", value_line("I_s", &r.invariants.i_s, with_approx));
    let _ = writeln!(out, "{}", value_line("I_r", &r.invariants.i_r, with_approx));
    if let Some(gap) = &r.ricci_scalar_gap {
        let _ = writeln!(out, "I_r - I_s/4 = {gap}");
    }
    match &r.einstein {
        EinsteinVerdict::Obstructed { by } => {
            let _ = writeln!(out, "einstein: obstructed by {}", by.join(", "));
        }
        EinsteinVerdict::NotDetermined => {
            let _ = writeln!(out, "einstein: not determined");
        }
    }
    for e in &r.rule_errors {
        let _ = writeln!(out, "rule error [{}]: {}", e.rule_id, e.message);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "certificates:");
    for c in &r.certificates {
        certificate_text(&mut out, c);
    }
    out
}

fn approx_hints(r: &InvariantReport) -> Value {
    let hint = |v: &InvariantValue| match v {
        InvariantValue::Exact { value, .. } => json!({ "value": value.approx() }),
        InvariantValue::Bounds { lower, upper } => json!({
            "lower": lower.as_ref().map(|b| b.value.approx()),
            "upper": upper.as_ref().map(|b| b.value.approx()),
        }),
        InvariantValue::Unknown => Value::Null,
    };
    json!({
        "note": "decimal approximations, non-authoritative",
        "yamabe": hint(&r.invariants.yamabe),
        "i_s": hint(&r.invariants.i_s),
        "i_r": hint(&r.invariants.i_r),
    })
}

/// The structured report document. Exact values appear as
/// `{coeff_num, coeff_den, pi_power, radicand}`.
pub fn report_json(r: &InvariantReport, with_approx: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    if with_approx {
        v["approx_hints"] = approx_hints(r);
    }
    v
}

pub fn catalog_text(cat: &Catalog) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8} {:>3} {:>4} {:>4} {:>5} {:>5} {:>6}  yamabe", "name", "b1", "b+", "b-", "chi", "tau", "c1^2");
    for e in cat.entries() {
        let b = &e.block;
        let c1 = b.c1_squared.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        let y = e.yamabe.as_ref().map(|y| y.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<8} {:>3} {:>4} {:>4} {:>5} {:>5} {:>6}  {y}",
            b.name,
            b.betti.b1,
            b.betti.b_plus,
            b.betti.b_minus,
            b.betti.euler(),
            b.betti.signature(),
            c1
        );
        let flags: Vec<String> = yamacalc_core::FlagKind::ALL
            .iter()
            .map(|k| format!("{}={}", k.key(), b.flags.get(*k)))
            .collect();
        let _ = writeln!(out, "         {}", flags.join(" "));
    }
    for d in cat.dissolves() {
        let _ = writeln!(out, "dissolve: {} # rev({}) = {} CP2 # {} CP2bar", d.block, d.block, d.cp2, d.cp2bar);
    }
    out
}

pub fn catalog_json(cat: &Catalog) -> Value {
    json!({
        "blocks": cat.entries().collect::<Vec<_>>(),
        "dissolves": cat.dissolves(),
    })
}

pub fn checks_text(title: &str, checks: &[HypothesisCheck]) -> String {
    let mut out = format!("{title}:\n");
    for c in checks {
        check_line(&mut out, c);
    }
    out
}
