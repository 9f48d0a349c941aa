//! Collects command results and renders them as text lines or one JSON
//! document. Result order is the order of insertion.

use std::io::{self, Write};
use std::time::Duration;

use rug::Rational;
use serde_json::{json, Value};

use mzv_core::poset::PosetValue;
use mzv_core::registry::{Identity, IdentityReport, ParamKind};
use mzv_core::{ApproxReal, Error};

use crate::Global;

pub struct Report {
    args: Vec<String>,
    precision: Value,
    results: Vec<Value>,
    lines: Vec<String>,
    summary: Option<(usize, usize)>,
    error: Option<(String, i32)>,
    elapsed: Duration,
}

impl Report {
    pub fn new(args: Vec<String>, g: &Global) -> Self {
        Report {
            args,
            precision: json!({ "bits": g.bits, "terms": g.terms, "tol": g.tol }),
            results: Vec::new(),
            lines: Vec::new(),
            summary: None,
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn value(&mut self, name: &str, v: &ApproxReal) {
        self.lines.push(format!("{name} = {v}"));
        self.results.push(json!({ "name": name, "value": v.to_decimal(), "radius": v.radius }));
    }

    pub fn exact(&mut self, name: &str, q: &Rational) {
        self.lines.push(format!("{name} = {q}"));
        self.results.push(json!({ "name": name, "value": q.to_string(), "exact": true }));
    }

    pub fn identity(&mut self, r: &IdentityReport) {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let line = match &r.error {
            Some(e) => format!("{verdict} {} [{}] error: {e}", r.id, r.params),
            None => format!("{verdict} {} [{}] diff={:.2e} radius={:.2e} tol={:.1e}", r.id, r.params, r.diff, r.radius, r.tol),
        };
        self.lines.push(line);
        self.results.push(serde_json::to_value(r).expect("report serializes"));
    }

    pub fn identity_info(&mut self, e: &Identity) {
        let params: Vec<String> = e.params.iter().map(|p| format!("{}: {}", p.name, kind_name(p.kind))).collect();
        self.lines.push(format!("{:<11} {}", e.id, e.title));
        self.lines.push(format!("{:<11} params: {}; default: {}", "", or_none(&params.join(", ")), or_none(e.default_params)));
        self.results.push(json!({
            "id": e.id,
            "title": e.title,
            "params": e.params.iter().map(|p| json!({ "name": p.name, "kind": kind_name(p.kind) })).collect::<Vec<_>>(),
            "default_params": e.default_params,
        }));
    }

    pub fn summary(&mut self, passed: usize, failed: usize) {
        self.summary = Some((passed, failed));
    }

    pub fn poset(&mut self, v: &PosetValue, symbolic: bool) {
        self.lines.push(format!("I(X) = {}  [{} linear extensions]", v.value, v.extensions));
        let mut r = json!({
            "name": "I(X)",
            "value": v.value.to_decimal(),
            "radius": v.value.radius,
            "extensions": v.extensions.to_string(),
        });
        if symbolic {
            self.lines.push(format!("     = {}", v.combo));
            r["combo"] = serde_json::to_value(&v.combo).expect("combo serializes");
        }
        self.results.push(r);
    }

    pub fn schur(&mut self, bound: u32, q: &Rational, approx: &ApproxReal) {
        self.lines.push(format!("schur[≤{bound}] = {q}"));
        self.lines.push(format!("              ≈ {}", approx.to_decimal()));
        self.results.push(json!({
            "name": format!("schur[<={bound}]"),
            "bound": bound,
            "value": q.to_string(),
            "decimal": approx.to_decimal(),
            "exact": true,
        }));
    }

    pub fn error(&mut self, e: &Error) {
        self.error = Some((e.to_string(), e.exit_code()));
    }

    pub fn elapsed(&mut self, d: Duration) {
        self.elapsed = d;
    }

    /// Writes to stdout; a closed pipe (e.g. `| head`) just ends the output.
    pub fn emit(&self, as_json: bool) {
        if let Some((msg, _)) = &self.error {
            eprintln!("error: {msg}");
        }
        let _ = self.write(&mut io::stdout().lock(), as_json);
    }

    fn write(&self, out: &mut impl Write, as_json: bool) -> io::Result<()> {
        if as_json {
            let mut doc = json!({
                "command": self.args,
                "precision": self.precision,
                "results": self.results,
                "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
            });
            if let Some((p, f)) = self.summary {
                doc["summary"] = json!({ "passed": p, "failed": f });
            }
            if let Some((msg, code)) = &self.error {
                doc["error"] = json!({ "message": msg, "exit_code": code });
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
        } else {
            for l in &self.lines {
                writeln!(out, "{l}")?;
            }
            if let Some((p, f)) = self.summary {
                writeln!(out, "passed {p} / failed {f}")?;
            }
        }
        out.flush()
    }
}

fn kind_name(k: ParamKind) -> String {
    match k {
        ParamKind::Comp => "composition".into(),
        ParamKind::CompOrEmpty => "composition or ()".into(),
        ParamKind::Int { min, max: Some(m) } => format!("integer {min}..={m}"),
        ParamKind::Int { min, max: None } => format!("integer ≥ {min}"),
        ParamKind::Sign => "±1".into(),
        ParamKind::Choice(c) => c.join("|"),
    }
}

fn or_none(s: &str) -> &str {
    if s.is_empty() {
        "none"
    } else {
        s
    }
}
