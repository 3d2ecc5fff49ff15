//! Stable JSON shapes for verification reports and statistics.
//!
//! Object keys come out sorted, so identical inputs give identical bytes.

use cyclo5::verify::{Detail, Outcome, VerificationReport, Violation};
use cyclo5::{CycInt, GoldenInt, Rational, Stats};
use serde_json::{json, Map, Value};

use crate::io::{TOOL, VERSION};

fn golden(g: GoldenInt) -> Value {
    json!([g.p, g.q])
}

fn rational(r: Rational) -> Value {
    Value::String(r.to_string())
}

fn point(z: CycInt) -> Value {
    json!(z.coords())
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Skipped => "skipped",
    }
}

fn violation(v: &Violation) -> Value {
    json!({
        "points": v.points.iter().copied().map(point).collect::<Vec<_>>(),
        "message": v.message,
        "value": v.value.map(golden),
    })
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let mut details = Map::new();
    for (key, d) in &r.details {
        let v = match d {
            Detail::Golden(g) => golden(*g),
            Detail::Rational(q) => rational(*q),
            Detail::Bool(b) => Value::Bool(*b),
            Detail::Count(n) => json!(n),
        };
        details.insert((*key).to_string(), v);
    }
    json!({
        "check": r.check.name(),
        "outcome": outcome(r.outcome),
        "pass": r.outcome != Outcome::Fail,
        "tested_count": r.tested_count,
        "violation_count": r.violation_count,
        "violations": r.violations.iter().map(violation).collect::<Vec<_>>(),
        "radius_sq": rational(r.radius_sq),
        "window_sq": rational(r.window_sq),
        "details": details,
    })
}

/// Top-level document printed by `verify`.
pub fn reports_to_json(radius_sq: Rational, window_sq: Rational, reports: &[VerificationReport]) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "radius_sq": rational(radius_sq),
        "window_sq": rational(window_sq),
        "pass": cyclo5::verify::all_pass(reports),
        "reports": reports.iter().map(report_to_json).collect::<Vec<_>>(),
    })
}

pub fn stats_to_json(radius_sq: Rational, window_sq: Rational, s: &Stats) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "radius_sq": rational(radius_sq),
        "window_sq": rational(window_sq),
        "count": s.count,
        "short": s.short,
        "long": s.long,
        "other": s.other,
        "unknown": s.unknown,
        "density": s.density,
        "short_long_ratio": s.short_long_ratio,
    })
}
