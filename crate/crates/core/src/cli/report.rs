//! Canonical JSON for command results. Object keys are sorted, so equal
//! results serialize to identical bytes.

use serde_json::{json, Map, Value};

use crate::corealg::{fmt_rational, Point, RatFun};
use crate::extend::{ExtensionReport, ExtensionResult, RegularityRoute};
use crate::limits::{LimitKind, LimitResult, PAdic};
use crate::paperlab::{Report, Variant};

pub const SCHEMA: &str = "ratcont/1";

/// Pretty-printed canonical JSON with a trailing newline.
pub fn emit_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Adds the schema tag to a top-level object.
pub fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    v
}

pub fn scenario_json(report: &Report) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "anchor": c.anchor,
                "verdict": if c.pass { "pass" } else { "fail" },
                "witness": c.witness,
            })
        })
        .collect();
    let mut v = json!({
        "scenario": report.scenario.as_str(),
        "checks": checks,
        "pass": report.pass(),
    });
    if report.variant == Variant::Mutated {
        v["variant"] = Value::String("mutated".into());
    }
    with_schema(v)
}

pub fn point_json(p: &Point) -> Value {
    Value::Object(
        p.iter()
            .map(|(v, c)| (v.to_string(), Value::String(fmt_rational(c))))
            .collect::<Map<_, _>>(),
    )
}

pub fn ratfun_json(f: &RatFun) -> Value {
    json!({
        "num": f.num().to_string(),
        "den": f.den().to_string(),
        "text": f.to_string(),
    })
}

pub fn limit_kind_json(k: &LimitKind) -> Value {
    match k {
        LimitKind::Finite(v) => json!({"kind": "finite", "value": fmt_rational(v)}),
        LimitKind::PlusInfinity => json!({"kind": "plus_infinity"}),
        LimitKind::MinusInfinity => json!({"kind": "minus_infinity"}),
        LimitKind::UnsignedInfinity => json!({"kind": "infinity"}),
        LimitKind::IdenticallyUndefined => json!({"kind": "identically_undefined"}),
    }
}

pub fn limit_json(r: &LimitResult) -> Value {
    json!({
        "limit": limit_kind_json(&r.kind),
        "minus_side": r.minus_side.as_ref().map(limit_kind_json),
        "num_order": r.num_order,
        "den_order": r.den_order,
    })
}

pub fn padic_json(x: &PAdic) -> Value {
    match x {
        PAdic::Value {
            prime,
            valuation,
            unit,
            precision,
        } => json!({
            "prime": prime,
            "valuation": valuation,
            "unit": unit.to_string(),
            "precision": precision,
            "text": x.to_string(),
        }),
        PAdic::Zero { prime, absolute } => json!({
            "prime": prime,
            "zero_to_absolute_precision": absolute,
            "text": x.to_string(),
        }),
    }
}

pub fn extension_json(result: &ExtensionResult, report: &ExtensionReport) -> Value {
    let route = report.regularity.route.as_ref().map(|r| match r {
        RegularityRoute::UnitIdeal => json!({"kind": "unit_ideal", "label": "full certificate"}),
        RegularityRoute::PositiveElement(p) => json!({
            "kind": "positive_element",
            "label": "no real common zero",
            "element": p.to_string(),
        }),
        RegularityRoute::SpotCheck { points } => json!({
            "kind": "spot_check",
            "label": "spot check only",
            "points": points,
        }),
    });
    json!({
        "F": {
            "numerator": result.numerator.to_string(),
            "denominator": result.denominator.to_string(),
            "normalized": ratfun_json(&result.f),
        },
        "q": result.qs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "p": result.ps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "verdicts": {
            "restriction": {
                "pass": report.restriction.pass,
                "residue": report.restriction.residue.to_string(),
            },
            "regularity": {
                "pass": report.regularity.pass,
                "unit_ideal": report.regularity.unit_ideal,
                "positive_element": report.regularity.positive_element.as_ref().map(ToString::to_string),
                "samples": report.regularity.spot_check.points,
                "sample_zeros": report.regularity.spot_check.zeros.iter().map(point_json).collect::<Vec<_>>(),
                "route": route,
            },
            "pointwise": {
                "pass": report.pointwise.pass,
                "points": report.pointwise.points.iter().map(|c| json!({
                    "point": point_json(&c.point),
                    "expected": fmt_rational(&c.expected),
                    "value": c.value.as_ref().map(fmt_rational),
                })).collect::<Vec<_>>(),
            },
        },
        "pass": report.pass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paperlab::ScenarioId;

    #[test]
    fn empty_report() {
        let r = Report {
            scenario: ScenarioId::Ex1,
            variant: Variant::Original,
            checks: vec![],
        };
        let v = scenario_json(&r);
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["pass"], json!(true));
    }

    #[test]
    fn keys_are_sorted() {
        let s = emit_report(&json!({"pass": true, "checks": [], "anchor": "a"}));
        let a = s.find("anchor").unwrap();
        let c = s.find("checks").unwrap();
        let p = s.find("pass").unwrap();
        assert!(a < c && c < p);
    }
}
