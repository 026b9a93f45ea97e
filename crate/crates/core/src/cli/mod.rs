//! Command-line front end: argument definitions, input formats, dispatch
//! and reporting.
//!
//! Exit codes: 0 when the requested computation succeeds or the claim is
//! verified, 1 when it is refuted or fails mathematically, 2 on malformed
//! input.

pub mod args;
pub mod expr;
pub mod inputs;
pub mod report;

use std::fmt::Write as _;

use serde_json::{json, Value};

pub use args::{Command, Verb};
pub use report::emit_report;

use crate::corealg::{Point, Var};
use crate::error::Error;
use crate::extend::{extend_regular, parse_problem, sum_of_squares_norm_form, verify_extension};
use crate::groebner::{buchberger, restrict_to_variety, GroebnerBasis, Ideal, OrderKind, TermOrder};
use crate::limits::{
    continuity_at_origin_by_degree, curve_limit, discontinuity_search, even_monomial_certificate, padic_evaluate,
    ContinuityConclusion, PAdic, PadicOutcome, SearchOutcome, Semantics,
};
use crate::paperlab::{list_scenarios, run_scenario_variant, ScenarioId, Variant};
use args::{IdealArgs, OrderArg, Side};
use expr::{parse_point, parse_poly, parse_radical, parse_ratfun};
use inputs::{
    parse_certificate, parse_coeffs, parse_curve, parse_ideal_arg, parse_padic_spec, parse_steps, parse_vars,
};
use report::{limit_json, limit_kind_json, padic_json, point_json, ratfun_json, scenario_json, with_schema};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one command: exit status plus both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn new(ok: bool, json: Value, text: String) -> Outcome {
        Outcome {
            code: if ok { EXIT_OK } else { EXIT_FAILED },
            json: with_schema(json),
            text,
        }
    }

    /// The rendering selected by `--json`.
    pub fn render(&self, json: bool) -> String {
        if json {
            emit_report(&self.json)
        } else if self.text.ends_with('\n') {
            self.text.clone()
        } else {
            format!("{}\n", self.text)
        }
    }
}

/// Malformed input maps to exit code 2, everything else to 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnsupportedExponent { .. }
        | Error::UnknownScenario(_)
        | Error::BadCurve(_)
        | Error::BadPadic(_)
        | Error::BadProblem(_)
        | Error::BadNormForm(_)
        | Error::EmptyForm
        | Error::InvalidRing(_)
        | Error::IncompletePoint(_)
        | Error::BadStratification(_)
        | Error::RingMismatch(_)
        | Error::NotHomogeneous(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = exit_code(e);
    let kind = if code == EXIT_USAGE { "usage" } else { "failure" };
    Outcome {
        code,
        json: with_schema(json!({"error": e.to_string(), "kind": kind})),
        text: format!("error: {e}"),
    }
}

pub fn run_command(cmd: &Command) -> Outcome {
    let res = match &cmd.verb {
        Verb::Limit(a) => limit(a),
        Verb::Restrict(a) => restrict(a),
        Verb::Gb(a) => gb(a),
        Verb::Nf(a) => nf(a, false),
        Verb::Member(a) => nf(a, true),
        Verb::Extend(a) => extend(a),
        Verb::Certify(a) => certify(a),
        Verb::VerifyExample(a) => verify_example(a),
        Verb::PadicEval(a) => padic(a),
    };
    res.unwrap_or_else(|e| error_outcome(&e))
}

type CmdResult = crate::Result<Outcome>;

fn read(path: &std::path::Path) -> crate::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Syntax {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn limit(a: &args::LimitArgs) -> CmdResult {
    let f = parse_ratfun(&a.f)?;
    if a.search {
        let point = match &a.point {
            Some(p) => parse_point(p)?,
            None => Point::new(),
        };
        let coeffs = parse_coeffs(&a.coeffs)?;
        return Ok(match discontinuity_search(&f, &point, a.max_exp, &coeffs)? {
            SearchOutcome::Witness(w) => Outcome::new(
                true,
                json!({
                    "command": "limit",
                    "search": {
                        "result": "witness",
                        "point": point_json(&w.point),
                        "curve_a": w.curve_a.to_string(),
                        "limit_a": limit_kind_json(&w.limit_a),
                        "curve_b": w.curve_b.to_string(),
                        "limit_b": limit_kind_json(&w.limit_b),
                    },
                }),
                format!(
                    "discontinuity witness\n  {} -> {}\n  {} -> {}",
                    w.curve_a, w.limit_a, w.curve_b, w.limit_b
                ),
            ),
            SearchOutcome::NotFound { curves_probed, limits } => Outcome::new(
                true,
                json!({
                    "command": "limit",
                    "search": {
                        "result": "not_found",
                        "label": "no witness within budget",
                        "curves_probed": curves_probed,
                        "limits": limits.iter().map(limit_kind_json).collect::<Vec<_>>(),
                    },
                }),
                format!(
                    "no witness within budget ({curves_probed} curves); limits seen: {}",
                    limits.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ),
            ),
        });
    }
    let semantics = if a.valuation {
        Semantics::Valuation
    } else if a.side == Side::Both {
        Semantics::RealTwoSided
    } else {
        Semantics::RealOneSided
    };
    let text = a.curve.as_deref().expect("clap requires --curve without --search");
    let mut curve = parse_curve(text, semantics)?;
    if a.side == Side::Minus && !a.valuation {
        curve = curve.reflected();
    }
    let res = curve_limit(&f, &curve)?;
    let mut out = format!("{}", res.kind);
    if let Some(m) = &res.minus_side {
        let _ = write!(out, " (t -> 0+), {m} (t -> 0-)");
    }
    let mut j = limit_json(&res);
    j["command"] = json!("limit");
    j["curve"] = json!(curve.to_string());
    Ok(Outcome::new(true, j, out))
}

fn term_order(vars: Option<&str>, order: OrderArg) -> TermOrder {
    let kind = match order {
        OrderArg::Lex => OrderKind::Lex,
        OrderArg::Grevlex => OrderKind::Grevlex,
    };
    TermOrder::new(kind, vars.map(parse_vars).unwrap_or_default())
}

fn basis(a: &IdealArgs, extra: &[Var]) -> crate::Result<GroebnerBasis> {
    let gens = parse_ideal_arg(&a.ideal)?;
    let order = term_order(a.vars.as_deref(), a.order);
    let mut vars = order.vars().to_vec();
    vars.extend(extra.iter().cloned());
    buchberger(&Ideal::new(gens, &vars), &order, a.budget)
}

fn basis_json(gb: &GroebnerBasis) -> Value {
    json!({
        "order": gb.order().to_string(),
        "basis": gb.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "spairs": gb.spairs_processed(),
    })
}

fn gb(a: &IdealArgs) -> CmdResult {
    let g = basis(a, &[])?;
    let text = g.basis().iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let mut j = basis_json(&g);
    j["command"] = json!("gb");
    Ok(Outcome::new(
        true,
        j,
        if text.is_empty() { "(zero ideal)".into() } else { text },
    ))
}

fn nf(a: &args::ExprIdealArgs, membership: bool) -> CmdResult {
    let p = parse_poly(&a.expr)?;
    let g = basis(&a.ideal, &[])?;
    let r = g.normal_form(&p);
    if membership {
        let member = r.is_zero();
        return Ok(Outcome::new(
            member,
            json!({"command": "member", "member": member, "normal_form": r.to_string()}),
            member.to_string(),
        ));
    }
    Ok(Outcome::new(
        true,
        json!({"command": "nf", "normal_form": r.to_string(), "order": g.order().to_string()}),
        r.to_string(),
    ))
}

fn restrict(a: &args::RestrictArgs) -> CmdResult {
    let f = parse_ratfun(&a.f)?;
    if let Some(steps) = &a.steps {
        let steps = parse_steps(steps)?;
        let g = f.iterated_restrict(&steps)?;
        return Ok(Outcome::new(
            true,
            json!({"command": "restrict", "steps": steps.iter().map(|(v, c)| format!("{v}={}", crate::corealg::fmt_rational(c))).collect::<Vec<_>>(), "result": ratfun_json(&g)}),
            g.to_string(),
        ));
    }
    let ideal = IdealArgs {
        ideal: a.ideal.clone().expect("clap requires --ideal without --steps"),
        vars: a.vars.clone(),
        order: a.order,
        budget: a.budget,
    };
    let extra: Vec<Var> = f.vars().into_iter().collect();
    let g = basis(&ideal, &extra)?;
    let r = restrict_to_variety(&f, &g)?;
    Ok(Outcome::new(
        true,
        json!({"command": "restrict", "ideal": basis_json(&g), "result": ratfun_json(&r)}),
        r.to_string(),
    ))
}

fn extend(a: &args::ExtendArgs) -> CmdResult {
    let problem = parse_problem(&read(&a.problem)?)?;
    let form = sum_of_squares_norm_form(problem.arity())?;
    let result = extend_regular(&problem, &form)?;
    let report = verify_extension(&problem, &result)?;
    let mut j = report::extension_json(&result, &report);
    j["command"] = json!("extend");
    j["norm_form"] = json!(form.to_string());
    let verdict = |b: bool| if b { "pass" } else { "fail" };
    let route = match &report.regularity.route {
        Some(crate::extend::RegularityRoute::UnitIdeal) => "unit ideal (full certificate)".to_string(),
        Some(crate::extend::RegularityRoute::PositiveElement(p)) => {
            format!("positive element {p} (no real common zero)")
        }
        Some(crate::extend::RegularityRoute::SpotCheck { points }) => {
            format!("spot check only, {points} points")
        }
        None => "none".to_string(),
    };
    let text = format!(
        "F = ({}) / ({})\n  = {}\n(a) restriction: {} (residue {})\n(b) regularity: {} via {route}\n(c) pointwise: {}",
        result.numerator,
        result.denominator,
        result.f,
        verdict(report.restriction.pass),
        report.restriction.residue,
        verdict(report.regularity.pass),
        verdict(report.pointwise.pass),
    );
    Ok(Outcome::new(report.pass(), j, text))
}

fn certify(a: &args::CertifyArgs) -> CmdResult {
    if let Some(f) = &a.degree {
        let f = parse_ratfun(f)?;
        let q = f.den().clone();
        let cert = even_monomial_certificate(&q)
            .ok_or_else(|| Error::BadProblem(format!("{q} is not a positive sum of even monomials")))?;
        let c = continuity_at_origin_by_degree(f.num(), &q, &cert)?;
        let (ok, j, text) = match &c {
            ContinuityConclusion::ContinuousAtOrigin { value, degree_gap } => (
                true,
                json!({"conclusion": "continuous_at_origin", "value": crate::corealg::fmt_rational(value), "degree_gap": degree_gap}),
                format!("continuous at the origin with value {value}, degree gap {degree_gap}"),
            ),
            ContinuityConclusion::Inconclusive { reason } => (
                false,
                json!({"conclusion": "inconclusive", "reason": reason}),
                format!("inconclusive: {reason}"),
            ),
        };
        let mut j = j;
        j["command"] = json!("certify");
        j["certificate"] = json!(cert.to_string());
        return Ok(Outcome::new(ok, j, text));
    }
    let ring = a.radical.as_deref().map(parse_radical).transpose()?;
    let path = a.cert.as_ref().expect("clap requires --cert without --degree");
    let cert = parse_certificate(&read(path)?, ring.as_ref())?;
    let check = cert.check()?;
    let text = format!(
        "{}\nidentity: {}, coefficients positive: {}{}",
        cert,
        check.identity_holds,
        check.coefficients_positive,
        if check.assumptions.is_empty() {
            String::new()
        } else {
            format!("\nassumed: {}", check.assumptions.join("; "))
        }
    );
    Ok(Outcome::new(
        check.verified(),
        json!({
            "command": "certify",
            "certificate": cert.to_string(),
            "identity_holds": check.identity_holds,
            "coefficients_positive": check.coefficients_positive,
            "assumptions": check.assumptions,
            "residual": check.residual.to_string(),
            "verified": check.verified(),
        }),
        text,
    ))
}

fn verify_example(a: &args::VerifyArgs) -> CmdResult {
    if a.list {
        let list = list_scenarios();
        let text = list
            .iter()
            .map(|s| format!("{}  {}", s.id, s.description))
            .collect::<Vec<_>>()
            .join("\n");
        let j = json!({
            "scenarios": list.iter().map(|s| json!({
                "id": s.id.as_str(),
                "description": s.description,
                "anchor": s.anchor,
                "mutation": s.mutation,
            })).collect::<Vec<_>>(),
        });
        return Ok(Outcome::new(true, j, text));
    }
    let id = a.id.as_deref().expect("clap requires an id without --list");
    let variant = if a.mutated { Variant::Mutated } else { Variant::Original };
    let ids: Vec<ScenarioId> = if id.eq_ignore_ascii_case("all") {
        ScenarioId::ALL.to_vec()
    } else {
        vec![id.parse()?]
    };
    let reports: Vec<_> = ids.iter().map(|&i| run_scenario_variant(i, variant)).collect();
    let ok = reports.iter().all(|r| r.pass());
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{} {}", r.scenario, if r.pass() { "PASS" } else { "FAIL" });
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  [{}] {}: {}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.witness
            );
        }
    }
    let j = if reports.len() == 1 {
        scenario_json(&reports[0])
    } else {
        json!({"reports": reports.iter().map(scenario_json).collect::<Vec<_>>(), "pass": ok})
    };
    Ok(Outcome::new(ok, j, text))
}

fn padic(a: &args::PadicArgs) -> CmdResult {
    let f = parse_ratfun(&a.f)?;
    let (prime, precision) = parse_padic_spec(&a.padic)?;
    let point = parse_point(&a.point)?
        .into_iter()
        .map(|(v, c)| Ok((v, PAdic::from_rational(prime, &c, precision)?)))
        .collect::<crate::Result<_>>()?;
    Ok(match padic_evaluate(&f, &point)? {
        PadicOutcome::Value(x) => Outcome::new(
            true,
            json!({"command": "padic-eval", "value": padic_json(&x)}),
            x.to_string(),
        ),
        PadicOutcome::Undefined { den } => Outcome::new(
            false,
            json!({"command": "padic-eval", "undefined": true, "denominator": padic_json(&den)}),
            format!("undefined: denominator {den} is indistinguishable from 0"),
        ),
    })
}
