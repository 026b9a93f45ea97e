use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::cli::expr::{parse_poly, parse_radical, parse_ratfun};
use crate::corealg::{rad_arith, rad_exact_divide, Point, Poly, RadOp, RadPoly, RadicalRing, RatFun, Rational, Var};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, Ideal, TermOrder, DEFAULT_BUDGET};
use crate::limits::{
    continuity_at_origin_by_degree, curve_limit, discontinuity_search, even_monomial_certificate, ContinuityConclusion,
    Curve, LimitKind, PositivityCertificate, SearchOutcome, Semantics,
};

use super::chart::{blowup_chart_substitute, ChartMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioId {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::Ex1,
        ScenarioId::Ex2,
        ScenarioId::Ex3,
        ScenarioId::Ex4,
        ScenarioId::Ex5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioId::Ex1 => "EX1",
            ScenarioId::Ex2 => "EX2",
            ScenarioId::Ex3 => "EX3",
            ScenarioId::Ex4 => "EX4",
            ScenarioId::Ex5 => "EX5",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// The data a scenario runs on: as stated, or with one deliberate defect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Original,
    Mutated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioInfo {
    pub id: ScenarioId,
    pub description: &'static str,
    pub anchor: &'static str,
    /// What the mutated twin changes.
    pub mutation: &'static str,
}

pub fn list_scenarios() -> Vec<ScenarioInfo> {
    vec![
        ScenarioInfo {
            id: ScenarioId::Ex1,
            description:
                "x/y on the surface x^3 = (1+z^2) y^3: cube-root factorization and order-dependent axis restriction",
            anchor: "x/y restricts to the cube root of 1+z^2 on the cubic surface",
            mutation: "radical modulus 1+2z^2 instead of 1+z^2",
        },
        ScenarioInfo {
            id: ScenarioId::Ex2,
            description: "normal hypersurface in R^4 resolved by one blow-up chart of the t-axis",
            anchor: "one chart x1=x/y, y1=y, z1=z/y resolves the hypersurface",
            mutation: "y^5 instead of y^7 in the defining equation",
        },
        ScenarioInfo {
            id: ScenarioId::Ex3,
            description: "linear equation with a continuous semialgebraic but no continuous rational solution",
            anchor: "x1^3 x2 y1 + (x1^3 - (1+x3^2) x2^3) y2 = x1^4 has no continuous rational solution",
            mutation: "coefficient 1+2x3^2 in the equation",
        },
        ScenarioInfo {
            id: ScenarioId::Ex4,
            description:
                "continuous rational function vanishing on a dense open part of a surface but not on its z-axis",
            anchor: "f(0,0,z) = z^2 although f vanishes on the smooth part of the surface",
            mutation: "+y^3 instead of -y^3 in the numerator",
        },
        ScenarioInfo {
            id: ScenarioId::Ex5,
            description: "x^3/(x^2+y^2) is continuous at the origin: every probed curve limit is 0",
            anchor: "all curve limits of x^3/(x^2+y^2) at the origin agree",
            mutation: "denominator x^4+y^2",
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub scenario: ScenarioId,
    pub variant: Variant,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    /// Records the outcome of `run`; an error is a failed check.
    fn check(&mut self, name: &str, anchor: &str, run: impl FnOnce() -> Result<(bool, String)>) {
        let (pass, witness) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass,
            witness,
        });
    }
}

fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap_or_else(|e| panic!("built-in expression {s}: {e}"))
}

fn ratfun(s: &str) -> RatFun {
    parse_ratfun(s).unwrap_or_else(|e| panic!("built-in expression {s}: {e}"))
}

fn ring(s: &str) -> Arc<RadicalRing> {
    parse_radical(s).unwrap_or_else(|e| panic!("built-in radical {s}: {e}"))
}

fn rad(r: &Arc<RadicalRing>, s: &str) -> RadPoly {
    RadPoly::from_poly(r, &poly(s))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn steps(pairs: &[(&str, i64)]) -> Vec<(Var, Rational)> {
    pairs.iter().map(|(v, c)| (Var::new(v), int(*c))).collect()
}

pub fn run_scenario(id: ScenarioId) -> Report {
    run_scenario_variant(id, Variant::Original)
}

pub fn run_scenario_variant(id: ScenarioId, variant: Variant) -> Report {
    let mutated = variant == Variant::Mutated;
    let mut b = Builder { checks: Vec::new() };
    match id {
        ScenarioId::Ex1 => ex1(&mut b, mutated),
        ScenarioId::Ex2 => ex2(&mut b, mutated),
        ScenarioId::Ex3 => ex3(&mut b, mutated),
        ScenarioId::Ex4 => ex4(&mut b, mutated),
        ScenarioId::Ex5 => ex5(&mut b, mutated),
    }
    Report {
        scenario: id,
        variant,
        checks: b.checks,
    }
}

fn ex1(b: &mut Builder, mutated: bool) {
    let r = ring(if mutated { "u^3 = 1 + 2*z^2" } else { "u^3 = 1 + z^2" });
    let surface = rad(&r, "x^3 - (1 + z^2)*y^3");
    let linear = rad(&r, "x - u*y");
    let cofactor = rad(&r, "x^2 + u*x*y + u^2*y^2");

    b.check(
        "factorization",
        "x^3 - (1+z^2) y^3 = (x - u y)(x^2 + u x y + u^2 y^2) with u^3 = 1+z^2",
        || {
            let product = rad_arith(RadOp::Mul, &linear, &cofactor)?;
            Ok((product == surface, format!("({linear})*({cofactor}) = {product}")))
        },
    );
    b.check(
        "cofactor",
        "dividing the surface equation by x - u y leaves the second factor",
        || {
            let q = rad_exact_divide(&surface, &linear)?;
            Ok((q == cofactor, q.to_string()))
        },
    );
    b.check(
        "restriction_to_surface",
        "x - u y vanishes on the surface, so x/y equals u there",
        || {
            let f = ratfun("x/y");
            let num = RadPoly::from_poly(&r, f.num());
            let den = RadPoly::from_poly(&r, f.den());
            let u = RadPoly::generator(&r);
            let residue = num.sub(&u.mul(&den)?)?;
            let q = rad_exact_divide(&residue, &linear)?;
            let divides_surface = rad_exact_divide(&surface, &linear).is_ok();
            let unit = q.to_poly().is_constant() && !q.is_zero();
            Ok((unit && divides_surface, format!("x - u*y = ({q})*({linear})")))
        },
    );
    b.check(
        "order_dependence",
        "restricting x^2/(x^2+y^2) to the z-axis depends on the order of x and y",
        || {
            let f = ratfun("x^2/(x^2 + y^2)");
            let xy = f.iterated_restrict(&steps(&[("x", 0), ("y", 0)]))?;
            let yx = f.iterated_restrict(&steps(&[("y", 0), ("x", 0)]))?;
            Ok((
                xy == RatFun::zero() && yx == RatFun::one(),
                format!("x then y: {xy}; y then x: {yx}"),
            ))
        },
    );
    b.check(
        "axis_restriction_is_rational",
        "cancelling common factors after each coordinate restriction yields a rational function of z",
        || {
            let f = ratfun("(x*z + y*(1 + z^2))/(x + y)");
            let g = f.iterated_restrict(&steps(&[("x", 0), ("y", 0)]))?;
            let only_z = g.vars().iter().all(|v| v.name() == "z");
            Ok((only_z && g == ratfun("1 + z^2"), g.to_string()))
        },
    );
}

fn ex2(b: &mut Builder, mutated: bool) {
    let tail = if mutated { "y^5" } else { "y^7" };
    let defining = poly(&format!("(x^3 - (1 + t^2)*y^3)^2 + z^6 + {tail}"));
    let chart = ChartMap::new(
        [("x", "x1*y1"), ("y", "y1"), ("z", "z1*y1")]
            .iter()
            .map(|(v, s)| (Var::new(v), poly(s)))
            .collect(),
        Var::new("y1"),
    )
    .expect("chart mentions y1");
    let expected_strict = poly("(x1^3 - (1 + t^2))^2 + z1^6 + y1");

    b.check(
        "chart_identity",
        "the chart pull-back is y1^6 times the smooth strict transform",
        || {
            let (m, strict) = blowup_chart_substitute(&defining, &chart)?;
            Ok((m == 6 && strict == expected_strict, format!("y1^{m} * ({strict})")))
        },
    );
    b.check(
        "multiplicity_is_maximal",
        "the strict transform is not divisible by the exceptional variable",
        || {
            let (_, strict) = blowup_chart_substitute(&defining, &chart)?;
            let divisible = strict.exact_div(&poly("y1")).is_ok();
            Ok((
                !divisible,
                format!("strict transform mod y1: {}", strict.partial_eval(&point(&[("y1", 0)]))),
            ))
        },
    );
    b.check(
        "pullback_of_f",
        "f composed with the chart is the coordinate x1",
        || {
            let f = ratfun("x/y");
            let num = chart.pull_back(f.num());
            let den = chart.pull_back(f.den());
            let g = RatFun::new(num, den)?;
            Ok((g == ratfun("x1"), g.to_string()))
        },
    );
    b.check(
        "singular_along_t_axis",
        "the defining polynomial and all its partial derivatives vanish on the t-axis",
        || {
            let axis = point(&[("x", 0), ("y", 0), ("z", 0)]);
            let mut rows = vec![defining.partial_eval(&axis)];
            for v in ["x", "y", "z", "t"] {
                rows.push(defining.derivative(&Var::new(v)).partial_eval(&axis));
            }
            let all_zero = rows.iter().all(Poly::is_zero);
            let shown: Vec<String> = rows.iter().map(ToString::to_string).collect();
            Ok((all_zero, shown.join(", ")))
        },
    );
    b.check(
        "preimage_of_axis_point",
        "over (0,0,0,t) the strict transform vanishes at x1 = cube root of 1+t^2",
        || {
            let (_, strict) = blowup_chart_substitute(&defining, &chart)?;
            let r = ring("u^3 = 1 + t^2");
            let on_axis = strict.partial_eval(&point(&[("y1", 0), ("z1", 0)]));
            let sigma = BTreeMap::from([(Var::new("x1"), poly("u"))]);
            let value = RadPoly::from_poly(&r, &on_axis.substitute(&sigma));
            Ok((value.is_zero(), format!("strict(u, 0, 0, t) = {value}")))
        },
    );
}

fn ex3(b: &mut Builder, mutated: bool) {
    let r = ring("u^3 = 1 + x3^2");
    let coeff = if mutated {
        "x1^3 - (1 + 2*x3^2)*x2^3"
    } else {
        "x1^3 - (1 + x3^2)*x2^3"
    };
    let d = rad(&r, "x1^2 + u*x1*x2 + u^2*x2^2");

    b.check(
        "semialgebraic_solution",
        "y1 = u, y2 = x1^3 / (x1^2 + u x1 x2 + u^2 x2^2) solves the equation",
        || {
            // both sides multiplied by D
            let lhs = rad(&r, "x1^3*x2*u")
                .mul(&d)?
                .add(&rad(&r, coeff).mul(&rad(&r, "x1^3"))?)?;
            let rhs = rad(&r, "x1^4").mul(&d)?;
            let residue = lhs.sub(&rhs)?;
            Ok((residue.is_zero(), format!("residue {residue}")))
        },
    );
    b.check(
        "half_norm_bound",
        "x1^2 + u x1 x2 + u^2 x2^2 >= (x1^2 + x2^2)/2",
        || {
            let target = rad(&r, "2*(x1^2 + u*x1*x2 + u^2*x2^2) - (x1^2 + x2^2)");
            let cert = PositivityCertificate::new(target)
                .square(int(1), rad(&r, "x1 + u*x2"))
                .side(rad(&r, "u^2 - 1"), poly("x2^2"), "u^2 >= 1 since u^3 = 1 + x3^2 >= 1");
            let check = cert.check()?;
            Ok((check.verified(), cert.to_string()))
        },
    );
    b.check("rational_solution", "y1 = x1/x2, y2 = 0 is a rational solution", || {
        let lhs = ratfun("x1^3*x2").mul(&ratfun("x1/x2"));
        let rhs = ratfun("x1^4");
        Ok((lhs == rhs, format!("x1^3*x2 * x1/x2 = {lhs}")))
    });
    b.check(
        "restriction_forced_to_u",
        "the y2 coefficient vanishes where x1 = u x2, forcing y1 = x1/x2 = u there",
        || {
            let linear = rad(&r, "x1 - u*x2");
            let q = rad_exact_divide(&rad(&r, coeff), &linear)?;
            let forced = ratfun("x1^4/(x1^3*x2)");
            let same = forced == ratfun("x1/x2");
            Ok((same, format!("coefficient = ({linear})*({q}); y1 = {forced}")))
        },
    );
}

fn point(coords: &[(&str, i64)]) -> Point {
    coords.iter().map(|(v, c)| (Var::new(v), int(*c))).collect()
}

fn ex4(b: &mut Builder, mutated: bool) {
    let sign = if mutated { "+" } else { "-" };
    let f = ratfun(&format!("z^2*(x^2 + y^2*z^2 {sign} y^3)/(x^2 + y^2*z^2 + y^4)"));
    let numerator = poly(&format!("z^2*(x^2 + y^2*z^2 {sign} y^3)"));
    let den = poly("x^2 + y^2*z^2 + y^4");

    b.check(
        "rewriting_identity",
        "f = z^2 - y(1+y) y^2 z^2 / (x^2 + y^2 z^2 + y^4)",
        || {
            let lhs = numerator.clone();
            let rhs = &(&poly("z^2") * &den) - &poly("y*(1 + y)*y^2*z^2");
            Ok((lhs == rhs, format!("{lhs} - ({rhs}) = {}", &lhs - &rhs)))
        },
    );
    b.check(
        "bounded_fraction",
        "y^2 z^2 / (x^2 + y^2 z^2 + y^4) is bounded by 1",
        || {
            let cert = PositivityCertificate::new(&den - &poly("y^2*z^2"))
                .square(int(1), poly("x"))
                .square(int(1), poly("y^2"));
            Ok((cert.check()?.verified(), cert.to_string()))
        },
    );
    b.check("axis_limits", "limits at (0,0,z0) equal z0^2 for z0 = 0, 1, 2", || {
        let probes = [
            [("x", "t"), ("y", "t"), ("z", "0")],
            [("x", "t"), ("y", "0"), ("z", "0")],
            [("x", "0"), ("y", "t"), ("z", "0")],
            [("x", "t"), ("y", "t^2"), ("z", "0")],
            [("x", "t^2"), ("y", "t"), ("z", "t")],
            [("x", "-t"), ("y", "2*t"), ("z", "-t")],
        ];
        let mut ok = true;
        let mut shown = Vec::new();
        for z0 in [0, 1, 2] {
            let base = point(&[("x", 0), ("y", 0), ("z", z0)]);
            let mut seen = Vec::new();
            for probe in &probes {
                let comps = probe.iter().map(|(v, s)| (Var::new(v), poly(s))).collect();
                let curve = Curve::new(comps, base.clone(), Semantics::RealTwoSided)?;
                let res = curve_limit(&f, &curve)?;
                let expected = LimitKind::Finite(int(z0 * z0));
                ok &= res.kind == expected && res.sides_agree();
                seen.push(res.kind.to_string());
            }
            seen.dedup();
            shown.push(format!("z0={z0}: {}", seen.join("/")));
        }
        Ok((ok, shown.join("; ")))
    });
    b.check("axis_restriction", "restricting x = 0 then y = 0 gives z^2", || {
        let g = f.iterated_restrict(&steps(&[("x", 0), ("y", 0)]))?;
        Ok((g == ratfun("z^2"), g.to_string()))
    });
    b.check(
        "vanishes_on_surface",
        "the numerator lies in the ideal of the surface x^2 + y^2 z^2 - y^3",
        || {
            let surface = Ideal::from_gens(vec![poly("x^2 + y^2*z^2 - y^3")]);
            let gb = buchberger(&surface, &TermOrder::grevlex(&["x", "y", "z"]), DEFAULT_BUDGET)?;
            let nf = gb.normal_form(&numerator);
            Ok((nf.is_zero(), format!("normal form {nf}")))
        },
    );
}

fn ex5(b: &mut Builder, mutated: bool) {
    let den = if mutated { "x^4 + y^2" } else { "x^2 + y^2" };
    let f = ratfun(&format!("x^3/({den})"));
    let coeffs: Vec<Rational> = [-3, -2, -1, 1, 2, 3].into_iter().map(int).collect();
    let search = discontinuity_search(&f, &point(&[("x", 0), ("y", 0)]), 4, &coeffs);

    b.check(
        "no_witness_within_budget",
        "no pair of probed curves through the origin gives different limits",
        || match &search {
            Ok(SearchOutcome::NotFound { curves_probed, .. }) => Ok((
                true,
                format!("budget-limited evidence: {curves_probed} curves, E=4, C={{+-1,+-2,+-3}}"),
            )),
            Ok(SearchOutcome::Witness(w)) => Ok((
                false,
                format!("{} -> {}, {} -> {}", w.curve_a, w.limit_a, w.curve_b, w.limit_b),
            )),
            Err(e) => Err(e.clone()),
        },
    );
    b.check("all_limits_zero", "every probed curve limit is 0", || match &search {
        Ok(SearchOutcome::NotFound { limits, .. }) => {
            let shown: Vec<String> = limits.iter().map(ToString::to_string).collect();
            Ok((limits == &[LimitKind::Finite(int(0))], shown.join(", ")))
        }
        Ok(SearchOutcome::Witness(w)) => Ok((false, format!("{} and {}", w.limit_a, w.limit_b))),
        Err(e) => Err(e.clone()),
    });
    b.check(
        "degree_criterion",
        "numerator degree 3 exceeds the degree 2 of the positive definite denominator",
        || {
            let q = f.den().clone();
            let cert = even_monomial_certificate(&q)
                .ok_or_else(|| Error::BadProblem(format!("{q} is not a sum of even monomials")))?;
            let c = continuity_at_origin_by_degree(f.num(), &q, &cert)?;
            let pass = matches!(c, ContinuityConclusion::ContinuousAtOrigin { .. });
            Ok((pass, format!("{c:?}")))
        },
    );
    b.check(
        "two_sided_bound",
        "x^2 (x^2+y^2)^2 - x^6 = 2 (x^2 y)^2 + (x y^2)^2, so |f| <= |x|",
        || {
            let target = &(&poly("x^2") * &f.den().pow(2)) - &f.num().pow(2);
            let cert = PositivityCertificate::new(target)
                .square(int(2), poly("x^2*y"))
                .square(int(1), poly("x*y^2"));
            Ok((cert.check()?.verified(), cert.to_string()))
        },
    );
    b.check(
        "value_at_origin",
        "the continuous extension is 0 at the origin and its chart pull-back x1/(1+y1^2) vanishes on the exceptional line",
        || {
            let axis = Curve::monomial(
                &point(&[("x", 0), ("y", 0)]),
                &[(Var::new("x"), int(1), 1)],
                Semantics::RealTwoSided,
            );
            let lim = curve_limit(&f, &axis)?;
            let chart = ChartMap::new(
                BTreeMap::from([(Var::new("x"), poly("x1")), (Var::new("y"), poly("x1*y1"))]),
                Var::new("x1"),
            )?;
            let pulled = RatFun::new(chart.pull_back(f.num()), chart.pull_back(f.den()))?;
            let on_exceptional = pulled.iterated_restrict(&steps(&[("x1", 0)]))?;
            let pass = lim.kind == LimitKind::Finite(int(0))
                && lim.sides_agree()
                && pulled == ratfun("x1/(1 + y1^2)")
                && on_exceptional.is_zero();
            Ok((pass, format!("limit {}; pull-back {pulled}", lim.kind)))
        },
    );
}
