//! Randomized suites shared by the property tests and the acceptance gate.
//! Each returns the number of cases run, or the first counterexample.

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use ratcont::corealg::{poly_gcd, rat_normalize, Poly, Rational, Var};
use ratcont::extend::{extend_regular, sum_of_squares_norm_form, verify_extension, ExtensionProblem, LocalRep};
use ratcont::groebner::{buchberger, Ideal, TermOrder};
use ratcont::limits::{curve_limit, Curve, LimitKind, Semantics};

use super::*;

const XYZ: &[&str] = &["x", "y", "z"];
const XY: &[&str] = &["x", "y"];
const X: &[&str] = &["x"];

pub const TOLERANCE: f64 = 1e-6;

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

pub fn ring_axioms(cases: u32) -> Result<u32, String> {
    let strat = (
        poly_in(XYZ, 4, 2),
        poly_in(XYZ, 4, 2),
        poly_in(XYZ, 4, 2),
        point_in(XYZ),
    );
    runner(cases)
        .run(&strat, |(a, b, c, at)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            #[allow(clippy::eq_op)]
            let self_difference = &a - &a;
            prop_assert!(self_difference.is_zero());
            prop_assert_eq!(&a * &Poly::one(), a.clone());
            // evaluation is a ring homomorphism
            let ev = |p: &Poly| p.evaluate(&at).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
            prop_assert_eq!(ev(&(&a - &b)), ev(&a) - ev(&b));
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

pub fn gcd_divisibility(cases: u32) -> Result<u32, String> {
    let strat = (
        nonzero_poly_in(XY, 3, 2),
        nonzero_poly_in(XY, 3, 2),
        nonzero_poly_in(XY, 3, 2),
    );
    runner(cases)
        .run(&strat, |(a, b, c)| {
            let (ac, bc) = (&a * &c, &b * &c);
            let g = poly_gcd(&ac, &bc);
            prop_assert!(g.divides(&ac), "gcd {} does not divide {}", g, ac);
            prop_assert!(g.divides(&bc), "gcd {} does not divide {}", g, bc);
            prop_assert!(c.divides(&g), "common factor {} lost from gcd {}", c, g);
            let cofactor_gcd = poly_gcd(&ac.exact_div(&g).unwrap(), &bc.exact_div(&g).unwrap());
            prop_assert!(cofactor_gcd.is_constant());
            prop_assert_eq!(rat_normalize(&ac, &bc).unwrap(), rat_normalize(&a, &b).unwrap());
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

pub fn normal_form_idempotence(cases: u32) -> Result<u32, String> {
    let strat = (
        nonzero_poly_in(XY, 3, 2),
        nonzero_poly_in(XY, 3, 2),
        poly_in(XY, 4, 3),
        poly_in(XY, 2, 1),
    );
    let order = TermOrder::grevlex(&["x", "y"]);
    runner(cases)
        .run(&strat, |(g1, g2, f, m)| {
            let vars = [Var::new("x"), Var::new("y")];
            let gb = buchberger(&Ideal::new(vec![g1.clone(), g2.clone()], &vars), &order, 10_000)
                .map_err(|e| fail(e.to_string()))?;
            let r = gb.normal_form(&f);
            prop_assert_eq!(gb.normal_form(&r), r.clone());
            prop_assert!(gb.normal_form(&(&f - &r)).is_zero());
            prop_assert_eq!(gb.normal_form(&(&f + &(&m * &g1))), r.clone());
            prop_assert!(gb.normal_form(&g2).is_zero());
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn curve_strategy() -> impl Strategy<Value = (Point, Vec<(Var, Rational, u32)>)> {
    let coeff = prop::sample::select(vec![-2i64, -1, 1, 2]);
    (
        prop::collection::vec(-1i64..=1, 2),
        prop::collection::vec((coeff, 1u32..=3), 2),
    )
        .prop_map(|(base, terms)| {
            let vars = [Var::new("x"), Var::new("y")];
            let base = vars.iter().cloned().zip(base.into_iter().map(q)).collect();
            let terms = vars
                .iter()
                .cloned()
                .zip(terms)
                .map(|(v, (c, e))| (v, q(c), e))
                .collect();
            (base, terms)
        })
}

/// Compares the exact limit with values of f at t = 10^-6 and beyond: a
/// third-order Richardson extrapolation for finite limits, growth and sign
/// for infinite ones.
pub fn limit_float_oracle(cases: u32) -> Result<u32, String> {
    let strat = (poly_in(XY, 3, 3), nonzero_poly_in(XY, 3, 3), curve_strategy());
    runner(cases)
        .run(&strat, |(num, den, (base, terms))| {
            let f = rat_normalize(&num, &den).unwrap();
            let curve = Curve::monomial(&base, &terms, Semantics::RealOneSided);
            let res = curve_limit(&f, &curve).map_err(|e| fail(e.to_string()))?;
            let h = qq(1, 1_000_000);
            let at = |k: i64| eval_on_curve(&f, &base, &terms, &(&h / q(k)));
            match &res.kind {
                LimitKind::IdenticallyUndefined => {
                    for k in [1, 2, 3, 7] {
                        prop_assert!(at(k).is_none(), "{} defined along {}", f, curve);
                    }
                }
                LimitKind::Finite(l) => {
                    let (g1, g2, g4) = (at(1).unwrap(), at(2).unwrap(), at(4).unwrap());
                    let est = (q(8) * g4 - q(6) * g2 + g1) / q(3);
                    let (est, l) = (to_f64(&est), to_f64(l));
                    prop_assert!(
                        (est - l).abs() <= TOLERANCE * l.abs().max(1.0),
                        "{} along {}: exact {} vs float {}",
                        f,
                        curve,
                        l,
                        est
                    );
                }
                LimitKind::PlusInfinity | LimitKind::MinusInfinity => {
                    let (g1, g10) = (to_f64(&at(1).unwrap()), to_f64(&at(10).unwrap()));
                    let sign = if res.kind == LimitKind::PlusInfinity { 1.0 } else { -1.0 };
                    prop_assert!(g1 * sign > 0.0 && g10 * sign > 0.0, "{} along {}: sign", f, curve);
                    prop_assert!(g10.abs() >= 5.0 * g1.abs(), "{} along {}: no growth", f, curve);
                }
                LimitKind::UnsignedInfinity => prop_assert!(false, "unsigned infinity under real semantics"),
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn with_constant(p: Poly, c: i64) -> Poly {
    &p + &Poly::int(c)
}

/// Random problems on the graph y = h(x): two compatible representatives
/// p/q and (pR)/(qR) at distinct points of the curve.
pub fn extension_identity(cases: u32) -> Result<u32, String> {
    let nonzero = prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]);
    let strat = (
        poly_in(X, 3, 2),
        poly_in(XY, 3, 2),
        (poly_in(XY, 2, 2), nonzero.clone()),
        (poly_in(XY, 2, 1), nonzero),
        (-2i64..=2, 1i64..=3),
    );
    runner(cases)
        .run(&strat, |(h, pp, (qq0, c1), (rr0, c2), (a, gap))| {
            let (qp, rp) = (with_constant(qq0, c1), with_constant(rr0, c2));
            let variety = &p("y") - &h;
            let on_curve = |xv: i64| {
                let x_only = pt(&format!("x={xv}"));
                let yv = h.evaluate(&x_only).unwrap();
                let mut point = x_only;
                point.insert(Var::new("y"), yv);
                point
            };
            let (z1, z2) = (on_curve(a), on_curve(a + gap));
            let nonvanishing = |poly: &Poly, z: &Point| !poly.evaluate(z).unwrap().is_zero();
            if !nonvanishing(&qp, &z1) || !nonvanishing(&(&qp * &rp), &z2) {
                return Err(TestCaseError::reject("denominator vanishes at a point"));
            }
            let reps = vec![
                LocalRep {
                    point: z1,
                    p: pp.clone(),
                    q: qp.clone(),
                },
                LocalRep {
                    point: z2,
                    p: &pp * &rp,
                    q: &qp * &rp,
                },
            ];
            let samples = vec![pt("x=0, y=0"), pt("x=1, y=-1"), pt("x=-2, y=3")];
            let problem =
                ExtensionProblem::new(vec![variety], reps, samples.clone()).map_err(|e| fail(e.to_string()))?;
            let form = sum_of_squares_norm_form(problem.arity()).unwrap();
            let result = extend_regular(&problem, &form).map_err(|e| fail(e.to_string()))?;
            let report = verify_extension(&problem, &result).map_err(|e| fail(e.to_string()))?;
            prop_assert!(report.restriction.pass, "residue {}", report.restriction.residue);
            prop_assert!(report.pointwise.pass);
            for s in &samples {
                prop_assert!(result.denominator.evaluate(s).unwrap() >= q(0));
            }
            Ok(())
        })
        .map(|_| cases)
        .map_err(|e| e.to_string())
}
