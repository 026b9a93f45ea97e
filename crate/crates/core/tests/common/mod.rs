#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use ratcont::cli::expr::{parse_point, parse_poly, parse_ratfun};
use ratcont::corealg::{Monomial, Point, Poly, RatFun, Rational, Var};

pub fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

pub fn r(s: &str) -> RatFun {
    parse_ratfun(s).unwrap()
}

pub fn pt(s: &str) -> Point {
    parse_point(s).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}

/// Fixed-seed runner without failure persistence.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config, rng)
}

/// Sparse polynomial in `vars` with at most `terms` terms, per-variable
/// degree at most `deg` and integer coefficients in [-3, 3].
pub fn poly_in(vars: &'static [&'static str], terms: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=deg, n), -3i64..=3), 0..=terms).prop_map(move |ts| {
        Poly::from_terms(ts.into_iter().map(|(es, c)| {
            let m = Monomial::from_pairs(vars.iter().zip(es).map(|(v, e)| (Var::new(v), e)));
            (m, q(c))
        }))
    })
}

pub fn nonzero_poly_in(vars: &'static [&'static str], terms: usize, deg: u32) -> impl Strategy<Value = Poly> {
    poly_in(vars, terms, deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| qq(n, d))
}

pub fn point_in(vars: &'static [&'static str]) -> impl Strategy<Value = Point> {
    prop::collection::vec(small_rational(), vars.len())
        .prop_map(move |cs| vars.iter().map(|v| Var::new(v)).zip(cs).collect())
}

/// Substitutes the curve `x_i = base_i + c_i t^{e_i}` at the numeric value
/// `t` and evaluates `f` exactly.
pub fn eval_on_curve(f: &RatFun, base: &Point, terms: &[(Var, Rational, u32)], t: &Rational) -> Option<Rational> {
    let mut point: BTreeMap<Var, Rational> = base.clone();
    for (v, c, e) in terms {
        let b = base.get(v).cloned().unwrap_or_else(|| q(0));
        point.insert(v.clone(), b + c * num_traits::pow(t.clone(), *e as usize));
    }
    for v in f.vars() {
        point.entry(v).or_insert_with(|| q(0));
    }
    f.evaluate(&point).unwrap()
}
