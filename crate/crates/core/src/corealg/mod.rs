//! Exact arithmetic: multivariate polynomials and rational functions over Q,
//! and radical extension rings `Q[x][u]/(u^k - m)`.

mod gcd;
mod monomial;
mod poly;
mod radical;
mod ratfun;

use std::collections::BTreeMap;

pub use gcd::poly_gcd;
pub use monomial::{Monomial, Var};
pub use poly::{Point, Poly};
pub use radical::{rad_arith, rad_exact_divide, RadOp, RadPoly, RadicalRing};
pub use ratfun::{rat_normalize, RatFun};

pub(crate) use poly::fmt_rational;

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

pub fn poly_arith(op: PolyOp, a: &Poly, b: &Poly) -> crate::Result<Poly> {
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::ExactDiv => a.exact_div(b)?,
    })
}

pub fn substitute(p: &Poly, sigma: &BTreeMap<Var, Poly>) -> Poly {
    p.substitute(sigma)
}

/// Parses a rational literal such as `3`, `-7/2`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}
