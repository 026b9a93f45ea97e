use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::Rational;
use crate::error::{Error, Result};

/// A point: an assignment of rational values to variables.
pub type Point = BTreeMap<Var, Rational>;

/// Multivariate polynomial over the rationals in canonical sparse form.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so they are sorted
/// by graded reverse lexicographic order and the leading term is the last
/// entry. Zero coefficients are never stored, which makes structural
/// equality coincide with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        Poly::term(Rational::one(), Monomial::var(Var::new(name), 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading monomial and coefficient under the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lm) else {
                return Err(Error::DivisionError(format!("{divisor} does not divide {self}")));
            };
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Simultaneous substitution. Variables not in `sigma` are left alone.
    pub fn substitute(&self, sigma: &BTreeMap<Var, Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.powers() {
                match sigma.get(v) {
                    Some(image) => {
                        let pw = cache.entry((v.clone(), *e)).or_insert_with(|| image.pow(*e)).clone();
                        term = &term * &pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !kept.is_empty() {
                term = term.mul_monomial(&Monomial::from_pairs(kept));
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes rational values for some of the variables.
    pub fn partial_eval(&self, point: &Point) -> Poly {
        let sigma = point
            .iter()
            .map(|(v, c)| (v.clone(), Poly::constant(c.clone())))
            .collect();
        self.substitute(&sigma)
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = point.get(v).ok_or_else(|| Error::IncompletePoint(v.to_string()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, v: &Var) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split_off(v);
            (e > 0).then(|| {
                (
                    rest.mul(&Monomial::var(v.clone(), e - 1)),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            })
        }))
    }

    /// Coefficients with respect to `v`: `self = Σ coeffs[i]·v^i`.
    pub fn coefficients_in(&self, v: &Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients(v: &Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var(v.clone(), i as u32));
        }
        out
    }

    /// Largest `e` such that `v^e` divides `self` (zero for the zero polynomial).
    pub fn var_multiplicity(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0)
    }

    /// Lcm of coefficient denominators divided by gcd of coefficient numerators;
    /// multiplying by it yields a primitive integer polynomial.
    pub fn integer_normalizer(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(den_lcm, num_gcd)
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut k = self.integer_normalizer();
        if self.leading_coeff().is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Prints terms from the leading one down, in a syntax the expression
    /// parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::p;

    #[test]
    fn difference_of_squares() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(&a * &b, p("x^2 - y^2"));
        assert_eq!(p("x^2 - y^2").exact_div(&a).unwrap(), b);
    }

    #[test]
    fn cube_factor_expansion() {
        // distribute all nine term pairs by hand
        let lhs = &p("x - u*y") * &p("x^2 + u*x*y + u^2*y^2");
        let mut expected = Poly::zero();
        for (a, b) in [
            ("x", "x^2"),
            ("x", "u*x*y"),
            ("x", "u^2*y^2"),
            ("-u*y", "x^2"),
            ("-u*y", "u*x*y"),
            ("-u*y", "u^2*y^2"),
        ] {
            expected = &expected + &(&p(a) * &p(b));
        }
        assert_eq!(lhs, expected);
        assert_eq!(lhs, p("x^3 - u^3*y^3"));
    }

    #[test]
    fn exact_div_errors() {
        assert_eq!(p("x").exact_div(&Poly::zero()), Err(Error::ZeroDivisor));
        assert!(matches!(
            p("x^2 + 1").exact_div(&p("x + 1")),
            Err(Error::DivisionError(_))
        ));
    }

    #[test]
    fn substitution() {
        let mut s = BTreeMap::new();
        s.insert(Var::new("x"), Poly::zero());
        assert_eq!(p("x^2 + y^2").substitute(&s), p("y^2"));

        let mut s = BTreeMap::new();
        s.insert(Var::new("x"), p("t"));
        s.insert(Var::new("y"), p("t"));
        assert_eq!(p("x^3").substitute(&s), p("t^3"));
        assert_eq!(p("x^2 + y^2").substitute(&s), p("2*t^2"));

        // simultaneous, not sequential
        let mut s = BTreeMap::new();
        s.insert(Var::new("x"), p("y"));
        s.insert(Var::new("y"), p("x"));
        assert_eq!(p("x - 2*y").substitute(&s), p("y - 2*x"));
    }

    #[test]
    fn blowup_chart_of_normal_surface() {
        let mut s = BTreeMap::new();
        s.insert(Var::new("x"), p("x1*y1"));
        s.insert(Var::new("y"), p("y1"));
        s.insert(Var::new("z"), p("z1*y1"));
        let f = p("(x^3 - (1 + t^2)*y^3)^2 + z^6 + y^7").substitute(&s);
        let expected = &p("y1^6") * &p("(x1^3 - (1 + t^2))^2 + z1^6 + y1");
        assert_eq!(f, expected);
    }

    #[test]
    fn evaluation_and_missing_binding() {
        let mut pt = Point::new();
        pt.insert(Var::new("x"), Rational::from_integer(2.into()));
        assert_eq!(p("x^2 + 1/2").evaluate(&pt).unwrap(), Rational::new(9.into(), 2.into()));
        assert_eq!(p("x*y").evaluate(&pt), Err(Error::IncompletePoint("y".into())));
    }

    #[test]
    fn derivative_and_display() {
        assert_eq!(p("x^3*y + 2*y").derivative(&Var::new("x")), p("3*x^2*y"));
        assert_eq!(p("1/2*x^2 - y + 3").to_string(), "1/2*x^2 - y + 3");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        assert_eq!(p("-2/3*x + 4/3").primitive_part(), p("x - 2"));
        assert_eq!(p("y^2").var_multiplicity(&Var::new("y")), 2);
    }
}
