use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::monomial::Var;
use super::poly::{Point, Poly};
use super::Rational;
use crate::error::{Error, Result};

/// A rational function `num / den` in lowest terms.
///
/// Normal form: `gcd(num, den) = 1`, all coefficients of `num` and `den` are
/// integers with no common integer factor, and the leading coefficient of
/// `den` is positive. Zero is `0 / 1`. With this normalization two rational
/// functions are equal iff their representations are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Puts `num / den` in lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = poly_gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let k = joint_normalizer(&num, &den);
        Ok(RatFun {
            num: num.scale(&k),
            den: den.scale(&k),
        })
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun::new(p, Poly::one()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_poly(&self) -> Option<Poly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Value at `point`; `None` where the denominator vanishes, even when a
    /// continuous extension exists there.
    pub fn evaluate(&self, point: &Point) -> Result<Option<Rational>> {
        let d = self.den.evaluate(point)?;
        let n = self.num.evaluate(point)?;
        Ok((!d.is_zero()).then(|| n / d))
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(&self.num * &other.num, &self.den * &other.den).expect("product of nonzero denominators")
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFun::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Restricts to coordinate hyperplanes one variable at a time, cancelling
    /// common factors before each substitution. The answer may depend on the
    /// order of `steps`.
    pub fn iterated_restrict(&self, steps: &[(Var, Rational)]) -> Result<RatFun> {
        let mut f = self.clone();
        for (step, (var, value)) in steps.iter().enumerate() {
            let mut pt = Point::new();
            pt.insert(var.clone(), value.clone());
            let den = f.den.partial_eval(&pt);
            if den.is_zero() {
                return Err(Error::RestrictionUndefined {
                    step,
                    var: var.to_string(),
                    value: super::poly::fmt_rational(value),
                });
            }
            f = RatFun::new(f.num.partial_eval(&pt), den)?;
        }
        Ok(f)
    }
}

/// Scalar making `num` and `den` jointly primitive over the integers with a
/// positive leading coefficient in `den`.
fn joint_normalizer(num: &Poly, den: &Poly) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in num.terms().chain(den.terms()) {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let k = Rational::new(den_lcm, num_gcd);
    if den.leading_coeff().is_negative() {
        -k
    } else {
        k
    }
}

/// `rat_normalize`: lowest-terms representative of `num / den`.
pub fn rat_normalize(num: &Poly, den: &Poly) -> Result<RatFun> {
    RatFun::new(num.clone(), den.clone())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
