use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::corealg::{RatFun, Rational, Var};
use crate::error::{Error, Result};

/// Truncated p-adic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PAdic {
    /// `p^valuation * unit + O(p^(valuation + precision))`, `unit` reduced
    /// modulo `p^precision` and prime to `p`.
    Value {
        prime: u64,
        valuation: i64,
        unit: BigInt,
        precision: u32,
    },
    /// Indistinguishable from zero: `O(p^absolute)`.
    Zero { prime: u64, absolute: i64 },
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_p(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

/// Splits `n != 0` into `p^v * m` with `m` prime to `p`.
fn split(n: &BigInt, p: u64) -> (i64, BigInt) {
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    (v, m)
}

fn inverse_mod(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.mod_floor(modulus).extended_gcd(modulus);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(modulus)
}

impl PAdic {
    pub fn check_prime(prime: u64) -> Result<()> {
        if is_prime(prime) {
            Ok(())
        } else {
            Err(Error::BadPadic(format!("{prime} is not prime")))
        }
    }

    /// Builds `p^valuation * unit` with `precision` significant digits.
    pub fn new(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Result<PAdic> {
        PAdic::check_prime(prime)?;
        if precision == 0 {
            return Err(Error::BadPadic("precision must be at least one digit".into()));
        }
        if (&unit % BigInt::from(prime)).is_zero() {
            return Err(Error::BadPadic(format!("unit {unit} is divisible by {prime}")));
        }
        Ok(PAdic::Value {
            prime,
            valuation,
            unit: unit.mod_floor(&pow_p(prime, precision)),
            precision,
        })
    }

    /// The expansion of an exact rational to `precision` significant digits.
    pub fn from_rational(prime: u64, q: &Rational, precision: u32) -> Result<PAdic> {
        PAdic::check_prime(prime)?;
        if precision == 0 {
            return Err(Error::BadPadic("precision must be at least one digit".into()));
        }
        if q.is_zero() {
            return Ok(PAdic::Zero {
                prime,
                absolute: i64::from(precision),
            });
        }
        let (vn, n) = split(q.numer(), prime);
        let (vd, d) = split(q.denom(), prime);
        let m = pow_p(prime, precision);
        Ok(PAdic::Value {
            prime,
            valuation: vn - vd,
            unit: (n * inverse_mod(&d, &m)).mod_floor(&m),
            precision,
        })
    }

    pub fn prime(&self) -> u64 {
        match self {
            PAdic::Value { prime, .. } | PAdic::Zero { prime, .. } => *prime,
        }
    }

    /// `None` for a value indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            PAdic::Value { valuation, .. } => Some(*valuation),
            PAdic::Zero { .. } => None,
        }
    }

    /// Exponent `N` of the error term `O(p^N)`.
    pub fn absolute_precision(&self) -> i64 {
        match self {
            PAdic::Value {
                valuation, precision, ..
            } => valuation + i64::from(*precision),
            PAdic::Zero { absolute, .. } => *absolute,
        }
    }

    /// Whether `q` lies in the ball this value describes.
    pub fn agrees_with(&self, q: &Rational) -> bool {
        let n = self.absolute_precision();
        let diff = match self {
            PAdic::Zero { .. } => q.clone(),
            PAdic::Value {
                prime, valuation, unit, ..
            } => {
                let scale = Rational::from_integer(BigInt::from(*prime)).pow(*valuation as i32);
                q - Rational::from_integer(unit.clone()) * scale
            }
        };
        if diff.is_zero() {
            return true;
        }
        let (vn, _) = split(diff.numer(), self.prime());
        let (vd, _) = split(diff.denom(), self.prime());
        vn - vd >= n
    }

    fn mul(&self, other: &PAdic) -> PAdic {
        let prime = self.prime();
        match (self, other) {
            (
                PAdic::Value {
                    valuation: va,
                    unit: ua,
                    precision: pa,
                    ..
                },
                PAdic::Value {
                    valuation: vb,
                    unit: ub,
                    precision: pb,
                    ..
                },
            ) => {
                let precision = *pa.min(pb);
                PAdic::Value {
                    prime,
                    valuation: va + vb,
                    unit: (ua * ub).mod_floor(&pow_p(prime, precision)),
                    precision,
                }
            }
            (PAdic::Zero { absolute, .. }, PAdic::Value { valuation, .. })
            | (PAdic::Value { valuation, .. }, PAdic::Zero { absolute, .. }) => PAdic::Zero {
                prime,
                absolute: absolute + valuation,
            },
            (PAdic::Zero { absolute: a, .. }, PAdic::Zero { absolute: b, .. }) => {
                PAdic::Zero { prime, absolute: a + b }
            }
        }
    }

    fn add(&self, other: &PAdic) -> PAdic {
        let prime = self.prime();
        let n = self.absolute_precision().min(other.absolute_precision());
        let terms: Vec<(i64, &BigInt)> = [self, other]
            .into_iter()
            .filter_map(|x| match x {
                PAdic::Value { valuation, unit, .. } if *valuation < n => Some((*valuation, unit)),
                _ => None,
            })
            .collect();
        let Some(v) = terms.iter().map(|(v, _)| *v).min() else {
            return PAdic::Zero { prime, absolute: n };
        };
        let width = (n - v) as u32;
        let m = pow_p(prime, width);
        let sum = terms
            .iter()
            .fold(BigInt::zero(), |acc, (vi, u)| acc + *u * pow_p(prime, (vi - v) as u32))
            .mod_floor(&m);
        if sum.is_zero() {
            return PAdic::Zero { prime, absolute: n };
        }
        let (shift, unit) = split(&sum, prime);
        let precision = width - shift as u32;
        PAdic::Value {
            prime,
            valuation: v + shift,
            unit: unit.mod_floor(&pow_p(prime, precision)),
            precision,
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdic::Value {
                prime,
                valuation,
                unit,
                precision,
            } => write!(
                f,
                "{prime}^{valuation} * {unit} + O({prime}^{})",
                valuation + i64::from(*precision)
            ),
            PAdic::Zero { prime, absolute } => write!(f, "O({prime}^{absolute})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadicOutcome {
    Value(PAdic),
    /// The denominator is indistinguishable from zero at this precision.
    Undefined {
        den: PAdic,
    },
}

fn eval_poly(p: &crate::corealg::Poly, point: &BTreeMap<Var, PAdic>, prime: u64, cap: u32) -> Result<PAdic> {
    let mut acc = PAdic::Zero {
        prime,
        absolute: i64::MAX / 4,
    };
    for (m, c) in p.terms() {
        let mut t = PAdic::from_rational(prime, c, cap)?;
        for (v, e) in m.powers() {
            let x = point.get(v).ok_or_else(|| Error::IncompletePoint(v.to_string()))?;
            for _ in 0..*e {
                t = t.mul(x);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Evaluates `f` in truncated p-adic arithmetic. A division by a value of
/// valuation `v > 0` costs `v` significant digits.
pub fn padic_evaluate(f: &RatFun, point: &BTreeMap<Var, PAdic>) -> Result<PadicOutcome> {
    let prime = match point.values().next() {
        Some(x) => x.prime(),
        None => return Err(Error::BadPadic("empty point".into())),
    };
    if point.values().any(|x| x.prime() != prime) {
        return Err(Error::BadPadic("coordinates over different primes".into()));
    }
    PAdic::check_prime(prime)?;
    let widest = point
        .values()
        .map(|x| match x {
            PAdic::Value { precision, .. } => *precision,
            PAdic::Zero { absolute, .. } => (*absolute).clamp(1, 1 << 16) as u32,
        })
        .max()
        .unwrap_or(1);
    // constants are exact; carrying extra digits keeps them from limiting precision
    let cap = widest + 64;
    let num = eval_poly(f.num(), point, prime, cap)?;
    let den = eval_poly(f.den(), point, prime, cap)?;
    let PAdic::Value {
        valuation: vd,
        unit: ud,
        precision: pd,
        ..
    } = &den
    else {
        return Ok(PadicOutcome::Undefined { den });
    };
    let lost = (*vd).max(0);
    match &num {
        PAdic::Zero { absolute, .. } => Ok(PadicOutcome::Value(PAdic::Zero {
            prime,
            absolute: absolute - vd,
        })),
        PAdic::Value {
            valuation: vn,
            unit: un,
            precision: pn,
            ..
        } => {
            let available = i64::from(*pn.min(pd));
            let precision = available - lost;
            if precision < 1 {
                return Err(Error::PrecisionLoss { available, lost });
            }
            let precision = precision as u32;
            let m = pow_p(prime, precision);
            Ok(PadicOutcome::Value(PAdic::Value {
                prime,
                valuation: vn - vd,
                unit: (un * inverse_mod(ud, &m)).mod_floor(&m),
                precision,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::{q, r};

    fn point(prime: u64, coords: &[(&str, &str)], precision: u32) -> BTreeMap<Var, PAdic> {
        coords
            .iter()
            .map(|(v, x)| (Var::new(v), PAdic::from_rational(prime, &q(x), precision).unwrap()))
            .collect()
    }

    #[test]
    fn anomaly_fraction_at_a_p_adic_point() {
        let f = r("x^2/(x^2 + y^2)");
        let out = padic_evaluate(&f, &point(5, &[("x", "5"), ("y", "25")], 10)).unwrap();
        let PadicOutcome::Value(v) = out else {
            panic!("undefined")
        };
        assert_eq!(v.valuation(), Some(0));
        assert!(matches!(v, PAdic::Value { precision: 8, .. }));
        assert!(v.agrees_with(&q("1/26")));
        assert!(!v.agrees_with(&(q("1/26") + q("78125"))));
    }

    #[test]
    fn valuations() {
        let out = padic_evaluate(&r("1/x"), &point(3, &[("x", "27")], 6)).unwrap();
        let PadicOutcome::Value(v) = out else {
            panic!("undefined")
        };
        assert_eq!(v.valuation(), Some(-3));
        assert!(v.agrees_with(&q("1/27")));
        let x0 = BTreeMap::from([
            (Var::new("x"), PAdic::Zero { prime: 7, absolute: 5 }),
            (Var::new("y"), PAdic::from_rational(7, &q("3"), 5).unwrap()),
        ]);
        let out = padic_evaluate(&r("x/y"), &x0).unwrap();
        assert!(matches!(out, PadicOutcome::Value(PAdic::Zero { .. })));
    }

    #[test]
    fn undefined_and_precision_loss() {
        let out = padic_evaluate(&r("1/(x - 1)"), &point(2, &[("x", "1")], 4)).unwrap();
        assert!(matches!(out, PadicOutcome::Undefined { .. }));
        let err = padic_evaluate(&r("1/x"), &point(2, &[("x", "16")], 3)).unwrap_err();
        assert_eq!(err, Error::PrecisionLoss { available: 3, lost: 4 });
    }

    #[test]
    fn cancellation_reduces_precision() {
        let a = PAdic::from_rational(5, &q("1"), 6).unwrap();
        let b = PAdic::from_rational(5, &q("-126"), 6).unwrap();
        let s = a.add(&b);
        assert_eq!(s.valuation(), Some(3));
        assert_eq!(s.absolute_precision(), 6);
        assert!(s.agrees_with(&q("-125")));
    }

    #[test]
    fn validation() {
        assert!(PAdic::new(4, 0, 1.into(), 3).is_err());
        assert!(PAdic::new(5, 0, 10.into(), 3).is_err());
        assert!(PAdic::new(5, 0, 1.into(), 0).is_err());
        assert_eq!(PAdic::new(5, 1, 27.into(), 2).unwrap().to_string(), "5^1 * 2 + O(5^3)");
    }
}
