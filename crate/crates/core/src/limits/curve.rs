use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::corealg::{fmt_rational, Point, Poly, RatFun, Rational, Var};
use crate::error::{Error, Result};

/// Name of the curve parameter in user-facing component expressions.
pub const PARAM: &str = "t";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// `t -> 0+`.
    RealOneSided,
    /// Both `t -> 0+` and `t -> 0-`, reported separately.
    RealTwoSided,
    /// `t`-adic: only the orders and leading coefficients matter.
    Valuation,
}

/// `x_v(t) = base_v + component_v(t)` with every component in `t Q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    components: BTreeMap<Var, Poly>,
    base: Point,
    semantics: Semantics,
}

impl Curve {
    /// Constant terms of the components are moved into the base point.
    pub fn new(components: BTreeMap<Var, Poly>, base: Point, semantics: Semantics) -> Result<Curve> {
        let t = Var::new(PARAM);
        let mut base = base;
        let mut comps = BTreeMap::new();
        for (v, c) in components {
            if let Some(bad) = c.vars().into_iter().find(|w| *w != t) {
                return Err(Error::BadCurve(format!(
                    "component of {v} depends on {bad}, only {PARAM} is allowed"
                )));
            }
            let constant = c.coefficients_in(&t).first().and_then(Poly::as_constant);
            let mut c = c;
            if let Some(k) = constant.filter(|k| !k.is_zero()) {
                c = &c - &Poly::constant(k.clone());
                let b = base.entry(v.clone()).or_insert_with(Rational::zero);
                *b += k;
            }
            base.entry(v.clone()).or_insert_with(Rational::zero);
            if !c.is_zero() {
                comps.insert(v, c);
            }
        }
        Ok(Curve {
            components: comps,
            base,
            semantics,
        })
    }

    /// `x_v = base_v + c_v t^{e_v}` for every listed variable.
    pub fn monomial(base: &Point, terms: &[(Var, Rational, u32)], semantics: Semantics) -> Curve {
        let t = Var::new(PARAM);
        let components = terms
            .iter()
            .map(|(v, c, e)| (v.clone(), Poly::var(t.name()).pow(*e).scale(c)))
            .collect();
        Curve::new(components, base.clone(), semantics).expect("components are in t")
    }

    pub fn components(&self) -> &BTreeMap<Var, Poly> {
        &self.components
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn with_semantics(&self, semantics: Semantics) -> Curve {
        Curve {
            semantics,
            ..self.clone()
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.base.keys().chain(self.components.keys()).cloned().collect()
    }

    /// Substitutes `t -> s(t)` in every component.
    pub fn reparametrize(&self, s: &Poly) -> Curve {
        let sigma = BTreeMap::from([(Var::new(PARAM), s.clone())]);
        let components = self
            .components
            .iter()
            .map(|(v, c)| (v.clone(), c.substitute(&sigma)))
            .collect();
        Curve::new(components, self.base.clone(), self.semantics).expect("components are in t")
    }

    /// The curve traversed as `t -> 0-`.
    pub fn reflected(&self) -> Curve {
        self.reparametrize(&-Poly::var(PARAM))
    }

    /// Coefficients in `t` of `p` composed with the curve, lowest first.
    pub fn compose(&self, p: &Poly) -> Result<Vec<Rational>> {
        let t = Var::new(PARAM);
        let covered = self.vars();
        if let Some(v) = p.vars().into_iter().find(|v| !covered.contains(v)) {
            return Err(Error::BadCurve(format!("curve does not prescribe {v}")));
        }
        if covered.contains(&t) {
            return Err(Error::BadCurve(format!("{PARAM} is reserved for the parameter")));
        }
        let sigma: BTreeMap<Var, Poly> = covered
            .iter()
            .map(|v| {
                let b = Poly::constant(self.base.get(v).cloned().unwrap_or_else(Rational::zero));
                let c = self.components.get(v).cloned().unwrap_or_else(Poly::zero);
                (v.clone(), &b + &c)
            })
            .collect();
        Ok(p.substitute(&sigma)
            .coefficients_in(&t)
            .iter()
            .map(|c| c.as_constant().expect("only t remains"))
            .collect())
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.vars();
        let comps: Vec<String> = vars
            .iter()
            .map(|v| {
                let c = self.components.get(v).cloned().unwrap_or_else(Poly::zero);
                format!("{v}={c}")
            })
            .collect();
        let base: Vec<String> = vars
            .iter()
            .map(|v| fmt_rational(self.base.get(v).unwrap_or(&Rational::zero())))
            .collect();
        write!(f, "{} @ ({})", comps.join(", "), base.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
    /// A pole under valuation semantics, where no sign is attached.
    UnsignedInfinity,
    /// The denominator vanishes identically along the curve.
    IdenticallyUndefined,
}

impl LimitKind {
    pub fn is_finite(&self) -> bool {
        matches!(self, LimitKind::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(
            self,
            LimitKind::PlusInfinity | LimitKind::MinusInfinity | LimitKind::UnsignedInfinity
        )
    }

    pub fn finite_value(&self) -> Option<&Rational> {
        match self {
            LimitKind::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Two limits along curves through one point that rule out continuity.
    pub fn conflicts_with(&self, other: &LimitKind) -> bool {
        match (self, other) {
            (LimitKind::Finite(a), LimitKind::Finite(b)) => a != b,
            (LimitKind::Finite(_), o) | (o, LimitKind::Finite(_)) => o.is_infinite(),
            _ => false,
        }
    }
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::Finite(v) => f.write_str(&fmt_rational(v)),
            LimitKind::PlusInfinity => f.write_str("+inf"),
            LimitKind::MinusInfinity => f.write_str("-inf"),
            LimitKind::UnsignedInfinity => f.write_str("inf"),
            LimitKind::IdenticallyUndefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub kind: LimitKind,
    /// `ord_t` of the numerator along the curve; `None` if it vanishes identically.
    pub num_order: Option<usize>,
    /// `ord_t` of the denominator along the curve; `None` if it vanishes identically.
    pub den_order: Option<usize>,
    /// The `t -> 0-` side, present under two-sided semantics.
    pub minus_side: Option<LimitKind>,
}

impl LimitResult {
    /// Under two-sided semantics, whether both sides agree.
    pub fn sides_agree(&self) -> bool {
        self.minus_side.as_ref().is_none_or(|m| *m == self.kind)
    }
}

fn order_and_lead(coeffs: &[Rational]) -> Option<(usize, &Rational)> {
    coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
}

/// Classifies `lim_{t -> 0} f(gamma(t))` from the `t`-adic orders and
/// leading coefficients of numerator and denominator.
pub fn curve_limit(f: &RatFun, gamma: &Curve) -> Result<LimitResult> {
    let num = gamma.compose(f.num())?;
    let den = gamma.compose(f.den())?;
    let n = order_and_lead(&num);
    let d = order_and_lead(&den);
    let (num_order, den_order) = (n.map(|x| x.0), d.map(|x| x.0));
    let Some((b, lb)) = d else {
        return Ok(LimitResult {
            kind: LimitKind::IdenticallyUndefined,
            num_order,
            den_order,
            minus_side: (gamma.semantics == Semantics::RealTwoSided).then_some(LimitKind::IdenticallyUndefined),
        });
    };
    let side = |minus: bool| -> LimitKind {
        let Some((a, la)) = n else {
            return LimitKind::Finite(Rational::zero());
        };
        if a > b {
            return LimitKind::Finite(Rational::zero());
        }
        // the factor (-1)^(a-b) from t^(a-b) is folded into the ratio
        let flip = minus && (b - a) % 2 == 1;
        let ratio = if flip { -(la / lb) } else { la / lb };
        if a == b {
            LimitKind::Finite(ratio)
        } else if gamma.semantics == Semantics::Valuation {
            LimitKind::UnsignedInfinity
        } else if ratio.is_positive() {
            LimitKind::PlusInfinity
        } else {
            LimitKind::MinusInfinity
        }
    };
    Ok(LimitResult {
        kind: side(false),
        num_order,
        den_order,
        minus_side: (gamma.semantics == Semantics::RealTwoSided).then(|| side(true)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::{p, q, r};

    fn curve(comps: &[(&str, &str)], base: &[(&str, &str)], semantics: Semantics) -> Curve {
        Curve::new(
            comps.iter().map(|(v, c)| (Var::new(v), p(c))).collect(),
            base.iter().map(|(v, c)| (Var::new(v), q(c))).collect(),
            semantics,
        )
        .unwrap()
    }

    fn lim(f: &str, comps: &[(&str, &str)]) -> LimitKind {
        curve_limit(&r(f), &curve(comps, &[], Semantics::RealOneSided))
            .unwrap()
            .kind
    }

    #[test]
    fn classic_limits() {
        assert_eq!(
            lim("x^3/(x^2 + y^2)", &[("x", "t"), ("y", "t")]),
            LimitKind::Finite(q("0"))
        );
        assert_eq!(
            lim("x^2/(x^2 + y^2)", &[("x", "t"), ("y", "0")]),
            LimitKind::Finite(q("1"))
        );
        assert_eq!(
            lim("x^2/(x^2 + y^2)", &[("x", "0"), ("y", "t")]),
            LimitKind::Finite(q("0"))
        );
        assert_eq!(lim("x/y", &[("x", "t^2"), ("y", "t")]), LimitKind::Finite(q("0")));
        assert_eq!(lim("x/y", &[("x", "t"), ("y", "t^2")]), LimitKind::PlusInfinity);
        assert_eq!(lim("x/y", &[("x", "-t"), ("y", "t^2")]), LimitKind::MinusInfinity);
        assert_eq!(lim("x/y", &[("x", "t"), ("y", "0")]), LimitKind::IdenticallyUndefined);
    }

    #[test]
    fn constant_terms_move_into_the_base() {
        let c = curve(&[("x", "t"), ("y", "t"), ("z", "1")], &[], Semantics::RealOneSided);
        assert_eq!(c.base().get(&Var::new("z")), Some(&q("1")));
        assert!(!c.components().contains_key(&Var::new("z")));
        let f = r("z^2*(x^2 + y^2*z^2 - y^3)/(x^2 + y^2*z^2 + y^4)");
        assert_eq!(curve_limit(&f, &c).unwrap().kind, LimitKind::Finite(q("1")));
    }

    #[test]
    fn orders_are_reported() {
        let res = curve_limit(
            &r("x^3/(x^2 + y^2)"),
            &curve(&[("x", "t"), ("y", "2*t")], &[], Semantics::RealOneSided),
        )
        .unwrap();
        assert_eq!((res.num_order, res.den_order), (Some(3), Some(2)));
    }

    #[test]
    fn two_sided_and_valuation() {
        let c = curve(&[("x", "t"), ("y", "t^2")], &[], Semantics::RealTwoSided);
        let res = curve_limit(&r("x/y"), &c).unwrap();
        assert_eq!(res.kind, LimitKind::PlusInfinity);
        assert_eq!(res.minus_side, Some(LimitKind::MinusInfinity));
        assert!(!res.sides_agree());
        let res = curve_limit(&r("1/x^2"), &c).unwrap();
        assert_eq!(res.minus_side, Some(LimitKind::PlusInfinity));
        let v = curve_limit(&r("x/y"), &c.with_semantics(Semantics::Valuation)).unwrap();
        assert_eq!(v.kind, LimitKind::UnsignedInfinity);
        assert_eq!(v.minus_side, None);
    }

    #[test]
    fn uncovered_variables_are_rejected() {
        let c = curve(&[("x", "t")], &[], Semantics::RealOneSided);
        assert!(matches!(curve_limit(&r("x/y"), &c), Err(Error::BadCurve(_))));
        assert!(Curve::new(
            BTreeMap::from([(Var::new("x"), p("s"))]),
            Point::new(),
            Semantics::RealOneSided
        )
        .is_err());
    }

    #[test]
    fn conflicts() {
        let zero = LimitKind::Finite(q("0"));
        assert!(zero.conflicts_with(&LimitKind::Finite(q("1"))));
        assert!(zero.conflicts_with(&LimitKind::PlusInfinity));
        assert!(!LimitKind::PlusInfinity.conflicts_with(&LimitKind::MinusInfinity));
        assert!(!zero.conflicts_with(&LimitKind::IdenticallyUndefined));
    }
}
