use std::collections::BTreeMap;

use crate::corealg::{Monomial, Poly, Var};
use crate::error::{Error, Result};

/// Polynomial chart of a blow-up: each listed variable is replaced by its
/// image, the others are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    substitutions: BTreeMap<Var, Poly>,
    exceptional: Var,
}

impl ChartMap {
    pub fn new(substitutions: BTreeMap<Var, Poly>, exceptional: Var) -> Result<ChartMap> {
        if !substitutions.values().any(|p| p.vars().contains(&exceptional)) {
            return Err(Error::BadProblem(format!(
                "exceptional variable {exceptional} does not occur in the chart"
            )));
        }
        Ok(ChartMap {
            substitutions,
            exceptional,
        })
    }

    pub fn substitutions(&self) -> &BTreeMap<Var, Poly> {
        &self.substitutions
    }

    pub fn exceptional(&self) -> &Var {
        &self.exceptional
    }

    pub fn pull_back(&self, p: &Poly) -> Poly {
        p.substitute(&self.substitutions)
    }
}

/// Writes `p` composed with the chart as `e^m * strict` with `strict` not
/// divisible by the exceptional variable `e`; returns `(m, strict)`.
pub fn blowup_chart_substitute(p: &Poly, chart: &ChartMap) -> Result<(u32, Poly)> {
    let pulled = chart.pull_back(p);
    if pulled.is_zero() {
        return Err(Error::BadProblem("pull-back vanishes identically".into()));
    }
    let e = chart.exceptional();
    let m = pulled.var_multiplicity(e);
    let strict = pulled.exact_div(&Poly::term(num_traits::One::one(), Monomial::var(e.clone(), m)))?;
    Ok((m, strict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::p;

    fn chart(pairs: &[(&str, &str)], exc: &str) -> ChartMap {
        ChartMap::new(pairs.iter().map(|(v, s)| (Var::new(v), p(s))).collect(), Var::new(exc)).unwrap()
    }

    #[test]
    fn normal_hypersurface_chart() {
        let c = chart(&[("x", "x1*y1"), ("y", "y1"), ("z", "z1*y1")], "y1");
        let (m, strict) = blowup_chart_substitute(&p("(x^3 - (1 + t^2)*y^3)^2 + z^6 + y^7"), &c).unwrap();
        assert_eq!(m, 6);
        assert_eq!(strict, p("(x1^3 - (1 + t^2))^2 + z1^6 + y1"));
        assert!(strict.exact_div(&p("y1")).is_err());
    }

    #[test]
    fn small_charts() {
        let c = chart(&[("x", "x1*y1")], "y1");
        assert_eq!(blowup_chart_substitute(&p("x"), &c).unwrap(), (1, p("x1")));
        let c = chart(&[("y", "y1")], "y1");
        assert_eq!(blowup_chart_substitute(&p("y"), &c).unwrap(), (1, Poly::one()));
        assert!(ChartMap::new(BTreeMap::from([(Var::new("x"), p("x1"))]), Var::new("y1")).is_err());
    }
}
