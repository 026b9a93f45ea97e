//! Extension of a regular function from a subvariety `Z` to a rational
//! function on the ambient space that is regular at every rational point,
//! together with an independent verification of the result.

mod problem;

pub use problem::parse_problem;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::corealg::{Point, Poly, RatFun, Var};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Ideal, TermOrder, DEFAULT_BUDGET};

/// `f = p / q` near `point`, with `q(point) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRep {
    pub point: Point,
    pub p: Poly,
    pub q: Poly,
}

/// Homogeneous `G` in fresh variables with `G = sum G_i x_i`, assumed to
/// have the origin as its only rational zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormForm {
    vars: Vec<Var>,
    g: Poly,
    parts: Vec<Poly>,
}

impl NormForm {
    /// Validates homogeneity and the decomposition identity. Anisotropy is
    /// taken on trust.
    pub fn new(vars: Vec<Var>, g: Poly, parts: Vec<Poly>) -> Result<NormForm> {
        if vars.is_empty() {
            return Err(Error::EmptyForm);
        }
        if parts.len() != vars.len() {
            return Err(Error::BadNormForm(format!(
                "{} parts for {} variables",
                parts.len(),
                vars.len()
            )));
        }
        if g.is_zero() || !g.is_homogeneous() {
            return Err(Error::BadNormForm(format!("{g} is not homogeneous")));
        }
        let allowed: Vec<&Var> = vars.iter().collect();
        if let Some(v) = g
            .vars()
            .iter()
            .chain(parts.iter().flat_map(|p| p.vars()).collect::<Vec<_>>().iter())
            .find(|v| !allowed.contains(v))
        {
            return Err(Error::BadNormForm(format!("unexpected variable {v}")));
        }
        let sum = vars
            .iter()
            .zip(&parts)
            .fold(Poly::zero(), |acc, (v, gi)| &acc + &(gi * &Poly::var(v.name())));
        if sum != g {
            return Err(Error::BadNormForm(format!("sum G_i x_i = {sum} differs from {g}")));
        }
        Ok(NormForm { vars, g, parts })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn parts(&self) -> &[Poly] {
        &self.parts
    }

    fn apply(&self, p: &Poly, qs: &[Poly]) -> Poly {
        let sigma: BTreeMap<Var, Poly> = self.vars.iter().cloned().zip(qs.iter().cloned()).collect();
        p.substitute(&sigma)
    }
}

impl fmt::Display for NormForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.g)
    }
}

/// `G = s1^2 + ... + sr^2` with `G_i = s_i`.
pub fn sum_of_squares_norm_form(r: usize) -> Result<NormForm> {
    if r == 0 {
        return Err(Error::EmptyForm);
    }
    let vars: Vec<Var> = (1..=r).map(|i| Var::new(&format!("s{i}"))).collect();
    let parts: Vec<Poly> = vars.iter().map(|v| Poly::var(v.name())).collect();
    let g = parts.iter().fold(Poly::zero(), |acc, s| &acc + &s.pow(2));
    NormForm::new(vars, g, parts)
}

/// Local representatives of `f` on `Z = V(ideal)`, checked for consistency.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    ideal: Vec<Poly>,
    reps: Vec<LocalRep>,
    samples: Vec<Point>,
    gb: GroebnerBasis,
}

impl ExtensionProblem {
    /// Checks that every generator vanishes at every rep point, that each
    /// `q` is nonzero at its point, and that `p_i q_j - p_j q_i` lies in
    /// the ideal of `Z`.
    pub fn new(ideal: Vec<Poly>, reps: Vec<LocalRep>, samples: Vec<Point>) -> Result<ExtensionProblem> {
        if reps.is_empty() {
            return Err(Error::BadProblem("no local representatives".into()));
        }
        let ideal: Vec<Poly> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        for (i, rep) in reps.iter().enumerate() {
            let n = i + 1;
            if rep.q.evaluate(&rep.point)?.is_zero() {
                return Err(Error::BadProblem(format!("q{n} vanishes at its point")));
            }
            for g in &ideal {
                if !g.evaluate(&rep.point)?.is_zero() {
                    return Err(Error::BadProblem(format!(
                        "generator {g} does not vanish at the point of rep {n}"
                    )));
                }
            }
        }
        let vars: Vec<Var> = ideal
            .iter()
            .chain(reps.iter().flat_map(|r| [&r.p, &r.q]))
            .flat_map(Poly::vars)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let gb = buchberger(
            &Ideal::new(ideal.clone(), &vars),
            &TermOrder::new(crate::groebner::OrderKind::Grevlex, vars.clone()),
            DEFAULT_BUDGET,
        )?;
        if gb.is_unit() {
            return Err(Error::BadProblem("the variety is empty".into()));
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                let c = &(&reps[i].p * &reps[j].q) - &(&reps[j].p * &reps[i].q);
                if !gb.contains(&c) {
                    return Err(Error::IncompatibleReps(i + 1, j + 1));
                }
            }
        }
        Ok(ExtensionProblem {
            ideal,
            reps,
            samples,
            gb,
        })
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn reps(&self) -> &[LocalRep] {
        &self.reps
    }

    pub fn samples(&self) -> &[Point] {
        &self.samples
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// `r = m + (number of ideal generators)`.
    pub fn arity(&self) -> usize {
        self.reps.len() + self.ideal.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    /// `q_1..q_m` from the reps followed by the ideal generators.
    pub qs: Vec<Poly>,
    /// `p_1..p_m` from the reps, then `p_i = q_i` for `i > m`.
    pub ps: Vec<Poly>,
    /// `sum G_i(q) p_i`, before normalization.
    pub numerator: Poly,
    /// `G(q)`, before normalization.
    pub denominator: Poly,
    /// `numerator / denominator` in lowest terms.
    pub f: RatFun,
}

/// `F = sum G_i(q_1..q_r) p_i / G(q_1..q_r)`.
pub fn extend_regular(problem: &ExtensionProblem, form: &NormForm) -> Result<ExtensionResult> {
    if form.arity() != problem.arity() {
        return Err(Error::BadNormForm(format!(
            "form has arity {} but the problem needs {}",
            form.arity(),
            problem.arity()
        )));
    }
    let qs: Vec<Poly> = problem
        .reps
        .iter()
        .map(|r| r.q.clone())
        .chain(problem.ideal.iter().cloned())
        .collect();
    let ps: Vec<Poly> = problem
        .reps
        .iter()
        .map(|r| r.p.clone())
        .chain(problem.ideal.iter().cloned())
        .collect();
    let numerator = form
        .parts
        .iter()
        .zip(&ps)
        .fold(Poly::zero(), |acc, (gi, p)| &acc + &(&form.apply(gi, &qs) * p));
    let denominator = form.apply(&form.g, &qs);
    let f = RatFun::new(numerator.clone(), denominator.clone())?;
    Ok(ExtensionResult {
        qs,
        ps,
        numerator,
        denominator,
        f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionVerdict {
    pub pass: bool,
    /// Normal form of `numerator * q_1 - denominator * p_1` modulo `I(Z)`.
    pub residue: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityRoute {
    /// `1` lies in `(q_1, ..., q_r)`: no common zero at all.
    UnitIdeal,
    /// A Gröbner basis element of `(q_1, ..., q_r)` that is a positive
    /// constant plus positive multiples of even monomials: no real common zero.
    PositiveElement(Poly),
    /// The denominator is nonzero at every supplied sample point only.
    SpotCheck { points: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpotCheck {
    pub points: usize,
    pub zeros: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub pass: bool,
    pub unit_ideal: bool,
    pub positive_element: Option<Poly>,
    pub spot_check: SpotCheck,
    /// Strongest route that succeeded.
    pub route: Option<RegularityRoute>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub point: Point,
    pub expected: crate::corealg::Rational,
    pub value: Option<crate::corealg::Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseVerdict {
    pub pass: bool,
    pub points: Vec<PointCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub restriction: RestrictionVerdict,
    pub regularity: RegularityVerdict,
    pub pointwise: PointwiseVerdict,
}

impl ExtensionReport {
    pub fn pass(&self) -> bool {
        self.restriction.pass && self.regularity.pass && self.pointwise.pass
    }
}

fn is_positive_definite_shape(p: &Poly) -> bool {
    let constant = p.coeff(&crate::corealg::Monomial::one());
    constant.is_positive() && p.terms().all(|(m, c)| m.is_square() && c.is_positive())
}

/// Checks the restriction identity, regularity evidence and the values at
/// the rep points, each independently of how `result` was produced.
pub fn verify_extension(problem: &ExtensionProblem, result: &ExtensionResult) -> Result<ExtensionReport> {
    let rep1 = &problem.reps[0];
    let residue = problem
        .gb
        .normal_form(&(&(&result.numerator * &rep1.q) - &(&result.denominator * &rep1.p)));
    let restriction = RestrictionVerdict {
        pass: residue.is_zero(),
        residue,
    };

    let vars: Vec<Var> = result
        .qs
        .iter()
        .flat_map(Poly::vars)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let qgb = buchberger(
        &Ideal::new(result.qs.clone(), &vars),
        &TermOrder::new(crate::groebner::OrderKind::Grevlex, vars),
        DEFAULT_BUDGET,
    )?;
    let unit_ideal = qgb.is_unit();
    let positive_element = if unit_ideal {
        None
    } else {
        qgb.basis().iter().find(|g| is_positive_definite_shape(g)).cloned()
    };
    let mut zeros = Vec::new();
    for s in &problem.samples {
        if result.denominator.evaluate(s)?.is_zero() {
            zeros.push(s.clone());
        }
    }
    let spot_check = SpotCheck {
        points: problem.samples.len(),
        zeros,
    };
    let spot_ok = spot_check.points > 0 && spot_check.zeros.is_empty();
    let route = if unit_ideal {
        Some(RegularityRoute::UnitIdeal)
    } else if let Some(e) = &positive_element {
        Some(RegularityRoute::PositiveElement(e.clone()))
    } else if spot_ok {
        Some(RegularityRoute::SpotCheck {
            points: spot_check.points,
        })
    } else {
        None
    };
    let regularity = RegularityVerdict {
        pass: route.is_some() && spot_check.zeros.is_empty(),
        unit_ideal,
        positive_element,
        spot_check,
        route,
    };

    let mut points = Vec::new();
    for rep in &problem.reps {
        let expected = rep.p.evaluate(&rep.point)? / rep.q.evaluate(&rep.point)?;
        let value = result.f.evaluate(&rep.point)?;
        points.push(PointCheck {
            point: rep.point.clone(),
            expected,
            value,
        });
    }
    let pointwise = PointwiseVerdict {
        pass: points.iter().all(|c| c.value.as_ref() == Some(&c.expected)),
        points,
    };
    Ok(ExtensionReport {
        restriction,
        regularity,
        pointwise,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::expr::parse_point;
    use crate::corealg::test_support::{p, r};
    use crate::groebner::restrict_to_variety;

    fn rep(point: &str, pp: &str, qq: &str) -> LocalRep {
        LocalRep {
            point: parse_point(point).unwrap(),
            p: p(pp),
            q: p(qq),
        }
    }

    fn grid() -> Vec<Point> {
        let mut out = Vec::new();
        for x in -2..=2 {
            for y in -2..=2 {
                out.push(parse_point(&format!("x={x}, y={y}")).unwrap());
            }
        }
        out
    }

    #[test]
    fn norm_forms() {
        let g1 = sum_of_squares_norm_form(1).unwrap();
        assert_eq!(g1.g(), &p("s1^2"));
        assert_eq!(g1.parts(), &[p("s1")]);
        let g3 = sum_of_squares_norm_form(3).unwrap();
        assert_eq!(g3.g(), &p("s1^2 + s2^2 + s3^2"));
        assert_eq!(sum_of_squares_norm_form(0).unwrap_err(), Error::EmptyForm);
        let vars = vec![Var::new("a"), Var::new("b")];
        assert!(NormForm::new(vars.clone(), p("a^2 + 2*b^2"), vec![p("a"), p("2*b")]).is_ok());
        assert!(NormForm::new(vars.clone(), p("a^2 + b^2"), vec![p("a"), p("a")]).is_err());
        assert!(NormForm::new(vars, p("a^2 + b"), vec![p("a"), p("1")]).is_err());
    }

    #[test]
    fn line_example() {
        let problem = ExtensionProblem::new(vec![p("y")], vec![rep("x=0, y=0", "x", "1")], grid()).unwrap();
        let res = extend_regular(&problem, &sum_of_squares_norm_form(2).unwrap()).unwrap();
        assert_eq!(res.f, r("(x + y^2)/(1 + y^2)"));
        assert_eq!(restrict_to_variety(&res.f, problem.groebner_basis()).unwrap(), r("x"));
        let report = verify_extension(&problem, &res).unwrap();
        assert!(report.pass());
        assert_eq!(report.regularity.route, Some(RegularityRoute::UnitIdeal));
    }

    #[test]
    fn circle_example() {
        let problem =
            ExtensionProblem::new(vec![p("x^2 + y^2 - 1")], vec![rep("x=1, y=0", "x", "2 + y")], grid()).unwrap();
        let res = extend_regular(&problem, &sum_of_squares_norm_form(2).unwrap()).unwrap();
        assert_eq!(res.numerator, p("(2 + y)*x + (x^2 + y^2 - 1)^2"));
        assert_eq!(res.denominator, p("(2 + y)^2 + (x^2 + y^2 - 1)^2"));
        assert_eq!(
            restrict_to_variety(&res.f, problem.groebner_basis()).unwrap(),
            r("x/(2 + y)")
        );
        let report = verify_extension(&problem, &res).unwrap();
        assert!(report.restriction.pass && report.pointwise.pass);
        // common zeros (+-i*sqrt(3), -2) exist over C, so 1 is not in the ideal
        assert!(!report.regularity.unit_ideal);
        assert_eq!(report.regularity.positive_element, Some(p("x^2 + 3")));
        assert!(report.regularity.pass);
        assert!(report.regularity.spot_check.zeros.is_empty());
    }

    #[test]
    fn degenerate_single_rep() {
        let problem = ExtensionProblem::new(vec![], vec![rep("x=0", "x^3 - 2", "1")], vec![]).unwrap();
        let res = extend_regular(&problem, &sum_of_squares_norm_form(1).unwrap()).unwrap();
        assert_eq!(res.f, r("x^3 - 2"));
    }

    #[test]
    fn tampered_denominator_fails_restriction() {
        let problem = ExtensionProblem::new(vec![p("y")], vec![rep("x=0, y=0", "x", "1")], grid()).unwrap();
        let mut res = extend_regular(&problem, &sum_of_squares_norm_form(2).unwrap()).unwrap();
        res.denominator = &res.denominator + &p("x");
        let report = verify_extension(&problem, &res).unwrap();
        assert!(!report.restriction.pass);
        assert_eq!(report.restriction.residue, p("-x^2"));
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            ExtensionProblem::new(vec![p("y")], vec![rep("x=0, y=1", "x", "1")], vec![]),
            Err(Error::BadProblem(_))
        ));
        assert!(matches!(
            ExtensionProblem::new(vec![p("y")], vec![rep("x=0, y=0", "1", "x")], vec![]),
            Err(Error::BadProblem(_))
        ));
        let err = ExtensionProblem::new(
            vec![p("y")],
            vec![rep("x=0, y=0", "x", "1"), rep("x=1, y=0", "x + 1", "1")],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::IncompatibleReps(1, 2));
        let problem = ExtensionProblem::new(
            vec![p("y")],
            vec![rep("x=0, y=0", "x", "1"), rep("x=1, y=0", "x^2 + x*y", "x + y")],
            vec![],
        )
        .unwrap();
        let res = extend_regular(&problem, &sum_of_squares_norm_form(3).unwrap()).unwrap();
        assert!(verify_extension(&problem, &res).unwrap().pass());
        assert!(extend_regular(&problem, &sum_of_squares_norm_form(2).unwrap()).is_err());
    }
}
