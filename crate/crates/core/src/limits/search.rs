use std::collections::BTreeSet;

use super::curve::{curve_limit, Curve, LimitKind, Semantics};
use crate::corealg::{Point, RatFun, Rational, Var};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscontinuityWitness {
    pub point: Point,
    pub curve_a: Curve,
    pub curve_b: Curve,
    pub limit_a: LimitKind,
    pub limit_b: LimitKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(Box<DiscontinuityWitness>),
    /// No witness within the budget. This is not a continuity proof.
    NotFound {
        curves_probed: usize,
        /// Distinct limits seen, in order of first appearance.
        limits: Vec<LimitKind>,
    },
}

/// One coordinate of a probe curve: absent, or `C[coeff] * t^exp`.
type Slot = Option<(u32, usize)>;

fn probe_order(vars: usize, max_exp: u32, ncoeffs: usize) -> Vec<Vec<Slot>> {
    let mut slots: Vec<Slot> = vec![None];
    for e in 1..=max_exp {
        for c in 0..ncoeffs {
            slots.push(Some((e, c)));
        }
    }
    let mut all: Vec<Vec<Slot>> = vec![Vec::new()];
    for _ in 0..vars {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                slots.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push(*s);
                    v
                })
            })
            .collect();
    }
    all.retain(|v| v.iter().any(Option::is_some));
    let key = |v: &Vec<Slot>| {
        let exps: Vec<u32> = v.iter().map(|s| s.map_or(0, |(e, _)| e)).collect();
        let coeffs: Vec<usize> = v.iter().map(|s| s.map_or(0, |(_, c)| c)).collect();
        (exps.iter().sum::<u32>(), exps, coeffs)
    };
    all.sort_by_cached_key(key);
    all
}

/// Probes `f` along monomial curves `x_i = point_i + c_i t^{e_i}` with
/// `c_i` in `coeffs` and `1 <= e_i <= max_exp`, where any coordinate may
/// also stay fixed at the point. Curves are ordered by total exponent,
/// then exponent vector, then coefficient indices into `coeffs` sorted
/// ascending; the first conflicting pair is returned.
pub fn discontinuity_search(f: &RatFun, point: &Point, max_exp: u32, coeffs: &[Rational]) -> Result<SearchOutcome> {
    let coeffs: Vec<Rational> = coeffs
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vars: Vec<Var> = f
        .vars()
        .into_iter()
        .chain(point.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut base = point.clone();
    for v in &vars {
        base.entry(v.clone())
            .or_insert_with(<Rational as num_traits::Zero>::zero);
    }

    let mut seen: Vec<(LimitKind, Curve)> = Vec::new();
    let mut probed = 0;
    for probe in probe_order(vars.len(), max_exp, coeffs.len()) {
        let terms: Vec<(Var, Rational, u32)> = vars
            .iter()
            .zip(&probe)
            .filter_map(|(v, s)| s.map(|(e, c)| (v.clone(), coeffs[c].clone(), e)))
            .collect();
        let curve = Curve::monomial(&base, &terms, Semantics::RealOneSided);
        probed += 1;
        let limit = curve_limit(f, &curve)?.kind;
        if limit == LimitKind::IdenticallyUndefined {
            continue;
        }
        if let Some((first, earlier)) = seen.iter().find(|(l, _)| l.conflicts_with(&limit)) {
            return Ok(SearchOutcome::Witness(Box::new(DiscontinuityWitness {
                point: base,
                curve_a: earlier.clone(),
                curve_b: curve,
                limit_a: first.clone(),
                limit_b: limit,
            })));
        }
        if !seen.iter().any(|(l, _)| *l == limit) {
            seen.push((limit, curve));
        }
    }
    Ok(SearchOutcome::NotFound {
        curves_probed: probed,
        limits: seen.into_iter().map(|(l, _)| l).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::{q, r};
    use crate::limits::curve_limit;

    fn coeffs(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }

    #[test]
    fn axis_curves_expose_the_anomaly() {
        let out = discontinuity_search(&r("x^2/(x^2 + y^2)"), &Point::new(), 2, &coeffs(&[1])).unwrap();
        let SearchOutcome::Witness(w) = out else {
            panic!("expected a witness")
        };
        assert_eq!(w.limit_a, LimitKind::Finite(q("0")));
        assert_eq!(w.limit_b, LimitKind::Finite(q("1")));
        assert_eq!(w.curve_a.to_string(), "x=0, y=t @ (0,0)");
        assert_eq!(w.curve_b.to_string(), "x=t, y=0 @ (0,0)");
    }

    #[test]
    fn continuous_function_has_no_witness() {
        let out = discontinuity_search(&r("x^3/(x^2 + y^2)"), &Point::new(), 3, &coeffs(&[-2, -1, 1, 2])).unwrap();
        match out {
            SearchOutcome::NotFound { curves_probed, limits } => {
                assert_eq!(curves_probed, 13 * 13 - 1);
                assert_eq!(limits, vec![LimitKind::Finite(q("0"))]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_against_infinite() {
        let f = r("x1^4/(x1^3*x2)");
        let out = discontinuity_search(&f, &Point::new(), 2, &coeffs(&[1])).unwrap();
        assert!(matches!(out, SearchOutcome::Witness(_)));
        let diag = Curve::monomial(
            &Point::new(),
            &[(Var::new("x1"), q("1"), 1), (Var::new("x2"), q("1"), 1)],
            Semantics::RealOneSided,
        );
        let para = Curve::monomial(
            &Point::new(),
            &[(Var::new("x1"), q("1"), 1), (Var::new("x2"), q("1"), 2)],
            Semantics::RealOneSided,
        );
        assert_eq!(curve_limit(&f, &diag).unwrap().kind, LimitKind::Finite(q("1")));
        assert_eq!(curve_limit(&f, &para).unwrap().kind, LimitKind::PlusInfinity);
        assert!(LimitKind::Finite(q("1")).conflicts_with(&LimitKind::PlusInfinity));
    }

    #[test]
    fn off_origin_base_point() {
        let point: Point = [(Var::new("x"), q("1")), (Var::new("y"), q("0"))].into();
        let f = r("(x - 1)^2/((x - 1)^2 + y^2)");
        let out = discontinuity_search(&f, &point, 1, &coeffs(&[1])).unwrap();
        let SearchOutcome::Witness(w) = out else {
            panic!("expected a witness")
        };
        assert_eq!(w.point, point);
    }
}
