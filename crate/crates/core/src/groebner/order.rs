use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::corealg::{Monomial, Poly, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

impl std::str::FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(format!("unknown term order `{other}` (expected lex or grevlex)")),
        }
    }
}

/// A monomial order: lex or grevlex with the given variables listed from
/// largest to smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    vars: Vec<Var>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, vars: Vec<Var>) -> Self {
        let mut seen = BTreeSet::new();
        let vars = vars.into_iter().filter(|v| seen.insert(v.clone())).collect();
        TermOrder { kind, vars }
    }

    pub fn lex(vars: &[&str]) -> Self {
        TermOrder::new(OrderKind::Lex, vars.iter().map(|v| Var::new(v)).collect())
    }

    pub fn grevlex(vars: &[&str]) -> Self {
        TermOrder::new(OrderKind::Grevlex, vars.iter().map(|v| Var::new(v)).collect())
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Appends any variables of `extra` missing from the order, as the
    /// smallest variables, in name order.
    pub fn extended<'a, I: IntoIterator<Item = &'a Var>>(&self, extra: I) -> TermOrder {
        let present: BTreeSet<&Var> = self.vars.iter().collect();
        let missing: BTreeSet<Var> = extra.into_iter().filter(|v| !present.contains(v)).cloned().collect();
        let mut vars = self.vars.clone();
        vars.extend(missing);
        TermOrder { kind: self.kind, vars }
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::Grevlex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub(crate) fn exps_of(&self, m: &Monomial) -> Exps {
        let e: Exps = self.vars.iter().map(|v| m.exponent(v)).collect();
        debug_assert_eq!(e.iter().sum::<u32>(), m.degree(), "order misses a variable of {m}");
        e
    }

    pub(crate) fn monomial_of(&self, e: &[u32]) -> Monomial {
        Monomial::from_pairs(self.vars.iter().cloned().zip(e.iter().copied()))
    }

    pub(crate) fn to_dpoly(&self, p: &Poly) -> DPoly {
        let mut terms: Vec<(Exps, Rational)> = p.terms().map(|(m, c)| (self.exps_of(m), c.clone())).collect();
        terms.sort_by(|a, b| self.cmp_exps(&b.0, &a.0));
        DPoly { terms }
    }

    pub(crate) fn to_poly(&self, p: &DPoly) -> Poly {
        Poly::from_terms(p.terms.iter().map(|(e, c)| (self.monomial_of(e), c.clone())))
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::Grevlex => "grevlex",
        };
        let vars: Vec<&str> = self.vars.iter().map(Var::name).collect();
        write!(f, "{kind}({})", vars.join(" > "))
    }
}

pub(crate) type Exps = Vec<u32>;

pub(crate) fn exps_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn exps_lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn exps_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Polynomial with dense exponent vectors, terms sorted from the leading
/// term down under a fixed [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DPoly {
    pub terms: Vec<(Exps, Rational)>,
}

impl DPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn lead_coeff(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn monic(mut self) -> DPoly {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in self.terms.iter_mut() {
                    *c *= &inv;
                }
            }
        }
        self
    }

    pub fn pad(&self, n: usize) -> DPoly {
        DPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(n, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `self - c * x^shift * g`.
    pub fn sub_scaled(&self, c: &Rational, shift: &[u32], g: &DPoly, order: &TermOrder) -> DPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(e, gc)| {
            let e: Exps = e.iter().zip(shift).map(|(x, y)| x + y).collect();
            (e, -(gc * c))
        });
        let mut bn = b.next();
        loop {
            match (a.peek(), bn.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    out.push(bn.take().expect("present"));
                    bn = b.next();
                }
                (Some((ea, ca)), Some((eb, cb))) => match order.cmp_exps(ea, eb) {
                    Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                    Ordering::Less => {
                        out.push(bn.take().expect("present"));
                        bn = b.next();
                    }
                    Ordering::Equal => {
                        let s = ca + cb;
                        if !s.is_zero() {
                            out.push((ea.clone(), s));
                        }
                        a.next();
                        bn = b.next();
                    }
                },
            }
        }
        DPoly { terms: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::p;

    #[test]
    fn grevlex_agrees_with_canonical_storage() {
        let order = TermOrder::grevlex(&["x", "y", "z"]);
        let f = p("x^2*z + x*y^2 + y^3 + x*z^2 + 1 + z");
        let d = order.to_dpoly(&f);
        let canonical: Vec<_> = f.terms().rev().map(|(m, _)| order.exps_of(m)).collect();
        let got: Vec<_> = d.terms.iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(got, canonical);
        assert_eq!(order.to_poly(&d), f);
    }

    #[test]
    fn lex_order() {
        let order = TermOrder::lex(&["x", "y"]);
        assert_eq!(order.cmp_exps(&[1, 0], &[0, 5]), Ordering::Greater);
        let order = TermOrder::lex(&["y", "x"]);
        let d = order.to_dpoly(&p("x^3 + y"));
        assert_eq!(d.lead(), &vec![1, 0]);
    }

    #[test]
    fn extension_appends_missing_variables() {
        let order = TermOrder::lex(&["y"]);
        let v = [Var::new("z"), Var::new("x"), Var::new("y")];
        let ext = order.extended(v.iter());
        let names: Vec<&str> = ext.vars().iter().map(Var::name).collect();
        assert_eq!(names, ["y", "x", "z"]);
    }
}
