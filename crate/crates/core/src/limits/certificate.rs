use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::corealg::{fmt_rational, Monomial, Poly, RadPoly, RadicalRing, Rational};
use crate::error::{Error, Result};

/// An element of `Q[x]` or of one radical ring over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Poly(Poly),
    Rad(RadPoly),
}

impl From<Poly> for Element {
    fn from(p: Poly) -> Self {
        Element::Poly(p)
    }
}

impl From<RadPoly> for Element {
    fn from(p: RadPoly) -> Self {
        Element::Rad(p)
    }
}

impl Element {
    fn ring(&self) -> Option<&Arc<RadicalRing>> {
        match self {
            Element::Poly(_) => None,
            Element::Rad(r) => Some(r.ring()),
        }
    }

    fn lift(&self, ring: &Arc<RadicalRing>) -> RadPoly {
        match self {
            Element::Poly(p) => RadPoly::from_poly(ring, p),
            Element::Rad(r) => r.clone(),
        }
    }

    fn as_poly(&self) -> Option<&Poly> {
        match self {
            Element::Poly(p) => Some(p),
            Element::Rad(_) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Poly(p) => write!(f, "{p}"),
            Element::Rad(r) => write!(f, "{r}"),
        }
    }
}

/// `multiplier * term`, with `multiplier >= 0` taken as an assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideTerm {
    pub multiplier: Element,
    pub term: Element,
    pub assumption: String,
}

/// Claimed identity `target = sum c_i s_i^2 + sum lambda_j g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub target: Element,
    pub squares: Vec<(Rational, Element)>,
    pub side_terms: Vec<SideTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub identity_holds: bool,
    pub coefficients_positive: bool,
    /// Side-term assumptions, echoed and not verified.
    pub assumptions: Vec<String>,
    /// `target - claimed`, zero when the identity holds.
    pub residual: Element,
}

impl CertificateCheck {
    pub fn verified(&self) -> bool {
        self.identity_holds && self.coefficients_positive
    }
}

impl PositivityCertificate {
    pub fn new(target: impl Into<Element>) -> Self {
        PositivityCertificate {
            target: target.into(),
            squares: Vec::new(),
            side_terms: Vec::new(),
        }
    }

    pub fn square(mut self, c: Rational, s: impl Into<Element>) -> Self {
        self.squares.push((c, s.into()));
        self
    }

    pub fn side(mut self, multiplier: impl Into<Element>, term: impl Into<Element>, assumption: &str) -> Self {
        self.side_terms.push(SideTerm {
            multiplier: multiplier.into(),
            term: term.into(),
            assumption: assumption.to_string(),
        });
        self
    }

    fn elements(&self) -> impl Iterator<Item = &Element> {
        std::iter::once(&self.target)
            .chain(self.squares.iter().map(|(_, s)| s))
            .chain(self.side_terms.iter().flat_map(|s| [&s.multiplier, &s.term]))
    }

    fn common_ring(&self) -> Result<Option<Arc<RadicalRing>>> {
        let mut ring: Option<&Arc<RadicalRing>> = None;
        for r in self.elements().filter_map(Element::ring) {
            match ring {
                Some(prev) if !Arc::ptr_eq(prev, r) && **prev != **r => {
                    return Err(Error::RingMismatch(format!("{prev} vs {r}")));
                }
                _ => ring = Some(r),
            }
        }
        Ok(ring.cloned())
    }

    /// Expands the claimed identity exactly.
    pub fn check(&self) -> Result<CertificateCheck> {
        let coefficients_positive = self.squares.iter().all(|(c, _)| c.is_positive());
        let assumptions = self.side_terms.iter().map(|s| s.assumption.clone()).collect();
        let residual = match self.common_ring()? {
            None => {
                let mut acc = self.target.as_poly().expect("no radical elements").clone();
                for (c, s) in &self.squares {
                    acc = &acc - &s.as_poly().expect("no radical elements").pow(2).scale(c);
                }
                for st in &self.side_terms {
                    let m = st.multiplier.as_poly().expect("no radical elements");
                    let g = st.term.as_poly().expect("no radical elements");
                    acc = &acc - &(m * g);
                }
                Element::Poly(acc)
            }
            Some(ring) => {
                let mut acc = self.target.lift(&ring);
                for (c, s) in &self.squares {
                    let s = s.lift(&ring);
                    let sq = s.mul(&s)?.scale(&Poly::constant(c.clone()));
                    acc = acc.sub(&sq)?;
                }
                for st in &self.side_terms {
                    acc = acc.sub(&st.multiplier.lift(&ring).mul(&st.term.lift(&ring))?)?;
                }
                Element::Rad(acc)
            }
        };
        let identity_holds = match &residual {
            Element::Poly(p) => p.is_zero(),
            Element::Rad(r) => r.is_zero(),
        };
        Ok(CertificateCheck {
            identity_holds,
            coefficients_positive,
            assumptions,
            residual,
        })
    }

    /// Variables `v` for which some square is `c * v^k` with `c != 0`.
    pub(crate) fn pure_power_vars(&self) -> Vec<crate::corealg::Var> {
        self.squares
            .iter()
            .filter_map(|(_, s)| {
                let p = s.as_poly()?;
                let (m, _) = p.leading_term()?;
                let single = p.num_terms() == 1 && m.powers().len() == 1;
                single.then(|| m.powers()[0].0.clone())
            })
            .collect()
    }
}

impl fmt::Display for PositivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.target)?;
        let mut first = true;
        for (c, s) in &self.squares {
            let sep = if first { " " } else { " + " };
            write!(f, "{sep}{}*({s})^2", fmt_rational(c))?;
            first = false;
        }
        for st in &self.side_terms {
            let sep = if first { " " } else { " + " };
            write!(f, "{sep}({})*({}) [{}]", st.multiplier, st.term, st.assumption)?;
            first = false;
        }
        if first {
            f.write_str(" 0")?;
        }
        Ok(())
    }
}

/// True iff the identity expands exactly and every square coefficient is positive.
pub fn verify_positivity_certificate(cert: &PositivityCertificate) -> Result<bool> {
    Ok(cert.check()?.verified())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContinuityConclusion {
    /// `p/q -> 0` at the origin; `degree_gap = min deg p - deg q > 0`.
    ContinuousAtOrigin {
        value: Rational,
        degree_gap: u32,
    },
    Inconclusive {
        reason: String,
    },
}

/// Degree criterion at the origin: `q` homogeneous and certified positive
/// definite, and every monomial of `p` of degree above `deg q`.
pub fn continuity_at_origin_by_degree(
    p: &Poly,
    q: &Poly,
    cert: &PositivityCertificate,
) -> Result<ContinuityConclusion> {
    if q.is_zero() || !q.is_homogeneous() {
        return Err(Error::NotHomogeneous(q.to_string()));
    }
    let inconclusive = |reason: String| Ok(ContinuityConclusion::Inconclusive { reason });
    if cert.target.as_poly() != Some(q) {
        return inconclusive("certificate target is not the denominator".into());
    }
    let check = cert.check()?;
    if !check.verified() {
        return inconclusive("certificate does not verify".into());
    }
    if !cert.side_terms.is_empty() {
        return inconclusive("certificate relies on unverified side terms".into());
    }
    let definite = cert.pure_power_vars();
    let vars = p.vars().into_iter().chain(q.vars());
    if let Some(v) = vars.into_iter().find(|v| !definite.contains(v)) {
        return inconclusive(format!("no pure power of {v} among the squares"));
    }
    let dq = q.total_degree().expect("nonzero");
    let Some(dp) = p.min_degree() else {
        return Ok(ContinuityConclusion::ContinuousAtOrigin {
            value: Rational::zero(),
            degree_gap: u32::MAX,
        });
    };
    if dp > dq {
        Ok(ContinuityConclusion::ContinuousAtOrigin {
            value: Rational::zero(),
            degree_gap: dp - dq,
        })
    } else {
        inconclusive(format!("min degree of numerator {dp} does not exceed {dq}"))
    }
}

/// Certificate `q = sum c_m (x^(m/2))^2` when every monomial of `q` is a
/// square with positive coefficient.
pub fn even_monomial_certificate(q: &Poly) -> Option<PositivityCertificate> {
    let mut cert = PositivityCertificate::new(q.clone());
    for (m, c) in q.terms() {
        if !m.is_square() || !c.is_positive() {
            return None;
        }
        let half = Monomial::from_pairs(m.powers().iter().map(|(v, e)| (v.clone(), e / 2)));
        cert = cert.square(c.clone(), Poly::term(num_traits::One::one(), half));
    }
    Some(cert)
}
