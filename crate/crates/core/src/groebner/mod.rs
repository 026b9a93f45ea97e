//! Polynomial ideals: reduced Gröbner bases, normal forms, membership,
//! restriction of rational functions to subvarieties and the stratified
//! regularity check.

mod buchberger;
mod order;

pub use buchberger::{buchberger, GroebnerBasis, Ideal, DEFAULT_BUDGET};
pub use order::{OrderKind, TermOrder};

use crate::corealg::{Poly, RatFun};
use crate::error::{Error, Result};

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

pub fn ideal_member(p: &Poly, gb: &GroebnerBasis) -> bool {
    gb.contains(p)
}

/// Restriction of `f` to `V(I)`: both parts reduced modulo the basis and
/// renormalized. The result depends on the representative of `f`.
pub fn restrict_to_variety(f: &RatFun, gb: &GroebnerBasis) -> Result<RatFun> {
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    let den = gb.normal_form(f.den());
    if den.is_zero() {
        return Err(Error::DenominatorVanishesOnVariety(f.den().to_string()));
    }
    RatFun::new(gb.normal_form(f.num()), den)
}

/// Chain of ideals `I(X_0) ⊇ I(X_1) ⊇ ... ⊇ I(X_m)`, i.e. closed
/// subvarieties `X_0 ⊆ ... ⊆ X_m`, together with their Gröbner bases.
#[derive(Clone, Debug)]
pub struct Stratification {
    chain: Vec<GroebnerBasis>,
}

impl Stratification {
    /// Checks every generator of `I(X_{i+1})` for membership in `I(X_i)`.
    pub fn new(chain: Vec<Ideal>, order: &TermOrder, budget: usize) -> Result<Stratification> {
        if chain.is_empty() {
            return Err(Error::BadStratification("empty chain".into()));
        }
        let bases = chain
            .iter()
            .map(|i| buchberger(i, order, budget))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..bases.len() - 1 {
            if let Some(g) = chain[i + 1].gens().iter().find(|g| !bases[i].contains(g)) {
                return Err(Error::BadStratification(format!(
                    "generator {g} of stratum {} is not in the ideal of stratum {i}",
                    i + 1
                )));
            }
        }
        Ok(Stratification { chain: bases })
    }

    pub fn strata(&self) -> &[GroebnerBasis] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictionRoute {
    /// `f` reduced directly modulo `I(X_i)`.
    Direct,
    /// The value found on `X_{i+1}` reduced modulo `I(X_i)`.
    Chain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumVerdict {
    GenericallyRegular { value: RatFun, route: RestrictionRoute },
    NoRepresentativeFound { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub index: usize,
    pub ideal: Vec<Poly>,
    pub verdict: StratumVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    /// Indexed like the chain, from `X_0` up to `X_m`.
    pub strata: Vec<StratumReport>,
}

impl RegularityReport {
    pub fn all_regular(&self) -> bool {
        self.strata
            .iter()
            .all(|s| matches!(s.verdict, StratumVerdict::GenericallyRegular { .. }))
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.strata
            .iter()
            .find(|s| matches!(s.verdict, StratumVerdict::NoRepresentativeFound { .. }))
            .map(|s| s.index)
    }
}

/// Walks the chain from `X_m` down to `X_0`. On each stratum the restriction
/// of the previous stratum's value is tried first, then `f` itself. The
/// verdict certifies regularity on a dense open subset only.
pub fn check_stratified_regularity(f: &RatFun, s: &Stratification) -> Result<RegularityReport> {
    let mut strata = Vec::with_capacity(s.len());
    let mut above: Option<RatFun> = None;
    for (i, gb) in s.strata().iter().enumerate().rev() {
        let chained = above.as_ref().map(|g| restrict_to_variety(g, gb));
        let verdict = match chained {
            Some(Ok(value)) => StratumVerdict::GenericallyRegular {
                value,
                route: RestrictionRoute::Chain,
            },
            _ => match restrict_to_variety(f, gb) {
                Ok(value) => StratumVerdict::GenericallyRegular {
                    value,
                    route: RestrictionRoute::Direct,
                },
                Err(e @ (Error::DenominatorVanishesOnVariety(_) | Error::EmptyVariety)) => {
                    StratumVerdict::NoRepresentativeFound { reason: e.to_string() }
                }
                Err(e) => return Err(e),
            },
        };
        above = match &verdict {
            StratumVerdict::GenericallyRegular { value, .. } => Some(value.clone()),
            StratumVerdict::NoRepresentativeFound { .. } => None,
        };
        strata.push(StratumReport {
            index: i,
            ideal: gb.basis().to_vec(),
            verdict,
        });
    }
    strata.reverse();
    Ok(RegularityReport { strata })
}
