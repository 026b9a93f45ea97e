use std::collections::BTreeSet;

use super::order::{exps_coprime, exps_divides, exps_lcm, DPoly, Exps, TermOrder};
use crate::corealg::{Poly, Var};
use crate::error::{Error, Result};

/// Default maximum number of S-pairs processed by [`buchberger`].
pub const DEFAULT_BUDGET: usize = 100_000;

/// Generators of a polynomial ideal over the ambient variables.
///
/// Zero generators are dropped, so the zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Poly>,
    vars: Vec<Var>,
}

impl Ideal {
    /// Ambient variables are the union of `vars` and the generators' variables.
    pub fn new(gens: Vec<Poly>, vars: &[Var]) -> Ideal {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let mut all: Vec<Var> = vars.to_vec();
        let named: BTreeSet<Var> = vars.iter().cloned().collect();
        let extra: BTreeSet<Var> = gens
            .iter()
            .flat_map(|g| g.vars())
            .filter(|v| !named.contains(v))
            .collect();
        all.extend(extra);
        Ideal { gens, vars: all }
    }

    pub fn from_gens(gens: Vec<Poly>) -> Ideal {
        Ideal::new(gens, &[])
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }
}

/// A reduced Gröbner basis: monic, interreduced, sorted by decreasing
/// leading monomial. The unit ideal has basis `{1}`, the zero ideal `{}`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: TermOrder,
    basis: Vec<Poly>,
    dense: Vec<DPoly>,
    spairs: usize,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    /// Number of S-pairs that were reduced.
    pub fn spairs_processed(&self) -> usize {
        self.spairs
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Fully reduced remainder of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        if self.basis.is_empty() || p.is_zero() {
            return p.clone();
        }
        let pv = p.vars();
        if pv.iter().all(|v| self.order.vars().contains(v)) {
            let r = reduce(&self.order.to_dpoly(p), &self.dense, &self.order);
            return self.order.to_poly(&r);
        }
        // variables outside the basis are appended as the smallest ones
        let order = self.order.extended(pv.iter());
        let n = order.vars().len();
        let dense: Vec<DPoly> = self.dense.iter().map(|g| g.pad(n)).collect();
        order.to_poly(&reduce(&order.to_dpoly(p), &dense, &order))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Full reduction of `p` modulo `basis`.
pub(crate) fn reduce(p: &DPoly, basis: &[DPoly], order: &TermOrder) -> DPoly {
    let mut rest = p.clone();
    let mut rem: Vec<(Exps, crate::corealg::Rational)> = Vec::new();
    while !rest.is_zero() {
        let (lead, lc) = rest.terms[0].clone();
        match basis.iter().find(|g| exps_divides(g.lead(), &lead)) {
            Some(g) => {
                let shift: Exps = lead.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
                let c = &lc / g.lead_coeff();
                rest = rest.sub_scaled(&c, &shift, g, order);
            }
            None => {
                rem.push((lead, lc));
                rest.terms.remove(0);
            }
        }
    }
    DPoly { terms: rem }
}

fn spoly(f: &DPoly, g: &DPoly, order: &TermOrder) -> DPoly {
    let l = exps_lcm(f.lead(), g.lead());
    let sf: Exps = l.iter().zip(f.lead()).map(|(a, b)| a - b).collect();
    let sg: Exps = l.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
    let zero = DPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&(-f.lead_coeff().recip()), &sf, f, order);
    a.sub_scaled(&g.lead_coeff().recip(), &sg, g, order)
}

struct State {
    polys: Vec<DPoly>,
    active: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl State {
    fn lcm(&self, i: usize, j: usize) -> Exps {
        exps_lcm(self.polys[i].lead(), self.polys[j].lead())
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: DPoly) {
        let hi = self.polys.len();
        self.polys.push(h);
        let lh = self.polys[hi].lead().clone();

        let mut candidates: Vec<usize> = self.active.clone();
        let mut kept: Vec<usize> = Vec::new();
        while let Some(g) = candidates.first().copied() {
            candidates.remove(0);
            let lg = self.polys[g].lead().clone();
            let l = exps_lcm(&lh, &lg);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|&g2| exps_divides(&self.lcm(hi, g2), &l));
            if exps_coprime(&lh, &lg) || !dominated {
                kept.push(g);
            }
        }
        let new_pairs: Vec<(usize, usize)> = kept
            .into_iter()
            .filter(|&g| !exps_coprime(&lh, self.polys[g].lead()))
            .map(|g| (g, hi))
            .collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|&(a, b)| {
                let l = self.lcm(a, b);
                !exps_divides(&lh, &l) || self.lcm(a, hi) == l || self.lcm(hi, b) == l
            })
            .collect();
        self.pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !exps_divides(&lh, polys[g].lead()));
        self.active.push(hi);
    }

    fn active_basis(&self) -> Vec<DPoly> {
        self.active.iter().map(|&i| self.polys[i].clone()).collect()
    }
}

/// Reduced Gröbner basis of `ideal` under `order`, processing at most
/// `budget` S-pairs. Variables of the ideal missing from `order` are
/// appended as the smallest ones.
pub fn buchberger(ideal: &Ideal, order: &TermOrder, budget: usize) -> Result<GroebnerBasis> {
    let order = order.extended(ideal.vars().iter());
    let mut inputs: Vec<DPoly> = ideal.gens().iter().map(|g| order.to_dpoly(g).monic()).collect();
    // a canonical processing order keeps the run independent of input order
    inputs.sort_by(|a, b| {
        order
            .cmp_exps(a.lead(), b.lead())
            .then_with(|| format!("{:?}", a.terms).cmp(&format!("{:?}", b.terms)))
    });
    inputs.dedup();

    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in inputs {
        let r = reduce(&f, &st.active_basis(), &order);
        if !r.is_zero() {
            st.update(r.monic());
        }
    }

    let mut spairs = 0;
    while !st.pairs.is_empty() {
        let (k, _) = st
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                order
                    .cmp_exps(&st.lcm(a, b), &st.lcm(c, d))
                    .then((a.max(b), a.min(b)).cmp(&(c.max(d), c.min(d))))
            })
            .expect("nonempty");
        let (i, j) = st.pairs.swap_remove(k);
        spairs += 1;
        if spairs > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let s = spoly(&st.polys[i], &st.polys[j], &order);
        let h = reduce(&s, &st.active_basis(), &order);
        if !h.is_zero() {
            st.update(h.monic());
        }
    }

    let dense = interreduce(st.active_basis(), &order);
    let basis = dense.iter().map(|g| order.to_poly(g)).collect();
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order,
        basis,
        dense,
        spairs,
    })
}

fn interreduce(mut g: Vec<DPoly>, order: &TermOrder) -> Vec<DPoly> {
    g.sort_by(|a, b| order.cmp_exps(b.lead(), a.lead()));
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<DPoly> = Vec::new();
    for (k, f) in g.iter().enumerate() {
        let redundant = g
            .iter()
            .enumerate()
            .any(|(l, h)| l != k && exps_divides(h.lead(), f.lead()) && (h.lead() != f.lead() || l < k));
        if !redundant {
            minimal.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<DPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, h)| h.clone())
            .collect();
        out.push(reduce(&minimal[k], &others, order).monic());
    }
    out.sort_by(|a, b| order.cmp_exps(b.lead(), a.lead()));
    out
}
