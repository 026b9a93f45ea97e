//! Multivariate GCD by recursive content / primitive part splitting with a
//! subresultant polynomial remainder sequence in the main variable.

use super::monomial::{Monomial, Var};
use super::poly::{Point, Poly};
use super::Rational;
use num_traits::Zero;

/// Greatest common divisor, normalized to a primitive integer polynomial
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Poly::zero(),
        (true, false) => b.primitive_part(),
        (false, true) => a.primitive_part(),
        (false, false) => gcd_nonzero(&a.primitive_part(), &b.primitive_part()).primitive_part(),
    }
}

fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m);
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, m| acc.gcd(m))
}

fn gcd_nonzero(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        let g = monomial_content(a).gcd(&monomial_content(b));
        return Poly::term(num_traits::One::one(), g);
    }
    let va = a.vars();
    let Some(v) = b
        .vars()
        .into_iter()
        .filter(|v| va.contains(v))
        .min_by_key(|v| (a.degree_in(v).max(b.degree_in(v)), v.clone()))
    else {
        return Poly::one();
    };
    let ca = content_in(a, &v);
    let cb = content_in(b, &v);
    let c = gcd_nonzero(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    if images_coprime(&pa, &pb, &v) {
        return c;
    }
    let g = subresultant_gcd(&pa, &pb, &v);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub(crate) fn content_in(p: &Poly, v: &Var) -> Poly {
    let mut acc: Option<Poly> = None;
    for c in p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()) {
        let next = match acc {
            None => c.primitive_part(),
            Some(g) => gcd_nonzero(&g, &c.primitive_part()).primitive_part(),
        };
        if next.is_constant() {
            return Poly::one();
        }
        acc = Some(next);
    }
    acc.unwrap_or_else(Poly::zero)
}

/// Sends every variable other than `v` to a small integer where both leading
/// coefficients in `v` survive. A common factor of positive degree in `v`
/// then survives too, so coprime images prove `gcd(a, b)` has degree 0 in `v`.
fn images_coprime(a: &Poly, b: &Poly, v: &Var) -> bool {
    let (ca, cb) = (a.coefficients_in(v), b.coefficients_in(v));
    let (la, lb) = (ca.last().expect("nonzero"), cb.last().expect("nonzero"));
    let others: Vec<Var> = a.vars().union(&b.vars()).filter(|w| *w != v).cloned().collect();
    for shift in 0..4i64 {
        let point: Point = others
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), Rational::from_integer((2 + 3 * shift + i as i64).into())))
            .collect();
        let eval = |c: &Poly| c.evaluate(&point).expect("all other variables are assigned");
        if eval(la).is_zero() || eval(lb).is_zero() {
            continue;
        }
        let ia: Vec<Rational> = ca.iter().map(eval).collect();
        let ib: Vec<Rational> = cb.iter().map(eval).collect();
        return univariate_gcd_degree(ia, ib) == 0;
    }
    false
}

/// Degree of the gcd of two nonzero dense univariate polynomials over Q.
fn univariate_gcd_degree(mut f: Vec<Rational>, mut g: Vec<Rational>) -> usize {
    let strip = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    };
    strip(&mut f);
    strip(&mut g);
    while !g.is_empty() {
        while f.len() >= g.len() {
            let k = f.last().expect("nonzero") / g.last().expect("nonzero");
            let shift = f.len() - g.len();
            for (i, gc) in g.iter().enumerate() {
                f[i + shift] -= &k * gc;
            }
            f.pop();
            strip(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

type Upoly = Vec<Poly>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
}

fn deg(p: &Upoly) -> usize {
    p.len().saturating_sub(1)
}

/// Pseudo-remainder of `f` by `g` (both nonzero, `deg f >= deg g`).
fn prem(f: &Upoly, g: &Upoly) -> Upoly {
    let n = deg(g);
    let lc = g.last().expect("nonzero").clone();
    let mut r = f.clone();
    let mut e = (deg(f) + 1 - n) as u32;
    while !r.is_empty() && deg(&r) >= n {
        let shift = deg(&r) - n;
        let lr = r.last().expect("nonzero").clone();
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for (i, gc) in g.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * gc);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let k = lc.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &k;
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let (mut f, mut g) = (a.coefficients_in(v), b.coefficients_in(v));
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut lead = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = (deg(&f) - deg(&g)) as u32;
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            return Poly::one();
        }
        let divisor = &lead * &h.pow(d);
        f = std::mem::replace(
            &mut g,
            r.iter()
                .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
                .collect(),
        );
        lead = f.last().expect("nonzero").clone();
        h = match d {
            0 => h,
            1 => lead.clone(),
            _ => lead
                .pow(d)
                .exact_div(&h.pow(d - 1))
                .expect("subresultant division is exact"),
        };
    }
    let g = Poly::from_coefficients(v, &g);
    let c = content_in(&g, v);
    g.exact_div(&c).expect("content divides")
}
