use std::fmt;
use std::sync::Arc;

use super::monomial::Var;
use super::poly::Poly;
use crate::error::{Error, Result};

/// The ring `Q[x][u] / (u^k - m(x))`, adjoining a `k`-th root of `m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadicalRing {
    generator: Var,
    degree: u32,
    modulus: Poly,
}

impl RadicalRing {
    pub fn new(generator: &str, degree: u32, modulus: Poly) -> Result<Arc<RadicalRing>> {
        let generator = Var::new(generator);
        if degree < 2 {
            return Err(Error::InvalidRing(format!("exponent {degree} < 2")));
        }
        if modulus.is_zero() {
            return Err(Error::InvalidRing("modulus is zero".into()));
        }
        if modulus.vars().contains(&generator) {
            return Err(Error::InvalidRing(format!(
                "generator {generator} occurs in the modulus {modulus}"
            )));
        }
        Ok(Arc::new(RadicalRing {
            generator,
            degree,
            modulus,
        }))
    }

    pub fn generator(&self) -> &Var {
        &self.generator
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn base_vars(&self) -> Vec<Var> {
        self.modulus.vars().into_iter().collect()
    }
}

impl fmt::Display for RadicalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} = {}", self.generator, self.degree, self.modulus)
    }
}

/// An element `c_0 + c_1 u + ... + c_{k-1} u^{k-1}` of a [`RadicalRing`],
/// always stored reduced modulo `u^k - m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadPoly {
    ring: Arc<RadicalRing>,
    coeffs: Vec<Poly>,
}

impl RadPoly {
    pub fn zero(ring: &Arc<RadicalRing>) -> RadPoly {
        RadPoly {
            ring: ring.clone(),
            coeffs: vec![Poly::zero(); ring.degree as usize],
        }
    }

    pub fn one(ring: &Arc<RadicalRing>) -> RadPoly {
        RadPoly::from_poly(ring, &Poly::one())
    }

    pub fn generator(ring: &Arc<RadicalRing>) -> RadPoly {
        RadPoly::from_poly(ring, &Poly::var(ring.generator.name()))
    }

    /// Reduces a polynomial that may mention the generator.
    pub fn from_poly(ring: &Arc<RadicalRing>, p: &Poly) -> RadPoly {
        let raw = p.coefficients_in(&ring.generator);
        RadPoly::reduce(ring, raw)
    }

    /// Builds an element from its coefficient vector (must have length `k`).
    pub fn from_coeffs(ring: &Arc<RadicalRing>, coeffs: Vec<Poly>) -> Result<RadPoly> {
        if coeffs.len() != ring.degree as usize {
            return Err(Error::InvalidRing(format!(
                "expected {} coefficients, got {}",
                ring.degree,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.vars().contains(&ring.generator)) {
            return Err(Error::InvalidRing("coefficient mentions the generator".into()));
        }
        Ok(RadPoly {
            ring: ring.clone(),
            coeffs,
        })
    }

    fn reduce(ring: &Arc<RadicalRing>, mut raw: Vec<Poly>) -> RadPoly {
        let k = ring.degree as usize;
        for j in (k..raw.len()).rev() {
            let c = std::mem::take(&mut raw[j]);
            if !c.is_zero() {
                raw[j - k] = &raw[j - k] + &(&c * &ring.modulus);
            }
        }
        raw.resize(k, Poly::zero());
        RadPoly {
            ring: ring.clone(),
            coeffs: raw,
        }
    }

    pub fn ring(&self) -> &Arc<RadicalRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// The element written as a polynomial in the base variables and `u`.
    pub fn to_poly(&self) -> Poly {
        Poly::from_coefficients(&self.ring.generator, &self.coeffs)
    }

    fn check(&self, other: &RadPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("`{}` vs `{}`", self.ring, other.ring)))
        }
    }

    pub fn add(&self, other: &RadPoly) -> Result<RadPoly> {
        self.check(other)?;
        Ok(RadPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RadPoly) -> Result<RadPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RadPoly {
        RadPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &RadPoly) -> Result<RadPoly> {
        self.check(other)?;
        let k = self.ring.degree as usize;
        let mut raw = vec![Poly::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = &raw[i + j] + &(a * b);
                }
            }
        }
        Ok(RadPoly::reduce(&self.ring, raw))
    }

    pub fn scale(&self, p: &Poly) -> RadPoly {
        RadPoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> RadPoly {
        let mut acc = RadPoly::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Matrix of multiplication by `self` on the basis `1, u, ..., u^{k-1}`;
    /// column `j` holds the coefficients of `self * u^j`.
    #[allow(clippy::needless_range_loop)]
    fn multiplication_matrix(&self) -> Vec<Vec<Poly>> {
        let k = self.ring.degree as usize;
        let mut m = vec![vec![Poly::zero(); k]; k];
        let mut col = self.clone();
        let u = RadPoly::generator(&self.ring);
        for j in 0..k {
            for (i, c) in col.coeffs.iter().enumerate() {
                m[i][j] = c.clone();
            }
            col = col.mul(&u).expect("same ring");
        }
        m
    }

    /// Exact quotient `self / divisor`, found by Cramer's rule on the
    /// multiplication matrix of `divisor`.
    pub fn exact_div(&self, divisor: &RadPoly) -> Result<RadPoly> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let matrix = divisor.multiplication_matrix();
        let det = determinant(matrix.clone());
        if det.is_zero() {
            return Err(Error::DivisionError(format!(
                "{divisor} is a zero divisor in {}",
                self.ring
            )));
        }
        let k = self.ring.degree as usize;
        let mut coeffs = Vec::with_capacity(k);
        for i in 0..k {
            let mut mi = matrix.clone();
            for (row, c) in mi.iter_mut().zip(&self.coeffs) {
                row[i] = c.clone();
            }
            let c = determinant(mi)
                .exact_div(&det)
                .map_err(|_| Error::DivisionError(format!("{divisor} does not divide {self}")))?;
            coeffs.push(c);
        }
        let quot = RadPoly {
            ring: self.ring.clone(),
            coeffs,
        };
        debug_assert_eq!(&quot.mul(divisor)?, self);
        Ok(quot)
    }
}

/// Fraction-free Gaussian elimination (Bareiss) over the polynomial ring.
pub(crate) fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `rad_arith`: ring operation on two elements of the same radical ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadOp {
    Add,
    Sub,
    Mul,
}

pub fn rad_arith(op: RadOp, a: &RadPoly, b: &RadPoly) -> Result<RadPoly> {
    match op {
        RadOp::Add => a.add(b),
        RadOp::Sub => a.sub(b),
        RadOp::Mul => a.mul(b),
    }
}

pub fn rad_exact_divide(a: &RadPoly, b: &RadPoly) -> Result<RadPoly> {
    a.exact_div(b)
}

impl fmt::Display for RadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for RadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.to_poly(), self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::test_support::p;

    fn cube_root_ring() -> Arc<RadicalRing> {
        RadicalRing::new("u", 3, p("1 + z^2")).unwrap()
    }

    #[test]
    fn defining_relation() {
        let ring = cube_root_ring();
        let u = RadPoly::generator(&ring);
        let u2 = RadPoly::from_poly(&ring, &p("u^2"));
        let prod = rad_arith(RadOp::Mul, &u, &u2).unwrap();
        assert_eq!(prod.coeffs(), &[p("1 + z^2"), Poly::zero(), Poly::zero()]);
        assert!(rad_arith(RadOp::Add, &u, &u.neg()).unwrap().is_zero());
    }

    #[test]
    fn cube_difference_factorization() {
        let ring = cube_root_ring();
        let a = RadPoly::from_poly(&ring, &p("x - u*y"));
        let b = RadPoly::from_poly(&ring, &p("x^2 + u*x*y + u^2*y^2"));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, RadPoly::from_poly(&ring, &p("x^3 - (1 + z^2)*y^3")));
        assert_eq!(rad_exact_divide(&prod, &a).unwrap(), b);
    }

    #[test]
    fn trivial_divisions() {
        let ring = cube_root_ring();
        let a = RadPoly::from_poly(&ring, &p("x - u*y + u^2"));
        assert_eq!(rad_exact_divide(&a, &RadPoly::one(&ring)).unwrap(), a);
        let m = RadPoly::from_poly(&ring, &p("1 + z^2"));
        let u = RadPoly::generator(&ring);
        assert_eq!(rad_exact_divide(&m, &u).unwrap(), RadPoly::from_poly(&ring, &p("u^2")));
    }

    #[test]
    fn division_failures() {
        let ring = cube_root_ring();
        let a = RadPoly::from_poly(&ring, &p("x"));
        let b = RadPoly::from_poly(&ring, &p("x - u*y"));
        assert!(matches!(rad_exact_divide(&a, &b), Err(Error::DivisionError(_))));
        assert_eq!(rad_exact_divide(&a, &RadPoly::zero(&ring)), Err(Error::ZeroDivisor));
        // u^2 - 1 = (u - 1)(u + 1) is not a domain
        let split = RadicalRing::new("u", 2, Poly::one()).unwrap();
        let zd = RadPoly::from_poly(&split, &p("u - 1"));
        let e = RadPoly::from_poly(&split, &p("u^2 - 1"));
        assert!(e.is_zero());
        assert!(matches!(
            rad_exact_divide(&RadPoly::one(&split), &zd),
            Err(Error::DivisionError(_))
        ));
    }

    #[test]
    fn ring_validation_and_mismatch() {
        assert!(RadicalRing::new("u", 1, p("z")).is_err());
        assert!(RadicalRing::new("u", 3, Poly::zero()).is_err());
        assert!(RadicalRing::new("u", 3, p("u + 1")).is_err());
        let r1 = cube_root_ring();
        let r2 = RadicalRing::new("u", 3, p("2 + z^2")).unwrap();
        let e = RadPoly::generator(&r1).add(&RadPoly::generator(&r2));
        assert!(matches!(e, Err(Error::RingMismatch(_))));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![p("x"), p("1"), p("y")],
            vec![p("0"), p("x + y"), p("2")],
            vec![p("z"), p("1"), p("0")],
        ];
        // cofactor expansion along the first column by hand
        let expected = &(&p("x") * &(&(&p("x + y") * &p("0")) - &(&p("2") * &p("1"))))
            + &(&p("z") * &(&(&p("1") * &p("2")) - &(&p("y") * &p("x + y"))));
        assert_eq!(determinant(m), expected);
    }
}
