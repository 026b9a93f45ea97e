use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A variable name. Variables are globally ordered by name: the
/// alphabetically first name is the largest variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable name with no zero exponents.
///
/// The `Ord` impl is graded reverse lexicographic order with respect to the
/// global variable order, which is the canonical storage order of [`Poly`].
///
/// [`Poly`]: super::Poly
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial { powers: vec![(v, exp)] }
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut powers: Vec<(Var, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { powers: merged }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.powers
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.powers.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.powers, &other.powers);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { powers: out }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        let b = &other.powers;
        for (v, e) in &self.powers {
            if j < b.len() && b[j].0 < *v {
                return None;
            }
            if j < b.len() && b[j].0 == *v {
                if b[j].1 > *e {
                    return None;
                }
                if *e > b[j].1 {
                    out.push((v.clone(), e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial { powers: out })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.powers.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            powers: self
                .powers
                .iter()
                .filter_map(|(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v.clone(), (*e).min(f)))
                })
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let g = self.gcd(other);
        self.mul(other).div(&g).expect("gcd divides the product")
    }

    /// Removes the variable `v`, returning its exponent and the rest.
    pub fn split_off(&self, v: &Var) -> (u32, Monomial) {
        let mut rest = self.clone();
        match rest.powers.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => {
                let (_, e) = rest.powers.remove(i);
                (e, rest)
            }
            Err(_) => (0, rest),
        }
    }

    /// True when every exponent is even.
    pub fn is_square(&self) -> bool {
        self.powers.iter().all(|(_, e)| e % 2 == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk from the smallest variable (largest name) upwards; the first
        // differing exponent decides, and the smaller exponent wins.
        let (a, b) = (&self.powers, &other.powers);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let (ea, eb) = match (i.checked_sub(1), j.checked_sub(1)) {
                (Some(ii), Some(jj)) => match a[ii].0.cmp(&b[jj].0) {
                    Ordering::Greater => {
                        i -= 1;
                        (a[ii].1, 0)
                    }
                    Ordering::Less => {
                        j -= 1;
                        (0, b[jj].1)
                    }
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                        (a[ii].1, b[jj].1)
                    }
                },
                (Some(ii), None) => {
                    i -= 1;
                    (a[ii].1, 0)
                }
                (None, Some(jj)) => {
                    j -= 1;
                    (0, b[jj].1)
                }
                (None, None) => unreachable!(),
            };
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.powers.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
