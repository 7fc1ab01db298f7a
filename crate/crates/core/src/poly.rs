//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are named and ordered by name, so `a < b < c < d` for the
//! classification parameters. Only small systems (a handful of variables,
//! low degree) are expected.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// A power product of named variables; exponents are always positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// Graded lexicographic comparison: higher total degree first, then by
    /// exponent of the earliest variable.
    fn grlex(&self, other: &Monomial, vars: &[&str]) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            for v in vars {
                match other.exponent(v).cmp(&self.exponent(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

/// A polynomial with rational coefficients. No stored term has a zero
/// coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Scalar::integer(1), Monomial::var(name))
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        let mut p = Poly::default();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..exp {
            out = out.times(self);
        }
        out
    }

    /// Evaluates at a point; every variable of `self` must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                let x = assignment.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
                term = term * x.pow(*e);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Replaces the listed variables by polynomials; unlisted variables are
    /// left untouched.
    pub fn substitute(&self, images: &BTreeMap<String, Poly>) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (v, e) in &m.0 {
                let factor = match images.get(v) {
                    Some(p) => p.pow(*e),
                    None => Poly::monomial(Scalar::integer(1), Monomial(BTreeMap::from([(v.clone(), *e)]))),
                };
                term = term.times(&factor);
            }
            out = out.plus(&term);
        }
        out
    }

    /// Terms in graded lexicographic order, leading term first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let vars = self.variables();
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.grlex(b, &vars));
        terms
    }

    /// Divides by the leading coefficient so that the leading term is monic.
    /// Two polynomials with the same zero set up to a nonzero factor
    /// normalize to the same value.
    pub fn monic(&self) -> Poly {
        let Some((_, lead)) = self.sorted_terms().first().map(|(m, c)| (*m, (*c).clone())) else {
            return Poly::default();
        };
        let inv = lead.recip().expect("stored coefficients are nonzero");
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &inv)).collect(),
        }
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(Scalar::integer(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant(s.clone())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.plus(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.minus(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.times(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.negate()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag == Scalar::integer(1);
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
