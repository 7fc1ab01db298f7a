//! Finite-dimensional Z2-graded algebras given by structure constants.
//!
//! Basis vectors are indexed with the even block first: indices
//! `0..dim_even` are even, the remaining `dim_odd` indices are odd.

use std::fmt;
use std::ops::Add;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    Even,
    Odd,
}

impl Degree {
    pub fn from_bit(bit: u8) -> Self {
        if bit.is_multiple_of(2) {
            Degree::Even
        } else {
            Degree::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Degree::Even => 0,
            Degree::Odd => 1,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(-1)^{d1 d2}`: negative exactly when both degrees are odd.
pub fn koszul_sign(d1: Degree, d2: Degree) -> Scalar {
    Scalar::sign(koszul_exponent(&[(d1, d2)]))
}

/// Sum of `|p||q|` over the given pairs.
pub fn koszul_exponent(pairs: &[(Degree, Degree)]) -> u32 {
    pairs.iter().map(|(a, b)| u32::from(a.bit() * b.bit())).sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GradedBasis {
    dim_even: usize,
    dim_odd: usize,
}

impl GradedBasis {
    pub fn new(dim_even: usize, dim_odd: usize) -> Result<Self> {
        if dim_even + dim_odd == 0 {
            return Err(Error::EmptyBasis { dim_even, dim_odd });
        }
        Ok(GradedBasis { dim_even, dim_odd })
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    /// Degree of basis vector `i`. Panics if `i` is out of range.
    pub fn degree(&self, i: usize) -> Degree {
        assert!(i < self.dim(), "basis index {i} out of range");
        if i < self.dim_even {
            Degree::Even
        } else {
            Degree::Odd
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self.dim() })
        }
    }
}

/// Coefficient vector in the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<R = Scalar>(Vec<R>);

/// Result of [`SuperAlgebra::degree_of`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Homogeneous(Degree),
    Mixed,
}

impl<R: Ring> Element<R> {
    pub fn new(coefficients: Vec<R>) -> Self {
        Element(coefficients)
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![R::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![R::zero(); dim];
        v[i] = R::one();
        Element(v)
    }

    pub fn coefficients(&self) -> &[R] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ring::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a.plus(b)).collect())
    }

    pub fn minus(&self, other: &Self) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a.minus(b)).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        Element(self.0.iter().map(|a| a.times(c)).collect())
    }

    pub fn scale_by(&self, s: &Scalar) -> Self {
        self.scale(&R::from_scalar(s))
    }

    pub fn negate(&self) -> Self {
        Element(self.0.iter().map(Ring::negate).collect())
    }

    /// `self + s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Self) {
        let s = R::from_scalar(s);
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.plus(&b.times(&s));
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Element<S> {
        Element(self.0.iter().map(f).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }
}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *c == R::one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "({c})*e{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<R: Ring> Serialize for Element<R> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// A Z2-graded algebra `e_i e_j = sum_k c[i][j][k] e_k`.
///
/// The constants are generic so the same table type carries concrete
/// rational algebras and polynomial-parametrized ones.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperAlgebra<R = Scalar> {
    basis: GradedBasis,
    constants: Vec<R>,
}

impl<R: Ring> SuperAlgebra<R> {
    pub fn zero(basis: GradedBasis) -> Self {
        let n = basis.dim();
        SuperAlgebra {
            basis,
            constants: vec![R::zero(); n * n * n],
        }
    }

    /// Builds the dense table from sparse `(i, j, k, c)` entries; repeated
    /// positions accumulate.
    pub fn from_sparse<I>(basis: GradedBasis, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, R)>,
    {
        let mut alg = Self::zero(basis);
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                basis.check_index(idx)?;
            }
            let slot = alg.slot(i, j, k);
            alg.constants[slot] = alg.constants[slot].plus(&c);
        }
        alg.check_grading()?;
        Ok(alg)
    }

    /// Dense constructor from a function of `(i, j, k)`.
    pub fn from_fn(basis: GradedBasis, f: impl Fn(usize, usize, usize) -> R) -> Result<Self> {
        let n = basis.dim();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants.push(f(i, j, k));
                }
            }
        }
        let alg = SuperAlgebra { basis, constants };
        alg.check_grading()?;
        Ok(alg)
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.basis.dim();
        (i * n + j) * n + k
    }

    fn check_grading(&self) -> Result<()> {
        let n = self.basis.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.basis.degree(i) + self.basis.degree(j);
                for k in 0..n {
                    if self.basis.degree(k) != target && !self.constant(i, j, k).is_zero() {
                        return Err(Error::GradingViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> GradedBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &R {
        &self.constants[self.slot(i, j, k)]
    }

    pub fn basis_vector(&self, i: usize) -> Element<R> {
        Element::basis(self.dim(), i)
    }

    pub fn basis_vectors(&self) -> Vec<Element<R>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// `e_i e_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element<R> {
        let n = self.dim();
        Element((0..n).map(|k| self.constant(i, j, k).clone()).collect())
    }

    /// Nonzero entries as `(i, j, k, c)` in index order.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, R)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.constants.iter().all(Ring::is_zero)
    }

    fn check_dim(&self, x: &Element<R>) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            })
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &Element<R>, y: &Element<R>) -> Result<Element<R>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &Element<R>, y: &Element<R>) -> Element<R> {
        let n = self.dim();
        let mut out = vec![R::zero(); n];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.times(yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.plus(&w.times(c));
                    }
                }
            }
        }
        Element(out)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Result<Element<R>> {
        for e in [x, y, z] {
            self.check_dim(e)?;
        }
        Ok(self.assoc(x, y, z))
    }

    pub(crate) fn assoc(&self, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Element<R> {
        self.mul(&self.mul(x, y), z).minus(&self.mul(x, &self.mul(y, z)))
    }

    /// Degree of `x`, or `Mixed` when its support meets both blocks. The
    /// zero element is reported as even.
    pub fn degree_of(&self, x: &Element<R>) -> Homogeneity {
        let mut seen = (false, false);
        for i in x.support() {
            match self.basis.degree(i) {
                Degree::Even => seen.0 = true,
                Degree::Odd => seen.1 = true,
            }
        }
        match seen {
            (true, true) => Homogeneity::Mixed,
            (false, true) => Homogeneity::Homogeneous(Degree::Odd),
            _ => Homogeneity::Homogeneous(Degree::Even),
        }
    }

    pub(crate) fn homogeneous_degree(&self, x: &Element<R>, name: &'static str) -> Result<Degree> {
        self.check_dim(x)?;
        match self.degree_of(x) {
            Homogeneity::Homogeneous(d) => Ok(d),
            Homogeneity::Mixed => Err(Error::NonHomogeneous(name)),
        }
    }

    /// Table with every constant mapped through `f`, e.g. evaluating a
    /// parametrized table at a point.
    pub fn map_constants<S: Ring>(&self, f: impl Fn(&R) -> S) -> Result<SuperAlgebra<S>> {
        let alg = SuperAlgebra {
            basis: self.basis,
            constants: self.constants.iter().map(f).collect(),
        };
        alg.check_grading()?;
        Ok(alg)
    }

    /// The even part `V_0` as an algebra in its own right.
    pub fn even_part(&self) -> Result<SuperAlgebra<R>> {
        let m = self.basis.dim_even();
        let basis = GradedBasis::new(m, 0)?;
        SuperAlgebra::from_fn(basis, |i, j, k| self.constant(i, j, k).clone())
    }

    /// Entrywise sum of two tables on the same basis.
    pub fn sum(&self, other: &SuperAlgebra<R>) -> Result<SuperAlgebra<R>> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(SuperAlgebra {
            basis: self.basis,
            constants: self
                .constants
                .iter()
                .zip(&other.constants)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }
}
