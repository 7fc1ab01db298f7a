//! Conversion between a Poisson pair (dot, bracket) and the fused product
//! `xy = x·y + {x,y}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{koszul_sign, SuperAlgebra};
use crate::identities::{
    check_associative, check_super_anticommutative, check_super_commutative, check_super_jacobi, check_super_leibniz,
    IdentityReport,
};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonPair<R = Scalar> {
    dot: SuperAlgebra<R>,
    bracket: SuperAlgebra<R>,
}

impl<R: Ring> PoissonPair<R> {
    pub fn new(dot: SuperAlgebra<R>, bracket: SuperAlgebra<R>) -> Result<Self> {
        if dot.basis() != bracket.basis() {
            return Err(Error::BasisMismatch);
        }
        Ok(PoissonPair { dot, bracket })
    }

    pub fn dot(&self) -> &SuperAlgebra<R> {
        &self.dot
    }

    pub fn bracket(&self) -> &SuperAlgebra<R> {
        &self.bracket
    }
}

pub fn fuse<R: Ring>(pair: &PoissonPair<R>) -> SuperAlgebra<R> {
    pair.dot.sum(&pair.bracket).expect("pair components share a basis")
}

/// Super-symmetric and super-antisymmetric parts of the product:
/// `x·y = ½(xy + κ yx)`, `{x,y} = ½(xy − κ yx)` with `κ = (-1)^{|x||y|}`.
pub fn split<R: Ring>(alg: &SuperAlgebra<R>) -> PoissonPair<R> {
    let basis = alg.basis();
    let half = Scalar::ratio(1, 2).expect("nonzero denominator");
    let part = |sgn: i64| {
        SuperAlgebra::from_fn(basis, |i, j, k| {
            let kappa = koszul_sign(basis.degree(i), basis.degree(j)) * Scalar::integer(sgn);
            alg.constant(i, j, k)
                .plus(&alg.constant(j, i, k).scaled(&kappa))
                .scaled(&half)
        })
        .expect("parts of a graded table are graded")
    };
    PoissonPair {
        dot: part(1),
        bracket: part(-1),
    }
}

/// The five axiom reports for a pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport<R: Ring = Scalar> {
    pub dot_super_commutative: IdentityReport<R>,
    pub dot_associative: IdentityReport<R>,
    pub bracket_super_anticommutative: IdentityReport<R>,
    pub super_jacobi: IdentityReport<R>,
    pub super_leibniz: IdentityReport<R>,
}

impl<R: Ring> PairReport<R> {
    pub fn holds(&self) -> bool {
        self.reports().iter().all(|r| r.holds)
    }

    pub fn reports(&self) -> [&IdentityReport<R>; 5] {
        [
            &self.dot_super_commutative,
            &self.dot_associative,
            &self.bracket_super_anticommutative,
            &self.super_jacobi,
            &self.super_leibniz,
        ]
    }
}

pub fn verify_poisson_pair<R: Ring>(pair: &PoissonPair<R>) -> PairReport<R> {
    PairReport {
        dot_super_commutative: check_super_commutative(&pair.dot),
        dot_associative: check_associative(&pair.dot),
        bracket_super_anticommutative: check_super_anticommutative(&pair.bracket),
        super_jacobi: check_super_jacobi(&pair.bracket),
        super_leibniz: check_super_leibniz(&pair.dot, &pair.bracket).expect("pair components share a basis"),
    }
}
