//! Identity evaluators and all-basis-triple checkers.
//!
//! Every identity here is multilinear, so checking it on homogeneous basis
//! vectors decides it on the whole algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{koszul_exponent, Degree, Element, SuperAlgebra};
use crate::scalar::{Ring, Scalar};

/// Maximum number of witnesses kept in a report.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness<R: Ring = Scalar> {
    /// Basis indices the identity was evaluated on (a pair or a triple).
    pub indices: Vec<usize>,
    pub residual: Element<R>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport<R: Ring = Scalar> {
    pub name: String,
    pub holds: bool,
    /// Number of failing basis tuples; may exceed `witnesses.len()`.
    pub failure_count: usize,
    pub witnesses: Vec<Witness<R>>,
}

impl<R: Ring> IdentityReport<R> {
    fn collect(name: &str, residuals: impl Iterator<Item = (Vec<usize>, Element<R>)>) -> Self {
        let mut failure_count = 0;
        let mut witnesses = Vec::new();
        for (indices, residual) in residuals {
            if residual.is_zero() {
                continue;
            }
            failure_count += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(Witness { indices, residual });
            }
        }
        IdentityReport {
            name: name.to_string(),
            holds: failure_count == 0,
            failure_count,
            witnesses,
        }
    }
}

/// How the three raw products of `v1` are parenthesized.
///
/// `Verbatim` keeps the mixed nesting `x(zy)`, `z(xy)` exactly as printed;
/// `LeftNested` reads them as `(xz)y`, `(zx)y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum V1Form {
    #[default]
    Verbatim,
    LeftNested,
}

/// A homogeneous argument: vector plus its degree.
pub(crate) struct Arg<'a, R> {
    pub v: &'a Element<R>,
    pub d: Degree,
}

impl<R> Clone for Arg<'_, R> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<R> Copy for Arg<'_, R> {}

fn sign(pairs: &[(Degree, Degree)]) -> Scalar {
    Scalar::sign(koszul_exponent(pairs))
}

/// Accumulates `sum c_i * e_i`.
struct Combo<R: Ring>(Element<R>);

impl<R: Ring> Combo<R> {
    fn new(dim: usize) -> Self {
        Combo(Element::zero(dim))
    }

    fn add(&mut self, c: Scalar, e: &Element<R>) -> &mut Self {
        self.0.add_scaled(&c, e);
        self
    }

    fn finish(&mut self) -> Element<R> {
        std::mem::replace(&mut self.0, Element::zero(0))
    }
}

fn int(n: i64) -> Scalar {
    Scalar::integer(n)
}

impl<R: Ring> SuperAlgebra<R> {
    fn left(&self, p: Arg<R>, q: Arg<R>, r: Arg<R>) -> Element<R> {
        self.mul(&self.mul(p.v, q.v), r.v)
    }

    fn right(&self, p: Arg<R>, q: Arg<R>, r: Arg<R>) -> Element<R> {
        self.mul(p.v, &self.mul(q.v, r.v))
    }

    fn a(&self, p: Arg<R>, q: Arg<R>, r: Arg<R>) -> Element<R> {
        self.assoc(p.v, q.v, r.v)
    }

    pub(crate) fn super_poisson_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        Combo::new(self.dim())
            .add(int(3), &self.left(x, y, z))
            .add(int(-3), &self.right(x, y, z))
            .add(sign(&[(dx, dy)]), &self.left(y, x, z))
            .add(-sign(&[(dy, dz)]), &self.left(x, z, y))
            .add(-sign(&[(dx, dy), (dx, dz)]), &self.left(y, z, x))
            .add(sign(&[(dx, dz), (dy, dz)]), &self.left(z, x, y))
            .finish()
    }

    pub(crate) fn v_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        let third = Scalar::ratio(1, 3).expect("nonzero denominator");
        Combo::new(self.dim())
            .add(&third * &sign(&[(dx, dy)]), &self.left(y, x, z))
            .add(-(&third * &sign(&[(dy, dz)])), &self.left(x, z, y))
            .add(-(&third * &sign(&[(dx, dy), (dx, dz)])), &self.left(y, z, x))
            .add(&third * &sign(&[(dx, dz), (dy, dz)]), &self.left(z, x, y))
            .add(int(1), &self.a(x, y, z))
            .finish()
    }

    pub(crate) fn v1_residual(&self, form: V1Form, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        let (xzy, zxy) = match form {
            V1Form::Verbatim => (self.right(x, z, y), self.right(z, x, y)),
            V1Form::LeftNested => (self.left(x, z, y), self.left(z, x, y)),
        };
        Combo::new(self.dim())
            .add(int(1), &self.a(x, y, z))
            .add(-sign(&[(dx, dy), (dx, dz), (dy, dz)]), &self.a(z, y, x))
            .add(sign(&[(dx, dy)]), &self.left(y, x, z))
            .add(-sign(&[(dy, dz)]), &xzy)
            .add(-sign(&[(dx, dy), (dx, dz)]), &self.left(y, z, x))
            .add(sign(&[(dx, dz), (dy, dz)]), &zxy)
            .finish()
    }

    pub(crate) fn v2_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        Combo::new(self.dim())
            .add(sign(&[(dx, dz)]), &self.a(x, y, z))
            .add(-sign(&[(dx, dy), (dx, dz)]), &self.a(y, x, z))
            .add(-sign(&[(dx, dy), (dy, dz)]), &self.a(z, y, x))
            .add(-sign(&[(dx, dz), (dy, dz)]), &self.a(x, z, y))
            .add(sign(&[(dx, dy)]), &self.a(y, z, x))
            .add(sign(&[(dy, dz)]), &self.a(z, x, y))
            .finish()
    }

    pub(crate) fn v3_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        Combo::new(self.dim())
            .add(int(1), &self.a(x, y, z))
            .add(-sign(&[(dx, dy)]), &self.a(y, x, z))
            .add(sign(&[(dx, dy), (dx, dz), (dy, dz)]), &self.a(z, y, x))
            .add(sign(&[(dy, dz)]), &self.a(x, z, y))
            .add(sign(&[(dx, dy), (dx, dz)]), &self.a(y, z, x))
            .add(-sign(&[(dx, dz), (dy, dz)]), &self.a(z, x, y))
            .finish()
    }

    pub(crate) fn flexible_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        let (dx, dy, dz) = (x.d, y.d, z.d);
        Combo::new(self.dim())
            .add(int(1), &self.a(x, y, z))
            .add(sign(&[(dx, dz), (dx, dy), (dy, dz)]), &self.a(z, y, x))
            .finish()
    }

    /// Ungraded identity `3A(x,y,z) - (xz)y - (yz)x + (yx)z + (zx)y`.
    pub(crate) fn even_residual(&self, x: Arg<R>, y: Arg<R>, z: Arg<R>) -> Element<R> {
        Combo::new(self.dim())
            .add(int(3), &self.a(x, y, z))
            .add(int(-1), &self.left(x, z, y))
            .add(int(-1), &self.left(y, z, x))
            .add(int(1), &self.left(y, x, z))
            .add(int(1), &self.left(z, x, y))
            .finish()
    }

    fn args<'a>(&self, x: &'a Element<R>, y: &'a Element<R>, z: &'a Element<R>) -> Result<[Arg<'a, R>; 3]> {
        Ok([
            Arg {
                v: x,
                d: self.homogeneous_degree(x, "x")?,
            },
            Arg {
                v: y,
                d: self.homogeneous_degree(y, "y")?,
            },
            Arg {
                v: z,
                d: self.homogeneous_degree(z, "z")?,
            },
        ])
    }

    /// Runs `eval` over every basis triple in index order.
    pub(crate) fn check_triples(
        &self,
        name: &str,
        eval: impl Fn(Arg<R>, Arg<R>, Arg<R>) -> Element<R>,
    ) -> IdentityReport<R> {
        let basis = self.basis_vectors();
        let n = self.dim();
        let arg = |i: usize| Arg {
            v: &basis[i],
            d: self.basis().degree(i),
        };
        let residuals = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
        IdentityReport::collect(
            name,
            residuals.map(|(i, j, k)| (vec![i, j, k], eval(arg(i), arg(j), arg(k)))),
        )
    }

    pub(crate) fn check_pairs(&self, name: &str, eval: impl Fn(Arg<R>, Arg<R>) -> Element<R>) -> IdentityReport<R> {
        let basis = self.basis_vectors();
        let n = self.dim();
        let arg = |i: usize| Arg {
            v: &basis[i],
            d: self.basis().degree(i),
        };
        let residuals = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        IdentityReport::collect(name, residuals.map(|(i, j)| (vec![i, j], eval(arg(i), arg(j)))))
    }
}

/// Left side of the fused super-Poisson identity:
/// `3(xy)z - 3x(yz) + s(yx)z - s(xz)y - s(yz)x + s(zx)y` with Koszul signs.
pub fn eval_super_poisson<R: Ring>(
    alg: &SuperAlgebra<R>,
    x: &Element<R>,
    y: &Element<R>,
    z: &Element<R>,
) -> Result<Element<R>> {
    let [x, y, z] = alg.args(x, y, z)?;
    Ok(alg.super_poisson_residual(x, y, z))
}

/// The combination `v` whose vanishing is equivalent to the fused identity;
/// `eval_super_poisson = 3 v`.
pub fn eval_v<R: Ring>(alg: &SuperAlgebra<R>, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Result<Element<R>> {
    let [x, y, z] = alg.args(x, y, z)?;
    Ok(alg.v_residual(x, y, z))
}

/// Associativity of the symmetric part, written in the fused product.
pub fn eval_v1<R: Ring>(alg: &SuperAlgebra<R>, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Result<Element<R>> {
    eval_v1_with(alg, V1Form::Verbatim, x, y, z)
}

pub fn eval_v1_with<R: Ring>(
    alg: &SuperAlgebra<R>,
    form: V1Form,
    x: &Element<R>,
    y: &Element<R>,
    z: &Element<R>,
) -> Result<Element<R>> {
    let [x, y, z] = alg.args(x, y, z)?;
    Ok(alg.v1_residual(form, x, y, z))
}

/// Super Jacobi identity of the antisymmetric part, in associators.
pub fn eval_v2<R: Ring>(alg: &SuperAlgebra<R>, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Result<Element<R>> {
    let [x, y, z] = alg.args(x, y, z)?;
    Ok(alg.v2_residual(x, y, z))
}

/// Super Leibniz rule, in associators.
pub fn eval_v3<R: Ring>(alg: &SuperAlgebra<R>, x: &Element<R>, y: &Element<R>, z: &Element<R>) -> Result<Element<R>> {
    let [x, y, z] = alg.args(x, y, z)?;
    Ok(alg.v3_residual(x, y, z))
}

pub fn check_super_poisson<R: Ring>(alg: &SuperAlgebra<R>) -> IdentityReport<R> {
    alg.check_triples("super-poisson", |x, y, z| alg.super_poisson_residual(x, y, z))
}

pub fn check_super_flexible<R: Ring>(alg: &SuperAlgebra<R>) -> IdentityReport<R> {
    alg.check_triples("super-flexible", |x, y, z| alg.flexible_residual(x, y, z))
}

/// The ungraded identity `3A(x,y,z) = (xz)y + (yz)x - (yx)z - (zx)y`; only
/// defined for purely even algebras.
pub fn check_even_specialization<R: Ring>(alg: &SuperAlgebra<R>) -> Result<IdentityReport<R>> {
    if alg.basis().dim_odd() != 0 {
        return Err(Error::Precondition(format!(
            "even specialization needs dim_odd = 0, got {}",
            alg.basis().dim_odd()
        )));
    }
    Ok(alg.check_triples("even-poisson", |x, y, z| alg.even_residual(x, y, z)))
}

/// `x·y - (-1)^{|x||y|} y·x` on all basis pairs.
pub fn check_super_commutative<R: Ring>(dot: &SuperAlgebra<R>) -> IdentityReport<R> {
    dot.check_pairs("dot-super-commutative", |x, y| {
        let mut r = dot.mul(x.v, y.v);
        r.add_scaled(&-sign(&[(x.d, y.d)]), &dot.mul(y.v, x.v));
        r
    })
}

pub fn check_associative<R: Ring>(dot: &SuperAlgebra<R>) -> IdentityReport<R> {
    dot.check_triples("dot-associative", |x, y, z| dot.assoc(x.v, y.v, z.v))
}

/// `{x,y} + (-1)^{|x||y|} {y,x}` on all basis pairs.
pub fn check_super_anticommutative<R: Ring>(bracket: &SuperAlgebra<R>) -> IdentityReport<R> {
    bracket.check_pairs("bracket-super-anticommutative", |x, y| {
        let mut r = bracket.mul(x.v, y.v);
        r.add_scaled(&sign(&[(x.d, y.d)]), &bracket.mul(y.v, x.v));
        r
    })
}

/// `(-1)^{|z||x|}{x,{y,z}} + (-1)^{|x||y|}{y,{z,x}} + (-1)^{|y||z|}{z,{x,y}}`.
pub fn check_super_jacobi<R: Ring>(bracket: &SuperAlgebra<R>) -> IdentityReport<R> {
    let b = |p: &Element<R>, q: &Element<R>| bracket.mul(p, q);
    bracket.check_triples("super-jacobi", |x, y, z| {
        Combo::new(bracket.dim())
            .add(sign(&[(z.d, x.d)]), &b(x.v, &b(y.v, z.v)))
            .add(sign(&[(x.d, y.d)]), &b(y.v, &b(z.v, x.v)))
            .add(sign(&[(y.d, z.d)]), &b(z.v, &b(x.v, y.v)))
            .finish()
    })
}

/// `{x, y·z} - {x,y}·z - (-1)^{|x||y|} y·{x,z}`.
pub fn check_super_leibniz<R: Ring>(dot: &SuperAlgebra<R>, bracket: &SuperAlgebra<R>) -> Result<IdentityReport<R>> {
    if dot.basis() != bracket.basis() {
        return Err(Error::BasisMismatch);
    }
    let (d, b) = (
        |p: &Element<R>, q: &Element<R>| dot.mul(p, q),
        |p: &Element<R>, q: &Element<R>| bracket.mul(p, q),
    );
    Ok(dot.check_triples("super-leibniz", |x, y, z| {
        Combo::new(dot.dim())
            .add(int(1), &b(x.v, &d(y.v, z.v)))
            .add(int(-1), &d(&b(x.v, y.v), z.v))
            .add(-sign(&[(x.d, y.d)]), &d(y.v, &b(x.v, z.v)))
            .finish()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedBasis;
    use proptest::prelude::*;

    fn int(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    fn two(entries: &[(usize, usize, usize, i64)]) -> SuperAlgebra {
        let basis = GradedBasis::new(1, 1).unwrap();
        SuperAlgebra::from_sparse(basis, entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c)))).unwrap()
    }

    /// e0e0 = a e0, e0e1 = b e1, e1e0 = c e1, e1e1 = d e0.
    fn param(a: i64, b: i64, c: i64, d: i64) -> SuperAlgebra {
        two(&[(0, 0, 0, a), (0, 1, 1, b), (1, 0, 1, c), (1, 1, 0, d)])
    }

    /// Term-by-term evaluation with explicit (-1)^k factors, no shared helpers.
    fn brute_super_poisson(alg: &SuperAlgebra, i: usize, j: usize, k: usize) -> Element {
        let e = alg.basis_vectors();
        let deg = |t: usize| alg.basis().degree(t).bit() as i64;
        let (x, y, z) = (&e[i], &e[j], &e[k]);
        let (dx, dy, dz) = (deg(i), deg(j), deg(k));
        let pm = |exp: i64| int(if exp % 2 == 0 { 1 } else { -1 });
        let m = |p: &Element, q: &Element| alg.multiply(p, q).unwrap();
        let terms = [
            (int(3), m(&m(x, y), z)),
            (int(-3), m(x, &m(y, z))),
            (pm(dx * dy), m(&m(y, x), z)),
            (-pm(dy * dz), m(&m(x, z), y)),
            (-pm(dx * dy + dx * dz), m(&m(y, z), x)),
            (pm(dx * dz + dy * dz), m(&m(z, x), y)),
        ];
        let mut out = Element::zero(alg.dim());
        for (c, t) in &terms {
            out.add_scaled(c, t);
        }
        out
    }

    #[test]
    fn sp24_satisfies_fused_identity() {
        let a = param(0, 0, 0, 1);
        let e1 = a.basis_vector(1);
        assert!(eval_super_poisson(&a, &e1, &e1, &e1).unwrap().is_zero());
        assert!(check_super_poisson(&a).holds);
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let z = SuperAlgebra::<Scalar>::zero(GradedBasis::new(2, 2).unwrap());
        assert!(check_super_poisson(&z).holds);
        assert!(check_super_flexible(&z).holds);
        let e = z.basis_vectors();
        for x in &e {
            assert!(eval_v1(&z, x, x, x).unwrap().is_zero());
            assert!(eval_v2(&z, x, x, x).unwrap().is_zero());
            assert!(eval_v3(&z, x, x, x).unwrap().is_zero());
        }
    }

    #[test]
    fn failing_table_has_witness() {
        // a=1, b=1, c=d=0: the constraint 3(a-b)b+ab-2bc+c^2 evaluates to 1.
        let a = param(1, 1, 0, 0);
        let e = a.basis_vectors();
        let r = eval_super_poisson(&a, &e[0], &e[0], &e[1]).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r, brute_super_poisson(&a, 0, 0, 1));
        assert_eq!(r, Element::new(vec![int(0), int(1)]));
        let rep = check_super_poisson(&a);
        assert!(!rep.holds);
        assert!(rep.witnesses.iter().any(|w| w.indices == vec![0, 0, 1]));
        assert_eq!(rep.failure_count, rep.witnesses.len());
    }

    #[test]
    fn brute_force_agrees_on_parameter_grid() {
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    for d in -1..=1 {
                        let alg = param(a, b, c, d);
                        let e = alg.basis_vectors();
                        for i in 0..2 {
                            for j in 0..2 {
                                for k in 0..2 {
                                    assert_eq!(
                                        eval_super_poisson(&alg, &e[i], &e[j], &e[k]).unwrap(),
                                        brute_super_poisson(&alg, i, j, k)
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        let a = param(0, 0, 0, 1);
        let mixed = Element::new(vec![int(1), int(1)]);
        let e1 = a.basis_vector(1);
        assert_eq!(
            eval_super_poisson(&a, &mixed, &e1, &e1),
            Err(Error::NonHomogeneous("x"))
        );
        assert_eq!(eval_v2(&a, &e1, &e1, &mixed), Err(Error::NonHomogeneous("z")));
    }

    #[test]
    fn v1_on_idempotent_vanishes() {
        let a = SuperAlgebra::from_sparse(GradedBasis::new(1, 0).unwrap(), [(0, 0, 0, int(1))]).unwrap();
        let e = a.basis_vector(0);
        // Every term is +-e0 and the signs cancel.
        assert!(eval_v1(&a, &e, &e, &e).unwrap().is_zero());
        assert!(eval_v1_with(&a, V1Form::LeftNested, &e, &e, &e).unwrap().is_zero());
    }

    #[test]
    fn proof_residuals_vanish_for_a_poisson_pair() {
        // Fused product of dot = 0, bracket {e0,e1} = e1.
        let a = param(0, 1, -1, 0);
        let e = a.basis_vectors();
        for x in &e {
            for y in &e {
                for z in &e {
                    assert!(eval_v1(&a, x, y, z).unwrap().is_zero());
                    assert!(eval_v2(&a, x, y, z).unwrap().is_zero());
                    assert!(eval_v3(&a, x, y, z).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn flexibility() {
        assert!(check_super_flexible(&param(1, 1, 1, 0)).holds);
        // e0e0 = e0, e0e1 = e1, e1e0 = 0 is associative: e1(e0e0) = e1e0 = 0.
        let assoc = param(1, 1, 0, 0);
        assert!(check_super_flexible(&assoc).holds);
        assert!(check_associative(&assoc).holds);

        // On (e0,e0,e1) the residual is (b-c)(a-b-c) e1; a=2, b=1, c=0 gives e1.
        let rep = check_super_flexible(&param(2, 1, 0, 0));
        assert!(!rep.holds);
        let w = &rep.witnesses[0];
        assert_eq!(w.indices, vec![0, 0, 1]);
        assert_eq!(w.residual, Element::new(vec![int(0), int(1)]));
    }

    #[test]
    fn even_specialization() {
        let idem = SuperAlgebra::from_sparse(GradedBasis::new(1, 0).unwrap(), [(0, 0, 0, int(1))]).unwrap();
        assert!(check_even_specialization(&idem).unwrap().holds);

        let v0 = param(2, 2, 2, 0).even_part().unwrap();
        assert!(check_even_specialization(&v0).unwrap().holds);

        assert!(check_even_specialization(&param(0, 0, 0, 1)).is_err());
    }

    #[test]
    fn even_specialization_two_dim_example() {
        // e0e0 = f0, e0f0 = f0, everything else zero; e0 = index 0, f0 = index 1.
        let basis = GradedBasis::new(2, 0).unwrap();
        let alg = SuperAlgebra::from_sparse(basis, [(0, 0, 1, int(1)), (0, 1, 1, int(1))]).unwrap();
        let rep = check_even_specialization(&alg).unwrap();
        // Brute force: 3A - (xz)y - (yz)x + (yx)z + (zx)y over the 8 triples.
        let e = alg.basis_vectors();
        let m = |p: &Element, q: &Element| alg.multiply(p, q).unwrap();
        let mut failures = 0;
        for x in &e {
            for y in &e {
                for z in &e {
                    let mut r = m(&m(x, y), z).minus(&m(x, &m(y, z))).scale_by(&int(3));
                    r = r.minus(&m(&m(x, z), y)).minus(&m(&m(y, z), x));
                    r = r.plus(&m(&m(y, x), z)).plus(&m(&m(z, x), y));
                    if !r.is_zero() {
                        failures += 1;
                    }
                }
            }
        }
        assert_eq!(rep.failure_count, failures);
        assert_eq!(rep.holds, check_super_poisson(&alg).holds);
    }

    #[test]
    fn witness_list_is_capped() {
        let basis = GradedBasis::new(3, 0).unwrap();
        let alg = SuperAlgebra::from_fn(basis, |i, j, k| int(((i * 7 + j * 3 + k) % 5) as i64 - 2)).unwrap();
        let rep = check_super_poisson(&alg);
        assert!(rep.failure_count > WITNESS_CAP);
        assert_eq!(rep.witnesses.len(), WITNESS_CAP);
    }

    fn arb_table(dim_even: usize, dim_odd: usize) -> impl Strategy<Value = SuperAlgebra> {
        let n = dim_even + dim_odd;
        prop::collection::vec(-2i64..=2, n * n * n).prop_map(move |vals| {
            let basis = GradedBasis::new(dim_even, dim_odd).unwrap();
            SuperAlgebra::from_fn(basis, |i, j, k| {
                if basis.degree(k) == basis.degree(i) + basis.degree(j) {
                    int(vals[(i * n + j) * n + k])
                } else {
                    Scalar::zero()
                }
            })
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn even_checkers_agree(alg in arb_table(2, 0)) {
            prop_assert_eq!(check_super_poisson(&alg).holds, check_even_specialization(&alg).unwrap().holds);
            prop_assert_eq!(check_super_poisson(&alg).failure_count, check_even_specialization(&alg).unwrap().failure_count);
        }

        #[test]
        fn fused_identity_is_three_v(alg in arb_table(1, 2)) {
            let e = alg.basis_vectors();
            for x in &e { for y in &e { for z in &e {
                let lhs = eval_super_poisson(&alg, x, y, z).unwrap();
                let v = eval_v(&alg, x, y, z).unwrap();
                prop_assert_eq!(lhs, v.scale_by(&int(3)));
            }}}
        }

        #[test]
        fn sixth_combination_matches_v(alg in arb_table(1, 2)) {
            // v = 1/6 (2 v1(x,y,z) + s v2(x,y,z) + v3(x,y,z) + 2 s' v3(z,x,y)).
            let e = alg.basis_vectors();
            let deg = |i: usize| alg.basis().degree(i);
            for i in 0..3 { for j in 0..3 { for k in 0..3 {
                let (x, y, z) = (&e[i], &e[j], &e[k]);
                let (dx, dy, dz) = (deg(i), deg(j), deg(k));
                let mut comb = eval_v1(&alg, x, y, z).unwrap().scale_by(&int(2));
                comb.add_scaled(&sign(&[(dx, dz)]), &eval_v2(&alg, x, y, z).unwrap());
                comb.add_scaled(&int(1), &eval_v3(&alg, x, y, z).unwrap());
                comb.add_scaled(&(int(2) * sign(&[(dx, dz), (dy, dz)])), &eval_v3(&alg, z, x, y).unwrap());
                let sixth = Scalar::ratio(1, 6).unwrap();
                prop_assert_eq!(comb.scale_by(&sixth), eval_v(&alg, x, y, z).unwrap());
            }}}
        }

        #[test]
        fn super_poisson_is_multilinear(alg in arb_table(1, 1), s in -3i64..=3, t in -3i64..=3) {
            // Scaling homogeneous arguments scales the residual.
            let e = alg.basis_vectors();
            for x in &e { for y in &e { for z in &e {
                let lhs = eval_super_poisson(&alg, &x.scale_by(&int(s)), y, &z.scale_by(&int(t))).unwrap();
                let rhs = eval_super_poisson(&alg, x, y, z).unwrap().scale_by(&int(s * t));
                prop_assert_eq!(lhs, rhs);
            }}}
        }

        #[test]
        fn multilinear_within_a_degree_block(alg in arb_table(2, 1), a in prop::collection::vec(-2i64..=2, 2), b in prop::collection::vec(-2i64..=2, 2)) {
            // x = a0 e0 + a1 e1 is even; compare against the sum over basis vectors.
            let e = alg.basis_vectors();
            let x = Element::new(vec![int(a[0]), int(a[1]), int(0)]);
            let y = Element::new(vec![int(b[0]), int(b[1]), int(0)]);
            let z = &e[2];
            let full = eval_super_poisson(&alg, &x, &y, z).unwrap();
            let mut sum = Element::zero(3);
            for p in 0..2 { for q in 0..2 {
                let r = eval_super_poisson(&alg, &e[p], &e[q], z).unwrap();
                sum.add_scaled(&int(a[p] * b[q]), &r);
            }}
            prop_assert_eq!(full, sum);
            let full = eval_v2(&alg, z, &x, &y).unwrap();
            let mut sum = Element::zero(3);
            for p in 0..2 { for q in 0..2 {
                sum.add_scaled(&int(a[p] * b[q]), &eval_v2(&alg, z, &e[p], &e[q]).unwrap());
            }}
            prop_assert_eq!(full, sum);
        }
    }
}
