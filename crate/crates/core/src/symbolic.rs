//! Free nonassociative engine on three graded generators.
//!
//! Only multilinear degree-3 words are represented: each of `x`, `y`, `z`
//! occurs once, so there are 12 words (`(pq)r` and `p(qr)` for the six leaf
//! orders). Koszul signs depend on the generator degrees, so a coefficient
//! is tabulated over the 8 degree assignments instead of kept symbolic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Degree, Element, GradedBasis, SuperAlgebra};
use crate::identities::{eval_super_poisson, eval_v, eval_v1_with, eval_v2, eval_v3, V1Form};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Leaf {
    X,
    Y,
    Z,
}

use Leaf::{X, Y, Z};

impl Leaf {
    pub const ALL: [Leaf; 3] = [X, Y, Z];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            X => "x",
            Y => "y",
            Z => "z",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Nesting {
    /// `(pq)r`
    Left,
    /// `p(qr)`
    Right,
}

/// A parenthesized product of the three generators, each used once.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    nesting: Nesting,
    leaves: [Leaf; 3],
}

impl Word {
    pub fn new(nesting: Nesting, leaves: [Leaf; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for l in leaves {
            if std::mem::replace(&mut seen[l.index()], true) {
                return Err(Error::Precondition(format!(
                    "word leaves {leaves:?} are not a permutation of x, y, z"
                )));
            }
        }
        Ok(Word { nesting, leaves })
    }

    fn left(p: Leaf, q: Leaf, r: Leaf) -> Self {
        Word::new(Nesting::Left, [p, q, r]).expect("distinct leaves")
    }

    fn right(p: Leaf, q: Leaf, r: Leaf) -> Self {
        Word::new(Nesting::Right, [p, q, r]).expect("distinct leaves")
    }

    /// All 12 multilinear words.
    pub fn all() -> Vec<Word> {
        let mut out = Vec::with_capacity(12);
        for nesting in [Nesting::Left, Nesting::Right] {
            for perm in PERMUTATIONS {
                out.push(Word { nesting, leaves: perm });
            }
        }
        out
    }

    pub fn nesting(&self) -> Nesting {
        self.nesting
    }

    pub fn leaves(&self) -> [Leaf; 3] {
        self.leaves
    }

    fn relabel(&self, r: &Relabel) -> Word {
        Word {
            nesting: self.nesting,
            leaves: self.leaves.map(|l| r.apply(l)),
        }
    }

    fn evaluate<R: Ring>(&self, alg: &SuperAlgebra<R>, args: [&Element<R>; 3]) -> Element<R> {
        let [p, q, r] = self.leaves.map(|l| args[l.index()]);
        match self.nesting {
            Nesting::Left => alg.mul(&alg.mul(p, q), r),
            Nesting::Right => alg.mul(p, &alg.mul(q, r)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = self.leaves;
        match self.nesting {
            Nesting::Left => write!(f, "({p}{q}){r}"),
            Nesting::Right => write!(f, "{p}({q}{r})"),
        }
    }
}

const PERMUTATIONS: [[Leaf; 3]; 6] = [[X, Y, Z], [X, Z, Y], [Y, X, Z], [Y, Z, X], [Z, X, Y], [Z, Y, X]];

/// Degrees `(|x|, |y|, |z|)`, indexed by the binary number `|x||y||z|`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DegreeAssignment(u8);

impl DegreeAssignment {
    pub const ALL_EVEN: DegreeAssignment = DegreeAssignment(0);

    pub fn all() -> impl Iterator<Item = DegreeAssignment> {
        (0..8).map(DegreeAssignment)
    }

    pub fn from_degrees(dx: Degree, dy: Degree, dz: Degree) -> Self {
        DegreeAssignment(dx.bit() << 2 | dy.bit() << 1 | dz.bit())
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn degree(self, leaf: Leaf) -> Degree {
        Degree::from_bit(self.0 >> (2 - leaf.index()) & 1)
    }

    /// The assignment `l -> self(r(l))`.
    fn pull_back(self, r: &Relabel) -> DegreeAssignment {
        let [dx, dy, dz] = Leaf::ALL.map(|l| self.degree(r.apply(l)));
        DegreeAssignment::from_degrees(dx, dy, dz)
    }
}

impl fmt::Display for DegreeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03b}", self.0)
    }
}

impl Serialize for DegreeAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A relabeling of the generators: `x -> images[0]`, `y -> images[1]`,
/// `z -> images[2]`. `v(z,x,y)` is `v` relabeled by `[Z, X, Y]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Relabel([Leaf; 3]);

impl Relabel {
    pub const IDENTITY: Relabel = Relabel([X, Y, Z]);

    pub fn new(images: [Leaf; 3]) -> Result<Self> {
        Word::new(Nesting::Left, images)?;
        Ok(Relabel(images))
    }

    pub fn all() -> impl Iterator<Item = Relabel> {
        PERMUTATIONS.into_iter().map(Relabel)
    }

    pub fn apply(&self, l: Leaf) -> Leaf {
        self.0[l.index()]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Relabel) -> Relabel {
        Relabel(first.0.map(|l| self.apply(l)))
    }
}

fn rel(p: Leaf, q: Leaf, r: Leaf) -> Relabel {
    Relabel::new([p, q, r]).expect("distinct leaves")
}

/// A rational coefficient depending on the degree assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedCoeff([Scalar; 8]);

impl SignedCoeff {
    pub fn constant(c: Scalar) -> Self {
        SignedCoeff(std::array::from_fn(|_| c.clone()))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::integer(n))
    }

    /// `(-1)^{sum |p||q|}` over the listed pairs.
    pub fn koszul(pairs: &[(Leaf, Leaf)]) -> Self {
        SignedCoeff(std::array::from_fn(|i| {
            let a = DegreeAssignment(i as u8);
            let exp: u32 = pairs
                .iter()
                .map(|&(p, q)| u32::from(a.degree(p).bit() * a.degree(q).bit()))
                .sum();
            Scalar::sign(exp)
        }))
    }

    pub fn at(&self, a: DegreeAssignment) -> &Scalar {
        &self.0[a.index()]
    }

    pub fn times(&self, other: &SignedCoeff) -> SignedCoeff {
        SignedCoeff(std::array::from_fn(|i| &self.0[i] * &other.0[i]))
    }

    pub fn scaled(&self, s: &Scalar) -> SignedCoeff {
        SignedCoeff(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn negate(&self) -> SignedCoeff {
        SignedCoeff(std::array::from_fn(|i| -&self.0[i]))
    }
}

fn k(pairs: &[(Leaf, Leaf)]) -> SignedCoeff {
    SignedCoeff::koszul(pairs)
}

/// A linear combination of words, one canonical table per degree
/// assignment. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalSum {
    components: [BTreeMap<Word, Scalar>; 8],
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn add_term(&mut self, c: &SignedCoeff, w: Word) -> &mut Self {
        for a in DegreeAssignment::all() {
            add_canonical(&mut self.components[a.index()], w, c.at(a).clone());
        }
        self
    }

    /// Adds `c·A(p,q,r) = c·(pq)r − c·p(qr)`.
    fn add_assoc(&mut self, c: &SignedCoeff, p: Leaf, q: Leaf, r: Leaf) -> &mut Self {
        self.add_term(c, Word::left(p, q, r));
        self.add_term(&c.negate(), Word::right(p, q, r))
    }

    pub fn add_scaled(&mut self, c: &SignedCoeff, other: &FormalSum) -> &mut Self {
        for a in DegreeAssignment::all() {
            let s = c.at(a);
            for (w, v) in &other.components[a.index()] {
                add_canonical(&mut self.components[a.index()], *w, v * s);
            }
        }
        self
    }

    pub fn minus(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out.add_scaled(&SignedCoeff::int(-1), other);
        out
    }

    pub fn at(&self, a: DegreeAssignment) -> &BTreeMap<Word, Scalar> {
        &self.components[a.index()]
    }

    pub fn term_count(&self, a: DegreeAssignment) -> usize {
        self.components[a.index()].len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    /// Relabels the generators. The coefficient of a relabeled word at an
    /// assignment is the original coefficient at the pulled-back assignment,
    /// so signs stay expressed in the original variables' degrees.
    pub fn substitute(&self, r: &Relabel) -> FormalSum {
        let mut out = FormalSum::zero();
        for a in DegreeAssignment::all() {
            let source = &self.components[a.pull_back(r).index()];
            for (w, c) in source {
                add_canonical(&mut out.components[a.index()], w.relabel(r), c.clone());
            }
        }
        out
    }

    /// Value on concrete homogeneous arguments `(x, y, z)`.
    pub fn evaluate<R: Ring>(&self, alg: &SuperAlgebra<R>, args: [&Element<R>; 3]) -> Result<Element<R>> {
        let degrees = [
            alg.homogeneous_degree(args[0], "x")?,
            alg.homogeneous_degree(args[1], "y")?,
            alg.homogeneous_degree(args[2], "z")?,
        ];
        let a = DegreeAssignment::from_degrees(degrees[0], degrees[1], degrees[2]);
        let mut out = Element::zero(alg.dim());
        for (w, c) in &self.components[a.index()] {
            out.add_scaled(c, &w.evaluate(alg, args));
        }
        Ok(out)
    }

    /// Human-readable rendering of one component.
    pub fn render(&self, a: DegreeAssignment) -> String {
        let terms = &self.components[a.index()];
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (w, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if mag != Scalar::integer(1) {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&w.to_string());
        }
        s
    }
}

fn add_canonical(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let sum = map.get(&w).map_or(c.clone(), |old| old + &c);
    if sum.is_zero() {
        map.remove(&w);
    } else {
        map.insert(w, sum);
    }
}

/// Termwise signed sum `sum c_i f_i`.
pub fn linear_combine(terms: &[(SignedCoeff, &FormalSum)]) -> FormalSum {
    let mut out = FormalSum::zero();
    for (c, f) in terms {
        out.add_scaled(c, f);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum IdentityName {
    /// Combination whose vanishing is equivalent to the fused identity.
    V,
    /// Associativity of the symmetric part.
    V1,
    /// Super Jacobi of the antisymmetric part.
    V2,
    /// Super Leibniz rule.
    V3,
    /// Expanded flexibility residual after substituting the fused identity.
    B,
    Eq2,
    Eq1,
}

impl FromStr for IdentityName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "v" => IdentityName::V,
            "v1" => IdentityName::V1,
            "v2" => IdentityName::V2,
            "v3" => IdentityName::V3,
            "B" | "b" => IdentityName::B,
            "eq2" => IdentityName::Eq2,
            "eq1" => IdentityName::Eq1,
            other => return Err(Error::UnknownIdentity(other.to_string())),
        })
    }
}

pub fn build_identity(name: IdentityName) -> FormalSum {
    build_identity_with(name, V1Form::Verbatim)
}

pub fn build_identity_with(name: IdentityName, form: V1Form) -> FormalSum {
    let one = SignedCoeff::int(1);
    let mut f = FormalSum::zero();
    match name {
        IdentityName::Eq2 => {
            f.add_term(&SignedCoeff::int(3), Word::left(X, Y, Z))
                .add_term(&SignedCoeff::int(-3), Word::right(X, Y, Z));
            add_cyclic_tail(&mut f, &one);
        }
        IdentityName::Eq1 => {
            f.add_assoc(&SignedCoeff::int(3), X, Y, Z)
                .add_term(&SignedCoeff::int(-1), Word::left(X, Z, Y))
                .add_term(&SignedCoeff::int(-1), Word::left(Y, Z, X))
                .add_term(&one, Word::left(Y, X, Z))
                .add_term(&one, Word::left(Z, X, Y));
        }
        IdentityName::V => {
            let third = SignedCoeff::constant(Scalar::ratio(1, 3).expect("nonzero"));
            add_cyclic_tail(&mut f, &third);
            f.add_assoc(&one, X, Y, Z);
        }
        IdentityName::V1 => {
            f.add_assoc(&one, X, Y, Z)
                .add_assoc(&k(&[(X, Y), (X, Z), (Y, Z)]).negate(), Z, Y, X)
                .add_term(&k(&[(X, Y)]), Word::left(Y, X, Z));
            let (xzy, zxy) = match form {
                V1Form::Verbatim => (Word::right(X, Z, Y), Word::right(Z, X, Y)),
                V1Form::LeftNested => (Word::left(X, Z, Y), Word::left(Z, X, Y)),
            };
            f.add_term(&k(&[(Y, Z)]).negate(), xzy)
                .add_term(&k(&[(X, Y), (X, Z)]).negate(), Word::left(Y, Z, X))
                .add_term(&k(&[(X, Z), (Y, Z)]), zxy);
        }
        IdentityName::V2 => {
            f.add_assoc(&k(&[(X, Z)]), X, Y, Z)
                .add_assoc(&k(&[(X, Y), (X, Z)]).negate(), Y, X, Z)
                .add_assoc(&k(&[(X, Y), (Y, Z)]).negate(), Z, Y, X)
                .add_assoc(&k(&[(X, Z), (Y, Z)]).negate(), X, Z, Y)
                .add_assoc(&k(&[(X, Y)]), Y, Z, X)
                .add_assoc(&k(&[(Y, Z)]), Z, X, Y);
        }
        IdentityName::V3 => {
            f.add_assoc(&one, X, Y, Z)
                .add_assoc(&k(&[(X, Y)]).negate(), Y, X, Z)
                .add_assoc(&k(&[(X, Y), (X, Z), (Y, Z)]), Z, Y, X)
                .add_assoc(&k(&[(Y, Z)]), X, Z, Y)
                .add_assoc(&k(&[(X, Y), (X, Z)]), Y, Z, X)
                .add_assoc(&k(&[(X, Z), (Y, Z)]).negate(), Z, X, Y);
        }
        IdentityName::B => {
            let m = SignedCoeff::int(-1);
            // -(signed tail of the fused identity at (x,y,z))
            add_cyclic_tail(&mut f, &m);
            // -sigma * (signed tail at (z,y,x)), written in x, y, z.
            let sigma = k(&[(X, Z), (X, Y), (Y, Z)]);
            f.add_term(&sigma.times(&k(&[(Z, Y)])).negate(), Word::left(Y, Z, X))
                .add_term(&sigma.times(&k(&[(Y, X)])), Word::left(Z, X, Y))
                .add_term(&sigma.times(&k(&[(Z, Y), (Z, X)])), Word::left(Y, X, Z))
                .add_term(&sigma.times(&k(&[(Z, X), (Y, X)])).negate(), Word::left(X, Z, Y));
        }
    }
    f
}

/// `c·[s(yx)z − s(xz)y − s(yz)x + s(zx)y]`, the signed part of the fused
/// identity beyond `3A(x,y,z)`.
fn add_cyclic_tail(f: &mut FormalSum, c: &SignedCoeff) {
    f.add_term(&c.times(&k(&[(X, Y)])), Word::left(Y, X, Z))
        .add_term(&c.times(&k(&[(Y, Z)])).negate(), Word::left(X, Z, Y))
        .add_term(&c.times(&k(&[(X, Y), (X, Z)])).negate(), Word::left(Y, Z, X))
        .add_term(&c.times(&k(&[(X, Z), (Y, Z)])), Word::left(Z, X, Y));
}

/// `3(A(x,y,z) + s A(z,y,x))` in raw associator form.
pub fn flexibility_associators() -> FormalSum {
    let mut f = FormalSum::zero();
    f.add_assoc(&SignedCoeff::int(3), X, Y, Z).add_assoc(
        &k(&[(X, Z), (X, Y), (Y, Z)]).scaled(&Scalar::integer(3)),
        Z,
        Y,
        X,
    );
    f
}

/// Identities checked by [`prove_all`], in report order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofCheck {
    /// `v = 1/6 (2 v1 + s v2 + v3 + 2 s' v3(z,x,y))`
    SixthCombination,
    /// `v1` as a signed sum of four relabelings of `v`.
    ConverseV1,
    ConverseV2,
    ConverseV3,
    /// The expanded flexibility residual cancels.
    FlexibilityB,
    /// `3(A(x,y,z) + s A(z,y,x)) = eq2(x,y,z) + s eq2(z,y,x) + B`.
    FlexibilityFromEq2,
    /// The all-even component of the fused identity is the ungraded one.
    EvenReduction,
}

impl ProofCheck {
    pub const ALL: [ProofCheck; 7] = [
        ProofCheck::SixthCombination,
        ProofCheck::ConverseV1,
        ProofCheck::ConverseV2,
        ProofCheck::ConverseV3,
        ProofCheck::FlexibilityB,
        ProofCheck::FlexibilityFromEq2,
        ProofCheck::EvenReduction,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ProofCheck::SixthCombination => "sixth-combination",
            ProofCheck::ConverseV1 => "converse-v1",
            ProofCheck::ConverseV2 => "converse-v2",
            ProofCheck::ConverseV3 => "converse-v3",
            ProofCheck::FlexibilityB => "flexibility-B",
            ProofCheck::FlexibilityFromEq2 => "flexibility-from-eq2",
            ProofCheck::EvenReduction => "eq2-even-reduction",
        }
    }

    /// The residual whose vanishing proves the check.
    pub fn residual(self, form: V1Form) -> FormalSum {
        let b = |n| build_identity_with(n, form);
        let v = b(IdentityName::V);
        let vr = |p, q, r| v.substitute(&rel(p, q, r));
        match self {
            ProofCheck::SixthCombination => {
                let sixth = |c: SignedCoeff| c.scaled(&Scalar::ratio(1, 6).expect("nonzero"));
                let v3_zxy = b(IdentityName::V3).substitute(&rel(Z, X, Y));
                let comb = linear_combine(&[
                    (sixth(SignedCoeff::int(2)), &b(IdentityName::V1)),
                    (sixth(k(&[(X, Z)])), &b(IdentityName::V2)),
                    (sixth(SignedCoeff::int(1)), &b(IdentityName::V3)),
                    (sixth(k(&[(X, Z), (Y, Z)]).scaled(&Scalar::integer(2))), &v3_zxy),
                ]);
                comb.minus(&v)
            }
            ProofCheck::ConverseV1 => linear_combine(&[
                (SignedCoeff::int(1), &v),
                (k(&[(X, Y), (X, Z), (Y, Z)]).negate(), &vr(Z, Y, X)),
                (k(&[(Y, Z)]), &vr(X, Z, Y)),
                (k(&[(X, Z), (Y, Z)]).negate(), &vr(Z, X, Y)),
            ])
            .minus(&b(IdentityName::V1)),
            ProofCheck::ConverseV2 => linear_combine(&[
                (k(&[(X, Z)]), &v),
                (k(&[(X, Y), (X, Z)]).negate(), &vr(Y, X, Z)),
                (k(&[(X, Y), (Y, Z)]).negate(), &vr(Z, Y, X)),
                (k(&[(X, Z), (Y, Z)]).negate(), &vr(X, Z, Y)),
                (k(&[(X, Y)]), &vr(Y, Z, X)),
                (k(&[(Y, Z)]), &vr(Z, X, Y)),
            ])
            .minus(&b(IdentityName::V2)),
            ProofCheck::ConverseV3 => linear_combine(&[
                (SignedCoeff::int(1), &v),
                (k(&[(X, Y)]).negate(), &vr(Y, X, Z)),
                (k(&[(X, Y), (X, Z), (Y, Z)]), &vr(Z, Y, X)),
                (k(&[(Y, Z)]), &vr(X, Z, Y)),
                (k(&[(X, Y), (X, Z)]), &vr(Y, Z, X)),
                (k(&[(X, Z), (Y, Z)]).negate(), &vr(Z, X, Y)),
            ])
            .minus(&b(IdentityName::V3)),
            ProofCheck::FlexibilityB => b(IdentityName::B),
            ProofCheck::FlexibilityFromEq2 => {
                let eq2 = b(IdentityName::Eq2);
                let sigma = k(&[(X, Z), (X, Y), (Y, Z)]);
                flexibility_associators().minus(&linear_combine(&[
                    (SignedCoeff::int(1), &eq2),
                    (sigma, &eq2.substitute(&rel(Z, Y, X))),
                    (SignedCoeff::int(1), &b(IdentityName::B)),
                ]))
            }
            ProofCheck::EvenReduction => {
                // Compare the all-even component of eq2 with eq1 at every
                // assignment; eq1 carries no signs, so its components agree.
                let eq2 = b(IdentityName::Eq2);
                let eq1 = b(IdentityName::Eq1);
                let mut out = FormalSum::zero();
                for a in DegreeAssignment::all() {
                    let mut m = eq2.at(DegreeAssignment::ALL_EVEN).clone();
                    for (w, c) in eq1.at(a) {
                        add_canonical(&mut m, *w, -c);
                    }
                    out.components[a.index()] = m;
                }
                out
            }
        }
    }

    /// Evaluates the same residual on concrete arguments using the
    /// identity evaluators directly, without going through [`FormalSum`].
    pub fn concrete_residual(self, form: V1Form, alg: &SuperAlgebra, args: [&Element; 3]) -> Result<Element> {
        let [x, y, z] = args;
        let deg = |e: &Element, n| alg.homogeneous_degree(e, n);
        let (dx, dy, dz) = (deg(x, "x")?, deg(y, "y")?, deg(z, "z")?);
        let s = |pairs: &[(Degree, Degree)]| Scalar::sign(crate::graded::koszul_exponent(pairs));
        let v = |p: &Element, q: &Element, r: &Element| eval_v(alg, p, q, r);
        let mut out = Element::zero(alg.dim());
        let int = Scalar::integer;
        match self {
            ProofCheck::SixthCombination => {
                let sixth = Scalar::ratio(1, 6).expect("nonzero");
                out.add_scaled(&(&sixth * &int(2)), &eval_v1_with(alg, form, x, y, z)?);
                out.add_scaled(&(&sixth * &s(&[(dx, dz)])), &eval_v2(alg, x, y, z)?);
                out.add_scaled(&sixth, &eval_v3(alg, x, y, z)?);
                out.add_scaled(
                    &(&sixth * &(int(2) * s(&[(dx, dz), (dy, dz)]))),
                    &eval_v3(alg, z, x, y)?,
                );
                out = out.minus(&v(x, y, z)?);
            }
            ProofCheck::ConverseV1 => {
                out.add_scaled(&int(1), &v(x, y, z)?);
                out.add_scaled(&-s(&[(dx, dy), (dx, dz), (dy, dz)]), &v(z, y, x)?);
                out.add_scaled(&s(&[(dy, dz)]), &v(x, z, y)?);
                out.add_scaled(&-s(&[(dx, dz), (dy, dz)]), &v(z, x, y)?);
                out = out.minus(&eval_v1_with(alg, form, x, y, z)?);
            }
            ProofCheck::ConverseV2 => {
                out.add_scaled(&s(&[(dx, dz)]), &v(x, y, z)?);
                out.add_scaled(&-s(&[(dx, dy), (dx, dz)]), &v(y, x, z)?);
                out.add_scaled(&-s(&[(dx, dy), (dy, dz)]), &v(z, y, x)?);
                out.add_scaled(&-s(&[(dx, dz), (dy, dz)]), &v(x, z, y)?);
                out.add_scaled(&s(&[(dx, dy)]), &v(y, z, x)?);
                out.add_scaled(&s(&[(dy, dz)]), &v(z, x, y)?);
                out = out.minus(&eval_v2(alg, x, y, z)?);
            }
            ProofCheck::ConverseV3 => {
                out.add_scaled(&int(1), &v(x, y, z)?);
                out.add_scaled(&-s(&[(dx, dy)]), &v(y, x, z)?);
                out.add_scaled(&s(&[(dx, dy), (dx, dz), (dy, dz)]), &v(z, y, x)?);
                out.add_scaled(&s(&[(dy, dz)]), &v(x, z, y)?);
                out.add_scaled(&s(&[(dx, dy), (dx, dz)]), &v(y, z, x)?);
                out.add_scaled(&-s(&[(dx, dz), (dy, dz)]), &v(z, x, y)?);
                out = out.minus(&eval_v3(alg, x, y, z)?);
            }
            ProofCheck::FlexibilityB | ProofCheck::FlexibilityFromEq2 => {
                // Both reduce to 3(A + s A') − eq2 − s eq2' evaluated concretely;
                // for B this is the value B must have on any algebra.
                let sigma = s(&[(dx, dz), (dx, dy), (dy, dz)]);
                out.add_scaled(&int(3), &alg.assoc(x, y, z));
                out.add_scaled(&(int(3) * &sigma), &alg.assoc(z, y, x));
                out = out.minus(&eval_super_poisson(alg, x, y, z)?);
                out.add_scaled(&-sigma, &eval_super_poisson(alg, z, y, x)?);
                if self == ProofCheck::FlexibilityFromEq2 {
                    out = out.minus(&build_identity(IdentityName::B).evaluate(alg, args)?);
                }
            }
            ProofCheck::EvenReduction => {
                let eq2_even = build_identity(IdentityName::Eq2);
                let eq1 = build_identity(IdentityName::Eq1);
                let m = |w: &Word| w.evaluate(alg, args);
                for (w, c) in eq2_even.at(DegreeAssignment::ALL_EVEN) {
                    out.add_scaled(c, &m(w));
                }
                for (w, c) in eq1.at(DegreeAssignment::from_degrees(dx, dy, dz)) {
                    out.add_scaled(&-c, &m(w));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofLine {
    pub check: ProofCheck,
    pub name: &'static str,
    pub assignment: DegreeAssignment,
    pub passed: bool,
    pub residual_terms: usize,
    /// Rendered residual, empty when the check passes.
    pub residual: String,
    /// For failures: whether the concrete cross-check reproduced a nonzero
    /// residual on the reference algebra.
    pub confirmed_concretely: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofReport {
    pub v1_form: V1Form,
    pub lines: Vec<ProofLine>,
}

impl ProofReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn passed(&self, check: ProofCheck) -> bool {
        self.lines.iter().filter(|l| l.check == check).all(|l| l.passed)
    }
}

/// A (3|3) algebra with scattered nonzero constants, used to cross-check
/// symbolic failures concretely. Generators of any degree assignment are
/// distinct basis vectors.
pub fn reference_algebra() -> SuperAlgebra {
    let basis = GradedBasis::new(3, 3).expect("nonempty basis");
    SuperAlgebra::from_fn(basis, |i, j, k| {
        if basis.degree(k) != basis.degree(i) + basis.degree(j) {
            return Scalar::zero();
        }
        let h = (i * 37 + j * 101 + k * 53 + i * j * 11 + j * k * 7 + 3) % 11;
        Scalar::integer(h as i64 - 5)
    })
    .expect("masked by degree")
}

/// Basis vectors of the reference algebra realizing `a`.
pub fn reference_arguments(a: DegreeAssignment) -> [Element; 3] {
    let n = 6;
    Leaf::ALL.map(|l| {
        let slot = l.index() + 3 * a.degree(l).bit() as usize;
        Element::basis(n, slot)
    })
}

pub fn prove_all() -> ProofReport {
    prove_all_with(V1Form::Verbatim)
}

pub fn prove_all_with(form: V1Form) -> ProofReport {
    let reference = reference_algebra();
    let mut lines = Vec::new();
    for check in ProofCheck::ALL {
        let residual = check.residual(form);
        for a in DegreeAssignment::all() {
            let count = residual.term_count(a);
            let passed = count == 0;
            let confirmed_concretely = (!passed).then(|| {
                let args = reference_arguments(a);
                check
                    .concrete_residual(form, &reference, [&args[0], &args[1], &args[2]])
                    .map(|r| !r.is_zero())
                    .unwrap_or(false)
            });
            lines.push(ProofLine {
                check,
                name: check.label(),
                assignment: a,
                passed,
                residual_terms: count,
                residual: if passed { String::new() } else { residual.render(a) },
                confirmed_concretely,
            });
        }
    }
    ProofReport { v1_form: form, lines }
}
