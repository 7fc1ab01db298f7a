//! Tables of products `y^i y^j` and well-definedness of powers.
//!
//! `y^n` is well defined when every split `y^p y^(n-p)` gives the same
//! element. Disagreements are kept: an ambiguous power carries all of its
//! candidate values, and everything computed from it is ambiguous too.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Degree, Element, Homogeneity, SuperAlgebra};
use crate::identities::check_super_poisson;
use crate::presentation::split;
use crate::scalar::Scalar;

pub const DEFAULT_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "lowercase")]
pub enum PowerEntry {
    Determined(Element),
    Ambiguous(Vec<Element>),
}

impl PowerEntry {
    pub fn candidates(&self) -> &[Element] {
        match self {
            PowerEntry::Determined(e) => std::slice::from_ref(e),
            PowerEntry::Ambiguous(v) => v,
        }
    }

    pub fn value(&self) -> Option<&Element> {
        match self {
            PowerEntry::Determined(e) => Some(e),
            PowerEntry::Ambiguous(_) => None,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self, PowerEntry::Ambiguous(_))
    }
}

fn push_distinct(out: &mut Vec<Element>, e: Element) {
    if !out.contains(&e) {
        out.push(e);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerTable {
    pub element: Element,
    pub max_n: usize,
    /// `(i, j) -> y^i y^j` for `i + j <= max_n`.
    pub products: BTreeMap<(usize, usize), PowerEntry>,
    pub powers: BTreeMap<usize, PowerEntry>,
}

impl PowerTable {
    pub fn power(&self, n: usize) -> Option<&PowerEntry> {
        self.powers.get(&n)
    }

    pub fn first_ambiguity(&self) -> Option<usize> {
        self.powers.iter().find(|(_, e)| e.is_ambiguous()).map(|(n, _)| *n)
    }

    /// Rows `n = 2..=max_n`, one column per split `p`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "y = {}", self.element);
        for n in 2..=self.max_n {
            let _ = write!(s, "n={n}:");
            for p in 1..n {
                let cell = &self.products[&(p, n - p)];
                let _ = write!(s, " p={p}[{}]", render_entry(cell));
            }
            let verdict = match &self.powers[&n] {
                PowerEntry::Determined(e) => format!("y^{n} = {e}"),
                PowerEntry::Ambiguous(_) => format!("y^{n} AMBIGUOUS"),
            };
            let _ = writeln!(s, "  => {verdict}");
        }
        s
    }
}

fn render_entry(e: &PowerEntry) -> String {
    let vec = |x: &Element| {
        let parts: Vec<String> = x.coefficients().iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(", "))
    };
    match e {
        PowerEntry::Determined(x) => vec(x),
        PowerEntry::Ambiguous(xs) => {
            let parts: Vec<String> = xs.iter().map(vec).collect();
            format!("ambiguous {}", parts.join(" | "))
        }
    }
}

pub fn build_power_table(alg: &SuperAlgebra, y: &Element, max_n: usize) -> Result<PowerTable> {
    if max_n < 2 {
        return Err(Error::Precondition(format!("max_n must be at least 2, got {max_n}")));
    }
    if y.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: y.dim(),
        });
    }
    let mut powers = BTreeMap::from([(1, PowerEntry::Determined(y.clone()))]);
    let mut products = BTreeMap::new();
    for n in 2..=max_n {
        let mut all = Vec::new();
        let mut tainted = false;
        for p in 1..n {
            let (left, right) = (&powers[&p], &powers[&(n - p)]);
            let mut cands = Vec::new();
            for u in left.candidates() {
                for v in right.candidates() {
                    push_distinct(&mut cands, alg.mul(u, v));
                }
            }
            let ambiguous = left.is_ambiguous() || right.is_ambiguous() || cands.len() > 1;
            tainted |= ambiguous;
            for c in &cands {
                push_distinct(&mut all, c.clone());
            }
            let entry = if ambiguous {
                PowerEntry::Ambiguous(cands)
            } else {
                PowerEntry::Determined(cands.pop().expect("one candidate"))
            };
            products.insert((p, n - p), entry);
        }
        let entry = if tainted || all.len() > 1 {
            PowerEntry::Ambiguous(all)
        } else {
            PowerEntry::Determined(all.pop().expect("n >= 2 has a split"))
        };
        powers.insert(n, entry);
    }
    Ok(PowerTable {
        element: y.clone(),
        max_n,
        products,
        powers,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerVerdict {
    pub passed: bool,
    pub first_ambiguity: Option<usize>,
    pub table: PowerTable,
}

fn require_super_poisson(alg: &SuperAlgebra) -> Result<()> {
    if check_super_poisson(alg).holds {
        Ok(())
    } else {
        Err(Error::Precondition(
            "algebra does not satisfy the super-Poisson identity".into(),
        ))
    }
}

fn require_degree(alg: &SuperAlgebra, y: &Element, want: Degree) -> Result<()> {
    if y.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: y.dim(),
        });
    }
    match alg.degree_of(y) {
        _ if y.is_zero() => Ok(()),
        Homogeneity::Homogeneous(d) if d == want => Ok(()),
        _ => Err(Error::Precondition(format!(
            "element {y} is not homogeneous of degree {want}"
        ))),
    }
}

fn verdict(table: PowerTable) -> PowerVerdict {
    let first_ambiguity = table.first_ambiguity();
    PowerVerdict {
        passed: first_ambiguity.is_none(),
        first_ambiguity,
        table,
    }
}

/// Odd elements of a super-Poisson algebra have well-defined powers.
pub fn check_odd_power_associativity(alg: &SuperAlgebra, y: &Element, max_n: usize) -> Result<PowerVerdict> {
    require_super_poisson(alg)?;
    require_degree(alg, y, Degree::Odd)?;
    Ok(verdict(build_power_table(alg, y, max_n)?))
}

/// Even elements of a super-Poisson algebra generate associative
/// subalgebras, since the even part satisfies the ungraded identity.
pub fn check_even_power_associativity(alg: &SuperAlgebra, x: &Element, max_n: usize) -> Result<PowerVerdict> {
    require_super_poisson(alg)?;
    require_degree(alg, x, Degree::Even)?;
    Ok(verdict(build_power_table(alg, x, max_n)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkStep {
    pub step: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkSteps {
    pub steps: Vec<RemarkStep>,
}

impl RemarkSteps {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// Checks the intermediate equalities that lead from `y·y = 0` to a well
/// defined `y^5` for an odd element `y`.
pub fn verify_remark_steps(alg: &SuperAlgebra, y: &Element) -> Result<RemarkSteps> {
    require_super_poisson(alg)?;
    require_degree(alg, y, Degree::Odd)?;
    let pair = split(alg);
    let m = |u: &Element, v: &Element| alg.mul(u, v);
    let dot = |u: &Element, v: &Element| pair.dot().mul(u, v);
    let br = |u: &Element, v: &Element| pair.bracket().mul(u, v);

    let y2 = m(y, y);
    let yy_bracket = br(y, y);
    let y3 = m(y, &y2);
    let y2y2 = m(&y2, &y2);
    let y4 = y2y2.clone();
    let dot_y_bb = dot(y, &yy_bracket);

    let mut steps = Vec::new();
    let mut step = |name: &'static str, holds: bool| steps.push(RemarkStep { step: name, holds });
    step("y·y = 0", dot(y, y).is_zero());
    step("{y,y} = yy", yy_bracket == y2);
    step("{y,{y,y}} = 0", br(y, &yy_bracket).is_zero());
    step("y y^2 = y·{y,y}", y3 == dot_y_bb);
    step("y·{y,y} = {y,y}·y", dot_y_bb == dot(&yy_bracket, y));
    step("y y^2 = y^2 y", y3 == m(&y2, y));
    step("y y^3 = {y,y}·{y,y}", m(y, &y3) == dot(&yy_bracket, &yy_bracket));
    step(
        "y^2 y^2 - y y^3 = {{y,y},{y,y}}",
        y2y2.minus(&m(y, &y3)) == br(&yy_bracket, &yy_bracket),
    );
    step("{{y,y},{y,y}} = 0", br(&yy_bracket, &yy_bracket).is_zero());
    step("{y, y·{y,y}} = {y·{y,y}, y}", br(y, &dot_y_bb) == br(&dot_y_bb, y));
    step("y^4 = y^2 y^2 = y y^3 = y^3 y", y4 == m(y, &y3) && y4 == m(&y3, y));
    let y5 = m(y, &y4);
    step(
        "y y^4 = y^2 y^3 = y^3 y^2 = y^4 y",
        y5 == m(&y2, &y3) && y5 == m(&y3, &y2) && y5 == m(&y4, y),
    );
    Ok(RemarkSteps { steps })
}

/// Replaces `y` by `λy`; every power scales by `λ^n`.
pub fn scale_table(table: &PowerTable, lambda: &Scalar) -> BTreeMap<usize, Vec<Element>> {
    table
        .powers
        .iter()
        .map(|(n, e)| {
            let f = lambda.pow(*n as u32);
            (*n, e.candidates().iter().map(|c| c.scale(&f)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedBasis;
    use crate::presentation::{fuse, PoissonPair};
    use proptest::prelude::*;

    fn int(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    fn two(entries: &[(usize, usize, usize, i64)]) -> SuperAlgebra {
        let basis = GradedBasis::new(1, 1).unwrap();
        SuperAlgebra::from_sparse(basis, entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c)))).unwrap()
    }

    fn el(v: &[i64]) -> Element {
        Element::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn sp24_odd_powers() {
        let a = two(&[(1, 1, 0, 1)]);
        let t = build_power_table(&a, &el(&[0, 1]), 5).unwrap();
        assert_eq!(t.power(2).unwrap().value(), Some(&el(&[1, 0])));
        for n in 3..=5 {
            assert_eq!(t.power(n).unwrap().value(), Some(&el(&[0, 0])), "n={n}");
        }
        assert_eq!(t.first_ambiguity(), None);
        assert_eq!(t.products.len(), (2..=5).map(|n| n - 1).sum::<usize>());
    }

    #[test]
    fn zero_and_idempotent() {
        let z = SuperAlgebra::<Scalar>::zero(GradedBasis::new(1, 1).unwrap());
        let t = build_power_table(&z, &el(&[2, 0]), 6).unwrap();
        for n in 2..=6 {
            assert!(t.power(n).unwrap().value().unwrap().is_zero());
        }
        let idem = SuperAlgebra::from_sparse(GradedBasis::new(1, 0).unwrap(), [(0, 0, 0, int(1))]).unwrap();
        let t = build_power_table(&idem, &el(&[1]), 7).unwrap();
        for n in 1..=7 {
            assert_eq!(t.power(n).unwrap().value(), Some(&el(&[1])));
        }
    }

    #[test]
    fn rejects_small_max_n() {
        let z = SuperAlgebra::<Scalar>::zero(GradedBasis::new(1, 0).unwrap());
        assert!(build_power_table(&z, &el(&[1]), 1).is_err());
    }

    #[test]
    fn ambiguity_is_tracked_downstream() {
        // e0e0 = e1, e0e1 = e0, e1e0 = 0 (ungraded): y^3 splits disagree.
        let basis = GradedBasis::new(2, 0).unwrap();
        let alg = SuperAlgebra::from_sparse(basis, [(0, 0, 1, int(1)), (0, 1, 0, int(1))]).unwrap();
        let t = build_power_table(&alg, &el(&[1, 0]), 5).unwrap();
        assert_eq!(t.power(2).unwrap().value(), Some(&el(&[0, 1])));
        assert_eq!(t.first_ambiguity(), Some(3));
        let PowerEntry::Ambiguous(c3) = t.power(3).unwrap() else {
            panic!()
        };
        assert_eq!(c3.len(), 2);
        assert!(t.power(4).unwrap().is_ambiguous());
        assert!(t.products[&(1, 3)].is_ambiguous());
        assert!(t.render().contains("y^3 AMBIGUOUS"));
    }

    #[test]
    fn odd_power_associativity() {
        let a = two(&[(1, 1, 0, 3)]);
        let v = check_odd_power_associativity(&a, &el(&[0, 1]), 8).unwrap();
        assert!(v.passed);

        let pair = PoissonPair::new(two(&[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]), two(&[(1, 1, 0, 2)])).unwrap();
        let fused = fuse(&pair);
        assert!(check_super_poisson(&fused).holds);
        assert!(check_odd_power_associativity(&fused, &el(&[0, 1]), 6).unwrap().passed);

        assert!(matches!(
            check_odd_power_associativity(&two(&[(0, 0, 0, 2), (0, 1, 1, 1)]), &el(&[0, 1]), 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_odd_power_associativity(&a, &el(&[1, 0]), 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn remark_steps_on_sp24() {
        let a = two(&[(1, 1, 0, 1)]);
        let steps = verify_remark_steps(&a, &el(&[0, 1])).unwrap();
        assert!(steps.passed(), "{steps:?}");
        assert!(verify_remark_steps(&a, &el(&[0, 0])).unwrap().passed());
    }

    #[test]
    fn even_elements_of_sp22() {
        let a = two(&[(0, 0, 0, 2), (0, 1, 1, 2), (1, 0, 1, 2)]);
        assert!(check_even_power_associativity(&a, &el(&[1, 0]), 10).unwrap().passed);
    }

    proptest! {
        #[test]
        fn powers_scale_homogeneously(d in -3i64..=3, lambda in -3i64..=3) {
            let a = two(&[(1, 1, 0, d), (0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
            let y = el(&[1, 1]);
            let t = build_power_table(&a, &y, 6).unwrap();
            let scaled = build_power_table(&a, &y.scale(&int(lambda)), 6).unwrap();
            let expected = scale_table(&t, &int(lambda));
            for (n, entry) in &scaled.powers {
                let mut got = entry.candidates().to_vec();
                let mut want = expected[n].clone();
                got.sort_by_key(|e| e.to_string());
                want.sort_by_key(|e| e.to_string());
                want.dedup();
                prop_assert_eq!(got, want);
            }
        }
    }
}
