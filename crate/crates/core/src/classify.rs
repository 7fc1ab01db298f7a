//! Dimension (1|1) classification.
//!
//! The general grading-compatible table is
//! `e0e0 = a e0, e0e1 = b e1, e1e0 = c e1, e1e1 = d e0`. Constraints are
//! derived by evaluating the fused identity with polynomial structure
//! constants, then compared with a reference system and with named families
//! on a finite rational grid.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graded::{GradedBasis, SuperAlgebra};
use crate::identities::check_super_poisson;
use crate::poly::Poly;
use crate::scalar::{Ring, Scalar};

pub const PARAMETERS: [&str; 4] = ["a", "b", "c", "d"];

/// A parameter point `(a, b, c, d)`.
pub type Point = [Scalar; 4];

fn var(name: &str) -> Poly {
    Poly::var(name)
}

fn int(n: i64) -> Poly {
    Poly::from_int(n)
}

/// The (1|1) table with polynomial entries `a, b, c, d`.
pub fn param_algebra() -> SuperAlgebra<Poly> {
    table_from(&[var("a"), var("b"), var("c"), var("d")])
}

fn table_from<R: Ring>(v: &[R; 4]) -> SuperAlgebra<R> {
    let basis = GradedBasis::new(1, 1).expect("nonempty basis");
    SuperAlgebra::from_sparse(
        basis,
        [
            (0, 0, 0, v[0].clone()),
            (0, 1, 1, v[1].clone()),
            (1, 0, 1, v[2].clone()),
            (1, 1, 0, v[3].clone()),
        ],
    )
    .expect("the (1|1) shape is grading compatible")
}

/// The concrete algebra at a parameter point.
pub fn algebra_at(p: &Point) -> SuperAlgebra {
    table_from(p)
}

fn assignment(p: &Point) -> BTreeMap<String, Scalar> {
    PARAMETERS
        .iter()
        .zip(p)
        .map(|(n, x)| (n.to_string(), x.clone()))
        .collect()
}

/// A union of conjunctive branches; a point lies in the vanishing locus when
/// every polynomial of some branch vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    branches: Vec<BTreeSet<Poly>>,
}

impl ConstraintSystem {
    /// A single branch. Zero polynomials are dropped and each polynomial is
    /// scaled to be monic, which merges duplicates up to a constant factor.
    pub fn conjunction(polys: impl IntoIterator<Item = Poly>) -> Self {
        let branch = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        ConstraintSystem { branches: vec![branch] }
    }

    pub fn union(systems: impl IntoIterator<Item = ConstraintSystem>) -> Self {
        ConstraintSystem {
            branches: systems.into_iter().flat_map(|s| s.branches).collect(),
        }
    }

    pub fn branches(&self) -> &[BTreeSet<Poly>] {
        &self.branches
    }

    /// All polynomials, across branches.
    pub fn polynomials(&self) -> impl Iterator<Item = &Poly> {
        self.branches.iter().flatten()
    }

    pub fn vanishes_at(&self, p: &Point) -> bool {
        let at = assignment(p);
        self.branches.iter().any(|branch| {
            branch
                .iter()
                .all(|poly| poly.eval(&at).expect("all parameters assigned").is_zero())
        })
    }

    /// Whether some branch vanishes identically after substituting the
    /// family's parametrization.
    pub fn contains_family(&self, family: &Family) -> bool {
        self.branches
            .iter()
            .any(|branch| branch.iter().all(|poly| family.substitute_into(poly).is_zero()))
    }

    pub fn locus(&self, grid: &[Scalar]) -> BTreeSet<Point> {
        grid_points(grid).filter(|p| self.vanishes_at(p)).collect()
    }
}

fn grid_points(grid: &[Scalar]) -> impl Iterator<Item = Point> + '_ {
    grid.iter().flat_map(move |a| {
        grid.iter().flat_map(move |b| {
            grid.iter()
                .flat_map(move |c| grid.iter().map(move |d| [a.clone(), b.clone(), c.clone(), d.clone()]))
        })
    })
}

/// Integer grid `{min, ..., max}`.
pub fn integer_grid(min: i64, max: i64) -> Vec<Scalar> {
    (min..=max).map(Scalar::integer).collect()
}

/// Collects the coefficient polynomials of the fused-identity residual on
/// all 8 basis triples of the parametrized table.
pub fn derive_constraints() -> ConstraintSystem {
    let alg = param_algebra();
    let report = check_super_poisson(&alg);
    // The report caps witnesses; 8 triples fit under the cap.
    debug_assert_eq!(report.failure_count, report.witnesses.len());
    ConstraintSystem::conjunction(
        report
            .witnesses
            .into_iter()
            .flat_map(|w| w.residual.coefficients().to_vec()),
    )
}

/// `{d = 0, 3(a-b)b + ab - 2bc + c^2 = 0, 3(a-c)c + ab - 2bc + c^2 = 0}` or
/// `{a = 0, a = b = c}`.
pub fn reference_system() -> ConstraintSystem {
    let (a, b, c, d) = (var("a"), var("b"), var("c"), var("d"));
    let tail = a.times(&b).minus(&int(2).times(&b).times(&c)).plus(&c.times(&c));
    let first = ConstraintSystem::conjunction([
        d,
        int(3).times(&a.minus(&b)).times(&b).plus(&tail),
        int(3).times(&a.minus(&c)).times(&c).plus(&tail),
    ]);
    let second = ConstraintSystem::conjunction([a.clone(), a.minus(&b), a.minus(&c)]);
    ConstraintSystem::union([first, second])
}

/// A one-parameter family of (1|1) tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub parameter: &'static str,
    /// Images of `a, b, c, d` as polynomials in `parameter`.
    images: BTreeMap<String, Poly>,
}

impl Family {
    fn new(name: &'static str, parameter: &'static str, images: [Poly; 4]) -> Self {
        Family {
            name,
            parameter,
            images: PARAMETERS.iter().map(|n| n.to_string()).zip(images).collect(),
        }
    }

    pub fn image(&self, var: &str) -> &Poly {
        &self.images[var]
    }

    pub fn substitute_into(&self, p: &Poly) -> Poly {
        p.substitute(&self.images)
    }

    pub fn specialize(&self, t: &Scalar) -> Point {
        let at = BTreeMap::from([(self.parameter.to_string(), t.clone())]);
        PARAMETERS.map(|n| self.images[n].eval(&at).expect("family images use only its parameter"))
    }

    pub fn algebra(&self, t: &Scalar) -> SuperAlgebra {
        algebra_at(&self.specialize(t))
    }

    /// Nonzero products, e.g. `e0e0 = a e0, e0e1 = a e1`.
    pub fn describe(&self) -> String {
        let products = ["e0e0", "e0e1", "e1e0", "e1e1"];
        let targets = ["e0", "e1", "e1", "e0"];
        let parts: Vec<String> = PARAMETERS
            .iter()
            .enumerate()
            .filter(|(_, n)| !self.images[**n].is_zero())
            .map(|(i, n)| {
                let img = &self.images[*n];
                let coeff = if img.num_terms() > 1 {
                    format!("({img})")
                } else {
                    img.to_string()
                };
                format!("{} = {}*{}", products[i], coeff, targets[i])
            })
            .collect();
        parts.join(", ")
    }
}

/// The four families on the grading-corrected table. The first two are
/// usually printed with `e0e0 = a e1`, which the grading forbids; here
/// `e0e0 = a e0`.
pub fn solve_families() -> Vec<Family> {
    let zero = Poly::zero;
    vec![
        Family::new("SP_{2,1}", "a", [var("a"), zero(), zero(), zero()]),
        Family::new("SP_{2,2}", "a", [var("a"), var("a"), var("a"), zero()]),
        Family::new("SP_{2,3}", "b", [zero(), var("b"), var("b").negate(), zero()]),
        Family::new("SP_{2,4}", "d", [zero(), zero(), zero(), var("d")]),
    ]
}

/// Grid points reached by some family with parameter in `grid`.
pub fn family_locus(families: &[Family], grid: &[Scalar]) -> BTreeSet<Point> {
    let on_grid = |p: &Point| p.iter().all(|x| grid.contains(x));
    families
        .iter()
        .flat_map(|f| grid.iter().map(move |t| f.specialize(t)))
        .filter(on_grid)
        .collect()
}

/// Brute force: every grid point whose concrete algebra passes the fused
/// identity check.
pub fn grid_oracle(grid: &[Scalar]) -> BTreeSet<Point> {
    grid_points(grid)
        .filter(|p| check_super_poisson(&algebra_at(p)).holds)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusDifference {
    pub point: Point,
    pub in_left: bool,
    pub in_right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyContainment {
    pub family: &'static str,
    pub in_left: bool,
    pub in_right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub equivalent: bool,
    pub grid_size: usize,
    pub differences: Vec<LocusDifference>,
    pub families: Vec<FamilyContainment>,
}

impl Comparison {
    pub fn families_contained(&self) -> bool {
        self.families.iter().all(|f| f.in_left && f.in_right)
    }
}

fn compare_loci(left: &BTreeSet<Point>, right: &BTreeSet<Point>) -> Vec<LocusDifference> {
    left.symmetric_difference(right)
        .map(|p| LocusDifference {
            point: p.clone(),
            in_left: left.contains(p),
            in_right: right.contains(p),
        })
        .collect()
}

/// Compares vanishing loci on `grid^4` and checks symbolic containment of
/// every family in both systems.
pub fn compare_systems(left: &ConstraintSystem, right: &ConstraintSystem, grid: &[Scalar]) -> Comparison {
    let differences = compare_loci(&left.locus(grid), &right.locus(grid));
    Comparison {
        equivalent: differences.is_empty(),
        grid_size: grid.len().pow(4),
        differences,
        families: solve_families()
            .iter()
            .map(|f| FamilyContainment {
                family: f.name,
                in_left: left.contains_family(f),
                in_right: right.contains_family(f),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySummary {
    pub name: &'static str,
    pub parameter: &'static str,
    pub table: String,
    pub satisfies_derived: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub grid: Vec<Scalar>,
    pub derived: Vec<String>,
    pub families: Vec<FamilySummary>,
    pub solutions: usize,
    pub derived_vs_reference: Comparison,
    /// Points solving the derived system that no family reaches, and the
    /// reverse.
    pub derived_vs_families: Vec<LocusDifference>,
    pub oracle_matches_derived: bool,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.derived_vs_reference.equivalent
            && self.derived_vs_reference.families_contained()
            && self.derived_vs_families.is_empty()
            && self.oracle_matches_derived
            && self.families.iter().all(|f| f.satisfies_derived)
    }
}

pub fn classify(grid: &[Scalar]) -> ClassificationReport {
    let derived = derive_constraints();
    let families = solve_families();
    let derived_locus = derived.locus(grid);
    let oracle = grid_oracle(grid);
    ClassificationReport {
        grid: grid.to_vec(),
        derived: derived.polynomials().map(|p| p.to_string()).collect(),
        families: families
            .iter()
            .map(|f| FamilySummary {
                name: f.name,
                parameter: f.parameter,
                table: f.describe(),
                satisfies_derived: derived.contains_family(f),
            })
            .collect(),
        solutions: oracle.len(),
        derived_vs_reference: compare_systems(&derived, &reference_system(), grid),
        derived_vs_families: compare_loci(&derived_locus, &family_locus(&families, grid)),
        oracle_matches_derived: oracle == derived_locus,
    }
}
