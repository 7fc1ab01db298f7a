//! JSON files holding one multiplication table (`products`) or a pair of
//! tables (`dot` and `bracket`). Coefficients are rational strings.
//!
//! ```json
//! {"dim_even": 1, "dim_odd": 1,
//!  "products": [{"left": 1, "right": 1, "result": [{"basis": 0, "coeff": "1"}]}]}
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{GradedBasis, SuperAlgebra};
use crate::presentation::PoissonPair;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub basis: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductRecord {
    pub left: usize,
    pub right: usize,
    pub result: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim_even: usize,
    pub dim_odd: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<Vec<ProductRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<ProductRecord>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Algebra(SuperAlgebra),
    Pair(PoissonPair),
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

pub fn parse_algebra_file(text: &str) -> Result<Parsed> {
    let file: AlgebraFile = serde_json::from_str(text)
        .map_err(|e| parse_error(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    file.to_parsed()
}

impl AlgebraFile {
    pub fn to_parsed(&self) -> Result<Parsed> {
        let basis =
            GradedBasis::new(self.dim_even, self.dim_odd).map_err(|e| parse_error("dim_even", e.to_string()))?;
        match (&self.products, &self.dot, &self.bracket) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(parse_error(
                "products",
                "a file holds either `products` or `dot` and `bracket`, not both",
            )),
            (None, Some(dot), Some(bracket)) => {
                let dot = table(basis, dot, "dot")?;
                let bracket = table(basis, bracket, "bracket")?;
                Ok(Parsed::Pair(PoissonPair::new(dot, bracket)?))
            }
            (None, Some(_), None) => Err(parse_error("bracket", "missing `bracket` table")),
            (None, None, Some(_)) => Err(parse_error("dot", "missing `dot` table")),
            (products, None, None) => Ok(Parsed::Algebra(table(
                basis,
                products.as_deref().unwrap_or_default(),
                "products",
            )?)),
        }
    }

    pub fn from_algebra(alg: &SuperAlgebra) -> Self {
        let basis = alg.basis();
        AlgebraFile {
            dim_even: basis.dim_even(),
            dim_odd: basis.dim_odd(),
            products: Some(records(alg)),
            dot: None,
            bracket: None,
        }
    }

    pub fn from_pair(pair: &PoissonPair) -> Self {
        let basis = pair.dot().basis();
        AlgebraFile {
            dim_even: basis.dim_even(),
            dim_odd: basis.dim_odd(),
            products: None,
            dot: Some(records(pair.dot())),
            bracket: Some(records(pair.bracket())),
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

fn table(basis: GradedBasis, recs: &[ProductRecord], key: &str) -> Result<SuperAlgebra> {
    let dim = basis.dim();
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for (n, rec) in recs.iter().enumerate() {
        let at = format!("{key}[{n}]");
        for (field, idx) in [("left", rec.left), ("right", rec.right)] {
            if idx >= dim {
                return Err(parse_error(
                    format!("{at}.{field}"),
                    format!("basis index {idx} out of range for dimension {dim}"),
                ));
            }
        }
        if !seen.insert((rec.left, rec.right)) {
            return Err(parse_error(
                at,
                format!("duplicate product e{} e{}", rec.left, rec.right),
            ));
        }
        let mut targets = BTreeSet::new();
        for (m, term) in rec.result.iter().enumerate() {
            let at = format!("{at}.result[{m}]");
            if term.basis >= dim {
                return Err(parse_error(
                    format!("{at}.basis"),
                    format!("basis index {} out of range for dimension {dim}", term.basis),
                ));
            }
            if !targets.insert(term.basis) {
                return Err(parse_error(
                    format!("{at}.basis"),
                    format!("duplicate component e{}", term.basis),
                ));
            }
            let coeff: Scalar = term.coeff.parse().map_err(|e| match e {
                Error::Parse { message, .. } => parse_error(format!("{at}.coeff"), message),
                other => other,
            })?;
            if coeff.is_zero() {
                continue;
            }
            if basis.degree(rec.left) + basis.degree(rec.right) != basis.degree(term.basis) {
                return Err(parse_error(
                    format!("{at}.basis"),
                    format!(
                        "grading violation: e{} e{} cannot have a component on e{} of degree {}",
                        rec.left,
                        rec.right,
                        term.basis,
                        basis.degree(term.basis)
                    ),
                ));
            }
            entries.push((rec.left, rec.right, term.basis, coeff));
        }
    }
    SuperAlgebra::from_sparse(basis, entries)
}

fn records(alg: &SuperAlgebra) -> Vec<ProductRecord> {
    let dim = alg.dim();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let result: Vec<TermRecord> = (0..dim)
                .filter(|&k| !alg.constant(i, j, k).is_zero())
                .map(|k| TermRecord {
                    basis: k,
                    coeff: alg.constant(i, j, k).to_string(),
                })
                .collect();
            if !result.is_empty() {
                out.push(ProductRecord {
                    left: i,
                    right: j,
                    result,
                });
            }
        }
    }
    out
}

pub fn algebra_to_json(alg: &SuperAlgebra) -> String {
    AlgebraFile::from_algebra(alg).to_json()
}

pub fn pair_to_json(pair: &PoissonPair) -> String {
    AlgebraFile::from_pair(pair).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn location(text: &str) -> String {
        match parse_algebra_file(text) {
            Err(Error::Parse { location, .. }) => location,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reads_sp24() {
        let text = r#"{"dim_even":1,"dim_odd":1,"products":[{"left":1,"right":1,"result":[{"basis":0,"coeff":"1"}]}]}"#;
        let Parsed::Algebra(a) = parse_algebra_file(text).unwrap() else {
            panic!()
        };
        assert_eq!(a.nonzero_constants(), vec![(1, 1, 0, Scalar::integer(1))]);
    }

    #[test]
    fn empty_products_give_zero_algebra() {
        let Parsed::Algebra(a) = parse_algebra_file(r#"{"dim_even":2,"dim_odd":1,"products":[]}"#).unwrap() else {
            panic!()
        };
        assert!(a.is_zero_algebra());
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn positioned_errors() {
        let prefix = r#"{"dim_even":1,"dim_odd":1,"products":[{"left":1,"right":1,"result":[{"basis":0,"coeff":"#;
        assert_eq!(
            location(&format!(r#"{prefix}"1/0"}}]}}]}}"#)),
            "products[0].result[0].coeff"
        );
        assert_eq!(
            location(&format!(r#"{prefix}"1.5"}}]}}]}}"#)),
            "products[0].result[0].coeff"
        );
        assert_eq!(
            location(r#"{"dim_even":1,"dim_odd":1,"products":[{"left":2,"right":1,"result":[]}]}"#),
            "products[0].left"
        );
        assert_eq!(
            location(
                r#"{"dim_even":1,"dim_odd":1,"products":[{"left":0,"right":1,"result":[{"basis":0,"coeff":"1"}]}]}"#
            ),
            "products[0].result[0].basis"
        );
        assert_eq!(
            location(
                r#"{"dim_even":1,"dim_odd":0,"products":[{"left":0,"right":0,"result":[]},{"left":0,"right":0,"result":[]}]}"#
            ),
            "products[1]"
        );
        assert!(location("{\n  \"dim_even\": 1,\n  oops\n}").starts_with("line 3"));
        assert_eq!(location(r#"{"dim_even":1,"dim_odd":0,"dot":[]}"#), "bracket");
    }

    #[test]
    fn zero_coefficient_of_wrong_degree_is_ignored() {
        let text = r#"{"dim_even":1,"dim_odd":1,"products":[{"left":0,"right":1,"result":[{"basis":0,"coeff":"0"}]}]}"#;
        let Parsed::Algebra(a) = parse_algebra_file(text).unwrap() else {
            panic!()
        };
        assert!(a.is_zero_algebra());
    }

    #[test]
    fn round_trips() {
        let basis = GradedBasis::new(1, 1).unwrap();
        let a = SuperAlgebra::from_sparse(
            basis,
            [
                (0, 0, 0, Scalar::ratio(2, 3).unwrap()),
                (0, 1, 1, Scalar::integer(-1)),
                (1, 1, 0, Scalar::integer(5)),
            ],
        )
        .unwrap();
        let text = algebra_to_json(&a);
        assert_eq!(parse_algebra_file(&text).unwrap(), Parsed::Algebra(a.clone()));
        assert_eq!(algebra_to_json(&a), text);
        assert!(text.contains("\"2/3\""));

        let pair = crate::presentation::split(&a);
        let text = pair_to_json(&pair);
        assert_eq!(parse_algebra_file(&text).unwrap(), Parsed::Pair(pair));
    }
}
