//! JSON descriptors for a grading group, an optional commutation factor, and
//! an algebra given by structure constants.
//!
//! ```json
//! {
//!   "group": {"free_rank": 0, "torsion": [2]},
//!   "factor": {"sigma": [[0]], "omega": [[0]], "q": "1"},
//!   "basis": [{"label": "1", "grade": [0]}, {"label": "u", "grade": [1]}],
//!   "unit": [{"basis": 0, "coeff": "1"}],
//!   "products": [{"left": 1, "right": 1, "result": [{"basis": 0, "coeff": "1"}]}]
//! }
//! ```
//!
//! Products that are not listed are zero. Scalars use the scalar grammar.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BasisElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::factor::CommutationFactor;
use crate::group::{GradingGroup, GroupElement};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Largest basis accepted from a descriptor. Validation is cubic in it.
pub const MAX_DESCRIPTOR_DIM: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("at `{path}` (line {line}, column {column}): {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("descriptor has {got} basis elements, more than the limit {limit}")]
    TooLarge { got: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDescriptor {
    pub sigma: Vec<Vec<i64>>,
    pub omega: Vec<Vec<i64>>,
    pub q: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDescriptor {
    pub label: String,
    pub grade: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDescriptor {
    pub basis: usize,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDescriptor {
    pub left: usize,
    pub right: usize,
    pub result: Vec<TermDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorDescriptor>,
    pub basis: Vec<BasisDescriptor>,
    pub unit: Vec<TermDescriptor>,
    pub products: Vec<ProductDescriptor>,
}

/// A validated descriptor.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: Option<String>,
    pub algebra: GradedAlgebra,
    pub factor: Option<CommutationFactor>,
}

fn terms_to_vec(terms: &[TermDescriptor]) -> SparseVec {
    let mut v = SparseVec::new();
    for t in terms {
        v.add_term(t.basis, t.coeff.clone());
    }
    v
}

fn vec_to_terms(v: &SparseVec) -> Vec<TermDescriptor> {
    v.iter()
        .map(|(&basis, c)| TermDescriptor {
            basis,
            coeff: c.clone(),
        })
        .collect()
}

impl AlgebraDescriptor {
    /// Parses JSON, reporting the path and position of the first error.
    pub fn from_json(text: &str) -> Result<Self, DescriptorError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let parsed: Self = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            DescriptorError::Syntax {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })?;
        de.end().map_err(|e| DescriptorError::Syntax {
            path: ".".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if parsed.basis.len() > MAX_DESCRIPTOR_DIM {
            return Err(DescriptorError::TooLarge {
                got: parsed.basis.len(),
                limit: MAX_DESCRIPTOR_DIM,
            });
        }
        Ok(parsed)
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("descriptors always serialize");
        s.push('\n');
        s
    }

    /// Validates the group, the factor and the algebra.
    pub fn build(&self) -> Result<Loaded> {
        if self.basis.len() > MAX_DESCRIPTOR_DIM {
            return Err(Error::CapExceeded {
                what: "descriptor dimension",
                cap: MAX_DESCRIPTOR_DIM as u64,
            });
        }
        let group: Arc<GradingGroup> = GradingGroup::new(self.group.free_rank, self.group.torsion.clone())?;
        let factor = self
            .factor
            .as_ref()
            .map(|f| CommutationFactor::standard(&group, f.sigma.clone(), f.omega.clone(), f.q.clone()))
            .transpose()?;
        let basis = self
            .basis
            .iter()
            .map(|b| {
                Ok(BasisElement {
                    label: b.label.clone(),
                    grade: GroupElement::new(&group, b.grade.clone())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let products = self
            .products
            .iter()
            .map(|p| (p.left, p.right, terms_to_vec(&p.result)))
            .collect();
        let algebra = GradedAlgebra::new(&group, basis, products, terms_to_vec(&self.unit))?;
        Ok(Loaded {
            name: self.name.clone(),
            algebra,
            factor,
        })
    }

    /// Canonical descriptor of an algebra: zero products omitted, products
    /// ordered by `(left, right)`.
    pub fn from_algebra(algebra: &GradedAlgebra, factor: Option<&CommutationFactor>, name: Option<String>) -> Self {
        let group = algebra.group();
        let dim = algebra.dim();
        let mut products = Vec::new();
        for left in 0..dim {
            for right in 0..dim {
                let v = algebra.basis_product(left, right);
                if !v.is_zero() {
                    products.push(ProductDescriptor {
                        left,
                        right,
                        result: vec_to_terms(v),
                    });
                }
            }
        }
        AlgebraDescriptor {
            name,
            group: GroupDescriptor {
                free_rank: group.free_rank(),
                torsion: group.torsion().to_vec(),
            },
            factor: factor.map(|f| FactorDescriptor {
                sigma: f.sigma().to_vec(),
                omega: f.omega().to_vec(),
                q: f.q().clone(),
            }),
            basis: algebra
                .basis()
                .iter()
                .map(|b| BasisDescriptor {
                    label: b.label.clone(),
                    grade: b.grade.coords().to_vec(),
                })
                .collect(),
            unit: vec_to_terms(algebra.unit_vector()),
            products,
        }
    }
}
