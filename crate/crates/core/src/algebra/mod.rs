//! Finite-dimensional algebras graded by a [`GradingGroup`], given by exact
//! structure constants on a homogeneous basis.
//!
//! Every algebra carries the canonical `kG`-coaction `ρ(a) = a ⊗ g` for `a`
//! of grade `g`, which makes it a `kG`-comodule algebra exactly when the
//! product is homogeneous.

mod builders;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::Bicharacter;
use crate::group::{enumerate, GradingGroup, GroupElement, GroupError};
use crate::hopf::TensorElement;
use crate::linalg::{format_sparse, unit_vector, Echelon, LinearMap, SparseVec};
use crate::report::{AxiomReport, Tally};
use crate::scalar::Scalar;

pub use builders::{
    b_symmetric_dimension, build_b_symmetric_truncation, build_group_algebra, build_truncated_poly,
    build_twisted_group_algebra, MAX_BUILDER_DIM,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub grade: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    group: Arc<GradingGroup>,
    basis: Vec<BasisElement>,
    /// Product of basis `i` and basis `j` at `i * dim + j`.
    table: Vec<SparseVec>,
    unit: SparseVec,
}

/// An element of a [`GradedAlgebra`] in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    dim: usize,
    coords: SparseVec,
}

impl AlgebraElement {
    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        AlgebraElement {
            dim: self.dim,
            coords: self.coords.scaled(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut coords = self.coords.clone();
        coords.add_scaled(&Scalar::one(), &other.coords);
        Ok(AlgebraElement {
            dim: self.dim,
            coords,
        })
    }
}

impl GradedAlgebra {
    /// Builds and validates an algebra. Products not listed are zero.
    ///
    /// Rejects non-homogeneous products, a unit outside grade `e` or that
    /// is not two-sided, and non-associative tables.
    pub fn new(
        group: &Arc<GradingGroup>,
        basis: Vec<BasisElement>,
        products: Vec<(usize, usize, SparseVec)>,
        unit: SparseVec,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("basis must be nonempty".into()));
        }
        for b in &basis {
            if b.grade.group() != group {
                return Err(GroupError::Mismatch.into());
            }
        }
        let in_range = |v: &SparseVec| v.keys().all(|&k| k < dim);
        let mut table = vec![SparseVec::new(); dim * dim];
        let mut seen = BTreeSet::new();
        for (i, j, v) in products {
            if i >= dim || j >= dim || !in_range(&v) {
                return Err(Error::InvalidAlgebra(format!(
                    "product ({i}, {j}) refers to a basis index outside 0..{dim}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidAlgebra(format!(
                    "product ({i}, {j}) is listed twice"
                )));
            }
            table[i * dim + j] = v;
        }
        if !in_range(&unit) || unit.is_zero() {
            return Err(Error::InvalidAlgebra(
                "unit must be a nonzero vector over the basis".into(),
            ));
        }
        let algebra = GradedAlgebra {
            group: Arc::clone(group),
            basis,
            table,
            unit,
        };
        let report = algebra.structure_report();
        if let Some(fail) = report.failures().next() {
            return Err(Error::InvalidAlgebra(format!(
                "{} fails at {}",
                fail.axiom,
                fail.witness.as_deref().unwrap_or("?")
            )));
        }
        Ok(algebra)
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn grade(&self, i: usize) -> &GroupElement {
        &self.basis[i].grade
    }

    /// Structure constants of `basis_i * basis_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn unit_vector(&self) -> &SparseVec {
        &self.unit
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement {
            dim: self.dim(),
            coords: self.unit.clone(),
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement {
            dim: self.dim(),
            coords: unit_vector(i),
        }
    }

    pub fn element(&self, coords: SparseVec) -> Result<AlgebraElement> {
        if let Some(&k) = coords.keys().find(|&&k| k >= self.dim()) {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {}",
                self.dim()
            )));
        }
        Ok(AlgebraElement {
            dim: self.dim(),
            coords,
        })
    }

    fn check_element(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim != self.dim() {
            return Err(Error::AlgebraMismatch {
                expected: self.dim(),
                got: x.dim,
            });
        }
        Ok(())
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x.iter() {
            for (&j, b) in y.iter() {
                out.add_scaled(&(a * b), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(AlgebraElement {
            dim: self.dim(),
            coords: self.multiply_vec(&x.coords, &y.coords),
        })
    }

    /// `ρ(x) = sum_g x_g ⊗ g`, as a tensor keyed by (basis index, grade).
    pub fn coaction(&self, x: &AlgebraElement) -> Result<TensorElement<(usize, GroupElement)>> {
        self.check_element(x)?;
        Ok(self.coaction_vec(&x.coords))
    }

    pub(crate) fn coaction_vec(&self, x: &SparseVec) -> TensorElement<(usize, GroupElement)> {
        x.iter()
            .map(|(&i, c)| ((i, self.grade(i).clone()), c.clone()))
            .collect()
    }

    /// Basis indices grouped by grade.
    pub fn components(&self) -> BTreeMap<GroupElement, Vec<usize>> {
        let mut out: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            out.entry(b.grade.clone()).or_default().push(i);
        }
        out
    }

    /// Basis indices of `A_g`.
    pub fn component(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade(i) == g).collect()
    }

    /// Basis indices of the identity component `A_e`.
    pub fn identity_component(&self) -> Vec<usize> {
        self.component(&GroupElement::identity(&self.group))
    }

    /// Human-readable vector, `c*[label] + ...`.
    pub fn format_vec(&self, v: &SparseVec) -> String {
        format_sparse(v, |i| self.label(i).to_string())
    }

    /// Re-verifies the structural invariants: homogeneity of products, unit
    /// in grade `e` and two-sided, associativity on all basis triples.
    pub fn structure_report(&self) -> AxiomReport {
        let dim = self.dim();
        let e = GroupElement::identity(&self.group);
        let mut homogeneity = Tally::new("homogeneity");
        for i in 0..dim {
            for j in 0..dim {
                let ok = match self.grade(i).compose(self.grade(j)) {
                    Ok(gh) => self.basis_product(i, j).keys().all(|&k| *self.grade(k) == gh),
                    Err(_) => false,
                };
                homogeneity.record(ok, || format!("({}, {})", self.label(i), self.label(j)));
            }
        }

        let mut unit = Tally::new("unit");
        unit.record(self.unit.keys().all(|&k| *self.grade(k) == e), || {
            format!("unit {} is not in grade e", self.format_vec(&self.unit))
        });
        for i in 0..dim {
            let b = unit_vector(i);
            let ok = self.multiply_vec(&self.unit, &b) == b && self.multiply_vec(&b, &self.unit) == b;
            unit.record(ok, || format!("1 * {0} or {0} * 1 differs from {0}", self.label(i)));
        }

        let mut assoc = Tally::new("associativity");
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let lhs = self.multiply_vec(ij, &unit_vector(k));
                    let rhs = self.multiply_vec(&unit_vector(i), self.basis_product(j, k));
                    assoc.record(lhs == rhs, || {
                        format!("({}, {}, {})", self.label(i), self.label(j), self.label(k))
                    });
                }
            }
        }
        AxiomReport {
            checks: vec![homogeneity.finish(), unit.finish(), assoc.finish()],
        }
    }

    /// The solution space of `ρ(a) = a ⊗ e`, computed as the kernel of
    /// `a -> ρ(a) - a ⊗ e` by exact elimination.
    pub fn coinvariants(&self) -> Vec<SparseVec> {
        let e = GroupElement::identity(&self.group);
        let mut grades: BTreeSet<GroupElement> = self.basis.iter().map(|b| b.grade.clone()).collect();
        grades.insert(e.clone());
        let grade_index: BTreeMap<GroupElement, usize> =
            grades.into_iter().enumerate().map(|(i, g)| (g, i)).collect();
        let m = grade_index.len();
        let columns = (0..self.dim())
            .map(|i| {
                let b = unit_vector(i);
                let mut t = self.coaction_vec(&b);
                t.add_term((i, e.clone()), -Scalar::one());
                t.map_keys(|(k, g)| k * m + grade_index[g])
            })
            .collect();
        let map = LinearMap::new(self.dim() * m, columns).expect("indices in range");
        map.kernel()
    }

    /// Whether the coinvariants span exactly the identity component.
    pub fn coinvariants_equal_identity_component(&self) -> bool {
        let component: Vec<SparseVec> = self.identity_component().into_iter().map(unit_vector).collect();
        Echelon::same_span(&self.coinvariants(), &component)
    }

    /// Checks `x y = b(g, h) y x` for every pair of homogeneous basis
    /// elements `x` of grade `g` and `y` of grade `h`; by bilinearity this
    /// decides quantum commutativity for all elements.
    pub fn check_quantum_commutativity<B: Bicharacter>(&self, b: &B) -> Result<QuantumCommutativityVerdict> {
        if b.group() != &self.group {
            return Err(GroupError::Mismatch.into());
        }
        let dim = self.dim();
        let mut witness = None;
        let mut pairs = 0;
        'outer: for i in 0..dim {
            for j in 0..dim {
                pairs += 1;
                let factor = b.value(self.grade(i), self.grade(j))?;
                let mut residual = self.basis_product(i, j).clone();
                residual.add_scaled(&-factor.clone(), self.basis_product(j, i));
                if !residual.is_zero() {
                    witness = Some(QuantumCommutativityWitness {
                        left: self.label(i).to_string(),
                        right: self.label(j).to_string(),
                        factor,
                        residual: self.format_vec(&residual),
                    });
                    break 'outer;
                }
            }
        }
        Ok(QuantumCommutativityVerdict {
            holds: witness.is_none(),
            pairs_checked: pairs,
            witness,
        })
    }

    /// Decides `A_g A_h = A_{gh}` for all pairs of a finite grading group by
    /// comparing exact spans.
    pub fn check_strong_grading(&self) -> Result<StrongGradingVerdict> {
        if !self.group.is_finite() {
            return Err(Error::InfiniteGrading);
        }
        let elements = enumerate(&self.group)?;
        let components = self.components();
        let empty = Vec::new();
        let comp = |g: &GroupElement| components.get(g).unwrap_or(&empty);
        let component_dims = elements
            .iter()
            .map(|g| ComponentDim {
                grade: g.clone(),
                dim: comp(g).len(),
            })
            .collect();
        let mut pairs = 0;
        for g in &elements {
            for h in &elements {
                pairs += 1;
                let gh = g.compose(h)?;
                let mut span = Echelon::new();
                for &x in comp(g) {
                    for &y in comp(h) {
                        span.insert(self.basis_product(x, y).clone());
                    }
                }
                let target = comp(&gh);
                if let Some(&missing) = target.iter().find(|&&k| !span.contains(&unit_vector(k))) {
                    return Ok(StrongGradingVerdict {
                        strong: false,
                        pairs_checked: pairs,
                        component_dims,
                        witness: Some(StrongGradingWitness {
                            left: g.clone(),
                            right: h.clone(),
                            product_grade: gh,
                            span_dim: span.rank(),
                            component_dim: target.len(),
                            missing: self.label(missing).to_string(),
                        }),
                    });
                }
                if target.is_empty() && span.rank() > 0 {
                    return Err(Error::Internal("product outside its grade".into()));
                }
            }
        }
        Ok(StrongGradingVerdict {
            strong: true,
            pairs_checked: pairs,
            component_dims,
            witness: None,
        })
    }

    /// For infinite grading groups: compares `A_g A_h` with `A_{gh}` over the
    /// grades that occur in the basis. This is evidence, never a verdict.
    pub fn strong_grading_window(&self) -> Result<WindowEvidence> {
        let components = self.components();
        let mut checked = 0;
        let mut equal = 0;
        let mut first_gap = None;
        for (g, xs) in &components {
            for (h, ys) in &components {
                let gh = g.compose(h)?;
                let Some(target) = components.get(&gh) else { continue };
                checked += 1;
                let mut span = Echelon::new();
                for &x in xs {
                    for &y in ys {
                        span.insert(self.basis_product(x, y).clone());
                    }
                }
                if span.rank() == target.len() {
                    equal += 1;
                } else if first_gap.is_none() {
                    first_gap = Some((g.clone(), h.clone()));
                }
            }
        }
        Ok(WindowEvidence {
            pairs_checked: checked,
            pairs_equal: equal,
            first_gap,
            note: "window evidence over the grades present in the basis; not a verdict",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumCommutativityWitness {
    pub left: String,
    pub right: String,
    pub factor: Scalar,
    /// `left * right - factor * right * left`.
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumCommutativityVerdict {
    pub holds: bool,
    pub pairs_checked: usize,
    pub witness: Option<QuantumCommutativityWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDim {
    pub grade: GroupElement,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongGradingWitness {
    pub left: GroupElement,
    pub right: GroupElement,
    pub product_grade: GroupElement,
    pub span_dim: usize,
    pub component_dim: usize,
    /// A basis vector of `A_{gh}` outside `A_g A_h`.
    pub missing: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongGradingVerdict {
    pub strong: bool,
    pub pairs_checked: usize,
    pub component_dims: Vec<ComponentDim>,
    pub witness: Option<StrongGradingWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowEvidence {
    pub pairs_checked: usize,
    pub pairs_equal: usize,
    pub first_gap: Option<(GroupElement, GroupElement)>,
    pub note: &'static str,
}

#[cfg(test)]
mod tests;
