//! Relative tensor products over the identity component, the canonical map
//! `β(a ⊗_A b) = (a ⊗ 1)δ(b)`, its iterates, and the Galois verdicts.
//!
//! Throughout, `A` is the coinvariant subalgebra of the extension, which for
//! the canonical coaction is the grade-`e` component.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{GradedAlgebra, StrongGradingVerdict};
use crate::error::{Error, Result};
use crate::group::{enumerate, index_of};
use crate::scalar::Scalar;
use crate::linalg::{format_sparse, unit_vector, Echelon, LinearMap, SparseVec};

/// Default bound on `n` for [`beta_n`].
pub const DEFAULT_MAX_BETA_N: u32 = 4;

/// `L ⊗_A A^ext` for a right `A`-module `L` with a known basis: the
/// quotient of `L ⊗ A^ext` by `l·a ⊗ y - l ⊗ a·y`.
///
/// Ambient index of `l ⊗ y` is `l * dim(A^ext) + y`. The quotient basis is
/// the set of ambient indices that are not pivots of the relation span.
#[derive(Debug, Clone)]
pub struct RelativeTensorSpace {
    left_dim: usize,
    right_dim: usize,
    relations: Echelon,
    basis: Vec<usize>,
    position: HashMap<usize, usize>,
    labels: Vec<String>,
}

impl RelativeTensorSpace {
    /// `A^ext` itself, viewed as `k ⊗ A^ext` with no relations.
    fn first(algebra: &GradedAlgebra) -> Self {
        let dim = algebra.dim();
        RelativeTensorSpace {
            left_dim: 1,
            right_dim: dim,
            relations: Echelon::new(),
            basis: (0..dim).collect(),
            position: (0..dim).map(|i| (i, i)).collect(),
            labels: (0..dim).map(|i| algebra.label(i).to_string()).collect(),
        }
    }

    /// `self ⊗_A A^ext`.
    fn extend(&self, algebra: &GradedAlgebra, identity_component: &[usize]) -> Self {
        let dim = algebra.dim();
        let left_dim = self.dim();
        let mut relations = Echelon::new();
        for l in 0..left_dim {
            for &a in identity_component {
                let la = self.right_action(algebra, l, a);
                for y in 0..dim {
                    let mut r = la.map_keys(|&m| m * dim + y);
                    let ay = algebra.basis_product(a, y);
                    r.add_scaled(&-Scalar::one(), &ay.map_keys(|&k| l * dim + k));
                    relations.insert(r);
                }
            }
        }
        let basis: Vec<usize> = (0..left_dim * dim).filter(|&i| !relations.is_pivot(i)).collect();
        let position = basis.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let labels = basis
            .iter()
            .map(|&i| format!("{} ⊗ {}", self.labels[i / dim], algebra.label(i % dim)))
            .collect();
        RelativeTensorSpace {
            left_dim,
            right_dim: dim,
            relations,
            basis,
            position,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Spanning set of the relation subspace, in echelon form.
    pub fn relations(&self) -> impl Iterator<Item = &SparseVec> {
        self.relations.vectors()
    }

    /// `(left basis index, right basis index)` of quotient basis element `p`.
    pub fn representative(&self, p: usize) -> (usize, usize) {
        let i = self.basis[p];
        (i / self.right_dim, i % self.right_dim)
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.relations.reduce(v.clone()).map_keys(|i| self.position[i])
    }

    /// The projection as a matrix from the ambient space.
    pub fn projection(&self) -> LinearMap {
        let columns = (0..self.ambient_dim())
            .map(|i| self.project(&unit_vector(i)))
            .collect();
        LinearMap::new(self.dim(), columns).expect("positions are in range")
    }

    /// `class(t ⊗ y) · a = class(t ⊗ y a)`, in quotient coordinates.
    fn right_action(&self, algebra: &GradedAlgebra, p: usize, a: usize) -> SparseVec {
        let (s, j) = self.representative(p);
        let ya = algebra.basis_product(j, a);
        self.project(&ya.map_keys(|&m| s * self.right_dim + m))
    }

    pub fn format_vec(&self, v: &SparseVec) -> String {
        format_sparse(v, |p| self.label(p).to_string())
    }
}

fn checked_identity_component(algebra: &GradedAlgebra) -> Result<Vec<usize>> {
    if !algebra.coinvariants_equal_identity_component() {
        return Err(Error::Internal(
            "coinvariants differ from the identity component".into(),
        ));
    }
    Ok(algebra.identity_component())
}

/// `A^ext ⊗_A A^ext` with `A` the coinvariants.
pub fn relative_tensor(algebra: &GradedAlgebra) -> Result<RelativeTensorSpace> {
    let ae = checked_identity_component(algebra)?;
    Ok(RelativeTensorSpace::first(algebra).extend(algebra, &ae))
}

/// `[T_1, T_2, ..., T_k]` with `T_1 = A^ext` and `T_{m+1} = T_m ⊗_A A^ext`.
pub fn relative_tensor_powers(algebra: &GradedAlgebra, k: usize) -> Result<Vec<RelativeTensorSpace>> {
    let ae = checked_identity_component(algebra)?;
    let mut out = vec![RelativeTensorSpace::first(algebra)];
    while out.len() < k {
        let next = out.last().expect("nonempty").extend(algebra, &ae);
        out.push(next);
    }
    Ok(out)
}

/// One application of `β` to the last two tensor factors:
/// `T_m ⊗ H^{⊗r} -> T_{m-1} ⊗ H^{⊗(r+1)}`, with the new group factor placed
/// first among the `H` factors.
///
/// Index of `t ⊗ g_1 ⊗ ... ⊗ g_r` is `t * |G|^r + (g_1, ..., g_r)` in mixed
/// radix. Fails if some relation of `T_m` has a nonzero image.
fn beta_step(
    algebra: &GradedAlgebra,
    grades: &GradeIndex,
    lower: &RelativeTensorSpace,
    upper: &RelativeTensorSpace,
    h_factors: u32,
) -> Result<LinearMap> {
    let dim = algebra.dim();
    let order = grades.order;
    // class(s ⊗ a_i) ⊗ a_j  ->  class(s ⊗ a_i a_j) ⊗ grade(a_j)
    let ambient_image = |amb: usize| -> SparseVec {
        let (t, j) = (amb / dim, amb % dim);
        let (s, i) = lower.representative(t);
        let prod = algebra.basis_product(i, j).map_keys(|&k| s * dim + k);
        lower.project(&prod).map_keys(|&t| t * order + grades.of_basis[j])
    };
    for r in upper.relations() {
        let mut image = SparseVec::new();
        for (&amb, c) in r.iter() {
            image.add_scaled(c, &ambient_image(amb));
        }
        if !image.is_zero() {
            return Err(Error::Internal(
                "canonical map is not well defined on the relative tensor product".into(),
            ));
        }
    }
    let stride = order.pow(h_factors);
    let mut columns = Vec::with_capacity(upper.dim() * stride);
    for p in 0..upper.dim() {
        let col = ambient_image(upper.basis[p]);
        for hs in 0..stride {
            columns.push(col.map_keys(|&k| k * stride + hs));
        }
    }
    Ok(LinearMap::new(lower.dim() * order * stride, columns)?)
}

/// Position in the group enumeration of each basis element's grade.
struct GradeIndex {
    order: usize,
    of_basis: Vec<usize>,
}

impl GradeIndex {
    fn new(algebra: &GradedAlgebra) -> Result<Self> {
        let group = algebra.group();
        if !group.is_finite() {
            return Err(Error::InfiniteGrading);
        }
        let order = enumerate(group)?.len();
        let of_basis = algebra
            .basis()
            .iter()
            .map(|b| index_of(&b.grade).expect("finite group"))
            .collect();
        Ok(GradeIndex { order, of_basis })
    }
}

/// Human-readable label of codomain index `i * |G|^n + (g_1, ..., g_n)` of
/// `A^ext ⊗ kG^{⊗n}`.
pub fn codomain_label(algebra: &GradedAlgebra, n: u32, index: usize) -> Result<String> {
    let elements = enumerate(algebra.group())?;
    let order = elements.len();
    let mut rest = index;
    let mut gs = Vec::with_capacity(n as usize);
    for _ in 0..n {
        gs.push(elements[rest % order].to_string());
        rest /= order;
    }
    gs.reverse();
    let mut parts = vec![algebra.label(rest).to_string()];
    parts.extend(gs);
    Ok(parts.join(" ⊗ "))
}

/// `β: A^ext ⊗_A A^ext -> A^ext ⊗ kG`, `β(a ⊗ b) = (a ⊗ 1)δ(b)`, as a matrix
/// over the quotient basis. Codomain index of `a_i ⊗ g` is
/// `i * |G| + index(g)`.
pub fn canonical_map(algebra: &GradedAlgebra) -> Result<LinearMap> {
    beta_n(algebra, 1, 1)
}

/// `β^n` from the `(n+1)`-fold relative tensor power to `A^ext ⊗ kG^{⊗n}`,
/// composed from `n` applications of `β` on the last two factors.
pub fn beta_n(algebra: &GradedAlgebra, n: u32, cap: u32) -> Result<LinearMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("beta_n needs n >= 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "beta_n power",
            cap: cap.into(),
        });
    }
    let grades = GradeIndex::new(algebra)?;
    let powers = relative_tensor_powers(algebra, n as usize + 1)?;
    let mut map: Option<LinearMap> = None;
    for k in 0..n {
        let upper = &powers[(n - k) as usize];
        let lower = &powers[(n - k - 1) as usize];
        let step = beta_step(algebra, &grades, lower, upper, k)?;
        map = Some(match map {
            None => step,
            Some(m) => step.compose(&m)?,
        });
    }
    Ok(map.expect("n >= 1"))
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisVerdict {
    pub bijective: bool,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    /// A nonzero kernel vector over the quotient basis, when one exists.
    pub kernel_witness: Option<String>,
    #[serde(skip)]
    pub kernel_vector: Option<SparseVec>,
    /// A codomain basis vector outside the image, when the image is proper.
    pub cokernel_witness: Option<String>,
}

/// Decides bijectivity of the canonical map by exact rank.
pub fn is_galois(algebra: &GradedAlgebra) -> Result<GaloisVerdict> {
    let space = relative_tensor(algebra)?;
    let beta = canonical_map(algebra)?;
    if beta.cols() != space.dim() {
        return Err(Error::Internal("canonical map domain mismatch".into()));
    }
    let mut image = Echelon::new();
    for c in beta.columns() {
        image.insert(c.clone());
    }
    let rank = image.rank();
    let kernel_vector = beta.kernel().into_iter().min_by_key(|v| v.len());
    let cokernel = (0..beta.rows()).find(|&i| !image.is_pivot(i));
    let cokernel_witness = cokernel.map(|i| codomain_label(algebra, 1, i)).transpose()?;
    Ok(GaloisVerdict {
        bijective: rank == space.dim() && rank == beta.rows(),
        domain_dim: space.dim(),
        codomain_dim: beta.rows(),
        rank,
        kernel_witness: kernel_vector.as_ref().map(|v| space.format_vec(v)),
        kernel_vector,
        cokernel_witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub strong: StrongGradingVerdict,
    pub galois: GaloisVerdict,
    /// The two verdicts coincide.
    pub agree: bool,
}

/// Runs the strong-grading and Galois decisions independently and compares.
pub fn check_equivalence_theorem(algebra: &GradedAlgebra) -> Result<EquivalenceReport> {
    let strong = algebra.check_strong_grading()?;
    let galois = is_galois(algebra)?;
    Ok(EquivalenceReport {
        agree: strong.strong == galois.bijective,
        strong,
        galois,
    })
}
