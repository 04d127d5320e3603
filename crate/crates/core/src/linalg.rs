//! Exact sparse linear algebra over [`Scalar`].
//!
//! Vectors are finitely supported maps from an index to a nonzero scalar.
//! Rank, kernels and spans are computed by Gaussian elimination with the
//! smallest index of each vector as its pivot.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;

/// A finitely supported linear combination `sum_k c_k [k]` with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K, coeff: Scalar) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, coeff: &Scalar, other: &Self) {
        if coeff.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), coeff * v);
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> Self {
        let mut out = Self::new();
        out.add_scaled(coeff, self);
        out
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn remove(&mut self, key: &K) -> Option<Scalar> {
        self.terms.remove(key)
    }

    pub fn map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> Combination<J> {
        let mut out = Combination::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut c = Self::new();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<K: Ord + Clone> IntoIterator for Combination<K> {
    type Item = (K, Scalar);
    type IntoIter = std::collections::btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

/// Sparse coordinate vector.
pub type SparseVec = Combination<usize>;

/// Standard basis vector `e_i`.
pub fn unit_vector(i: usize) -> SparseVec {
    SparseVec::singleton(i, Scalar::one())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// `c*[label] + ...`, with sum coefficients in parentheses.
pub fn format_sparse(v: &SparseVec, label: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = v
        .iter()
        .map(|(&i, c)| {
            let text = c.to_string();
            if text[1..].contains(['+', '-']) {
                format!("({text})*[{}]", label(i))
            } else {
                format!("{text}*[{}]", label(i))
            }
        })
        .collect();
    parts.join(" + ")
}

/// A linear map `k^cols -> k^rows` stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for col in &columns {
            if let Some((&last, _)) = col.terms.iter().next_back() {
                if last >= rows {
                    return Err(LinalgError::IndexOutOfRange {
                        index: last,
                        dim: rows,
                    });
                }
            }
        }
        Ok(LinearMap { rows, columns })
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            rows: dim,
            columns: (0..dim).map(unit_vector).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.columns[col].get(&row).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &SparseVec) -> Result<SparseVec, LinalgError> {
        let mut out = SparseVec::new();
        for (&j, c) in v.iter() {
            let col = self.columns.get(j).ok_or(LinalgError::IndexOutOfRange {
                index: j,
                dim: self.cols(),
            })?;
            out.add_scaled(c, col);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, LinalgError> {
        if inner.rows != self.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                got: inner.rows,
            });
        }
        let columns = inner
            .columns
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap {
            rows: self.rows,
            columns,
        })
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for c in &self.columns {
            ech.insert(c.clone());
        }
        ech.rank()
    }

    /// A basis of the kernel. Vectors are produced in column order, each one
    /// expressing the first dependent column in terms of earlier pivots.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut v = col.clone();
            let mut combo = unit_vector(j);
            let mut cursor = 0;
            while let Some((r, c)) = next_pivot_entry(&v, cursor, |r| pivots.contains_key(&r)) {
                let (p, pc) = &pivots[&r];
                let f = -c;
                v.add_scaled(&f, p);
                combo.add_scaled(&f, pc);
                cursor = r + 1;
            }
            match v.first() {
                None => kernel.push(combo),
                Some((&lead, c)) => {
                    let inv = c.inv().expect("leading entry is nonzero");
                    pivots.insert(lead, (v.scaled(&inv), combo.scaled(&inv)));
                }
            }
        }
        kernel
    }

    pub fn is_bijective(&self) -> bool {
        self.rows == self.cols() && self.rank() == self.rows
    }
}

fn next_pivot_entry(
    v: &SparseVec,
    cursor: usize,
    is_pivot: impl Fn(usize) -> bool,
) -> Option<(usize, Scalar)> {
    v.terms
        .range(cursor..)
        .find(|(r, _)| is_pivot(**r))
        .map(|(r, c)| (*r, c.clone()))
}

/// Row-echelon basis of a growing subspace; each stored vector is
/// normalized to leading coefficient 1 at its smallest index.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains_key(&i)
    }

    /// The stored basis, in pivot order.
    pub fn vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    /// Reduces `v` until none of its indices is a pivot. The result is the
    /// canonical representative of `v` modulo the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        while let Some((r, c)) = next_pivot_entry(&v, cursor, |r| self.pivots.contains_key(&r)) {
            v.add_scaled(&-c, &self.pivots[&r]);
            cursor = r + 1;
        }
        v
    }

    /// Adds `v` to the span. Returns `true` when it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.first() {
            None => false,
            Some((&lead, c)) => {
                let inv = c.inv().expect("leading entry is nonzero");
                let v = v.scaled(&inv);
                self.pivots.insert(lead, v);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Whether two lists of vectors span the same subspace.
    pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
        let mut ea = Echelon::new();
        for v in a {
            ea.insert(v.clone());
        }
        let mut eb = Echelon::new();
        for v in b {
            eb.insert(v.clone());
        }
        ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v)) && a.iter().all(|v| eb.contains(v))
    }
}
