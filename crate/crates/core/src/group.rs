//! Finitely generated abelian grading groups `Z^r x Z_{n_1} x ... x Z_{n_k}`.
//!
//! The first `free_rank` coordinates are free, the remaining ones are cyclic
//! and always stored reduced into `[0, n_i)`. Generators are the unit vectors.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("elements belong to different grading groups")]
    Mismatch,
    #[error("torsion orders must be at least 2, got {0}")]
    InvalidTorsion(u64),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("enumeration requires finite group")]
    Infinite,
    #[error("group order exceeds the cap {cap}")]
    TooLarge { cap: u64 },
    #[error("reduction modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("reduction requires a free group")]
    NotFree,
    #[error("coordinate overflow")]
    Overflow,
    #[error("generator index {index} out of range for {count} generators")]
    NoSuchGenerator { index: usize, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Arc<Self>, GroupError> {
        if let Some(&bad) = torsion.iter().find(|&&n| n < 2 || n > i64::MAX as u64) {
            return Err(GroupError::InvalidTorsion(bad));
        }
        Ok(Arc::new(GradingGroup { free_rank, torsion }))
    }

    /// `Z^n`.
    pub fn free(rank: usize) -> Arc<Self> {
        Arc::new(GradingGroup {
            free_rank: rank,
            torsion: Vec::new(),
        })
    }

    /// `Z_n^rank`.
    pub fn cyclic_power(n: u64, rank: usize) -> Result<Arc<Self>, GroupError> {
        Self::new(0, vec![n; rank])
    }

    /// The trivial group `{e}`.
    pub fn trivial() -> Arc<Self> {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of generators `N = r + k`.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cyclic order of coordinate `i`, or `None` for a free coordinate.
    pub fn modulus(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    /// `|G|` for finite groups; `None` when infinite or when it overflows `u64`.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z_{n}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// An element of a [`GradingGroup`], written additively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: Arc<GradingGroup>,
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(group: &Arc<GradingGroup>, mut coords: Vec<i64>) -> Result<Self, GroupError> {
        if coords.len() != group.rank() {
            return Err(GroupError::WrongLength {
                expected: group.rank(),
                got: coords.len(),
            });
        }
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(n) = group.modulus(i) {
                *c = c.rem_euclid(n as i64);
            }
        }
        Ok(GroupElement {
            group: Arc::clone(group),
            coords,
        })
    }

    pub fn identity(group: &Arc<GradingGroup>) -> Self {
        GroupElement {
            group: Arc::clone(group),
            coords: vec![0; group.rank()],
        }
    }

    /// The unit vector `xi^i` (0-based `i`).
    pub fn generator(group: &Arc<GradingGroup>, i: usize) -> Result<Self, GroupError> {
        if i >= group.rank() {
            return Err(GroupError::NoSuchGenerator {
                index: i,
                count: group.rank(),
            });
        }
        let mut coords = vec![0; group.rank()];
        coords[i] = 1;
        Self::new(group, coords)
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &Self) -> Result<(), GroupError> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(GroupError::Mismatch)
        }
    }

    /// The group law `g + h`.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_group(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(GroupError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&self.group, coords)
    }

    pub fn inverse(&self) -> Self {
        let coords = self.coords.iter().map(|c| -c).collect();
        Self::new(&self.group, coords).expect("same length")
    }

    /// `k * g`.
    pub fn times(&self, k: i64) -> Result<Self, GroupError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.checked_mul(k).ok_or(GroupError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&self.group, coords)
    }

    /// Componentwise residue `Z^N -> Z_n^N`.
    pub fn reduce_mod(&self, n: i64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidModulus(n));
        }
        if !self.group.torsion.is_empty() {
            return Err(GroupError::NotFree);
        }
        let target = GradingGroup::cyclic_power(n as u64, self.group.rank())?;
        Self::new(&target, self.coords.clone())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// All elements of a finite group in lexicographic coordinate order.
pub fn enumerate(group: &Arc<GradingGroup>) -> Result<Vec<GroupElement>, GroupError> {
    enumerate_capped(group, u64::MAX)
}

/// Like [`enumerate`] but refuses groups with more than `cap` elements.
pub fn enumerate_capped(
    group: &Arc<GradingGroup>,
    cap: u64,
) -> Result<Vec<GroupElement>, GroupError> {
    if !group.is_finite() {
        return Err(GroupError::Infinite);
    }
    let order = group.order().ok_or(GroupError::TooLarge { cap })?;
    if order > cap {
        return Err(GroupError::TooLarge { cap });
    }
    let mut out = Vec::with_capacity(order as usize);
    let mut coords = vec![0i64; group.rank()];
    for _ in 0..order {
        out.push(GroupElement {
            group: Arc::clone(group),
            coords: coords.clone(),
        });
        for i in (0..coords.len()).rev() {
            coords[i] += 1;
            if coords[i] < group.torsion[i] as i64 {
                break;
            }
            coords[i] = 0;
        }
    }
    Ok(out)
}

/// Position of `g` in [`enumerate`] order (mixed radix), for finite groups.
pub fn index_of(g: &GroupElement) -> Option<usize> {
    if !g.group.is_finite() {
        return None;
    }
    let mut idx: usize = 0;
    for (c, n) in g.coords.iter().zip(&g.group.torsion) {
        idx = idx.checked_mul(*n as usize)?.checked_add(*c as usize)?;
    }
    Some(idx)
}
