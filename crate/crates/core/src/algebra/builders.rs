//! Standard example algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::CommutationFactor;
use crate::group::{enumerate, index_of, GradingGroup, GroupElement};
use crate::linalg::{unit_vector, SparseVec};
use crate::scalar::Scalar;

use super::{BasisElement, GradedAlgebra};

/// Largest algebra any builder will produce.
pub const MAX_BUILDER_DIM: usize = 4096;

fn check_dim(dim: u128) -> Result<()> {
    if dim > MAX_BUILDER_DIM as u128 {
        return Err(Error::CapExceeded {
            what: "builder dimension",
            cap: MAX_BUILDER_DIM as u64,
        });
    }
    Ok(())
}

/// `prod_{i>j} (b^{ij})^{g_i h_j}`: commutes each crossing pair of generators.
fn ordered_cocycle(factor: &CommutationFactor, g: &[i64], h: &[i64]) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for (i, &gi) in g.iter().enumerate() {
        for (j, &hj) in h.iter().enumerate().take(i) {
            let e = gi * hj;
            if e != 0 {
                acc = &acc * &factor.generator_value(i, j).pow(e)?;
            }
        }
    }
    Ok(acc)
}

/// The twisted group algebra `k_b[G]` with basis `u_g` and
/// `u_g u_h = prod_{i>j} b(xi^i, xi^j)^{g_i h_j} u_{g+h}`.
///
/// On generators this gives `u_i u_j = b^{ij} u_j u_i` whenever `b` is
/// alternating.
pub fn build_twisted_group_algebra(factor: &CommutationFactor) -> Result<GradedAlgebra> {
    let group = factor.group();
    check_dim(group.order().map_or(u128::MAX, u128::from))?;
    let elements = enumerate(group)?;
    let basis = elements
        .iter()
        .map(|g| BasisElement {
            label: format!("u{g}"),
            grade: g.clone(),
        })
        .collect();
    let mut products = Vec::with_capacity(elements.len() * elements.len());
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            let c = ordered_cocycle(factor, g.coords(), h.coords())?;
            let k = index_of(&g.compose(h)?).expect("finite group");
            products.push((i, j, SparseVec::singleton(k, c)));
        }
    }
    let unit = unit_vector(index_of(&GroupElement::identity(group)).expect("finite group"));
    GradedAlgebra::new(group, basis, products, unit)
}

/// The group algebra `kG` graded over itself, basis `[g]`.
pub fn build_group_algebra(group: &Arc<GradingGroup>) -> Result<GradedAlgebra> {
    let trivial = CommutationFactor::trivial(group);
    let mut algebra = build_twisted_group_algebra(&trivial)?;
    for b in &mut algebra.basis {
        b.label = format!("[{}]", b.grade);
    }
    Ok(algebra)
}

/// `k[x]/(x^m)` graded by `Z_m` with `x` in degree 1.
pub fn build_truncated_poly(m: u64) -> Result<GradedAlgebra> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("truncation order must be at least 2, got {m}")));
    }
    check_dim(m.into())?;
    let group = GradingGroup::cyclic_power(m, 1)?;
    let dim = m as usize;
    let basis = (0..dim)
        .map(|i| {
            Ok(BasisElement {
                label: monomial_label(&["x"], &[i as u64]),
                grade: GroupElement::new(&group, vec![i as i64])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let products = (0..dim)
        .flat_map(|i| (0..dim - i).map(move |j| (i, j, unit_vector(i + j))))
        .collect();
    GradedAlgebra::new(&group, basis, products, unit_vector(0))
}

fn variable_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_label<S: AsRef<str>>(names: &[S], exps: &[u64]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| match e {
            1 => v.as_ref().to_string(),
            _ => format!("{}^{e}", v.as_ref()),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Exponent vectors of total degree `d` in `n` variables, with the caps in
/// `max_exp`, ordered by descending first exponent, then second, and so on.
fn exponents_of_degree(n: usize, d: u64, max_exp: &[u64], out: &mut Vec<Vec<u64>>) {
    fn go(i: usize, left: u64, max_exp: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i + 1 == max_exp.len() {
            if left <= max_exp[i] {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for e in (0..=left.min(max_exp[i])).rev() {
            cur.push(e);
            go(i + 1, left - e, max_exp, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        go(0, d, max_exp, &mut Vec::with_capacity(n), out);
    }
}

fn exponent_caps(factor: &CommutationFactor, max_degree: u64) -> Vec<u64> {
    (0..factor.group().rank())
        .map(|i| if factor.generator_value(i, i).is_one() { max_degree } else { 1 })
        .collect()
}

/// Number of exponent vectors with the given caps and total degree at most
/// `max_degree`, saturating.
fn count_monomials(max_exp: &[u64], max_degree: u64) -> u128 {
    // ways[d] = vectors over the generators seen so far with total degree d
    let width = max_degree.min(MAX_BUILDER_DIM as u64) as usize;
    if max_degree > width as u64 {
        return u128::MAX;
    }
    let mut ways = vec![0u128; width + 1];
    ways[0] = 1;
    for &cap in max_exp {
        let mut next = vec![0u128; width + 1];
        for (d, &w) in ways.iter().enumerate() {
            for e in 0..=cap.min((width - d) as u64) as usize {
                next[d + e] = next[d + e].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &w| a.saturating_add(w))
}

/// Dimension of [`build_b_symmetric_truncation`] for these parameters,
/// without building it.
pub fn b_symmetric_dimension(factor: &CommutationFactor, max_degree: u64) -> u128 {
    count_monomials(&exponent_caps(factor, max_degree), max_degree)
}

/// The free `b`-commutative algebra on generators `x_i` of grade `xi^i`,
/// cut off above total degree `max_degree`.
///
/// Generators with `b(xi^i, xi^i) = -1` square to zero, since `x^2 = -x^2`
/// in characteristic 0. Basis monomials are normal-ordered and listed by
/// degree; `x^e x^f = prod_{i>j} (b^{ij})^{e_i f_j} x^{e+f}`.
pub fn build_b_symmetric_truncation(factor: &CommutationFactor, max_degree: u64) -> Result<GradedAlgebra> {
    if max_degree < 1 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    let group = factor.group();
    let n = group.rank();
    if n == 0 {
        return Err(Error::InvalidArgument("the grading group needs at least one generator".into()));
    }
    let max_exp = exponent_caps(factor, max_degree);
    check_dim(count_monomials(&max_exp, max_degree))?;
    let mut monomials = Vec::new();
    for d in 0..=max_degree {
        exponents_of_degree(n, d, &max_exp, &mut monomials);
    }
    let index: std::collections::HashMap<Vec<u64>, usize> =
        monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let names = variable_names(n);
    let basis = monomials
        .iter()
        .map(|e| {
            let coords = e.iter().map(|&x| x as i64).collect();
            Ok(BasisElement {
                label: monomial_label(&names, e),
                grade: GroupElement::new(group, coords)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut products = Vec::new();
    for (i, e) in monomials.iter().enumerate() {
        for (j, f) in monomials.iter().enumerate() {
            let sum: Vec<u64> = e.iter().zip(f).map(|(a, b)| a + b).collect();
            let Some(&k) = index.get(&sum) else { continue };
            let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let fi: Vec<i64> = f.iter().map(|&x| x as i64).collect();
            let c = ordered_cocycle(factor, &ei, &fi)?;
            products.push((i, j, SparseVec::singleton(k, c)));
        }
    }
    GradedAlgebra::new(group, basis, products, unit_vector(0))
}
