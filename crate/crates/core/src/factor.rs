//! Commutation factors: bicharacters `b: G x G -> k*` that give the
//! coquasitriangular structures on `kG`.
//!
//! A standard factor is fixed by its values on generators,
//! `b(xi^i, xi^j) = (-1)^{sigma_ij} q^{omega_ij}` with `sigma` symmetric and
//! `omega` antisymmetric, and extended bimultiplicatively.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate, GradingGroup, GroupElement, GroupError};
use crate::hopf::{GroupAlgebraElement, GroupHopf, HopfOps};
use crate::report::{AxiomReport, Tally};
use crate::scalar::Scalar;

/// Anything that evaluates like a bicharacter on a grading group.
pub trait Bicharacter {
    fn group(&self) -> &Arc<GradingGroup>;
    fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationFactor {
    group: Arc<GradingGroup>,
    sigma: Vec<Vec<i64>>,
    omega: Vec<Vec<i64>>,
    q: Scalar,
    generator_values: Vec<Vec<Scalar>>,
}

impl CommutationFactor {
    /// Builds the factor with `b^{ij} = (-1)^{sigma_ij} q^{omega_ij}`.
    ///
    /// Diagonal entries of `sigma` only matter mod 2 and are stored reduced.
    /// For cyclic coordinates the values must be well defined on the
    /// quotient, i.e. `(b^{ij})^{n_i} = (b^{ji})^{n_i} = 1`.
    pub fn standard(
        group: &Arc<GradingGroup>,
        mut sigma: Vec<Vec<i64>>,
        omega: Vec<Vec<i64>>,
        q: Scalar,
    ) -> Result<Self> {
        let n = group.rank();
        let square = |m: &Vec<Vec<i64>>| m.len() == n && m.iter().all(|row| row.len() == n);
        if !square(&sigma) || !square(&omega) {
            return Err(Error::InvalidFactor(format!(
                "sigma and omega must be {n}x{n} matrices"
            )));
        }
        if q.is_zero() {
            return Err(Error::InvalidFactor("q must be nonzero".into()));
        }
        for (i, row) in sigma.iter_mut().enumerate() {
            row[i] = row[i].rem_euclid(2);
        }
        for i in 0..n {
            for j in 0..n {
                if sigma[i][j] != sigma[j][i] {
                    return Err(Error::InvalidFactor(format!(
                        "sigma is not symmetric at ({i}, {j})"
                    )));
                }
                if omega[i][j].checked_neg() != Some(omega[j][i]) {
                    return Err(Error::InvalidFactor(format!(
                        "omega is not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let minus_one = Scalar::from_integer(-1);
        let mut generator_values = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let sign = if sigma[i][j].rem_euclid(2) == 1 {
                    minus_one.clone()
                } else {
                    Scalar::one()
                };
                row.push(&sign * &q.pow(omega[i][j])?);
            }
            generator_values.push(row);
        }
        for i in 0..n {
            let Some(ni) = group.modulus(i) else { continue };
            for j in 0..n {
                for (a, b) in [(i, j), (j, i)] {
                    if !power_is_one(&generator_values[a][b], ni)? {
                        return Err(Error::InvalidFactor(format!(
                            "b(xi^{a}, xi^{b})^{ni} != 1: not well defined on Z_{ni} for generator pair ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(CommutationFactor {
            group: Arc::clone(group),
            sigma,
            omega,
            q,
            generator_values,
        })
    }

    /// The factor `b = 1`.
    pub fn trivial(group: &Arc<GradingGroup>) -> Self {
        let n = group.rank();
        Self::standard(group, vec![vec![0; n]; n], vec![vec![0; n]; n], Scalar::one())
            .expect("trivial factor is always valid")
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn sigma(&self) -> &[Vec<i64>] {
        &self.sigma
    }

    pub fn omega(&self) -> &[Vec<i64>] {
        &self.omega
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// `b^{ij} = b(xi^i, xi^j)`, 0-based.
    pub fn generator_value(&self, i: usize, j: usize) -> &Scalar {
        &self.generator_values[i][j]
    }

    /// `b(g, h) = prod_{i,j} (b^{ij})^{g_i h_j}`.
    pub fn evaluate(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
        if g.group() != &self.group || h.group() != &self.group {
            return Err(GroupError::Mismatch.into());
        }
        let mut acc = Scalar::one();
        for (i, &gi) in g.coords().iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &hj) in h.coords().iter().enumerate() {
                if hj == 0 || self.generator_values[i][j].is_one() {
                    continue;
                }
                let e = gi.checked_mul(hj).ok_or(GroupError::Overflow)?;
                acc = &acc * &self.generator_values[i][j].pow(e)?;
            }
        }
        Ok(acc)
    }

    /// `b(g, g) = 1` for every `g`, i.e. every diagonal `sigma_ii` is even.
    pub fn is_alternating(&self) -> bool {
        (0..self.group.rank()).all(|i| self.generator_values[i][i].is_one())
    }

    /// The pointwise inverse `(g, h) -> b(g, h)^{-1}`, again a standard factor
    /// with the same `sigma`, `omega` and parameter `q^{-1}`.
    pub fn convolution_inverse(&self) -> CommutationFactor {
        let q = self.q.inv().expect("q is nonzero");
        Self::standard(&self.group, self.sigma.clone(), self.omega.clone(), q)
            .expect("inverse of a valid factor is valid")
    }

    /// Whether `b` descends from `Z^N` to `Z_n^N`, i.e. `(b^{ij})^n = 1` for
    /// every generator pair. On success the induced factor is returned.
    pub fn check_quotient_descent(&self, n: u64) -> Result<DescentVerdict> {
        if n < 2 {
            return Err(GroupError::InvalidModulus(n as i64).into());
        }
        if !self.group.torsion().is_empty() {
            return Err(GroupError::NotFree.into());
        }
        let rank = self.group.rank();
        let mut witness = None;
        'outer: for i in 0..rank {
            for j in 0..rank {
                if !power_is_one(&self.generator_values[i][j], n)? {
                    witness = Some((i, j));
                    break 'outer;
                }
            }
        }
        let induced = if witness.is_none() {
            let target = GradingGroup::cyclic_power(n, rank)?;
            Some(Self::standard(
                &target,
                self.sigma.clone(),
                self.omega.clone(),
                self.q.clone(),
            )?)
        } else {
            None
        };
        Ok(DescentVerdict {
            modulus: n,
            descends: witness.is_none(),
            witness,
            induced,
        })
    }

    /// Statistics of each generator and mutual phases of generator pairs.
    pub fn classify_statistics(&self) -> StatisticsTable {
        let n = self.group.rank();
        let generators = (0..n)
            .map(|i| {
                let value = self.generator_values[i][i].clone();
                GeneratorStatistics {
                    generator: i,
                    statistics: Statistics::of(&value),
                    value,
                }
            })
            .collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let value = self.generator_values[i][j].clone();
                let reverse = self.generator_values[j][i].clone();
                pairs.push(PairStatistics {
                    generators: (i, j),
                    statistics: Statistics::of(&value),
                    mutual_phase: &value * &reverse,
                    value,
                    reverse,
                });
            }
        }
        StatisticsTable {
            generators,
            pairs,
            note: "q is restricted to exact values in Q(zeta_n); generic complex q is not represented",
        }
    }
}

impl Bicharacter for CommutationFactor {
    fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
        self.evaluate(g, h)
    }
}

/// `x^n == 1`, using `n` up to `u64::MAX`.
fn power_is_one(x: &Scalar, n: u64) -> Result<bool> {
    // x^n by square-and-multiply on the unsigned exponent
    let mut base = x.clone();
    let mut e = n;
    let mut acc = Scalar::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(acc.is_one())
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentVerdict {
    pub modulus: u64,
    pub descends: bool,
    /// First generator pair `(i, j)` (0-based) with `(b^{ij})^n != 1`.
    pub witness: Option<(usize, usize)>,
    #[serde(skip)]
    pub induced: Option<CommutationFactor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Statistics {
    #[serde(rename = "bosonic")]
    Bosonic,
    #[serde(rename = "fermionic")]
    Fermionic,
    #[serde(rename = "anyonic(q-statistics)")]
    Anyonic,
}

impl Statistics {
    fn of(value: &Scalar) -> Self {
        if value.is_one() {
            Statistics::Bosonic
        } else if *value == Scalar::from_integer(-1) {
            Statistics::Fermionic
        } else {
            Statistics::Anyonic
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorStatistics {
    pub generator: usize,
    pub value: Scalar,
    pub statistics: Statistics,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairStatistics {
    pub generators: (usize, usize),
    pub value: Scalar,
    pub reverse: Scalar,
    pub mutual_phase: Scalar,
    pub statistics: Statistics,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatisticsTable {
    pub generators: Vec<GeneratorStatistics>,
    pub pairs: Vec<PairStatistics>,
    pub note: &'static str,
}

/// Memoizes bicharacter values; the axiom checks revisit the same pairs often.
struct Memo<'a, B: Bicharacter> {
    inner: &'a B,
    cache: RefCell<HashMap<(GroupElement, GroupElement), Scalar>>,
}

impl<B: Bicharacter> Memo<'_, B> {
    fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
        if let Some(v) = self.cache.borrow().get(&(g.clone(), h.clone())) {
            return Ok(v.clone());
        }
        let v = self.inner.value(g, h)?;
        self.cache
            .borrow_mut()
            .insert((g.clone(), h.clone()), v.clone());
        Ok(v)
    }
}

const COMMUTATION_NOTE: &str =
    "on group-likes b(h,k) kh = hk b(h,k) with b(h,k) != 0 reduces to commutativity of G";

/// Verifies the coquasitriangular axioms of `b` on group-like triples.
///
/// Checked: the braided commutation identity, multiplicativity in each
/// argument, normalization `b(e, h) = b(h, e) = 1`, and convolution
/// invertibility (pointwise nonzero, with `b * b^{-1} = 1`).
pub fn check_cqt_axioms<B: Bicharacter>(
    b: &B,
    triples: &[(GroupElement, GroupElement, GroupElement)],
) -> Result<AxiomReport> {
    let group = Arc::clone(b.group());
    let hopf = GroupHopf::new(&group);
    let memo = Memo {
        inner: b,
        cache: RefCell::new(HashMap::new()),
    };
    let e = GroupElement::identity(&group);

    let mut commutation = Tally::new("braided-commutation").with_note(COMMUTATION_NOTE);
    let mut second = Tally::new("multiplicative-in-second-argument");
    let mut first = Tally::new("multiplicative-in-first-argument");
    let mut normal = Tally::new("normalization");
    let mut invertible = Tally::new("convolution-invertibility");

    let mut seen_pairs = HashSet::new();
    for (h, k, l) in triples {
        for x in [h, k, l] {
            if x.group() != &group {
                return Err(GroupError::Mismatch.into());
            }
        }
        let witness = || format!("(h, k, l) = ({h}, {k}, {l})");

        let kl = k.compose(l)?;
        let lhs = memo.value(h, &kl)?;
        let rhs = &memo.value(h, k)? * &memo.value(h, l)?;
        second.record(lhs == rhs, witness);

        let hk = h.compose(k)?;
        let lhs = memo.value(&hk, l)?;
        let rhs = &memo.value(h, l)? * &memo.value(k, l)?;
        first.record(lhs == rhs, witness);

        if seen_pairs.insert((h.clone(), k.clone())) {
            let bhk = memo.value(h, k)?;
            let gh = GroupAlgebraElement::group_like(h);
            let gk = GroupAlgebraElement::group_like(k);
            let left = hopf.multiply(&gk, &gh)?.scaled(&bhk);
            let right = hopf.multiply(&gh, &gk)?.scaled(&bhk);
            commutation.record(left == right, || format!("(h, k) = ({h}, {k})"));

            let ok = match bhk.inv() {
                Ok(inv) => (&bhk * &inv).is_one(),
                Err(_) => false,
            };
            invertible.record(ok, || format!("(h, k) = ({h}, {k}), b = {bhk}"));

            let ok = memo.value(&e, h)?.is_one() && memo.value(h, &e)?.is_one();
            normal.record(ok, || format!("h = {h}"));
        }
    }

    Ok(AxiomReport {
        checks: vec![
            commutation.finish(),
            second.finish(),
            first.finish(),
            normal.finish(),
            invertible.finish(),
        ],
    })
}

/// All group-like triples of a finite group, checked exhaustively.
pub fn check_cqt_axioms_exhaustive<B: Bicharacter>(b: &B) -> Result<AxiomReport> {
    let elements = enumerate(b.group())?;
    let mut triples = Vec::with_capacity(elements.len().pow(3));
    for h in &elements {
        for k in &elements {
            for l in &elements {
                triples.push((h.clone(), k.clone(), l.clone()));
            }
        }
    }
    check_cqt_axioms(b, &triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn zeta(n: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(n, k).unwrap()
    }

    fn el(g: &Arc<GradingGroup>, c: &[i64]) -> GroupElement {
        GroupElement::new(g, c.to_vec()).unwrap()
    }

    #[test]
    fn fermionic_generator() {
        let g = GradingGroup::free(1);
        let b = CommutationFactor::standard(&g, vec![vec![1]], vec![vec![0]], Scalar::from_integer(5)).unwrap();
        assert_eq!(*b.generator_value(0, 0), Scalar::from_integer(-1));
        assert_eq!(b.classify_statistics().generators[0].statistics, Statistics::Fermionic);
    }

    #[test]
    fn anyonic_pair_values() {
        let g = GradingGroup::free(2);
        let b = CommutationFactor::standard(
            &g,
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 1], vec![-1, 0]],
            zeta(3, 1),
        )
        .unwrap();
        assert_eq!(*b.generator_value(0, 1), zeta(3, 1));
        assert_eq!(*b.generator_value(1, 0), zeta(3, 2));
        assert_eq!(b.evaluate(&el(&g, &[2, 0]), &el(&g, &[0, 3])).unwrap(), zeta(3, 6));
    }

    #[test]
    fn trivial_factor_is_one_everywhere() {
        let g = GradingGroup::cyclic_power(3, 2).unwrap();
        let b = CommutationFactor::trivial(&g);
        for x in enumerate(&g).unwrap() {
            for y in enumerate(&g).unwrap() {
                assert!(b.evaluate(&x, &y).unwrap().is_one());
            }
        }
        assert!(check_cqt_axioms_exhaustive(&b).unwrap().passed());
    }

    #[test]
    fn evaluation_is_bimultiplicative_from_generators() {
        let g = GradingGroup::free(2);
        let q = Scalar::from_integer(3);
        let b = CommutationFactor::standard(&g, vec![vec![0, 0], vec![0, 0]], vec![vec![0, 1], vec![-1, 0]], q.clone())
            .unwrap();
        // b((2,0),(0,3)) = (b^{12})^{2*3} = q^6
        assert_eq!(b.evaluate(&el(&g, &[2, 0]), &el(&g, &[0, 3])).unwrap(), Scalar::from_integer(729));
        assert!(b.evaluate(&el(&g, &[0, 0]), &el(&g, &[5, -7])).unwrap().is_one());
        let xi1 = el(&g, &[1, 0]);
        for n in -3..=3 {
            let h = el(&g, &[0, n]);
            assert_eq!(b.evaluate(&xi1, &h).unwrap(), b.generator_value(0, 1).pow(n).unwrap());
        }
    }

    #[test]
    fn construction_errors() {
        let g = GradingGroup::free(2);
        let z = vec![vec![0, 0], vec![0, 0]];
        assert!(CommutationFactor::standard(&g, vec![vec![0, 1], vec![0, 0]], z.clone(), Scalar::one()).is_err());
        assert!(CommutationFactor::standard(&g, z.clone(), vec![vec![0, 1], vec![1, 0]], Scalar::one()).is_err());
        assert!(CommutationFactor::standard(&g, z.clone(), z.clone(), Scalar::zero()).is_err());
        assert!(CommutationFactor::standard(&g, vec![vec![0]], z.clone(), Scalar::one()).is_err());
        // Z_3 cannot carry a fermionic generator: (-1)^3 != 1
        let z3 = GradingGroup::cyclic_power(3, 1).unwrap();
        let err = CommutationFactor::standard(&z3, vec![vec![1]], vec![vec![0]], Scalar::one()).unwrap_err();
        assert!(err.to_string().contains("generator pair (0, 0)"), "{err}");
    }

    #[test]
    fn diagonal_sigma_is_reduced_mod_two() {
        let g = GradingGroup::free(1);
        let b = CommutationFactor::standard(&g, vec![vec![3]], vec![vec![0]], Scalar::one()).unwrap();
        assert_eq!(b.sigma(), &[vec![1]]);
    }

    #[test]
    fn descent_examples() {
        let g = GradingGroup::free(2);
        let b = CommutationFactor::standard(&g, vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 0]], zeta(3, 1))
            .unwrap();
        let v = b.check_quotient_descent(3).unwrap();
        assert!(!v.descends);
        assert_eq!(v.witness, Some((0, 1)));

        let b = CommutationFactor::standard(&g, vec![vec![1, 1], vec![1, 0]], vec![vec![0, 1], vec![-1, 0]], zeta(4, 1))
            .unwrap();
        let v = b.check_quotient_descent(4).unwrap();
        assert!(v.descends);
        let induced = v.induced.unwrap();
        assert_eq!(induced.group().torsion(), &[4, 4]);
        assert!(check_cqt_axioms_exhaustive(&induced).unwrap().passed());

        let trivial = CommutationFactor::trivial(&g);
        for n in 2..6 {
            assert!(trivial.check_quotient_descent(n).unwrap().descends);
        }
    }

    #[test]
    fn inverse_is_pointwise() {
        let g = GradingGroup::free(2);
        let q = Scalar::from_ratio(2, 3).unwrap();
        let b = CommutationFactor::standard(&g, vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![-1, 0]], q.clone())
            .unwrap();
        let inv = b.convolution_inverse();
        assert_eq!(*inv.generator_value(0, 1), -q.inv().unwrap());
        for (a, c) in [(1, 2), (-1, 3), (4, -2), (0, 5)] {
            let x = el(&g, &[a, c]);
            let y = el(&g, &[c, a + 1]);
            assert!((&b.evaluate(&x, &y).unwrap() * &inv.evaluate(&x, &y).unwrap()).is_one());
        }
        let t = CommutationFactor::trivial(&g);
        assert_eq!(t.convolution_inverse(), t);
    }

    #[test]
    fn statistics_table() {
        let g = GradingGroup::free(2);
        let fermi = CommutationFactor::standard(&g, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]], Scalar::one())
            .unwrap();
        assert!(fermi.classify_statistics().generators.iter().all(|s| s.statistics == Statistics::Fermionic));
        let bose = CommutationFactor::trivial(&g);
        assert!(bose.classify_statistics().generators.iter().all(|s| s.statistics == Statistics::Bosonic));
        let anyon = CommutationFactor::standard(&g, vec![vec![0, 0], vec![0, 0]], vec![vec![0, 1], vec![-1, 0]], zeta(4, 1))
            .unwrap();
        let table = anyon.classify_statistics();
        assert!(table.generators.iter().all(|s| s.statistics == Statistics::Bosonic));
        assert_eq!(table.pairs[0].statistics, Statistics::Anyonic);
        assert_eq!(table.pairs[0].value, zeta(4, 1));
        assert!(table.pairs[0].mutual_phase.is_one());
    }

    struct Broken(CommutationFactor, GroupElement);

    impl Bicharacter for Broken {
        fn group(&self) -> &Arc<GradingGroup> {
            self.0.group()
        }
        fn value(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
            let v = self.0.value(g, h)?;
            Ok(if *h == self.1 && !g.is_identity() { &v * &Scalar::from_integer(2) } else { v })
        }
    }

    #[test]
    fn broken_bicharacter_fails_multiplicativity() {
        let g = GradingGroup::cyclic_power(2, 2).unwrap();
        let b = CommutationFactor::standard(&g, vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 0]], Scalar::one())
            .unwrap();
        assert!(check_cqt_axioms_exhaustive(&b).unwrap().passed());
        let broken = Broken(b, el(&g, &[1, 1]));
        let report = check_cqt_axioms_exhaustive(&broken).unwrap();
        let check = report.get("multiplicative-in-second-argument").unwrap();
        assert!(!check.passed);
        // triples with k or l = e cancel; the first real failure has k + l = (1,1)
        // with k, l both unmodified
        assert_eq!(check.witness.as_deref(), Some("(h, k, l) = ((0,1), (0,1), (1,0))"));
        assert!(report.get("braided-commutation").unwrap().passed);
    }
}
