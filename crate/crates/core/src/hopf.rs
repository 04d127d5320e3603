//! The group algebra `kG` as a Hopf algebra: `Δ(g) = g ⊗ g`, `ε(g) = 1`,
//! `S(g) = g^{-1}`, extended linearly.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GradingGroup, GroupElement, GroupError};
use crate::linalg::Combination;
use crate::report::{AxiomReport, Tally};
use crate::scalar::Scalar;

/// Finitely supported tensors such as values in `H ⊗ H` or `A ⊗ H`.
pub type TensorElement<K> = Combination<K>;

/// An element of `H ⊗ H` keyed by pairs of group-likes.
pub type HopfTensor = TensorElement<(GroupElement, GroupElement)>;

/// An element `sum_g c_g [g]` of `kG`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: Arc<GradingGroup>,
    terms: Combination<GroupElement>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<GradingGroup>) -> Self {
        GroupAlgebraElement {
            group: Arc::clone(group),
            terms: Combination::new(),
        }
    }

    pub fn group_like(g: &GroupElement) -> Self {
        GroupAlgebraElement {
            group: Arc::clone(g.group()),
            terms: Combination::singleton(g.clone(), Scalar::one()),
        }
    }

    pub fn from_terms(
        group: &Arc<GradingGroup>,
        terms: impl IntoIterator<Item = (GroupElement, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            if g.group() != group {
                return Err(GroupError::Mismatch.into());
            }
            out.terms.add_term(g, c);
        }
        Ok(out)
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn terms(&self) -> &Combination<GroupElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        GroupAlgebraElement {
            group: Arc::clone(&self.group),
            terms: self.terms.scaled(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(GroupError::Mismatch.into());
        }
        let mut terms = self.terms.clone();
        terms.add_scaled(&Scalar::one(), &other.terms);
        Ok(GroupAlgebraElement {
            group: Arc::clone(&self.group),
            terms,
        })
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}*[{g}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Hopf operations on `kG`. [`GroupHopf`] is the only real implementation;
/// the trait lets checkers run against deliberately broken fixtures.
pub trait HopfOps {
    fn group(&self) -> &Arc<GradingGroup>;
    fn multiply(&self, u: &GroupAlgebraElement, v: &GroupAlgebraElement) -> Result<GroupAlgebraElement>;
    fn unit(&self) -> GroupAlgebraElement;
    fn coproduct(&self, u: &GroupAlgebraElement) -> HopfTensor;
    fn counit(&self, u: &GroupAlgebraElement) -> Scalar;
    fn antipode(&self, u: &GroupAlgebraElement) -> GroupAlgebraElement;
}

#[derive(Debug, Clone)]
pub struct GroupHopf {
    group: Arc<GradingGroup>,
}

impl GroupHopf {
    pub fn new(group: &Arc<GradingGroup>) -> Self {
        GroupHopf {
            group: Arc::clone(group),
        }
    }
}

impl HopfOps for GroupHopf {
    fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    /// Convolution product, extending the group law bilinearly.
    fn multiply(&self, u: &GroupAlgebraElement, v: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        if u.group != self.group || v.group != self.group {
            return Err(GroupError::Mismatch.into());
        }
        let mut out = GroupAlgebraElement::zero(&self.group);
        for (g, a) in u.terms.iter() {
            for (h, b) in v.terms.iter() {
                out.terms.add_term(g.compose(h)?, a * b);
            }
        }
        Ok(out)
    }

    fn unit(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::group_like(&GroupElement::identity(&self.group))
    }

    fn coproduct(&self, u: &GroupAlgebraElement) -> HopfTensor {
        u.terms
            .iter()
            .map(|(g, c)| ((g.clone(), g.clone()), c.clone()))
            .collect()
    }

    fn counit(&self, u: &GroupAlgebraElement) -> Scalar {
        u.terms.iter().fold(Scalar::zero(), |acc, (_, c)| &acc + c)
    }

    fn antipode(&self, u: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            group: Arc::clone(&u.group),
            terms: u.terms.map_keys(GroupElement::inverse),
        }
    }
}

type Triple = (GroupElement, GroupElement, GroupElement);

/// `(Δ ⊗ id)` applied to a 2-tensor.
fn coproduct_left<H: HopfOps>(hopf: &H, t: &HopfTensor) -> TensorElement<Triple> {
    let mut out = TensorElement::new();
    for ((a, b), c) in t.iter() {
        for ((x, y), d) in hopf.coproduct(&GroupAlgebraElement::group_like(a)).iter() {
            out.add_term((x.clone(), y.clone(), b.clone()), c * d);
        }
    }
    out
}

/// `(id ⊗ Δ)` applied to a 2-tensor.
fn coproduct_right<H: HopfOps>(hopf: &H, t: &HopfTensor) -> TensorElement<Triple> {
    let mut out = TensorElement::new();
    for ((a, b), c) in t.iter() {
        for ((x, y), d) in hopf.coproduct(&GroupAlgebraElement::group_like(b)).iter() {
            out.add_term((a.clone(), x.clone(), y.clone()), c * d);
        }
    }
    out
}

/// Contracts one leg of a 2-tensor with the counit.
fn counit_leg<H: HopfOps>(hopf: &H, t: &HopfTensor, left: bool) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(hopf.group());
    for ((a, b), c) in t.iter() {
        let (contracted, kept) = if left { (a, b) } else { (b, a) };
        let e = hopf.counit(&GroupAlgebraElement::group_like(contracted));
        out = out.add(&GroupAlgebraElement::group_like(kept).scaled(&(c * &e)))?;
    }
    Ok(out)
}

/// `m ∘ (S ⊗ id)` (or `m ∘ (id ⊗ S)`) applied to a 2-tensor.
fn antipode_contract<H: HopfOps>(hopf: &H, t: &HopfTensor, left: bool) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(hopf.group());
    for ((a, b), c) in t.iter() {
        let a = GroupAlgebraElement::group_like(a);
        let b = GroupAlgebraElement::group_like(b);
        let prod = if left {
            hopf.multiply(&hopf.antipode(&a), &b)?
        } else {
            hopf.multiply(&a, &hopf.antipode(&b))?
        };
        out = out.add(&prod.scaled(c))?;
    }
    Ok(out)
}

/// Product in `H ⊗ H`: `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
fn tensor_product<H: HopfOps>(hopf: &H, s: &HopfTensor, t: &HopfTensor) -> Result<HopfTensor> {
    let mut out = HopfTensor::new();
    for ((a, b), x) in s.iter() {
        for ((c, d), y) in t.iter() {
            let left = hopf.multiply(&GroupAlgebraElement::group_like(a), &GroupAlgebraElement::group_like(c))?;
            let right = hopf.multiply(&GroupAlgebraElement::group_like(b), &GroupAlgebraElement::group_like(d))?;
            for (p, u) in left.terms.iter() {
                for (q, v) in right.terms.iter() {
                    out.add_term((p.clone(), q.clone()), &(x * y) * &(u * v));
                }
            }
        }
    }
    Ok(out)
}

/// Sample size above which pairwise and triple checks only use a prefix.
const PAIR_LIMIT: usize = 64;
const TRIPLE_LIMIT: usize = 16;

/// Verifies the Hopf algebra axioms on `sample` plus the identity and the
/// generators of the group. Failures are report entries with a witness.
pub fn check_hopf_axioms<H: HopfOps>(hopf: &H, sample: &[GroupAlgebraElement]) -> Result<AxiomReport> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument("Hopf axiom sample must be nonempty".into()));
    }
    let group = Arc::clone(hopf.group());
    let mut elements: Vec<GroupAlgebraElement> = sample.to_vec();
    let mut extra = vec![GroupElement::identity(&group)];
    for i in 0..group.rank() {
        extra.push(GroupElement::generator(&group, i)?);
    }
    for g in extra {
        let u = GroupAlgebraElement::group_like(&g);
        if !elements.contains(&u) {
            elements.push(u);
        }
    }

    let one = hopf.unit();
    let mut coassoc = Tally::new("coassociativity");
    let mut counit = Tally::new("counit");
    let mut antipode = Tally::new("antipode");
    let mut unit = Tally::new("unit");
    let mut bialgebra = Tally::new("bialgebra-compatibility");
    let mut assoc = Tally::new("associativity");

    let delta_one = hopf.coproduct(&one);
    let one_one: HopfTensor = one
        .terms()
        .iter()
        .flat_map(|(g, a)| one.terms().iter().map(move |(h, b)| ((g.clone(), h.clone()), a * b)))
        .collect();
    unit.record(delta_one == one_one && hopf.counit(&one).is_one(), || {
        format!("Δ(1) = {delta_one:?}, ε(1) = {}", hopf.counit(&one))
    });

    for u in &elements {
        let d = hopf.coproduct(u);
        coassoc.record(coproduct_left(hopf, &d) == coproduct_right(hopf, &d), || format!("u = {u}"));

        let l = counit_leg(hopf, &d, true)?;
        let r = counit_leg(hopf, &d, false)?;
        counit.record(&l == u && &r == u, || format!("u = {u}"));

        let eps_one = one.scaled(&hopf.counit(u));
        let sl = antipode_contract(hopf, &d, true)?;
        let sr = antipode_contract(hopf, &d, false)?;
        antipode.record(sl == eps_one && sr == eps_one, || {
            format!("u = {u}: m(S⊗id)Δ(u) = {sl}, ε(u)1 = {eps_one}")
        });

        let lu = hopf.multiply(&one, u)?;
        let ru = hopf.multiply(u, &one)?;
        unit.record(&lu == u && &ru == u, || format!("u = {u}"));
    }

    let pairs = &elements[..elements.len().min(PAIR_LIMIT)];
    for u in pairs {
        for v in pairs {
            let uv = hopf.multiply(u, v)?;
            let lhs = hopf.coproduct(&uv);
            let rhs = tensor_product(hopf, &hopf.coproduct(u), &hopf.coproduct(v))?;
            let eps_ok = hopf.counit(&uv) == &hopf.counit(u) * &hopf.counit(v);
            bialgebra.record(lhs == rhs && eps_ok, || format!("u = {u}, v = {v}"));
        }
    }

    let triples = &elements[..elements.len().min(TRIPLE_LIMIT)];
    for u in triples {
        for v in triples {
            let uv = hopf.multiply(u, v)?;
            for w in triples {
                let lhs = hopf.multiply(&uv, w)?;
                let rhs = hopf.multiply(u, &hopf.multiply(v, w)?)?;
                assoc.record(lhs == rhs, || format!("({u}, {v}, {w})"));
            }
        }
    }

    Ok(AxiomReport {
        checks: vec![
            assoc.finish(),
            unit.finish(),
            coassoc.finish(),
            counit.finish(),
            antipode.finish(),
            bialgebra.finish(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate;

    fn z(n: u64) -> Arc<GradingGroup> {
        GradingGroup::cyclic_power(n, 1).unwrap()
    }

    fn gl(g: &Arc<GradingGroup>, c: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::group_like(&GroupElement::new(g, c.to_vec()).unwrap())
    }

    #[test]
    fn coproduct_of_group_like() {
        let z2 = GradingGroup::free(2);
        let h = GroupHopf::new(&z2);
        let g = GroupElement::new(&z2, vec![1, 0]).unwrap();
        let d = h.coproduct(&GroupAlgebraElement::group_like(&g));
        assert_eq!(d, HopfTensor::singleton((g.clone(), g), Scalar::one()));
    }

    #[test]
    fn counit_is_coefficient_sum() {
        let z2 = GradingGroup::free(2);
        let h = GroupHopf::new(&z2);
        let u = gl(&z2, &[1, 0])
            .scaled(&Scalar::from_integer(2))
            .add(&gl(&z2, &[0, 1]).scaled(&Scalar::from_integer(3)))
            .unwrap();
        assert_eq!(h.counit(&u), Scalar::from_integer(5));
    }

    #[test]
    fn antipode_times_group_like_is_unit() {
        let z4 = z(4);
        let h = GroupHopf::new(&z4);
        let g = gl(&z4, &[1]);
        assert_eq!(h.multiply(&h.antipode(&g), &g).unwrap(), h.unit());
    }

    #[test]
    fn axioms_hold_on_group_likes() {
        for n in [2u64, 3] {
            let g = z(n);
            let mut sample: Vec<_> = enumerate(&g)
                .unwrap()
                .iter()
                .map(GroupAlgebraElement::group_like)
                .collect();
            if n == 3 {
                let combo = gl(&g, &[1])
                    .scaled(&Scalar::from_ratio(2, 7).unwrap())
                    .add(&gl(&g, &[2]).scaled(&Scalar::root_of_unity(3, 1).unwrap()))
                    .unwrap();
                sample.push(combo);
            }
            let report = check_hopf_axioms(&GroupHopf::new(&g), &sample).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    struct IdentityAntipode(GroupHopf);

    impl HopfOps for IdentityAntipode {
        fn group(&self) -> &Arc<GradingGroup> {
            self.0.group()
        }
        fn multiply(&self, u: &GroupAlgebraElement, v: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
            self.0.multiply(u, v)
        }
        fn unit(&self) -> GroupAlgebraElement {
            self.0.unit()
        }
        fn coproduct(&self, u: &GroupAlgebraElement) -> HopfTensor {
            self.0.coproduct(u)
        }
        fn counit(&self, u: &GroupAlgebraElement) -> Scalar {
            self.0.counit(u)
        }
        fn antipode(&self, u: &GroupAlgebraElement) -> GroupAlgebraElement {
            u.clone()
        }
    }

    #[test]
    fn corrupted_antipode_is_caught_with_witness() {
        let z3 = z(3);
        let sample: Vec<_> = enumerate(&z3).unwrap().iter().map(GroupAlgebraElement::group_like).collect();
        let report = check_hopf_axioms(&IdentityAntipode(GroupHopf::new(&z3)), &sample).unwrap();
        let ant = report.get("antipode").unwrap();
        assert!(!ant.passed);
        assert!(ant.witness.as_ref().unwrap().starts_with("u = 1*[(1)]"), "{ant:?}");
        assert!(report.get("coassociativity").unwrap().passed);
    }

    #[test]
    fn identity_antipode_is_correct_in_z2() {
        let z2 = z(2);
        let sample: Vec<_> = enumerate(&z2).unwrap().iter().map(GroupAlgebraElement::group_like).collect();
        let report = check_hopf_axioms(&IdentityAntipode(GroupHopf::new(&z2)), &sample).unwrap();
        // every element of Z_2 is its own inverse, so S(g) = g is the true antipode
        assert!(report.get("antipode").unwrap().passed);
    }

    #[test]
    fn empty_sample_is_rejected() {
        assert!(check_hopf_axioms(&GroupHopf::new(&z(2)), &[]).is_err());
    }
}
