use super::*;
use crate::algebra::build_truncated_poly;
use crate::factor::CommutationFactor;

fn z2() -> Arc<GradingGroup> {
    GradingGroup::cyclic_power(2, 1).unwrap()
}

#[test]
fn unit_is_neutral_and_square_zero_vanishes() {
    let a = build_truncated_poly(2).unwrap();
    let x = a.basis_element(1);
    assert_eq!(a.multiply(&a.one(), &x).unwrap(), x);
    assert!(a.multiply(&x, &x).unwrap().is_zero());
}

#[test]
fn twisted_z2_u_squared_is_one() {
    let a = build_twisted_group_algebra(&CommutationFactor::trivial(&z2())).unwrap();
    let u = a.basis_element(1);
    assert_eq!(a.multiply(&u, &u).unwrap(), a.one());
}

#[test]
fn multiply_rejects_foreign_elements() {
    let a = build_truncated_poly(2).unwrap();
    let b = build_truncated_poly(3).unwrap();
    assert!(matches!(
        a.multiply(&a.one(), &b.one()),
        Err(Error::AlgebraMismatch { expected: 2, got: 3 })
    ));
}

#[test]
fn coaction_of_mixed_element() {
    let a = build_truncated_poly(2).unwrap();
    let x = a.one().add(&a.basis_element(1)).unwrap();
    let rho = a.coaction(&x).unwrap();
    let e = GroupElement::identity(a.group());
    let g = GroupElement::generator(a.group(), 0).unwrap();
    assert_eq!(rho.get(&(0, e)), Some(&Scalar::one()));
    assert_eq!(rho.get(&(1, g)), Some(&Scalar::one()));
    assert_eq!(rho.len(), 2);
}

#[test]
fn new_rejects_inhomogeneous_product() {
    let g = z2();
    let basis = vec![
        BasisElement { label: "1".into(), grade: GroupElement::identity(&g) },
        BasisElement { label: "x".into(), grade: GroupElement::generator(&g, 0).unwrap() },
    ];
    let products = vec![
        (0, 0, unit_vector(0)),
        (0, 1, unit_vector(1)),
        (1, 0, unit_vector(1)),
        (1, 1, unit_vector(1)),
    ];
    let err = GradedAlgebra::new(&g, basis, products, unit_vector(0)).unwrap_err();
    assert!(err.to_string().contains("homogeneity"), "{err}");
}

#[test]
fn new_rejects_unit_outside_identity_grade() {
    let g = z2();
    let basis = vec![BasisElement { label: "x".into(), grade: GroupElement::generator(&g, 0).unwrap() }];
    let err = GradedAlgebra::new(&g, basis, vec![], unit_vector(0)).unwrap_err();
    assert!(err.to_string().contains("unit"), "{err}");
}

#[test]
fn strong_grading_witness_for_square_zero() {
    let a = build_truncated_poly(2).unwrap();
    let v = a.check_strong_grading().unwrap();
    assert!(!v.strong);
    let w = v.witness.unwrap();
    assert_eq!(w.left.coords(), &[1]);
    assert_eq!(w.right.coords(), &[1]);
    assert_eq!(w.span_dim, 0);
    assert_eq!(w.missing, "1");
}

#[test]
fn strong_grading_requires_finite_group() {
    let g = GradingGroup::free(1);
    let f = CommutationFactor::trivial(&g);
    let a = build_b_symmetric_truncation(&f, 2).unwrap();
    assert!(matches!(a.check_strong_grading(), Err(Error::InfiniteGrading)));
    let w = a.strong_grading_window().unwrap();
    assert!(w.pairs_checked > 0);
}

#[test]
fn trivial_group_coinvariants_are_everything() {
    let g = GradingGroup::trivial();
    let a = build_group_algebra(&g).unwrap();
    assert_eq!(a.coinvariants().len(), a.dim());
}
