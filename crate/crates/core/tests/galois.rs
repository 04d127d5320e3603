mod common;

use hopf_galois::algebra::{build_b_symmetric_truncation, build_truncated_poly, build_twisted_group_algebra, GradedAlgebra};
use hopf_galois::factor::CommutationFactor;
use hopf_galois::galois::{beta_n, canonical_map, check_equivalence_theorem, is_galois, relative_tensor};
use hopf_galois::group::{enumerate, index_of, GradingGroup, GroupElement};
use hopf_galois::linalg::{unit_vector, SparseVec};
use hopf_galois::{Error, Scalar};

fn twisted_z2() -> GradedAlgebra {
    build_twisted_group_algebra(&CommutationFactor::trivial(&GradingGroup::cyclic_power(2, 1).unwrap())).unwrap()
}

/// `dim(A ⊗ A) - rank{a x ⊗ y - a ⊗ x y}` by dense elimination.
fn oracle_relative_dim(a: &GradedAlgebra) -> usize {
    let d = a.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        for &x in &a.identity_component() {
            for y in 0..d {
                let mut row = vec![Scalar::zero(); d * d];
                for (&m, c) in a.basis_product(i, x).iter() {
                    row[m * d + y] = &row[m * d + y] + c;
                }
                for (&m, c) in a.basis_product(x, y).iter() {
                    row[i * d + m] = &row[i * d + m] - c;
                }
                rows.push(row);
            }
        }
    }
    d * d - common::dense_rank(rows)
}

#[test]
fn relative_tensor_dimensions() {
    assert_eq!(relative_tensor(&twisted_z2()).unwrap().dim(), 4);
    assert_eq!(relative_tensor(&build_truncated_poly(2).unwrap()).unwrap().dim(), 4);
    let g = GradingGroup::trivial();
    let f = CommutationFactor::trivial(&GradingGroup::free(1));
    let poly = build_b_symmetric_truncation(&f, 3).unwrap();
    // regrade k[x]/(x^4) trivially: everything is in A, so A ⊗_A A = A
    let desc = hopf_galois::descriptor::AlgebraDescriptor::from_algebra(&poly, None, None);
    let mut desc = desc;
    desc.group = hopf_galois::descriptor::GroupDescriptor { free_rank: 0, torsion: vec![] };
    for b in &mut desc.basis {
        b.grade.clear();
    }
    let trivial = desc.build().unwrap().algebra;
    assert_eq!(trivial.group(), &g);
    assert_eq!(relative_tensor(&trivial).unwrap().dim(), 4);
    assert!(is_galois(&trivial).unwrap().bijective);
}

#[test]
fn relative_tensor_matches_dense_oracle_and_rank_identity() {
    for (name, loaded) in common::corpus() {
        let a = &loaded.algebra;
        let t = relative_tensor(a).unwrap();
        assert_eq!(t.ambient_dim(), t.dim() + t.relation_rank(), "{name}");
        assert_eq!(t.projection().rank(), t.dim(), "{name}");
        if a.dim() <= 9 {
            assert_eq!(t.dim(), oracle_relative_dim(a), "{name}");
        }
    }
}

#[test]
fn balanced_law_holds_in_the_quotient() {
    for (name, loaded) in common::corpus().into_iter().filter(|(_, l)| l.algebra.dim() <= 9) {
        let a = &loaded.algebra;
        let d = a.dim();
        let t = relative_tensor(a).unwrap();
        for i in 0..d {
            for &x in &a.identity_component() {
                for y in 0..d {
                    let left: SparseVec = a.basis_product(i, x).map_keys(|&m| m * d + y);
                    let right: SparseVec = a.basis_product(x, y).map_keys(|&m| i * d + m);
                    assert_eq!(t.project(&left), t.project(&right), "{name}");
                }
            }
        }
    }
}

#[test]
fn canonical_map_examples() {
    let a = twisted_z2();
    let t = relative_tensor(&a).unwrap();
    let beta = canonical_map(&a).unwrap();
    let pos = |rep| (0..t.dim()).find(|&p| t.representative(p) == rep).unwrap();
    // β(u ⊗ u) = u^2 ⊗ g = 1 ⊗ g
    assert_eq!(beta.column(pos((1, 1))), &unit_vector(1));

    let x = build_truncated_poly(2).unwrap();
    let tx = relative_tensor(&x).unwrap();
    let bx = canonical_map(&x).unwrap();
    let p = (0..tx.dim()).find(|&p| tx.representative(p) == (1, 1)).unwrap();
    assert!(bx.column(p).is_zero());
}

#[test]
fn beta_of_one_tensor_one_is_one_tensor_e() {
    for (name, loaded) in common::corpus() {
        let a = &loaded.algebra;
        let t = relative_tensor(a).unwrap();
        let beta = canonical_map(a).unwrap();
        let one = a.unit_vector();
        let d = a.dim();
        let mut amb = SparseVec::new();
        for (&i, c) in one.iter() {
            for (&j, e) in one.iter() {
                amb.add_term(i * d + j, c * e);
            }
        }
        let image = beta.apply(&t.project(&amb)).unwrap();
        let order = enumerate(a.group()).unwrap().len();
        let e = index_of(&GroupElement::identity(a.group())).unwrap();
        let expected: SparseVec = one.iter().map(|(&i, c)| (i * order + e, c.clone())).collect();
        assert_eq!(image, expected, "{name}");
    }
}

#[test]
fn galois_dimension_law() {
    for (name, loaded) in common::corpus() {
        let a = &loaded.algebra;
        let v = is_galois(a).unwrap();
        let order = enumerate(a.group()).unwrap().len();
        if v.bijective {
            assert_eq!(v.domain_dim, a.dim() * order, "{name}");
            assert!(v.kernel_witness.is_none() && v.cokernel_witness.is_none());
        } else {
            assert!(v.kernel_witness.is_some() || v.cokernel_witness.is_some(), "{name}");
        }
    }
}

#[test]
fn beta_two_examples() {
    let b = beta_n(&twisted_z2(), 2, 4).unwrap();
    assert_eq!((b.cols(), b.rows()), (8, 8));
    assert!(b.is_bijective());
    assert!(!beta_n(&build_truncated_poly(2).unwrap(), 2, 4).unwrap().is_bijective());
}

#[test]
fn product_fixture_fails_both_checks_at_the_same_pair() {
    let (_, loaded) = common::corpus().into_iter().find(|(n, _)| n.starts_with("product-")).unwrap();
    let r = check_equivalence_theorem(&loaded.algebra).unwrap();
    assert!(r.agree);
    assert!(!r.strong.strong && !r.galois.bijective);
    let w = r.strong.witness.unwrap();
    assert_eq!((w.left.coords(), w.right.coords()), (&[1][..], &[1][..]));
    assert_eq!(w.missing, "e2");
    // the kernel lives over the degenerate factor
    assert_eq!(r.galois.kernel_witness.as_deref(), Some("1*[x ⊗ x]"));
}

#[test]
fn infinite_grading_has_no_galois_verdict() {
    let f = CommutationFactor::trivial(&GradingGroup::free(1));
    let a = build_b_symmetric_truncation(&f, 2).unwrap();
    assert!(matches!(is_galois(&a), Err(Error::InfiniteGrading)));
    assert!(matches!(check_equivalence_theorem(&a), Err(Error::InfiniteGrading)));
}
