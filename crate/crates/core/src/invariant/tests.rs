use super::*;
use crate::poly::Polynomial;
use crate::sample;
use crate::{q, qi};

fn p(s: &str, nvars: usize) -> Polynomial {
    Polynomial::parse(s, nvars).unwrap()
}

#[test]
fn closure_of_sign_and_swap() {
    let g = FiniteMatrixGroup::sign_group();
    assert_eq!(g.order(), 2);
    assert_eq!(g.dim(), 1);
    assert!(g.element(0).is_identity());

    let swap = QMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let g = FiniteMatrixGroup::from_generators(&[swap], 16).unwrap();
    assert_eq!(g.order(), 2);
}

#[test]
fn closure_of_transpositions_gives_s3() {
    let t12 = QMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let t23 = QMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    let g = FiniteMatrixGroup::from_generators(&[t12, t23], 24).unwrap();
    assert_eq!(g.order(), 6);
    assert!(g.elements().iter().all(|e| e.is_permutation()));
    assert_eq!(g, FiniteMatrixGroup::symmetric(3));
}

#[test]
fn infinite_group_hits_order_bound() {
    let shear = QMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
    assert!(matches!(
        FiniteMatrixGroup::from_generators(&[shear], 64),
        Err(InvariantError::OrderBoundExceeded { max_order: 64 })
    ));
}

#[test]
fn singular_generator_rejected() {
    let m = QMatrix::from_i64_rows(&[&[1, 0], &[2, 0]]);
    assert!(matches!(
        FiniteMatrixGroup::from_generators(&[m], 8),
        Err(InvariantError::SingularGenerator)
    ));
}

#[test]
fn inverse_indices_close() {
    let g = FiniteMatrixGroup::symmetric(3);
    for i in 0..g.order() {
        let j = g.inverse_index(i);
        assert!(g.element(i).matmul(g.element(j)).is_identity());
    }
}

#[test]
fn reynolds_basic_examples() {
    let sign = FiniteMatrixGroup::sign_group();
    assert!(reynolds(&p("x1", 1), &sign).unwrap().is_zero());
    assert_eq!(reynolds(&p("x1^2", 1), &sign).unwrap(), p("x1^2", 1));

    let s2 = FiniteMatrixGroup::symmetric(2);
    assert_eq!(reynolds(&p("x1", 2), &s2).unwrap(), p("1/2*x1 + 1/2*x2", 2));
}

#[test]
fn reynolds_dimension_mismatch() {
    let s2 = FiniteMatrixGroup::symmetric(2);
    assert!(matches!(
        reynolds(&p("x1", 3), &s2),
        Err(InvariantError::DimensionMismatch { expected: 2, got: 3 })
    ));
}

#[test]
fn reynolds_is_idempotent_and_invariant() {
    let groups = [
        FiniteMatrixGroup::symmetric(3),
        FiniteMatrixGroup::cyclic4(),
        FiniteMatrixGroup::product(
            &FiniteMatrixGroup::symmetric(2),
            &FiniteMatrixGroup::sign_group(),
        ),
    ];
    let mut rng = sample::rng(7);
    for g in &groups {
        for _ in 0..10 {
            let f = sample::random_polynomial(&mut rng, g.dim(), 5, 6);
            let r = reynolds(&f, g).unwrap();
            assert_eq!(reynolds(&r, g).unwrap(), r, "idempotence");
            assert!(is_invariant(&r, g).unwrap());
            assert_eq!(is_invariant(&f, g).unwrap(), f == r);
        }
    }
}

#[test]
fn reynolds_commutes_with_invariant_multiplication() {
    let g = FiniteMatrixGroup::symmetric(3);
    let inv = p("x1*x2*x3", 3);
    let mut rng = sample::rng(11);
    for _ in 0..10 {
        let f = sample::random_polynomial(&mut rng, 3, 4, 5);
        let lhs = reynolds(&inv.mul(&f), &g).unwrap();
        let rhs = inv.mul(&reynolds(&f, &g).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn generators_for_sign_group() {
    let s = invariant_generators(&FiniteMatrixGroup::sign_group()).unwrap();
    assert_eq!(s.generators(), &[p("x1^2", 1)]);
    assert_eq!(s.degrees(), &[2]);
}

#[test]
fn generators_for_trivial_group() {
    let s = invariant_generators(&FiniteMatrixGroup::trivial(2)).unwrap();
    assert_eq!(s.generators(), &[p("x2", 2), p("x1", 2)]);
    assert_eq!(s.degrees(), &[1, 1]);
}

#[test]
fn generators_for_s2_match_elementary_symmetrics() {
    let s = invariant_generators(&FiniteMatrixGroup::symmetric(2)).unwrap();
    assert_eq!(s.degrees(), &[1, 2]);
    // same graded dimensions as the elementary symmetric algebra up to
    // degree 4: the generator lists need not match verbatim
    let elem = GeneratorSystem::new(
        vec![p("x1 + x2", 2), p("x1*x2", 2)],
        FiniteMatrixGroup::symmetric(2),
    )
    .unwrap();
    for d in 1..=4u32 {
        let f = reynolds(
            &crate::sample::random_polynomial(&mut sample::rng(d as u64), 2, d, 8),
            s.group(),
        )
        .unwrap();
        let via_computed = rewrite_invariant(&f, &s).unwrap();
        let via_elem = rewrite_invariant(&f, &elem).unwrap();
        assert_eq!(via_computed.compose(s.generators()).unwrap(), f);
        assert_eq!(via_elem.compose(elem.generators()).unwrap(), f);
    }
}

#[test]
fn generators_for_cyclic4() {
    let s = invariant_generators(&FiniteMatrixGroup::cyclic4()).unwrap();
    assert_eq!(s.degrees(), &[2, 4, 4]);
    assert_eq!(
        s.generators(),
        &[
            p("x1^2 + x2^2", 2),
            p("x1^4 + x2^4", 2),
            p("x1^3*x2 - x1*x2^3", 2),
        ]
    );
}

#[test]
fn rewrite_invariant_textbook_cases() {
    let s2 = FiniteMatrixGroup::symmetric(2);
    let elem =
        GeneratorSystem::new(vec![p("x1 + x2", 2), p("x1*x2", 2)], s2.clone()).unwrap();
    assert_eq!(
        rewrite_invariant(&p("x1^2 + x2^2", 2), &elem).unwrap(),
        p("x1^2 - 2*x2", 2)
    );
    assert_eq!(
        rewrite_invariant(&p("x1^3 + x2^3", 2), &elem).unwrap(),
        p("x1^3 - 3*x1*x2", 2)
    );

    let sign = FiniteMatrixGroup::sign_group();
    let sq = GeneratorSystem::new(vec![p("x1^2", 1)], sign).unwrap();
    assert_eq!(rewrite_invariant(&p("x1^4", 1), &sq).unwrap(), p("x1^2", 1));
}

#[test]
fn rewrite_rejects_non_invariant_input() {
    let s2 = FiniteMatrixGroup::symmetric(2);
    let elem =
        GeneratorSystem::new(vec![p("x1 + x2", 2), p("x1*x2", 2)], s2).unwrap();
    assert!(matches!(
        rewrite_invariant(&p("x1", 2), &elem),
        Err(InvariantError::NotInvariant)
    ));
}

#[test]
fn rewrite_flags_incomplete_systems() {
    let s2 = FiniteMatrixGroup::symmetric(2);
    let partial = GeneratorSystem::new(vec![p("x1 + x2", 2)], s2).unwrap();
    assert!(matches!(
        rewrite_invariant(&p("x1*x2", 2), &partial),
        Err(InvariantError::NotInAlgebra { degree: 2 })
    ));
}

#[test]
fn generator_system_validates_inputs() {
    let s2 = FiniteMatrixGroup::symmetric(2);
    assert!(GeneratorSystem::new(vec![p("x1", 2)], s2.clone()).is_err());
    assert!(GeneratorSystem::new(vec![p("x1 + x2 + 1", 2)], s2.clone()).is_err());
    assert!(GeneratorSystem::new(vec![p("x1 + x2", 2)], s2).is_ok());
}

#[test]
fn rewrite_round_trip_over_group_zoo() {
    let groups = [
        FiniteMatrixGroup::sign_group(),
        FiniteMatrixGroup::symmetric(2),
        FiniteMatrixGroup::symmetric(3),
        FiniteMatrixGroup::cyclic4(),
        FiniteMatrixGroup::product(
            &FiniteMatrixGroup::symmetric(2),
            &FiniteMatrixGroup::symmetric(2),
        ),
    ];
    let mut rng = sample::rng(2024);
    for g in &groups {
        let s = invariant_generators(g).unwrap();
        for _ in 0..5 {
            let f = reynolds(&sample::random_polynomial(&mut rng, g.dim(), 5, 8), g).unwrap();
            let rewritten = rewrite_invariant(&f, &s).unwrap();
            assert_eq!(
                rewritten.compose(s.generators()).unwrap(),
                f,
                "round trip for group of order {}",
                g.order()
            );
        }
    }
}

#[test]
fn rewrite_round_trip_s4_with_elementary_symmetrics() {
    let s4 = FiniteMatrixGroup::symmetric(4);
    assert_eq!(s4.order(), 24);
    let gens = vec![
        p("x1 + x2 + x3 + x4", 4),
        p("x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4", 4),
        p("x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4", 4),
        p("x1*x2*x3*x4", 4),
    ];
    let s = GeneratorSystem::new(gens, s4.clone()).unwrap();
    let mut rng = sample::rng(99);
    for _ in 0..5 {
        let f = reynolds(&sample::random_polynomial(&mut rng, 4, 6, 6), &s4).unwrap();
        let rewritten = rewrite_invariant(&f, &s).unwrap();
        assert_eq!(rewritten.compose(s.generators()).unwrap(), f);
    }
}

#[test]
fn computed_generators_generate_all_noether_degrees() {
    for g in [FiniteMatrixGroup::symmetric(3), FiniteMatrixGroup::cyclic4()] {
        let s = invariant_generators(&g).unwrap();
        for d in 1..=g.order() as u32 {
            for mono in crate::poly::monomials_of_degree(g.dim(), d) {
                let f = reynolds(
                    &Polynomial::monomial(g.dim(), mono.0, qi(1)),
                    &g,
                )
                .unwrap();
                if f.is_zero() {
                    continue;
                }
                let rewritten = rewrite_invariant(&f, &s).unwrap();
                assert_eq!(rewritten.compose(s.generators()).unwrap(), f);
            }
        }
    }
}

#[test]
fn weyl_embedding_of_sign_group() {
    let w = weyl_embedding(&FiniteMatrixGroup::sign_group());
    assert_eq!(w.ambient_dim(), 2);
    assert_eq!(w.matrix(), &QMatrix::from_i64_rows(&[&[1], &[-1]]));
    let j = w.lift(&p("x1^2", 1)).unwrap();
    assert_eq!(j, p("1/2*x1^2 + 1/2*x2^2", 2));
    assert_eq!(w.restrict(&j).unwrap(), p("x1^2", 1));
}

#[test]
fn weyl_lift_restores_constants() {
    let w = weyl_embedding(&FiniteMatrixGroup::symmetric(3));
    let c = p("7/3", 3);
    let j = w.lift(&c).unwrap();
    assert!(j.is_constant());
    assert_eq!(w.restrict(&j).unwrap(), c);
}

#[test]
fn weyl_section_identity_up_to_degree_six() {
    let groups = [
        FiniteMatrixGroup::sign_group(),
        FiniteMatrixGroup::symmetric(2),
        FiniteMatrixGroup::symmetric(3),
        FiniteMatrixGroup::cyclic4(),
    ];
    let mut rng = sample::rng(31);
    for g in &groups {
        let w = weyl_embedding(g);
        for _ in 0..8 {
            let f = reynolds(&sample::random_polynomial(&mut rng, g.dim(), 6, 7), g).unwrap();
            let back = w.restrict(&w.lift(&f).unwrap()).unwrap();
            assert_eq!(back, f, "section identity for order {}", g.order());
        }
    }
}

#[test]
fn weyl_section_sweep_reports() {
    let report = weyl_section_check(&FiniteMatrixGroup::symmetric(2), 4).unwrap();
    assert!(report.pass());
    assert_eq!((report.dim, report.order, report.max_degree), (2, 2, 4));
    assert!(report.checked > 0);
}

#[test]
fn weyl_lift_is_block_permutation_invariant() {
    let g = FiniteMatrixGroup::symmetric(2);
    let w = weyl_embedding(&g);
    let f = reynolds(&p("x1*x2 + x1^3", 2), &g).unwrap();
    let j = w.lift(&f).unwrap();
    let n = g.dim();
    for k in 0..g.order() {
        let perm = w.block_permutation(k);
        // permutation matrix on E sending block i to block perm[i]
        let mut pm = QMatrix::zeros(w.ambient_dim(), w.ambient_dim());
        for (i, &pi) in perm.iter().enumerate() {
            for c in 0..n {
                pm.set(pi * n + c, i * n + c, qi(1));
            }
        }
        assert_eq!(j.compose_linear(&pm), j, "block translation by element {k}");
        // the defining equivariance: L(g_k v) = P_k^T L(v)
        let lg = w.matrix().matmul(g.element(k));
        assert_eq!(pm.transpose().matmul(w.matrix()), lg);
    }
}

#[test]
fn operator_norms() {
    let mu = operator_norm_mu(&FiniteMatrixGroup::symmetric(3));
    assert_eq!(mu.value, qi(1));
    assert_eq!(mu.kind, MuBoundKind::Exact);

    let mu = operator_norm_mu(&FiniteMatrixGroup::sign_group());
    assert_eq!(mu.value, qi(1));
    assert_eq!(mu.kind, MuBoundKind::Exact);

    let m = QMatrix::from_rows(vec![
        vec![qi(0), qi(2)],
        vec![q(1, 2), qi(0)],
    ]);
    let g = FiniteMatrixGroup::from_generators(&[m], 4).unwrap();
    assert_eq!(g.order(), 2);
    let mu = operator_norm_mu(&g);
    assert_eq!(mu.value, qi(2));
    assert_eq!(mu.kind, MuBoundKind::Exact);
}

#[test]
fn operator_norm_falls_back_to_frobenius() {
    // an involution conjugated out of orthogonality: g^T g is not diagonal,
    // true spectral norm is irrational (golden ratio), Frobenius bound 2
    let m = QMatrix::from_i64_rows(&[&[1, 0], &[1, -1]]);
    let g = FiniteMatrixGroup::from_generators(&[m], 4).unwrap();
    assert_eq!(g.order(), 2);
    let mu = operator_norm_mu(&g);
    assert_eq!(mu.kind, MuBoundKind::FrobeniusUpper);
    assert_eq!(mu.value, qi(2));
}

#[test]
fn faa_di_bruno_radius_formula() {
    assert_eq!(faa_di_bruno_radius(&qi(1), 1, &qi(1)), qi(1));
    assert_eq!(faa_di_bruno_radius(&qi(2), 3, &qi(1)), qi(18));
    assert_eq!(faa_di_bruno_radius(&q(1, 2), 2, &qi(2)), qi(4));
}
