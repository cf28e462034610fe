use super::*;
use crate::invariant::FiniteMatrixGroup;
use crate::poly::Polynomial;
use crate::sample;

fn p(s: &str, nvars: usize) -> Polynomial {
    Polynomial::parse(s, nvars).unwrap()
}

fn diagonal_swap() -> FiniteMatrixGroup {
    let m = QMatrix::from_i64_rows(&[
        &[0, 1, 0, 0],
        &[1, 0, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, 1, 0],
    ]);
    FiniteMatrixGroup::from_generators(&[m], 8).unwrap()
}

#[test]
fn artin_basis_single_block_of_two() {
    let b = artin_basis(&[2]).unwrap();
    assert_eq!(b.order(), 2);
    assert_eq!(b.basis(), &[p("1", 2), p("x2", 2)]);
    assert_eq!(b.delta(), &p("x1 - x2", 2));
    assert!(b.elements()[0].is_identity());
}

#[test]
fn artin_basis_trivial_blocks() {
    let b = artin_basis(&[1, 1, 1]).unwrap();
    assert_eq!(b.order(), 1);
    assert_eq!(b.basis(), &[p("1", 3)]);
    assert_eq!(b.delta(), &p("1", 3));
}

#[test]
fn artin_basis_two_blocks_of_two() {
    let b = artin_basis(&[2, 2]).unwrap();
    assert_eq!(b.order(), 4);
    assert_eq!(
        b.basis(),
        &[p("1", 4), p("x4", 4), p("x2", 4), p("x2*x4", 4)]
    );
    let expected = p("x1 - x2", 4).pow(2).mul(&p("x3 - x4", 4).pow(2));
    assert_eq!(b.delta(), &expected);
}

#[test]
fn artin_basis_s3_delta_is_cubed_vandermonde() {
    let b = artin_basis(&[3]).unwrap();
    assert_eq!(b.order(), 6);
    let vandermonde = p("x1 - x2", 3).mul(&p("x1 - x3", 3)).mul(&p("x2 - x3", 3));
    assert_eq!(b.delta(), &vandermonde.pow(3).neg());
}

#[test]
fn size_bound_is_enforced() {
    assert!(matches!(
        artin_basis_capped(&[4], 10),
        Err(CoinvariantError::SizeBoundExceeded { order: 24, cap: 10 })
    ));
    assert!(matches!(
        artin_basis(&[6, 2]),
        Err(CoinvariantError::SizeBoundExceeded { order: 1440, cap: 720 })
    ));
}

#[test]
fn delta_sign_character() {
    // Composing with w permutes the rows h_j(w_i.v) by right multiplication,
    // so Delta picks up exactly the sign of that row permutation.
    for sizes in [vec![2], vec![3], vec![2, 2]] {
        let b = artin_basis(&sizes).unwrap();
        for w in b.elements() {
            let row_perm: Vec<usize> = b
                .elements()
                .iter()
                .map(|wi| {
                    let product = wi.matmul(w);
                    b.elements().iter().position(|e| *e == product).unwrap()
                })
                .collect();
            let mut sign = BigRational::one();
            for i in 0..row_perm.len() {
                for k in i + 1..row_perm.len() {
                    if row_perm[i] > row_perm[k] {
                        sign = -sign;
                    }
                }
            }
            assert_eq!(b.delta().compose_linear(w), b.delta().scale(&sign));
        }
    }
}

#[test]
fn delta_divisibility_reports() {
    let b = artin_basis(&[2]).unwrap();
    let report = delta_divisibility_check(&b);
    assert!(report.pass);
    assert_eq!(report.factors, vec![DeltaFactor { var_i: 1, var_j: 2, exponent: 1 }]);
    assert_eq!(report.cofactor, "1");

    let b = artin_basis(&[3]).unwrap();
    let report = delta_divisibility_check(&b);
    assert!(report.pass);
    assert!(report.factors.iter().all(|f| f.exponent == 3));
    assert_eq!(report.cofactor, "-1");

    let b = artin_basis(&[1, 1, 1]).unwrap();
    let report = delta_divisibility_check(&b);
    assert!(report.pass);
    assert!(report.factors.is_empty());
    assert_eq!(report.cofactor, "1");

    let b = artin_basis(&[2, 2]).unwrap();
    let report = delta_divisibility_check(&b);
    assert!(report.pass);
    assert_eq!(
        report.factors,
        vec![
            DeltaFactor { var_i: 1, var_j: 2, exponent: 2 },
            DeltaFactor { var_i: 3, var_j: 4, exponent: 2 },
        ]
    );
}

#[test]
fn cramer_textbook_cases() {
    let b = artin_basis(&[2]).unwrap();
    assert_eq!(
        cramer_decompose(&p("x1", 2), &b).unwrap(),
        vec![p("x1 + x2", 2), p("-1", 2)]
    );
    let symmetric = p("x1^2 + x2^2", 2);
    assert_eq!(
        cramer_decompose(&symmetric, &b).unwrap(),
        vec![symmetric.clone(), Polynomial::zero(2)]
    );
    assert_eq!(
        cramer_decompose(&p("x2^2", 2), &b).unwrap(),
        vec![p("-1*x1*x2", 2), p("x1 + x2", 2)]
    );
}

#[test]
fn cramer_round_trips() {
    let mut rng = sample::rng(21);
    for sizes in [vec![2], vec![3], vec![2, 2]] {
        let b = artin_basis(&sizes).unwrap();
        for _ in 0..6 {
            let f = sample::random_polynomial(&mut rng, b.nvars(), 5, 5);
            let coeffs = cramer_decompose(&f, &b).unwrap();
            let rebuilt = coeffs
                .iter()
                .zip(b.basis())
                .fold(Polynomial::zero(b.nvars()), |acc, (fj, hj)| acc.add(&hj.mul(fj)));
            assert_eq!(rebuilt, f);
            assert!(coeffs.iter().all(|fj| b.is_w_invariant(fj)));
            assert_eq!(cramer_decompose(&f, &b).unwrap(), coeffs);
        }
    }
}

#[test]
fn subgroup_basis_full_group_keeps_only_constants() {
    let b = artin_basis(&[2]).unwrap();
    let w = FiniteMatrixGroup::symmetric(2);
    assert_eq!(subgroup_basis(&b, &w).unwrap(), vec![p("1", 2)]);
}

#[test]
fn subgroup_basis_trivial_group_keeps_everything() {
    let b = artin_basis(&[2, 2]).unwrap();
    let g = FiniteMatrixGroup::trivial(4);
    assert_eq!(subgroup_basis(&b, &g).unwrap(), b.basis().to_vec());
}

#[test]
fn subgroup_basis_diagonal_swap() {
    let b = artin_basis(&[2, 2]).unwrap();
    let g = diagonal_swap();
    assert_eq!(g.order(), 2);
    let basis = subgroup_basis(&b, &g).unwrap();
    assert_eq!(basis, vec![p("1", 4), p("1/2*x1*x3 + 1/2*x2*x4", 4)]);
}

#[test]
fn subgroup_basis_size_is_the_index() {
    let b = artin_basis(&[3]).unwrap();
    let rotation = QMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let a3 = FiniteMatrixGroup::from_generators(&[rotation], 6).unwrap();
    assert_eq!(a3.order(), 3);
    assert_eq!(subgroup_basis(&b, &a3).unwrap().len(), 2);

    let b = artin_basis(&[2, 2]).unwrap();
    assert_eq!(subgroup_basis(&b, &diagonal_swap()).unwrap().len(), 2);
    assert_eq!(subgroup_basis(&b, &FiniteMatrixGroup::trivial(4)).unwrap().len(), 4);
}

#[test]
fn subgroup_basis_rejects_outsiders() {
    let b = artin_basis(&[2, 2]).unwrap();
    let cross = QMatrix::from_i64_rows(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
    ]);
    let g = FiniteMatrixGroup::from_generators(&[cross], 8).unwrap();
    assert_eq!(subgroup_basis(&b, &g), Err(CoinvariantError::NotASubgroup));

    let wrong_dim = FiniteMatrixGroup::symmetric(2);
    assert_eq!(subgroup_basis(&b, &wrong_dim), Err(CoinvariantError::NotASubgroup));
}

#[test]
fn invariant_decompose_diagonal_example() {
    let b = artin_basis(&[2, 2]).unwrap();
    let g = diagonal_swap();
    let f = p("x1*x3 + x2*x4", 4);
    let pairs = invariant_decompose(&f, &b, &g).unwrap();
    assert_eq!(pairs.len(), 2);
    assert_eq!(pairs[0], (p("1", 4), Polynomial::zero(4)));
    assert_eq!(pairs[1], (p("1/2*x1*x3 + 1/2*x2*x4", 4), p("2", 4)));
}

#[test]
fn invariant_decompose_w_invariant_input() {
    let b = artin_basis(&[2, 2]).unwrap();
    let g = diagonal_swap();
    let f = p("x1*x3 + x1*x4 + x2*x3 + x2*x4", 4);
    let pairs = invariant_decompose(&f, &b, &g).unwrap();
    assert_eq!(pairs[0], (p("1", 4), f.clone()));
    assert!(pairs[1].1.is_zero());
}

#[test]
fn invariant_decompose_zero_and_errors() {
    let b = artin_basis(&[2, 2]).unwrap();
    let g = diagonal_swap();
    let pairs = invariant_decompose(&Polynomial::zero(4), &b, &g).unwrap();
    assert!(pairs.iter().all(|(_, gi)| gi.is_zero()));
    assert_eq!(
        invariant_decompose(&p("x1", 4), &b, &g),
        Err(CoinvariantError::NotInvariant)
    );
}

#[test]
fn invariant_decompose_round_trips() {
    let mut rng = sample::rng(22);
    let b22 = artin_basis(&[2, 2]).unwrap();
    let rotation = QMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let cases: Vec<(CoinvariantBasis, FiniteMatrixGroup)> = vec![
        (b22.clone(), diagonal_swap()),
        (b22, FiniteMatrixGroup::trivial(4)),
        (
            artin_basis(&[3]).unwrap(),
            FiniteMatrixGroup::from_generators(&[rotation], 6).unwrap(),
        ),
    ];
    for (b, g) in &cases {
        for _ in 0..4 {
            let f = crate::invariant::reynolds(
                &sample::random_polynomial(&mut rng, b.nvars(), 5, 5),
                g,
            )
            .unwrap();
            let pairs = invariant_decompose(&f, b, g).unwrap();
            let rebuilt = pairs
                .iter()
                .fold(Polynomial::zero(b.nvars()), |acc, (q, gi)| acc.add(&q.mul(gi)));
            assert_eq!(rebuilt, f);
            assert!(pairs.iter().all(|(_, gi)| b.is_w_invariant(gi)));
        }
    }
}
