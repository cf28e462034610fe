use super::*;
use crate::invariant::reynolds;
use crate::sample;

fn p(s: &str, nvars: usize) -> Polynomial {
    Polynomial::parse(s, nvars).unwrap()
}

fn neg_one() -> QMatrix {
    QMatrix::from_i64_rows(&[&[-1]])
}

fn sign_both() -> RepresentationPair {
    RepresentationPair::from_generators(&[(neg_one(), neg_one())], 4).unwrap()
}

fn swap_both() -> RepresentationPair {
    RepresentationPair::diagonal(&FiniteMatrixGroup::symmetric(2))
}

#[test]
fn pair_construction() {
    let pair = sign_both();
    assert_eq!(pair.order(), 2);
    assert_eq!((pair.source_dim(), pair.target_dim()), (1, 1));
    assert_eq!(pair.source_group().order(), 2);

    let pair = swap_both();
    assert_eq!(pair.order(), 2);
    assert_eq!((pair.source_dim(), pair.target_dim()), (2, 2));

    assert_eq!(
        RepresentationPair::from_generators(&[], 4),
        Err(EquivariantError::BadGenerator)
    );
    let rect = QMatrix::zeros(1, 2);
    assert_eq!(
        RepresentationPair::from_generators(&[(rect, neg_one())], 4),
        Err(EquivariantError::BadGenerator)
    );
}

#[test]
fn unequal_actions_share_one_abstract_group() {
    // trivial on the source, sign on the target: the combined group has
    // order two even though the source image is trivial
    let pair =
        RepresentationPair::from_generators(&[(QMatrix::identity(1), neg_one())], 4).unwrap();
    assert_eq!(pair.order(), 2);
    assert_eq!(pair.source_group().order(), 1);
}

#[test]
fn equivariance_check_gates_construction() {
    let pair = swap_both();
    let ok = EquivariantMap::new(&pair, vec![p("x1", 2), p("x2", 2)]).unwrap();
    assert_eq!(ok.degree(), 1);
    assert_eq!(
        EquivariantMap::new(&pair, vec![p("x1", 2), p("x1", 2)]).unwrap_err(),
        EquivariantError::NotEquivariant
    );
    assert_eq!(
        EquivariantMap::new(&pair, vec![p("x1", 2)]).unwrap_err(),
        EquivariantError::ComponentCountMismatch { expected: 2, got: 1 }
    );
    assert_eq!(
        EquivariantMap::new(&pair, vec![p("x1", 3), p("x2", 3)]).unwrap_err(),
        EquivariantError::DimensionMismatch { expected: 2, got: 3 }
    );
}

#[test]
fn average_projects_onto_equivariants() {
    let pair = swap_both();
    let avg = pair.average(&[p("x1", 2), Polynomial::zero(2)]).unwrap();
    assert_eq!(avg, vec![p("1/2*x1", 2), p("1/2*x2", 2)]);
    assert!(pair.is_equivariant(&avg));

    // already equivariant maps are fixed points
    let eq = vec![p("x1^2", 2), p("x2^2", 2)];
    assert_eq!(pair.average(&eq).unwrap(), eq);

    let pair = sign_both();
    assert_eq!(
        pair.average(&[p("x1^2 + x1", 1)]).unwrap(),
        vec![p("x1", 1)]
    );
}

#[test]
fn sign_generators_are_the_identity_map() {
    let gens = equivariant_module_generators(&sign_both()).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].components(), &[p("x1", 1)]);
}

#[test]
fn swap_generators_are_constant_and_identity() {
    let gens = equivariant_module_generators(&swap_both()).unwrap();
    assert_eq!(gens.len(), 2);
    assert_eq!(gens[0].components(), &[p("1", 2), p("1", 2)]);
    assert_eq!(gens[1].components(), &[p("x1", 2), p("x2", 2)]);
}

#[test]
fn trivial_group_generators_are_the_constant_maps() {
    let pair = RepresentationPair::diagonal(&FiniteMatrixGroup::trivial(1));
    let gens = equivariant_module_generators(&pair).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].components(), &[p("1", 1)]);
}

#[test]
fn opposite_sign_actions_leave_no_generators() {
    // source sees -1, target is trivial: equivariants are the even maps
    let even =
        RepresentationPair::from_generators(&[(neg_one(), QMatrix::identity(1))], 4).unwrap();
    let gens = equivariant_module_generators(&even).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].components(), &[p("1", 1)]);

    // trivial source, sign target: only the zero map commutes
    let odd =
        RepresentationPair::from_generators(&[(QMatrix::identity(1), neg_one())], 4).unwrap();
    assert!(equivariant_module_generators(&odd).unwrap().is_empty());
}

#[test]
fn decompose_sign_examples() {
    let pair = sign_both();
    let sigma = invariant_generators(pair.source_group()).unwrap();
    assert_eq!(sigma.generators(), &[p("x1^2", 1)]);
    let gens = equivariant_module_generators(&pair).unwrap();

    let cube = EquivariantMap::new(&pair, vec![p("x1^3", 1)]).unwrap();
    assert_eq!(decompose_equivariant(&cube, &sigma, &gens).unwrap(), vec![p("x1", 1)]);

    let ident = EquivariantMap::new(&pair, vec![p("x1", 1)]).unwrap();
    assert_eq!(decompose_equivariant(&ident, &sigma, &gens).unwrap(), vec![p("1", 1)]);
}

#[test]
fn decompose_swap_square_map() {
    let pair = swap_both();
    let w = FiniteMatrixGroup::symmetric(2);
    let sigma =
        GeneratorSystem::new(vec![p("x1 + x2", 2), p("x1*x2", 2)], w).unwrap();
    let gens = equivariant_module_generators(&pair).unwrap();
    let f = EquivariantMap::new(&pair, vec![p("x1^2", 2), p("x2^2", 2)]).unwrap();
    let l = decompose_equivariant(&f, &sigma, &gens).unwrap();
    assert_eq!(l, vec![p("-1*x2", 2), p("x1", 2)]);
    assert_eq!(reconstruct(&l, &sigma, &gens).unwrap(), f.components());
}

#[test]
fn decompose_without_generators_fails() {
    let pair = sign_both();
    let sigma = invariant_generators(pair.source_group()).unwrap();
    let f = EquivariantMap::new(&pair, vec![p("x1", 1)]).unwrap();
    assert_eq!(
        decompose_equivariant(&f, &sigma, &[]),
        Err(EquivariantError::NotInModule { degree: 1 })
    );
}

#[test]
fn decompose_round_trips_random_module_combinations() {
    let mut rng = sample::rng(31);
    let pairs = vec![
        sign_both(),
        swap_both(),
        RepresentationPair::diagonal(&FiniteMatrixGroup::cyclic4()),
    ];
    for pair in &pairs {
        let sigma = invariant_generators(pair.source_group()).unwrap();
        let gens = equivariant_module_generators(pair).unwrap();
        for _ in 0..5 {
            let n1 = pair.source_dim();
            let mut components = vec![Polynomial::zero(n1); pair.target_dim()];
            for g in &gens {
                let q = reynolds(
                    &sample::random_polynomial(&mut rng, n1, 4, 4),
                    pair.source_group(),
                )
                .unwrap();
                for (t, c) in g.components().iter().enumerate() {
                    components[t] = components[t].add(&c.mul(&q));
                }
            }
            let f = EquivariantMap::new(pair, components).unwrap();
            let l = decompose_equivariant(&f, &sigma, &gens).unwrap();
            assert_eq!(reconstruct(&l, &sigma, &gens).unwrap(), f.components());
            for (lj, g) in l.iter().zip(&gens) {
                let coeff = lj.compose(sigma.generators()).unwrap();
                assert!(crate::invariant::is_invariant(&coeff, pair.source_group()).unwrap());
                assert!(pair.is_equivariant(g.components()));
            }
        }
    }
}

#[test]
fn hf_route_reconstructs_textbook_maps() {
    let pair = sign_both();
    let cube = EquivariantMap::new(&pair, vec![p("x1^3", 1)]).unwrap();
    let dec = hf_cross_check(&cube).unwrap();
    assert_eq!(dec.reconstruct(1, 1), cube.components());
    assert!(!dec.maps.is_empty());

    let pair = swap_both();
    let f = EquivariantMap::new(&pair, vec![p("x1^2", 2), p("x2^2", 2)]).unwrap();
    let dec = hf_cross_check(&f).unwrap();
    assert_eq!(dec.reconstruct(2, 2), f.components());
    for m in &dec.maps {
        assert!(pair.is_equivariant(m.components()));
    }
    for h in &dec.coefficients {
        assert!(crate::invariant::is_invariant(h, pair.source_group()).unwrap());
    }
}

#[test]
fn hf_route_matches_direct_route_on_random_maps() {
    let mut rng = sample::rng(32);
    for pair in [sign_both(), swap_both()] {
        let sigma = invariant_generators(pair.source_group()).unwrap();
        let gens = equivariant_module_generators(&pair).unwrap();
        for _ in 0..5 {
            let n1 = pair.source_dim();
            let mut components = vec![Polynomial::zero(n1); pair.target_dim()];
            for g in &gens {
                let q = reynolds(
                    &sample::random_polynomial(&mut rng, n1, 3, 3),
                    pair.source_group(),
                )
                .unwrap();
                for (t, c) in g.components().iter().enumerate() {
                    components[t] = components[t].add(&c.mul(&q));
                }
            }
            let f = EquivariantMap::new(&pair, components).unwrap();
            let l = decompose_equivariant(&f, &sigma, &gens).unwrap();
            let direct = reconstruct(&l, &sigma, &gens).unwrap();
            let via_hf = hf_cross_check(&f).unwrap().reconstruct(n1, pair.target_dim());
            assert_eq!(direct, f.components());
            assert_eq!(via_hf, f.components());
        }
    }
}

#[test]
fn zero_map_decomposes_to_zero() {
    let pair = swap_both();
    let sigma = invariant_generators(pair.source_group()).unwrap();
    let gens = equivariant_module_generators(&pair).unwrap();
    let zero = EquivariantMap::new(&pair, vec![Polynomial::zero(2), Polynomial::zero(2)]).unwrap();
    assert!(zero.is_zero());
    let l = decompose_equivariant(&zero, &sigma, &gens).unwrap();
    assert!(l.iter().all(Polynomial::is_zero));
    let dec = hf_cross_check(&zero).unwrap();
    assert!(dec.maps.is_empty());
}
