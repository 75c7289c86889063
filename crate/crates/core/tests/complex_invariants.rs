//! Structural invariants of the complexes on random valid algebras.

use homcoh_core::algebra::{yau_twist, Kind};
use homcoh_core::bracket::{gerstenhaber_bracket, nr_bracket};
use homcoh_core::cochain::alternator;
use homcoh_core::cohomology::{compute_cohomology, delta_hom_self, delta_one_by_hand, ComplexSpec};
use homcoh_core::random::{conjugate, Generator};
use homcoh_core::rep::HomMorphism;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Associative), Just(Kind::Lie)]
}

fn random_element(g: &mut Generator, spec: &ComplexSpec, n: usize) -> homcoh_core::cohomology::Cochain {
    let space = spec.space(n).unwrap();
    let coords: Vec<_> = (0..space.dim()).map(|_| g.scalar()).collect();
    space.element(&coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_squares_to_zero(seed in any::<u64>(), kind in kind(), n in 1usize..=2) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let spec = ComplexSpec::for_algebra(&a);
        let c = random_element(&mut g, &spec, n);
        prop_assert!(spec.delta(&spec.delta(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn morphism_delta_squares_to_zero(seed in any::<u64>(), kind in kind()) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let spec = ComplexSpec::for_morphism(&HomMorphism::identity(&a));
        let c = random_element(&mut g, &spec, 1);
        prop_assert!(spec.delta(&spec.delta(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn degree_one_differential_matches_hand_formula(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(Kind::Associative);
        let f = g.matrix(a.dim(), a.dim());
        let by_complex = delta_hom_self(&a, &homcoh_core::multilinear::MultilinearMap::from_matrix(&f)).unwrap();
        prop_assert_eq!(by_complex, delta_one_by_hand(&a, &f));
    }

    #[test]
    fn structure_map_squares_to_zero(seed in any::<u64>(), kind in kind()) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let sq = match kind {
            Kind::Associative => gerstenhaber_bracket(&a.alpha, &a.mul, &a.mul).unwrap(),
            Kind::Lie => nr_bracket(&a.alpha, &a.mul, &a.mul).unwrap(),
        };
        prop_assert!(sq.is_zero());
    }

    #[test]
    fn alternator_is_an_idempotent_onto_alternating_maps(seed in any::<u64>(), arity in 1usize..=3) {
        let mut g = Generator::new(seed);
        let f = g.multilinear(arity, 2, 2);
        let once = alternator(&f);
        prop_assert!(once.is_alternating());
        prop_assert_eq!(alternator(&once), once);
    }

    #[test]
    fn cochain_bases_are_admissible_and_deterministic(seed in any::<u64>(), kind in kind(), n in 1usize..=2) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let spec = ComplexSpec::for_algebra(&a);
        let space = spec.space(n).unwrap();
        prop_assert_eq!(&space, &spec.space(n).unwrap());
        for b in space.basis() {
            prop_assert!(spec.admits(&b));
        }
    }

    #[test]
    fn cohomology_dimensions_are_basis_independent(seed in any::<u64>(), kind in kind()) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let p = g.invertible(a.dim());
        let b = conjugate(&a, &p).unwrap();
        let dims = |x| {
            compute_cohomology(&ComplexSpec::for_algebra(x), 1..=2)
                .unwrap()
                .degrees
                .iter()
                .map(|d| (d.dim_c, d.dim_z, d.dim_b, d.dim_h))
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(dims(&a), dims(&b));
    }

    #[test]
    fn rank_nullity_holds_per_degree(seed in any::<u64>(), kind in kind()) {
        let mut g = Generator::new(seed);
        let a = g.valid_algebra(kind);
        let s = compute_cohomology(&ComplexSpec::for_algebra(&a), 1..=2).unwrap();
        prop_assert!(s.warnings.is_empty());
        for d in &s.degrees {
            prop_assert_eq!(d.dim_h + d.dim_b, d.dim_z);
            prop_assert!(d.dim_z <= d.dim_c);
            prop_assert_eq!(d.representatives.len(), d.dim_h);
        }
        // B^2 is the image of C^1, whose kernel is Z^1
        prop_assert_eq!(s.degrees[1].dim_b, s.degrees[0].dim_c - s.degrees[0].dim_z);
    }

    #[test]
    fn yau_twist_by_an_endomorphism_stays_valid(seed in any::<u64>(), kind in kind()) {
        let mut g = Generator::new(seed);
        let s = g.ordinary_in_random_basis(kind);
        let twisted = yau_twist(&s.algebra, &s.gamma).unwrap();
        prop_assert!(twisted.validate().is_valid);
    }
}
