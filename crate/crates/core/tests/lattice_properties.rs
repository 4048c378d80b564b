//! Property tests for the projector lattice and the star product, driven by
//! proptest-generated seeds through the crate's deterministic streams.

use projlogic_core::linalg::max_entry_diff;
use projlogic_core::operators::{
    compatibility_decomposition, lattice_join, lattice_meet, orthocomplement, projector_leq,
    random_proper_projector, CompatibilityDecomposition, Projector,
};
use projlogic_core::rng;
use projlogic_core::starlogic::{
    is_compatible, is_orthogonal, join_meet_membership, star_value, FuzzyEventQL, ProbeSet,
};
use projlogic_core::Tolerances;
use proptest::prelude::*;

fn tolerances() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn de_morgan_holds_for_random_pairs(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-demorgan");
        let p = random_proper_projector(dim, &mut rng);
        let q = random_proper_projector(dim, &mut rng);
        let lhs = orthocomplement(&lattice_join(&p, &q, &tol).unwrap());
        let rhs = lattice_meet(&orthocomplement(&p), &orthocomplement(&q), &tol).unwrap();
        prop_assert!(max_entry_diff(lhs.matrix(), rhs.matrix()) < 1e-9);
    }

    #[test]
    fn orthomodularity_on_forced_ordered_pairs(seed in 0u64..1_000_000, dim in 2usize..=5) {
        // Rescope P to P ^ Q so the pair is ordered, then check
        // Q = P' v (not P' ^ Q).
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-orthomodular");
        let p = random_proper_projector(dim, &mut rng);
        let q = random_proper_projector(dim, &mut rng);
        let p_scoped = lattice_meet(&p, &q, &tol).unwrap();
        prop_assert!(projector_leq(&p_scoped, &q, &tol).unwrap());
        let inner = lattice_meet(&orthocomplement(&p_scoped), &q, &tol).unwrap();
        let outer = lattice_join(&p_scoped, &inner, &tol).unwrap();
        prop_assert!(max_entry_diff(outer.matrix(), q.matrix()) < 1e-9);
    }

    #[test]
    fn orthomodularity_on_sub_projector_pairs(seed in 0u64..1_000_000, dim in 3usize..=5) {
        // A sub-projector of Q built from part of its range basis gives a
        // nontrivial ordered pair.
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-orthomodular-sub");
        let q = random_proper_projector(dim, &mut rng);
        prop_assume!(q.rank() >= 2);
        let basis = q.range_basis();
        let sub = Projector::from_orthonormal_columns(&basis[..q.rank() - 1]);
        prop_assert!(projector_leq(&sub, &q, &tol).unwrap());
        let inner = lattice_meet(&orthocomplement(&sub), &q, &tol).unwrap();
        let outer = lattice_join(&sub, &inner, &tol).unwrap();
        prop_assert!(max_entry_diff(outer.matrix(), q.matrix()) < 1e-9);
    }

    #[test]
    fn meet_is_a_greatest_lower_bound(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-glb");
        let p = random_proper_projector(dim, &mut rng);
        let q = random_proper_projector(dim, &mut rng);
        let meet = lattice_meet(&p, &q, &tol).unwrap();
        prop_assert!(projector_leq(&meet, &p, &tol).unwrap());
        prop_assert!(projector_leq(&meet, &q, &tol).unwrap());
        // The meet itself and its sub-projectors are lower bounds below it.
        prop_assert!(projector_leq(&meet, &meet, &tol).unwrap());
        if meet.rank() >= 1 {
            let basis = meet.range_basis();
            for take in 1..=basis.len() {
                let sub = Projector::from_orthonormal_columns(&basis[..take]);
                prop_assert!(projector_leq(&sub, &p, &tol).unwrap());
                prop_assert!(projector_leq(&sub, &q, &tol).unwrap());
                prop_assert!(projector_leq(&sub, &meet, &tol).unwrap());
            }
        }
    }

    #[test]
    fn compatibility_decomposition_reconstructs_commuting_pairs(
        seed in 0u64..1_000_000,
        dim in 2usize..=5,
    ) {
        // Commuting pair built from a shared eigenbasis.
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-compat");
        let frame = projlogic_core::operators::haar_unitary(dim, &mut rng);
        let columns: Vec<_> = (0..dim)
            .map(|j| nalgebra::DVector::from(frame.column(j).clone_owned()))
            .collect();
        let p = Projector::from_orthonormal_columns(&columns[..1 + dim / 2]);
        let q = Projector::from_orthonormal_columns(&columns[dim / 2..]);
        match compatibility_decomposition(&p, &q, &tol).unwrap() {
            CompatibilityDecomposition::Compatible { p_only, q_only, shared } => {
                let p_back = lattice_join(&p_only, &shared, &tol).unwrap();
                let q_back = lattice_join(&q_only, &shared, &tol).unwrap();
                prop_assert!(max_entry_diff(p_back.matrix(), p.matrix()) < 1e-8);
                prop_assert!(max_entry_diff(q_back.matrix(), q.matrix()) < 1e-8);
            }
            CompatibilityDecomposition::Incompatible { commutator_norm } => {
                prop_assert!(commutator_norm < 1e-9, "pair should commute");
            }
        }
    }

    #[test]
    fn star_conjugation_and_classification_agree(seed in 0u64..1_000_000, dim in 2usize..=4) {
        let tol = tolerances();
        let mut rng = rng::stream(seed, "prop-star");
        let p = random_proper_projector(dim, &mut rng);
        let q = random_proper_projector(dim, &mut rng);
        let a = FuzzyEventQL::from_projector(&p);
        let b = FuzzyEventQL::from_projector(&q);
        let probes = ProbeSet::build(dim, &[a.generator(), b.generator()], 16, &mut rng);

        for point in probes.points() {
            let fwd = star_value(&a, &b, point);
            let rev = star_value(&b, &a, point);
            prop_assert!((fwd - rev.conj()).norm() < 1e-10);
        }

        let compatible = is_compatible(&a, &b, &probes, &tol).unwrap();
        let orthogonal = is_orthogonal(&a, &b, &probes, &tol).unwrap();
        prop_assert!(!orthogonal || compatible, "orthogonal implies compatible");

        match join_meet_membership(&a, &b, &probes, &tol) {
            Ok(jm) => {
                prop_assert!(compatible);
                // Star meet/join certified against the kernel lattice inside
                // join_meet_membership; cross-check the order relations.
                let meet_proj = Projector::new(jm.meet.generator().clone(), &tol).unwrap();
                let join_proj = Projector::new(jm.join.generator().clone(), &tol).unwrap();
                prop_assert!(projector_leq(&meet_proj, &p, &tol).unwrap());
                prop_assert!(projector_leq(&p, &join_proj, &tol).unwrap());
            }
            Err(_) => prop_assert!(!compatible),
        }
    }
}
