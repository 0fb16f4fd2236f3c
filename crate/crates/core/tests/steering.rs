mod common;

use common::*;
use hjw::random::{random_ket, random_unitary};
use hjw::{
    ensemble_from_basis, measure_ancilla, purify, steer, ComplexMatrix, Error, JointState,
    DEFAULT_RANK_TOL,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bell_in_computational_basis() {
    let m = measure_ancilla(&bell(), &[e(2, 0), e(2, 1)], DEFAULT_RANK_TOL).unwrap();
    assert_eq!(m.mixture.len(), 2);
    for (j, term) in m.mixture.iter().enumerate() {
        assert!((term.weight - 0.5).abs() < 1e-15);
        assert!(term.s_ket.max_abs_diff(&e(2, j)) < 1e-15);
        assert_eq!(term.m_ket, e(2, j));
    }
    let mut diag = ComplexMatrix::zeros(4, 4);
    diag[(0, 0)] = 0.5.into();
    diag[(3, 3)] = 0.5.into();
    assert!(m.post_density_sm.max_abs_diff(&diag) < 1e-15);
}

#[test]
fn bell_in_plus_minus_basis_leaves_s_untouched() {
    let m = measure_ancilla(&bell(), &[plus(), minus()], DEFAULT_RANK_TOL).unwrap();
    assert!((m.mixture[0].s_ket.fidelity(&plus()) - 1.0).abs() < 1e-15);
    assert!((m.mixture[1].s_ket.fidelity(&minus()) - 1.0).abs() < 1e-15);
    assert!(m.s_marginal().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
}

#[test]
fn product_state_has_one_outcome() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let psi = random_ket(2, &mut rng);
    let joint = JointState::product(&psi, &e(3, 1)).unwrap();
    let basis: Vec<_> = (0..3).map(|i| e(3, i)).collect();
    let m = measure_ancilla(&joint, &basis, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(m.mixture.len(), 1);
    assert_eq!(m.mixture[0].basis_index, 1);
    assert!((m.mixture[0].weight - 1.0).abs() < 1e-15);
    assert!(m.post_density_sm.max_abs_diff(&ComplexMatrix::projector(joint.vec())) < 1e-15);
}

#[test]
fn mixture_is_the_basis_ensemble() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let joint = JointState::new(random_ket(12, &mut rng), 3, 4).unwrap();
    let basis = random_unitary(4, &mut rng).columns();
    let m = measure_ancilla(&joint, &basis, DEFAULT_RANK_TOL).unwrap();
    let selected = ensemble_from_basis(&joint, &basis, DEFAULT_RANK_TOL).unwrap();
    for ((term, el), b) in m.mixture.iter().zip(selected.ensemble.elements()).zip(selected.ancilla.kets()) {
        assert_eq!(term.weight, el.weight);
        assert_eq!(&term.s_ket, &el.ket);
        assert_eq!(&term.m_ket, b);
    }
}

#[test]
fn single_shot_report() {
    let r = steer(&bell(), &[e(2, 0), e(2, 1)], 1, 99, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(r.counts.iter().sum::<u64>(), 1);
    assert_eq!(r.expected_weights.len(), 2);
}

#[test]
fn plus_minus_frequencies() {
    let r = steer(&bell(), &[plus(), minus()], 10_000, 2024, DEFAULT_RANK_TOL).unwrap();
    for c in &r.counts {
        assert!((*c as f64 - 5000.0).abs() <= 200.0, "count {c}");
    }
    assert!(r.post_density.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
}

#[test]
fn unequal_weight_frequencies() {
    let (joint, ancilla) = purify(&ensemble(&[(e(2, 0), 0.9), (plus(), 0.1)]), 2).unwrap();
    let r = steer(&joint, ancilla.kets(), 10_000, 17, DEFAULT_RANK_TOL).unwrap();
    assert!((r.expected_weights[0] - 0.9).abs() < 1e-12);
    // σ = 30
    assert!((r.counts[0] as f64 - 9000.0).abs() <= 120.0, "count {}", r.counts[0]);
    assert!((r.counts[1] as f64 - 1000.0).abs() <= 120.0, "count {}", r.counts[1]);
}

#[test]
fn reports_repeat_for_a_seed() {
    let a = steer(&bell(), &[plus(), minus()], 777, 5, DEFAULT_RANK_TOL).unwrap();
    let b = steer(&bell(), &[plus(), minus()], 777, 5, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rejects_bad_basis() {
    assert!(matches!(
        measure_ancilla(&bell(), &[e(2, 0), e(2, 0)], DEFAULT_RANK_TOL),
        Err(Error::NotOrthonormalBasis(_))
    ));
}

#[test]
fn steering_is_never_certain_for_mixed_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let joint = JointState::new(random_ket(9, &mut rng), 3, 3).unwrap();
        let basis = random_unitary(3, &mut rng).columns();
        let m = measure_ancilla(&joint, &basis, DEFAULT_RANK_TOL).unwrap();
        assert!(m.mixture.len() > 1);
        assert!(m.mixture.iter().all(|t| t.weight > 0.0 && t.weight < 1.0));
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn measurement_does_not_disturb_s(seed in any::<u64>(), ds in 1usize..4, dm in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let joint = JointState::new(random_ket(ds * dm, &mut rng), ds, dm).unwrap();
            let basis = random_unitary(dm, &mut rng).columns();
            let m = measure_ancilla(&joint, &basis, DEFAULT_RANK_TOL).unwrap();
            prop_assert!(m.s_marginal().max_abs_diff(&joint.reduced_density()) < 1e-9);
        }
    }
}
