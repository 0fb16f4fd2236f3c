use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::random::{random_hermitian, random_ket};
use crate::{DEFAULT_RANK_TOL, DEFAULT_TOL};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn bell() -> ComplexVector {
    let h = 1.0 / 2f64.sqrt();
    ComplexVector::from_real(&[h, 0.0, 0.0, h]).unwrap()
}

#[test]
fn eig_identity() {
    let eig = eig_hermitian(&ComplexMatrix::identity(2), DEFAULT_TOL).unwrap();
    assert_eq!(eig.values.len(), 2);
    for v in &eig.values {
        assert!((v - 1.0).abs() < 1e-15);
    }
    assert!(gram_deviation(&eig.vectors) < 1e-15);
}

#[test]
fn eig_diagonal() {
    let m = ComplexMatrix::from_real_rows(&[&[0.25, 0.0], &[0.0, 0.75]]).unwrap();
    let eig = eig_hermitian(&m, DEFAULT_TOL).unwrap();
    assert!((eig.values[0] - 0.75).abs() < 1e-15);
    assert!((eig.values[1] - 0.25).abs() < 1e-15);
    assert!((eig.vectors[0].fidelity(&ComplexVector::basis(2, 1)) - 1.0).abs() < 1e-15);
    assert!((eig.vectors[1].fidelity(&ComplexVector::basis(2, 0)) - 1.0).abs() < 1e-15);
}

#[test]
fn eig_reconstructs_random_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dim in 1..=6 {
        let h = random_hermitian(dim, &mut rng);
        let eig = eig_hermitian(&h, DEFAULT_TOL).unwrap();
        // Oracle: multiply the returned factors back together entry by entry.
        let mut back = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                back[(i, j)] = eig
                    .values
                    .iter()
                    .zip(&eig.vectors)
                    .map(|(l, v)| v[i] * v[j].conj() * l)
                    .sum();
            }
        }
        assert!(back.max_abs_diff(&h) < 1e-9);
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        assert!(gram_deviation(&eig.vectors) < 1e-12);
    }
}

#[test]
fn eig_rejects_non_hermitian() {
    let m = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]])
        .unwrap();
    assert!(matches!(eig_hermitian(&m, DEFAULT_TOL), Err(crate::Error::NotHermitian { .. })));
}

#[test]
fn eig_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = random_hermitian(4, &mut rng);
    let a = eig_hermitian(&h, DEFAULT_TOL).unwrap();
    let b = eig_hermitian(&h, DEFAULT_TOL).unwrap();
    assert_eq!(a.values, b.values);
    assert_eq!(a.vectors, b.vectors);
}

#[test]
fn rank_counts_values_above_threshold() {
    assert_eq!(numerical_rank(&[0.5, 0.5], 1e-12), 2);
    assert_eq!(numerical_rank(&[1.0, 3e-16], 1e-12), 1);
    assert_eq!(numerical_rank(&[], 1e-12), 0);
}

#[test]
fn rank_of_random_projector_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in 2..=5 {
        let psi = random_ket(dim, &mut rng);
        let eig = eig_hermitian(&ComplexMatrix::projector(&psi), DEFAULT_TOL).unwrap();
        assert_eq!(numerical_rank(&eig.values, DEFAULT_RANK_TOL), 1);
    }
}

#[test]
fn completion_of_e1_is_canonical() {
    let out = complete_orthonormal(&[ComplexVector::basis(2, 0)], 2, DEFAULT_TOL).unwrap();
    assert_eq!(out, vec![ComplexVector::basis(2, 0), ComplexVector::basis(2, 1)]);
}

#[test]
fn completion_of_plus_is_orthonormal() {
    let plus = ComplexVector::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap();
    let out = complete_orthonormal(std::slice::from_ref(&plus), 2, DEFAULT_TOL).unwrap();
    assert_eq!(out[0], plus);
    assert!(gram_deviation(&out) < 1e-15);
}

#[test]
fn completion_of_empty_set() {
    let out = complete_orthonormal(&[], 3, DEFAULT_TOL).unwrap();
    let canonical: Vec<_> = (0..3).map(|i| ComplexVector::basis(3, i)).collect();
    assert_eq!(out, canonical);
}

#[test]
fn completion_errors() {
    let e0 = ComplexVector::basis(2, 0);
    assert!(matches!(
        complete_orthonormal(&[e0.clone(), e0.clone()], 2, DEFAULT_TOL),
        Err(crate::Error::NotOrthonormal { .. })
    ));
    let three: Vec<_> = (0..3).map(|i| ComplexVector::basis(3, i)).collect();
    assert!(matches!(
        complete_orthonormal(&three, 2, DEFAULT_TOL),
        Err(crate::Error::DimensionMismatch(_))
    ));
    assert!(complete_orthonormal(&[e0], 3, DEFAULT_TOL).is_err());
}

#[test]
fn tensor_of_basis_kets() {
    let e0 = ComplexVector::basis(2, 0);
    assert_eq!(tensor_ket(&e0, &e0), ComplexVector::basis(4, 0));
    let plus = ComplexVector::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap();
    let h = 1.0 / 2f64.sqrt();
    assert_eq!(tensor_ket(&plus, &e0), ComplexVector::from_real(&[h, 0.0, h, 0.0]).unwrap());
}

#[test]
fn tensor_matches_index_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = random_ket(3, &mut rng);
    let m = random_ket(4, &mut rng);
    let t = tensor_ket(&s, &m);
    assert_eq!(t.dim(), 12);
    for i in 0..3 {
        for k in 0..4 {
            assert_eq!(t[i * 4 + k], s[i] * m[k]);
        }
    }
}

#[test]
fn partial_trace_of_bell_is_maximally_mixed() {
    let rho = partial_trace_m_ket(&bell(), 2, 2).unwrap();
    assert!(rho.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
}

#[test]
fn partial_trace_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = random_ket(3, &mut rng);
    let m = random_ket(2, &mut rng);
    let rho = partial_trace_m_ket(&tensor_ket(&s, &m), 3, 2).unwrap();
    assert!(rho.max_abs_diff(&ComplexMatrix::projector(&s)) < 1e-12);
}

#[test]
fn partial_trace_matches_summation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let psi = random_ket(6, &mut rng);
    let rho = partial_trace_m_ket(&psi, 3, 2).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let oracle: C64 = (0..2).map(|k| psi[i * 2 + k] * psi[j * 2 + k].conj()).sum();
            assert!((rho[(i, j)] - oracle).norm() < 1e-12);
        }
    }
    // The operator route agrees with the ket route.
    let via_operator = partial_trace_m(&ComplexMatrix::projector(&psi), 3, 2).unwrap();
    assert!(via_operator.max_abs_diff(&rho) < 1e-15);
}

#[test]
fn partial_trace_dimension_errors() {
    assert!(partial_trace_m_ket(&bell(), 3, 2).is_err());
    assert!(partial_trace_m(&ComplexMatrix::zeros(4, 3), 2, 2).is_err());
}

#[test]
fn schmidt_of_bell() {
    let form = schmidt_decompose(&bell(), 2, 2, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(form.rank(), 2);
    for c in &form.coefficients {
        assert!((c - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }
    assert!(form.reconstruct().max_abs_diff(&bell()) < 1e-15);
}

#[test]
fn schmidt_of_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = tensor_ket(&random_ket(3, &mut rng), &random_ket(2, &mut rng));
    let form = schmidt_decompose(&v, 3, 2, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(form.rank(), 1);
    assert!((form.coefficients[0] - 1.0).abs() < 1e-14);
}

#[test]
fn schmidt_of_unequal_pair() {
    // √0.1 |00> + √0.9 |11>, listed minor-first to exercise the sort.
    let v = ComplexVector::from_real(&[0.1f64.sqrt(), 0.0, 0.0, 0.9f64.sqrt()]).unwrap();
    let form = schmidt_decompose(&v, 2, 2, DEFAULT_RANK_TOL).unwrap();
    assert!((form.coefficients[0] - 0.9f64.sqrt()).abs() < 1e-15);
    assert!((form.coefficients[1] - 0.1f64.sqrt()).abs() < 1e-15);
}

/// Rank-2 state on 4x3 that an SVD-based Schmidt form once got wrong.
#[test]
#[allow(clippy::excessive_precision)]
fn schmidt_of_rank_deficient_4x3() {
    let raw = [
        (-5.98311394526300500e-2, 1.14814775134388675e-1),
        (7.73389802497650020e-2, -1.57857203929198581e-1),
        (-2.19743181799953446e-1, -3.05727135988057286e-2),
        (-2.82402517282299925e-1, 1.47763269703224287e-1),
        (-6.63748110619134107e-2, -2.42932431458386167e-1),
        (3.65528081252449843e-1, 2.39176705495836472e-1),
        (-2.19542269048306982e-1, 1.24265984078279074e-2),
        (1.21723995918413097e-1, -2.60812993408470417e-1),
        (-1.19952303286194828e-1, 2.99716435215521826e-1),
        (-3.53392428288452132e-1, -4.07873746944786703e-2),
        (2.21220210202597578e-1, 1.37668451345352542e-2),
        (2.97468993408914972e-1, -2.18438108604405906e-1),
    ];
    let v = ComplexVector::new(raw.iter().map(|&(re, im)| c(re, im)).collect()).unwrap();
    let form = schmidt_decompose(&v, 4, 3, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(form.rank(), 2);
    assert!(form.reconstruct().max_abs_diff(&v) < 1e-12);
    let squares: f64 = form.coefficients.iter().map(|p| p * p).sum();
    assert!((squares - 1.0).abs() < 1e-12);
}

#[test]
fn schmidt_errors() {
    assert!(matches!(
        schmidt_decompose(&bell(), 2, 3, DEFAULT_RANK_TOL),
        Err(crate::Error::DimensionMismatch(_))
    ));
    assert!(matches!(
        schmidt_decompose(&bell().scale_real(2.0), 2, 2, DEFAULT_RANK_TOL),
        Err(crate::Error::NotNormalized { .. })
    ));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn partial_trace_is_psd_with_unit_trace(seed in any::<u64>(), ds in 1usize..5, dm in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_ket(ds * dm, &mut rng);
            let rho = partial_trace_m_ket(&psi, ds, dm).unwrap();
            prop_assert!(rho.hermitian_deviation() < 1e-15);
            prop_assert!((rho.trace() - C64::new(psi.norm_sqr(), 0.0)).norm() < 1e-10);
            let eig = eig_hermitian(&rho, DEFAULT_TOL).unwrap();
            prop_assert!(eig.values.iter().all(|&w| w > -1e-12));
        }

        #[test]
        fn schmidt_round_trip(seed in any::<u64>(), ds in 1usize..5, dm in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let psi = random_ket(ds * dm, &mut rng);
            let form = schmidt_decompose(&psi, ds, dm, DEFAULT_RANK_TOL).unwrap();
            prop_assert!(form.reconstruct().max_abs_diff(&psi) < 1e-9);
            prop_assert!(gram_deviation(&form.left_kets) < 1e-10);
            prop_assert!(gram_deviation(&form.right_kets) < 1e-10);
            let total: f64 = form.coefficients.iter().map(|c| c * c).sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
            prop_assert!(form.coefficients.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn completion_is_prefix_preserving_basis(seed in any::<u64>(), dim in 1usize..7, keep in 0usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let keep = keep.min(dim);
            let u = crate::random::random_unitary(dim, &mut rng);
            let partial: Vec<_> = u.columns().into_iter().take(keep).collect();
            let out = complete_orthonormal(&partial, dim, DEFAULT_TOL).unwrap();
            prop_assert_eq!(out.len(), dim);
            prop_assert_eq!(&out[..keep], &partial[..]);
            prop_assert!(gram_deviation(&out) < 1e-10);
        }

        #[test]
        fn product_trace_recovers_factor(seed in any::<u64>(), ds in 1usize..5, dm in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_ket(ds, &mut rng);
            let m = crate::random::gaussian_vector(dm, &mut rng);
            let rho = partial_trace_m_ket(&tensor_ket(&s, &m), ds, dm).unwrap();
            let expected = ComplexMatrix::projector(&s).scale_real(m.norm_sqr());
            prop_assert!(rho.max_abs_diff(&expected) < 1e-12 * m.norm_sqr().max(1.0));
        }
    }
}
