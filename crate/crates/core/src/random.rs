//! Random kets, unitaries and ensembles for property tests and demos.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::ensemble::{EnsembleElement, RhoEnsemble};
use crate::linalg::{orthogonal_residual, ComplexMatrix, ComplexVector};

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unnormalized complex Gaussian vector.
pub fn gaussian_vector(dim: usize, rng: &mut impl Rng) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| gaussian(rng)).collect()).expect("finite samples")
}

/// Uniformly distributed unit ket.
pub fn random_ket(dim: usize, rng: &mut impl Rng) -> ComplexVector {
    loop {
        if let Some(v) = gaussian_vector(dim, rng).normalized() {
            return v;
        }
    }
}

/// Haar-distributed unitary, from Gram-Schmidt on Gaussian columns.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut columns: Vec<ComplexVector> = Vec::with_capacity(dim);
    while columns.len() < dim {
        if let Some(q) = orthogonal_residual(&gaussian_vector(dim, rng), &columns) {
            columns.push(q);
        }
    }
    ComplexMatrix::from_columns(&columns).expect("square")
}

/// `A + A†` with Gaussian `A`.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let a = ComplexMatrix::new(dim, dim, (0..dim * dim).map(|_| gaussian(rng)).collect())
        .expect("finite samples");
    a.add(&a.adjoint())
}

/// Ensemble of `order` random kets in dimension `dim` with random weights
/// bounded away from zero.
pub fn random_ensemble(dim: usize, order: usize, rng: &mut impl Rng) -> RhoEnsemble {
    let raw: Vec<f64> = (0..order).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let elements = raw
        .iter()
        .map(|w| EnsembleElement::new(random_ket(dim, rng), w / total))
        .collect();
    RhoEnsemble::new(elements).expect("valid random ensemble")
}
