//! Constructive toolkit for density-matrix ensembles and their purifications.
//!
//! Given a pure state of a system `S` and an ancillary system `M`, every
//! decomposition of the reduced state of `S` into a weighted set of kets (a
//! ρ-ensemble) is correlated with an orthonormal set of kets on `M` (its
//! ancilla). This crate builds those correlations explicitly:
//!
//! * [`purify`] / [`match_purification`] attach an ancilla to an ensemble,
//! * [`ensemble_from_basis`] reads the ensemble selected by a basis of `M`,
//! * [`umap_between`] and [`apply_unitary_umap`] relate two ensembles of the
//!   same density matrix through a unitary on `M`,
//! * [`ensemble_containing`] builds an ensemble with a chosen first element,
//! * [`steering`] simulates measuring the ancilla and sampling outcomes.
//!
//! Kets on `S ⊗ M` use an S-major layout: flat index `i * dim_m + k`.
//!
//! ```
//! use hjw::{
//!     complete_orthonormal, ensemble_from_basis, ensembles_equal, purify, umap_between,
//!     ComplexVector, RhoEnsemble, DEFAULT_RANK_TOL, DEFAULT_TOL,
//! };
//!
//! let h = std::f64::consts::FRAC_1_SQRT_2;
//! let plus_minus = RhoEnsemble::from_pairs(vec![
//!     (ComplexVector::from_real(&[h, h])?, 0.5),
//!     (ComplexVector::from_real(&[h, -h])?, 0.5),
//! ])?;
//!
//! // Purify, then read the ensemble back through the ancilla basis.
//! let (joint, ancilla) = purify(&plus_minus, 2)?;
//! let basis = complete_orthonormal(ancilla.kets(), 2, DEFAULT_TOL)?;
//! let back = ensemble_from_basis(&joint, &basis, DEFAULT_RANK_TOL)?;
//! assert!(ensembles_equal(&back.ensemble, &plus_minus, 1e-12));
//!
//! // Same density, different ensemble: relate them by a U-map.
//! let computational = RhoEnsemble::from_pairs(vec![
//!     (ComplexVector::basis(2, 0), 0.5),
//!     (ComplexVector::basis(2, 1), 0.5),
//! ])?;
//! let u = umap_between(&plus_minus, &computational, DEFAULT_TOL)?;
//! assert!(u.mapping_residual(&plus_minus, &computational)? < 1e-12);
//! # Ok::<(), hjw::Error>(())
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod purification;
pub mod random;
pub mod steering;

pub use ensemble::{
    ensemble_to_density, ensembles_equal, is_linearly_independent, validate_ensemble,
    validate_ensemble_with, DensityMatrix, EnsembleElement, EnsembleViolation, RhoEnsemble,
};
pub use error::{Error, Result};
pub use linalg::{
    complete_orthonormal, eig_hermitian, gram_deviation, numerical_rank, partial_trace_m, partial_trace_m_ket,
    schmidt_decompose, tensor_ket, ComplexMatrix, ComplexVector, HermitianEigen, SchmidtForm,
};
pub use purification::{
    apply_unitary_umap, check_umap, ensemble_containing, ensemble_from_basis, lemma_unitary,
    match_purification, match_purification_with, purify, purify_with, umap_between, umap_via,
    Ancilla, BasisEnsemble, ContainingEnsemble, JointState, UMap, UMapGenerator, UMapViolation,
    UnitaryImage,
};
pub use steering::{
    measure_ancilla, sample_outcomes, sample_outcomes_stream, steer, AncillaMeasurement,
    MeasurementRecord, MixtureTerm, SteeringReport,
};

pub use num_complex::Complex64 as C64;

/// Default tolerance for Hermiticity, orthonormality, normalization and
/// trace comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default threshold separating zero from nonzero weights and eigenvalues.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Default margin on `|<a|b>|` below 1 for two kets to count as noncollinear.
pub const DEFAULT_COLLINEARITY_TOL: f64 = 1e-8;
