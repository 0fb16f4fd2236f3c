//! Measuring the ancilla of a purification and sampling the outcomes.
//!
//! Measuring `M` in a basis turns `|Ψ> = Σ_j √w_j |φ_j b_j>` into the mixture
//! `Σ_j w_j |φ_j b_j><φ_j b_j|`: each outcome `j` occurs with probability
//! `w_j` and leaves `S` in `|φ_j>`, while the marginal on `S` is unchanged.
//!
//! # Sampling generator
//!
//! Outcomes are drawn with ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded by
//! `SeedableRng::seed_from_u64(seed)`, then `set_stream(stream)`; stream 0 is
//! the default and independent runs split by stream number. Each shot takes
//! one `next_u64()`, maps it to `u = (x >> 11) · 2⁻⁵³ ∈ [0, 1)` and picks the
//! first outcome whose normalized cumulative weight exceeds `u`.

use num_complex::Complex64 as C64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace_m, tensor_ket, ComplexMatrix, ComplexVector};
use crate::purification::{ensemble_from_basis, JointState};

/// Slack allowed on `Σ weights = 1` when sampling.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Name of the pinned sampling generator.
pub const SAMPLER_NAME: &str = "chacha20";

/// One branch of the post-measurement mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureTerm {
    pub weight: f64,
    pub s_ket: ComplexVector,
    pub m_ket: ComplexVector,
    /// Position of `m_ket` in the measured basis.
    pub basis_index: usize,
}

#[derive(Debug, Clone)]
pub struct AncillaMeasurement {
    pub mixture: Vec<MixtureTerm>,
    /// `Σ_j w_j |φ_j b_j><φ_j b_j|` on `S ⊗ M`.
    pub post_density_sm: ComplexMatrix,
    pub dim_s: usize,
    pub dim_m: usize,
}

impl AncillaMeasurement {
    pub fn weights(&self) -> Vec<f64> {
        self.mixture.iter().map(|t| t.weight).collect()
    }

    /// Marginal of the post-measurement state on `S`.
    pub fn s_marginal(&self) -> ComplexMatrix {
        partial_trace_m(&self.post_density_sm, self.dim_s, self.dim_m).expect("square by construction")
    }
}

/// Measure `M` in `basis`. The mixture is the ensemble
/// [`ensemble_from_basis`] selects, paired with its ancilla kets.
pub fn measure_ancilla(joint: &JointState, basis: &[ComplexVector], rank_tol: f64) -> Result<AncillaMeasurement> {
    let selected = ensemble_from_basis(joint, basis, rank_tol)?;
    let dim = joint.dim_s() * joint.dim_m();
    let mut post = ComplexMatrix::zeros(dim, dim);
    let mut mixture = Vec::with_capacity(selected.ensemble.order());
    for ((el, b), &index) in selected
        .ensemble
        .elements()
        .iter()
        .zip(selected.ancilla.kets())
        .zip(&selected.member_indices)
    {
        let branch = tensor_ket(&el.ket, b);
        post.add_scaled(C64::new(el.weight, 0.0), &ComplexMatrix::projector(&branch));
        mixture.push(MixtureTerm {
            weight: el.weight,
            s_ket: el.ket.clone(),
            m_ket: b.clone(),
            basis_index: index,
        });
    }
    Ok(AncillaMeasurement { mixture, post_density_sm: post, dim_s: joint.dim_s(), dim_m: joint.dim_m() })
}

/// Categorical sampling on stream 0; see the module docs for the algorithm.
pub fn sample_outcomes(weights: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    sample_outcomes_stream(weights, shots, seed, 0)
}

pub fn sample_outcomes_stream(weights: &[f64], shots: u64, seed: u64, stream: u64) -> Result<Vec<u64>> {
    if weights.is_empty() {
        return Err(Error::WeightsNotNormalized { sum: 0.0 });
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::WeightsNotNormalized { sum: weights.iter().sum() });
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::WeightsNotNormalized { sum });
    }
    if shots == 0 {
        return Err(Error::DimensionMismatch("shots must be positive".into()));
    }

    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in weights {
        acc += w;
        cumulative.push(acc / sum);
    }
    let last_positive = weights.iter().rposition(|&w| w > 0.0).expect("sum is near 1");

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut counts = vec![0u64; weights.len()];
    for _ in 0..shots {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let j = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last_positive);
        counts[j] += 1;
    }
    Ok(counts)
}

/// Which ensemble element a measurement outcome assigns to `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub outcome_index: usize,
    pub s_ket: ComplexVector,
    pub m_ket: ComplexVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteeringReport {
    pub shots: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    pub expected_weights: Vec<f64>,
    /// One record per possible outcome, indexed like `counts`.
    pub outcomes: Vec<MeasurementRecord>,
    /// `Σ_j w_j |φ_j><φ_j|`, the state of `S` after the measurement.
    pub post_density: ComplexMatrix,
}

/// Measure the ancilla in `basis` and sample `shots` outcomes.
pub fn steer(
    joint: &JointState,
    basis: &[ComplexVector],
    shots: u64,
    seed: u64,
    rank_tol: f64,
) -> Result<SteeringReport> {
    let measurement = measure_ancilla(joint, basis, rank_tol)?;
    let expected_weights = measurement.weights();
    let counts = sample_outcomes(&expected_weights, shots, seed)?;
    let mut post_density = ComplexMatrix::zeros(joint.dim_s(), joint.dim_s());
    for term in &measurement.mixture {
        post_density.add_scaled(C64::new(term.weight, 0.0), &ComplexMatrix::projector(&term.s_ket));
    }
    let outcomes = measurement
        .mixture
        .iter()
        .enumerate()
        .map(|(i, t)| MeasurementRecord { outcome_index: i, s_ket: t.s_ket.clone(), m_ket: t.m_ket.clone() })
        .collect();
    Ok(SteeringReport { shots, seed, counts, expected_weights, outcomes, post_density })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_outcome() {
        assert_eq!(sample_outcomes(&[1.0], 100, 3).unwrap(), vec![100]);
    }

    #[test]
    fn zero_weight_outcome_never_drawn() {
        let counts = sample_outcomes(&[0.0, 1.0, 0.0], 1000, 9).unwrap();
        assert_eq!(counts, vec![0, 1000, 0]);
    }

    #[test]
    fn fair_coin_within_four_sigma() {
        // σ = sqrt(10000 · 1/4) = 50
        let counts = sample_outcomes(&[0.5, 0.5], 10_000, 42).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), 10_000);
        for c in counts {
            assert!((c as f64 - 5000.0).abs() <= 200.0, "count {c}");
        }
    }

    #[test]
    fn biased_coin_within_four_sigma() {
        // σ = sqrt(10000 · 0.1 · 0.9) = 30
        let counts = sample_outcomes(&[0.1, 0.9], 10_000, 7).unwrap();
        assert!((counts[0] as f64 - 1000.0).abs() <= 120.0, "count {}", counts[0]);
    }

    #[test]
    fn seeded_runs_repeat_and_streams_differ() {
        let w = [0.2, 0.3, 0.5];
        let a = sample_outcomes(&w, 500, 1234).unwrap();
        assert_eq!(a, sample_outcomes(&w, 500, 1234).unwrap());
        assert_eq!(a, sample_outcomes_stream(&w, 500, 1234, 0).unwrap());
        assert_ne!(a, sample_outcomes_stream(&w, 500, 1234, 1).unwrap());
    }

    #[test]
    fn rejects_unnormalized_weights() {
        assert!(matches!(
            sample_outcomes(&[0.6, 0.6], 10, 0),
            Err(Error::WeightsNotNormalized { .. })
        ));
        assert!(sample_outcomes(&[-0.5, 1.5], 10, 0).is_err());
        assert!(sample_outcomes(&[1.0], 0, 0).is_err());
    }
}
