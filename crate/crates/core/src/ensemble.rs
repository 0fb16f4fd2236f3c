//! ρ-ensembles, density matrices and ensemble validation.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, numerical_rank, ComplexMatrix, ComplexVector};
use crate::{DEFAULT_COLLINEARITY_TOL, DEFAULT_RANK_TOL};

/// One weighted ket `(|φ_j>, w_j)` of an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleElement {
    pub ket: ComplexVector,
    pub weight: f64,
}

impl EnsembleElement {
    pub fn new(ket: ComplexVector, weight: f64) -> Self {
        Self { ket, weight }
    }
}

/// Weighted list of kets `{(|φ_j>, w_j)}` intended to decompose a density
/// matrix as `ρ = Σ_j w_j |φ_j><φ_j|`.
///
/// Construction enforces only the structural rules: at least one element,
/// a shared ket dimension and strictly positive finite weights. Weight
/// normalization, unit kets and noncollinearity are checked by
/// [`validate_ensemble`], which reports violations as data.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoEnsemble {
    dim: usize,
    elements: Vec<EnsembleElement>,
}

impl RhoEnsemble {
    pub fn new(elements: Vec<EnsembleElement>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidEnsemble("ensemble has no elements".into()));
        };
        let dim = first.ket.dim();
        for (j, el) in elements.iter().enumerate() {
            if el.ket.dim() != dim {
                return Err(Error::InvalidEnsemble(format!(
                    "element {j} has dim {} but element 0 has dim {dim}",
                    el.ket.dim()
                )));
            }
            if !el.weight.is_finite() || el.weight <= 0.0 {
                return Err(Error::InvalidEnsemble(format!(
                    "element {j} has non-positive weight {}",
                    el.weight
                )));
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn from_pairs(pairs: Vec<(ComplexVector, f64)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(k, w)| EnsembleElement::new(k, w)).collect())
    }

    /// Dimension of the ket space `H_S`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[EnsembleElement] {
        &self.elements
    }

    pub fn weights(&self) -> Vec<f64> {
        self.elements.iter().map(|e| e.weight).collect()
    }

    pub fn kets(&self) -> Vec<ComplexVector> {
        self.elements.iter().map(|e| e.ket.clone()).collect()
    }

    /// `Σ_j w_j |φ_j><φ_j|` with no validation.
    pub fn weighted_sum(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for el in &self.elements {
            m.add_scaled(C64::new(el.weight, 0.0), &ComplexMatrix::projector(&el.ket));
        }
        m
    }
}

/// Positive Hermitian unit-trace operator with its spectral data.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Vec<f64>,
    eigenkets: Vec<ComplexVector>,
    support_rank: usize,
}

impl DensityMatrix {
    /// Validate `matrix` as a density matrix: Hermitian within `tol`, no
    /// eigenvalue below `-tol` and trace within `tol` of one.
    pub fn from_matrix(matrix: ComplexMatrix, tol: f64, rank_tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!(
                "{}x{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let rho = Self::decompose(matrix, tol, rank_tol)?;
        let trace = rho.matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidDensity(format!("trace is {trace}, not 1")));
        }
        if let Some(&low) = rho.spectrum.last() {
            if low < -tol {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {low:e}")));
            }
        }
        Ok(rho)
    }

    fn decompose(matrix: ComplexMatrix, tol: f64, rank_tol: f64) -> Result<Self> {
        let eig = eig_hermitian(&matrix, tol)?;
        let support_rank = numerical_rank(&eig.values, rank_tol);
        Ok(Self { matrix, spectrum: eig.values, eigenkets: eig.vectors, support_rank })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Eigenkets matching [`Self::spectrum`].
    pub fn eigenkets(&self) -> &[ComplexVector] {
        &self.eigenkets
    }

    /// `n_ρ`, the dimension of the support.
    pub fn support_rank(&self) -> usize {
        self.support_rank
    }

    /// Orthonormal basis of the support.
    pub fn support_basis(&self) -> &[ComplexVector] {
        &self.eigenkets[..self.support_rank]
    }

    pub fn support_projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.dim(), self.dim());
        for v in self.support_basis() {
            p.add_scaled(C64::new(1.0, 0.0), &ComplexMatrix::projector(v));
        }
        p
    }

    /// `‖(1 - P_supp) v‖`
    pub fn support_residual(&self, v: &ComplexVector) -> f64 {
        let mut r = v.clone();
        for p in self.support_basis() {
            r.axpy(-p.inner(v), p);
        }
        r.norm()
    }
}

/// A broken ρ-ensemble invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleViolation {
    WeightSum { sum: f64 },
    KetNotNormalized { index: usize, norm: f64 },
    Collinear { first: usize, second: usize, overlap: f64 },
    OrderBelowSupportRank { order: usize, support_rank: usize },
}

impl EnsembleViolation {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleViolation::WeightSum { .. } => "WeightSum",
            EnsembleViolation::KetNotNormalized { .. } => "KetNotNormalized",
            EnsembleViolation::Collinear { .. } => "Collinear",
            EnsembleViolation::OrderBelowSupportRank { .. } => "OrderBelowSupportRank",
        }
    }

    /// Element indices involved in the violation.
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            EnsembleViolation::KetNotNormalized { index, .. } => vec![index],
            EnsembleViolation::Collinear { first, second, .. } => vec![first, second],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for EnsembleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleViolation::WeightSum { sum } => write!(f, "weights sum to {sum}, not 1"),
            EnsembleViolation::KetNotNormalized { index, norm } => {
                write!(f, "ket {index} has norm {norm}")
            }
            EnsembleViolation::Collinear { first, second, overlap } => {
                write!(f, "kets {first} and {second} are collinear (|overlap| = {overlap})")
            }
            EnsembleViolation::OrderBelowSupportRank { order, support_rank } => {
                write!(f, "order {order} is below the support rank {support_rank}")
            }
        }
    }
}

/// Check every ρ-ensemble invariant with the default collinearity and rank
/// tolerances. An empty list means the ensemble is valid.
pub fn validate_ensemble(e: &RhoEnsemble, tol: f64) -> Vec<EnsembleViolation> {
    validate_ensemble_with(e, tol, DEFAULT_COLLINEARITY_TOL, DEFAULT_RANK_TOL)
}

pub fn validate_ensemble_with(
    e: &RhoEnsemble,
    tol: f64,
    collinearity_tol: f64,
    rank_tol: f64,
) -> Vec<EnsembleViolation> {
    let mut report = Vec::new();

    let sum: f64 = e.elements.iter().map(|el| el.weight).sum();
    if (sum - 1.0).abs() > tol {
        report.push(EnsembleViolation::WeightSum { sum });
    }

    let norms: Vec<f64> = e.elements.iter().map(|el| el.ket.norm()).collect();
    for (index, &norm) in norms.iter().enumerate() {
        if (norm - 1.0).abs() > tol {
            report.push(EnsembleViolation::KetNotNormalized { index, norm });
        }
    }

    for i in 0..e.order() {
        for j in i + 1..e.order() {
            let denom = norms[i] * norms[j];
            if denom == 0.0 {
                continue;
            }
            let overlap = e.elements[i].ket.inner(&e.elements[j].ket).norm() / denom;
            if overlap >= 1.0 - collinearity_tol {
                report.push(EnsembleViolation::Collinear { first: i, second: j, overlap });
            }
        }
    }

    if let Ok(eig) = eig_hermitian(&e.weighted_sum(), f64::INFINITY) {
        let support_rank = numerical_rank(&eig.values, rank_tol);
        if e.order() < support_rank {
            report.push(EnsembleViolation::OrderBelowSupportRank { order: e.order(), support_rank });
        }
    }
    report
}

/// `ρ = Σ_j w_j |φ_j><φ_j|` for a valid ensemble, with its eigendata.
pub fn ensemble_to_density(e: &RhoEnsemble, tol: f64) -> Result<DensityMatrix> {
    let report = validate_ensemble(e, tol);
    if !report.is_empty() {
        let msgs: Vec<String> = report.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidEnsemble(msgs.join("; ")));
    }
    DensityMatrix::decompose(e.weighted_sum(), tol, DEFAULT_RANK_TOL)
}

/// True iff the Gram matrix `<φ_i|φ_j>` of the ensemble kets has all
/// eigenvalues above `rank_tol`.
pub fn is_linearly_independent(e: &RhoEnsemble, rank_tol: f64) -> bool {
    if e.order() > e.dim() {
        return false;
    }
    let columns = ComplexMatrix::from_columns(&e.kets()).expect("ensemble kets share a dim");
    match eig_hermitian(&columns.adjoint().matmul(&columns), f64::INFINITY) {
        Ok(eig) => numerical_rank(&eig.values, rank_tol) == e.order(),
        Err(_) => false,
    }
}

/// Equality up to element relabeling and a phase on each ket.
///
/// Elements of `a` are matched in order of decreasing weight to the unused
/// element of `b` with a weight within `tol` and the largest `|<φ|ψ>|`. The
/// match succeeds when the phase-aligned kets agree entrywise within `tol`.
/// Greedy matching can miss a valid pairing when several elements share a
/// weight and have nearly equal overlaps.
pub fn ensembles_equal(a: &RhoEnsemble, b: &RhoEnsemble, tol: f64) -> bool {
    if a.dim() != b.dim() || a.order() != b.order() {
        return false;
    }
    let mut order: Vec<usize> = (0..a.order()).collect();
    order.sort_by(|&i, &j| a.elements[j].weight.total_cmp(&a.elements[i].weight));

    let mut used = vec![false; b.order()];
    for i in order {
        let ea = &a.elements[i];
        let best = b
            .elements
            .iter()
            .enumerate()
            .filter(|(j, eb)| !used[*j] && (ea.weight - eb.weight).abs() <= tol)
            .map(|(j, eb)| (j, eb.ket.inner(&ea.ket)))
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()));
        let Some((j, overlap)) = best else {
            return false;
        };
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
        if b.elements[j].ket.scale(phase).max_abs_diff(&ea.ket) > tol {
            return false;
        }
        used[j] = true;
    }
    true
}
