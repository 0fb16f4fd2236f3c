use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;
use super::tensor::partial_trace_m_ket;
use super::vector::{gram_deviation, ComplexVector};
use crate::error::{Error, Result};

const MAX_SOLVER_ITERATIONS: usize = 10_000;

/// Allowed `‖V Λ V† - m‖_max`, relative to the largest entry of `m`.
const RECONSTRUCTION_SLACK: f64 = 1e-12;

/// Gram-Schmidt candidates with a residual norm below this are rejected.
pub const COMPLETION_REJECT_NORM: f64 = 1e-6;

/// Spectral data of a Hermitian matrix, sorted by descending eigenvalue.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<ComplexVector>,
}

impl HermitianEigen {
    /// `Σ λ_s |v_s><v_s|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.vectors[0].dim();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (value, v) in self.values.iter().zip(&self.vectors) {
            m.add_scaled(C64::new(*value, 0.0), &ComplexMatrix::projector(v));
        }
        m
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `‖m - m†‖_max > tol`. The matrix is
/// symmetrized before it reaches the solver, so the returned eigenvectors are
/// orthonormal to working precision. Ties keep the solver's order.
pub fn eig_hermitian(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if !(deviation <= tol) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    let a = m.to_nalgebra();
    let sym = (&a + a.adjoint()) * C64::new(0.5, 0.0);
    let scale = sym.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let eig = sym
        .try_symmetric_eigen(f64::EPSILON, MAX_SOLVER_ITERATIONS)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| ComplexVector::from_vec_unchecked(eig.eigenvectors.column(i).iter().copied().collect()))
        .collect();
    let result = HermitianEigen { values, vectors };
    let residual = result.reconstruct().max_abs_diff(m);
    if !(residual <= RECONSTRUCTION_SLACK * scale + deviation) {
        return Err(Error::NumericalFailure(format!(
            "eigendecomposition reconstructs with error {residual:.3e}"
        )));
    }
    Ok(result)
}

/// Number of eigenvalues strictly above `rank_tol`.
pub fn numerical_rank(eigenvalues: &[f64], rank_tol: f64) -> usize {
    eigenvalues.iter().filter(|&&w| w > rank_tol).count()
}

/// Extend an orthonormal set to an orthonormal basis of dimension `target_dim`.
///
/// The input vectors come back unchanged as a prefix. Completion vectors are
/// canonical basis vectors `e_0, e_1, ...` in index order, orthogonalized
/// against everything accepted so far; a candidate whose residual norm is
/// below [`COMPLETION_REJECT_NORM`] is skipped.
pub fn complete_orthonormal(
    partial: &[ComplexVector],
    target_dim: usize,
    tol: f64,
) -> Result<Vec<ComplexVector>> {
    if partial.len() > target_dim {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors cannot extend to a basis of dimension {target_dim}",
            partial.len()
        )));
    }
    if let Some(v) = partial.iter().find(|v| v.dim() != target_dim) {
        return Err(Error::DimensionMismatch(format!(
            "vector of dim {} in a space of dim {target_dim}",
            v.dim()
        )));
    }
    let deviation = gram_deviation(partial);
    if !(deviation <= tol) {
        return Err(Error::NotOrthonormal { deviation });
    }

    let mut basis = partial.to_vec();
    for i in 0..target_dim {
        if basis.len() == target_dim {
            break;
        }
        if let Some(q) = orthogonal_residual(&ComplexVector::basis(target_dim, i), &basis) {
            basis.push(q);
        }
    }
    if basis.len() != target_dim {
        return Err(Error::NumericalFailure("basis completion ran out of candidates".into()));
    }
    Ok(basis)
}

/// Normalized component of `candidate` orthogonal to `accepted`, using two
/// passes of modified Gram-Schmidt. `None` if the residual norm is below
/// [`COMPLETION_REJECT_NORM`] relative to the candidate.
pub(crate) fn orthogonal_residual(
    candidate: &ComplexVector,
    accepted: &[ComplexVector],
) -> Option<ComplexVector> {
    let scale = candidate.norm();
    if scale == 0.0 {
        return None;
    }
    let mut r = candidate.clone();
    for _ in 0..2 {
        for q in accepted {
            let c = q.inner(&r);
            r.axpy(-c, q);
        }
    }
    let n = r.norm();
    if n < COMPLETION_REJECT_NORM * scale {
        return None;
    }
    Some(r.scale_real(1.0 / n))
}

/// Bi-orthogonal expansion `|Ψ> = Σ_s ψ_s |p_s> ⊗ |a_s>` of a bipartite ket.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    /// `ψ_s`, strictly positive and descending.
    pub coefficients: Vec<f64>,
    /// `|p_s>` in the S factor.
    pub left_kets: Vec<ComplexVector>,
    /// `|a_s>` in the M factor.
    pub right_kets: Vec<ComplexVector>,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// `Σ_s ψ_s p_s ⊗ a_s` in S-major layout.
    pub fn reconstruct(&self) -> ComplexVector {
        let dim = self.left_kets[0].dim() * self.right_kets[0].dim();
        let mut v = ComplexVector::zeros(dim);
        for ((c, p), a) in self.coefficients.iter().zip(&self.left_kets).zip(&self.right_kets) {
            v.axpy(C64::new(*c, 0.0), &super::tensor_ket(p, a));
        }
        v
    }
}

/// Relative slack allowed on `‖joint‖ = 1` by [`schmidt_decompose`].
pub const SCHMIDT_NORM_TOL: f64 = 1e-9;

/// Schmidt decomposition from the spectrum of `Tr_M |Ψ><Ψ|`.
///
/// Each eigenket `|p_s>` with eigenvalue above `rank_tol` gives
/// `ψ_s |a_s> = (<p_s| ⊗ 1)|Ψ>`; smaller terms are dropped.
pub fn schmidt_decompose(
    joint: &ComplexVector,
    dim_s: usize,
    dim_m: usize,
    rank_tol: f64,
) -> Result<SchmidtForm> {
    if dim_s == 0 || dim_m == 0 || joint.dim() != dim_s * dim_m {
        return Err(Error::DimensionMismatch(format!(
            "ket of dim {} is not on a {dim_s}x{dim_m} product space",
            joint.dim()
        )));
    }
    let norm = joint.norm();
    if (norm - 1.0).abs() > SCHMIDT_NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let reduced = partial_trace_m_ket(joint, dim_s, dim_m)?;
    let eig = eig_hermitian(&reduced, f64::INFINITY)?;
    let rank = numerical_rank(&eig.values, rank_tol);

    let amps = joint.entries();
    let mut form = SchmidtForm { coefficients: Vec::new(), left_kets: Vec::new(), right_kets: Vec::new() };
    for p in eig.vectors.into_iter().take(rank) {
        let mut eta = vec![C64::new(0.0, 0.0); dim_m];
        for (i, pi) in p.entries().iter().enumerate() {
            for (k, e) in eta.iter_mut().enumerate() {
                *e += pi.conj() * amps[i * dim_m + k];
            }
        }
        let eta = ComplexVector::from_vec_unchecked(eta);
        let psi = eta.norm();
        if psi == 0.0 {
            return Err(Error::NumericalFailure("Schmidt term with vanishing norm".into()));
        }
        form.coefficients.push(psi);
        form.right_kets.push(eta.scale_real(1.0 / psi));
        form.left_kets.push(p);
    }
    Ok(form)
}
