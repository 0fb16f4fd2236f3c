use num_complex::Complex64 as C64;

use super::matrix::ComplexMatrix;
use super::vector::ComplexVector;
use crate::error::{Error, Result};

/// `|s> ⊗ |m>` with flat index `i * dim_m + k`.
pub fn tensor_ket(s: &ComplexVector, m: &ComplexVector) -> ComplexVector {
    let mut out = Vec::with_capacity(s.dim() * m.dim());
    for a in s.entries() {
        for b in m.entries() {
            out.push(a * b);
        }
    }
    ComplexVector::from_vec_unchecked(out)
}

fn check_split(len: usize, dim_s: usize, dim_m: usize) -> Result<()> {
    if dim_s == 0 || dim_m == 0 || len != dim_s * dim_m {
        return Err(Error::DimensionMismatch(format!(
            "dimension {len} does not factor as {dim_s}x{dim_m}"
        )));
    }
    Ok(())
}

/// `Tr_M |Ψ><Ψ|`, entry `(i, j) = Σ_k Ψ_{ik} Ψ*_{jk}`.
pub fn partial_trace_m_ket(joint: &ComplexVector, dim_s: usize, dim_m: usize) -> Result<ComplexMatrix> {
    check_split(joint.dim(), dim_s, dim_m)?;
    let psi = joint.entries();
    let mut out = ComplexMatrix::zeros(dim_s, dim_s);
    for i in 0..dim_s {
        for j in i..dim_s {
            let z: C64 = (0..dim_m)
                .map(|k| psi[i * dim_m + k] * psi[j * dim_m + k].conj())
                .sum();
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    Ok(out)
}

/// `Tr_M ρ` for an operator on `S ⊗ M`.
pub fn partial_trace_m(joint_rho: &ComplexMatrix, dim_s: usize, dim_m: usize) -> Result<ComplexMatrix> {
    if !joint_rho.is_square() {
        return Err(Error::DimensionMismatch("partial trace of a non-square matrix".into()));
    }
    check_split(joint_rho.rows(), dim_s, dim_m)?;
    let mut out = ComplexMatrix::zeros(dim_s, dim_s);
    for i in 0..dim_s {
        for j in 0..dim_s {
            out[(i, j)] = (0..dim_m)
                .map(|k| joint_rho[(i * dim_m + k, j * dim_m + k)])
                .sum();
        }
    }
    Ok(out)
}
