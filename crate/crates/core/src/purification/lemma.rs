use num_complex::Complex64 as C64;

use super::state::JointState;
use crate::error::{Error, Result};
use crate::linalg::{complete_orthonormal, eig_hermitian, orthogonal_residual, ComplexMatrix};

/// Components `(<p_s| ⊗ 1)|Ψ>` with norm at or below this carry no usable
/// direction and are left to basis completion.
const AMPLITUDE_FLOOR: f64 = 1e-13;

/// A cleaned direction must keep at least this much of its norm after
/// orthogonalization against earlier ones.
const MIN_RETAINED: f64 = 0.5;

/// Unitary `U` on `H_M` with `|χ> = (1 ⊗ U)|φ>`, for two joint states with
/// the same reduced state on `S`.
///
/// Eigendecompose `X = Tr_M |χ><χ|` into `Σ w_s |p_s><p_s|`, split each state
/// as `Σ_s |p_s> ⊗ |η_s>`, normalize the `η_s` of `χ` into `|b_s>` and those of
/// `φ` into `|c_s>`, extend both sets to bases of `H_M` and return
/// `U = Σ_s |b_s><c_s|`.
pub fn lemma_unitary(chi: &JointState, phi: &JointState, tol: f64) -> Result<ComplexMatrix> {
    if (chi.dim_s(), chi.dim_m()) != (phi.dim_s(), phi.dim_m()) {
        return Err(Error::DimensionMismatch(format!(
            "joint states on {}x{} and {}x{}",
            chi.dim_s(),
            chi.dim_m(),
            phi.dim_s(),
            phi.dim_m()
        )));
    }
    let x = chi.reduced_density();
    let deviation = x.max_abs_diff(&phi.reduced_density());
    if !(deviation <= tol) {
        return Err(Error::TracesDiffer { deviation });
    }

    let eig = eig_hermitian(&x, tol)?;
    let mut b = Vec::new();
    let mut c = Vec::new();
    for p in &eig.vectors {
        let eta_chi = chi.m_component(p);
        let eta_phi = phi.m_component(p);
        if eta_chi.norm() <= AMPLITUDE_FLOOR || eta_phi.norm() <= AMPLITUDE_FLOOR {
            continue;
        }
        // Tiny components have noisy directions; re-orthogonalize both sets
        // in step and drop a pair if either side collapses.
        let (Some(bs), Some(cs)) = (orthogonal_residual(&eta_chi, &b), orthogonal_residual(&eta_phi, &c))
        else {
            continue;
        };
        let kept_b = bs.inner(&eta_chi).norm() / eta_chi.norm();
        let kept_c = cs.inner(&eta_phi).norm() / eta_phi.norm();
        if kept_b < MIN_RETAINED || kept_c < MIN_RETAINED {
            continue;
        }
        b.push(bs);
        c.push(cs);
    }

    let dim_m = chi.dim_m();
    let b = complete_orthonormal(&b, dim_m, tol)?;
    let c = complete_orthonormal(&c, dim_m, tol)?;

    let mut u = ComplexMatrix::zeros(dim_m, dim_m);
    for (bs, cs) in b.iter().zip(&c) {
        u.add_scaled(C64::new(1.0, 0.0), &ComplexMatrix::outer(bs, cs));
    }
    let defect = u.unitary_deviation();
    if defect > 10.0 * tol {
        return Err(Error::NumericalFailure(format!("lemma unitary defect {defect:e}")));
    }
    Ok(u)
}
