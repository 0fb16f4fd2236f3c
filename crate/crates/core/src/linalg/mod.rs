//! Dense complex linear algebra: kets, operators, spectral and Schmidt
//! decompositions, tensor products and partial traces.

mod decomp;
mod matrix;
mod tensor;
mod vector;

pub use decomp::{
    complete_orthonormal, eig_hermitian, numerical_rank, schmidt_decompose,
    HermitianEigen, SchmidtForm, COMPLETION_REJECT_NORM, SCHMIDT_NORM_TOL,
};
pub(crate) use decomp::orthogonal_residual;
pub use matrix::ComplexMatrix;
pub use tensor::{partial_trace_m, partial_trace_m_ket, tensor_ket};
pub use vector::{gram_deviation, ComplexVector};

#[cfg(test)]
mod tests;
