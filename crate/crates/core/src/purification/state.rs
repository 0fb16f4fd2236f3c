use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{gram_deviation, partial_trace_m_ket, tensor_ket, ComplexMatrix, ComplexVector};

/// Slack allowed on `‖Ψ‖ = 1` for a [`JointState`].
pub const JOINT_NORM_TOL: f64 = 1e-9;

/// Normalized ket on `H_S ⊗ H_M`, S-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    dim_s: usize,
    dim_m: usize,
    vec: ComplexVector,
}

impl JointState {
    pub fn new(vec: ComplexVector, dim_s: usize, dim_m: usize) -> Result<Self> {
        if dim_s == 0 || dim_m == 0 || vec.dim() != dim_s * dim_m {
            return Err(Error::DimensionMismatch(format!(
                "joint ket of dim {} is not on a {dim_s}x{dim_m} product space",
                vec.dim()
            )));
        }
        let norm = vec.norm();
        if (norm - 1.0).abs() > JOINT_NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { dim_s, dim_m, vec })
    }

    /// `|s> ⊗ |m>`
    pub fn product(s: &ComplexVector, m: &ComplexVector) -> Result<Self> {
        Self::new(tensor_ket(s, m), s.dim(), m.dim())
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn vec(&self) -> &ComplexVector {
        &self.vec
    }

    /// Amplitude on `|i>_S ⊗ |k>_M`.
    pub fn amplitude(&self, i: usize, k: usize) -> C64 {
        self.vec[i * self.dim_m + k]
    }

    /// `Tr_M |Ψ><Ψ|`
    pub fn reduced_density(&self) -> ComplexMatrix {
        partial_trace_m_ket(&self.vec, self.dim_s, self.dim_m).expect("dims checked at construction")
    }

    /// `(1 ⊗ U)|Ψ>`, without renormalizing.
    pub fn apply_m(&self, u: &ComplexMatrix) -> ComplexVector {
        assert_eq!((u.rows(), u.cols()), (self.dim_m, self.dim_m), "operator is not on H_M");
        let mut entries = Vec::with_capacity(self.vec.dim());
        for i in 0..self.dim_s {
            for k in 0..self.dim_m {
                entries.push((0..self.dim_m).map(|t| u[(k, t)] * self.amplitude(i, t)).sum());
            }
        }
        ComplexVector::new(entries).expect("finite")
    }

    /// Unnormalized conditional S-vector `(1 ⊗ <b|)|Ψ>`.
    pub fn conditional(&self, b: &ComplexVector) -> ComplexVector {
        assert_eq!(b.dim(), self.dim_m);
        let entries = (0..self.dim_s)
            .map(|i| (0..self.dim_m).map(|t| self.amplitude(i, t) * b[t].conj()).sum())
            .collect();
        ComplexVector::new(entries).expect("finite")
    }

    /// Unnormalized M-vector `(<p| ⊗ 1)|Ψ>`.
    pub fn m_component(&self, p: &ComplexVector) -> ComplexVector {
        assert_eq!(p.dim(), self.dim_s);
        let entries = (0..self.dim_m)
            .map(|t| (0..self.dim_s).map(|i| p[i].conj() * self.amplitude(i, t)).sum())
            .collect();
        ComplexVector::new(entries).expect("finite")
    }
}

/// Orthonormal kets in `H_M`, one per element of the ensemble they purify.
#[derive(Debug, Clone, PartialEq)]
pub struct Ancilla {
    dim_m: usize,
    kets: Vec<ComplexVector>,
}

impl Ancilla {
    pub fn new(kets: Vec<ComplexVector>, tol: f64) -> Result<Self> {
        let Some(first) = kets.first() else {
            return Err(Error::DimensionMismatch("ancilla has no kets".into()));
        };
        let dim_m = first.dim();
        if kets.iter().any(|k| k.dim() != dim_m) {
            return Err(Error::DimensionMismatch("ancilla kets of differing dims".into()));
        }
        let deviation = gram_deviation(&kets);
        if !(deviation <= tol) {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { dim_m, kets })
    }

    pub(crate) fn from_kets_unchecked(kets: Vec<ComplexVector>) -> Self {
        Self { dim_m: kets[0].dim(), kets }
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn kets(&self) -> &[ComplexVector] {
        &self.kets
    }

    pub fn len(&self) -> usize {
        self.kets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kets.is_empty()
    }
}
