use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the linear algebra and ensemble constructions.
///
/// Every variant except [`Error::NumericalFailure`] signals that an input
/// violated a precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not Hermitian (max asymmetry {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("vectors are not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("not an orthonormal basis: {0}")]
    NotOrthonormalBasis(String),
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("reduced states differ (max deviation {deviation:e})")]
    TracesDiffer { deviation: f64 },
    #[error("ensembles decompose different density matrices (max deviation {deviation:e})")]
    DensitiesDiffer { deviation: f64 },
    #[error("ensemble order {order} exceeds ancilla dimension {dim_m}")]
    OrderExceedsAncillaDim { order: usize, dim_m: usize },
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("vector lies outside the support (residual {residual:e})")]
    NotInSupport { residual: f64 },
    #[error("weights are not normalized (sum {sum})")]
    WeightsNotNormalized { sum: f64 },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonFinite(_) => "NonFinite",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotOrthonormal { .. } => "NotOrthonormal",
            Error::NotOrthonormalBasis(_) => "NotOrthonormalBasis",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::TracesDiffer { .. } => "TracesDiffer",
            Error::DensitiesDiffer { .. } => "DensitiesDiffer",
            Error::OrderExceedsAncillaDim { .. } => "OrderExceedsAncillaDim",
            Error::InvalidEnsemble(_) => "InvalidEnsemble",
            Error::InvalidDensity(_) => "InvalidDensity",
            Error::NotInSupport { .. } => "NotInSupport",
            Error::WeightsNotNormalized { .. } => "WeightsNotNormalized",
            Error::NumericalFailure(_) => "NumericalFailure",
        }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NumericalFailure(_))
    }
}
