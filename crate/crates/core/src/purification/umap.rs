use std::fmt;

use num_complex::Complex64 as C64;

use super::construct::{check_basis, ensemble_from_basis, match_purification, purify, BasisEnsemble};
use super::state::JointState;
use crate::ensemble::{validate_ensemble, RhoEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{complete_orthonormal, ComplexMatrix, ComplexVector};
use crate::DEFAULT_TOL;

/// Unitary on `H_M` that generates a U-map, with the basis `{|b_j>}` in which
/// `u_{jk} = <b_j|U|b_k>`.
#[derive(Debug, Clone, PartialEq)]
pub struct UMapGenerator {
    pub unitary: ComplexMatrix,
    pub basis: Vec<ComplexVector>,
}

/// Coefficients `u_{jk}` relating a source ensemble `{(|ψ_k>, v_k)}` to a
/// target ensemble `{(|φ_j>, w_j)}`:
///
/// `Σ_t u_{jt} √v_t |ψ_t> = √w_j |φ_j>` for the first `target.order()` rows
/// and `0` for any further rows. Columns index source elements and are
/// orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct UMap {
    pub coeffs: ComplexMatrix,
    pub generator: Option<UMapGenerator>,
}

impl UMap {
    pub fn new(coeffs: ComplexMatrix, generator: Option<UMapGenerator>) -> Self {
        Self { coeffs, generator }
    }

    /// `max |u† u - 1|`
    pub fn column_deviation(&self) -> f64 {
        self.coeffs.isometry_deviation()
    }

    /// Max of the generator's unitarity defect and `|u_{jk} - <b_j|U|b_k>|`.
    /// `None` without a generator; infinity when shapes disagree.
    pub fn generator_deviation(&self) -> Option<f64> {
        let g = self.generator.as_ref()?;
        let dim = g.unitary.rows();
        if !g.unitary.is_square()
            || g.basis.len() != dim
            || g.basis.iter().any(|b| b.dim() != dim)
            || self.coeffs.rows() != dim
            || self.coeffs.cols() > dim
        {
            return Some(f64::INFINITY);
        }
        let mut dev = g.unitary.unitary_deviation();
        for k in 0..self.coeffs.cols() {
            let ub = g.unitary.apply(&g.basis[k]);
            for j in 0..dim {
                dev = dev.max((self.coeffs[(j, k)] - g.basis[j].inner(&ub)).norm());
            }
        }
        Some(dev)
    }

    /// `max_j ‖Σ_t u_{jt} √v_t |ψ_t> - √w_j |φ_j>‖`, with zero targets past
    /// the last element of `to`.
    pub fn mapping_residual(&self, from: &RhoEnsemble, to: &RhoEnsemble) -> Result<f64> {
        if from.dim() != to.dim() {
            return Err(Error::DimensionMismatch("ensembles on different spaces".into()));
        }
        if self.coeffs.cols() != from.order() || self.coeffs.rows() < to.order() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} coefficients cannot map order {} to order {}",
                self.coeffs.rows(),
                self.coeffs.cols(),
                from.order(),
                to.order()
            )));
        }
        let mut worst: f64 = 0.0;
        for j in 0..self.coeffs.rows() {
            let mut lhs = ComplexVector::zeros(from.dim());
            for (t, el) in from.elements().iter().enumerate() {
                lhs.axpy(self.coeffs[(j, t)] * el.weight.sqrt(), &el.ket);
            }
            if let Some(target) = to.elements().get(j) {
                lhs.axpy(C64::new(-target.weight.sqrt(), 0.0), &target.ket);
            }
            worst = worst.max(lhs.norm());
        }
        Ok(worst)
    }
}

/// A broken U-map property.
#[derive(Debug, Clone, PartialEq)]
pub enum UMapViolation {
    ColumnsNotOrthonormal { deviation: f64 },
    GeneratorMismatch { deviation: f64 },
    MappingResidual { residual: f64 },
    Shape(String),
}

impl UMapViolation {
    pub fn name(&self) -> &'static str {
        match self {
            UMapViolation::ColumnsNotOrthonormal { .. } => "ColumnsNotOrthonormal",
            UMapViolation::GeneratorMismatch { .. } => "GeneratorMismatch",
            UMapViolation::MappingResidual { .. } => "MappingResidual",
            UMapViolation::Shape(_) => "Shape",
        }
    }
}

impl fmt::Display for UMapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UMapViolation::ColumnsNotOrthonormal { deviation } => {
                write!(f, "coefficient columns not orthonormal (deviation {deviation:e})")
            }
            UMapViolation::GeneratorMismatch { deviation } => {
                write!(f, "generator does not reproduce the coefficients (deviation {deviation:e})")
            }
            UMapViolation::MappingResidual { residual } => {
                write!(f, "mapping residual {residual:e}")
            }
            UMapViolation::Shape(msg) => f.write_str(msg),
        }
    }
}

/// Check column orthonormality, the generator (when present) and, given both
/// ensembles, the mapping identity. Every check allows `10 * tol`.
pub fn check_umap(
    umap: &UMap,
    from: Option<&RhoEnsemble>,
    to: Option<&RhoEnsemble>,
    tol: f64,
) -> Vec<UMapViolation> {
    let limit = 10.0 * tol;
    let mut report = Vec::new();
    let deviation = umap.column_deviation();
    if !(deviation <= limit) {
        report.push(UMapViolation::ColumnsNotOrthonormal { deviation });
    }
    if let Some(deviation) = umap.generator_deviation() {
        if !(deviation <= limit) {
            report.push(UMapViolation::GeneratorMismatch { deviation });
        }
    }
    if let (Some(from), Some(to)) = (from, to) {
        match umap.mapping_residual(from, to) {
            Ok(residual) if residual <= limit => {}
            Ok(residual) => report.push(UMapViolation::MappingResidual { residual }),
            Err(e) => report.push(UMapViolation::Shape(e.to_string())),
        }
    }
    report
}

fn outer_sum(left: &[ComplexVector], right: &[ComplexVector]) -> ComplexMatrix {
    let dim = left[0].dim();
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (l, r) in left.iter().zip(right) {
        u.add_scaled(C64::new(1.0, 0.0), &ComplexMatrix::outer(l, r));
    }
    u
}

/// U-map from `from` to `to` on a common purification `joint`.
///
/// Both ancillae are located in `joint`; with `{|b_j>}` the target ancilla and
/// `{|c_k>}` the source ancilla, each completed to a basis of `H_M`, the
/// coefficients are `u_{jk} = <b_j|c_k>` and the generator is
/// `U = Σ_t |c_t><b_t|`. Rows follow the completed target basis.
pub fn umap_via(from: &RhoEnsemble, to: &RhoEnsemble, joint: &JointState, tol: f64) -> Result<UMap> {
    let dim_m = joint.dim_m();
    let b = match_purification(to, joint, tol)?;
    let c = match_purification(from, joint, tol)?;
    let b_basis = complete_orthonormal(b.kets(), dim_m, tol)?;
    let c_basis = complete_orthonormal(c.kets(), dim_m, tol)?;

    let mut coeffs = ComplexMatrix::zeros(dim_m, from.order());
    for (j, bj) in b_basis.iter().enumerate() {
        for (k, ck) in c.kets().iter().enumerate() {
            coeffs[(j, k)] = bj.inner(ck);
        }
    }
    let unitary = outer_sum(&c_basis, &b_basis);
    Ok(UMap::new(coeffs, Some(UMapGenerator { unitary, basis: b_basis })))
}

/// U-map between two ensembles of the same density matrix, built on the
/// canonical purification of `to` with ancilla dimension
/// `max(from.order(), to.order())`.
pub fn umap_between(from: &RhoEnsemble, to: &RhoEnsemble, tol: f64) -> Result<UMap> {
    if from.dim() != to.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ensembles on dims {} and {}",
            from.dim(),
            to.dim()
        )));
    }
    for e in [from, to] {
        let report = validate_ensemble(e, tol);
        if !report.is_empty() {
            let msgs: Vec<String> = report.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidEnsemble(msgs.join("; ")));
        }
    }
    let deviation = from.weighted_sum().max_abs_diff(&to.weighted_sum());
    if !(deviation <= tol) {
        return Err(Error::DensitiesDiffer { deviation });
    }
    let dim_m = from.order().max(to.order());
    let (joint, _) = purify(to, dim_m)?;
    umap_via(from, to, &joint, tol)
}

/// Result of rotating an ancilla basis by a unitary.
#[derive(Debug, Clone)]
pub struct UnitaryImage {
    /// Ensemble selected by the original basis.
    pub from: BasisEnsemble,
    /// Ensemble selected by the rotated basis.
    pub to: BasisEnsemble,
    pub umap: UMap,
}

fn members_first(kets: &[ComplexVector], members: &[usize]) -> Vec<ComplexVector> {
    let mut out: Vec<ComplexVector> = members.iter().map(|&k| kets[k].clone()).collect();
    out.extend(
        kets.iter()
            .enumerate()
            .filter(|(k, _)| !members.contains(k))
            .map(|(_, v)| v.clone()),
    );
    out
}

/// Rotate `basis` by `u` and relate the ensemble it selected to the ensemble
/// the rotated basis selects.
///
/// The coefficient rows follow the rotated basis with its members first; the
/// columns are the members of the original basis. The recorded generator
/// sends the `k`-th rotated ket to the `k`-th original ket in those orders,
/// so it equals `u†` up to a relabeling of basis kets.
pub fn apply_unitary_umap(
    joint: &JointState,
    basis: &[ComplexVector],
    u: &ComplexMatrix,
    rank_tol: f64,
) -> Result<UnitaryImage> {
    let dim_m = joint.dim_m();
    if u.rows() != dim_m || u.cols() != dim_m {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} unitary on H_M of dim {dim_m}",
            u.rows(),
            u.cols()
        )));
    }
    let deviation = u.unitary_deviation();
    if !(deviation <= DEFAULT_TOL) {
        return Err(Error::NotUnitary { deviation });
    }
    check_basis(basis, dim_m, DEFAULT_TOL)?;

    let from = ensemble_from_basis(joint, basis, rank_tol)?;
    let rotated: Vec<ComplexVector> = basis.iter().map(|b| u.apply(b)).collect();
    let to = ensemble_from_basis(joint, &rotated, rank_tol)?;

    let rows = members_first(&rotated, &to.member_indices);
    let cols = members_first(basis, &from.member_indices);
    let mut coeffs = ComplexMatrix::zeros(dim_m, from.member_indices.len());
    for (j, bj) in rows.iter().enumerate() {
        for (k, ck) in cols.iter().take(from.member_indices.len()).enumerate() {
            coeffs[(j, k)] = bj.inner(ck);
        }
    }
    let unitary = outer_sum(&cols, &rows);
    let umap = UMap::new(coeffs, Some(UMapGenerator { unitary, basis: rows }));
    Ok(UnitaryImage { from, to, umap })
}
