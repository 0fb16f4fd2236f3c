use num_complex::Complex64 as C64;

use super::lemma::lemma_unitary;
use super::state::{Ancilla, JointState};
use crate::ensemble::{validate_ensemble, EnsembleElement, RhoEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{
    complete_orthonormal, gram_deviation, schmidt_decompose, tensor_ket, ComplexVector,
};
use crate::DEFAULT_TOL;

fn require_valid(e: &RhoEnsemble, tol: f64) -> Result<()> {
    let report = validate_ensemble(e, tol);
    if report.is_empty() {
        return Ok(());
    }
    let msgs: Vec<String> = report.iter().map(ToString::to_string).collect();
    Err(Error::InvalidEnsemble(msgs.join("; ")))
}

/// Purify an ensemble onto an ancilla of dimension `dim_m`:
/// `|Ψ> = Σ_j √w_j |φ_j> ⊗ |j>` with the canonical kets `|j>` as ancilla.
pub fn purify(e: &RhoEnsemble, dim_m: usize) -> Result<(JointState, Ancilla)> {
    if e.order() > dim_m {
        return Err(Error::OrderExceedsAncillaDim { order: e.order(), dim_m });
    }
    let kets = (0..e.order()).map(|j| ComplexVector::basis(dim_m, j)).collect();
    purify_with(e, kets, DEFAULT_TOL)
}

/// Purify using an arbitrary orthonormal set `{|d_j>}` as the ancilla.
pub fn purify_with(e: &RhoEnsemble, ancilla_kets: Vec<ComplexVector>, tol: f64) -> Result<(JointState, Ancilla)> {
    require_valid(e, tol)?;
    let ancilla = Ancilla::new(ancilla_kets, tol)?;
    if e.order() > ancilla.dim_m() {
        return Err(Error::OrderExceedsAncillaDim { order: e.order(), dim_m: ancilla.dim_m() });
    }
    if ancilla.len() != e.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} ancilla kets for an ensemble of order {}",
            ancilla.len(),
            e.order()
        )));
    }
    let mut vec = ComplexVector::zeros(e.dim() * ancilla.dim_m());
    for (el, d) in e.elements().iter().zip(ancilla.kets()) {
        vec.axpy(C64::new(el.weight.sqrt(), 0.0), &tensor_ket(&el.ket, d));
    }
    let joint = JointState::new(vec, e.dim(), ancilla.dim_m())?;
    Ok((joint, ancilla))
}

/// Ancilla of `e` inside a given purification `target`: kets `|b_j>` with
/// `|target> = Σ_j √w_j |φ_j> ⊗ |b_j>`.
///
/// Purifies `e` canonically, finds the unitary carrying that purification
/// onto `target` and rotates the canonical ancilla with it.
pub fn match_purification(e: &RhoEnsemble, target: &JointState, tol: f64) -> Result<Ancilla> {
    if e.order() > target.dim_m() {
        return Err(Error::OrderExceedsAncillaDim { order: e.order(), dim_m: target.dim_m() });
    }
    let kets = (0..e.order()).map(|j| ComplexVector::basis(target.dim_m(), j)).collect();
    match_purification_with(e, target, kets, tol)
}

/// As [`match_purification`], starting from the orthonormal set `ancilla_kets`
/// instead of canonical kets.
pub fn match_purification_with(
    e: &RhoEnsemble,
    target: &JointState,
    ancilla_kets: Vec<ComplexVector>,
    tol: f64,
) -> Result<Ancilla> {
    if e.dim() != target.dim_s() {
        return Err(Error::DimensionMismatch(format!(
            "ensemble on dim {} but joint state has dim_s {}",
            e.dim(),
            target.dim_s()
        )));
    }
    if e.order() > target.dim_m() {
        return Err(Error::OrderExceedsAncillaDim { order: e.order(), dim_m: target.dim_m() });
    }
    let (reference, d) = purify_with(e, ancilla_kets, tol)?;
    if reference.dim_m() != target.dim_m() {
        return Err(Error::DimensionMismatch("ancilla kets are not on the target's H_M".into()));
    }
    let u = lemma_unitary(target, &reference, tol)?;
    Ok(Ancilla::from_kets_unchecked(d.kets().iter().map(|k| u.apply(k)).collect()))
}

/// The ensemble selected by an orthonormal basis of `H_M`.
#[derive(Debug, Clone)]
pub struct BasisEnsemble {
    pub ensemble: RhoEnsemble,
    /// The basis kets that carry weight, in basis order.
    pub ancilla: Ancilla,
    /// Positions of the ancilla kets within the basis.
    pub member_indices: Vec<usize>,
}

pub(crate) fn check_basis(basis: &[ComplexVector], dim_m: usize, tol: f64) -> Result<()> {
    if basis.len() != dim_m {
        return Err(Error::NotOrthonormalBasis(format!(
            "{} kets cannot span a space of dim {dim_m}",
            basis.len()
        )));
    }
    if let Some(k) = basis.iter().find(|k| k.dim() != dim_m) {
        return Err(Error::DimensionMismatch(format!(
            "basis ket of dim {} in H_M of dim {dim_m}",
            k.dim()
        )));
    }
    let deviation = gram_deviation(basis);
    if !(deviation <= tol) {
        return Err(Error::NotOrthonormalBasis(format!("max Gram deviation {deviation:e}")));
    }
    Ok(())
}

/// Read off the ensemble correlated with `basis`: for each `|b_k>` the
/// conditional vector `(1 ⊗ <b_k|)|Ψ> = √w_k |φ_k>`. Kets with
/// `w_k <= rank_tol` are dropped; the rest form the ensemble, in basis order.
///
/// The amplitudes stay real, so `|Ψ> = Σ √w_k |φ_k> ⊗ |b_k>` holds exactly up
/// to the dropped terms.
pub fn ensemble_from_basis(joint: &JointState, basis: &[ComplexVector], rank_tol: f64) -> Result<BasisEnsemble> {
    check_basis(basis, joint.dim_m(), DEFAULT_TOL)?;
    let mut elements = Vec::new();
    let mut kets = Vec::new();
    let mut member_indices = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let v = joint.conditional(b);
        let weight = v.norm_sqr();
        if weight <= rank_tol {
            continue;
        }
        elements.push(EnsembleElement::new(v.scale_real(1.0 / weight.sqrt()), weight));
        kets.push(b.clone());
        member_indices.push(k);
    }
    if elements.is_empty() {
        return Err(Error::NumericalFailure("no basis ket carries weight".into()));
    }
    Ok(BasisEnsemble {
        ensemble: RhoEnsemble::new(elements)?,
        ancilla: Ancilla::from_kets_unchecked(kets),
        member_indices,
    })
}

/// An ensemble whose first element is a chosen ket.
#[derive(Debug, Clone)]
pub struct ContainingEnsemble {
    pub ensemble: RhoEnsemble,
    /// Full basis of `H_M`; its first ket selects the target element.
    pub ancilla_basis: Vec<ComplexVector>,
    pub member_indices: Vec<usize>,
}

/// Build a ρ-ensemble of `Tr_M |Ψ><Ψ|` whose first element is `xi`.
///
/// With the Schmidt form `Σ_s ψ_s |p_s a_s>` and `γ_s = <p_s|ξ>`, the first
/// ancilla ket is `|b_1> = Σ_s u*_{s1} |a_s>` where
/// `u_{s1} = (γ_s/ψ_s) / sqrt(Σ_t |γ_t/ψ_t|²)`; it is completed to a basis of
/// `H_M` and handed to [`ensemble_from_basis`]. The first weight comes out as
/// `1 / Σ_s |γ_s/ψ_s|²`.
pub fn ensemble_containing(joint: &JointState, xi: &ComplexVector, rank_tol: f64) -> Result<ContainingEnsemble> {
    if xi.dim() != joint.dim_s() {
        return Err(Error::DimensionMismatch(format!(
            "target ket of dim {} for H_S of dim {}",
            xi.dim(),
            joint.dim_s()
        )));
    }
    let norm = xi.norm();
    if (norm - 1.0).abs() > DEFAULT_TOL.max(rank_tol) {
        return Err(Error::NotNormalized { norm });
    }
    let schmidt = schmidt_decompose(joint.vec(), joint.dim_s(), joint.dim_m(), rank_tol)?;

    let gamma: Vec<C64> = schmidt.left_kets.iter().map(|p| p.inner(xi)).collect();
    let mut outside = xi.clone();
    for (g, p) in gamma.iter().zip(&schmidt.left_kets) {
        outside.axpy(-g, p);
    }
    let residual = outside.norm();
    if residual > rank_tol {
        return Err(Error::NotInSupport { residual });
    }

    let ratios: Vec<C64> = gamma.iter().zip(&schmidt.coefficients).map(|(g, c)| g / c).collect();
    let scale = ratios.iter().map(|r| r.norm_sqr()).sum::<f64>().sqrt();
    let mut b1 = ComplexVector::zeros(joint.dim_m());
    for (r, a) in ratios.iter().zip(&schmidt.right_kets) {
        b1.axpy((r / scale).conj(), a);
    }
    // b1 is a unit vector up to rounding; renormalize before completion.
    let b1 = b1
        .normalized()
        .ok_or_else(|| Error::NumericalFailure("degenerate first ancilla ket".into()))?;
    let basis = complete_orthonormal(&[b1], joint.dim_m(), DEFAULT_TOL)?;

    let selected = ensemble_from_basis(joint, &basis, rank_tol)?;
    if selected.member_indices.first() != Some(&0) {
        return Err(Error::NumericalFailure("target element lost its weight".into()));
    }
    Ok(ContainingEnsemble {
        ensemble: selected.ensemble,
        ancilla_basis: basis,
        member_indices: selected.member_indices,
    })
}
