#![allow(dead_code)]

use hjw::{tensor_ket, ComplexVector, JointState, RhoEnsemble, C64};

pub const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn ket(values: &[f64]) -> ComplexVector {
    ComplexVector::from_real(values).unwrap()
}

pub fn e(dim: usize, i: usize) -> ComplexVector {
    ComplexVector::basis(dim, i)
}

pub fn plus() -> ComplexVector {
    ket(&[H, H])
}

pub fn minus() -> ComplexVector {
    ket(&[H, -H])
}

pub fn bell() -> JointState {
    let v = tensor_ket(&e(2, 0), &e(2, 0)).add(&tensor_ket(&e(2, 1), &e(2, 1))).scale_real(H);
    JointState::new(v, 2, 2).unwrap()
}

pub fn ensemble(pairs: &[(ComplexVector, f64)]) -> RhoEnsemble {
    RhoEnsemble::from_pairs(pairs.to_vec()).unwrap()
}

pub fn computational() -> RhoEnsemble {
    ensemble(&[(e(2, 0), 0.5), (e(2, 1), 0.5)])
}

pub fn plus_minus() -> RhoEnsemble {
    ensemble(&[(plus(), 0.5), (minus(), 0.5)])
}

/// Three real trine kets at weight 1/3; they average to 1/2.
pub fn trine() -> RhoEnsemble {
    let kets = (0..3).map(|k| {
        let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        (ket(&[a.cos(), a.sin()]), 1.0 / 3.0)
    });
    RhoEnsemble::from_pairs(kets.collect()).unwrap()
}

/// `Σ_j √w_j |φ_j> ⊗ |b_j>`
pub fn reconstruct(e: &RhoEnsemble, ancilla: &[ComplexVector]) -> ComplexVector {
    let mut v = ComplexVector::zeros(e.dim() * ancilla[0].dim());
    for (el, b) in e.elements().iter().zip(ancilla) {
        v.axpy(C64::new(el.weight.sqrt(), 0.0), &tensor_ket(&el.ket, b));
    }
    v
}

/// Max over pairs of `1 - |<a|b>|`.
pub fn worst_infidelity(a: &[ComplexVector], b: &[ComplexVector]) -> f64 {
    a.iter().zip(b).map(|(x, y)| 1.0 - x.fidelity(y)).fold(0.0, f64::max)
}
