//! Purifications, ancillae and U-maps.
//!
//! Everything here works on a fixed pure state `|Ψ>` of `S ⊗ M`. Ensemble
//! amplitudes are kept real (`√w_j`); any phase lives in the ancilla kets.

mod construct;
mod lemma;
mod state;
mod umap;

pub use construct::{
    ensemble_containing, ensemble_from_basis, match_purification, match_purification_with, purify,
    purify_with, BasisEnsemble, ContainingEnsemble,
};
pub use lemma::lemma_unitary;
pub use state::{Ancilla, JointState, JOINT_NORM_TOL};
pub use umap::{
    apply_unitary_umap, check_umap, umap_between, umap_via, UMap, UMapGenerator, UMapViolation,
    UnitaryImage,
};
