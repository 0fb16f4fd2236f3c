#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hjw_cli::document::{
    BasisDoc, Document, ElementDoc, EnsembleDoc, GeneratorDoc, JointDoc, KetDoc, MatrixDoc,
    OutcomeDoc, Pair, ReportDoc, SteeringDoc, UMapDoc, ValidationDoc, ViolationDoc, LAYOUT_S_MAJOR,
};
use rand::Rng;

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn hjw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hjw")).args(args).output().expect("spawn hjw")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Finite float spread over many magnitudes, with a few special values.
pub fn float(rng: &mut impl Rng) -> f64 {
    match rng.random_range(0..10) {
        0 => 0.0,
        1 => -0.0,
        2 => f64::MIN_POSITIVE * rng.random_range(0.0..4.0),
        3 => rng.random_range(-1.0..1.0) * 1e300,
        _ => {
            let exp = rng.random_range(-30..30);
            rng.random_range(-1.0..1.0) * 10f64.powi(exp)
        }
    }
}

pub fn pairs(rng: &mut impl Rng, n: usize) -> Vec<Pair> {
    (0..n).map(|_| [float(rng), float(rng)]).collect()
}

fn grid(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<Vec<Pair>> {
    (0..rows).map(|_| pairs(rng, cols)).collect()
}

fn ensemble(rng: &mut impl Rng) -> EnsembleDoc {
    let dim = rng.random_range(1..5);
    let order = rng.random_range(1..5);
    EnsembleDoc {
        dim,
        elements: (0..order).map(|_| ElementDoc { weight: float(rng), ket: pairs(rng, dim) }).collect(),
    }
}

fn matrix(rng: &mut impl Rng) -> MatrixDoc {
    let (rows, cols) = (rng.random_range(1..5), rng.random_range(1..5));
    MatrixDoc { rows, cols, entries: grid(rng, rows, cols) }
}

fn name(rng: &mut impl Rng) -> String {
    const POOL: &[char] = &['a', 'Z', '0', ' ', '"', '\\', '\n', 'é', 'ρ', '⊗', '{', ']'];
    (0..rng.random_range(0..12)).map(|_| POOL[rng.random_range(0..POOL.len())]).collect()
}

/// Random document of any kind; content need not be physically valid.
pub fn random_document(rng: &mut impl Rng) -> Document {
    match rng.random_range(0..8) {
        0 => {
            let dim = rng.random_range(1..6);
            Document::Ket(KetDoc { dim, entries: pairs(rng, dim) })
        }
        1 => Document::Matrix(matrix(rng)),
        2 => Document::Ensemble(ensemble(rng)),
        3 => {
            let (dim_s, dim_m) = (rng.random_range(1..4), rng.random_range(1..4));
            Document::Joint(JointDoc { dim_s, dim_m, layout: LAYOUT_S_MAJOR.into(), vec: pairs(rng, dim_s * dim_m) })
        }
        4 => {
            let (rows, cols) = (rng.random_range(1..4), rng.random_range(1..4));
            let dim_m = rng.random_range(1..4);
            Document::Umap(UMapDoc {
                rows,
                cols,
                coeffs: grid(rng, rows, cols),
                generator: rng.random_bool(0.5).then(|| GeneratorDoc {
                    dim_m,
                    unitary: grid(rng, dim_m, dim_m),
                    basis: grid(rng, dim_m, dim_m),
                }),
                from: rng.random_bool(0.5).then(|| ensemble(rng)),
                to: rng.random_bool(0.5).then(|| ensemble(rng)),
            })
        }
        5 => {
            let dim = rng.random_range(1..5);
            Document::Basis(BasisDoc { dim, kets: grid(rng, dim, dim) })
        }
        6 => {
            let k = rng.random_range(1..4);
            let dim = rng.random_range(1..4);
            Document::Report(ReportDoc::Steering(SteeringDoc {
                sampler: "chacha20".into(),
                shots: rng.random(),
                seed: rng.random(),
                counts: (0..k).map(|_| rng.random()).collect(),
                expected_weights: (0..k).map(|_| float(rng)).collect(),
                outcomes: (0..k)
                    .map(|_| OutcomeDoc {
                        outcome_index: rng.random_range(0..k),
                        s_ket: pairs(rng, dim),
                        m_ket: pairs(rng, dim),
                    })
                    .collect(),
                post_density: matrix(rng),
            }))
        }
        _ => {
            let n = rng.random_range(0..3);
            Document::Report(ReportDoc::Validation(ValidationDoc {
                target: name(rng),
                clean: n == 0,
                violations: (0..n)
                    .map(|_| ViolationDoc {
                        name: name(rng),
                        message: name(rng),
                        indices: (0..rng.random_range(0..3)).map(|_| rng.random_range(0..100)).collect(),
                    })
                    .collect(),
            }))
        }
    }
}
