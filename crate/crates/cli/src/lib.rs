//! Command-line front end for the `hjw` library.
//!
//! Commands read and write the JSON documents described in [`document`].
//! Passing `-` as a path reads stdin or writes stdout.

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod document;
pub mod error;

use std::collections::HashMap;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use hjw::{
    ComplexVector, JointState, RhoEnsemble, DEFAULT_COLLINEARITY_TOL, DEFAULT_RANK_TOL, DEFAULT_TOL,
};

use crate::document::{
    take_basis, take_ensemble, take_joint, take_ket, take_matrix, take_umap, BasisDoc, Document,
    EnsembleDoc, JointDoc, ReportDoc, SteeringDoc, UMapDoc, ValidationDoc, ViolationDoc,
};
pub use crate::error::{CliError, EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, EXIT_PRECONDITION};

#[derive(Debug, Parser)]
#[command(name = "hjw", version, about = "Construct and check ρ-ensembles, purifications and U-maps")]
pub struct Cli {
    /// Tolerance for normalization, orthonormality and equality checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Threshold below which weights and eigenvalues count as zero.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output path, `-` for stdout.
    #[arg(long, short, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Purify an ensemble; writes a joint document and an ancilla basis of H_M.
    Purify {
        ensemble: String,
        /// Dimension of the ancilla space; at least the ensemble order.
        #[arg(long)]
        dim_m: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Ensemble selected by an orthonormal basis of H_M.
    FromBasis {
        joint: String,
        basis: String,
        #[command(flatten)]
        output: Output,
    },
    /// U-map relating two ensembles of the same density matrix.
    Umap {
        from: String,
        to: String,
        #[command(flatten)]
        output: Output,
    },
    /// Rotate a basis of H_M by a unitary; writes the new ensemble and its U-map.
    ApplyU {
        joint: String,
        basis: String,
        /// Matrix document holding the unitary on H_M.
        unitary: String,
        #[command(flatten)]
        output: Output,
    },
    /// Ensemble whose first element is a chosen ket in the support.
    Contains {
        joint: String,
        /// Ket document for the target element.
        ket: String,
        #[command(flatten)]
        output: Output,
    },
    /// Measure the ancilla in a basis and sample outcomes.
    Steer {
        joint: String,
        basis: String,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check a document; exits 3 when violations are found.
    Verify {
        #[command(flatten)]
        target: VerifyTarget,
        /// Density matrix the ensemble must decompose.
        #[arg(long, requires = "ensemble")]
        rho: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifyTarget {
    #[arg(long)]
    pub ensemble: Option<String>,
    #[arg(long)]
    pub umap: Option<String>,
    #[arg(long)]
    pub joint: Option<String>,
}

/// Reads each path once, so `-` may be named by several arguments.
#[derive(Default)]
pub struct Loader {
    cache: HashMap<String, Vec<Document>>,
}

impl Loader {
    pub fn load(&mut self, path: &str) -> Result<Vec<Document>, CliError> {
        if let Some(docs) = self.cache.get(path) {
            return Ok(docs.clone());
        }
        let text = read_text(path)?;
        let docs = document::parse_documents(&text)
            .map_err(|source| CliError::Document { path: path.into(), source })?;
        self.cache.insert(path.into(), docs.clone());
        Ok(docs)
    }
}

fn read_text(path: &str) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn write_text(path: &str, text: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err)
    } else {
        std::fs::write(path, text).map_err(io_err)
    }
}

fn doc_err(path: &str) -> impl Fn(document::DocError) -> CliError + '_ {
    move |source| CliError::Document { path: path.into(), source }
}

fn load_ensemble(loader: &mut Loader, path: &str) -> Result<RhoEnsemble, CliError> {
    let doc = take_ensemble(loader.load(path)?).map_err(doc_err(path))?;
    Ok(RhoEnsemble::from_pairs(doc.to_pairs().map_err(doc_err(path))?)?)
}

fn load_joint(loader: &mut Loader, path: &str) -> Result<JointState, CliError> {
    let doc = take_joint(loader.load(path)?).map_err(doc_err(path))?;
    let vec = doc.to_vector().map_err(doc_err(path))?;
    Ok(JointState::new(vec, doc.dim_s, doc.dim_m)?)
}

fn load_basis(loader: &mut Loader, path: &str) -> Result<Vec<ComplexVector>, CliError> {
    let doc = take_basis(loader.load(path)?).map_err(doc_err(path))?;
    doc.to_kets().map_err(doc_err(path))
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub tol: f64,
    pub rank_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, rank_tol: DEFAULT_RANK_TOL }
    }
}

/// Result of a command: documents to write, and for `verify` whether the
/// target was clean.
pub struct Outcome {
    pub documents: Vec<Document>,
    pub failure: Option<CliError>,
}

impl From<Vec<Document>> for Outcome {
    fn from(documents: Vec<Document>) -> Self {
        Self { documents, failure: None }
    }
}

pub fn execute(command: &Command, settings: Settings, loader: &mut Loader) -> Result<Outcome, CliError> {
    let Settings { tol, rank_tol } = settings;
    if !(tol > 0.0 && tol.is_finite() && rank_tol > 0.0 && rank_tol.is_finite()) {
        return Err(CliError::Usage("--tol and --rank-tol must be positive and finite".into()));
    }
    match command {
        Command::Purify { ensemble, dim_m, .. } => {
            let e = load_ensemble(loader, ensemble)?;
            let (joint, ancilla) = hjw::purify(&e, *dim_m)?;
            let basis = hjw::complete_orthonormal(ancilla.kets(), *dim_m, tol)?;
            Ok(vec![Document::Joint(JointDoc::from_joint(&joint)), Document::Basis(BasisDoc::from_kets(&basis))].into())
        }
        Command::FromBasis { joint, basis, .. } => {
            let joint = load_joint(loader, joint)?;
            let basis = load_basis(loader, basis)?;
            let found = hjw::ensemble_from_basis(&joint, &basis, rank_tol)?;
            Ok(vec![Document::Ensemble(EnsembleDoc::from_ensemble(&found.ensemble))].into())
        }
        Command::Umap { from, to, .. } => {
            let from = load_ensemble(loader, from)?;
            let to = load_ensemble(loader, to)?;
            let umap = hjw::umap_between(&from, &to, tol)?;
            Ok(vec![Document::Umap(UMapDoc::from_umap(&umap, Some(&from), Some(&to)))].into())
        }
        Command::ApplyU { joint, basis, unitary, .. } => {
            let joint = load_joint(loader, joint)?;
            let basis = load_basis(loader, basis)?;
            let u = take_matrix(loader.load(unitary)?)
                .and_then(|m| m.to_matrix())
                .map_err(doc_err(unitary))?;
            let image = hjw::apply_unitary_umap(&joint, &basis, &u, rank_tol)?;
            let umap = UMapDoc::from_umap(&image.umap, Some(&image.from.ensemble), Some(&image.to.ensemble));
            Ok(vec![Document::Ensemble(EnsembleDoc::from_ensemble(&image.to.ensemble)), Document::Umap(umap)].into())
        }
        Command::Contains { joint, ket, .. } => {
            let joint = load_joint(loader, joint)?;
            let xi = take_ket(loader.load(ket)?).and_then(|k| k.to_vector()).map_err(doc_err(ket))?;
            let found = hjw::ensemble_containing(&joint, &xi, rank_tol)?;
            Ok(vec![
                Document::Ensemble(EnsembleDoc::from_ensemble(&found.ensemble)),
                Document::Basis(BasisDoc::from_kets(&found.ancilla_basis)),
            ]
            .into())
        }
        Command::Steer { joint, basis, shots, seed, .. } => {
            let joint = load_joint(loader, joint)?;
            let basis = load_basis(loader, basis)?;
            let report = hjw::steer(&joint, &basis, *shots, *seed, rank_tol)?;
            Ok(vec![Document::Report(ReportDoc::Steering(SteeringDoc::from_report(&report)))].into())
        }
        Command::Verify { target, rho, .. } => verify(target, rho.as_deref(), settings, loader),
    }
}

fn violation(name: &str, message: String, indices: Vec<usize>) -> ViolationDoc {
    ViolationDoc { name: name.into(), message, indices }
}

fn verify(
    target: &VerifyTarget,
    rho: Option<&str>,
    settings: Settings,
    loader: &mut Loader,
) -> Result<Outcome, CliError> {
    let Settings { tol, rank_tol } = settings;
    let (label, violations) = if let Some(path) = &target.ensemble {
        let e = load_ensemble(loader, path)?;
        let mut found: Vec<ViolationDoc> =
            hjw::validate_ensemble_with(&e, tol, DEFAULT_COLLINEARITY_TOL, rank_tol)
                .iter()
                .map(|v| violation(v.name(), v.to_string(), v.indices()))
                .collect();
        if let Some(rho_path) = rho {
            let m = take_matrix(loader.load(rho_path)?)
                .and_then(|m| m.to_matrix())
                .map_err(doc_err(rho_path))?;
            let sum = e.weighted_sum();
            if m.rows() != sum.rows() || m.cols() != sum.cols() {
                found.push(violation(
                    "DimensionMismatch",
                    format!("ensemble dim {} against {}x{} density", e.dim(), m.rows(), m.cols()),
                    vec![],
                ));
            } else {
                let deviation = sum.max_abs_diff(&m);
                if !(deviation <= tol) {
                    found.push(violation(
                        "DensityMismatch",
                        format!("weighted sum differs from the density by {deviation:.3e}"),
                        vec![],
                    ));
                }
            }
        }
        ("ensemble", found)
    } else if let Some(path) = &target.umap {
        let doc = take_umap(loader.load(path)?).map_err(doc_err(path))?;
        let umap = doc.to_umap().map_err(doc_err(path))?;
        let ends = |d: &Option<EnsembleDoc>| -> Result<Option<RhoEnsemble>, CliError> {
            match d {
                None => Ok(None),
                Some(d) => Ok(Some(RhoEnsemble::from_pairs(d.to_pairs().map_err(doc_err(path))?)?)),
            }
        };
        let (from, to) = (ends(&doc.from)?, ends(&doc.to)?);
        let found = hjw::check_umap(&umap, from.as_ref(), to.as_ref(), tol)
            .iter()
            .map(|v| violation(v.name(), v.to_string(), vec![]))
            .collect();
        ("umap", found)
    } else if let Some(path) = &target.joint {
        let doc = take_joint(loader.load(path)?).map_err(doc_err(path))?;
        let vec = doc.to_vector().map_err(doc_err(path))?;
        let norm = vec.norm();
        let mut found = Vec::new();
        if !((norm - 1.0).abs() <= tol) {
            found.push(violation("NotNormalized", format!("joint ket has norm {norm:.17}"), vec![]));
        }
        ("joint", found)
    } else {
        return Err(CliError::Usage("verify needs --ensemble, --umap or --joint".into()));
    };
    let count = violations.len();
    let report = ValidationDoc { target: label.into(), clean: count == 0, violations };
    Ok(Outcome {
        documents: vec![Document::Report(ReportDoc::Validation(report))],
        failure: (count > 0).then_some(CliError::Violations { target: label, count }),
    })
}

fn output_path(command: &Command) -> &str {
    match command {
        Command::Purify { output, .. }
        | Command::FromBasis { output, .. }
        | Command::Umap { output, .. }
        | Command::ApplyU { output, .. }
        | Command::Contains { output, .. }
        | Command::Steer { output, .. }
        | Command::Verify { output, .. } => &output.out,
    }
}

/// Run a parsed command line, writing its documents.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let settings = Settings { tol: cli.tol, rank_tol: cli.rank_tol };
    let outcome = execute(&cli.command, settings, &mut Loader::default())?;
    let path = output_path(&cli.command);
    let text = document::write_documents(&outcome.documents).map_err(doc_err(path))?;
    write_text(path, &text)?;
    outcome.failure.map_or(Ok(()), Err)
}

/// Parse arguments, run, report errors on stderr and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
