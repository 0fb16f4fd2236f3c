//! Versioned JSON interchange documents.
//!
//! Every document is an envelope `{"kind": ..., "version": 1, "payload": ...}`.
//! Complex numbers are `[re, im]` pairs, kets are arrays of pairs and matrices
//! are arrays of rows. Joint kets are S-major: entry `i * dim_m + k` holds the
//! amplitude of `|i>_S ⊗ |k>_M`. A file may also hold a JSON array of
//! envelopes; commands that produce several documents write such a bundle.
//!
//! Floats are written with 17 significant digits so that every value parses
//! back to the same `f64`.

use std::io;

use hjw::{
    Ancilla, ComplexMatrix, ComplexVector, JointState, RhoEnsemble, SteeringReport, UMap,
    UMapGenerator, C64,
};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Complex number as `[re, im]`.
pub type Pair = [f64; 2];

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: String },
    #[error("no {0} document in input")]
    Missing(&'static str),
    #[error("invalid {kind} payload: {message}")]
    Invalid { kind: &'static str, message: String },
}

fn invalid(kind: &'static str, message: impl Into<String>) -> DocError {
    DocError::Invalid { kind, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ket,
    Matrix,
    Ensemble,
    Joint,
    Umap,
    Basis,
    Report,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ket => "ket",
            Kind::Matrix => "matrix",
            Kind::Ensemble => "ensemble",
            Kind::Joint => "joint",
            Kind::Umap => "umap",
            Kind::Basis => "basis",
            Kind::Report => "report",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: Kind,
    version: u32,
    payload: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KetDoc {
    pub dim: usize,
    pub entries: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub weight: f64,
    pub ket: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleDoc {
    pub dim: usize,
    pub elements: Vec<ElementDoc>,
}

pub const LAYOUT_S_MAJOR: &str = "s-major";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointDoc {
    pub dim_s: usize,
    pub dim_m: usize,
    pub layout: String,
    pub vec: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub dim: usize,
    pub kets: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub dim_m: usize,
    pub unitary: Vec<Vec<Pair>>,
    pub basis: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UMapDoc {
    pub rows: usize,
    pub cols: usize,
    pub coeffs: Vec<Vec<Pair>>,
    pub generator: Option<GeneratorDoc>,
    /// Source ensemble, when known.
    pub from: Option<EnsembleDoc>,
    /// Target ensemble, when known.
    pub to: Option<EnsembleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDoc {
    pub outcome_index: usize,
    pub s_ket: Vec<Pair>,
    pub m_ket: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteeringDoc {
    pub sampler: String,
    pub shots: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    pub expected_weights: Vec<f64>,
    pub outcomes: Vec<OutcomeDoc>,
    pub post_density: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub name: String,
    pub message: String,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationDoc {
    pub target: String,
    pub clean: bool,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "lowercase")]
pub enum ReportDoc {
    Steering(SteeringDoc),
    Validation(ValidationDoc),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Ket(KetDoc),
    Matrix(MatrixDoc),
    Ensemble(EnsembleDoc),
    Joint(JointDoc),
    Umap(UMapDoc),
    Basis(BasisDoc),
    Report(ReportDoc),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Ket(_) => Kind::Ket,
            Document::Matrix(_) => Kind::Matrix,
            Document::Ensemble(_) => Kind::Ensemble,
            Document::Joint(_) => Kind::Joint,
            Document::Umap(_) => Kind::Umap,
            Document::Basis(_) => Kind::Basis,
            Document::Report(_) => Kind::Report,
        }
    }

    fn payload(&self) -> serde_json::Result<Value> {
        match self {
            Document::Ket(d) => serde_json::to_value(d),
            Document::Matrix(d) => serde_json::to_value(d),
            Document::Ensemble(d) => serde_json::to_value(d),
            Document::Joint(d) => serde_json::to_value(d),
            Document::Umap(d) => serde_json::to_value(d),
            Document::Basis(d) => serde_json::to_value(d),
            Document::Report(d) => serde_json::to_value(d),
        }
    }

    fn from_envelope(env: Envelope) -> Result<Self, DocError> {
        if env.version != SCHEMA_VERSION {
            return Err(DocError::Version(env.version));
        }
        let p = env.payload;
        Ok(match env.kind {
            Kind::Ket => Document::Ket(serde_json::from_value(p)?),
            Kind::Matrix => Document::Matrix(serde_json::from_value(p)?),
            Kind::Ensemble => Document::Ensemble(serde_json::from_value(p)?),
            Kind::Joint => Document::Joint(serde_json::from_value(p)?),
            Kind::Umap => Document::Umap(serde_json::from_value(p)?),
            Kind::Basis => Document::Basis(serde_json::from_value(p)?),
            Kind::Report => Document::Report(serde_json::from_value(p)?),
        })
    }
}

/// Parse a single envelope or an array of envelopes.
pub fn parse_documents(text: &str) -> Result<Vec<Document>, DocError> {
    let value: Value = serde_json::from_str(text)?;
    let envelopes = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    envelopes
        .into_iter()
        .map(|v| Document::from_envelope(serde_json::from_value(v)?))
        .collect()
}

/// Writes `f64` with 17 significant digits.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

fn envelope_value(doc: &Document) -> Result<Value, DocError> {
    Ok(serde_json::json!({
        "kind": doc.kind(),
        "version": SCHEMA_VERSION,
        "payload": doc.payload()?,
    }))
}

/// Serialize one document as an envelope, or several as an array, followed
/// by a newline.
pub fn write_documents(docs: &[Document]) -> Result<String, DocError> {
    let value = match docs {
        [single] => envelope_value(single)?,
        many => Value::Array(many.iter().map(envelope_value).collect::<Result<_, _>>()?),
    };
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

// Conversions between documents and library values.

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn complex(kind: &'static str, p: &Pair) -> Result<C64, DocError> {
    if !p[0].is_finite() || !p[1].is_finite() {
        return Err(invalid(kind, "non-finite number"));
    }
    Ok(C64::new(p[0], p[1]))
}

pub fn ket_pairs(v: &ComplexVector) -> Vec<Pair> {
    v.entries().iter().copied().map(pair).collect()
}

fn vector(kind: &'static str, entries: &[Pair], dim: usize) -> Result<ComplexVector, DocError> {
    if entries.len() != dim {
        return Err(invalid(kind, format!("declared dim {dim} but {} entries", entries.len())));
    }
    let values = entries.iter().map(|p| complex(kind, p)).collect::<Result<Vec<_>, _>>()?;
    ComplexVector::new(values).map_err(|e| invalid(kind, e.to_string()))
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| m.row(i).iter().copied().map(pair).collect()).collect()
}

fn matrix(kind: &'static str, rows: &[Vec<Pair>], n_rows: usize, n_cols: usize) -> Result<ComplexMatrix, DocError> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(invalid(kind, format!("entries do not form a {n_rows}x{n_cols} grid")));
    }
    let values = rows
        .iter()
        .flatten()
        .map(|p| complex(kind, p))
        .collect::<Result<Vec<_>, _>>()?;
    ComplexMatrix::new(n_rows, n_cols, values).map_err(|e| invalid(kind, e.to_string()))
}

fn kets(kind: &'static str, rows: &[Vec<Pair>], dim: usize) -> Result<Vec<ComplexVector>, DocError> {
    rows.iter().map(|k| vector(kind, k, dim)).collect()
}

impl KetDoc {
    pub fn from_vector(v: &ComplexVector) -> Self {
        Self { dim: v.dim(), entries: ket_pairs(v) }
    }

    pub fn to_vector(&self) -> Result<ComplexVector, DocError> {
        vector("ket", &self.entries, self.dim)
    }
}

impl MatrixDoc {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), entries: matrix_rows(m) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, DocError> {
        matrix("matrix", &self.entries, self.rows, self.cols)
    }
}

impl EnsembleDoc {
    pub fn from_ensemble(e: &RhoEnsemble) -> Self {
        Self {
            dim: e.dim(),
            elements: e
                .elements()
                .iter()
                .map(|el| ElementDoc { weight: el.weight, ket: ket_pairs(&el.ket) })
                .collect(),
        }
    }

    /// Structural checks only; ensemble rules (positive weights and so on)
    /// surface as library errors from [`RhoEnsemble::new`].
    pub fn to_pairs(&self) -> Result<Vec<(ComplexVector, f64)>, DocError> {
        if self.elements.is_empty() {
            return Err(invalid("ensemble", "no elements"));
        }
        self.elements
            .iter()
            .map(|el| {
                if !el.weight.is_finite() {
                    return Err(invalid("ensemble", "non-finite weight"));
                }
                Ok((vector("ensemble", &el.ket, self.dim)?, el.weight))
            })
            .collect()
    }
}

impl JointDoc {
    pub fn from_joint(j: &JointState) -> Self {
        Self { dim_s: j.dim_s(), dim_m: j.dim_m(), layout: LAYOUT_S_MAJOR.into(), vec: ket_pairs(j.vec()) }
    }

    /// The raw ket after structural checks; normalization is left to
    /// [`JointState::new`].
    pub fn to_vector(&self) -> Result<ComplexVector, DocError> {
        if self.layout != LAYOUT_S_MAJOR {
            return Err(invalid("joint", format!("unsupported layout {:?}", self.layout)));
        }
        if self.dim_s == 0 || self.dim_m == 0 {
            return Err(invalid("joint", "zero dimension"));
        }
        vector("joint", &self.vec, self.dim_s * self.dim_m)
    }
}

impl BasisDoc {
    pub fn from_kets(kets: &[ComplexVector]) -> Self {
        Self { dim: kets.first().map_or(0, ComplexVector::dim), kets: kets.iter().map(ket_pairs).collect() }
    }

    pub fn from_ancilla(a: &Ancilla) -> Self {
        Self::from_kets(a.kets())
    }

    pub fn to_kets(&self) -> Result<Vec<ComplexVector>, DocError> {
        kets("basis", &self.kets, self.dim)
    }
}

impl UMapDoc {
    pub fn from_umap(u: &UMap, from: Option<&RhoEnsemble>, to: Option<&RhoEnsemble>) -> Self {
        Self {
            rows: u.coeffs.rows(),
            cols: u.coeffs.cols(),
            coeffs: matrix_rows(&u.coeffs),
            generator: u.generator.as_ref().map(|g| GeneratorDoc {
                dim_m: g.unitary.rows(),
                unitary: matrix_rows(&g.unitary),
                basis: g.basis.iter().map(ket_pairs).collect(),
            }),
            from: from.map(EnsembleDoc::from_ensemble),
            to: to.map(EnsembleDoc::from_ensemble),
        }
    }

    pub fn to_umap(&self) -> Result<UMap, DocError> {
        let coeffs = matrix("umap", &self.coeffs, self.rows, self.cols)?;
        let generator = match &self.generator {
            None => None,
            Some(g) => Some(UMapGenerator {
                unitary: matrix("umap", &g.unitary, g.dim_m, g.dim_m)?,
                basis: kets("umap", &g.basis, g.dim_m)?,
            }),
        };
        Ok(UMap::new(coeffs, generator))
    }
}

impl SteeringDoc {
    pub fn from_report(r: &SteeringReport) -> Self {
        Self {
            sampler: hjw::steering::SAMPLER_NAME.into(),
            shots: r.shots,
            seed: r.seed,
            counts: r.counts.clone(),
            expected_weights: r.expected_weights.clone(),
            outcomes: r
                .outcomes
                .iter()
                .map(|o| OutcomeDoc {
                    outcome_index: o.outcome_index,
                    s_ket: ket_pairs(&o.s_ket),
                    m_ket: ket_pairs(&o.m_ket),
                })
                .collect(),
            post_density: MatrixDoc::from_matrix(&r.post_density),
        }
    }
}

macro_rules! take_kind {
    ($name:ident, $variant:ident, $ty:ty, $label:literal) => {
        /// First document of this kind in a parsed file.
        pub fn $name(docs: Vec<Document>) -> Result<$ty, DocError> {
            let mut found = None;
            for d in docs {
                if let Document::$variant(x) = d {
                    found = Some(x);
                    break;
                }
            }
            found.ok_or(DocError::Missing($label))
        }
    };
}

take_kind!(take_ket, Ket, KetDoc, "ket");
take_kind!(take_matrix, Matrix, MatrixDoc, "matrix");
take_kind!(take_ensemble, Ensemble, EnsembleDoc, "ensemble");
take_kind!(take_joint, Joint, JointDoc, "joint");
take_kind!(take_umap, Umap, UMapDoc, "umap");
take_kind!(take_basis, Basis, BasisDoc, "basis");
take_kind!(take_report, Report, ReportDoc, "report");
