//! File formats: parameter files (JSON), Matrix Market coordinate files and
//! a JSON matrix form.
//!
//! Parameter file:
//!
//! ```json
//! { "n": 3, "backend": "exact",
//!   "quads": [{"t": 1, "s": 1, "a": "1/2+0i", "b": "0+0i", "x": "0+1/2i", "y": "0+0i"}],
//!   "axial": [{"t": 1, "a": "1+0i", "b": "0+0i"}],
//!   "center": "1+0i" }
//! ```
//!
//! `axial` and `center` are required iff `n` is odd.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{AxialPair, ParamError, ParamSet, Quad};
use crate::scalars::{Backend, ExactScalar, Real, Scalar, ScalarError};
use crate::sparsemat::{MatrixError, SparseMatrix};

pub const MATRIX_MARKET_HEADER: &str = "%%MatrixMarket matrix coordinate complex general";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Scalar { field: String, source: ScalarError },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("missing field \"{0}\"")]
    MissingField(&'static str),
    #[error("field \"{0}\" is only allowed for odd n")]
    UnexpectedField(&'static str),
    #[error("duplicate {0}")]
    DuplicateKey(String),
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },
    #[error("matrix market line {line}: {msg}")]
    MatrixMarket { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    MatrixMarket,
    Json,
}

/// A parameter set whose backend is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyParamSet {
    Exact(ParamSet<ExactScalar>),
    Float(ParamSet<Complex<f64>>),
}

impl AnyParamSet {
    pub fn backend(&self) -> Backend {
        match self {
            AnyParamSet::Exact(_) => Backend::Exact,
            AnyParamSet::Float(_) => Backend::Float,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyParamSet::Exact(p) => p.n(),
            AnyParamSet::Float(p) => p.n(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamFile {
    n: usize,
    backend: Backend,
    quads: Vec<QuadRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axial: Option<Vec<AxialRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    center: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadRecord {
    t: usize,
    s: usize,
    a: String,
    b: String,
    x: String,
    y: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxialRecord {
    t: usize,
    a: String,
    b: String,
}

fn scalar<S: Scalar>(field: impl Into<String>, text: &str) -> Result<S, IoError> {
    S::decode(text).map_err(|source| IoError::Scalar { field: field.into(), source })
}

fn typed_params<S: Scalar>(file: ParamFile) -> Result<ParamSet<S>, IoError> {
    let odd = file.n % 2 == 1;
    let mut quads = BTreeMap::new();
    for q in file.quads {
        let at = |f: &str| format!("quads[({},{})].{f}", q.t, q.s);
        let quad =
            Quad::new(scalar(at("a"), &q.a)?, scalar(at("b"), &q.b)?, scalar(at("x"), &q.x)?, scalar(at("y"), &q.y)?);
        if quads.insert((q.t, q.s), quad).is_some() {
            return Err(IoError::DuplicateKey(format!("quads key ({},{})", q.t, q.s)));
        }
    }
    let mut axial = BTreeMap::new();
    match (odd, file.axial) {
        (true, None) => return Err(IoError::MissingField("axial")),
        (false, Some(_)) => return Err(IoError::UnexpectedField("axial")),
        (_, Some(records)) => {
            for r in records {
                let at = |f: &str| format!("axial[{}].{f}", r.t);
                let pair = AxialPair { a: scalar(at("a"), &r.a)?, b: scalar(at("b"), &r.b)? };
                if axial.insert(r.t, pair).is_some() {
                    return Err(IoError::DuplicateKey(format!("axial key {}", r.t)));
                }
            }
        }
        (false, None) => {}
    }
    let center = match (odd, file.center) {
        (true, None) => return Err(IoError::MissingField("center")),
        (false, Some(_)) => return Err(IoError::UnexpectedField("center")),
        (_, c) => c.map(|c| scalar("center", &c)).transpose()?,
    };
    Ok(ParamSet::new(file.n, quads, axial, center)?)
}

/// Parse a parameter file's text, dispatching on its `backend` field.
pub fn params_from_json(text: &str) -> Result<AnyParamSet, IoError> {
    let file: ParamFile = serde_json::from_str(text)?;
    Ok(match file.backend {
        Backend::Exact => AnyParamSet::Exact(typed_params(file)?),
        Backend::Float => AnyParamSet::Float(typed_params(file)?),
    })
}

/// Parse a parameter file that must use backend `S`.
pub fn params_from_json_as<S: Scalar>(text: &str) -> Result<ParamSet<S>, IoError> {
    let file: ParamFile = serde_json::from_str(text)?;
    if file.backend != S::BACKEND {
        return Err(IoError::BackendMismatch { expected: S::BACKEND, found: file.backend });
    }
    typed_params(file)
}

pub fn parse_params(path: impl AsRef<Path>) -> Result<AnyParamSet, IoError> {
    params_from_json(&fs::read_to_string(path)?)
}

pub fn params_to_value<S: Scalar>(p: &ParamSet<S>) -> serde_json::Value {
    let file = ParamFile {
        n: p.n(),
        backend: S::BACKEND,
        quads: p
            .quads()
            .map(|((t, s), q)| QuadRecord { t, s, a: q.a.encode(), b: q.b.encode(), x: q.x.encode(), y: q.y.encode() })
            .collect(),
        axial: (p.n() % 2 == 1)
            .then(|| p.axial().map(|(t, pair)| AxialRecord { t, a: pair.a.encode(), b: pair.b.encode() }).collect()),
        center: p.center().map(Scalar::encode),
    };
    serde_json::to_value(file).expect("parameter records serialize")
}

pub fn params_to_json<S: Scalar>(p: &ParamSet<S>) -> String {
    serde_json::to_string_pretty(&params_to_value(p)).expect("values serialize")
}

/// Write the coordinate form: header, `rows cols nnz`, then one
/// `row col re im` line per entry in row-major order. Exact components are
/// written as `p` or `p/q`.
pub fn write_matrix_market<S: Scalar, W: Write>(m: &SparseMatrix<S>, mut out: W) -> io::Result<()> {
    writeln!(out, "{MATRIX_MARKET_HEADER}")?;
    writeln!(out, "{} {} {}", m.dim(), m.dim(), m.nnz())?;
    for (r, c, v) in m.entries() {
        writeln!(out, "{r} {c} {} {}", v.re().encode(), v.im().encode())?;
    }
    Ok(())
}

pub fn read_matrix_market<S: Scalar, R: Read>(input: R) -> Result<SparseMatrix<S>, IoError> {
    let err = |line: usize, msg: &str| IoError::MatrixMarket { line, msg: msg.to_string() };
    let mut lines = BufReader::new(input).lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let header = header?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words != ["%%matrixmarket", "matrix", "coordinate", "complex", "general"] {
        return Err(err(1, "expected a coordinate complex general header"));
    }
    let mut size: Option<(usize, usize)> = None;
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        match size {
            None => {
                let nums: Vec<usize> = fields
                    .iter()
                    .map(|f| f.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(lineno, "bad size line"))?;
                let [rows, cols, nnz] = nums[..] else {
                    return Err(err(lineno, "size line needs rows cols nnz"));
                };
                if rows != cols || rows == 0 {
                    return Err(err(lineno, "only non-empty square matrices are supported"));
                }
                size = Some((rows, nnz));
                entries.reserve(nnz);
            }
            Some(_) => {
                let [r, c, re, im] = fields[..] else {
                    return Err(err(lineno, "entry line needs row col re im"));
                };
                let r: usize = r.parse().map_err(|_| err(lineno, "bad row index"))?;
                let c: usize = c.parse().map_err(|_| err(lineno, "bad column index"))?;
                let re = S::Real::decode(re).map_err(|e| err(lineno, &e.to_string()))?;
                let im = S::Real::decode(im).map_err(|e| err(lineno, &e.to_string()))?;
                entries.push((r, c, S::from_parts(re, im)));
            }
        }
    }
    let (dim, nnz) = size.ok_or_else(|| err(1, "missing size line"))?;
    if entries.len() != nnz {
        return Err(err(0, &format!("size line announces {nnz} entries, found {}", entries.len())));
    }
    Ok(SparseMatrix::from_entries(dim, entries)?)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    dim: usize,
    backend: Backend,
    /// `[row, col, "scalar"]`, 1-based.
    entries: Vec<(usize, usize, String)>,
}

pub fn matrix_to_json<S: Scalar>(m: &SparseMatrix<S>) -> String {
    let file = MatrixFile {
        dim: m.dim(),
        backend: S::BACKEND,
        entries: m.entries().map(|(r, c, v)| (r, c, v.encode())).collect(),
    };
    serde_json::to_string_pretty(&file).expect("matrix records serialize")
}

pub fn matrix_from_json<S: Scalar>(text: &str) -> Result<SparseMatrix<S>, IoError> {
    let file: MatrixFile = serde_json::from_str(text)?;
    if file.backend != S::BACKEND {
        return Err(IoError::BackendMismatch { expected: S::BACKEND, found: file.backend });
    }
    let entries = file
        .entries
        .iter()
        .map(|(r, c, v)| Ok((*r, *c, scalar(format!("entry ({r},{c})"), v)?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(SparseMatrix::from_entries(file.dim, entries)?)
}

pub fn export_matrix<S: Scalar>(
    m: &SparseMatrix<S>,
    path: impl AsRef<Path>,
    format: MatrixFormat,
) -> Result<(), IoError> {
    match format {
        MatrixFormat::MatrixMarket => {
            let mut f = io::BufWriter::new(fs::File::create(path)?);
            write_matrix_market(m, &mut f)?;
            f.flush()?;
        }
        MatrixFormat::Json => fs::write(path, matrix_to_json(m))?,
    }
    Ok(())
}

pub fn import_matrix<S: Scalar>(path: impl AsRef<Path>, format: MatrixFormat) -> Result<SparseMatrix<S>, IoError> {
    match format {
        MatrixFormat::MatrixMarket => read_matrix_market(fs::File::open(path)?),
        MatrixFormat::Json => matrix_from_json(&fs::read_to_string(path)?),
    }
}
