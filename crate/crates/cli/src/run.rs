use std::fmt;

use serde_json::{json, Map, Value};
use ybe::analyze::{self, AnalyzeError};
use ybe::io::{self, AnyParamSet, IoError, MatrixFormat};
use ybe::{
    braid_rep_check, braid_residual, build_r, build_rhat, build_s, entangling_check, quantum_residual, random_params,
    sample_unitary_params, tensor_factor, unitarity_defect, unitarity_residuals, Backend, EntanglingOptions,
    ExactScalar, FloatScalar64, ParamSet, Real, Scalar, ScalarError, SparseMatrix, VerifyError,
};

use crate::config::{Action, RunConfig};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Fails = 1,
    Usage = 2,
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! impl_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError(e.to_string())
            }
        }
    )*};
}

impl_from!(IoError, AnalyzeError, ScalarError, VerifyError, std::io::Error);

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate().map_err(CliError)?;
    match cfg.action {
        Action::GenS => match cfg.backend.unwrap_or(Backend::Exact) {
            Backend::Exact => gen_s::<ExactScalar>(cfg),
            Backend::Float => gen_s::<FloatScalar64>(cfg),
        },
        Action::SampleUnitary => sample(cfg),
        _ => match load(cfg)? {
            AnyParamSet::Exact(p) => dispatch(cfg, &p),
            AnyParamSet::Float(p) => dispatch(cfg, &p),
        },
    }
}

fn load(cfg: &RunConfig) -> Result<AnyParamSet, CliError> {
    match &cfg.params {
        Some(path) => {
            let p = io::parse_params(path)?;
            if let Some(b) = cfg.backend {
                if b != p.backend() {
                    return Err(CliError(format!(
                        "--backend {b} conflicts with the {} parameter file {}",
                        p.backend(),
                        path.display()
                    )));
                }
            }
            if let Some(n) = cfg.n {
                if n != p.n() {
                    return Err(CliError(format!("--n {n} conflicts with n = {} in {}", p.n(), path.display())));
                }
            }
            Ok(p)
        }
        None => {
            let n = cfg.n.ok_or_else(|| CliError("either --n or --params is required".into()))?;
            Ok(match cfg.backend.unwrap_or(Backend::Exact) {
                Backend::Exact => AnyParamSet::Exact(random_params(n, cfg.seed)),
                Backend::Float => AnyParamSet::Float(random_params(n, cfg.seed)),
            })
        }
    }
}

// Exact runs always compare against zero.
fn tolerance<S: Scalar>(cfg: &RunConfig) -> Result<S::Real, CliError> {
    match (S::BACKEND, cfg.tol) {
        (Backend::Exact, _) | (_, None) => Ok(S::default_tolerance()),
        (Backend::Float, Some(t)) => Ok(S::Real::tolerance(t)?),
    }
}

fn header<S: Scalar>(cfg: &RunConfig, n: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(cfg.action.name()));
    m.insert("backend".into(), json!(S::BACKEND.to_string()));
    m.insert("n".into(), json!(n));
    m
}

fn finish(mut head: Map<String, Value>, body: Value, holds: bool) -> Outcome {
    if let Value::Object(fields) = body {
        head.extend(fields);
    }
    Outcome { status: if holds { Status::Holds } else { Status::Fails }, report: Value::Object(head) }
}

fn write_matrix<S: Scalar>(cfg: &RunConfig, m: &SparseMatrix<S>, n: usize) -> Result<Outcome, CliError> {
    let out = cfg.out.as_ref().ok_or_else(|| CliError("--out is required".into()))?;
    io::export_matrix(m, out, cfg.format)?;
    let format = match cfg.format {
        MatrixFormat::MatrixMarket => "mm",
        MatrixFormat::Json => "json",
    };
    let body = json!({ "dims": m.dim(), "nnz": m.nnz(), "out": out.display().to_string(), "format": format });
    Ok(finish(header::<S>(cfg, n), body, true))
}

fn gen_s<S: Scalar>(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n.ok_or_else(|| CliError("--n is required".into()))?;
    write_matrix(cfg, &build_s::<S>(n), n)
}

fn sample(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n.ok_or_else(|| CliError("--n is required".into()))?;
    let p: ParamSet<FloatScalar64> = sample_unitary_params(n, cfg.seed);
    if let Some(out) = &cfg.out {
        std::fs::write(out, io::params_to_json(&p))?;
    }
    let residual = unitarity_residuals(&p).max_residual();
    let body = json!({
        "seed": cfg.seed,
        "max_residual": residual.encode(),
        "params": io::params_to_value(&p),
    });
    Ok(finish(header::<FloatScalar64>(cfg, n), body, true))
}

fn dispatch<S: Scalar>(cfg: &RunConfig, p: &ParamSet<S>) -> Result<Outcome, CliError> {
    let n = p.n();
    let tol = tolerance::<S>(cfg)?;
    let head = header::<S>(cfg, n);
    match cfg.action {
        Action::GenR => write_matrix(cfg, &build_r(p), n),
        Action::GenRhat(method) => write_matrix(cfg, &build_rhat(p, method), n),
        Action::VerifyBraid => {
            let rep = braid_residual(&build_r(p), n, &tol)?;
            Ok(finish(head, to_value(&rep), rep.passed))
        }
        Action::VerifyQuantum => {
            let rep = quantum_residual(&build_rhat(p, ybe::RhatMethod::Direct), n, &tol)?;
            Ok(finish(head, to_value(&rep), rep.passed))
        }
        Action::BraidCheck => {
            let rep = braid_rep_check(&build_r(p), n, cfg.strands, &tol)?;
            Ok(finish(head, to_value(&rep), rep.passed))
        }
        Action::CheckUnitary => {
            let res = unitarity_residuals(p);
            let unitary = res.is_unitary(&tol);
            let body = json!({
                "unitary": unitary,
                "tolerance": tol.encode(),
                "max_residual": res.max_residual().encode(),
                "matrix_defect": unitarity_defect(&build_r(p)).encode(),
                "conditions": res.to_json(),
            });
            Ok(finish(head, body, unitary))
        }
        Action::CheckFactor { rhat } => {
            let m = if rhat { build_rhat(p, ybe::RhatMethod::Direct) } else { build_r(p) };
            let witness = tensor_factor(&m, n, &tol)?;
            let body = json!({
                "target": if rhat { "rhat" } else { "r" },
                "factorable": witness.is_some(),
                "witness": witness.as_ref().map(analyze::FactorWitness::to_json),
            });
            Ok(finish(head, body, witness.is_some()))
        }
        Action::CheckEntangling { assume_invertible } => {
            let opts = EntanglingOptions { tol, witness_trials: cfg.trials, seed: cfg.seed, assume_invertible };
            let rep = entangling_check(p, &opts)?;
            Ok(finish(head, rep.to_json(), rep.entangling))
        }
        Action::GenS | Action::SampleUnitary => unreachable!("handled before parameters are loaded"),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}
