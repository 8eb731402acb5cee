//! Residual checks for the braid equation, the quantum Yang–Baxter equation
//! and the braid-group relations of the induced representation.
//!
//! All factors and products stay sparse; the residual is the entrywise
//! max-abs difference between the two sides (exactly zero for solutions in
//! the exact backend).

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::construct::build_s;
use crate::scalars::{Backend, Real, Scalar, ScalarError};
use crate::sparsemat::{MatrixError, Side, SparseMatrix};

/// Largest state-space dimension `n^k` accepted by [`braid_rep_check`].
pub const DEFAULT_BRAID_DIM_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("matrix has dimension {got}, expected n² = {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("braid relations need at least 3 strands, got {0}")]
    TooFewStrands(usize),
    #[error("state space n^k = {dim} exceeds the limit {limit}")]
    SizeLimit { dim: String, limit: usize },
    #[error(transparent)]
    Tolerance(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Braid,
    Quantum,
    BraidRelations,
}

impl Equation {
    pub fn as_str(self) -> &'static str {
        match self {
            Equation::Braid => "braid",
            Equation::Quantum => "quantum",
            Equation::BraidRelations => "braid_relations",
        }
    }
}

/// Residual of one braid-group relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResidual<R> {
    pub relation: String,
    pub residual: R,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<R> {
    pub equation: Equation,
    pub n: usize,
    /// Side length of the compared matrices.
    pub dims: usize,
    pub residual: R,
    pub tolerance: R,
    pub passed: bool,
    pub elapsed: Duration,
    /// Largest `nnz` of any intermediate product.
    pub peak_nnz: usize,
    pub relations: Vec<RelationResidual<R>>,
}

impl<R: Real> Serialize for VerificationReport<R> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = serializer.serialize_struct("VerificationReport", 9)?;
        st.serialize_field("equation", self.equation.as_str())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("residual", &self.residual.encode())?;
        st.serialize_field("tolerance", &self.tolerance.encode())?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1e3))?;
        st.serialize_field("peak_nnz", &self.peak_nnz)?;
        let relations: Vec<_> = self
            .relations
            .iter()
            .map(|r| serde_json::json!({ "relation": r.relation, "residual": r.residual.encode() }))
            .collect();
        st.serialize_field("relations", &relations)?;
        st.end()
    }
}

fn check_tolerance<S: Scalar>(tol: &S::Real) -> Result<(), ScalarError> {
    if tol.is_negative() {
        return Err(ScalarError::NegativeTolerance(tol.to_string()));
    }
    if S::BACKEND == Backend::Exact && !tol.is_zero() {
        return Err(ScalarError::NonZeroExactTolerance(tol.to_string()));
    }
    Ok(())
}

fn check_dim<S: Scalar>(m: &SparseMatrix<S>, n: usize) -> Result<(), VerifyError> {
    if m.dim() != n * n {
        return Err(VerifyError::DimensionMismatch { expected: n * n, got: m.dim() });
    }
    Ok(())
}

/// Product of a chain of matrices, tracking the largest intermediate `nnz`.
fn chain<S: Scalar>(factors: &[&SparseMatrix<S>], peak: &mut usize) -> SparseMatrix<S> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.matmul(f).expect("chain factors share a dimension");
        *peak = (*peak).max(acc.nnz());
    }
    acc
}

/// `(R⊗I)(I⊗R)(R⊗I)` against `(I⊗R)(R⊗I)(I⊗R)` on `(ℂⁿ)^⊗3`.
pub fn braid_residual<S: Scalar>(
    r: &SparseMatrix<S>,
    n: usize,
    tol: &S::Real,
) -> Result<VerificationReport<S::Real>, VerifyError> {
    check_dim(r, n)?;
    check_tolerance::<S>(tol)?;
    let start = Instant::now();
    let r_i = r.kron_identity(n, Side::Right);
    let i_r = r.kron_identity(n, Side::Left);
    let mut peak = r_i.nnz().max(i_r.nnz());
    let lhs = chain(&[&r_i, &i_r, &r_i], &mut peak);
    let rhs = chain(&[&i_r, &r_i, &i_r], &mut peak);
    let residual = lhs.max_abs_diff(&rhs)?;
    Ok(VerificationReport {
        equation: Equation::Braid,
        n,
        dims: r_i.dim(),
        passed: residual <= *tol,
        residual,
        tolerance: tol.clone(),
        elapsed: start.elapsed(),
        peak_nnz: peak,
        relations: Vec::new(),
    })
}

/// `R̂₁₂R̂₁₃R̂₂₃` against `R̂₂₃R̂₁₃R̂₁₂`, with `R̂₁₃ = (I⊗S)(R̂⊗I)(I⊗S)`.
pub fn quantum_residual<S: Scalar>(
    rhat: &SparseMatrix<S>,
    n: usize,
    tol: &S::Real,
) -> Result<VerificationReport<S::Real>, VerifyError> {
    check_dim(rhat, n)?;
    check_tolerance::<S>(tol)?;
    let start = Instant::now();
    let r12 = rhat.kron_identity(n, Side::Right);
    let r23 = rhat.kron_identity(n, Side::Left);
    let i_s = build_s::<S>(n).kron_identity(n, Side::Left);
    let mut peak = r12.nnz().max(r23.nnz());
    let r13 = chain(&[&i_s, &r12, &i_s], &mut peak);
    let lhs = chain(&[&r12, &r13, &r23], &mut peak);
    let rhs = chain(&[&r23, &r13, &r12], &mut peak);
    let residual = lhs.max_abs_diff(&rhs)?;
    Ok(VerificationReport {
        equation: Equation::Quantum,
        n,
        dims: r12.dim(),
        passed: residual <= *tol,
        residual,
        tolerance: tol.clone(),
        elapsed: start.elapsed(),
        peak_nnz: peak,
        relations: Vec::new(),
    })
}

/// Braid-group relations for the generators
/// `ρᵢ = I^{⊗(i-1)} ⊗ R ⊗ I^{⊗(k-i-1)}` on `(ℂⁿ)^⊗k`, with the default
/// size limit.
pub fn braid_rep_check<S: Scalar>(
    r: &SparseMatrix<S>,
    n: usize,
    strands: usize,
    tol: &S::Real,
) -> Result<VerificationReport<S::Real>, VerifyError> {
    braid_rep_check_with_limit(r, n, strands, tol, DEFAULT_BRAID_DIM_LIMIT)
}

pub fn braid_rep_check_with_limit<S: Scalar>(
    r: &SparseMatrix<S>,
    n: usize,
    strands: usize,
    tol: &S::Real,
    limit: usize,
) -> Result<VerificationReport<S::Real>, VerifyError> {
    check_dim(r, n)?;
    check_tolerance::<S>(tol)?;
    if strands < 3 {
        return Err(VerifyError::TooFewStrands(strands));
    }
    let total = u32::try_from(strands)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&d| d <= limit)
        .ok_or_else(|| VerifyError::SizeLimit { dim: format!("{n}^{strands}"), limit })?;
    let start = Instant::now();

    let generators: Vec<SparseMatrix<S>> = (1..strands)
        .map(|i| {
            let right = n.pow((strands - i - 1) as u32);
            let left = n.pow((i - 1) as u32);
            r.kron_identity(right, Side::Right).kron_identity(left, Side::Left)
        })
        .collect();
    debug_assert!(generators.iter().all(|g| g.dim() == total));

    let mut peak = generators.iter().map(SparseMatrix::nnz).max().unwrap_or(0);
    let mut relations = Vec::new();
    for i in 0..generators.len() {
        if i + 1 < generators.len() {
            let (a, b) = (&generators[i], &generators[i + 1]);
            let lhs = chain(&[a, b, a], &mut peak);
            let rhs = chain(&[b, a, b], &mut peak);
            relations.push(RelationResidual {
                relation: format!("s{0} s{1} s{0} = s{1} s{0} s{1}", i + 1, i + 2),
                residual: lhs.max_abs_diff(&rhs)?,
            });
        }
        for j in i + 2..generators.len() {
            let (a, b) = (&generators[i], &generators[j]);
            let lhs = chain(&[a, b], &mut peak);
            let rhs = chain(&[b, a], &mut peak);
            relations.push(RelationResidual {
                relation: format!("s{} s{} = s{} s{}", i + 1, j + 1, j + 1, i + 1),
                residual: lhs.max_abs_diff(&rhs)?,
            });
        }
    }
    let residual = relations.iter().fold(S::Real::zero(), |acc, r| acc.max(r.residual.clone()));
    Ok(VerificationReport {
        equation: Equation::BraidRelations,
        n,
        dims: total,
        passed: residual <= *tol,
        residual,
        tolerance: tol.clone(),
        elapsed: start.elapsed(),
        peak_nnz: peak,
        relations,
    })
}
