//! Parametric solutions of the constant Yang–Baxter equation in every
//! dimension `n`, together with exact and floating-point verification of the
//! braid equation, the quantum Yang–Baxter equation, unitarity and the
//! entangling-gate property.
//!
//! Everything is generic over [`Scalar`]. The aliases below fix the two
//! backends used in practice:
//!
//! ```
//! use ybe::{build_r, braid_residual, random_params, ExactParams, ExactScalar};
//! use num_traits::Zero;
//!
//! let p: ExactParams = random_params(3, 7);
//! let report = braid_residual(&build_r(&p), 3, &Zero::zero()).unwrap();
//! assert!(report.residual.is_zero());
//! ```

pub mod analyze;
pub mod construct;
pub mod io;
pub mod scalars;
pub mod sparsemat;
pub mod verify;

use num_complex::Complex;

pub use analyze::{
    entangling_check, sample_unitary_params, schmidt_rank, tensor_factor, unitarity_defect, unitarity_residuals,
    EntanglingOptions, EntanglingReport, FactorWitness, UnitarityResiduals,
};
pub use construct::{
    build_r, build_rhat, build_s, index_quadruple, random_params, AxialPair, IndexQuadruple, ParamError, ParamSet,
    Quad, RhatMethod,
};
pub use scalars::{Backend, ExactScalar, FloatScalar, Rational, Real, Scalar, ScalarError};
pub use sparsemat::{DenseMatrix, MatrixError, Side, SparseMatrix, StateVector};
pub use verify::{braid_rep_check, braid_residual, quantum_residual, Equation, VerificationReport, VerifyError};

/// Double-precision complex scalar.
pub type FloatScalar64 = Complex<f64>;
/// Single-precision complex scalar.
pub type FloatScalar32 = Complex<f32>;

pub type ExactMatrix = SparseMatrix<ExactScalar>;
pub type FloatMatrix = SparseMatrix<FloatScalar64>;
pub type ExactParams = ParamSet<ExactScalar>;
pub type FloatParams = ParamSet<FloatScalar64>;
pub type ExactState = StateVector<ExactScalar>;
pub type FloatState = StateVector<FloatScalar64>;
