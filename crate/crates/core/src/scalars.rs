//! Complex scalar backends.
//!
//! Every computation in the crate is generic over [`Scalar`], a complex field
//! element. Two families implement it:
//!
//! * `Complex<BigRational>` (Gaussian rationals): closed under field
//!   operations, so identities that hold symbolically produce residuals that
//!   are exactly zero.
//! * `Complex<f32>` / `Complex<f64>`: fast, approximate.
//!
//! Backends never mix: a matrix or parameter set carries its backend in its
//! type.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Default residual tolerance for floating-point checks.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-12;

/// Entries whose components are all below this are dropped from `f64`
/// sparse matrices (underflow guard).
pub const F64_DROP_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("negative tolerance {0}")]
    NegativeTolerance(String),
    #[error("exact scalars only accept a zero tolerance, got {0}")]
    NonZeroExactTolerance(String),
    #[error("cannot parse scalar {0:?}: {1}")]
    Parse(String, String),
}

/// Arithmetic backend tag, used wherever the backend must be chosen at run
/// time (file formats, command line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(ScalarError::Parse(other.to_string(), "backend must be \"exact\" or \"float\"".into())),
        }
    }
}

/// Real component type of a [`Scalar`]; also the type of residuals and
/// tolerances.
pub trait Real: Clone + PartialOrd + Debug + Display + Send + Sync + Signed + 'static {
    /// Decode a string produced by [`Real::encode`].
    fn decode(s: &str) -> Result<Self, ScalarError>;

    /// Lossless text form (`p/q` for rationals, shortest round-trip decimal
    /// for floats).
    fn encode(&self) -> String;

    fn to_f64(&self) -> f64;

    /// Convert a user-supplied tolerance. Exact reals only accept zero.
    fn tolerance(tol: f64) -> Result<Self, ScalarError>;

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for Rational {
    fn decode(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }

    fn encode(&self) -> String {
        self.to_string()
    }

    fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn tolerance(tol: f64) -> Result<Self, ScalarError> {
        if tol < 0.0 {
            Err(ScalarError::NegativeTolerance(tol.to_string()))
        } else if tol != 0.0 {
            Err(ScalarError::NonZeroExactTolerance(tol.to_string()))
        } else {
            Ok(Rational::zero())
        }
    }
}

/// A complex field element under one arithmetic backend.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    type Real: Real;

    const BACKEND: Backend;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    fn re(&self) -> Self::Real;

    fn im(&self) -> Self::Real;

    fn conj(&self) -> Self;

    /// The real number `num / den`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }

    /// `|re|² + |im|²`.
    fn norm_sqr(&self) -> Self::Real {
        let (re, im) = (self.re(), self.im());
        re.clone() * re + im.clone() * im
    }

    /// Size used by residual metrics: the modulus for floats, and
    /// `max(|re|, |im|)` for exact scalars (no square roots).
    fn magnitude(&self) -> Self::Real;

    /// Whether the value should be dropped from sparse storage.
    fn is_negligible(&self) -> bool;

    /// `max(|re|, |im|) <= tol`. Exact scalars require `tol == 0` and then
    /// test for exact zero.
    fn approx_zero(&self, tol: &Self::Real) -> Result<bool, ScalarError> {
        if tol.is_negative() {
            return Err(ScalarError::NegativeTolerance(tol.to_string()));
        }
        if Self::BACKEND == Backend::Exact && !tol.is_zero() {
            return Err(ScalarError::NonZeroExactTolerance(tol.to_string()));
        }
        let bound = self.re().abs().max(self.im().abs());
        Ok(bound <= *tol)
    }

    fn default_tolerance() -> Self::Real;

    /// Draw a random nonzero value: rationals `p/q` with `p` in `[-9, 9]`,
    /// `q` in `[1, 9]` per component, or floats uniform in `[-1, 1]`.
    fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Rank of a dense row-major matrix. Exact scalars use elimination;
    /// floats count singular values above `tol` times the largest.
    fn rank(rows: &[Vec<Self>], tol: &Self::Real) -> usize;

    fn encode(&self) -> String {
        let im = self.im();
        let sign = if im.is_negative() || is_negative_zero(&im) { '-' } else { '+' };
        format!("{}{}{}i", self.re().encode(), sign, im.abs().encode())
    }

    fn decode(s: &str) -> Result<Self, ScalarError> {
        let (re, im) = split_complex(s)?;
        let re = match re {
            Some(r) => Self::Real::decode(r).map_err(|e| rewrap(s, e))?,
            None => Self::Real::zero(),
        };
        let im = match im {
            Some("") | Some("+") => Self::Real::one(),
            Some("-") => -Self::Real::one(),
            Some(v) => Self::Real::decode(v).map_err(|e| rewrap(s, e))?,
            None => Self::Real::zero(),
        };
        Ok(Self::from_parts(re, im))
    }
}

fn is_negative_zero<R: Real>(r: &R) -> bool {
    r.is_zero() && r.to_f64().is_sign_negative()
}

fn rewrap(s: &str, e: ScalarError) -> ScalarError {
    match e {
        ScalarError::Parse(_, why) => ScalarError::Parse(s.to_string(), why),
        other => other,
    }
}

/// Split `"re+im i"` style text into its real and imaginary slices. The
/// imaginary slice keeps its sign and may be empty, `"+"` or `"-"` for a unit
/// coefficient.
fn split_complex(s: &str) -> Result<(Option<&str>, Option<&str>), ScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarError::Parse(s.to_string(), "empty".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((Some(s), None));
    };
    let body = body.trim_end();
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Ok((Some(body[..p].trim()), Some(body[p..].trim()))),
        None => Ok((None, Some(body))),
    }
}

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let bad = |why: &str| ScalarError::Parse(s.to_string(), why.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if !is_integer_literal(num) || !is_integer_literal(den) || den.starts_with('-') {
        return Err(bad("expected an exact rational of the form p or p/q"));
    }
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Exact Gaussian rational.
pub type ExactScalar = Complex<Rational>;

impl Scalar for ExactScalar {
    type Real = Rational;

    const BACKEND: Backend = Backend::Exact;

    fn from_parts(re: Rational, im: Rational) -> Self {
        Complex::new(re, im)
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn im(&self) -> Rational {
        self.im.clone()
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Rational::new(BigInt::from(num), BigInt::from(den)), Rational::zero())
    }

    fn magnitude(&self) -> Rational {
        Real::max(self.re.abs(), self.im.abs())
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn default_tolerance() -> Rational {
        Rational::zero()
    }

    fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let part = |rng: &mut R| {
            let num: i64 = rng.random_range(-9..=9);
            let den: i64 = rng.random_range(1..=9);
            Rational::new(BigInt::from(num), BigInt::from(den))
        };
        loop {
            let z = Complex::new(part(rng), part(rng));
            if !z.is_zero() {
                return z;
            }
        }
    }

    fn rank(rows: &[Vec<Self>], _tol: &Rational) -> usize {
        exact_rank(rows.to_vec())
    }
}

/// Gaussian elimination over the Gaussian rationals.
fn exact_rank(mut m: Vec<Vec<ExactScalar>>) -> usize {
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..n_rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = ExactScalar::one() / m[rank][col].clone();
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut().filter(|row| !row[col].is_zero()) {
            let factor = row[col].clone() * inv.clone();
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst = dst.clone() - factor.clone() * src.clone();
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

macro_rules! float_scalar {
    ($t:ty, $drop:expr) => {
        impl Real for $t {
            fn decode(s: &str) -> Result<Self, ScalarError> {
                let t = s.trim();
                if t.contains('/') {
                    return Err(ScalarError::Parse(s.to_string(), "rational literal given to a float backend".into()));
                }
                t.parse::<$t>().map_err(|e| ScalarError::Parse(s.to_string(), e.to_string()))
            }

            fn encode(&self) -> String {
                format!("{:?}", self)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn tolerance(tol: f64) -> Result<Self, ScalarError> {
                if tol < 0.0 || tol.is_nan() {
                    Err(ScalarError::NegativeTolerance(tol.to_string()))
                } else {
                    Ok(tol as $t)
                }
            }
        }

        impl Scalar for Complex<$t> {
            type Real = $t;

            const BACKEND: Backend = Backend::Float;

            fn from_parts(re: $t, im: $t) -> Self {
                Complex::new(re, im)
            }

            fn re(&self) -> $t {
                self.re
            }

            fn im(&self) -> $t {
                self.im
            }

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                Complex::new(num as $t / den as $t, 0.0)
            }

            fn magnitude(&self) -> $t {
                self.norm()
            }

            fn is_negligible(&self) -> bool {
                self.re.abs() < $drop && self.im.abs() < $drop
            }

            fn default_tolerance() -> $t {
                DEFAULT_FLOAT_TOL as $t
            }

            fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self {
                loop {
                    let z = Complex::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
                    if !z.is_zero() {
                        return z;
                    }
                }
            }

            fn rank(rows: &[Vec<Self>], tol: &$t) -> usize {
                let n_rows = rows.len();
                let n_cols = rows.first().map_or(0, Vec::len);
                if n_rows == 0 || n_cols == 0 {
                    return 0;
                }
                let m = DMatrix::from_fn(n_rows, n_cols, |r, c| rows[r][c]);
                let sv = m.singular_values();
                let largest = sv.iter().cloned().fold(0.0, <$t>::max);
                if largest == 0.0 {
                    return 0;
                }
                sv.iter().filter(|&&s| s > *tol * largest).count()
            }
        }

        impl FloatScalar for Complex<$t> {
            fn from_f64(re: f64, im: f64) -> Self {
                Complex::new(re as $t, im as $t)
            }
        }
    };
}

float_scalar!(f64, F64_DROP_THRESHOLD);
float_scalar!(f32, f32::MIN_POSITIVE);

/// Floating-point scalars, which additionally admit transcendental values
/// (used by the unitary sampler).
pub trait FloatScalar: Scalar {
    fn from_f64(re: f64, im: f64) -> Self;

    /// `r·e^{iθ}`.
    fn from_polar(r: f64, theta: f64) -> Self {
        Self::from_f64(r * theta.cos(), r * theta.sin())
    }
}

/// Exact rational `num/den` as a real [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact Gaussian rational `re_num/re_den + (im_num/im_den) i`.
pub fn exact(re: (i64, i64), im: (i64, i64)) -> ExactScalar {
    Complex::new(ratio(re.0, re.1), ratio(im.0, im.1))
}
