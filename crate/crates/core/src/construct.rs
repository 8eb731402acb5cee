//! The solution family `R`, the swap matrix `S`, and `R̂ = RS`.
//!
//! Parameters come in three groups for a dimension `n` with `m = ⌊n/2⌋`:
//!
//! * one quad `(a, b, x, y)` per cell `(t, s)` of `[1, m]²`,
//! * for odd `n`, one axial pair `(a, b)` per `t` in `[1, m]`,
//! * for odd `n`, a single center value.
//!
//! Each quad value lands on four positions determined by the eight indices
//! of [`IndexQuadruple`]; every other position of `R` is zero.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalars::{Backend, Scalar};
use crate::sparsemat::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("dimension n must be at least 1")]
    ZeroDimension,
    #[error("index quadruples need n >= 2, got n = {0}")]
    NoQuadruples(usize),
    #[error("quads key ({t},{s}) out of [1,{m}]²")]
    QuadOutOfRange { t: usize, s: usize, m: usize },
    #[error("missing quad for key ({t},{s})")]
    MissingQuad { t: usize, s: usize },
    #[error("axial key {t} out of [1,{m}]")]
    AxialOutOfRange { t: usize, m: usize },
    #[error("missing axial pair for key {t}")]
    MissingAxial { t: usize },
    #[error("axial entries are only allowed for odd n (n = {0})")]
    UnexpectedAxial(usize),
    #[error("missing center for odd n = {0}")]
    MissingCenter(usize),
    #[error("center is only allowed for odd n (n = {0})")]
    UnexpectedCenter(usize),
}

/// `m = n/2` for even `n`, `(n-1)/2` for odd `n`.
pub fn half_dim(n: usize) -> usize {
    n / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quad<S> {
    pub a: S,
    pub b: S,
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Quad<S> {
    pub fn new(a: S, b: S, x: S, y: S) -> Self {
        Quad { a, b, x, y }
    }

    pub fn values(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.x, &self.y]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxialPair<S> {
    pub a: S,
    pub b: S,
}

/// Free parameters of one member of the family.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet<S> {
    n: usize,
    quads: BTreeMap<(usize, usize), Quad<S>>,
    axial: BTreeMap<usize, AxialPair<S>>,
    center: Option<S>,
}

impl<S: Scalar> ParamSet<S> {
    /// Validate key ranges: quads must cover exactly `[1, m]²`; axial pairs
    /// exactly `[1, m]` and the center must be present iff `n` is odd.
    pub fn new(
        n: usize,
        quads: BTreeMap<(usize, usize), Quad<S>>,
        axial: BTreeMap<usize, AxialPair<S>>,
        center: Option<S>,
    ) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::ZeroDimension);
        }
        let m = half_dim(n);
        let odd = n % 2 == 1;
        if let Some(&(t, s)) = quads.keys().find(|(t, s)| !(1..=m).contains(t) || !(1..=m).contains(s)) {
            return Err(ParamError::QuadOutOfRange { t, s, m });
        }
        for t in 1..=m {
            for s in 1..=m {
                if !quads.contains_key(&(t, s)) {
                    return Err(ParamError::MissingQuad { t, s });
                }
            }
        }
        if !odd {
            if !axial.is_empty() {
                return Err(ParamError::UnexpectedAxial(n));
            }
            if center.is_some() {
                return Err(ParamError::UnexpectedCenter(n));
            }
        } else {
            if let Some(&t) = axial.keys().find(|t| !(1..=m).contains(*t)) {
                return Err(ParamError::AxialOutOfRange { t, m });
            }
            if let Some(t) = (1..=m).find(|t| !axial.contains_key(t)) {
                return Err(ParamError::MissingAxial { t });
            }
            if center.is_none() {
                return Err(ParamError::MissingCenter(n));
            }
        }
        Ok(ParamSet { n, quads, axial, center })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        half_dim(self.n)
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn quads(&self) -> impl Iterator<Item = ((usize, usize), &Quad<S>)> + '_ {
        self.quads.iter().map(|(k, v)| (*k, v))
    }

    pub fn quad(&self, t: usize, s: usize) -> Option<&Quad<S>> {
        self.quads.get(&(t, s))
    }

    pub fn axial(&self) -> impl Iterator<Item = (usize, &AxialPair<S>)> + '_ {
        self.axial.iter().map(|(k, v)| (*k, v))
    }

    pub fn axial_pair(&self, t: usize) -> Option<&AxialPair<S>> {
        self.axial.get(&t)
    }

    pub fn center(&self) -> Option<&S> {
        self.center.as_ref()
    }

    /// Number of free scalars.
    pub fn scalar_count(&self) -> usize {
        4 * self.quads.len() + 2 * self.axial.len() + usize::from(self.center.is_some())
    }

    /// Row index at which a quad's values first appear; the subscript the
    /// printed matrices use (`a₁, a₂, a₅, a₆` for `n = 4`).
    pub fn quad_label(&self, t: usize, s: usize) -> usize {
        (t - 1) * self.n + s
    }

    pub fn axial_label(&self, t: usize) -> usize {
        (t - 1) * self.n + self.n.div_ceil(2)
    }

    /// Apply `f` to every scalar, keeping the layout.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ParamSet<T> {
        ParamSet {
            n: self.n,
            quads: self.quads.iter().map(|(k, q)| (*k, Quad::new(f(&q.a), f(&q.b), f(&q.x), f(&q.y)))).collect(),
            axial: self.axial.iter().map(|(k, p)| (*k, AxialPair { a: f(&p.a), b: f(&p.b) })).collect(),
            center: self.center.as_ref().map(f),
        }
    }
}

/// The eight positions generated by one quad cell `(t, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexQuadruple {
    pub t: usize,
    pub s: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub i_tilde: usize,
    pub j_tilde: usize,
    pub k_tilde: usize,
    pub l_tilde: usize,
}

pub fn index_quadruple(n: usize, t: usize, s: usize) -> Result<IndexQuadruple, ParamError> {
    if n < 2 {
        return Err(ParamError::NoQuadruples(n));
    }
    let m = half_dim(n);
    if !(1..=m).contains(&t) || !(1..=m).contains(&s) {
        return Err(ParamError::QuadOutOfRange { t, s, m });
    }
    let nn1 = n * n + 1;
    let i = (t - 1) * n + s;
    let j = (s - 1) * n + t;
    let k = (t - 1) * n + (n - s + 1);
    let l = (n - s) * n + t;
    Ok(IndexQuadruple { t, s, i, j, k, l, i_tilde: nn1 - i, j_tilde: nn1 - j, k_tilde: nn1 - k, l_tilde: nn1 - l })
}

/// Indices of the odd-`n` axial placements for `t` in `[1, m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxialIndices {
    pub t: usize,
    pub i: usize,
    pub j: usize,
    pub i_tilde: usize,
    pub j_tilde: usize,
}

pub fn axial_indices(n: usize, t: usize) -> AxialIndices {
    debug_assert!(n % 2 == 1 && (1..=half_dim(n)).contains(&t));
    let i = (t - 1) * n + n.div_ceil(2);
    let j = ((n - 1) / 2) * n + t;
    AxialIndices { t, i, j, i_tilde: n * n + 1 - i, j_tilde: n * n + 1 - j }
}

/// Position of the odd-`n` center entry.
pub fn center_index(n: usize) -> usize {
    (n * n).div_ceil(2)
}

fn assemble<S: Scalar>(dim: usize, placements: Vec<(usize, usize, S)>) -> SparseMatrix<S> {
    match SparseMatrix::from_entries(dim, placements) {
        Ok(m) => m,
        Err(e) => panic!("construction placed two values on one position: {e}"),
    }
}

/// The `n² × n²` solution matrix `R`.
pub fn build_r<S: Scalar>(p: &ParamSet<S>) -> SparseMatrix<S> {
    let n = p.n();
    let mut out = Vec::with_capacity(4 * n * n);
    for ((t, s), q) in p.quads() {
        let ix = index_quadruple(n, t, s).expect("ParamSet keys are validated");
        let IndexQuadruple { i, j, k, l, i_tilde: it, j_tilde: jt, k_tilde: kt, l_tilde: lt, .. } = ix;
        for (r, c) in [(i, j), (k, l), (kt, lt), (it, jt)] {
            out.push((r, c, q.a.clone()));
        }
        for (r, c) in [(i, jt), (k, lt), (kt, l), (it, j)] {
            out.push((r, c, q.b.clone()));
        }
        for (r, c) in [(i, lt), (k, jt), (kt, j), (it, l)] {
            out.push((r, c, q.x.clone()));
        }
        for (r, c) in [(i, l), (k, j), (kt, jt), (it, lt)] {
            out.push((r, c, q.y.clone()));
        }
    }
    for (t, pair) in p.axial() {
        let AxialIndices { i, j, i_tilde: it, j_tilde: jt, .. } = axial_indices(n, t);
        for (r, c) in [(i, j), (j, i), (jt, it), (it, jt)] {
            out.push((r, c, pair.a.clone()));
        }
        for (r, c) in [(i, jt), (j, it), (jt, i), (it, j)] {
            out.push((r, c, pair.b.clone()));
        }
    }
    if let Some(x) = p.center() {
        let c = center_index(n);
        out.push((c, c, x.clone()));
    }
    assemble(n * n, out)
}

/// The swap matrix: `S(u ⊗ v) = v ⊗ u`.
pub fn build_s<S: Scalar>(n: usize) -> SparseMatrix<S> {
    assert!(n >= 1, "dimension n must be at least 1");
    let out = (1..=n).flat_map(|t| (1..=n).map(move |s| ((t - 1) * n + s, (s - 1) * n + t, S::one()))).collect();
    assemble(n * n, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhatMethod {
    /// `build_r(p) · build_s(n)`
    Product,
    /// Place entries directly from the closed-form layout of `RS`.
    Direct,
}

/// `R̂ = RS`, which solves the quantum Yang–Baxter equation.
pub fn build_rhat<S: Scalar>(p: &ParamSet<S>, method: RhatMethod) -> SparseMatrix<S> {
    match method {
        RhatMethod::Product => build_r(p).matmul(&build_s(p.n())).expect("R and S share dimension n²"),
        RhatMethod::Direct => build_rhat_direct(p),
    }
}

fn build_rhat_direct<S: Scalar>(p: &ParamSet<S>) -> SparseMatrix<S> {
    let n = p.n();
    let mut out = Vec::with_capacity(4 * n * n);
    for ((t, s), q) in p.quads() {
        let ix = index_quadruple(n, t, s).expect("ParamSet keys are validated");
        let (i, k, it, kt) = (ix.i, ix.k, ix.i_tilde, ix.k_tilde);
        for (r, c) in [(i, i), (k, k), (kt, kt), (it, it)] {
            out.push((r, c, q.a.clone()));
        }
        for (r, c) in [(i, it), (k, kt), (kt, k), (it, i)] {
            out.push((r, c, q.b.clone()));
        }
        for (r, c) in [(i, kt), (k, it), (kt, i), (it, k)] {
            out.push((r, c, q.x.clone()));
        }
        for (r, c) in [(i, k), (k, i), (kt, it), (it, kt)] {
            out.push((r, c, q.y.clone()));
        }
    }
    for (t, pair) in p.axial() {
        let AxialIndices { i, j, i_tilde: it, j_tilde: jt, .. } = axial_indices(n, t);
        for (r, c) in [(i, i), (j, j), (jt, jt), (it, it)] {
            out.push((r, c, pair.a.clone()));
        }
        for (r, c) in [(i, it), (j, jt), (jt, j), (it, i)] {
            out.push((r, c, pair.b.clone()));
        }
    }
    if let Some(x) = p.center() {
        let c = center_index(n);
        out.push((c, c, x.clone()));
    }
    assemble(n * n, out)
}

/// Seeded random parameters. Draw order is quads in `(t, s)` order
/// (`a, b, x, y` each), then axial pairs, then the center.
pub fn random_params<S: Scalar>(n: usize, seed: u64) -> ParamSet<S> {
    assert!(n >= 1, "dimension n must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = half_dim(n);
    let mut quads = BTreeMap::new();
    for t in 1..=m {
        for s in 1..=m {
            let a = S::draw(&mut rng);
            let b = S::draw(&mut rng);
            let x = S::draw(&mut rng);
            let y = S::draw(&mut rng);
            quads.insert((t, s), Quad::new(a, b, x, y));
        }
    }
    let mut axial = BTreeMap::new();
    let mut center = None;
    if n % 2 == 1 {
        for t in 1..=m {
            let a = S::draw(&mut rng);
            let b = S::draw(&mut rng);
            axial.insert(t, AxialPair { a, b });
        }
        center = Some(S::draw(&mut rng));
    }
    ParamSet::new(n, quads, axial, center).expect("generated keys cover the valid ranges")
}

/// Number of stored entries of `R` (and `R̂`) when every parameter is
/// nonzero: `4n²` for even `n`, `4n(n-1) + 1` for odd `n`.
pub fn full_nnz(n: usize) -> usize {
    if n.is_multiple_of(2) {
        4 * n * n
    } else {
        4 * n * (n - 1) + 1
    }
}
