//! Unitarity, tensor-product factorization, Schmidt rank and the
//! entangling-gate decision for family members.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::{build_r, build_s, half_dim, AxialPair, ParamSet, Quad};
use crate::scalars::{Backend, FloatScalar, Real, Scalar, ScalarError};
use crate::sparsemat::{DenseMatrix, SparseMatrix, StateVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("matrix has dimension {got}, expected n² = {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state vector is zero")]
    ZeroVector,
    #[error(
        "cannot establish that R is invertible (unitarity residual {0}); \
         the entangling criterion only applies to invertible gates"
    )]
    NotInvertible(String),
    #[error(transparent)]
    Tolerance(#[from] ScalarError),
}

/// The four unitarity conditions evaluated on one parameter group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupResiduals<R> {
    /// Quad key `(t, s)`; axial pairs use `(t, 0)`.
    pub key: (usize, usize),
    pub label: usize,
    pub values: [R; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityResiduals<R> {
    pub quads: Vec<GroupResiduals<R>>,
    /// Axial pairs, evaluated with `x = y = 0` (only `a`, `b` occupy axial
    /// rows), so `values[1]` and `values[2]` vanish identically.
    pub axial: Vec<GroupResiduals<R>>,
    /// `|x x̄ − 1|` for the odd-`n` center.
    pub center: Option<R>,
}

impl<R: Real> UnitarityResiduals<R> {
    pub fn max_residual(&self) -> R {
        self.quads
            .iter()
            .chain(&self.axial)
            .flat_map(|g| g.values.iter().cloned())
            .chain(self.center.clone())
            .fold(R::zero(), R::max)
    }

    pub fn is_unitary(&self, tol: &R) -> bool {
        self.max_residual() <= *tol
    }

    pub fn to_json(&self) -> Value {
        let group = |g: &GroupResiduals<R>| {
            json!({
                "t": g.key.0,
                "s": g.key.1,
                "label": g.label,
                "r": g.values.iter().map(Real::encode).collect::<Vec<_>>(),
            })
        };
        json!({
            "quads": self.quads.iter().map(group).collect::<Vec<_>>(),
            "axial": self.axial.iter().map(|g| {
                let mut v = group(g);
                v.as_object_mut().unwrap().remove("s");
                v
            }).collect::<Vec<_>>(),
            "center": self.center.as_ref().map(Real::encode),
            "max_residual": self.max_residual().encode(),
        })
    }
}

/// `[|aā+bb̄+xx̄+yȳ−1|, |xā+ax̄+yb̄+bȳ|, |xb̄+bx̄+yā+aȳ|, |ab̄+bā+xȳ+yx̄|]`.
pub fn quad_conditions<S: Scalar>(q: &Quad<S>) -> [S::Real; 4] {
    let (a, b, x, y) = (&q.a, &q.b, &q.x, &q.y);
    let m = |u: &S, v: &S| u.clone() * v.conj();
    let r1 = m(a, a) + m(b, b) + m(x, x) + m(y, y) - S::one();
    let r2 = m(x, a) + m(a, x) + m(y, b) + m(b, y);
    let r3 = m(x, b) + m(b, x) + m(y, a) + m(a, y);
    let r4 = m(a, b) + m(b, a) + m(x, y) + m(y, x);
    [r1.magnitude(), r2.magnitude(), r3.magnitude(), r4.magnitude()]
}

pub fn unitarity_residuals<S: Scalar>(p: &ParamSet<S>) -> UnitarityResiduals<S::Real> {
    let quads = p
        .quads()
        .map(|((t, s), q)| GroupResiduals { key: (t, s), label: p.quad_label(t, s), values: quad_conditions(q) })
        .collect();
    let axial = p
        .axial()
        .map(|(t, pair)| {
            let q = Quad::new(pair.a.clone(), pair.b.clone(), S::zero(), S::zero());
            GroupResiduals { key: (t, 0), label: p.axial_label(t), values: quad_conditions(&q) }
        })
        .collect();
    let center = p.center().map(|x| (x.clone() * x.conj() - S::one()).magnitude());
    UnitarityResiduals { quads, axial, center }
}

/// `max |R†R − I|`, the matrix-level unitarity check.
pub fn unitarity_defect<S: Scalar>(m: &SparseMatrix<S>) -> S::Real {
    m.dagger().matmul(m).and_then(|p| p.max_abs_diff(&SparseMatrix::identity(m.dim()))).expect("square matrix")
}

/// Quad satisfying all four unitarity conditions.
///
/// With `u = a+b`, `v = a−b`, `p = x+y`, `q = x−y` the conditions become
/// `|u|²+|p|² = 1`, `|v|²+|q|² = 1`, `Re(p ū) = 0`, `Re(q v̄) = 0`, which
/// `u = cos α e^{iφ}`, `p = i sin α e^{iφ}` (and likewise `v`, `q` with
/// `β`, `ψ`) satisfy for every angle.
pub fn unitary_quad<S: FloatScalar>(alpha: f64, beta: f64, phi: f64, psi: f64) -> Quad<S> {
    let u = S::from_polar(alpha.cos(), phi);
    let p = S::i() * S::from_polar(alpha.sin(), phi);
    let v = S::from_polar(beta.cos(), psi);
    let q = S::i() * S::from_polar(beta.sin(), psi);
    let half = S::from_ratio(1, 2);
    Quad::new(
        (u.clone() + v.clone()) * half.clone(),
        (u - v) * half.clone(),
        (p.clone() + q.clone()) * half.clone(),
        (p - q) * half,
    )
}

/// Axial pair `a = cos γ e^{iχ}`, `b = i sin γ e^{iχ}`.
pub fn unitary_axial<S: FloatScalar>(gamma: f64, chi: f64) -> AxialPair<S> {
    AxialPair { a: S::from_polar(gamma.cos(), chi), b: S::i() * S::from_polar(gamma.sin(), chi) }
}

/// Seeded parameters of a unitary family member.
pub fn sample_unitary_params<S: FloatScalar>(n: usize, seed: u64) -> ParamSet<S> {
    assert!(n >= 1, "dimension n must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angle = || rng.random_range(0.0..TAU);
    let m = half_dim(n);
    let mut quads = BTreeMap::new();
    for t in 1..=m {
        for s in 1..=m {
            let (alpha, beta, phi, psi) = (angle(), angle(), angle(), angle());
            quads.insert((t, s), unitary_quad(alpha, beta, phi, psi));
        }
    }
    let mut axial = BTreeMap::new();
    let mut center = None;
    if n % 2 == 1 {
        for t in 1..=m {
            let (gamma, chi) = (angle(), angle());
            axial.insert(t, unitary_axial(gamma, chi));
        }
        center = Some(S::from_polar(1.0, angle()));
    }
    ParamSet::new(n, quads, axial, center).expect("sampled keys cover the valid ranges")
}

/// `M = X ⊗ Y` with `X`'s pivot entry normalized to one.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorWitness<S> {
    pub x: DenseMatrix<S>,
    pub y: DenseMatrix<S>,
    /// Set when the input was the zero matrix (`X = Y = 0`).
    pub degenerate: bool,
}

impl<S: Scalar> FactorWitness<S> {
    pub fn product(&self) -> SparseMatrix<S> {
        self.x.to_sparse().kron(&self.y.to_sparse())
    }

    pub fn to_json(&self) -> Value {
        let dense = |m: &DenseMatrix<S>| {
            m.rows().iter().map(|r| r.iter().map(Scalar::encode).collect::<Vec<_>>()).collect::<Vec<_>>()
        };
        json!({ "x": dense(&self.x), "y": dense(&self.y), "degenerate": self.degenerate })
    }
}

/// Decide whether `M` (dimension `n²`) is a tensor product `X ⊗ Y` of two
/// `n × n` matrices.
///
/// The realigned array `T[(i−1)n+j, (k−1)n+l] = M[(i−1)n+k, (j−1)n+l]` has
/// rank one exactly when `M` factors. Rank one is tested against the largest
/// entry `T[p, q]`: every minor `T[r,c]·T[p,q] − T[r,q]·T[p,c]` must vanish
/// (exactly, or within `tol·|T[p,q]|²` for floats).
pub fn tensor_factor<S: Scalar>(
    m: &SparseMatrix<S>,
    n: usize,
    tol: &S::Real,
) -> Result<Option<FactorWitness<S>>, AnalyzeError> {
    if m.dim() != n * n {
        return Err(AnalyzeError::DimensionMismatch { expected: n * n, got: m.dim() });
    }
    if tol.is_negative() {
        return Err(ScalarError::NegativeTolerance(tol.to_string()).into());
    }
    let realigned: BTreeMap<(usize, usize), S> = m
        .entries()
        .map(|(row, col, v)| {
            let (i, k) = ((row - 1) / n, (row - 1) % n);
            let (j, l) = ((col - 1) / n, (col - 1) % n);
            ((i * n + j, k * n + l), v.clone())
        })
        .collect();

    let mut pivot: Option<((usize, usize), S::Real)> = None;
    for (&pos, v) in &realigned {
        let size = v.norm_sqr();
        if pivot.as_ref().is_none_or(|(_, best)| size > *best) {
            pivot = Some((pos, size));
        }
    }
    let Some(((p, q), pivot_size)) = pivot else {
        return Ok(Some(FactorWitness { x: DenseMatrix::zeros(n), y: DenseMatrix::zeros(n), degenerate: true }));
    };
    let piv = realigned[&(p, q)].clone();
    let at = |r: usize, c: usize| realigned.get(&(r, c)).cloned().unwrap_or_else(S::zero);

    let col_q: Vec<(usize, S)> =
        realigned.iter().filter(|((_, c), _)| *c == q).map(|((r, _), v)| (*r, v.clone())).collect();
    let row_p: Vec<(usize, S)> = realigned.range((p, 0)..(p + 1, 0)).map(|((_, c), v)| (*c, v.clone())).collect();

    let mut positions: BTreeSet<(usize, usize)> = realigned.keys().copied().collect();
    for (r, _) in &col_q {
        for (c, _) in &row_p {
            positions.insert((*r, *c));
        }
    }
    let bound = tol.clone() * pivot_size;
    for (r, c) in positions {
        let minor = at(r, c) * piv.clone() - at(r, q) * at(p, c);
        let size = minor.magnitude();
        let ok = if S::BACKEND == Backend::Exact { size.is_zero() } else { size <= bound };
        if !ok {
            return Ok(None);
        }
    }

    let mut x = DenseMatrix::zeros(n);
    for (r, v) in &col_q {
        x.set(r / n + 1, r % n + 1, v.clone() / piv.clone());
    }
    let mut y = DenseMatrix::zeros(n);
    for (c, v) in &row_p {
        y.set(c / n + 1, c % n + 1, v.clone());
    }
    Ok(Some(FactorWitness { x, y, degenerate: false }))
}

/// Rank of the `n × n` reshaping `W[i][j] = v[(i−1)n+j]`; 1 means a product
/// state.
pub fn schmidt_rank<S: Scalar>(v: &StateVector<S>, n: usize, tol: &S::Real) -> Result<usize, AnalyzeError> {
    if v.dim() != n * n {
        return Err(AnalyzeError::DimensionMismatch { expected: n * n, got: v.dim() });
    }
    if v.is_zero() {
        return Err(AnalyzeError::ZeroVector);
    }
    if tol.is_negative() {
        return Err(ScalarError::NegativeTolerance(tol.to_string()).into());
    }
    let rows: Vec<Vec<S>> = v.components().chunks(n).map(<[S]>::to_vec).collect();
    Ok(S::rank(&rows, tol))
}

#[derive(Debug, Clone)]
pub struct EntanglingOptions<R> {
    pub tol: R,
    /// Random product states tried after the basis states.
    pub witness_trials: usize,
    pub seed: u64,
    /// Skip the unitarity-based invertibility check.
    pub assume_invertible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglingReport<S> {
    pub entangling: bool,
    pub factor_of_r: Option<FactorWitness<S>>,
    pub factor_of_rs: Option<FactorWitness<S>>,
    /// Product state whose image under `R` is entangled.
    pub witness_state: Option<StateVector<S>>,
    pub witness_rank: Option<usize>,
}

impl<S: Scalar> EntanglingReport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "entangling": self.entangling,
            "factor_of_r": self.factor_of_r.as_ref().map(FactorWitness::to_json),
            "factor_of_rs": self.factor_of_rs.as_ref().map(FactorWitness::to_json),
            "witness_state": self.witness_state.as_ref().map(|w| {
                w.components().iter().map(Scalar::encode).collect::<Vec<_>>()
            }),
            "witness_rank": self.witness_rank,
        })
    }
}

/// A gate is entangling when neither `R` nor `RS` is a tensor product
/// `X ⊗ Y`. This criterion presumes `R` is invertible, which is established
/// via unitarity unless `assume_invertible` is set.
///
/// For entangling gates the search for a concrete witness tries every basis
/// product state `eᵢ ⊗ eⱼ`, then `witness_trials` seeded random product
/// states. Failing to find one does not change the verdict.
pub fn entangling_check<S: Scalar>(
    p: &ParamSet<S>,
    opts: &EntanglingOptions<S::Real>,
) -> Result<EntanglingReport<S>, AnalyzeError> {
    if opts.tol.is_negative() {
        return Err(ScalarError::NegativeTolerance(opts.tol.to_string()).into());
    }
    if !opts.assume_invertible {
        let defect = unitarity_residuals(p).max_residual();
        if defect > opts.tol {
            return Err(AnalyzeError::NotInvertible(defect.encode()));
        }
    }
    let n = p.n();
    let r = build_r(p);
    let rs = r.matmul(&build_s(n)).expect("R and S share dimension n²");
    let factor_of_r = tensor_factor(&r, n, &opts.tol)?;
    let factor_of_rs = tensor_factor(&rs, n, &opts.tol)?;
    let entangling = factor_of_r.is_none() && factor_of_rs.is_none();

    let mut witness_state = None;
    let mut witness_rank = None;
    if entangling {
        let basis = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| StateVector::tensor(&StateVector::basis(n, i), &StateVector::basis(n, j)));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let random = (0..opts.witness_trials).map(move |_| {
            let u = StateVector::new((0..n).map(|_| S::draw(&mut rng)).collect());
            let v = StateVector::new((0..n).map(|_| S::draw(&mut rng)).collect());
            StateVector::tensor(&u, &v)
        });
        for state in basis.chain(random) {
            let image = r.apply(&state).expect("state has dimension n²");
            if image.is_zero() {
                continue;
            }
            let rank = schmidt_rank(&image, n, &opts.tol)?;
            if rank >= 2 {
                witness_state = Some(state);
                witness_rank = Some(rank);
                break;
            }
        }
    }
    Ok(EntanglingReport { entangling, factor_of_r, factor_of_rs, witness_state, witness_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{random_params, RhatMethod};
    use crate::scalars::{exact, ExactScalar, Rational};
    use num_complex::Complex;
    use num_traits::{One, Zero};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    type Z = ExactScalar;
    type F = Complex<f64>;

    fn q(a: Z, b: Z, x: Z, y: Z) -> ParamSet<Z> {
        ParamSet::new(2, BTreeMap::from([((1, 1), Quad::new(a, b, x, y))]), BTreeMap::new(), None).unwrap()
    }

    fn r(v: i64, d: i64) -> Z {
        Z::from_ratio(v, d)
    }

    #[test]
    fn unitarity_condition_examples_exact() {
        let p = q(r(3, 5), r(0, 1), exact((0, 1), (4, 5)), r(0, 1));
        let res = unitarity_residuals(&p);
        assert!(res.quads[0].values.iter().all(Zero::is_zero));
        assert_eq!(unitarity_defect(&build_r(&p)), Rational::zero());

        let p = q(r(1, 1), r(0, 1), r(0, 1), r(0, 1));
        assert!(unitarity_residuals(&p).is_unitary(&Rational::zero()));

        let h = r(1, 2);
        let p = q(h.clone(), h.clone(), h.clone(), h);
        let res = unitarity_residuals(&p);
        assert_eq!(res.quads[0].values[0], Rational::zero());
        assert_eq!(res.quads[0].values[3], Rational::one());
        assert!(!res.is_unitary(&Rational::zero()));
        assert!(unitarity_defect(&build_r(&p)) > Rational::zero());
    }

    #[test]
    fn residuals_agree_with_matrix_check() {
        for n in 2..=7 {
            for seed in 0..3 {
                let p: ParamSet<Z> = random_params(n, seed);
                let by_conditions = unitarity_residuals(&p).is_unitary(&Rational::zero());
                let matrix = unitarity_defect(&build_r(&p)).is_zero();
                assert_eq!(by_conditions, matrix);
            }
        }
        // exact unitary member with odd n: quads (3/5, 4i/5), axial (1, 0), center 1
        let p = ParamSet::new(
            3,
            BTreeMap::from([((1, 1), Quad::new(r(3, 5), r(0, 1), exact((0, 1), (4, 5)), r(0, 1)))]),
            BTreeMap::from([(1, AxialPair { a: r(0, 1), b: exact((0, 1), (1, 1)) })]),
            Some(exact((3, 5), (-4, 5))),
        )
        .unwrap();
        assert!(unitarity_residuals(&p).is_unitary(&Rational::zero()));
        assert!(unitarity_defect(&build_r(&p)).is_zero());
        assert!(unitarity_defect(&crate::construct::build_rhat(&p, RhatMethod::Direct)).is_zero());
    }

    #[test]
    fn axial_conditions_are_needed() {
        // axial (a, b) = (1, 1) breaks unitarity even with unitary quads
        let p = ParamSet::new(
            3,
            BTreeMap::from([((1, 1), Quad::new(r(1, 1), r(0, 1), r(0, 1), r(0, 1)))]),
            BTreeMap::from([(1, AxialPair { a: r(1, 1), b: r(1, 1) })]),
            Some(r(1, 1)),
        )
        .unwrap();
        let res = unitarity_residuals(&p);
        assert_eq!(res.axial[0].values[0], Rational::one());
        assert_eq!(res.axial[0].values[3], Rational::from_integer(2.into()));
        assert!(!unitarity_defect(&build_r(&p)).is_zero());
    }

    #[test]
    fn sampler_examples() {
        let a = 0.7;
        let quad: Quad<F> = unitary_quad(a, a, 1.3, 1.3);
        assert!(quad.b.norm() < 1e-15 && quad.y.norm() < 1e-15);
        assert!((quad.a - F::from_polar(a.cos(), 1.3)).norm() < 1e-15);
        let quad: Quad<F> = unitary_quad(0.0, FRAC_PI_2, 0.0, 0.0);
        let expect = [F::new(0.5, 0.0), F::new(0.5, 0.0), F::new(0.0, 0.5), F::new(0.0, -0.5)];
        for (got, want) in quad.values().into_iter().zip(expect) {
            assert!((*got - want).norm() < 1e-15);
        }
        assert!(quad_conditions(&quad).iter().all(|r| *r < 1e-15));
        let p: ParamSet<F> = sample_unitary_params(5, 3);
        assert_eq!(p, sample_unitary_params(5, 3));
        assert!(unitarity_residuals(&p).max_residual() < 1e-14);
    }

    #[test]
    fn factor_examples() {
        let id = SparseMatrix::<Z>::identity(4);
        let w = tensor_factor(&id, 2, &Rational::zero()).unwrap().unwrap();
        assert_eq!(w.x, DenseMatrix::from_rows(vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]]));
        assert_eq!(w.y, w.x);
        assert!(tensor_factor(&build_s::<Z>(2), 2, &Rational::zero()).unwrap().is_none());
        let zero = tensor_factor(&SparseMatrix::<Z>::zeros(4), 2, &Rational::zero()).unwrap().unwrap();
        assert!(zero.degenerate);
        assert!(matches!(
            tensor_factor(&id, 3, &Rational::zero()),
            Err(AnalyzeError::DimensionMismatch { expected: 9, got: 4 })
        ));
    }

    #[test]
    fn schmidt_examples() {
        let e1 = StateVector::<Z>::basis(2, 1);
        let e2 = StateVector::<Z>::basis(2, 2);
        assert_eq!(schmidt_rank(&StateVector::tensor(&e1, &e2), 2, &Rational::zero()).unwrap(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(vec![F::new(s, 0.0), F::zero(), F::zero(), F::new(s, 0.0)]);
        assert_eq!(schmidt_rank(&bell, 2, &1e-12).unwrap(), 2);
        let zero = StateVector::new(vec![F::zero(); 4]);
        assert_eq!(schmidt_rank(&zero, 2, &1e-12), Err(AnalyzeError::ZeroVector));
        assert!(matches!(schmidt_rank(&bell, 3, &1e-12), Err(AnalyzeError::DimensionMismatch { .. })));
    }

    #[test]
    fn entangling_examples() {
        let opts = EntanglingOptions { tol: Rational::zero(), witness_trials: 8, seed: 0, assume_invertible: false };
        let h = r(1, 2);
        let p = q(h.clone(), h, exact((0, 1), (1, 2)), exact((0, 1), (-1, 2)));
        let rep = entangling_check(&p, &opts).unwrap();
        assert!(!rep.entangling);
        let w = rep.factor_of_rs.unwrap();
        let i = exact((0, 1), (1, 1));
        assert_eq!(w.x, DenseMatrix::from_rows(vec![vec![r(1, 1), i.clone()], vec![i.clone(), r(1, 1)]]));
        let hi = exact((0, 1), (-1, 2));
        assert_eq!(w.y, DenseMatrix::from_rows(vec![vec![r(1, 2), hi.clone()], vec![hi, r(1, 2)]]));

        let swap = q(r(1, 1), r(0, 1), r(0, 1), r(0, 1));
        let rep = entangling_check(&swap, &opts).unwrap();
        assert!(!rep.entangling);
        assert!(rep.factor_of_rs.is_some());

        let x = F::i() * F::from_polar(0.5, FRAC_PI_4);
        let fopts = EntanglingOptions { tol: 1e-12, witness_trials: 8, seed: 0, assume_invertible: false };
        let p = ParamSet::new(
            2,
            BTreeMap::from([((1, 1), Quad::new(F::new(0.5, 0.0), F::new(0.5, 0.0), x, -x))]),
            BTreeMap::new(),
            None,
        )
        .unwrap();
        let rep = entangling_check(&p, &fopts).unwrap();
        assert!(rep.entangling);
        assert_eq!(rep.witness_state, Some(StateVector::tensor(&StateVector::basis(2, 1), &StateVector::basis(2, 1))));
        assert_eq!(rep.witness_rank, Some(2));
    }

    #[test]
    fn non_unitary_input_is_rejected_unless_acknowledged() {
        let h = r(1, 2);
        let p = q(h.clone(), h.clone(), h.clone(), h);
        let mut opts =
            EntanglingOptions { tol: Rational::zero(), witness_trials: 0, seed: 0, assume_invertible: false };
        assert!(matches!(entangling_check(&p, &opts), Err(AnalyzeError::NotInvertible(_))));
        opts.assume_invertible = true;
        assert!(entangling_check(&p, &opts).is_ok());
    }
}
