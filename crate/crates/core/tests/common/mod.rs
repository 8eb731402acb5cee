//! Helpers shared by the integration tests: sentinel parameters for matching
//! printed matrices, and dense brute-force oracles that share no code with
//! the sparse kernels under test.

#![allow(dead_code)]

pub mod printed;

use std::collections::BTreeMap;

use num_traits::Zero;
use ybe::scalars::ratio;
use ybe::{AxialPair, ExactParams, ExactScalar, ParamSet, Quad, Real, Scalar, SparseMatrix};

pub type Z = ExactScalar;
pub type Dense<S> = Vec<Vec<S>>;

pub fn z(re: i64, im: i64) -> Z {
    Z::new(ratio(re, 1), ratio(im, 1))
}

/// Every symbol gets a distinct value: real part is the printed subscript,
/// imaginary part is 1, 2, 3, 4 for a, b, x, y and 5 for the center.
pub fn sentinel(n: usize) -> ExactParams {
    let m = n / 2;
    let mut quads = BTreeMap::new();
    let mut axial = BTreeMap::new();
    for t in 1..=m {
        for s in 1..=m {
            let l = ((t - 1) * n + s) as i64;
            quads.insert((t, s), Quad::new(z(l, 1), z(l, 2), z(l, 3), z(l, 4)));
        }
    }
    let center = (n % 2 == 1).then(|| {
        for t in 1..=m {
            let l = ((t - 1) * n + n.div_ceil(2)) as i64;
            axial.insert(t, AxialPair { a: z(l, 1), b: z(l, 2) });
        }
        z(0, 5)
    });
    ParamSet::new(n, quads, axial, center).unwrap()
}

/// Decode a printed symbol (`0`, `1`, `x`, `a1`, `y15`, ...) into its
/// sentinel value.
pub fn symbol(tok: &str) -> Z {
    match tok {
        "0" => Z::zero(),
        "1" => z(1, 0),
        "x" => z(0, 5),
        _ => {
            let (kind, label) = tok.split_at(1);
            let im = match kind {
                "a" => 1,
                "b" => 2,
                "x" => 3,
                "y" => 4,
                _ => panic!("unknown symbol {tok}"),
            };
            z(label.parse().unwrap(), im)
        }
    }
}

pub fn table(rows: &[&str]) -> Dense<Z> {
    let t: Dense<Z> = rows.iter().map(|r| r.split_whitespace().map(symbol).collect()).collect();
    assert!(t.iter().all(|r| r.len() == t.len()), "table must be square");
    t
}

pub fn to_dense<S: Scalar>(m: &SparseMatrix<S>) -> Dense<S> {
    let d = m.dim();
    let mut out = vec![vec![S::zero(); d]; d];
    for (r, c, v) in m.entries() {
        out[r - 1][c - 1] = v.clone();
    }
    out
}

pub fn identity<S: Scalar>(d: usize) -> Dense<S> {
    (0..d).map(|r| (0..d).map(|c| if r == c { S::one() } else { S::zero() }).collect()).collect()
}

pub fn mul<S: Scalar>(a: &Dense<S>, b: &Dense<S>) -> Dense<S> {
    let d = a.len();
    let mut out = vec![vec![S::zero(); d]; d];
    for r in 0..d {
        for k in 0..d {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..d {
                out[r][c] = out[r][c].clone() + a[r][k].clone() * b[k][c].clone();
            }
        }
    }
    out
}

pub fn kron<S: Scalar>(a: &Dense<S>, b: &Dense<S>) -> Dense<S> {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![S::zero(); p * q]; p * q];
    for i in 0..p {
        for j in 0..p {
            for k in 0..q {
                for l in 0..q {
                    out[i * q + k][j * q + l] = a[i][j].clone() * b[k][l].clone();
                }
            }
        }
    }
    out
}

/// Largest entrywise `max(|re|, |im|)` of `a − b`, in f64.
pub fn max_diff<S: Scalar>(a: &Dense<S>, b: &Dense<S>) -> f64 {
    let mut worst = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            let d = x.clone() - y.clone();
            worst = worst.max(d.re().to_f64().abs()).max(d.im().to_f64().abs());
        }
    }
    worst
}

/// `(R ⊗ I)(I ⊗ R)(R ⊗ I)` and `(I ⊗ R)(R ⊗ I)(I ⊗ R)`.
pub fn braid_sides<S: Scalar>(r: &Dense<S>, n: usize) -> (Dense<S>, Dense<S>) {
    let id = identity::<S>(n);
    let r12 = kron(r, &id);
    let r23 = kron(&id, r);
    (mul(&mul(&r12, &r23), &r12), mul(&mul(&r23, &r12), &r23))
}

/// Swap of two n-dimensional factors straight from `S(eᵢ ⊗ eⱼ) = eⱼ ⊗ eᵢ`.
pub fn swap<S: Scalar>(n: usize) -> Dense<S> {
    let d = n * n;
    let mut out = vec![vec![S::zero(); d]; d];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i][i * n + j] = S::one();
        }
    }
    out
}

/// `R̂₁₂ R̂₁₃ R̂₂₃` and `R̂₂₃ R̂₁₃ R̂₁₂`, with `R̂₁₃` conjugated by a swap of the
/// last two factors.
pub fn quantum_sides<S: Scalar>(rhat: &Dense<S>, n: usize) -> (Dense<S>, Dense<S>) {
    let id = identity::<S>(n);
    let r12 = kron(rhat, &id);
    let r23 = kron(&id, rhat);
    let p23 = kron(&id, &swap::<S>(n));
    let r13 = mul(&mul(&p23, &r12), &p23);
    (mul(&mul(&r12, &r13), &r23), mul(&mul(&r23, &r13), &r12))
}

/// Even-n row description: row `v = (t−1)n+s` carries `a, b, x, y` of the
/// folded quad at four computed columns.
pub fn row_rule_oracle<S: Scalar>(p: &ParamSet<S>) -> Dense<S> {
    let n = p.n();
    assert!(n.is_multiple_of(2), "row rule covers even n");
    let d = n * n;
    let fold = |k: usize| k.min(n - k + 1);
    let mut out: Dense<Option<S>> = vec![vec![None; d]; d];
    for t in 1..=n {
        for s in 1..=n {
            let v = (t - 1) * n + s;
            let q = p.quad(fold(t), fold(s)).unwrap();
            let cols = [
                ((s - 1) * n + t, &q.a),
                (d + 1 - ((s - 1) * n + t), &q.b),
                (d + 1 - ((n - s) * n + t), &q.x),
                ((n - s) * n + t, &q.y),
            ];
            for (w, val) in cols {
                let slot = &mut out[v - 1][w - 1];
                assert!(slot.is_none(), "row rule places two values at ({v}, {w})");
                *slot = Some(val.clone());
            }
        }
    }
    out.into_iter().map(|r| r.into_iter().map(|e| e.unwrap_or_else(S::zero)).collect()).collect()
}
