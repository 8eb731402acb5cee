//! Printed illustrations of R, S and R̂ for n = 2, 3, 4, matched entry by
//! entry with symbolic sentinel values.

mod common;

use common::printed::*;
use common::{sentinel, table, to_dense, Z};
use ybe::{build_r, build_rhat, build_s, RhatMethod};

/// Printed `[R, S, R̂]` for dimension `n`.
fn golden(n: usize) -> [&'static [&'static str]; 3] {
    match n {
        2 => [R4, S4, RHAT4],
        3 => [R9, S9, RHAT9],
        4 => [R16, S16, RHAT16],
        _ => unreachable!(),
    }
}

#[test]
fn printed_matrices_match_entrywise() {
    for n in 2..=4 {
        let p = sentinel(n);
        let [r, s, rhat] = golden(n);
        assert_eq!(to_dense(&build_r(&p)), table(r), "R for n = {n}");
        assert_eq!(to_dense(&build_s::<Z>(n)), table(s), "S for n = {n}");
        for method in [RhatMethod::Product, RhatMethod::Direct] {
            assert_eq!(to_dense(&build_rhat(&p, method)), table(rhat), "R̂ ({method:?}) for n = {n}");
        }
    }
}

#[test]
fn printed_nonzero_counts() {
    for (n, expected) in [(2, 16), (3, 25), (4, 64)] {
        let [r, ..] = golden(n);
        let count = r.iter().flat_map(|row| row.split_whitespace()).filter(|t| *t != "0").count();
        assert_eq!(count, expected);
        assert_eq!(build_r(&sentinel(n)).nnz(), expected);
    }
}
