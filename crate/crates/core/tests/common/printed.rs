//! Matrices as printed for n = 2, 3, 4, one string per row.

pub const R4: &[&str] = &["a1 x1 y1 b1", "y1 b1 a1 x1", "x1 a1 b1 y1", "b1 y1 x1 a1"];

pub const R9: &[&str] = &[
    "a1 0 x1 0 0 0 y1 0 b1",
    "0 0 0 a2 0 b2 0 0 0",
    "y1 0 b1 0 0 0 a1 0 x1",
    "0 a2 0 0 0 0 0 b2 0",
    "0 0 0 0 x 0 0 0 0",
    "0 b2 0 0 0 0 0 a2 0",
    "x1 0 a1 0 0 0 b1 0 y1",
    "0 0 0 b2 0 a2 0 0 0",
    "b1 0 y1 0 0 0 x1 0 a1",
];

pub const R16: &[&str] = &[
    "a1 0 0 x1 0 0 0 0 0 0 0 0 y1 0 0 b1",
    "0 0 0 0 a2 0 0 x2 y2 0 0 b2 0 0 0 0",
    "0 0 0 0 y2 0 0 b2 a2 0 0 x2 0 0 0 0",
    "y1 0 0 b1 0 0 0 0 0 0 0 0 a1 0 0 x1",
    "0 a5 x5 0 0 0 0 0 0 0 0 0 0 y5 b5 0",
    "0 0 0 0 0 a6 x6 0 0 y6 b6 0 0 0 0 0",
    "0 0 0 0 0 y6 b6 0 0 a6 x6 0 0 0 0 0",
    "0 y5 b5 0 0 0 0 0 0 0 0 0 0 a5 x5 0",
    "0 x5 a5 0 0 0 0 0 0 0 0 0 0 b5 y5 0",
    "0 0 0 0 0 x6 a6 0 0 b6 y6 0 0 0 0 0",
    "0 0 0 0 0 b6 y6 0 0 x6 a6 0 0 0 0 0",
    "0 b5 y5 0 0 0 0 0 0 0 0 0 0 x5 a5 0",
    "x1 0 0 a1 0 0 0 0 0 0 0 0 b1 0 0 y1",
    "0 0 0 0 x2 0 0 a2 b2 0 0 y2 0 0 0 0",
    "0 0 0 0 b2 0 0 y2 x2 0 0 a2 0 0 0 0",
    "b1 0 0 y1 0 0 0 0 0 0 0 0 x1 0 0 a1",
];

pub const S4: &[&str] = &["1 0 0 0", "0 0 1 0", "0 1 0 0", "0 0 0 1"];

pub const S9: &[&str] = &[
    "1 0 0 0 0 0 0 0 0",
    "0 0 0 1 0 0 0 0 0",
    "0 0 0 0 0 0 1 0 0",
    "0 1 0 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 0 1 0",
    "0 0 1 0 0 0 0 0 0",
    "0 0 0 0 0 1 0 0 0",
    "0 0 0 0 0 0 0 0 1",
];

pub const S16: &[&str] = &[
    "1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0",
    "0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0",
    "0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0",
    "0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1",
];

pub const RHAT4: &[&str] = &["a1 y1 x1 b1", "y1 a1 b1 x1", "x1 b1 a1 y1", "b1 x1 y1 a1"];

pub const RHAT9: &[&str] = &[
    "a1 0 y1 0 0 0 x1 0 b1",
    "0 a2 0 0 0 0 0 b2 0",
    "y1 0 a1 0 0 0 b1 0 x1",
    "0 0 0 a2 0 b2 0 0 0",
    "0 0 0 0 x 0 0 0 0",
    "0 0 0 b2 0 a2 0 0 0",
    "x1 0 b1 0 0 0 a1 0 y1",
    "0 b2 0 0 0 0 0 a2 0",
    "b1 0 x1 0 0 0 y1 0 a1",
];

pub const RHAT16: &[&str] = &[
    "a1 0 0 y1 0 0 0 0 0 0 0 0 x1 0 0 b1",
    "0 a2 y2 0 0 0 0 0 0 0 0 0 0 x2 b2 0",
    "0 y2 a2 0 0 0 0 0 0 0 0 0 0 b2 x2 0",
    "y1 0 0 a1 0 0 0 0 0 0 0 0 b1 0 0 x1",
    "0 0 0 0 a5 0 0 y5 x5 0 0 b5 0 0 0 0",
    "0 0 0 0 0 a6 y6 0 0 x6 b6 0 0 0 0 0",
    "0 0 0 0 0 y6 a6 0 0 b6 x6 0 0 0 0 0",
    "0 0 0 0 y5 0 0 a5 b5 0 0 x5 0 0 0 0",
    "0 0 0 0 x5 0 0 b5 a5 0 0 y5 0 0 0 0",
    "0 0 0 0 0 x6 b6 0 0 a6 y6 0 0 0 0 0",
    "0 0 0 0 0 b6 x6 0 0 y6 a6 0 0 0 0 0",
    "0 0 0 0 b5 0 0 x5 y5 0 0 a5 0 0 0 0",
    "x1 0 0 b1 0 0 0 0 0 0 0 0 a1 0 0 y1",
    "0 x2 b2 0 0 0 0 0 0 0 0 0 0 a2 y2 0",
    "0 b2 x2 0 0 0 0 0 0 0 0 0 0 y2 a2 0",
    "b1 0 0 x1 0 0 0 0 0 0 0 0 y1 0 0 a1",
];
