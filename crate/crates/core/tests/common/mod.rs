//! Data shared by the integration tests.

#![allow(dead_code)]

/// Edge list of the published ten-node Erdős–Rényi sample.
pub const FIXTURE_EDGES: &str = include_str!("../../fixtures/er10_fig1.edges");

/// Published `c_A` of the sample, constant term first.
pub const C_A: [i64; 11] = [-4, 4, 27, -10, -52, 8, 38, -2, -11, 0, 1];

/// Published `c_{A∖{j}}` for `j = 1..=10`, constant term first.
pub const C_DELETED: [[i64; 10]; 10] = [
    [-2, -5, 6, 17, -6, -19, 2, 8, 0, -1],
    [0, -4, 0, 16, 0, -19, 0, 8, 0, -1],
    [0, -8, 4, 29, -6, -29, 2, 10, 0, -1],
    [0, -4, 0, 14, 0, -16, 0, 7, 0, -1],
    [-2, -5, 8, 20, -8, -23, 2, 9, 0, -1],
    [2, -7, -4, 25, 2, -25, 0, 9, 0, -1],
    [-2, -9, 6, 30, -6, -29, 2, 10, 0, -1],
    [0, -4, 2, 18, -4, -22, 2, 9, 0, -1],
    [0, -4, 4, 20, -6, -23, 2, 9, 0, -1],
    [0, -4, 4, 19, -6, -23, 2, 9, 0, -1],
];
