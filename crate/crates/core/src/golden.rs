//! Reference data for simple graphs on four and five vertices.
//!
//! Coordinates are ordered `x12, x13, x14, x23, x24, x34`.

/// Orbit representatives `p_1, …, p_11` for four vertices.
pub const P_POINTS: [[u32; 6]; 11] = [
    [0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1],
    [1, 1, 1, 0, 0, 0],
    [1, 1, 0, 1, 0, 0],
    [1, 1, 0, 0, 1, 0],
    [1, 1, 1, 1, 0, 0],
    [1, 1, 0, 0, 1, 1],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1],
];

/// Values of `f_1, …, f_10` (rows) at `p_1, …, p_11` (columns).
pub const F_MATRIX: [[u32; 11]; 10] = [
    [0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
];

/// Values of `S_1 = {f_1, f_2, f_3, f_4, f_8}` at the eleven points.
pub const S1_MATRIX: [[u32; 11]; 5] = [
    [0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
];

/// Values of `S_2 = {f_1, f_2, f_3, f_5, f_8}` at the eleven points.
pub const S2_MATRIX: [[u32; 11]; 5] = [
    [0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
];

/// The inclusion-minimal separating subsets of `{f_1, …, f_10}`.
pub const MINIMAL_SUBSETS: [[&str; 5]; 2] = [["f1", "f2", "f3", "f4", "f8"], ["f1", "f2", "f3", "f5", "f8"]];

pub const CLASSES_N4: usize = 11;
pub const CLASSES_N5: usize = 34;
pub const BETA_SEP_N4: u32 = 4;
pub const BETA_SEP_N5_UPPER: u32 = 6;

/// Edge sets of the orbit-sum generators for four vertices; each row is one
/// `o(·)` term list.
pub const F_EDGES: [&[&[(usize, usize)]]; 10] = [
    &[&[(1, 2)]],
    &[&[(1, 2), (1, 3)]],
    &[&[(1, 2), (3, 4)]],
    &[&[(1, 2), (1, 3), (1, 4)]],
    &[&[(1, 2), (1, 3), (2, 3)]],
    &[&[(1, 2), (1, 3), (2, 4)]],
    &[&[(1, 2), (1, 3), (1, 4), (2, 4)]],
    &[&[(1, 2), (1, 3), (2, 4), (3, 4)]],
    &[&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]],
    &[&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]],
];

/// Edge sets for the six separating invariants on five vertices.
pub const G_EDGES: [&[&[(usize, usize)]]; 6] = [
    &[&[(1, 2)]],
    &[&[(1, 2), (1, 3)]],
    &[&[(1, 2), (3, 4)], &[(1, 2), (1, 3), (2, 4), (3, 4)]],
    &[&[(1, 2), (1, 3), (1, 4)], &[(1, 2), (1, 3), (2, 4), (3, 4)]],
    &[&[(1, 2), (1, 3), (2, 3)], &[(1, 2), (1, 3), (2, 4), (3, 4)]],
    &[&[(1, 2), (1, 3), (1, 4), (1, 5)], &[(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)]],
];
