//! Shared matrices for unit tests.

use crate::matrix::{NonnegMatrix, RowUniformMatrix};

pub fn m(rows: &[&[f64]]) -> NonnegMatrix {
    NonnegMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn ru(rows: &[&[f64]]) -> RowUniformMatrix {
    RowUniformMatrix::from_dense(&m(rows)).unwrap()
}

/// Irreducible 5x5 row uniform matrix with row values (8,2,2,3,3).
/// Maximal cycle mean 4 (cycles 1-2 and 1-3), minimal sqrt(6) (cycles 2-4
/// and 2-5); the achievable Perron roots form the open interval (sqrt 6, 4).
pub fn five_node_b() -> RowUniformMatrix {
    ru(&[
        &[0., 8., 8., 0., 8.],
        &[2., 0., 0., 2., 2.],
        &[2., 0., 0., 0., 0.],
        &[0., 3., 0., 3., 3.],
        &[0., 3., 0., 0., 0.],
    ])
}

/// Reducible 5x5 row uniform matrix: classes {1} (final), {2,3} and {4,5}
/// (both transient). Achievable eigenvalue moduli (0,4) plus the circle 5.
pub fn chained_classes_b() -> RowUniformMatrix {
    ru(&[
        &[5., 0., 0., 0., 0.],
        &[4., 0., 4., 0., 0.],
        &[0., 4., 0., 0., 0.],
        &[3., 0., 0., 3., 3.],
        &[0., 3., 0., 3., 3.],
    ])
}

/// `chained_classes_b` with all inter-class edges cut: three final classes.
/// Achievable eigenvalue moduli (0,3] plus the circles 4 and 5.
pub fn isolated_classes_c() -> RowUniformMatrix {
    ru(&[
        &[5., 0., 0., 0., 0.],
        &[0., 0., 4., 0., 0.],
        &[0., 4., 0., 0., 0.],
        &[0., 0., 0., 3., 3.],
        &[0., 0., 0., 3., 3.],
    ])
}

/// The two-node single-cycle matrix with row sums 8 and 2 (Perron root 4).
pub fn two_cycle() -> NonnegMatrix {
    m(&[&[0., 8.], &[2., 0.]])
}
