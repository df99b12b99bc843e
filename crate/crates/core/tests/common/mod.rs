//! Shared fixtures for the integration suites.

use spectral_range::matrix::{NonnegMatrix, RowUniformMatrix};

pub fn m(rows: &[&[f64]]) -> NonnegMatrix {
    NonnegMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn ru(rows: &[&[f64]]) -> RowUniformMatrix {
    RowUniformMatrix::from_dense(&m(rows)).unwrap()
}

/// Irreducible 5x5 row uniform matrix with row values (8,2,2,3,3); maximal
/// cycle mean 4, minimal sqrt(6), open Perron-root range in between.
pub fn five_node_b() -> RowUniformMatrix {
    ru(&[
        &[0., 8., 8., 0., 8.],
        &[2., 0., 0., 2., 2.],
        &[2., 0., 0., 0., 0.],
        &[0., 3., 0., 3., 3.],
        &[0., 3., 0., 0., 0.],
    ])
}

/// Reducible 5x5 with classes {1} (final), {2,3} and {4,5} (transient).
pub fn chained_classes_b() -> RowUniformMatrix {
    ru(&[
        &[5., 0., 0., 0., 0.],
        &[4., 0., 4., 0., 0.],
        &[0., 4., 0., 0., 0.],
        &[3., 0., 0., 3., 3.],
        &[0., 3., 0., 3., 3.],
    ])
}

/// The same classes with all inter-class edges cut (all final).
pub fn isolated_classes_c() -> RowUniformMatrix {
    ru(&[
        &[5., 0., 0., 0., 0.],
        &[0., 0., 4., 0., 0.],
        &[0., 4., 0., 0., 0.],
        &[0., 0., 0., 3., 3.],
        &[0., 0., 0., 3., 3.],
    ])
}

pub fn close_rel(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * 1f64.max(a.abs()).max(b.abs())
}
