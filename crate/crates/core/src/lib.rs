//! Analysis and construction of matrices with a prescribed associated graph
//! and prescribed row sums (of entry moduli).
//!
//! The central object is the auxiliary matrix `Aux(A)`: a matrix with the
//! zero/nonzero pattern of `A` whose nonzero entries in row `i` all equal the
//! `i`-th row sum of `A`. Matrices in the image of `Aux` are *row uniform*.
//! Fixing a row uniform matrix `B` fixes a class of matrices (all `A` with
//! `Aux(A) = B`, or all complex `A` with `Aux(|A|) = B`), and this crate
//! computes exact descriptions of what that class can do spectrally:
//!
//! - [`cycles`]: maximal/minimal geometric cycle means, critical graphs,
//!   max-plus closures, Perron roots and vectors;
//! - [`scaling`]: diagonal-similarity scalings (visualization, stochastic
//!   bounds, sum visualization);
//! - [`sunflower`]: sunflower subgraphs and the extremal cycle-mean
//!   parameters they realize;
//! - [`perron_range`]: the exact range of achievable Perron roots, with a
//!   constructive realizer for any feasible target;
//! - [`eigen_set`]: the rotation-invariant set of achievable complex
//!   eigenvalue moduli, with constructive eigen-witnesses;
//! - [`camion_hoffman`]: regularity of the fixed-modulus class `Omega(A)`,
//!   decided with a dominance certificate or an explicit singular witness;
//! - [`oracle`]: independent brute-force reference implementations used by
//!   the test suites.

pub mod camion_hoffman;
pub mod cycles;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod eigen_set;
pub mod error;
pub mod graph;
pub mod io;
pub(crate) mod linalg;
pub mod matrix;
pub mod oracle;
pub mod perron_range;
pub mod scaling;
pub mod sunflower;
pub mod tol;

pub use error::{Error, ErrorKind, Result};
pub use matrix::{ComplexMatrix, NonnegMatrix, RowUniformMatrix};
