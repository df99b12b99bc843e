//! Centralized numeric tolerances.
//!
//! Every threshold used by the library is defined here so that the decision
//! boundaries of the algorithms are pinned in one place.

/// Relative tolerance for validating that nonzero entries of a row agree
/// (row-uniformity check) and for entrywise modulus matches of witnesses.
pub const ROW_UNIFORM_REL: f64 = 1e-12;

/// An edge is critical iff its normalized max-plus cycle weight through the
/// Kleene star is at least `-CRITICAL_EDGE_TOL`.
pub const CRITICAL_EDGE_TOL: f64 = 1e-9;

/// Strictly slack edges must miss tightness by more than this margin when a
/// strict visualization is verified post-hoc.
pub const SLACK_MARGIN: f64 = 1e-7;

/// Max-plus star construction rejects cycles with weight above this.
pub const POSITIVE_CYCLE_TOL: f64 = 1e-9;

/// Relative gap between the Collatz-Wielandt bounds at which the Perron
/// power iteration stops.
pub const PERRON_GAP_REL: f64 = 1e-12;

/// Iteration cap for the Perron power iteration.
pub const PERRON_MAX_ITER: usize = 100_000;

/// Residual tolerance for a computed Perron eigenpair.
pub const PERRON_RESIDUAL_REL: f64 = 1e-9;

/// Sup-norm step change at which the sum-visualization fixed point stops.
pub const FIXED_POINT_STEP: f64 = 1e-12;

/// Iteration cap for the sum-visualization fixed point.
pub const FIXED_POINT_MAX_ITER: usize = 1_000_000;

/// Relative tolerance on range preconditions (levels, moduli) before a
/// request is rejected as out of range.
pub const LEVEL_RANGE_REL: f64 = 1e-10;

/// Verification tolerance for the sum-visualization postconditions.
pub const SUM_VIS_VERIFY_REL: f64 = 1e-9;

/// Targets within this relative distance of an unattained endpoint of the
/// Perron-root range are rejected.
pub const ENDPOINT_REJECT_REL: f64 = 1e-12;

/// Internal accuracy goal of the Perron-root realizer.
pub const REALIZE_INTERNAL_REL: f64 = 1e-9;

/// Contractual accuracy of the Perron-root realizer.
pub const REALIZE_POST_REL: f64 = 1e-6;

/// Halvings of the blending weight before the realizer gives up.
pub const REALIZE_MAX_HALVINGS: usize = 60;

/// Bisection steps of the realizer's interpolation parameter.
pub const REALIZE_MAX_BISECTIONS: usize = 200;

/// Residual bound for eigen-witnesses carrying an eigenvector.
pub const WITNESS_RESIDUAL: f64 = 1e-8;

/// Determinant residual bound (relative to the witness scale) for
/// eigen-witnesses verified through the determinant.
pub const DET_RESIDUAL: f64 = 1e-8;

/// Relative tolerance identifying equal radii in a modulus set.
pub const RADIUS_EQ_REL: f64 = 1e-10;

/// Half-width of the band around test radius 1 in which the regularity
/// decision is flagged as a boundary case.
pub const DECISION_BAND: f64 = 1e-9;

/// Row-sum defect tolerance for the bisection that restores a perturbed row.
pub const ROW_SUM_DEFECT: f64 = 1e-12;

/// Absolute-sum residual (relative to the total length) of a closed polygon.
pub const POLYGON_SUM_REL: f64 = 1e-12;

/// Relative margin demanded on each side of a target modulus before the
/// eigenvalue realizer hands the rescaled matrix to the Perron realizer.
pub const MODULUS_MARGIN_REL: f64 = 1e-10;

/// Relative equality tolerance for cycle means when classifying endpoint
/// attainment and degeneracy.
pub const MEAN_EQ_REL: f64 = 1e-10;

/// `true` when `a` and `b` agree within `rel` relative tolerance
/// (of `max(1, |a|, |b|)`).
pub fn close_rel(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * 1f64.max(a.abs()).max(b.abs())
}
