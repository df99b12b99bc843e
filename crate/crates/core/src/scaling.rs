//! Diagonal-similarity scalings.
//!
//! A strictly positive vector `x` acts on a matrix by conjugation with
//! `X = diag(x)`; the scaled matrix is `X^-1 A X` with entries
//! `a_ij x_j / x_i`. Cycle means, the Perron root and the support are all
//! invariant, which is what makes these scalings useful certificates.

use crate::cycles::{critical_graph, cycle_means, max_plus_star, normalized_log, perron_root, Level};
use crate::error::{Error, Result};
use crate::matrix::NonnegMatrix;
use crate::tol;

/// Strictly positive scaling vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingVector {
    values: Vec<f64>,
}

impl ScalingVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidEntry { row: i + 1, col: i + 1, value: v });
            }
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Componentwise reciprocal.
    pub fn reciprocal(&self) -> ScalingVector {
        ScalingVector { values: self.values.iter().map(|&v| 1.0 / v).collect() }
    }

    /// The conjugated matrix `X^-1 A X`.
    pub fn conjugate(&self, a: &NonnegMatrix) -> NonnegMatrix {
        let n = a.n();
        assert_eq!(self.len(), n);
        let mut out = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = a.get(i, j);
                if v != 0.0 {
                    out.set(i, j, v * self.values[j] / self.values[i]);
                }
            }
        }
        out
    }
}

/// Strictly visualizing vector: `a_ij x_j <= mu x_i` on every support edge,
/// with equality exactly on the critical edges.
///
/// Construction: normalize in the log domain by the maximal cycle mean, take
/// the max-plus Kleene star, and sum each star row in the ordinary domain.
/// The result is verified against the definition and the call fails loudly
/// if either clause is violated.
pub fn strict_visualizing_vector(a: &NonnegMatrix) -> Result<ScalingVector> {
    let (mean, g) = normalized_log(a, Level::Max)?;
    let star = max_plus_star(&g)?;
    let n = a.n();
    let x: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| star[i][j].exp()).sum())
        .collect();
    let x = ScalingVector::new(x)?;
    verify_strict(a, &x, mean, Level::Max)?;
    Ok(x)
}

/// Strictly antivisualizing vector: `a_ij x_j >= nu x_i` on every support
/// edge, with equality exactly on the anticritical edges. Obtained by
/// visualizing the Hadamard inverse and inverting the vector componentwise.
pub fn strict_antivisualizing_vector(a: &NonnegMatrix) -> Result<ScalingVector> {
    let x = strict_visualizing_vector(&a.hadamard_inverse())?.reciprocal();
    let report = cycle_means(a);
    verify_strict(a, &x, report.nu, Level::Min)?;
    Ok(x)
}

/// Check both clauses of the strict (anti)visualization definition.
fn verify_strict(a: &NonnegMatrix, x: &ScalingVector, mean: f64, level: Level) -> Result<()> {
    let crit = critical_graph(a, level)?;
    let critical: std::collections::HashSet<(usize, usize)> = crit.edges.iter().copied().collect();
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v == 0.0 {
                continue;
            }
            let ratio = v * x.get(j) / (mean * x.get(i));
            let tight = (ratio - 1.0).abs() <= tol::CRITICAL_EDGE_TOL;
            let slack = match level {
                Level::Max => ratio < 1.0 - tol::SLACK_MARGIN,
                Level::Min => ratio > 1.0 + tol::SLACK_MARGIN,
            };
            if critical.contains(&(i, j)) {
                if !tight {
                    return Err(Error::VerificationFailed {
                        what: format!("critical edge ({}, {}) not tight: ratio {ratio}", i + 1, j + 1),
                    });
                }
            } else if !slack {
                return Err(Error::VerificationFailed {
                    what: format!("edge ({}, {}) not strictly slack: ratio {ratio}", i + 1, j + 1),
                });
            }
        }
    }
    Ok(())
}

/// Row classification against a strict (anti)visualizing vector of the
/// auxiliary matrix: a row is tight when `(A x)_i` equals `mean * x_i`.
#[derive(Debug, Clone)]
pub struct RowInteraction {
    /// The extremal cycle mean of the auxiliary matrix.
    pub mean: f64,
    pub rows: Vec<RowStatus>,
}

#[derive(Debug, Clone, Copy)]
pub struct RowStatus {
    pub tight: bool,
    /// All outgoing support edges of the row are (anti)critical.
    pub strictly_critical: bool,
}

/// Classify rows of `a` against `x`, a strict (anti)visualizing vector of
/// `Aux(a)`, and assert the dichotomy: a row is tight exactly when its node
/// is strictly (anti)critical in the auxiliary matrix.
pub fn row_interaction(a: &NonnegMatrix, x: &ScalingVector, level: Level) -> Result<RowInteraction> {
    let aux = a.aux().as_matrix();
    let report = cycle_means(&aux);
    let mean = match level {
        Level::Max => report.mu,
        Level::Min => report.nu,
    };
    verify_strict(&aux, x, mean, level)?;
    let crit = critical_graph(&aux, level)?;
    let strict: std::collections::HashSet<usize> = crit.strict_nodes.iter().copied().collect();
    let n = a.n();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        if a.row_support(i).is_empty() {
            // empty rows are outside the lemma's scope; report slack
            rows.push(RowStatus { tight: false, strictly_critical: false });
            continue;
        }
        let lhs: f64 = (0..n).map(|j| a.get(i, j) * x.get(j)).sum();
        let rhs = mean * x.get(i);
        let tight = (lhs - rhs).abs() <= tol::CRITICAL_EDGE_TOL * rhs;
        let strictly_critical = strict.contains(&i);
        if tight != strictly_critical {
            return Err(Error::VerificationFailed {
                what: format!(
                    "row {}: tight = {tight} but strictly critical = {strictly_critical}",
                    i + 1
                ),
            });
        }
        rows.push(RowStatus { tight, strictly_critical });
    }
    Ok(RowInteraction { mean, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingCase {
    /// Equal extremal cycle means: the scaled matrix is stochastic times the
    /// cycle mean, and the Perron root equals it.
    Equal,
    /// Distinct means: one scaling is truly substochastic after division by
    /// the maximal mean, the other truly superstochastic after division by
    /// the minimal mean, and the Perron root sits strictly between them.
    Strict,
}

/// The stochastic-scaling bounds for an irreducible matrix.
#[derive(Debug, Clone)]
pub struct StochasticScalings {
    pub mu: f64,
    pub nu: f64,
    pub rho: f64,
    pub case: ScalingCase,
    /// Scaling making `A / mu` (truly sub)stochastic.
    pub substochastic: ScalingVector,
    /// Scaling making `A / nu` (truly super)stochastic.
    pub superstochastic: ScalingVector,
}

/// Scalings certifying `nu(Aux A) <= rho(A) <= mu(Aux A)` for irreducible
/// `A`, with strict inequalities exactly when the two means differ.
pub fn aevdd_scalings(a: &NonnegMatrix) -> Result<StochasticScalings> {
    if !a.is_irreducible() {
        return Err(Error::Reducible);
    }
    let aux = a.aux().as_matrix();
    let report = cycle_means(&aux);
    let (mu, nu) = (report.mu, report.nu);
    let rho = perron_root(a);
    let x = strict_visualizing_vector(&aux)?;
    let y = strict_antivisualizing_vector(&aux)?;
    let case = if tol::close_rel(mu, nu, tol::MEAN_EQ_REL) {
        ScalingCase::Equal
    } else {
        ScalingCase::Strict
    };

    // Row sums of the scaled matrices certify the case.
    let n = a.n();
    let row_sums = |v: &ScalingVector| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j) * v.get(j)).sum::<f64>() / v.get(i))
            .collect()
    };
    let sub = row_sums(&x);
    let sup = row_sums(&y);
    match case {
        ScalingCase::Equal => {
            for s in &sub {
                if (s / mu - 1.0).abs() > tol::SUM_VIS_VERIFY_REL {
                    return Err(Error::VerificationFailed {
                        what: format!("row sum {s} is not stochastic at level {mu}"),
                    });
                }
            }
        }
        ScalingCase::Strict => {
            let all_below = sub.iter().all(|&s| s <= mu * (1.0 + tol::SUM_VIS_VERIFY_REL));
            let some_strict = sub.iter().any(|&s| s < mu * (1.0 - tol::SUM_VIS_VERIFY_REL));
            let all_above = sup.iter().all(|&s| s >= nu * (1.0 - tol::SUM_VIS_VERIFY_REL));
            let some_above = sup.iter().any(|&s| s > nu * (1.0 + tol::SUM_VIS_VERIFY_REL));
            if !(all_below && some_strict && all_above && some_above) {
                return Err(Error::VerificationFailed {
                    what: "scaled matrix is not truly sub/superstochastic".into(),
                });
            }
        }
    }
    Ok(StochasticScalings { mu, nu, rho, case, substochastic: x, superstochastic: y })
}

/// Sum visualization: find `x` such that `C = X^-1 A X` has every entry at
/// most `level` and every row sum at least `level`. Exists for irreducible
/// `A` exactly when `level` lies between the maximal cycle mean and the
/// Perron root.
///
/// Phase 1 scales all entries of `A / level` to at most 1 with a
/// visualizing vector; phase 2 runs the fixed-point iteration
/// `x_i <- min(x_i, sum_j g_ij x_j)` from the all-ones vector. The iterate
/// sequence is entrywise nonincreasing and bounded below by the scaled
/// Perron vector, so it converges; the limit satisfies both conditions.
pub fn sum_visualize(a: &NonnegMatrix, level: f64) -> Result<ScalingVector> {
    if !a.is_irreducible() {
        return Err(Error::Reducible);
    }
    let report = cycle_means(a);
    let rho = perron_root(a);
    let (lo, hi) = (report.mu, rho);
    if !(level.is_finite() && level > 0.0)
        || level < lo - tol::LEVEL_RANGE_REL * lo.max(1.0)
        || level > hi + tol::LEVEL_RANGE_REL * hi.max(1.0)
    {
        return Err(Error::LevelOutsideRange { level, lo, hi });
    }
    // hi can undershoot lo by rounding when the interval degenerates
    let level = level.clamp(lo, hi.max(lo));

    // Phase 1: entries of X^-1 (A/level) X all at most 1.
    let x = strict_visualizing_vector(a)?;
    let n = a.n();
    let g = {
        let mut g = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                g[i][j] = a.get(i, j) * x.get(j) / (level * x.get(i));
            }
        }
        g
    };

    // Phase 2: nonincreasing fixed-point iteration from the ones vector.
    // The step criterion is taken relative per coordinate, which is at least
    // as strict as the sup-norm criterion since the iterates stay in (0, 1].
    let mut y = vec![1.0; n];
    let mut converged = false;
    for _ in 0..tol::FIXED_POINT_MAX_ITER {
        let mut step = 0.0f64;
        let mut next = vec![0.0; n];
        for i in 0..n {
            let s: f64 = (0..n).map(|j| g[i][j] * y[j]).sum();
            next[i] = y[i].min(s);
            assert!(next[i] <= y[i], "iterate sequence must be nonincreasing");
            step = step.max((y[i] - next[i]) / y[i]);
        }
        y = next;
        if step < tol::FIXED_POINT_STEP {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::IterationBudget { what: "sum visualization fixed point" });
    }

    let combined = ScalingVector::new((0..n).map(|i| x.get(i) * y[i]).collect())?;
    verify_sum_visualization(a, &combined, level)?;
    Ok(combined)
}

/// Postcondition check for a sum visualization.
pub fn verify_sum_visualization(a: &NonnegMatrix, x: &ScalingVector, level: f64) -> Result<()> {
    let c = x.conjugate(a);
    let n = a.n();
    for i in 0..n {
        let mut sum = 0.0;
        for j in 0..n {
            let v = c.get(i, j);
            if v > level * (1.0 + tol::SUM_VIS_VERIFY_REL) {
                return Err(Error::VerificationFailed {
                    what: format!("entry ({}, {}) = {v} exceeds level {level}", i + 1, j + 1),
                });
            }
            sum += v;
        }
        if sum < level * (1.0 - tol::SUM_VIS_VERIFY_REL) {
            return Err(Error::VerificationFailed {
                what: format!("row {} sums to {sum}, below level {level}", i + 1),
            });
        }
    }
    Ok(())
}

/// Inverse-direction sum visualization: `C = X^-1 A X` has every support
/// entry at least `level` and `sum_j level / c_ij >= 1` on every row (sums
/// over the support). Exists exactly when `1/level` lies between the maximal
/// cycle mean and the Perron root of the Hadamard inverse. Obtained by sum
/// visualization of the Hadamard inverse.
pub fn sum_visualize_inverse(a: &NonnegMatrix, level: f64) -> Result<ScalingVector> {
    let h = a.hadamard_inverse();
    if !(level.is_finite() && level > 0.0) {
        let report = cycle_means(a);
        return Err(Error::LevelOutsideRange { level, lo: 0.0, hi: report.nu });
    }
    let y = sum_visualize(&h, 1.0 / level).map_err(|e| match e {
        Error::LevelOutsideRange { lo, hi, .. } => Error::LevelOutsideRange {
            level,
            lo: if hi > 0.0 { 1.0 / hi } else { 0.0 },
            hi: if lo > 0.0 { 1.0 / lo } else { f64::INFINITY },
        },
        other => other,
    })?;
    let x = y.reciprocal();
    // verify directly as stated
    let c = x.conjugate(a);
    let n = a.n();
    for i in 0..n {
        let mut inv_sum = 0.0;
        for j in 0..n {
            let v = c.get(i, j);
            if v == 0.0 {
                continue;
            }
            if v < level * (1.0 - tol::SUM_VIS_VERIFY_REL) {
                return Err(Error::VerificationFailed {
                    what: format!("entry ({}, {}) = {v} below level {level}", i + 1, j + 1),
                });
            }
            inv_sum += level / v;
        }
        if a.row_support(i).is_empty() {
            continue;
        }
        if inv_sum < 1.0 - tol::SUM_VIS_VERIFY_REL {
            return Err(Error::VerificationFailed {
                what: format!("row {} reciprocal sum {inv_sum} below 1", i + 1),
            });
        }
    }
    Ok(x)
}
