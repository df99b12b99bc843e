//! The exact range of Perron roots achievable by nonnegative matrices with
//! a prescribed auxiliary matrix, and a constructive realizer for any
//! feasible target.
//!
//! The range is the interval between the two extremal sunflower parameters;
//! whether an endpoint is attained is decided class-wise: the upper endpoint
//! needs a final class whose maximal and minimal cycle means both equal it,
//! the lower endpoint needs every final class attaining it to be of that
//! kind (and 0 is attained only by acyclic supports).

use crate::cycles::{cycle_means, perron_root};
use crate::error::{Error, Result};
use crate::matrix::{NonnegMatrix, RowUniformMatrix};
use crate::sunflower::{extremal_params, max_attaining_sunflower, min_attaining_sunflower};
use crate::tol;

/// Achievable Perron roots: the interval `[lower, upper]` with open or
/// closed endpoints per the attainment flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronRange {
    pub lower: f64,
    pub upper: f64,
    pub lower_attained: bool,
    pub upper_attained: bool,
    /// `lower == upper`; both endpoints are then attained.
    pub degenerate: bool,
}

impl PerronRange {
    pub fn describe(&self) -> String {
        if self.degenerate {
            format!("{{{}}}", self.upper)
        } else {
            format!(
                "{}{}, {}{}",
                if self.lower_attained { '[' } else { '(' },
                self.lower,
                self.upper,
                if self.upper_attained { ']' } else { ')' },
            )
        }
    }
}

/// Describe the achievable Perron-root range of `b`.
pub fn perron_root_range(b: &RowUniformMatrix) -> PerronRange {
    let params = extremal_params(b);
    let (m, big_m) = (params.lower, params.upper);
    if tol::close_rel(m, big_m, tol::MEAN_EQ_REL) {
        return PerronRange {
            lower: m,
            upper: big_m,
            lower_attained: true,
            upper_attained: true,
            degenerate: true,
        };
    }
    let fnf = b.frobenius_form();
    let dense = b.as_matrix();
    let mut upper_attained = false;
    let mut lower_attained = m > 0.0;
    for c in fnf.nontrivial_final_classes() {
        let block = dense.principal_submatrix(&fnf.classes[c]);
        let r = cycle_means(&block);
        let balanced = tol::close_rel(r.mu, r.nu, tol::MEAN_EQ_REL);
        if balanced && tol::close_rel(r.mu, big_m, tol::MEAN_EQ_REL) {
            upper_attained = true;
        }
        if tol::close_rel(r.nu, m, tol::MEAN_EQ_REL) && !balanced {
            lower_attained = false;
        }
    }
    PerronRange { lower: m, upper: big_m, lower_attained, upper_attained, degenerate: false }
}

/// How the realizer produced its matrix.
#[derive(Debug, Clone)]
pub enum RealizationPath {
    /// The uniform split already attains the target (degenerate range or
    /// attained upper endpoint).
    UniformSplit,
    /// Blend of a minimal thin sunflower with the uniform split (attained
    /// lower endpoint).
    EndpointBlend { epsilon: f64 },
    /// The two extremal sunflowers differ in a single row; the free weight
    /// of that row solves a linear system in closed form.
    ClosedForm {
        /// Index of the blended row.
        free_row: usize,
        /// Weight moved onto the minimal sunflower's edge of that row.
        free_weight: f64,
        /// Eigenvector of the interpolated one-out-edge matrix at the
        /// target, normalized to maximum component 1.
        eigenvector: Vec<f64>,
        /// Full-support blending weight of the returned matrix.
        epsilon: f64,
    },
    /// Bisection on the interpolation between the two sunflower blends.
    Bisection { lambda: f64, epsilon: f64, steps: usize },
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub matrix: NonnegMatrix,
    pub perron_root: f64,
    pub path: RealizationPath,
}

fn band(x: f64) -> f64 {
    tol::ENDPOINT_REJECT_REL * x.abs().max(1.0)
}

/// Construct a matrix with the prescribed auxiliary matrix whose Perron
/// root hits `target`. Rejects targets outside the achievable range,
/// naming the violated endpoint rule.
pub fn realize_perron_root(b: &RowUniformMatrix, target: f64) -> Result<Realization> {
    if !(target.is_finite() && target >= 0.0) {
        return Err(Error::TargetBelowMin { target, min: 0.0 });
    }
    let range = perron_root_range(b);
    let (m, big_m) = (range.lower, range.upper);
    if target > big_m + band(big_m) {
        return Err(Error::TargetAboveMax { target, max: big_m });
    }
    if target < m - band(m) {
        return Err(Error::TargetBelowMin { target, min: m });
    }
    let at_upper = (target - big_m).abs() <= band(big_m);
    let at_lower = (target - m).abs() <= band(m);

    let uniform = b.uniform_split();

    if range.degenerate {
        let rho = perron_root(&uniform);
        return finish(b, uniform, rho, target, RealizationPath::UniformSplit);
    }
    if at_upper {
        if !range.upper_attained {
            return Err(Error::UpperEndpointOpen { value: big_m });
        }
        let rho = perron_root(&uniform);
        return finish(b, uniform, rho, target, RealizationPath::UniformSplit);
    }
    if at_lower {
        if m == 0.0 {
            // a cycle exists (non-degenerate range), so 0 is unreachable
            return Err(Error::ZeroUnachievable);
        }
        if !range.lower_attained {
            return Err(Error::LowerEndpointOpen { value: m });
        }
        let thin = min_attaining_sunflower(b)?.to_matrix();
        let mut eps = 1e-2;
        for _ in 0..tol::REALIZE_MAX_HALVINGS {
            let cand = thin.blend(&uniform, eps);
            let rho = perron_root(&cand);
            if rho <= m + tol::REALIZE_INTERNAL_REL * m.max(1.0) {
                return finish(b, cand, rho, target, RealizationPath::EndpointBlend { epsilon: eps });
            }
            eps *= 0.5;
        }
        return Err(Error::IterationBudget { what: "lower endpoint blend" });
    }

    // interior target
    let s_min = min_attaining_sunflower(b)?;
    let s_max = max_attaining_sunflower(b)?;

    if let Some(r) = closed_form(b, &s_max.to_matrix(), &s_min.to_matrix(), s_max.out_edges(), s_min.out_edges(), target, &uniform) {
        return r;
    }

    // bracket with shrinking full-support blends, then bisect
    let (min_mat, max_mat) = (s_min.to_matrix(), s_max.to_matrix());
    let mut eps = 1e-2;
    let mut bracket = None;
    for _ in 0..tol::REALIZE_MAX_HALVINGS {
        let lo = min_mat.blend(&uniform, eps);
        let hi = max_mat.blend(&uniform, eps);
        if perron_root(&lo) < target && perron_root(&hi) > target {
            bracket = Some((lo, hi, eps));
            break;
        }
        eps *= 0.5;
    }
    let (lo_mat, hi_mat, eps) =
        bracket.ok_or(Error::IterationBudget { what: "realizer bracket" })?;
    let goal = tol::REALIZE_INTERNAL_REL * target.max(1.0);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best: Option<(f64, NonnegMatrix, f64)> = None;
    for step in 0..tol::REALIZE_MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let cand = lo_mat.blend(&hi_mat, mid);
        let rho = perron_root(&cand);
        let err = (rho - target).abs();
        if best.as_ref().map_or(true, |(e, _, _)| err < *e) {
            best = Some((err, cand.clone(), rho));
        }
        if err <= goal {
            return finish(
                b,
                cand,
                rho,
                target,
                RealizationPath::Bisection { lambda: mid, epsilon: eps, steps: step + 1 },
            );
        }
        if rho < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (err, cand, rho) = best.unwrap();
    if err <= tol::REALIZE_POST_REL * target.max(1.0) {
        let lambda = 0.5 * (lo + hi);
        return finish(
            b,
            cand,
            rho,
            target,
            RealizationPath::Bisection { lambda, epsilon: eps, steps: tol::REALIZE_MAX_BISECTIONS },
        );
    }
    Err(Error::IterationBudget { what: "realizer bisection" })
}

/// Postcondition gate: the auxiliary matrix must match exactly (support
/// equality, row values within tolerance) and the Perron root must sit
/// within the contractual tolerance of the target.
fn finish(
    b: &RowUniformMatrix,
    matrix: NonnegMatrix,
    rho: f64,
    target: f64,
    path: RealizationPath,
) -> Result<Realization> {
    let got = matrix.aux();
    if !got.approx_eq(b) {
        return Err(Error::VerificationFailed { what: "auxiliary matrix mismatch".into() });
    }
    if (rho - target).abs() > tol::REALIZE_POST_REL * target.max(1.0) {
        return Err(Error::VerificationFailed {
            what: format!("perron root {rho} misses target {target}"),
        });
    }
    Ok(Realization { matrix, perron_root: rho, path })
}

/// Fast path: the extremal sunflowers differ in exactly one row `t`. Every
/// other row of the interpolated matrix has a single entry, so the
/// eigen-system at the target is a chain system that pins the eigenvector
/// and the free weight `y` in closed form: row `t` carries `rv - y` on the
/// maximal sunflower's edge and `y` on the minimal one's.
#[allow(clippy::too_many_arguments)]
fn closed_form(
    b: &RowUniformMatrix,
    max_mat: &NonnegMatrix,
    min_mat: &NonnegMatrix,
    max_out: &[Option<usize>],
    min_out: &[Option<usize>],
    target: f64,
    uniform: &NonnegMatrix,
) -> Option<Result<Realization>> {
    let n = b.n();
    let diff: Vec<usize> = (0..n).filter(|&u| max_out[u] != min_out[u]).collect();
    if diff.len() != 1 {
        return None;
    }
    let t = diff[0];
    let (k, l) = (max_out[t]?, min_out[t]?);
    let _ = min_mat;

    // Chase x_u = (rv_u / target) x_{out(u)} toward x_t = 1. Chains ending
    // in an empty row or in a cycle avoiding t carry 0; a zero-avoiding
    // cycle whose mean equals the target leaves the system indeterminate
    // and the fast path bows out.
    let mut x = vec![f64::NAN; n];
    x[t] = 1.0;
    for start in 0..n {
        if !x[start].is_nan() {
            continue;
        }
        let mut chain: Vec<usize> = Vec::new();
        let mut pos: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut cur = start;
        let terminal: f64 = loop {
            if !x[cur].is_nan() {
                break x[cur];
            }
            if let Some(&p) = pos.get(&cur) {
                let cyc = &chain[p..];
                let mean = (cyc.iter().map(|&u| b.row_value(u).ln()).sum::<f64>()
                    / cyc.len() as f64)
                    .exp();
                if (mean - target).abs() <= 1e-12 * target.max(1.0) {
                    return None;
                }
                for &u in cyc {
                    x[u] = 0.0;
                }
                break 0.0;
            }
            pos.insert(cur, chain.len());
            chain.push(cur);
            match max_out[cur] {
                None => {
                    x[cur] = 0.0;
                    break 0.0;
                }
                Some(v) => cur = v,
            }
        };
        let mut val = terminal;
        for &u in chain.iter().rev() {
            if x[u].is_nan() {
                val = b.row_value(u) / target * val;
                x[u] = val;
            } else {
                val = x[u];
            }
        }
    }

    let rv = b.row_value(t);
    let denom = x[l] - x[k];
    if denom.abs() < 1e-14 * (x[l].abs() + x[k].abs()).max(1.0) {
        return None;
    }
    let y = (target - rv * x[k]) / denom;
    if !(y.is_finite() && y > rv * 1e-12 && y < rv * (1.0 - 1e-12)) {
        return None;
    }

    // interpolated one-out-edge matrix
    let mut interp = max_mat.clone();
    interp.set(t, k, rv - y);
    interp.set(t, l, y);
    if (perron_root(&interp) - target).abs() > tol::REALIZE_INTERNAL_REL * target.max(1.0) {
        return None;
    }

    let xmax = x.iter().cloned().fold(0.0, f64::max);
    let eigenvector: Vec<f64> = if xmax > 0.0 { x.iter().map(|v| v / xmax).collect() } else { x };

    // full-support wrap
    let mut eps = 1e-2;
    for _ in 0..tol::REALIZE_MAX_HALVINGS {
        let cand = interp.blend(uniform, eps);
        let rho = perron_root(&cand);
        if (rho - target).abs() <= tol::REALIZE_INTERNAL_REL * target.max(1.0) {
            return Some(finish(
                b,
                cand,
                rho,
                target,
                RealizationPath::ClosedForm { free_row: t, free_weight: y, eigenvector, epsilon: eps },
            ));
        }
        eps *= 0.5;
    }
    None
}
