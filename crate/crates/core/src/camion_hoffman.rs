//! Regularity of the fixed-modulus class: all complex matrices whose
//! entrywise moduli equal a given nonnegative matrix. The class contains no
//! singular member exactly when, after permuting a maximal diagonal product
//! into place and normalizing it to ones, the spectral radius of the
//! off-diagonal part stays below one; the decision ships either a strict
//! diagonal-dominance scaling or an explicit singular witness.

use num_complex::Complex64;

use crate::cycles::{cycle_means, perron_root};
use crate::error::{Error, Result};
use crate::graph::ClassKind;
use crate::matrix::{ComplexMatrix, NonnegMatrix};
use crate::scaling::{sum_visualize, ScalingVector};
use crate::tol;

/// Shortest-augmenting-path solution of the min-cost assignment problem.
/// `f64::INFINITY` marks forbidden cells; `None` when no finite assignment
/// exists.
fn min_cost_assignment(cost: &[Vec<f64>]) -> Option<Vec<usize>> {
    let n = cost.len();
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1]; // row matched to column (1-based, 0 = none)
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if !delta.is_finite() {
                return None;
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut res = vec![usize::MAX; n];
    for j in 1..=n {
        if p[j] == 0 {
            return None;
        }
        res[p[j] - 1] = j - 1;
    }
    Some(res)
}

/// A permutation maximizing the generalized diagonal product, with the
/// product value.
#[derive(Debug, Clone)]
pub struct Assignment {
    /// `permutation[i]` = column assigned to row `i`.
    pub permutation: Vec<usize>,
    pub product: f64,
}

/// Maximize the generalized diagonal product over the support (assignment
/// in the log domain). `None` when every generalized diagonal product is 0.
/// Ties are broken toward the lexicographically smallest permutation for
/// dimensions up to 32.
pub fn max_product_assignment(a: &NonnegMatrix) -> Option<Assignment> {
    let n = a.n();
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = a.get(i, j);
                    if v > 0.0 {
                        -v.ln()
                    } else {
                        f64::INFINITY
                    }
                })
                .collect()
        })
        .collect();
    let mut sigma = min_cost_assignment(&cost)?;
    let log_sum = |s: &[usize]| -> f64 { (0..n).map(|i| -cost[i][s[i]]).sum() };
    let best = log_sum(&sigma);

    if n <= 32 {
        // lexicographic refinement: fix rows in order, preferring the
        // smallest column that still completes to an optimal assignment
        let eq = |x: f64| (x - best).abs() <= 1e-9 * best.abs().max(1.0);
        let mut fixed_cols: Vec<bool> = vec![false; n];
        for i in 0..n {
            let current = sigma[i];
            for j in 0..current {
                if fixed_cols[j] || cost[i][j] == f64::INFINITY {
                    continue;
                }
                // solve the subproblem on rows > i and the free columns
                let free: Vec<usize> =
                    (0..n).filter(|&c| !fixed_cols[c] && c != j).collect();
                let sub: Vec<Vec<f64>> =
                    (i + 1..n).map(|r| free.iter().map(|&c| cost[r][c]).collect()).collect();
                let prefix: f64 = (0..i).map(|r| -cost[r][sigma[r]]).sum::<f64>() - cost[i][j];
                if let Some(subsol) = min_cost_assignment(&sub) {
                    let sub_val: f64 =
                        (0..sub.len()).map(|r| -sub[r][subsol[r]]).sum();
                    if eq(prefix + sub_val) {
                        sigma[i] = j;
                        for (r, &c) in subsol.iter().enumerate() {
                            sigma[i + 1 + r] = free[c];
                        }
                        break;
                    }
                }
            }
            fixed_cols[sigma[i]] = true;
        }
    }

    let product: f64 = (0..n).map(|i| a.get(i, sigma[i])).product();
    Some(Assignment { permutation: sigma, product })
}

/// Decision on the fixed-modulus class of `a`.
#[derive(Debug, Clone)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// The test radius landed within the decision band around 1; the
    /// singular branch was taken.
    pub boundary: bool,
    /// Row-to-column assignment maximizing the diagonal product (absent
    /// when no nonzero product exists).
    pub permutation: Option<Vec<usize>>,
    /// Spectral radius of the normalized off-diagonal part.
    pub test_radius: Option<f64>,
    /// Scaling making the normalized matrix strictly diagonally dominant.
    pub certificate: Option<ScalingVector>,
    /// A singular member of the class.
    pub witness: Option<ComplexMatrix>,
}

/// Rows of `a` permuted so the maximal diagonal product sits on the
/// diagonal: row `k` of the result is row `inv_sigma(k)` of `a`.
fn permuted_rows(a: &NonnegMatrix, sigma: &[usize]) -> NonnegMatrix {
    let n = a.n();
    let mut inv = vec![0usize; n];
    for (i, &j) in sigma.iter().enumerate() {
        inv[j] = i;
    }
    let mut pa = NonnegMatrix::zeros(n);
    for k in 0..n {
        for j in 0..n {
            pa.set(k, j, a.get(inv[k], j));
        }
    }
    pa
}

/// Decide regularity of the class of all complex matrices with entrywise
/// moduli `a`. Always returns a verdict: a dominance certificate when
/// regular, a verified singular witness when not.
pub fn decide(a: &NonnegMatrix) -> RegularityVerdict {
    let Some(assignment) = max_product_assignment(a) else {
        // every generalized diagonal product is 0, so every member of the
        // class (in particular the real representative) is singular
        return RegularityVerdict {
            regular: false,
            boundary: false,
            permutation: None,
            test_radius: None,
            certificate: None,
            witness: Some(a.to_complex()),
        };
    };
    let sigma = &assignment.permutation;
    let pa = permuted_rows(a, sigma);
    let n = a.n();
    let d: Vec<f64> = (0..n).map(|j| 1.0 / pa.get(j, j)).collect();
    let mut off = NonnegMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off.set(i, j, pa.get(i, j) * d[j]);
            }
        }
    }
    let radius = perron_root(&off);
    let boundary = (radius - 1.0).abs() <= tol::DECISION_BAND;
    let regular = radius < 1.0 - tol::DECISION_BAND;
    if regular {
        let z = dominance_scaling(&off);
        RegularityVerdict {
            regular: true,
            boundary,
            permutation: Some(sigma.clone()),
            test_radius: Some(radius),
            certificate: Some(z),
            witness: None,
        }
    } else {
        let witness = singular_witness(a, sigma, &d)
            .expect("non-regular verdict must produce a singular witness");
        RegularityVerdict {
            regular: false,
            boundary,
            permutation: Some(sigma.clone()),
            test_radius: Some(radius),
            certificate: None,
            witness: Some(witness),
        }
    }
}

/// Positive `z` with `N z < z` componentwise for a nonnegative `n` with
/// spectral radius below one, built class-wise: Perron vectors handle the
/// diagonal blocks, and class multipliers grow by doubling until every
/// below-diagonal block contributes less than half the slack.
fn dominance_scaling(off: &NonnegMatrix) -> ScalingVector {
    let n = off.n();
    let fnf = off.frobenius_form();
    let mut base = vec![0.0; n];
    let mut class_rho = vec![0.0; fnf.class_count()];
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_kind[c] == ClassKind::Trivial {
            base[class[0]] = 1.0;
            class_rho[c] = 0.0;
        } else if class.len() == 1 {
            base[class[0]] = 1.0;
            class_rho[c] = off.get(class[0], class[0]);
        } else {
            let block = off.principal_submatrix(class);
            let v = crate::cycles::perron_vector(&block).expect("irreducible block");
            for (k, &node) in class.iter().enumerate() {
                base[node] = v[k];
            }
            class_rho[c] = perron_root(&block);
        }
    }
    let delta = class_rho.iter().map(|&r| 1.0 - r).fold(f64::INFINITY, f64::min);
    assert!(delta > 0.0, "dominance scaling needs test radius below one");

    let class_of = fnf.class_of();
    let mut alpha = vec![1.0; fnf.class_count()];
    let mut z = base.clone();
    for c in 0..fnf.class_count() {
        if c > 0 {
            alpha[c] = alpha[c - 1];
        }
        loop {
            let ok = fnf.classes[c].iter().all(|&i| {
                let cross: f64 = (0..n)
                    .filter(|&j| class_of[j] < c)
                    .map(|j| off.get(i, j) * z[j])
                    .sum();
                cross <= 0.5 * delta * alpha[c] * base[i]
            });
            if ok {
                break;
            }
            alpha[c] *= 2.0;
        }
        for &i in &fnf.classes[c] {
            z[i] = alpha[c] * base[i];
        }
    }
    let zmax = z.iter().cloned().fold(0.0, f64::max);
    let z: Vec<f64> = z.iter().map(|v| v / zmax).collect();
    // certificate margin must be strictly positive
    for i in 0..n {
        let dom: f64 = (0..n).map(|j| off.get(i, j) * z[j]).sum();
        assert!(dom < z[i], "dominance margin failed at row {i}");
    }
    ScalingVector::new(z).expect("positive scaling")
}

/// Close a polygon: complex numbers with prescribed moduli summing to zero.
/// Feasible exactly when no length exceeds the sum of the others.
///
/// The lengths are split greedily (descending, each into the currently
/// smallest of three groups), the three group sums close into a triangle by
/// the law of cosines, and every length inherits its group's phase.
pub fn close_polygon(lengths: &[f64]) -> Result<Vec<Complex64>> {
    for (i, &l) in lengths.iter().enumerate() {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::InvalidEntry { row: i + 1, col: 1, value: l });
        }
    }
    let total: f64 = lengths.iter().sum();
    if total == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); lengths.len()]);
    }
    for (i, &l) in lengths.iter().enumerate() {
        let rest = total - l;
        if l > rest * (1.0 + 1e-9) {
            return Err(Error::PolygonInfeasible { index: i + 1, length: l, rest });
        }
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by(|&i, &j| lengths[j].partial_cmp(&lengths[i]).unwrap().then(i.cmp(&j)));
    let mut group = vec![0usize; lengths.len()];
    let mut sums = [0.0f64; 3];
    for &i in &order {
        let g = (0..3).min_by(|&x, &y| sums[x].partial_cmp(&sums[y]).unwrap()).unwrap();
        group[i] = g;
        sums[g] += lengths[i];
    }
    let (s0, s1, s2) = (sums[0], sums[1], sums[2]);
    let phases: [Complex64; 3] = if s1 == 0.0 {
        // single nonzero group is impossible under the hypothesis
        [Complex64::new(1.0, 0.0); 3]
    } else {
        let cos_phi = if s0 > 0.0 && s1 > 0.0 {
            ((s2 * s2 - s0 * s0 - s1 * s1) / (2.0 * s0 * s1)).clamp(-1.0, 1.0)
        } else {
            -1.0
        };
        let phi = cos_phi.acos();
        let u0 = Complex64::new(1.0, 0.0);
        let u1 = Complex64::new(phi.cos(), phi.sin());
        let rest = -(u0 * s0 + u1 * s1);
        let u2 = if rest.norm() > 0.0 { rest / rest.norm() } else { Complex64::new(1.0, 0.0) };
        [u0, u1, u2]
    };
    Ok(lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| phases[group[i]] * l)
        .collect())
}

/// Singular complex matrix with the prescribed entrywise moduli, obtained
/// by closing every row into a zero sum. Needs a unit diagonal, every entry
/// at most 1 and off-diagonal row sums at least 1.
pub fn singular_row_matrix(e: &NonnegMatrix) -> Result<ComplexMatrix> {
    let n = e.n();
    let slack = 1e-9;
    for i in 0..n {
        if (e.get(i, i) - 1.0).abs() > slack {
            return Err(Error::RowMatrixHypothesis {
                row: i + 1,
                reason: format!("diagonal entry {} is not 1", e.get(i, i)),
            });
        }
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| e.get(i, j)).sum();
        if off < 1.0 - slack {
            return Err(Error::RowMatrixHypothesis {
                row: i + 1,
                reason: format!("off-diagonal sum {off} is below 1"),
            });
        }
        for j in 0..n {
            if e.get(i, j) > 1.0 + slack {
                return Err(Error::RowMatrixHypothesis {
                    row: i + 1,
                    reason: format!("entry ({}, {}) exceeds 1", i + 1, j + 1),
                });
            }
        }
    }
    let mut c = ComplexMatrix::zeros(n);
    for i in 0..n {
        let closed = close_polygon(e.row(i))?;
        for (j, v) in closed.into_iter().enumerate() {
            c.set(i, j, v);
        }
    }
    Ok(c)
}

/// Construct a singular member of the class of `a` from a permutation and a
/// unit-diagonal scaling with test radius at least 1: visualize the
/// extremal class at level 1, close its rows, conjugate back, embed, and
/// undo the permutation and scaling.
pub fn singular_witness(a: &NonnegMatrix, sigma: &[usize], d: &[f64]) -> Result<ComplexMatrix> {
    let n = a.n();
    if sigma.len() != n || d.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: sigma.len().min(d.len()) });
    }
    let pa = permuted_rows(a, sigma);
    let mut m = NonnegMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, pa.get(i, j) * d[j]);
        }
    }
    for i in 0..n {
        if (m.get(i, i) - 1.0).abs() > 1e-9 {
            return Err(Error::RowMatrixHypothesis {
                row: i + 1,
                reason: "scaled diagonal must be 1".into(),
            });
        }
    }
    let mut off = m.clone();
    for i in 0..n {
        off.set(i, i, 0.0);
    }
    let radius = perron_root(&off);
    if radius < 1.0 - tol::DECISION_BAND {
        return Err(Error::SpectralRadiusBelowOne { radius });
    }

    // the class attaining the radius carries the singular block
    let fnf = off.frobenius_form();
    let (class, _) = fnf
        .classes
        .iter()
        .map(|class| (class, perron_root(&off.principal_submatrix(class))))
        .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .expect("at least one class");
    let block = off.principal_submatrix(class);
    let block_mu = cycle_means(&block).mu;
    // Any cycle of the scaled matrix corresponds to a generalized diagonal
    // product, so a maximal assignment forces every cycle mean to at most 1;
    // a violation means the supplied permutation is not maximal.
    if block_mu > 1.0 + tol::CRITICAL_EDGE_TOL {
        return Err(Error::VerificationFailed {
            what: format!(
                "cycle mean {block_mu} exceeds 1: the permutation does not carry a \
                 maximal generalized diagonal product"
            ),
        });
    }

    let y = sum_visualize(&block, 1.0)?;
    let scaled = y.conjugate(&block);
    let m_cls = class.len();
    let mut e = scaled.clone();
    for i in 0..m_cls {
        e.set(i, i, 1.0);
    }
    let h = singular_row_matrix(&e)?;
    // conjugate back: rows gain y_i, columns lose y_j
    let mut g = m.to_complex();
    for (r, &i) in class.iter().enumerate() {
        for (s, &j) in class.iter().enumerate() {
            g.set(i, j, h.get(r, s) * y.get(r) / y.get(s));
        }
    }
    // undo the column scaling and the row permutation
    let mut inv = vec![0usize; n];
    for (i, &j) in sigma.iter().enumerate() {
        inv[j] = i;
    }
    let mut w = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            w.set(inv[i], j, g.get(i, j) / d[j]);
        }
    }
    // polish the moduli onto a exactly
    for i in 0..n {
        for j in 0..n {
            let v = w.get(i, j);
            let norm = v.norm();
            if norm > 0.0 {
                w.set(i, j, v / norm * a.get(i, j));
            }
        }
    }
    Ok(w)
}

/// Comparison matrix: the diagonal kept, off-diagonal entries negated.
pub fn comparison_matrix(a: &NonnegMatrix) -> Vec<Vec<f64>> {
    let n = a.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { a.get(i, j) } else { -a.get(i, j) })
                .collect()
        })
        .collect()
}

/// Reformulated test: after permuting the maximal diagonal product into
/// place, the comparison matrix must be a nonsingular M-matrix (positive
/// diagonal and the scaled off-diagonal spectral radius below one).
pub fn m_matrix_check(a: &NonnegMatrix) -> bool {
    let Some(assignment) = max_product_assignment(a) else {
        return false;
    };
    let pa = permuted_rows(a, &assignment.permutation);
    let n = a.n();
    if (0..n).any(|i| pa.get(i, i) <= 0.0) {
        return false;
    }
    let mut scaled = NonnegMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                scaled.set(i, j, pa.get(i, j) / pa.get(i, i));
            }
        }
    }
    perron_root(&scaled) < 1.0 - tol::DECISION_BAND
}

/// JSON shape of a verdict (matrices as nested `[re, im]` pairs).
pub fn verdict_to_json(v: &RegularityVerdict) -> serde_json::Value {
    serde_json::json!({
        "regular": v.regular,
        "boundary": v.boundary,
        "permutation": v.permutation.as_ref().map(|p| p.iter().map(|&c| c + 1).collect::<Vec<_>>()),
        "test_radius": v.test_radius,
        "certificate": v.certificate.as_ref().map(|z| z.values().to_vec()),
        "witness": v.witness.as_ref().map(crate::io::complex_to_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::m;
    use crate::linalg;

    fn witness_checks(a: &NonnegMatrix, w: &ComplexMatrix) {
        let n = a.n();
        for i in 0..n {
            for j in 0..n {
                let diff = (w.get(i, j).norm() - a.get(i, j)).abs();
                assert!(diff <= 1e-12 * a.get(i, j).max(1.0), "modulus mismatch at ({i},{j})");
            }
        }
        let det = linalg::complex_det(w);
        let scale = max_product_assignment(a).map(|s| s.product).unwrap_or(0.0).max(1.0);
        assert!(det.norm() <= 1e-8 * scale, "det {det} too large");
    }

    #[test]
    fn assignment_examples() {
        let a = m(&[&[2., 1.], &[1., 2.]]);
        let s = max_product_assignment(&a).unwrap();
        assert_eq!(s.permutation, vec![0, 1]);
        assert!((s.product - 4.0).abs() < 1e-12);

        let swap = m(&[&[0., 1.], &[1., 0.]]);
        let s = max_product_assignment(&swap).unwrap();
        assert_eq!(s.permutation, vec![1, 0]);
        assert!((s.product - 1.0).abs() < 1e-12);

        let none = m(&[&[0., 1.], &[0., 2.]]);
        assert!(max_product_assignment(&none).is_none());
    }

    #[test]
    fn assignment_tie_breaks_lexicographically() {
        let ones = m(&[&[1., 1.], &[1., 1.]]);
        let s = max_product_assignment(&ones).unwrap();
        assert_eq!(s.permutation, vec![0, 1]);
        let ones3 = m(&[&[1., 1., 1.], &[1., 1., 1.], &[1., 1., 1.]]);
        let s = max_product_assignment(&ones3).unwrap();
        assert_eq!(s.permutation, vec![0, 1, 2]);
    }

    #[test]
    fn decide_regular_anchor() {
        let a = m(&[&[2., 1.], &[1., 2.]]);
        let v = decide(&a);
        assert!(v.regular && !v.boundary);
        assert!((v.test_radius.unwrap() - 0.5).abs() < 1e-9);
        let z = v.certificate.unwrap();
        // already dominant: the identity scaling works and ours must too
        assert!((z.get(0) / z.get(1) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn decide_singular_anchor() {
        let a = m(&[&[1., 1.], &[1., 1.]]);
        let v = decide(&a);
        assert!(!v.regular && v.boundary);
        assert!((v.test_radius.unwrap() - 1.0).abs() < 1e-9);
        witness_checks(&a, &v.witness.unwrap());
    }

    #[test]
    fn decide_no_assignment() {
        let a = m(&[&[0., 1.], &[0., 2.]]);
        let v = decide(&a);
        assert!(!v.regular);
        assert!(v.permutation.is_none() && v.test_radius.is_none());
        let w = v.witness.unwrap();
        let det = linalg::complex_det(&w);
        assert!(det.norm() < 1e-14);
    }

    #[test]
    fn decide_uses_maximal_assignment() {
        // the off-diagonal product dominates, so the class is regular even
        // though the identity-diagonal normalization would have radius 2
        let a = m(&[&[1., 2.], &[2., 1.]]);
        let v = decide(&a);
        assert!(v.regular);
        assert_eq!(v.permutation.unwrap(), vec![1, 0]);
        assert!((v.test_radius.unwrap() - 0.5).abs() < 1e-9);
        // handing the non-maximal identity permutation to the witness
        // constructor is rejected with a diagnostic
        let err = singular_witness(&a, &[0, 1], &[1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed { .. }));
    }

    #[test]
    fn close_polygon_examples() {
        let c = close_polygon(&[1.0, 1.0]).unwrap();
        assert!((c[0] - Complex64::new(1., 0.)).norm() < 1e-12);
        assert!((c[1] - Complex64::new(-1., 0.)).norm() < 1e-12);

        let c = close_polygon(&[3.0, 4.0, 5.0]).unwrap();
        assert!((c[0].norm() - 3.0).abs() < 1e-12);
        assert!((c[1].norm() - 4.0).abs() < 1e-12);
        assert!((c[2].norm() - 5.0).abs() < 1e-12);
        let sum: Complex64 = c.iter().sum();
        assert!(sum.norm() < 1e-12 * 12.0);

        assert!(matches!(
            close_polygon(&[5.0, 1.0, 1.0]),
            Err(Error::PolygonInfeasible { .. })
        ));
    }

    #[test]
    fn singular_row_matrix_examples() {
        let e = m(&[&[1., 1.], &[1., 1.]]);
        let c = singular_row_matrix(&e).unwrap();
        for i in 0..2 {
            let s: Complex64 = (0..2).map(|j| c.get(i, j)).sum();
            assert!(s.norm() < 1e-12);
        }
        let e3 = m(&[&[1., 1., 1.], &[1., 1., 1.], &[1., 1., 1.]]);
        let c3 = singular_row_matrix(&e3).unwrap();
        assert!(linalg::complex_det(&c3).norm() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                assert!((c3.get(i, j).norm() - 1.0).abs() < 1e-12);
            }
        }
        assert!(singular_row_matrix(&m(&[&[1., 0.5], &[0.5, 1.]])).is_err());
    }

    #[test]
    fn witness_embedding_keeps_other_rows_real() {
        // the extremal class of the normalized off-diagonal part is 2x2;
        // row 3 stays real
        let a = m(&[&[1., 1., 0.], &[1., 1., 0.], &[0.5, 0.5, 1.]]);
        let v = decide(&a);
        assert!(!v.regular);
        let w = v.witness.unwrap();
        witness_checks(&a, &w);
        for j in 0..3 {
            assert!(w.get(2, j).im.abs() < 1e-15, "row 3 should stay real");
        }
    }

    #[test]
    fn m_matrix_examples() {
        assert!(m_matrix_check(&m(&[&[2., 1.], &[1., 2.]])));
        assert!(!m_matrix_check(&m(&[&[1., 1.], &[1., 1.]])));
        assert!(!m_matrix_check(&m(&[&[0., 1.], &[0., 2.]])));
    }

    #[test]
    fn comparison_matrix_shape() {
        let c = comparison_matrix(&m(&[&[2., 1.], &[3., 4.]]));
        assert_eq!(c, vec![vec![2., -1.], vec![-3., 4.]]);
    }
}
