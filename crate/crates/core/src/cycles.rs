//! Geometric cycle means, critical graphs, the max-plus Kleene star, and
//! Perron root / Perron vector computation.
//!
//! Cycle means are computed per strongly connected component with Karp's
//! minimum mean-cycle algorithm in the log domain; the geometric mean is the
//! exponential of the arithmetic mean of logs. Absent edges are `-inf`.

use crate::error::{Error, Result};
use crate::graph::ClassKind;
use crate::linalg;
use crate::matrix::NonnegMatrix;
use crate::tol;

/// Maximal (`mu`) and minimal (`nu`) geometric cycle means of the support.
/// Both are 0 by convention when the support is acyclic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleMeanReport {
    pub mu: f64,
    pub nu: f64,
    pub has_cycle: bool,
}

/// Which extremal cycle mean a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Cycles attaining the maximal mean (critical graph).
    Max,
    /// Cycles attaining the minimal mean (anticritical graph).
    Min,
}

/// Subgraph of all nodes and edges lying on cycles that attain the extremal
/// cycle mean. A node is strict when every edge leaving it is in the graph.
#[derive(Debug, Clone)]
pub struct CriticalGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub strict_nodes: Vec<usize>,
}

/// Karp's minimum mean cycle on the subgraph induced by `nodes`, with edge
/// weights `w(u, v)` (`None` = absent). Returns the minimal mean, or `None`
/// when the induced subgraph has no cycle.
fn karp_min_mean(nodes: &[usize], w: impl Fn(usize, usize) -> Option<f64>) -> Option<f64> {
    let m = nodes.len();
    let idx_of = {
        let mut map = std::collections::HashMap::new();
        for (k, &v) in nodes.iter().enumerate() {
            map.insert(v, k);
        }
        map
    };
    // local edges
    let mut edges: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for (ui, &u) in nodes.iter().enumerate() {
        for &v in nodes.iter() {
            if let Some(wt) = w(u, v) {
                edges[ui].push((idx_of[&v], wt));
            }
        }
    }
    // d[k][v]: min weight of a walk of exactly k edges from the source.
    let inf = f64::INFINITY;
    let mut d = vec![vec![inf; m]; m + 1];
    d[0][0] = 0.0;
    for k in 1..=m {
        for u in 0..m {
            if d[k - 1][u] == inf {
                continue;
            }
            for &(v, wt) in &edges[u] {
                let cand = d[k - 1][u] + wt;
                if cand < d[k][v] {
                    d[k][v] = cand;
                }
            }
        }
    }
    let mut best: Option<f64> = None;
    for v in 0..m {
        if d[m][v] == inf {
            continue;
        }
        let mut worst = f64::NEG_INFINITY;
        for k in 0..m {
            if d[k][v] == inf {
                continue;
            }
            let mean = (d[m][v] - d[k][v]) / (m - k) as f64;
            if mean > worst {
                worst = mean;
            }
        }
        if worst > f64::NEG_INFINITY {
            best = Some(match best {
                None => worst,
                Some(b) => b.min(worst),
            });
        }
    }
    best
}

/// Maximal and minimal geometric cycle means over all cycles of the support.
pub fn cycle_means(a: &NonnegMatrix) -> CycleMeanReport {
    let fnf = a.frobenius_form();
    let mut mu = f64::NEG_INFINITY;
    let mut nu = f64::INFINITY;
    let mut has_cycle = false;
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_kind[c] == ClassKind::Trivial {
            continue;
        }
        has_cycle = true;
        if class.len() == 1 {
            let v = a.get(class[0], class[0]);
            mu = mu.max(v);
            nu = nu.min(v);
            continue;
        }
        let log_w = |u: usize, v: usize| {
            let x = a.get(u, v);
            (x > 0.0).then(|| x.ln())
        };
        let lo = karp_min_mean(class, log_w).expect("nontrivial class has a cycle");
        let hi = -karp_min_mean(class, |u, v| log_w(u, v).map(|x| -x))
            .expect("nontrivial class has a cycle");
        mu = mu.max(hi.exp());
        nu = nu.min(lo.exp());
    }
    if has_cycle {
        CycleMeanReport { mu, nu, has_cycle }
    } else {
        CycleMeanReport { mu: 0.0, nu: 0.0, has_cycle }
    }
}

/// Max-plus Kleene star `I (+) g (+) g^2 (+) ...`: entry (i, j) is the
/// maximal weight of a path from i to j, the empty path included on the
/// diagonal. Absent edges are `f64::NEG_INFINITY`.
///
/// Fails when a cycle has positive weight (the closure diverges).
pub fn max_plus_star(g: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = g.len();
    for row in g {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    let mut d: Vec<Vec<f64>> = g.to_vec();
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik == f64::NEG_INFINITY {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k][j];
                if cand > d[i][j] {
                    d[i][j] = cand;
                }
            }
        }
    }
    for (i, row) in d.iter().enumerate() {
        if row[i] > tol::POSITIVE_CYCLE_TOL {
            return Err(Error::PositiveCycle { weight: row[i] });
        }
    }
    for (i, row) in d.iter_mut().enumerate() {
        if row[i] < 0.0 {
            row[i] = 0.0;
        }
    }
    Ok(d)
}

/// Log-domain matrix of `a` normalized so that cycles attaining the chosen
/// extremal mean have weight 0 and every cycle has weight <= 0.
pub(crate) fn normalized_log(a: &NonnegMatrix, level: Level) -> Result<(f64, Vec<Vec<f64>>)> {
    let report = cycle_means(a);
    if !report.has_cycle {
        return Err(Error::Acyclic);
    }
    let n = a.n();
    let mean = match level {
        Level::Max => report.mu,
        Level::Min => report.nu,
    };
    let lm = mean.ln();
    let mut g = vec![vec![f64::NEG_INFINITY; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v > 0.0 {
                g[i][j] = match level {
                    Level::Max => v.ln() - lm,
                    Level::Min => lm - v.ln(),
                };
            }
        }
    }
    Ok((mean, g))
}

/// Nodes and edges on cycles attaining the extremal mean, with the subset of
/// nodes all of whose outgoing edges attain it.
pub fn critical_graph(a: &NonnegMatrix, level: Level) -> Result<CriticalGraph> {
    let (_, g) = normalized_log(a, level)?;
    let star = max_plus_star(&g)?;
    let n = a.n();
    let mut edges = Vec::new();
    let mut in_graph = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if g[i][j] == f64::NEG_INFINITY {
                continue;
            }
            // best cycle through (i, j)
            if g[i][j] + star[j][i] >= -tol::CRITICAL_EDGE_TOL {
                edges.push((i, j));
                in_graph[i] = true;
                in_graph[j] = true;
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::Acyclic);
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| in_graph[v]).collect();
    let edge_set: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
    let strict_nodes = nodes
        .iter()
        .copied()
        .filter(|&v| {
            let out = a.row_support(v);
            !out.is_empty() && out.iter().all(|&w| edge_set.contains(&(v, w)))
        })
        .collect();
    Ok(CriticalGraph { nodes, edges, strict_nodes })
}

impl CriticalGraph {
    /// Walk the graph deterministically (smallest start node, smallest
    /// target) until a node repeats; the portion from the first repeat is a
    /// cycle, and every cycle of a critical graph attains the extremal mean.
    pub fn extract_cycle(&self) -> Vec<usize> {
        let mut succ: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for &(u, v) in self.edges.iter().rev() {
            succ.insert(u, v); // reversed iteration keeps the smallest v per u
        }
        let start = *self.nodes.iter().min().expect("critical graph has nodes");
        let mut seen_at: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut path = vec![start];
        seen_at.insert(start, 0);
        loop {
            let cur = *path.last().unwrap();
            let next = succ[&cur];
            if let Some(&pos) = seen_at.get(&next) {
                return path[pos..].to_vec();
            }
            seen_at.insert(next, path.len());
            path.push(next);
        }
    }
}

/// Geometric mean of a cycle (node list, consecutive edges plus the wrap).
pub fn cycle_geometric_mean(a: &NonnegMatrix, cycle: &[usize]) -> f64 {
    let len = cycle.len();
    let mut sum = 0.0;
    for k in 0..len {
        sum += a.get(cycle[k], cycle[(k + 1) % len]).ln();
    }
    (sum / len as f64).exp()
}

/// Power iteration with Collatz-Wielandt bounds on `block + I` (the shift
/// keeps imprimitive blocks converging). Returns (rho, vector), the vector
/// normalized to maximum component 1. The bounds bracket the Perron root at
/// every step, so the midpoint after the iteration cap is still a valid
/// estimate with error below half the final gap.
fn power_shifted(block: &NonnegMatrix) -> (f64, Vec<f64>) {
    let m = block.n();
    let mut x = vec![1.0; m];
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    for _ in 0..tol::PERRON_MAX_ITER {
        let mut y = vec![0.0; m];
        for i in 0..m {
            let mut s = x[i]; // identity shift
            for j in 0..m {
                s += block.get(i, j) * x[j];
            }
            y[i] = s;
        }
        lo = f64::INFINITY;
        hi = 0.0;
        for i in 0..m {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let max = y.iter().cloned().fold(0.0, f64::max);
        for v in &mut y {
            *v /= max;
        }
        x = y;
        if hi - lo <= tol::PERRON_GAP_REL * hi {
            break;
        }
    }
    (0.5 * (lo + hi) - 1.0, x)
}

/// Perron root (spectral radius): the maximum over the classes of the
/// Frobenius normal form of the class spectral radius.
pub fn perron_root(a: &NonnegMatrix) -> f64 {
    let fnf = a.frobenius_form();
    let mut rho: f64 = 0.0;
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_kind[c] == ClassKind::Trivial {
            continue;
        }
        if class.len() == 1 {
            rho = rho.max(a.get(class[0], class[0]));
            continue;
        }
        let block = a.principal_submatrix(class);
        rho = rho.max(power_shifted(&block).0);
    }
    rho
}

/// Strictly positive eigenvector for the Perron root, normalized to maximum
/// component 1.
///
/// Exists for irreducible matrices, and more generally exactly when every
/// final class attains the spectral radius and every transient class stays
/// below it; anything else is rejected.
pub fn perron_vector(a: &NonnegMatrix) -> Result<Vec<f64>> {
    let n = a.n();
    let fnf = a.frobenius_form();

    // Zero matrix: A x = 0 x for any x, take the ones vector.
    if (0..n).all(|i| (0..n).all(|j| a.get(i, j) == 0.0)) {
        return Ok(vec![1.0; n]);
    }

    let rho = perron_root(a);
    let class_rho: Vec<f64> = fnf
        .classes
        .iter()
        .enumerate()
        .map(|(c, class)| {
            if fnf.class_kind[c] == ClassKind::Trivial {
                0.0
            } else if class.len() == 1 {
                a.get(class[0], class[0])
            } else {
                power_shifted(&a.principal_submatrix(class)).0
            }
        })
        .collect();
    if rho <= 0.0 {
        return Err(Error::NoPositiveEigenvector);
    }
    for c in 0..fnf.class_count() {
        let is_final = fnf.class_access[c] == crate::graph::ClassAccess::Final;
        if is_final {
            if !tol::close_rel(class_rho[c], rho, tol::PERRON_GAP_REL * 10.0) {
                return Err(Error::NoPositiveEigenvector);
            }
        } else if class_rho[c] >= rho * (1.0 - 1e-9) {
            return Err(Error::NoPositiveEigenvector);
        }
    }

    let mut x = vec![0.0; n];
    // Classes are emitted final-first, so every out-neighbour of a later
    // class already has its component set.
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_access[c] == crate::graph::ClassAccess::Final {
            if class.len() == 1 {
                x[class[0]] = 1.0;
            } else {
                let v = power_shifted(&a.principal_submatrix(class)).1;
                for (k, &node) in class.iter().enumerate() {
                    x[node] = v[k];
                }
            }
        } else {
            // Solve (rho I - A_CC) x_C = A_{C,out} x_out.
            let m = class.len();
            let mut mat = vec![0.0; m * m];
            let mut rhs = vec![0.0; m];
            let in_class: std::collections::HashSet<usize> = class.iter().copied().collect();
            for (r, &i) in class.iter().enumerate() {
                for (s, &j) in class.iter().enumerate() {
                    mat[r * m + s] = (if r == s { rho } else { 0.0 }) - a.get(i, j);
                }
                for j in 0..n {
                    if !in_class.contains(&j) && a.get(i, j) != 0.0 {
                        rhs[r] += a.get(i, j) * x[j];
                    }
                }
            }
            let sol = linalg::real_solve(m, &mat, &rhs)
                .ok_or(Error::VerificationFailed { what: "transient class solve".into() })?;
            for (r, &i) in class.iter().enumerate() {
                x[i] = sol[r];
            }
        }
    }

    let max = x.iter().cloned().fold(0.0, f64::max);
    for v in &mut x {
        *v /= max;
    }
    if x.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::NoPositiveEigenvector);
    }
    // residual check
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            s += a.get(i, j) * x[j];
        }
        worst = worst.max((s - rho * x[i]).abs());
    }
    if worst > tol::PERRON_RESIDUAL_REL * rho.max(1.0) {
        return Err(Error::IterationBudget { what: "perron vector residual" });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{five_node_b, m, two_cycle};

    #[test]
    fn two_cycle_means() {
        let r = cycle_means(&two_cycle());
        assert!(r.has_cycle);
        assert!((r.mu - 4.0).abs() < 1e-12);
        assert!((r.nu - 4.0).abs() < 1e-12);
    }

    #[test]
    fn five_node_means() {
        let r = cycle_means(&five_node_b().as_matrix());
        assert!((r.mu - 4.0).abs() < 4.0 * 1e-12);
        assert!((r.nu - 6f64.sqrt()).abs() < 6f64.sqrt() * 1e-12);
    }

    #[test]
    fn acyclic_means_are_zero() {
        let a = m(&[&[0., 1., 2.], &[0., 0., 3.], &[0., 0., 0.]]);
        let r = cycle_means(&a);
        assert!(!r.has_cycle);
        assert_eq!((r.mu, r.nu), (0.0, 0.0));
    }

    #[test]
    fn star_of_normalized_two_cycle() {
        let l2 = 2f64.ln();
        let g = vec![
            vec![f64::NEG_INFINITY, l2],
            vec![-l2, f64::NEG_INFINITY],
        ];
        let star = max_plus_star(&g).unwrap();
        assert_eq!(star[0][0], 0.0);
        assert_eq!(star[1][1], 0.0);
        assert!((star[0][1] - l2).abs() < 1e-15);
        assert!((star[1][0] + l2).abs() < 1e-15);
    }

    #[test]
    fn star_of_empty_graph_is_identity() {
        let ninf = f64::NEG_INFINITY;
        let g = vec![vec![ninf; 3], vec![ninf; 3], vec![ninf; 3]];
        let star = max_plus_star(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(star[i][j], 0.0);
                } else {
                    assert_eq!(star[i][j], ninf);
                }
            }
        }
    }

    #[test]
    fn star_rejects_positive_cycle() {
        let ninf = f64::NEG_INFINITY;
        let g = vec![vec![ninf, 0.05], vec![0.05, ninf]];
        assert!(matches!(max_plus_star(&g), Err(Error::PositiveCycle { .. })));
    }

    #[test]
    fn critical_graph_of_five_node() {
        let b = five_node_b().as_matrix();
        let c = critical_graph(&b, Level::Max).unwrap();
        // cycles 1-2 and 1-3 both have mean 4
        let mut e = c.edges.clone();
        e.sort_unstable();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 0), (2, 0)]);
        assert_eq!(c.nodes, vec![0, 1, 2]);
        assert_eq!(c.strict_nodes, vec![2]);

        let ac = critical_graph(&b, Level::Min).unwrap();
        let mut e = ac.edges.clone();
        e.sort_unstable();
        assert_eq!(e, vec![(1, 3), (1, 4), (3, 1), (4, 1)]);
        assert_eq!(ac.nodes, vec![1, 3, 4]);
        assert_eq!(ac.strict_nodes, vec![4]);
    }

    #[test]
    fn whole_graph_critical_when_single_cycle() {
        let c = critical_graph(&two_cycle(), Level::Max).unwrap();
        assert_eq!(c.edges.len(), 2);
        assert_eq!(c.strict_nodes, vec![0, 1]);
    }

    #[test]
    fn critical_graph_rejects_acyclic() {
        let a = m(&[&[0., 1.], &[0., 0.]]);
        assert!(matches!(critical_graph(&a, Level::Max), Err(Error::Acyclic)));
    }

    #[test]
    fn extracted_cycle_attains_mean() {
        let b = five_node_b().as_matrix();
        let r = cycle_means(&b);
        let cyc = critical_graph(&b, Level::Max).unwrap().extract_cycle();
        assert!((cycle_geometric_mean(&b, &cyc) - r.mu).abs() < 1e-9);
        let cyc = critical_graph(&b, Level::Min).unwrap().extract_cycle();
        assert!((cycle_geometric_mean(&b, &cyc) - r.nu).abs() < 1e-9);
    }

    #[test]
    fn perron_root_examples() {
        assert!((perron_root(&two_cycle()) - 4.0).abs() < 1e-11);
        let nilpotent = m(&[&[0., 1., 1.], &[0., 0., 1.], &[0., 0., 0.]]);
        assert_eq!(perron_root(&nilpotent), 0.0);
        // one-out-edge-per-node matrices built on the five node example
        let a1 = m(&[
            &[0., 8., 0., 0., 0.],
            &[2., 0., 0., 0., 0.],
            &[2., 0., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
        ]);
        assert!((perron_root(&a1) - 4.0).abs() < 1e-11);
        let a2 = m(&[
            &[0., 8., 0., 0., 0.],
            &[0., 0., 0., 0., 2.],
            &[2., 0., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
        ]);
        assert!((perron_root(&a2) - 6f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn perron_vector_two_cycle() {
        let x = perron_vector(&two_cycle()).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn perron_vector_doubly_stochastic() {
        let a = m(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let x = perron_vector(&a).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn perron_vector_of_interpolated_example() {
        // One-parameter family on the five node example at the free weight
        // 7/5: spectral radius 3 with eigenvector (1, 3/8, 2/3, 3/8, 3/8).
        let y = 7.0 / 5.0;
        let a = m(&[
            &[0., 8., 0., 0., 0.],
            &[2. - y, 0., 0., 0., y],
            &[2., 0., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
            &[0., 3., 0., 0., 0.],
        ]);
        let x = perron_vector(&a).unwrap();
        let expected = [1.0, 3.0 / 8.0, 2.0 / 3.0, 3.0 / 8.0, 3.0 / 8.0];
        for (xi, ei) in x.iter().zip(&expected) {
            assert!((xi - ei).abs() < 1e-9, "{x:?}");
        }
    }

    #[test]
    fn perron_vector_rejects_wrong_reducible() {
        // Final class {2} has rho 1 but transient class {1} has rho 2.
        let a = m(&[&[2., 1.], &[0., 1.]]);
        assert!(matches!(perron_vector(&a), Err(Error::NoPositiveEigenvector)));
    }

    #[test]
    fn single_entry_matrices() {
        assert_eq!(perron_root(&m(&[&[5.]])), 5.0);
        assert_eq!(perron_vector(&m(&[&[5.]])).unwrap(), vec![1.0]);
        assert!(perron_vector(&m(&[&[0.]])).is_ok()); // zero matrix convention
    }
}
