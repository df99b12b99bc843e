//! Independent brute-force reference implementations used by the test
//! suites and the diagnostics subcommand. Each oracle is a direct
//! transcription of a defining formula and shares no code with the
//! production algorithm it cross-checks. Budget-guarded so accidental
//! large inputs fail fast.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{ComplexMatrix, NonnegMatrix, RowUniformMatrix};
use crate::sunflower::SunflowerSubgraph;

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Dimension cap for the exhaustive enumerations.
    pub max_n: usize,
    /// Cap on the number of sunflower subgraphs visited.
    pub max_cycles: usize,
    /// Seed for the samplers.
    pub rng_seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_n: 7, max_cycles: 1_000_000, rng_seed: 0x5eed_cafe }
    }
}

fn check_n(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::BudgetExceeded { what, limit, got: n });
    }
    Ok(())
}

/// Every simple cycle, with its geometric mean evaluated directly as the
/// length-th root of the edge-weight product.
#[derive(Debug, Clone)]
pub struct CycleEnumeration {
    pub mu: f64,
    pub nu: f64,
    pub has_cycle: bool,
    pub cycles: Vec<(Vec<usize>, f64)>,
}

/// Exhaustive simple-cycle enumeration by depth-first search. Each cycle is
/// reported once, rooted at its smallest node.
pub fn enumerate_cycle_means(a: &NonnegMatrix, budget: &OracleBudget) -> Result<CycleEnumeration> {
    check_n("cycle enumeration", a.n(), budget.max_n)?;
    let n = a.n();
    let adj = a.adjacency();
    let mut cycles: Vec<(Vec<usize>, f64)> = Vec::new();

    fn dfs(
        a: &NonnegMatrix,
        adj: &[Vec<usize>],
        root: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let v = *path.last().unwrap();
        for &w in &adj[v] {
            if w == root {
                let prod: f64 = path
                    .iter()
                    .enumerate()
                    .map(|(k, &u)| a.get(u, path.get(k + 1).copied().unwrap_or(root)))
                    .product();
                let mean = prod.powf(1.0 / path.len() as f64);
                cycles.push((path.clone(), mean));
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                dfs(a, adj, root, path, on_path, cycles);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    for root in 0..n {
        let mut on_path = vec![false; n];
        on_path[root] = true;
        let mut path = vec![root];
        dfs(a, &adj, root, &mut path, &mut on_path, &mut cycles);
    }

    let has_cycle = !cycles.is_empty();
    let (mu, nu) = if has_cycle {
        (
            cycles.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
            cycles.iter().map(|c| c.1).fold(f64::INFINITY, f64::min),
        )
    } else {
        (0.0, 0.0)
    };
    Ok(CycleEnumeration { mu, nu, has_cycle, cycles })
}

/// All nonzero generalized diagonal products, one per permutation, by
/// walking all n! permutations.
pub fn enumerate_diagonal_products(
    b: &RowUniformMatrix,
    budget: &OracleBudget,
) -> Result<Vec<(Vec<usize>, f64)>> {
    check_n("diagonal product enumeration", b.n(), budget.max_n)?;
    let n = b.n();
    let dense = b.as_matrix();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_visit(&mut perm, 0, &mut |p| {
        let prod: f64 = (0..n).map(|i| dense.get(i, p[i])).product();
        if prod != 0.0 {
            out.push((p.to_vec(), prod));
        }
    });
    Ok(out)
}

fn permute_visit(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_visit(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Every sunflower subgraph with the full node set (Cartesian product of
/// per-node out-edge choices), with its maximal cycle mean.
pub fn enumerate_sunflowers(
    b: &RowUniformMatrix,
    budget: &OracleBudget,
) -> Result<Vec<(SunflowerSubgraph, f64)>> {
    let n = b.n();
    let choices: Vec<Vec<usize>> = (0..n).map(|i| b.row_support(i)).collect();
    let mut count: usize = 1;
    for c in &choices {
        if !c.is_empty() {
            count = count.saturating_mul(c.len());
        }
        if count > budget.max_cycles {
            return Err(Error::BudgetExceeded {
                what: "sunflower enumeration",
                limit: budget.max_cycles,
                got: count,
            });
        }
    }
    let mut odometer = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let out_edge: Vec<Option<usize>> =
            (0..n).map(|i| choices[i].get(odometer[i]).copied()).collect();
        let weight: Vec<f64> =
            (0..n).map(|i| if out_edge[i].is_some() { b.row_value(i) } else { 0.0 }).collect();
        let s = SunflowerSubgraph::new(out_edge, weight);
        let mu = s.max_cycle_mean();
        out.push((s, mu));
        // advance
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            if choices[pos].is_empty() {
                pos += 1;
                continue;
            }
            odometer[pos] += 1;
            if odometer[pos] < choices[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// Random matrix with the prescribed auxiliary matrix: per row, independent
/// uniform(0.05, 1) weights on the support renormalized to the row value.
pub fn random_aux_preimage(b: &RowUniformMatrix, seed: u64) -> NonnegMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = b.n();
    let mut a = NonnegMatrix::zeros(n);
    for i in 0..n {
        let support = b.row_support(i);
        if support.is_empty() {
            continue;
        }
        let weights: Vec<f64> = support.iter().map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let scale = b.row_value(i) / total;
        for (&j, &w) in support.iter().zip(&weights) {
            a.set(i, j, w * scale);
        }
    }
    a
}

/// LU determinant of a small complex matrix (dimension at most 12).
pub fn small_determinant(c: &ComplexMatrix, _budget: &OracleBudget) -> Result<Complex64> {
    check_n("determinant", c.n(), 12)?;
    Ok(linalg::complex_det(c))
}

/// All eigenvalues of a small complex matrix: characteristic polynomial by
/// the trace recurrence, roots by simultaneous (Durand-Kerner) iteration
/// with Newton polishing.
pub fn eigenvalues_small(c: &ComplexMatrix, _budget: &OracleBudget) -> Result<Vec<Complex64>> {
    check_n("eigenvalue solve", c.n(), 8)?;
    let n = c.n();
    // p(z) = z^n + coeff[n-1] z^(n-1) + ... + coeff[0]
    let mut coeff = vec![Complex64::new(0.0, 0.0); n];
    let mut bmat = ComplexMatrix::zeros(n);
    for i in 0..n {
        bmat.set(i, i, Complex64::new(1.0, 0.0));
    }
    for k in 1..=n {
        // A * B_{k-1}
        let mut ab = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    s += c.get(i, l) * bmat.get(l, j);
                }
                ab.set(i, j, s);
            }
        }
        let trace: Complex64 = (0..n).map(|i| ab.get(i, i)).sum();
        let ck = -trace / k as f64;
        coeff[n - k] = ck;
        bmat = ab;
        for i in 0..n {
            let v = bmat.get(i, i) + ck;
            bmat.set(i, i, v);
        }
    }

    let eval = |z: Complex64| -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for k in (0..n).rev() {
            p = p * z + coeff[k];
        }
        p
    };
    let eval_deriv = |z: Complex64| -> Complex64 {
        let mut p = Complex64::new(n as f64, 0.0);
        for k in (1..n).rev() {
            p = p * z + coeff[k] * k as f64;
        }
        p
    };

    let radius = 1.0 + coeff.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius)
        .collect();
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    for r in &mut roots {
        for _ in 0..5 {
            let d = eval_deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    Ok(roots)
}

/// Convenience seeded generators for the randomized suites.
pub mod gen {
    use super::*;

    /// Random nonnegative matrix with the given density of nonzero entries.
    pub fn random_nonneg(n: usize, density: f64, rng: &mut ChaCha8Rng) -> NonnegMatrix {
        let mut a = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if rng.random::<f64>() < density {
                    a.set(i, j, rng.random_range(0.1..2.0));
                }
            }
        }
        a
    }

    /// Random row uniform matrix; every row is given at least one support
    /// entry with probability `keep_rows`.
    pub fn random_row_uniform(n: usize, density: f64, rng: &mut ChaCha8Rng) -> RowUniformMatrix {
        let mut support = vec![false; n * n];
        let mut row_value = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                support[i * n + j] = rng.random::<f64>() < density;
            }
            if !(0..n).any(|j| support[i * n + j]) {
                let j = rng.random_range(0..n);
                support[i * n + j] = true;
            }
            row_value[i] = rng.random_range(0.5..8.0);
        }
        RowUniformMatrix::new(n, support, row_value).unwrap()
    }

    /// Random irreducible nonnegative matrix: a random Hamiltonian cycle
    /// guarantees strong connectivity, extra edges add density.
    pub fn random_irreducible(n: usize, density: f64, rng: &mut ChaCha8Rng) -> NonnegMatrix {
        let mut a = random_nonneg(n, density, rng);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        for k in 0..n {
            let (u, v) = (order[k], order[(k + 1) % n]);
            if n > 1 && u == v {
                continue;
            }
            if a.get(u, v) == 0.0 {
                a.set(u, v, rng.random_range(0.1..2.0));
            }
        }
        if n == 1 && a.get(0, 0) == 0.0 {
            a.set(0, 0, rng.random_range(0.1..2.0));
        }
        a
    }

    /// Random irreducible row uniform matrix.
    pub fn random_irreducible_row_uniform(
        n: usize,
        density: f64,
        rng: &mut ChaCha8Rng,
    ) -> RowUniformMatrix {
        let skeleton = random_irreducible(n, density, rng);
        let n = skeleton.n();
        let mut support = vec![false; n * n];
        let mut row_value = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                support[i * n + j] = skeleton.get(i, j) != 0.0;
            }
            row_value[i] = rng.random_range(0.5..8.0);
        }
        RowUniformMatrix::new(n, support, row_value).unwrap()
    }

    /// Random complex matrix with entries in the unit box times `scale`.
    pub fn random_complex(n: usize, density: f64, scale: f64, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if rng.random::<f64>() < density {
                    c.set(
                        i,
                        j,
                        Complex64::new(
                            rng.random_range(-1.0..1.0) * scale,
                            rng.random_range(-1.0..1.0) * scale,
                        ),
                    );
                }
            }
        }
        c
    }
}
