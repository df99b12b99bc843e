//! Randomized invariant suites, seeded for reproducibility. Each test pins
//! one of the library's structural guarantees against an independent route.

mod common;

use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_range::camion_hoffman::{close_polygon, decide};
use spectral_range::cycles::{
    critical_graph, cycle_means, perron_root, perron_vector, Level,
};
use spectral_range::eigen_set::{realize_eigenvalue, sigma_describe, zero_in_sigma};
use spectral_range::graph::ClassAccess;
use spectral_range::matrix::RowUniformMatrix;
use spectral_range::oracle::{self, gen, OracleBudget};
use spectral_range::perron_range::{perron_root_range, realize_perron_root};
use spectral_range::scaling::{strict_visualizing_vector, ScalingVector};
use spectral_range::sunflower::simple_sunflower;

#[test]
fn frobenius_form_structure_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let budget = OracleBudget::default();
    for case in 0..30 {
        let n = 2 + (case % 6);
        let a = gen::random_nonneg(n, 0.35, &mut rng);
        let fnf = a.frobenius_form();
        // classes partition the nodes
        let mut seen = vec![false; n];
        for class in &fnf.classes {
            for &v in class {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        // block lower triangular under the permutation
        let class_of = fnf.class_of();
        for (k, &i) in fnf.permutation.iter().enumerate() {
            for (l, &j) in fnf.permutation.iter().enumerate() {
                if a.get(i, j) != 0.0 && class_of[i] != class_of[j] {
                    assert!(k > l, "case {case}: entry above the block diagonal");
                }
            }
        }
        // each class is strongly connected: every pair connected by a path
        // inside the class (checked by brute-force reachability)
        for class in &fnf.classes {
            if class.len() < 2 {
                continue;
            }
            let inside: std::collections::HashSet<usize> = class.iter().copied().collect();
            for &s in class {
                let mut reach = std::collections::HashSet::from([s]);
                let mut queue = vec![s];
                while let Some(u) = queue.pop() {
                    for j in a.row_support(u) {
                        if inside.contains(&j) && reach.insert(j) {
                            queue.push(j);
                        }
                    }
                }
                assert_eq!(reach.len(), class.len(), "case {case}: class not strongly connected");
            }
        }
        // final classes have no out-edges
        for (c, class) in fnf.classes.iter().enumerate() {
            if fnf.class_access[c] == ClassAccess::Final {
                for &v in class {
                    for j in a.row_support(v) {
                        assert_eq!(class_of[j], c, "case {case}: edge leaves a final class");
                    }
                }
            }
        }
        let _ = budget;
    }
}

#[test]
fn frobenius_and_aux_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..60 {
        let n = 1 + (case % 6);
        let a = gen::random_nonneg(n, 0.5, &mut rng);
        let rho = perron_root(&a);
        // row-sum bounds
        let sums: Vec<f64> = (0..n).map(|i| a.row_sum(i)).collect();
        let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sums.iter().cloned().fold(0.0, f64::max);
        assert!(rho >= lo - 1e-9 * hi.max(1.0) && rho <= hi + 1e-9 * hi.max(1.0), "case {case}");
        // cycle-mean lower bound
        let own = cycle_means(&a);
        assert!(own.mu <= rho + 1e-9 * rho.max(1.0), "case {case}: mu above rho");
        // the auxiliary matrix brackets the Perron root
        let aux = a.aux().as_matrix();
        let r = cycle_means(&aux);
        assert!(r.nu <= rho + 1e-9 * rho.max(1.0), "case {case}");
        assert!(rho <= r.mu + 1e-9 * r.mu.max(1.0), "case {case}");
    }
    // strict on both sides for irreducible matrices with distinct means
    for case in 0..30 {
        let n = 2 + (case % 5);
        let a = gen::random_irreducible(n, 0.4, &mut rng);
        let aux = a.aux().as_matrix();
        let r = cycle_means(&aux);
        if close_rel(r.mu, r.nu, 1e-9) {
            continue;
        }
        let rho = perron_root(&a);
        assert!(r.nu < rho && rho < r.mu, "case {case}: {} {rho} {}", r.nu, r.mu);
    }
}

#[test]
fn hadamard_inverse_swaps_extremal_means() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in 0..40 {
        let n = 2 + (case % 5);
        let a = gen::random_nonneg(n, 0.45, &mut rng);
        let r = cycle_means(&a);
        if !r.has_cycle {
            continue;
        }
        let h = cycle_means(&a.hadamard_inverse());
        assert!(close_rel(h.mu, 1.0 / r.nu, 1e-10), "case {case}");
        assert!(close_rel(h.nu, 1.0 / r.mu, 1e-10), "case {case}");
    }
}

#[test]
fn critical_edges_lie_on_enumerated_extremal_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let budget = OracleBudget::default();
    for case in 0..40 {
        let n = 2 + (case % 5);
        let a = gen::random_nonneg(n, 0.5, &mut rng);
        let slow = oracle::enumerate_cycle_means(&a, &budget).unwrap();
        if !slow.has_cycle {
            continue;
        }
        for (level, target) in [(Level::Max, slow.mu), (Level::Min, slow.nu)] {
            let mut on_extremal: std::collections::HashSet<(usize, usize)> =
                std::collections::HashSet::new();
            for (nodes, mean) in &slow.cycles {
                if close_rel(*mean, target, 1e-9) {
                    for k in 0..nodes.len() {
                        on_extremal.insert((nodes[k], nodes[(k + 1) % nodes.len()]));
                    }
                }
            }
            let fast = critical_graph(&a, level).unwrap();
            let got: std::collections::HashSet<(usize, usize)> =
                fast.edges.iter().copied().collect();
            assert_eq!(got, on_extremal, "case {case} {level:?}");
        }
    }
}

#[test]
fn diagonal_similarity_preserves_spectral_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for case in 0..30 {
        let n = 2 + (case % 5);
        let a = gen::random_nonneg(n, 0.5, &mut rng);
        let x = ScalingVector::new((0..n).map(|_| rng.random_range(0.2..5.0)).collect()).unwrap();
        let c = x.conjugate(&a);
        let (ra, rc) = (cycle_means(&a), cycle_means(&c));
        assert!(close_rel(ra.mu, rc.mu, 1e-9), "case {case}");
        assert!(close_rel(ra.nu, rc.nu, 1e-9), "case {case}");
        assert!(close_rel(perron_root(&a), perron_root(&c), 1e-9), "case {case}");
        for i in 0..n {
            for j in 0..n {
                assert_eq!(a.get(i, j) != 0.0, c.get(i, j) != 0.0, "support changed");
            }
        }
    }
}

#[test]
fn strict_visualization_tolerance_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for case in 0..30 {
        let n = 2 + (case % 5);
        let a = gen::random_irreducible(n, 0.45, &mut rng);
        let r = cycle_means(&a);
        let x = strict_visualizing_vector(&a).unwrap();
        let crit = critical_graph(&a, Level::Max).unwrap();
        let critical: std::collections::HashSet<(usize, usize)> =
            crit.edges.iter().copied().collect();
        for (i, j) in a.support_edges() {
            let ratio = a.get(i, j) * x.get(j) / (r.mu * x.get(i));
            if critical.contains(&(i, j)) {
                assert!((ratio - 1.0).abs() <= 1e-9, "case {case}: critical edge not tight");
            } else {
                assert!(ratio < 1.0 - 1e-7, "case {case}: slack edge too tight ({ratio})");
            }
        }
    }
}

#[test]
fn sunflowers_carry_their_maximal_mean_as_perron_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let budget = OracleBudget::default();
    let mut done = 0;
    let mut attempt = 0;
    while done < 50 {
        attempt += 1;
        assert!(attempt < 300);
        let n = 2 + (attempt % 6);
        let host = gen::random_irreducible(n, 0.4, &mut rng);
        let cycles = oracle::enumerate_cycle_means(&host, &budget).unwrap();
        if cycles.cycles.is_empty() {
            continue;
        }
        let pick = attempt % cycles.cycles.len();
        let s = simple_sunflower(&host, &cycles.cycles[pick].0).unwrap();
        s.validate_against(&host).unwrap();
        let carried = s.to_matrix();
        assert!(
            close_rel(perron_root(&carried), s.max_cycle_mean(), 1e-10),
            "attempt {attempt}"
        );
        done += 1;
    }
}

#[test]
fn realizer_round_trips_on_random_ranges() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut done = 0;
    let mut attempt = 0;
    while done < 10 {
        attempt += 1;
        assert!(attempt < 200);
        let n = 2 + (attempt % 5);
        let b = gen::random_row_uniform(n, 0.45, &mut rng);
        let range = perron_root_range(&b);
        if range.degenerate || range.upper - range.lower < 1e-3 {
            continue;
        }
        for k in 1..=5 {
            let target = range.lower + (range.upper - range.lower) * k as f64 / 6.0;
            let real = realize_perron_root(&b, target)
                .unwrap_or_else(|e| panic!("attempt {attempt} target {target}: {e}"));
            assert!(real.matrix.aux().approx_eq(&b), "attempt {attempt}: aux");
            assert!(
                (real.perron_root - target).abs() <= 1e-6 * target.max(1.0),
                "attempt {attempt}: root"
            );
        }
        done += 1;
    }
}

#[test]
fn irreducible_range_matches_the_two_case_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for case in 0..30 {
        let n = 2 + (case % 5);
        let b = gen::random_irreducible_row_uniform(n, 0.4, &mut rng);
        let r = cycle_means(&b.as_matrix());
        let range = perron_root_range(&b);
        if close_rel(r.mu, r.nu, 1e-10) {
            assert!(range.degenerate, "case {case}");
            assert!(range.lower_attained && range.upper_attained);
        } else {
            assert!(!range.degenerate && !range.lower_attained && !range.upper_attained);
            assert!(close_rel(range.lower, r.nu, 1e-12));
            assert!(close_rel(range.upper, r.mu, 1e-12));
        }
    }
}

#[test]
fn witness_rotation_invariance() {
    let b = five_node_b();
    let w = realize_eigenvalue(&b, Complex64::new(3.0, 0.0)).unwrap();
    for angle in [0.4, 1.7, -2.8] {
        let phase = Complex64::from_polar(1.0, angle);
        let rotated = w.matrix.scale(phase);
        assert!(rotated.aux().approx_eq(&b), "rotation must keep the auxiliary matrix");
        let v = w.eigenvector.as_ref().unwrap();
        let av = rotated.apply(v);
        let lam = w.eigenvalue * phase;
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let worst =
            av.iter().zip(v).map(|(p, q)| (p - lam * q).norm()).fold(0.0, f64::max);
        assert!(worst <= 1e-8 * vmax, "rotated residual {worst}");
    }
}

#[test]
fn eigenvalue_moduli_dominated_by_perron_root_of_modulus() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let budget = OracleBudget::default();
    for case in 0..100 {
        let n = 2 + (case % 4);
        let c = gen::random_complex(n, 0.7, 1.5, &mut rng);
        let rho = perron_root(&c.modulus());
        let eigs = oracle::eigenvalues_small(&c, &budget).unwrap();
        for lam in eigs {
            assert!(lam.norm() <= rho + 1e-8, "case {case}: {} > {rho}", lam.norm());
        }
    }
}

#[test]
fn sampled_moduli_stay_inside_the_described_set() {
    let b = chained_classes_b();
    let set = sigma_describe(&b);
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for sample in 0..500 {
        let real = oracle::random_aux_preimage(&b, 50_000 + sample);
        // random unit phases on every entry keep the auxiliary matrix
        let mut c = real.to_complex();
        for i in 0..5 {
            for j in 0..5 {
                if real.get(i, j) != 0.0 {
                    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..6.283185));
                    c.set(i, j, c.get(i, j) * phase);
                }
            }
        }
        for lam in oracle::eigenvalues_small(&c, &budget).unwrap() {
            let r = lam.norm();
            if r <= 1e-6 {
                continue;
            }
            let inside_disk = r < 4.0 + 1e-6;
            let on_circle = (r - 5.0).abs() <= 1e-6;
            assert!(inside_disk || on_circle, "sample {sample}: modulus {r} escaped the set");
        }
    }
    assert!(set.zero_included);
}

#[test]
fn zero_witnesses_verify_for_random_supports() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for case in 0..40 {
        let n = 2 + (case % 5);
        let b = gen::random_row_uniform(n, 0.4, &mut rng);
        let z = zero_in_sigma(&b);
        if let Some(w) = z.witness {
            assert!(z.member);
            w.verify(&b).unwrap_or_else(|e| panic!("case {case}: {e}"));
        }
    }
}

#[test]
fn regular_verdicts_exclude_one_from_the_scaled_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    let mut attempt = 0;
    while checked < 50 {
        attempt += 1;
        assert!(attempt < 500);
        let n = 2 + (attempt % 4);
        let mut a = spectral_range::matrix::NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if rng.random::<f64>() < 0.8 {
                    a.set(i, j, rng.random_range(0.0..2.0));
                }
            }
        }
        let v = decide(&a);
        if !v.regular {
            continue;
        }
        // fold the dominance certificate into the scaling: the resulting
        // unit-diagonal matrix has off-diagonal row sums below 1, so 1 must
        // lie outside the achievable eigenvalue set of its auxiliary matrix
        let sigma = v.permutation.unwrap();
        let z = v.certificate.unwrap();
        let mut inv = vec![0usize; n];
        for (i, &j) in sigma.iter().enumerate() {
            inv[j] = i;
        }
        let mut off = spectral_range::matrix::NonnegMatrix::zeros(n);
        for k in 0..n {
            for j in 0..n {
                if k != j {
                    off.set(k, j, a.get(inv[k], j) / a.get(inv[j], j) * z.get(j) / z.get(k));
                }
            }
        }
        let set = sigma_describe(&off.aux());
        assert!(
            !set.contains_modulus(1.0),
            "attempt {attempt}: 1 inside {}",
            set.describe()
        );
        checked += 1;
    }
}

#[test]
fn polygons_close_for_random_feasible_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut done = 0;
    while done < 1000 {
        let k = 2 + (done % 9);
        let lengths: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..3.0)).collect();
        let total: f64 = lengths.iter().sum();
        if lengths.iter().any(|&l| l > total - l) {
            continue;
        }
        let closed = close_polygon(&lengths).unwrap();
        for (c, &l) in closed.iter().zip(&lengths) {
            assert!((c.norm() - l).abs() <= 1e-12 * l.max(1e-300), "modulus changed");
        }
        let sum: Complex64 = closed.iter().sum();
        assert!(sum.norm() <= 1e-12 * total, "sum {} for total {total}", sum.norm());
        done += 1;
    }
}

#[test]
fn oracle_samples_are_seed_deterministic() {
    let b = five_node_b();
    let a1 = oracle::random_aux_preimage(&b, 99);
    let a2 = oracle::random_aux_preimage(&b, 99);
    assert_eq!(a1.rows(), a2.rows());
    let a3 = oracle::random_aux_preimage(&b, 100);
    assert_ne!(a1.rows(), a3.rows());
}

#[test]
fn perron_vector_exists_for_positive_eigenvector_classes() {
    // reducible with the final class dominating: positive eigenvector
    let a = m(&[
        &[0., 8., 0., 0., 0.],
        &[0.6, 0., 0., 0., 1.4],
        &[2., 0., 0., 0., 0.],
        &[0., 3., 0., 0., 0.],
        &[0., 3., 0., 0., 0.],
    ]);
    let x = perron_vector(&a).unwrap();
    assert!(x.iter().all(|&v| v > 0.0));
    // transient class attaining the radius: no positive eigenvector
    let bad = m(&[&[2., 1.], &[0., 1.]]);
    assert!(perron_vector(&bad).is_err());
}
