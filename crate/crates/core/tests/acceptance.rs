//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_range::camion_hoffman::{decide, m_matrix_check, max_product_assignment};
use spectral_range::cycles::{cycle_means, perron_root};
use spectral_range::eigen_set::{
    diagonal_product_count, realize_eigenvalue, sigma_describe, sigma_irreducible, Boundary,
    DiagonalProductCount,
};
use spectral_range::error::{Error, ErrorKind};
use spectral_range::matrix::NonnegMatrix;
use spectral_range::oracle::{self, gen, OracleBudget};
use spectral_range::perron_range::{perron_root_range, realize_perron_root, RealizationPath};
use spectral_range::scaling::sum_visualize;
use spectral_range::sunflower::extremal_params;

const SQRT6: f64 = 2.449489742783178;

#[test]
fn criterion_01_worked_example_means_and_range() {
    let b = five_node_b();
    let r = cycle_means(&b.as_matrix());
    assert!(close_rel(r.mu, 4.0, 1e-12), "mu = {}", r.mu);
    assert!(close_rel(r.nu, SQRT6, 1e-12), "nu = {}", r.nu);

    let range = perron_root_range(&b);
    assert!(close_rel(range.lower, SQRT6, 1e-12));
    assert!(close_rel(range.upper, 4.0, 1e-12));
    assert!(!range.lower_attained && !range.upper_attained && !range.degenerate);
    println!("criterion 1 (worked example cycle means and open range): pass");
}

#[test]
fn criterion_02_worked_example_realization() {
    let b = five_node_b();
    let real = realize_perron_root(&b, 3.0).unwrap();
    let RealizationPath::ClosedForm { free_weight, eigenvector, .. } = &real.path else {
        panic!("expected the closed-form path, got {:?}", real.path);
    };
    assert!((free_weight - 1.4).abs() <= 1e-9, "free weight {free_weight}");

    let expected = [1.0, 3.0 / 8.0, 2.0 / 3.0, 3.0 / 8.0, 3.0 / 8.0];
    for (got, want) in eigenvector.iter().zip(&expected) {
        assert!((got - want).abs() <= 1e-9, "eigenvector {eigenvector:?}");
    }

    // the one-free-weight system: the recovered weight and eigenvector must
    // solve it with the target as eigenvalue
    let y = *free_weight;
    let system = m(&[
        &[0., 8., 0., 0., 0.],
        &[2. - y, 0., 0., 0., y],
        &[2., 0., 0., 0., 0.],
        &[0., 3., 0., 0., 0.],
        &[0., 3., 0., 0., 0.],
    ]);
    let x = eigenvector;
    for i in 0..5 {
        let lhs: f64 = (0..5).map(|j| system.get(i, j) * x[j]).sum();
        assert!((lhs - 3.0 * x[i]).abs() <= 1e-9, "row {i} residual {}", lhs - 3.0 * x[i]);
    }

    assert!((real.perron_root - 3.0).abs() <= 1e-6 * 3.0);
    assert!(real.matrix.aux().approx_eq(&b));
    println!("criterion 2 (worked example realization, free weight 1.4): pass");
}

#[test]
fn criterion_03_worked_reducible_descriptions() {
    let s = sigma_describe(&chained_classes_b());
    let d = s.disk.expect("disk expected");
    assert!(close_rel(d.radius, 4.0, 1e-12));
    assert_eq!(d.boundary, Boundary::Open);
    assert_eq!(s.circles.len(), 1);
    assert!(close_rel(s.circles[0], 5.0, 1e-12));

    let s = sigma_describe(&isolated_classes_c());
    let d = s.disk.expect("disk expected");
    assert!(close_rel(d.radius, 3.0, 1e-12));
    assert_eq!(d.boundary, Boundary::Closed);
    assert_eq!(s.circles.len(), 2);
    assert!(close_rel(s.circles[0], 4.0, 1e-12));
    assert!(close_rel(s.circles[1], 5.0, 1e-12));
    println!("criterion 3 (worked reducible modulus sets): pass");
}

#[test]
fn criterion_04_perron_range_soundness_sampling() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x04ac);
    for case in 0..20 {
        let n = 2 + (case % 5);
        let b = gen::random_row_uniform(n, 0.45, &mut rng);
        let range = perron_root_range(&b);
        let band_lo = 1e-9 * range.lower.max(1.0);
        let band_hi = 1e-9 * range.upper.max(1.0);
        for sample in 0..200 {
            let a = oracle::random_aux_preimage(&b, 1000 * case as u64 + sample);
            let rho = perron_root(&a);
            assert!(
                rho >= range.lower - band_lo && rho <= range.upper + band_hi,
                "case {case}: rho {rho} outside [{}, {}]",
                range.lower,
                range.upper
            );
            if !range.upper_attained {
                assert!(range.upper - rho > band_hi, "case {case}: unattained upper hit");
            }
            if !range.lower_attained {
                assert!(rho - range.lower > band_lo, "case {case}: unattained lower hit");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "soundness sampling took {elapsed:?}");
    println!("criterion 4 (range soundness over 20 x 200 samples, {elapsed:?}): pass");
}

#[test]
fn criterion_05_sum_visualization_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ac);
    for case in 0..20 {
        let n = 2 + (case % 5);
        let a = gen::random_irreducible(n, 0.4, &mut rng);
        let r = cycle_means(&a);
        let rho = perron_root(&a);
        for k in 0..5 {
            let level = r.mu + (rho - r.mu) * (k as f64 / 4.0);
            let x = sum_visualize(&a, level).unwrap_or_else(|e| {
                panic!("case {case} level {level}: {e}");
            });
            let c = x.conjugate(&a);
            for i in 0..n {
                let mut sum = 0.0;
                for j in 0..n {
                    assert!(
                        c.get(i, j) <= level * (1.0 + 1e-9),
                        "case {case}: entry above level"
                    );
                    sum += c.get(i, j);
                }
                assert!(sum >= level * (1.0 - 1e-9), "case {case}: row sum below level");
            }
        }
        let outside = r.mu - 0.01 * (rho - r.mu + 1.0);
        assert!(
            matches!(sum_visualize(&a, outside), Err(Error::LevelOutsideRange { .. })),
            "case {case}: level below the interval must be rejected"
        );
    }
    println!("criterion 5 (sum visualization on 20 x 5 levels plus rejections): pass");
}

#[test]
fn criterion_06_oracle_equivalence() {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x06ac);

    for case in 0..100 {
        let n = 2 + (case % 6);
        let a = gen::random_nonneg(n, 0.45, &mut rng);
        let fast = cycle_means(&a);
        let slow = oracle::enumerate_cycle_means(&a, &budget).unwrap();
        assert_eq!(fast.has_cycle, slow.has_cycle, "case {case}");
        assert!(close_rel(fast.mu, slow.mu, 1e-10), "case {case}: mu");
        assert!(close_rel(fast.nu, slow.nu, 1e-10), "case {case}: nu");
    }

    for case in 0..30 {
        let n = 2 + (case % 4);
        let b = gen::random_row_uniform(n, 0.5, &mut rng);
        let params = extremal_params(&b);
        let all = oracle::enumerate_sunflowers(&b, &budget).unwrap();
        let hi = all.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let lo = all.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        assert!(close_rel(params.upper, hi, 1e-10), "case {case}: upper");
        assert!(close_rel(params.lower, lo, 1e-10), "case {case}: lower");
    }

    for case in 0..100 {
        let n = 2 + (case % 6);
        let b = gen::random_row_uniform(n, 0.35, &mut rng);
        let products = oracle::enumerate_diagonal_products(&b, &budget).unwrap();
        let expected = match products.len() {
            0 => DiagonalProductCount::Zero,
            1 => DiagonalProductCount::One,
            _ => DiagonalProductCount::Many,
        };
        assert_eq!(diagonal_product_count(&b), expected, "case {case}");
    }
    println!("criterion 6 (oracle equivalence: means 100, sunflowers 30, products 100): pass");
}

#[test]
fn criterion_07_regularity_decisions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x07ac);
    let mut regular_count = 0;
    for case in 0..200 {
        let n = 2 + (case % 4);
        let mut a = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if rng.random::<f64>() < 0.75 {
                    a.set(i, j, rng.random_range(0.0..2.0));
                }
            }
        }
        let v = decide(&a);
        assert_eq!(v.regular, m_matrix_check(&a), "case {case}: equivalence");
        if v.regular {
            regular_count += 1;
            let z = v.certificate.expect("certificate when regular");
            let sigma = v.permutation.expect("permutation when regular");
            // strict dominance of the normalized matrix under z
            let mut inv = vec![0usize; n];
            for (i, &j) in sigma.iter().enumerate() {
                inv[j] = i;
            }
            for k in 0..n {
                let diag = a.get(inv[k], k);
                let row_sum: f64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| a.get(inv[k], j) / a.get(inv[j], j) * z.get(j))
                    .sum();
                assert!(diag > 0.0);
                assert!(z.get(k) - row_sum > 0.0, "case {case}: dominance margin");
            }
            assert!(v.witness.is_none());
        } else {
            let w = v.witness.expect("witness when not regular");
            for i in 0..n {
                for j in 0..n {
                    let diff = (w.get(i, j).norm() - a.get(i, j)).abs();
                    assert!(
                        diff <= 1e-12 * a.get(i, j).max(1.0),
                        "case {case}: modulus mismatch"
                    );
                }
            }
            let det = oracle::small_determinant(&w, &OracleBudget::default()).unwrap();
            let scale = max_product_assignment(&a).map(|s| s.product).unwrap_or(0.0).max(1.0);
            assert!(det.norm() <= 1e-8 * scale, "case {case}: det {} scale {scale}", det.norm());
            assert!(v.certificate.is_none());
        }
    }
    assert!(regular_count > 10 && regular_count < 190, "mix of verdicts expected");

    let anchor = decide(&m(&[&[1., 1.], &[1., 1.]]));
    assert!(!anchor.regular && anchor.witness.is_some());
    let anchor = decide(&m(&[&[2., 1.], &[1., 2.]]));
    assert!(anchor.regular && (anchor.test_radius.unwrap() - 0.5).abs() < 1e-9);
    println!("criterion 7 (200 regularity decisions with certificates/witnesses): pass");
}

#[test]
fn criterion_08_eigen_witness_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x08ac);
    let mut total = 0;
    let mut low_modulus = 0; // at or below the minimal cycle mean
    let mut off_axis = 0;
    let mut attempt = 0;
    while total < 50 {
        attempt += 1;
        assert!(attempt < 400, "witness generation stalled");
        let n = 2 + (attempt % 5);
        let b = gen::random_irreducible_row_uniform(n, 0.4, &mut rng);
        let set = sigma_irreducible(&b).unwrap();
        let r = cycle_means(&b.as_matrix());
        // choose a modulus inside the set
        let modulus = if let Some(d) = &set.disk {
            match attempt % 3 {
                0 => (0.5 * (r.nu + r.mu)).min(0.95 * d.radius), // range interior
                1 => 0.6 * r.nu,                                 // below the minimal mean
                _ => (0.999 * r.nu).min(0.9 * d.radius),         // near the minimal mean
            }
        } else {
            set.circles[0]
        };
        if !(modulus > 1e-6) {
            continue;
        }
        let angle = match attempt % 4 {
            0 => 0.0,
            1 => 0.9,
            2 => -2.1,
            _ => std::f64::consts::FRAC_PI_2,
        };
        let lambda = Complex64::from_polar(modulus, angle);
        if !set.contains(lambda) {
            continue;
        }
        let w = match realize_eigenvalue(&b, lambda) {
            Ok(w) => w,
            Err(e) => panic!("attempt {attempt}: {e} (lambda {lambda}, set {})", set.describe()),
        };
        // witness invariants, verified directly
        assert!(w.matrix.aux().approx_eq(&b), "attempt {attempt}: aux mismatch");
        let v = w.eigenvector.as_ref().expect("eigenvector expected");
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let av = w.matrix.apply(v);
        let worst = av
            .iter()
            .zip(v)
            .map(|(p, q)| (p - w.eigenvalue * q).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-8 * vmax, "attempt {attempt}: residual {worst}");
        assert!(
            (w.eigenvalue - lambda).norm() <= 1e-6 * lambda.norm().max(1.0),
            "attempt {attempt}: witnessed eigenvalue drifted"
        );
        total += 1;
        if modulus <= r.nu * (1.0 + 1e-12) {
            low_modulus += 1;
        }
        if angle != 0.0 {
            off_axis += 1;
        }
    }
    assert!(low_modulus >= 10, "only {low_modulus} low-modulus witnesses");
    assert!(off_axis >= 10, "only {off_axis} rotated witnesses");
    println!(
        "criterion 8 (50 eigen witnesses, {low_modulus} below the minimal mean, \
         {off_axis} off-axis): pass"
    );
}

#[test]
fn criterion_09_infeasible_requests_are_rejected() {
    let b = five_node_b();
    let c = isolated_classes_c();
    let uni = ru(&[&[0., 8.], &[2., 0.]]);
    let diag = ru(&[&[1., 0.], &[0., 2.]]);
    let mut count = 0;

    // beyond the maximal mean
    for target in [4.4, 5.0, 6.0, 100.0] {
        assert!(matches!(
            realize_perron_root(&b, target),
            Err(Error::TargetAboveMax { .. })
        ));
        count += 1;
    }
    for target in [0.5, 1.0, 2.0] {
        assert!(matches!(
            realize_perron_root(&b, target),
            Err(Error::TargetBelowMin { .. })
        ));
        count += 1;
    }
    for modulus in [4.0, 4.5, 10.0] {
        let err = realize_eigenvalue(&b, Complex64::from_polar(modulus, 0.3)).unwrap_err();
        assert!(matches!(err, Error::ModulusOutsideSet { .. }));
        assert_eq!(err.kind(), ErrorKind::Infeasible);
        count += 1;
    }

    // at an unattained endpoint
    for (target, upper) in [(4.0, true), (SQRT6, false)] {
        let err = realize_perron_root(&b, target).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Infeasible);
        match (upper, &err) {
            (true, Error::UpperEndpointOpen { .. }) => {}
            (false, Error::LowerEndpointOpen { .. }) => {}
            other => panic!("wrong endpoint error: {other:?}"),
        }
        count += 1;
    }
    // endpoint rejection also within the hairline band around the endpoint
    for target in [4.0 * (1.0 - 1e-13), SQRT6 * (1.0 + 1e-13)] {
        assert_eq!(realize_perron_root(&b, target).unwrap_err().kind(), ErrorKind::Infeasible);
        count += 1;
    }
    // circle radius of the isolated example is not approachable from inside
    for modulus in [3.5, 4.5] {
        let err = realize_eigenvalue_any_err(&c, modulus);
        assert_eq!(err.kind(), ErrorKind::Infeasible);
        count += 1;
    }

    // zero for supports with exactly one diagonal product
    for b_one in [&diag, &uni] {
        assert_eq!(diagonal_product_count(b_one), DiagonalProductCount::One);
        let err = realize_eigenvalue(b_one, Complex64::new(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::ZeroNotInSet));
        assert_eq!(err.kind(), ErrorKind::Infeasible);
        count += 1;
    }
    let tri = ru(&[&[1., 1., 0.], &[0., 2., 2.], &[0., 0., 3.]]);
    assert!(matches!(
        realize_eigenvalue(&tri, Complex64::new(0.0, 0.0)),
        Err(Error::ZeroNotInSet)
    ));
    count += 1;
    // perron-root zero for a cyclic support
    let cyc = ru(&[&[0., 1., 0.], &[1., 0., 0.], &[1., 1., 0.]]);
    assert!(matches!(realize_perron_root(&cyc, 0.0), Err(Error::TargetBelowMin { .. })));
    count += 1;
    // level outside the sum-visualization interval
    assert!(matches!(
        sum_visualize(&m(&[&[0., 8.], &[2., 0.]]), 3.0),
        Err(Error::LevelOutsideRange { .. })
    ));
    count += 1;

    assert!(count >= 20, "only {count} infeasible requests exercised");
    println!("criterion 9 ({count} infeasible requests rejected with named clauses): pass");
}

fn realize_eigenvalue_any_err(
    b: &spectral_range::matrix::RowUniformMatrix,
    modulus: f64,
) -> Error {
    spectral_range::eigen_set::realize_eigenvalue_any(b, Complex64::from_polar(modulus, 0.2))
        .unwrap_err()
}
