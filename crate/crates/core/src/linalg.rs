//! Small dense LU kernels used for determinants, linear solves and
//! eigen-witness verification. Partial pivoting throughout.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

/// Determinant via LU with partial pivoting.
pub(crate) fn complex_det(a: &ComplexMatrix) -> Complex64 {
    let n = a.n();
    let mut m: Vec<Complex64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].norm();
        for r in col + 1..n {
            let v = m[r * n + col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m[col * n + j];
                m[r * n + j] -= f * v;
            }
        }
    }
    det
}

/// Solve `A x = b`; `None` when a pivot vanishes.
pub(crate) fn complex_solve(a: &ComplexMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = a.n();
    assert_eq!(b.len(), n);
    let mut m: Vec<Complex64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].norm();
        for r in col + 1..n {
            let v = m[r * n + col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            rhs.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m[col * n + j];
                m[r * n + j] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= m[i * n + j] * x[j];
        }
        x[i] = s / m[i * n + i];
    }
    Some(x)
}

/// Solve a real system `A x = b` (row-major `a`, length n*n).
pub(crate) fn real_solve(n: usize, a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        for r in col + 1..n {
            let v = m[r * n + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            rhs.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[r * n + j] -= f * m[col * n + j];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= m[i * n + j] * x[j];
        }
        x[i] = s / m[i * n + i];
    }
    Some(x)
}
