//! Dense matrix types, the auxiliary-matrix map and the Hadamard inverse.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::FrobeniusForm;
use crate::tol;

/// Dense square matrix with nonnegative real entries, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct NonnegMatrix {
    n: usize,
    data: Vec<f64>,
}

impl NonnegMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        for (k, &v) in data.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidEntry { row: k / n + 1, col: k % n + 1, value: v });
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
        }
        Self::new(n, rows.concat())
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0);
        Self { n, data: vec![0.0; n * n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(v >= 0.0 && v.is_finite());
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Support of row `i`: columns with a nonzero entry.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j) != 0.0).collect()
    }

    /// All edges (i, j) of the associated digraph, row-major order.
    pub fn support_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) != 0.0 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Adjacency lists of the associated digraph.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row_support(i)).collect()
    }

    /// The auxiliary matrix: same support, every nonzero entry of row `i`
    /// replaced by the `i`-th row sum.
    pub fn aux(&self) -> RowUniformMatrix {
        let n = self.n;
        let mut support = vec![false; n * n];
        let mut row_value = vec![0.0; n];
        for i in 0..n {
            let mut any = false;
            for j in 0..n {
                if self.get(i, j) != 0.0 {
                    support[i * n + j] = true;
                    any = true;
                }
            }
            if any {
                row_value[i] = self.row_sum(i);
            }
        }
        RowUniformMatrix { n, support, row_value }
    }

    /// Entrywise reciprocal on the support, zero elsewhere. Involutive.
    pub fn hadamard_inverse(&self) -> NonnegMatrix {
        let data = self
            .data
            .iter()
            .map(|&v| if v > 0.0 { 1.0 / v } else { 0.0 })
            .collect();
        Self { n: self.n, data }
    }

    /// Frobenius normal form of the associated digraph.
    pub fn frobenius_form(&self) -> FrobeniusForm {
        FrobeniusForm::of(&self.adjacency(), |i| self.get(i, i) != 0.0)
    }

    /// `true` when the associated digraph is strongly connected
    /// (for n = 1: when the single entry is positive).
    pub fn is_irreducible(&self) -> bool {
        let fnf = self.frobenius_form();
        fnf.classes.len() == 1 && fnf.class_kind[0] == crate::graph::ClassKind::Nontrivial
    }

    /// Principal submatrix on `nodes` (order preserved).
    pub fn principal_submatrix(&self, nodes: &[usize]) -> NonnegMatrix {
        let m = nodes.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in nodes {
            for &j in nodes {
                data.push(self.get(i, j));
            }
        }
        NonnegMatrix { n: m, data }
    }

    /// Convex combination `(1 - t) * self + t * other`.
    pub fn blend(&self, other: &NonnegMatrix, t: f64) -> NonnegMatrix {
        assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (1.0 - t) * a + t * b)
            .collect();
        NonnegMatrix { n: self.n, data }
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: data.len() });
        }
        for (k, v) in data.iter().enumerate() {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidEntry { row: k / n + 1, col: k % n + 1, value: f64::NAN });
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
        }
        Self::new(n, rows.concat())
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0);
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    /// Entrywise modulus |A|.
    pub fn modulus(&self) -> NonnegMatrix {
        NonnegMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v.norm()).collect(),
        }
    }

    /// Auxiliary matrix of the entrywise modulus, `Aux(|A|)`.
    pub fn aux(&self) -> RowUniformMatrix {
        self.modulus().aux()
    }

    /// Multiply every entry by a scalar (a unit-modulus `w` rotates the
    /// spectrum and leaves the auxiliary matrix unchanged).
    pub fn scale(&self, w: Complex64) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|&v| v * w).collect() }
    }

    /// `A v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.n).map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }
}

/// A nonnegative matrix whose nonzero entries are constant within each row,
/// stored as a support mask plus one value per row. Exactly the image of the
/// auxiliary-matrix map; the invariant is structural rather than checked.
///
/// Rows with empty support carry no value (stored as 0).
#[derive(Debug, Clone)]
pub struct RowUniformMatrix {
    n: usize,
    support: Vec<bool>,
    row_value: Vec<f64>,
}

impl RowUniformMatrix {
    pub fn new(n: usize, support: Vec<bool>, row_value: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if support.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: support.len() });
        }
        if row_value.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row_value.len() });
        }
        for i in 0..n {
            let has = (0..n).any(|j| support[i * n + j]);
            let v = row_value[i];
            if has {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidRowValue { row: i + 1, value: v });
                }
            } else if v != 0.0 {
                return Err(Error::InvalidRowValue { row: i + 1, value: v });
            }
        }
        Ok(Self { n, support, row_value })
    }

    /// Validating constructor from a dense matrix: the nonzero entries of
    /// each row must agree within relative tolerance.
    pub fn from_dense(a: &NonnegMatrix) -> Result<Self> {
        let n = a.n();
        let mut support = vec![false; n * n];
        let mut row_value = vec![0.0; n];
        for i in 0..n {
            let mut value: Option<f64> = None;
            for j in 0..n {
                let v = a.get(i, j);
                if v != 0.0 {
                    support[i * n + j] = true;
                    match value {
                        None => value = Some(v),
                        Some(w) => {
                            if (v - w).abs() > tol::ROW_UNIFORM_REL * w.abs().max(v.abs()) {
                                return Err(Error::RowNotUniform { row: i + 1 });
                            }
                        }
                    }
                }
            }
            row_value[i] = value.unwrap_or(0.0);
        }
        Ok(Self { n, support, row_value })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_support(&self, i: usize, j: usize) -> bool {
        self.support[i * self.n + j]
    }

    /// Value of the nonzero entries of row `i` (0 when the row is empty).
    #[inline]
    pub fn row_value(&self, i: usize) -> f64 {
        self.row_value[i]
    }

    pub fn row_values(&self) -> &[f64] {
        &self.row_value
    }

    pub fn out_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.is_support(i, j)).count()
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.is_support(i, j)).collect()
    }

    pub fn support_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_support(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row_support(i)).collect()
    }

    /// The row uniform matrix itself as a dense matrix (entry = row value on
    /// the support).
    pub fn as_matrix(&self) -> NonnegMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if self.support[i * n + j] {
                    data[i * n + j] = self.row_value[i];
                }
            }
        }
        NonnegMatrix { n, data }
    }

    /// The canonical preimage under the auxiliary map: each nonzero entry of
    /// row `i` equals the row value divided by the row's support size.
    pub fn uniform_split(&self) -> NonnegMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            let deg = self.out_degree(i);
            if deg == 0 {
                continue;
            }
            let v = self.row_value[i] / deg as f64;
            for j in 0..n {
                if self.support[i * n + j] {
                    data[i * n + j] = v;
                }
            }
        }
        NonnegMatrix { n, data }
    }

    pub fn frobenius_form(&self) -> FrobeniusForm {
        FrobeniusForm::of(&self.adjacency(), |i| self.is_support(i, i))
    }

    pub fn is_irreducible(&self) -> bool {
        let fnf = self.frobenius_form();
        fnf.classes.len() == 1 && fnf.class_kind[0] == crate::graph::ClassKind::Nontrivial
    }

    /// Principal submatrix on `nodes`, keeping the original row values.
    pub fn principal_submatrix(&self, nodes: &[usize]) -> RowUniformMatrix {
        let m = nodes.len();
        let mut support = vec![false; m * m];
        let mut row_value = vec![0.0; m];
        for (a, &i) in nodes.iter().enumerate() {
            let mut any = false;
            for (b, &j) in nodes.iter().enumerate() {
                if self.is_support(i, j) {
                    support[a * m + b] = true;
                    any = true;
                }
            }
            if any {
                row_value[a] = self.row_value[i];
            }
        }
        RowUniformMatrix { n: m, support, row_value }
    }

    /// Copy with row `i`'s value multiplied by `factor > 0`.
    pub fn scale_row(&self, i: usize, factor: f64) -> RowUniformMatrix {
        assert!(factor > 0.0 && factor.is_finite());
        let mut out = self.clone();
        if out.out_degree(i) > 0 {
            out.row_value[i] *= factor;
        }
        out
    }

    /// Support equality plus row values within `ROW_UNIFORM_REL`.
    pub fn approx_eq(&self, other: &RowUniformMatrix) -> bool {
        self.n == other.n
            && self.support == other.support
            && self
                .row_value
                .iter()
                .zip(&other.row_value)
                .all(|(&a, &b)| (a - b).abs() <= tol::ROW_UNIFORM_REL * a.abs().max(b.abs()).max(1e-300))
    }

    /// Permute columns: result (i, j) = self (i, perm[j]).
    pub fn permute_columns(&self, perm: &[usize]) -> RowUniformMatrix {
        let n = self.n;
        let mut support = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                support[i * n + j] = self.is_support(i, perm[j]);
            }
        }
        RowUniformMatrix { n, support, row_value: self.row_value.clone() }
    }
}
