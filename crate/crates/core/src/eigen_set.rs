//! Achievable eigenvalues of complex matrices with a prescribed auxiliary
//! matrix. The set is rotation invariant (multiplying a matrix by a unit
//! scalar rotates its spectrum and keeps the auxiliary matrix), so it is
//! described by a set of moduli: a punctured disk with open or closed
//! boundary, finitely many circles, and a zero flag.

use num_complex::Complex64;

use crate::cycles::{cycle_means, perron_vector};
use crate::error::{Error, Result};
use crate::graph::{ClassAccess, ClassKind};
use crate::linalg;
use crate::matrix::{ComplexMatrix, RowUniformMatrix};
use crate::perron_range::realize_perron_root;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub radius: f64,
    pub boundary: Boundary,
}

/// Rotation-invariant set of eigenvalue moduli in canonical form: circles
/// lie strictly outside the disk (a circle on a closed boundary is absorbed,
/// a circle on an open boundary closes it).
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusSet {
    pub disk: Option<Disk>,
    pub circles: Vec<f64>,
    pub zero_included: bool,
}

impl ModulusSet {
    pub fn empty() -> Self {
        Self { disk: None, circles: Vec::new(), zero_included: false }
    }

    /// Union of raw parts, canonicalized.
    pub fn from_parts(disks: &[Disk], circles: &[f64], zero_included: bool) -> Self {
        let mut disk: Option<Disk> = None;
        for d in disks {
            disk = Some(match disk {
                None => *d,
                Some(best) => {
                    if tol::close_rel(d.radius, best.radius, tol::RADIUS_EQ_REL) {
                        let boundary = if best.boundary == Boundary::Closed
                            || d.boundary == Boundary::Closed
                        {
                            Boundary::Closed
                        } else {
                            Boundary::Open
                        };
                        Disk { radius: best.radius.max(d.radius), boundary }
                    } else if d.radius > best.radius {
                        *d
                    } else {
                        best
                    }
                }
            });
        }
        let mut kept: Vec<f64> = Vec::new();
        let mut sorted = circles.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for r in sorted {
            if let Some(d) = &mut disk {
                if tol::close_rel(r, d.radius, tol::RADIUS_EQ_REL) {
                    // a circle on the boundary closes the disk
                    d.boundary = Boundary::Closed;
                    continue;
                }
                if r < d.radius {
                    continue;
                }
            }
            if kept.last().map_or(false, |&p| tol::close_rel(p, r, tol::RADIUS_EQ_REL)) {
                continue;
            }
            kept.push(r);
        }
        Self { disk, circles: kept, zero_included }
    }

    /// Membership of a nonzero modulus.
    pub fn contains_modulus(&self, r: f64) -> bool {
        if !(r > 0.0) {
            return false;
        }
        if let Some(d) = &self.disk {
            if r < d.radius || (d.boundary == Boundary::Closed && tol::close_rel(r, d.radius, tol::RADIUS_EQ_REL)) {
                return true;
            }
        }
        self.circles.iter().any(|&c| tol::close_rel(r, c, tol::RADIUS_EQ_REL))
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        if lambda.norm() == 0.0 {
            return self.zero_included;
        }
        self.contains_modulus(lambda.norm())
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.zero_included {
            parts.push("{0}".to_string());
        }
        if let Some(d) = &self.disk {
            let close = if d.boundary == Boundary::Closed { ']' } else { ')' };
            parts.push(format!("(0, {}{close}", d.radius));
        }
        for c in &self.circles {
            parts.push(format!("{{|s| = {c}}}"));
        }
        if parts.is_empty() {
            parts.push("{} (empty)".to_string());
        }
        parts.join(" u ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "disk": self.disk.map(|d| serde_json::json!({
                "radius": d.radius,
                "boundary": if d.boundary == Boundary::Closed { "closed" } else { "open" },
            })),
            "circles": self.circles,
            "zero": self.zero_included,
        })
    }
}

/// Number of nonzero generalized diagonal products, classified as 0, 1 or
/// more.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalProductCount {
    Zero,
    One,
    Many,
}

/// Kuhn augmenting-path matching on the support's bipartite row/column
/// graph; deterministic scan order.
fn max_matching(adj: &[Vec<usize>], banned: Option<(usize, usize)>) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut row_of_col: Vec<Option<usize>> = vec![None; n];

    fn augment(
        r: usize,
        adj: &[Vec<usize>],
        banned: Option<(usize, usize)>,
        seen: &mut [bool],
        col_of_row: &mut [Option<usize>],
        row_of_col: &mut [Option<usize>],
    ) -> bool {
        for &c in &adj[r] {
            if banned == Some((r, c)) || seen[c] {
                continue;
            }
            seen[c] = true;
            let free = match row_of_col[c] {
                None => true,
                Some(r2) => augment(r2, adj, banned, seen, col_of_row, row_of_col),
            };
            if free {
                col_of_row[r] = Some(c);
                row_of_col[c] = Some(r);
                return true;
            }
        }
        false
    }

    for r in 0..n {
        let mut seen = vec![false; n];
        augment(r, adj, banned, &mut seen, &mut col_of_row, &mut row_of_col);
    }
    col_of_row
}

fn perfect_matching(b: &RowUniformMatrix, banned: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let adj = b.adjacency();
    let m = max_matching(&adj, banned);
    m.into_iter().collect()
}

/// Classify the number of nonzero generalized diagonal products: a product
/// corresponds to a perfect matching on the support; a second one exists
/// exactly when deleting some matched edge leaves the support matchable.
pub fn diagonal_product_count(b: &RowUniformMatrix) -> DiagonalProductCount {
    let Some(matching) = perfect_matching(b, None) else {
        return DiagonalProductCount::Zero;
    };
    for (r, &c) in matching.iter().enumerate() {
        if perfect_matching(b, Some((r, c))).is_some() {
            return DiagonalProductCount::Many;
        }
    }
    DiagonalProductCount::One
}

/// A constructed matrix in the class together with a verified eigenpair.
#[derive(Debug, Clone)]
pub struct EigenWitness {
    pub matrix: ComplexMatrix,
    pub eigenvalue: Complex64,
    pub eigenvector: Option<Vec<Complex64>>,
}

/// Scale reference for determinant residuals: the common value of every
/// nonzero generalized diagonal product (the product of the row values),
/// floored at 1.
pub(crate) fn witness_scale(b: &RowUniformMatrix) -> f64 {
    let mut p = 1.0;
    for i in 0..b.n() {
        if b.out_degree(i) > 0 {
            p *= b.row_value(i);
        }
    }
    p.max(1.0)
}

impl EigenWitness {
    /// Check both witness invariants: the auxiliary matrix matches `b`, and
    /// the eigenpair (or the determinant, when no eigenvector is carried)
    /// is within tolerance.
    pub fn verify(&self, b: &RowUniformMatrix) -> Result<()> {
        if !self.matrix.aux().approx_eq(b) {
            return Err(Error::VerificationFailed { what: "auxiliary matrix mismatch".into() });
        }
        match &self.eigenvector {
            Some(v) => {
                let av = self.matrix.apply(v);
                let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let worst = av
                    .iter()
                    .zip(v)
                    .map(|(a, x)| (a - self.eigenvalue * x).norm())
                    .fold(0.0, f64::max);
                if worst > tol::WITNESS_RESIDUAL * vmax {
                    return Err(Error::VerificationFailed {
                        what: format!("eigen residual {worst} exceeds budget"),
                    });
                }
            }
            None => {
                let n = self.matrix.n();
                let mut shifted = self.matrix.clone();
                for i in 0..n {
                    shifted.set(i, i, shifted.get(i, i) - self.eigenvalue);
                }
                let det = linalg::complex_det(&shifted);
                if det.norm() > tol::DET_RESIDUAL * witness_scale(b) {
                    return Err(Error::VerificationFailed {
                        what: format!("determinant residual {} exceeds budget", det.norm()),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ZeroMembership {
    pub member: bool,
    pub witness: Option<EigenWitness>,
}

/// Is 0 an achievable eigenvalue? Yes unless the support has exactly one
/// nonzero generalized diagonal product; with a singular witness when it is.
pub fn zero_in_sigma(b: &RowUniformMatrix) -> ZeroMembership {
    match diagonal_product_count(b) {
        DiagonalProductCount::One => ZeroMembership { member: false, witness: None },
        DiagonalProductCount::Zero => {
            // every generalized diagonal product vanishes: any preimage works
            let w = EigenWitness {
                matrix: b.uniform_split().to_complex(),
                eigenvalue: Complex64::new(0.0, 0.0),
                eigenvector: None,
            };
            ZeroMembership { member: true, witness: Some(w) }
        }
        DiagonalProductCount::Many => {
            let w = zero_witness_many(b);
            ZeroMembership { member: true, witness: Some(w) }
        }
    }
}

/// Roots-of-unity construction for the case of two or more nonzero diagonal
/// products: permute columns so the diagonal is nonzero, locate a class of
/// size > 1, phase its rows so the class block annihilates the ones vector,
/// and undo the permutation.
fn zero_witness_many(b: &RowUniformMatrix) -> EigenWitness {
    let n = b.n();
    let sigma = perfect_matching(b, None).expect("count Many implies a matching");
    // BP: (i, k) -> b(i, sigma(k)); its diagonal is the matched product.
    let bp = b.permute_columns(&sigma);
    let fnf = bp.frobenius_form();
    let class = fnf
        .classes
        .iter()
        .find(|c| c.len() > 1)
        .expect("a second diagonal product forces a class of size > 1")
        .clone();
    let in_class: std::collections::HashSet<usize> = class.iter().copied().collect();

    let split = bp.uniform_split();
    let mut c = split.to_complex();
    for &k in &class {
        let targets: Vec<usize> =
            bp.row_support(k).into_iter().filter(|j| in_class.contains(j)).collect();
        let nk = targets.len();
        debug_assert!(nk > 1, "diagonal loops force an internal out-degree of at least 2");
        for (idx, &l) in targets.iter().enumerate() {
            let phase = 2.0 * std::f64::consts::PI * (idx as f64 + 1.0) / nk as f64;
            c.set(k, l, split.get(k, l) * Complex64::new(phase.cos(), phase.sin()));
        }
    }
    // undo the column permutation: A(i, sigma(k)) = C(i, k)
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            a.set(i, sigma[k], c.get(i, k));
        }
    }
    EigenWitness { matrix: a, eigenvalue: Complex64::new(0.0, 0.0), eigenvector: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cyclicity {
    /// The support is a single Hamiltonian cycle.
    Unicyclic,
    Multicyclic,
}

pub fn classify_cyclic(b: &RowUniformMatrix) -> Result<Cyclicity> {
    if !b.is_irreducible() {
        return Err(Error::Reducible);
    }
    if (0..b.n()).all(|i| b.out_degree(i) == 1) {
        Ok(Cyclicity::Unicyclic)
    } else {
        Ok(Cyclicity::Multicyclic)
    }
}

/// Nonzero achievable moduli for irreducible `b`: a circle when the support
/// is one Hamiltonian cycle; otherwise the punctured disk of radius the
/// maximal cycle mean, closed exactly when the two extremal means agree.
pub fn sigma_irreducible(b: &RowUniformMatrix) -> Result<ModulusSet> {
    let kind = classify_cyclic(b)?;
    let r = cycle_means(&b.as_matrix());
    Ok(match kind {
        Cyclicity::Unicyclic => ModulusSet::from_parts(&[], &[r.mu], false),
        Cyclicity::Multicyclic => {
            let boundary = if tol::close_rel(r.mu, r.nu, tol::MEAN_EQ_REL) {
                Boundary::Closed
            } else {
                Boundary::Open
            };
            ModulusSet::from_parts(&[Disk { radius: r.mu, boundary }], &[], false)
        }
    })
}

/// Nonzero achievable moduli when the rows in `k` are forced strictly below
/// their prescribed value: always the open punctured disk of radius the
/// maximal cycle mean, whatever the minimal mean is.
pub fn sigma_tilde(b: &RowUniformMatrix, k: &[usize]) -> Result<ModulusSet> {
    if k.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    for &i in k {
        if i >= b.n() {
            return Err(Error::IndexOutOfBounds { index: i + 1, n: b.n() });
        }
    }
    if !b.is_irreducible() {
        return Err(Error::Reducible);
    }
    let r = cycle_means(&b.as_matrix());
    Ok(ModulusSet::from_parts(&[Disk { radius: r.mu, boundary: Boundary::Open }], &[], false))
}

/// Full description of the achievable eigenvalue set for arbitrary `b`:
/// the union over final classes of their irreducible sets and over
/// transient classes of their row-deficient sets, plus the zero flag.
pub fn sigma_describe(b: &RowUniformMatrix) -> ModulusSet {
    let fnf = b.frobenius_form();
    let dense = b.as_matrix();
    let mut disks = Vec::new();
    let mut circles = Vec::new();
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_kind[c] == ClassKind::Trivial {
            continue;
        }
        let block = b.principal_submatrix(class);
        let r = cycle_means(&dense.principal_submatrix(class));
        match fnf.class_access[c] {
            ClassAccess::Final => {
                let unicyclic = (0..block.n()).all(|i| block.out_degree(i) == 1);
                if unicyclic {
                    circles.push(r.mu);
                } else {
                    let boundary = if tol::close_rel(r.mu, r.nu, tol::MEAN_EQ_REL) {
                        Boundary::Closed
                    } else {
                        Boundary::Open
                    };
                    disks.push(Disk { radius: r.mu, boundary });
                }
            }
            ClassAccess::Transient => {
                disks.push(Disk { radius: r.mu, boundary: Boundary::Open });
            }
        }
    }
    let zero = matches!(
        diagonal_product_count(b),
        DiagonalProductCount::Zero | DiagonalProductCount::Many
    );
    ModulusSet::from_parts(&disks, &circles, zero)
}

/// Solve for the perturbation size `x >= 0` in
/// `base + sqrt(ek^2 + (x/vk)^2) + sqrt(el^2 + (x/vl)^2) = target`
/// by bisection; the left side is continuous and strictly increasing.
fn solve_row_perturbation(base: f64, ek: f64, vk: f64, el: f64, vl: f64, target: f64) -> f64 {
    let f = |x: f64| base + (ek * ek + (x / vk).powi(2)).sqrt() + (el * el + (x / vl).powi(2)).sqrt();
    let mut hi = 1.0f64.max(target);
    while f(hi) < target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        // the modulus sum must land within the row-uniformity tolerance,
        // which is relative to the row value
        if (f(mid) - target).abs() <= 0.1 * tol::ROW_SUM_DEFECT * target {
            return mid;
        }
    }
    0.5 * (lo + hi)
}

/// Realize `lambda` as an eigenvalue of a complex matrix with auxiliary
/// matrix `b` (irreducible), returning a verified witness.
///
/// The witness's eigenvalue may differ from the request by a relative
/// rounding of the order of the realizer's internal tolerance; it is the
/// exactly-witnessed value.
pub fn realize_eigenvalue(b: &RowUniformMatrix, lambda: Complex64) -> Result<EigenWitness> {
    let r = lambda.norm();
    if r == 0.0 {
        let z = zero_in_sigma(b);
        return match z.witness {
            Some(w) if z.member => Ok(w),
            _ => Err(Error::ZeroNotInSet),
        };
    }
    let set = sigma_irreducible(b)?;
    if !set.contains_modulus(r) {
        return Err(Error::ModulusOutsideSet { modulus: r, description: set.describe() });
    }
    let phase = lambda / r;

    if classify_cyclic(b)? == Cyclicity::Unicyclic {
        return unicyclic_witness(b, lambda);
    }

    // Inside the achievable Perron-root range: realize the modulus as a
    // Perron root and rotate.
    match realize_perron_root(b, r) {
        Ok(real) => {
            let v = perron_vector(&real.matrix)?;
            let rho = real.perron_root;
            let c = real.matrix.to_complex().scale(phase);
            let witness = EigenWitness {
                matrix: c,
                eigenvalue: phase * rho,
                eigenvector: Some(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()),
            };
            witness.verify(b)?;
            Ok(witness)
        }
        Err(e) if e.kind() == crate::error::ErrorKind::Infeasible => {
            row_scaled_witness(b, r, phase)
        }
        Err(e) => Err(e),
    }
}

/// Unicyclic case: the only freedom is the phases along the cycle, so the
/// achievable eigenvalues have modulus exactly the cycle mean. The phase of
/// `lambda^len / (cycle product)` is distributed evenly along the cycle.
fn unicyclic_witness(b: &RowUniformMatrix, lambda: Complex64) -> Result<EigenWitness> {
    let n = b.n();
    let mu = cycle_means(&b.as_matrix()).mu;
    let r = lambda.norm();
    if (r - mu).abs() > tol::LEVEL_RANGE_REL * mu.max(1.0) {
        return Err(Error::ModulusOutsideSet {
            modulus: r,
            description: format!("{{|s| = {mu}}}"),
        });
    }
    let lambda = lambda / r * mu; // snap the modulus onto the circle
    // walk the Hamiltonian cycle from node 0
    let mut cycle = vec![0usize];
    loop {
        let next = b.row_support(*cycle.last().unwrap())[0];
        if next == cycle[0] {
            break;
        }
        cycle.push(next);
    }
    debug_assert_eq!(cycle.len(), n);
    let len = cycle.len() as f64;
    // product of the entries around the cycle is mu^len; the needed total
    // phase is arg(lambda^len)
    let total_phase = lambda.arg() * len;
    let step = Complex64::from_polar(1.0, total_phase / len);
    let mut c = ComplexMatrix::zeros(n);
    for (idx, &u) in cycle.iter().enumerate() {
        let v = cycle[(idx + 1) % cycle.len()];
        c.set(u, v, step * b.row_value(u));
    }
    // eigenvector: x_{next} = lambda x_u / c_{u, next}
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[cycle[0]] = Complex64::new(1.0, 0.0);
    for idx in 0..cycle.len() - 1 {
        let (u, v) = (cycle[idx], cycle[idx + 1]);
        x[v] = lambda * x[u] / c.get(u, v);
    }
    let witness = EigenWitness { matrix: c, eigenvalue: lambda, eigenvector: Some(x) };
    witness.verify(b)?;
    Ok(witness)
}

/// Moduli at or below the minimal cycle mean (or pinched against an open
/// endpoint): rescale one row with at least two support entries so the
/// target becomes an achievable Perron root of the rescaled matrix, then
/// restore that row's modulus sum with a purely imaginary two-entry
/// perturbation that cancels in the eigen-equation, and rotate.
fn row_scaled_witness(b: &RowUniformMatrix, r: f64, phase: Complex64) -> Result<EigenWitness> {
    let n = b.n();
    let dense = b.as_matrix();
    let full = cycle_means(&dense);
    let margin = tol::MODULUS_MARGIN_REL;
    if full.mu < r * (1.0 + 2.0 * margin) {
        // inside the set but too close to its open supremum to isolate
        return Err(Error::VerificationFailed {
            what: format!("modulus {r} is pinched against the boundary {}", full.mu),
        });
    }

    let t = (0..n)
        .find(|&i| b.out_degree(i) >= 2)
        .expect("multicyclic irreducible matrix has a node of out-degree 2");

    // cycle means with row t removed bound what scaling can reach
    let without_t = {
        let mut d = dense.clone();
        for j in 0..n {
            d.set(t, j, 0.0);
        }
        cycle_means(&d)
    };

    let nu_of = |z: f64| cycle_means(&b.scale_row(t, z).as_matrix()).nu;
    let mu_of = |z: f64| cycle_means(&b.scale_row(t, z).as_matrix()).mu;

    let nu_goal = r * (1.0 - 2.0 * margin);
    let mu_goal = r * (1.0 + 2.0 * margin);

    // Largest z in (0, 1] with nu(z) <= nu_goal (nu is nondecreasing in z).
    let z_nu = if nu_of(1.0) <= nu_goal {
        1.0
    } else {
        // a z putting the shortest cycle through t below the goal is feasible
        let alpha_mean = shortest_cycle_mean_through(b, t);
        let mut lo = ((nu_goal * 0.9) / alpha_mean.0).powf(alpha_mean.1 as f64).min(1.0);
        while nu_of(lo) > nu_goal {
            lo *= 0.5;
            if lo < 1e-280 {
                return Err(Error::IterationBudget { what: "modulus isolation (nu)" });
            }
        }
        let mut hi = 1.0;
        for _ in 0..100 {
            let mid = (lo * hi).sqrt();
            if nu_of(mid) <= nu_goal {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };

    // Smallest z in (0, 1] with mu(z) >= mu_goal (mu is nondecreasing).
    let z_mu = if without_t.has_cycle && without_t.mu >= mu_goal {
        0.0
    } else {
        let mut lo = (r / (2.0 * full.mu)).powi(n as i32).min(1.0);
        while mu_of(lo) >= mu_goal {
            // every cycle through t is already below the goal? move further down
            lo *= 0.5;
            if lo < 1e-280 {
                break;
            }
        }
        let mut hi = 1.0;
        for _ in 0..100 {
            let mid = (lo * hi).sqrt();
            if mu_of(mid) >= mu_goal {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let z = if z_mu <= z_nu {
        if z_mu == 0.0 {
            z_nu
        } else {
            (z_mu * z_nu).sqrt()
        }
    } else {
        // no scalar gives both margins; try the degenerate pinch
        let alpha = shortest_cycle_mean_through(b, t);
        (r / alpha.0).powf(alpha.1 as f64).min(1.0)
    };

    let h = b.scale_row(t, z);
    let hr = cycle_means(&h.as_matrix());
    let degenerate_ok = tol::close_rel(hr.mu, hr.nu, tol::ENDPOINT_REJECT_REL * 10.0)
        && tol::close_rel(hr.mu, r, tol::ENDPOINT_REJECT_REL * 10.0);
    if !degenerate_ok && !(hr.nu <= r * (1.0 - margin) && hr.mu >= r * (1.0 + margin)) {
        return Err(Error::IterationBudget { what: "modulus isolation" });
    }
    let target = if degenerate_ok { hr.mu } else { r };
    let real = realize_perron_root(&h, target)?;
    let e = real.matrix;
    let rho = real.perron_root;
    let v = perron_vector(&e)?;

    let mut c = e.to_complex();
    if z < 1.0 - 1e-15 {
        // restore row t's modulus sum with the imaginary two-entry bump
        let support = b.row_support(t);
        let (k, l) = (support[0], support[1]);
        let base: f64 = support.iter().filter(|&&s| s != k && s != l).map(|&s| e.get(t, s)).sum();
        let x = solve_row_perturbation(base, e.get(t, k), v[k], e.get(t, l), v[l], b.row_value(t));
        c.set(t, k, Complex64::new(e.get(t, k), -x / v[k]));
        c.set(t, l, Complex64::new(e.get(t, l), x / v[l]));
    }
    let witness = EigenWitness {
        matrix: c.scale(phase),
        eigenvalue: phase * rho,
        eigenvector: Some(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()),
    };
    witness.verify(b)?;
    Ok(witness)
}

/// Geometric mean and length of a shortest support cycle through `t`.
fn shortest_cycle_mean_through(b: &RowUniformMatrix, t: usize) -> (f64, usize) {
    let n = b.n();
    let adj = b.adjacency();
    // BFS from t back to t
    let mut dist = vec![usize::MAX; n];
    let mut pred = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in &adj[t] {
        if v == t {
            return (b.row_value(t), 1); // self-loop
        }
        if dist[v] == usize::MAX {
            dist[v] = 1;
            pred[v] = t;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if v == t {
                // reconstruct cycle t -> ... -> u -> t
                let mut cyc = vec![u];
                let mut cur = u;
                while pred[cur] != t {
                    cur = pred[cur];
                    cyc.push(cur);
                }
                cyc.push(t);
                cyc.reverse();
                let mean = (cyc.iter().map(|&w| b.row_value(w).ln()).sum::<f64>()
                    / cyc.len() as f64)
                    .exp();
                return (mean, cyc.len());
            }
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                pred[v] = u;
                queue.push_back(v);
            }
        }
    }
    unreachable!("irreducible support has a cycle through every node");
}

/// Realize `lambda` for a possibly reducible `b` by delegating to a class
/// whose contribution contains the modulus and embedding the class witness
/// with real uniform entries everywhere else. Rows of a transient class
/// shed a small fraction of their value onto their inter-class edges so the
/// class block realizes the modulus with a strict deficiency.
pub fn realize_eigenvalue_any(b: &RowUniformMatrix, lambda: Complex64) -> Result<EigenWitness> {
    if b.is_irreducible() {
        return realize_eigenvalue(b, lambda);
    }
    let r = lambda.norm();
    if r == 0.0 {
        let z = zero_in_sigma(b);
        return match z.witness {
            Some(w) if z.member => Ok(w),
            _ => Err(Error::ZeroNotInSet),
        };
    }
    let set = sigma_describe(b);
    if !set.contains_modulus(r) {
        return Err(Error::ModulusOutsideSet { modulus: r, description: set.describe() });
    }

    let fnf = b.frobenius_form();
    let mut chosen: Option<(usize, RowUniformMatrix)> = None;
    for (c, class) in fnf.classes.iter().enumerate() {
        if fnf.class_kind[c] == ClassKind::Trivial {
            continue;
        }
        let block = b.principal_submatrix(class);
        match fnf.class_access[c] {
            ClassAccess::Final => {
                if sigma_irreducible(&block)?.contains_modulus(r) {
                    chosen = Some((c, block));
                    break;
                }
            }
            ClassAccess::Transient => {
                let mu = cycle_means(&block.as_matrix()).mu;
                if r < mu * (1.0 - 10.0 * tol::MODULUS_MARGIN_REL) {
                    // rows with inter-class edges shed mass delta
                    let external: Vec<usize> = (0..class.len())
                        .filter(|&k| b.out_degree(class[k]) > block.out_degree(k))
                        .collect();
                    debug_assert!(!external.is_empty());
                    let deficient = if (0..block.n()).all(|i| block.out_degree(i) == 1) {
                        // unicyclic block: tune the deficiency so the cycle
                        // mean lands exactly on the modulus
                        let len = block.n() as f64;
                        let z = (r / mu).powf(len / external.len() as f64);
                        let mut d = block.clone();
                        for &k in &external {
                            d = d.scale_row(k, z);
                        }
                        d
                    } else {
                        let mut delta = 1e-3;
                        loop {
                            let mut d = block.clone();
                            for &k in &external {
                                d = d.scale_row(k, 1.0 - delta);
                            }
                            if cycle_means(&d.as_matrix()).mu > r * (1.0 + tol::MODULUS_MARGIN_REL)
                            {
                                break d;
                            }
                            delta *= 0.5;
                            if delta < 1e-14 {
                                return Err(Error::IterationBudget {
                                    what: "transient class deficiency",
                                });
                            }
                        }
                    };
                    chosen = Some((c, deficient));
                    break;
                }
            }
        }
    }
    let Some((c, block)) = chosen else {
        return Err(Error::ModulusOutsideSet { modulus: r, description: set.describe() });
    };

    let class = &fnf.classes[c];
    let local = realize_eigenvalue(&block, lambda)?;

    // embed: real uniform split outside the class, the witness block inside,
    // and the shed mass of each class row spread over its external entries
    let n = b.n();
    let mut full = b.uniform_split().to_complex();
    let in_class: std::collections::HashSet<usize> = class.iter().copied().collect();
    for (k, &i) in class.iter().enumerate() {
        let internal_sum: f64 = (0..block.n()).map(|s| local.matrix.get(k, s).norm()).sum();
        let external: Vec<usize> =
            b.row_support(i).into_iter().filter(|j| !in_class.contains(j)).collect();
        let leftover = b.row_value(i) - internal_sum;
        for j in 0..n {
            full.set(i, j, Complex64::new(0.0, 0.0));
        }
        for (s, &j) in class.iter().enumerate() {
            full.set(i, j, local.matrix.get(k, s));
        }
        if !external.is_empty() {
            let share = leftover / external.len() as f64;
            for &j in &external {
                full.set(i, j, Complex64::new(share, 0.0));
            }
        }
    }

    let eigenvalue = local.eigenvalue;
    let eigenvector = global_eigenvector(&full, eigenvalue);
    let witness = EigenWitness { matrix: full, eigenvalue, eigenvector };
    witness.verify(b)?;
    Ok(witness)
}

/// Inverse iteration for an eigenvector of `a` at (approximately) `lambda`.
fn global_eigenvector(a: &ComplexMatrix, lambda: Complex64) -> Option<Vec<Complex64>> {
    let n = a.n();
    // tiny complex shift keeps the solve nonsingular
    let shift = lambda * (1.0 + 1e-10) + Complex64::new(0.0, 1e-12 * (1.0 + lambda.norm()));
    let mut shifted = a.clone();
    for i in 0..n {
        shifted.set(i, i, a.get(i, i) - shift);
    }
    let mut x: Vec<Complex64> =
        (0..n).map(|i| Complex64::new(1.0 + (i as f64 * 0.37).sin(), 0.1)).collect();
    for _ in 0..6 {
        let y = linalg::complex_solve(&shifted, &x)?;
        let norm = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        x = y.into_iter().map(|z| z / norm).collect();
    }
    // residual gate
    let ax = a.apply(&x);
    let worst =
        ax.iter().zip(&x).map(|(p, q)| (p - lambda * q).norm()).fold(0.0, f64::max);
    (worst <= tol::WITNESS_RESIDUAL).then_some(x)
}

/// Verdict on the class of matrices `I - A` over all `A` with the
/// prescribed auxiliary matrix (irreducible, multicyclic, zero diagonal).
#[derive(Debug, Clone)]
pub enum GammaVerdict {
    /// Every member is nonsingular.
    Regular,
    /// Some member is singular; the witness realizes eigenvalue 1 of `A`.
    SingularPossible(EigenWitness),
}

pub fn gamma_regularity(b: &RowUniformMatrix) -> Result<GammaVerdict> {
    if classify_cyclic(b)? != Cyclicity::Multicyclic {
        return Err(Error::NotMulticyclic);
    }
    for i in 0..b.n() {
        if b.is_support(i, i) {
            return Err(Error::NonzeroDiagonal { row: i + 1 });
        }
    }
    let r = cycle_means(&b.as_matrix());
    let mu_is_one = tol::close_rel(r.mu, 1.0, tol::MEAN_EQ_REL);
    let regular = (r.mu < 1.0 && !mu_is_one)
        || (mu_is_one && r.nu < 1.0 && !tol::close_rel(r.nu, 1.0, tol::MEAN_EQ_REL));
    if regular {
        Ok(GammaVerdict::Regular)
    } else {
        let w = realize_eigenvalue(b, Complex64::new(1.0, 0.0))?;
        Ok(GammaVerdict::SingularPossible(w))
    }
}
