//! Sunflower subgraphs: spanning subgraphs in which every node that has an
//! outgoing edge keeps exactly one, so each weak component carries at most
//! one cycle. The extremes of their maximal cycle means over all sunflowers
//! are the parameters that bound the achievable Perron roots.

use crate::cycles::{critical_graph, cycle_means, Level};
use crate::error::{Error, Result};
use crate::graph::{ClassAccess, ClassKind};
use crate::matrix::{NonnegMatrix, RowUniformMatrix};

/// One retained out-edge per node (absent when the host node has none),
/// weights inherited from the host.
#[derive(Debug, Clone)]
pub struct SunflowerSubgraph {
    out_edge: Vec<Option<usize>>,
    weight: Vec<f64>,
}

impl SunflowerSubgraph {
    pub(crate) fn new(out_edge: Vec<Option<usize>>, weight: Vec<f64>) -> Self {
        debug_assert_eq!(out_edge.len(), weight.len());
        Self { out_edge, weight }
    }

    pub fn n(&self) -> usize {
        self.out_edge.len()
    }

    pub fn out_edge(&self, i: usize) -> Option<usize> {
        self.out_edge[i]
    }

    pub fn out_edges(&self) -> &[Option<usize>] {
        &self.out_edge
    }

    /// Weight of the retained edge of node `i` (0 when absent).
    pub fn weight(&self, i: usize) -> f64 {
        self.weight[i]
    }

    /// Matrix carried by the subgraph: entry (i, out(i)) holds the weight.
    pub fn to_matrix(&self) -> NonnegMatrix {
        let n = self.n();
        let mut a = NonnegMatrix::zeros(n);
        for i in 0..n {
            if let Some(j) = self.out_edge[i] {
                a.set(i, j, self.weight[i]);
            }
        }
        a
    }

    /// The unique cycle of every component that has one.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        // 0 unvisited, 1 on current walk, 2 settled
        let mut state = vec![0u8; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut walk = Vec::new();
            let mut pos = std::collections::HashMap::new();
            let mut v = start;
            loop {
                if state[v] == 2 {
                    break;
                }
                if state[v] == 1 {
                    cycles.push(walk[pos[&v]..].to_vec());
                    break;
                }
                state[v] = 1;
                pos.insert(v, walk.len());
                walk.push(v);
                match self.out_edge[v] {
                    Some(w) => v = w,
                    None => break,
                }
            }
            for &u in &walk {
                state[u] = 2;
            }
        }
        cycles
    }

    /// Maximal geometric cycle mean of the subgraph (0 when acyclic).
    pub fn max_cycle_mean(&self) -> f64 {
        let mut best = 0.0f64;
        for cycle in self.cycles() {
            let len = cycle.len() as f64;
            let sum: f64 = cycle.iter().map(|&v| self.weight[v].ln()).sum();
            best = best.max((sum / len).exp());
        }
        best
    }

    /// Check the structural conditions against a host: one retained edge
    /// exactly where the host has out-degree >= 1, with the host's weight.
    pub fn validate_against(&self, host: &NonnegMatrix) -> Result<()> {
        if self.n() != host.n() {
            return Err(Error::DimensionMismatch { expected: host.n(), got: self.n() });
        }
        for i in 0..self.n() {
            let host_out = host.row_support(i);
            match self.out_edge[i] {
                None if host_out.is_empty() => {}
                None => {
                    return Err(Error::VerificationFailed {
                        what: format!("node {} must keep one outgoing edge", i + 1),
                    })
                }
                Some(j) => {
                    if host.get(i, j) == 0.0 {
                        return Err(Error::VerificationFailed {
                            what: format!("edge ({}, {}) is not a host edge", i + 1, j + 1),
                        });
                    }
                    if self.weight[i] != host.get(i, j) {
                        return Err(Error::VerificationFailed {
                            what: format!("edge ({}, {}) changed weight", i + 1, j + 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_cycle(adj_has: impl Fn(usize, usize) -> bool, n: usize, gamma: &[usize]) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::NotACycle { reason: "empty node list".into() });
    }
    let mut seen = vec![false; n];
    for &v in gamma {
        if v >= n {
            return Err(Error::IndexOutOfBounds { index: v + 1, n });
        }
        if seen[v] {
            return Err(Error::NotACycle { reason: format!("node {} repeats", v + 1) });
        }
        seen[v] = true;
    }
    for k in 0..gamma.len() {
        let (u, v) = (gamma[k], gamma[(k + 1) % gamma.len()]);
        if !adj_has(u, v) {
            return Err(Error::NotACycle {
                reason: format!("missing edge ({}, {})", u + 1, v + 1),
            });
        }
    }
    Ok(())
}

/// Grow `assigned` by repeatedly attaching the smallest (source, target)
/// host edge that enters the assigned set.
fn grow_frontier(
    host_adj: &[Vec<usize>],
    weight_of: impl Fn(usize, usize) -> f64,
    out_edge: &mut [Option<usize>],
    weight: &mut [f64],
    assigned: &mut [bool],
    allowed: impl Fn(usize) -> bool,
) {
    loop {
        let mut pick: Option<(usize, usize)> = None;
        for (u, outs) in host_adj.iter().enumerate() {
            if assigned[u] || !allowed(u) {
                continue;
            }
            for &v in outs {
                if assigned[v] && allowed(v) {
                    if pick.map_or(true, |p| (u, v) < p) {
                        pick = Some((u, v));
                    }
                    break; // outs ascending: first hit is the smallest v for this u
                }
            }
        }
        match pick {
            Some((u, v)) => {
                out_edge[u] = Some(v);
                weight[u] = weight_of(u, v);
                assigned[u] = true;
            }
            None => break,
        }
    }
}

/// Sunflower of a strongly connected host whose unique cycle is `gamma`
/// (0-based node list in cycle order). Built by greedy frontier growth from
/// the cycle, attaching entering edges in ascending (source, target) order.
pub fn simple_sunflower(host: &NonnegMatrix, gamma: &[usize]) -> Result<SunflowerSubgraph> {
    let n = host.n();
    check_cycle(|u, v| host.get(u, v) != 0.0, n, gamma)?;
    if !host.is_irreducible() {
        return Err(Error::Reducible);
    }
    let adj = host.adjacency();
    let mut out_edge = vec![None; n];
    let mut weight = vec![0.0; n];
    let mut assigned = vec![false; n];
    for k in 0..gamma.len() {
        let (u, v) = (gamma[k], gamma[(k + 1) % gamma.len()]);
        out_edge[u] = Some(v);
        weight[u] = host.get(u, v);
        assigned[u] = true;
    }
    grow_frontier(&adj, |u, v| host.get(u, v), &mut out_edge, &mut weight, &mut assigned, |_| true);
    if assigned.iter().any(|&b| !b) {
        return Err(Error::Reducible);
    }
    Ok(SunflowerSubgraph::new(out_edge, weight))
}

/// Thin sunflower of a row uniform matrix: cycles are exactly `chosen`, one
/// cycle per nontrivial final class. Transient classes are spanned by a
/// reverse breadth-first tree toward their smallest node with an inter-class
/// edge; trivial nodes keep their smallest outgoing edge. When there are no
/// nontrivial final classes the result is a directed forest.
pub fn thin_sunflower(
    b: &RowUniformMatrix,
    chosen: &[Vec<usize>],
) -> Result<SunflowerSubgraph> {
    let n = b.n();
    let fnf = b.frobenius_form();
    let class_of = fnf.class_of();
    let targets = fnf.nontrivial_final_classes();

    if chosen.len() != targets.len() {
        return Err(Error::CycleClassMismatch { expected: targets.len(), got: chosen.len() });
    }
    // Map each chosen cycle to its class; insist on a bijection.
    let mut cycle_for: std::collections::HashMap<usize, &Vec<usize>> =
        std::collections::HashMap::new();
    for cycle in chosen {
        check_cycle(|u, v| b.is_support(u, v), n, cycle)?;
        let c = class_of[cycle[0]];
        if !targets.contains(&c) || cycle.iter().any(|&v| class_of[v] != c) {
            return Err(Error::CycleOutsideFinalClass { cycle_node: cycle[0] + 1 });
        }
        if cycle_for.insert(c, cycle).is_some() {
            return Err(Error::CycleClassMismatch { expected: targets.len(), got: chosen.len() });
        }
    }

    let adj = b.adjacency();
    let mut out_edge = vec![None; n];
    let mut weight = vec![0.0; n];

    for (c, class) in fnf.classes.iter().enumerate() {
        match (fnf.class_kind[c], fnf.class_access[c]) {
            (ClassKind::Trivial, _) => {
                let u = class[0];
                if let Some(&v) = adj[u].first() {
                    out_edge[u] = Some(v);
                    weight[u] = b.row_value(u);
                }
            }
            (ClassKind::Nontrivial, ClassAccess::Final) => {
                let cycle = cycle_for[&c];
                let mut assigned = vec![false; n];
                for k in 0..cycle.len() {
                    let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                    out_edge[u] = Some(v);
                    weight[u] = b.row_value(u);
                    assigned[u] = true;
                }
                let in_class = |u: usize| class_of[u] == c;
                grow_frontier(
                    &adj,
                    |u, _| b.row_value(u),
                    &mut out_edge,
                    &mut weight,
                    &mut assigned,
                    in_class,
                );
            }
            (ClassKind::Nontrivial, ClassAccess::Transient) => {
                // Exit node: smallest class node with an edge leaving the class.
                let exit = *class
                    .iter()
                    .find(|&&u| adj[u].iter().any(|&v| class_of[v] != c))
                    .expect("transient class has an inter-class edge");
                let exit_target = *adj[exit].iter().find(|&&v| class_of[v] != c).unwrap();
                out_edge[exit] = Some(exit_target);
                weight[exit] = b.row_value(exit);
                // Reverse BFS toward the exit along class-internal edges.
                let mut settled: Vec<usize> = vec![exit];
                let mut head = 0;
                let mut done: std::collections::HashSet<usize> = [exit].into();
                while head < settled.len() {
                    let v = settled[head];
                    head += 1;
                    for &u in class.iter() {
                        if !done.contains(&u) && adj[u].contains(&v) {
                            out_edge[u] = Some(v);
                            weight[u] = b.row_value(u);
                            done.insert(u);
                            settled.push(u);
                        }
                    }
                }
                debug_assert_eq!(done.len(), class.len());
            }
        }
    }
    Ok(SunflowerSubgraph::new(out_edge, weight))
}

/// Thin sunflower whose cycles attain the minimal cycle mean of every
/// nontrivial final class; its maximal cycle mean is the lower extremal
/// parameter.
pub(crate) fn min_attaining_sunflower(b: &RowUniformMatrix) -> Result<SunflowerSubgraph> {
    let fnf = b.frobenius_form();
    let dense = b.as_matrix();
    let mut chosen = Vec::new();
    for c in fnf.nontrivial_final_classes() {
        let class = &fnf.classes[c];
        let block = dense.principal_submatrix(class);
        let cyc_local = critical_graph(&block, Level::Min)?.extract_cycle();
        chosen.push(cyc_local.into_iter().map(|k| class[k]).collect());
    }
    thin_sunflower(b, &chosen)
}

/// A sunflower containing a cycle that attains the maximal cycle mean of the
/// whole graph; its maximal cycle mean is the upper extremal parameter.
/// Nodes that cannot reach the chosen cycle keep their smallest out-edge
/// (any extra cycle this creates has a mean no larger than the maximum).
pub(crate) fn max_attaining_sunflower(b: &RowUniformMatrix) -> Result<SunflowerSubgraph> {
    let n = b.n();
    let dense = b.as_matrix();
    let gamma = critical_graph(&dense, Level::Max)?.extract_cycle();
    let adj = b.adjacency();
    let mut out_edge = vec![None; n];
    let mut weight = vec![0.0; n];
    let mut assigned = vec![false; n];
    for k in 0..gamma.len() {
        let (u, v) = (gamma[k], gamma[(k + 1) % gamma.len()]);
        out_edge[u] = Some(v);
        weight[u] = b.row_value(u);
        assigned[u] = true;
    }
    grow_frontier(&adj, |u, _| b.row_value(u), &mut out_edge, &mut weight, &mut assigned, |_| true);
    for u in 0..n {
        if !assigned[u] {
            if let Some(&v) = adj[u].first() {
                out_edge[u] = Some(v);
                weight[u] = b.row_value(u);
            }
        }
    }
    Ok(SunflowerSubgraph::new(out_edge, weight))
}

/// Extremes of the maximal cycle mean over all sunflower subgraphs with the
/// full node set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalParams {
    /// Maximum: equals the maximal cycle mean of the whole matrix.
    pub upper: f64,
    /// Minimum: the largest minimal cycle mean over the final classes
    /// (0 when all final classes are trivial).
    pub lower: f64,
}

/// The two extremal parameters, computed through the Frobenius normal form.
pub fn extremal_params(b: &RowUniformMatrix) -> ExtremalParams {
    let dense = b.as_matrix();
    let upper = cycle_means(&dense).mu;
    let fnf = b.frobenius_form();
    let mut lower = 0.0f64;
    for c in fnf.nontrivial_final_classes() {
        let block = dense.principal_submatrix(&fnf.classes[c]);
        lower = lower.max(cycle_means(&block).nu);
    }
    ExtremalParams { upper, lower }
}
