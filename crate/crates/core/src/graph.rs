//! Strongly connected components and the Frobenius normal form.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// A single node without a self-loop.
    Trivial,
    /// An irreducible diagonal block (any class with a cycle).
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassAccess {
    /// No edge leaves the class's node set.
    Final,
    /// The class has access to another class.
    Transient,
}

/// Simultaneous permutation to block lower-triangular form with irreducible
/// diagonal blocks, plus per-class metadata. Final classes come first, so
/// every inter-class edge points from a later block to an earlier one.
#[derive(Debug, Clone)]
pub struct FrobeniusForm {
    /// `permutation[k]` = original index of the node at block position `k`.
    pub permutation: Vec<usize>,
    /// Node sets of the classes in block order, ascending inside each class.
    pub classes: Vec<Vec<usize>>,
    pub class_kind: Vec<ClassKind>,
    pub class_access: Vec<ClassAccess>,
}

impl FrobeniusForm {
    /// Build the form from adjacency lists. `has_loop(i)` reports a self-loop
    /// at node `i` (used to tell trivial classes apart).
    pub fn of(adj: &[Vec<usize>], has_loop: impl Fn(usize) -> bool) -> FrobeniusForm {
        let n = adj.len();
        // Tarjan emits components after everything they reach, so the
        // emission order already places final classes first.
        let mut classes = tarjan_scc(adj);
        for class in &mut classes {
            class.sort_unstable();
        }
        let mut class_of = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                class_of[v] = c;
            }
        }
        let class_kind = classes
            .iter()
            .map(|class| {
                if class.len() == 1 && !has_loop(class[0]) {
                    ClassKind::Trivial
                } else {
                    ClassKind::Nontrivial
                }
            })
            .collect();
        let class_access = classes
            .iter()
            .enumerate()
            .map(|(c, class)| {
                let leaves = class
                    .iter()
                    .any(|&v| adj[v].iter().any(|&w| class_of[w] != c));
                if leaves {
                    ClassAccess::Transient
                } else {
                    ClassAccess::Final
                }
            })
            .collect();
        let permutation = classes.concat();
        FrobeniusForm { permutation, classes, class_kind, class_access }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Map from node to the index of its class.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.permutation.len();
        let mut out = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = c;
            }
        }
        out
    }

    /// Indices of classes that are final and nontrivial.
    pub fn nontrivial_final_classes(&self) -> Vec<usize> {
        (0..self.class_count())
            .filter(|&c| {
                self.class_access[c] == ClassAccess::Final
                    && self.class_kind[c] == ClassKind::Nontrivial
            })
            .collect()
    }
}

/// Iterative Tarjan strongly-connected-components algorithm.
///
/// Components are emitted in reverse topological order of the condensation:
/// every component appears after all components reachable from it.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0usize;

    // Explicit DFS frames: (node, next out-edge position).
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut ei)) = frames.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}
