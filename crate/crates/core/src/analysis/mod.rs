//! Girth, Hamiltonicity, edge connectivity and cyclic edge connectivity,
//! each with a checkable certificate.

mod cuts;
mod girth;
mod hamilton;

use serde::Serialize;

use crate::graph::{CubicGraph, Edge};

pub(crate) use cuts::induces_cycle;
pub use cuts::{cyclic_edge_connectivity, edge_connectivity};
pub use girth::{girth, girth_cycle_avoiding, girth_length, Avoid};
pub use hamilton::{is_hamiltonian, is_hamiltonian_plain};

/// A cycle given as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertices adjacent (cyclically), all distinct, length >= 3.
    pub fn is_valid_in(&self, g: &CubicGraph) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.vertices.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let mut seen = vec![false; g.order()];
        for &v in &self.vertices {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..k).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// The cycle's edges, in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Hamiltonian,
    NonHamiltonian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonicityResult {
    pub verdict: Verdict,
    /// A Hamiltonian cycle when the verdict is `Hamiltonian`.
    pub certificate: Option<CycleWitness>,
    /// Search nodes expanded.
    pub nodes: u64,
}

impl HamiltonicityResult {
    pub fn is_hamiltonian(&self) -> bool {
        self.verdict == Verdict::Hamiltonian
    }

    pub fn is_valid_in(&self, g: &CubicGraph) -> bool {
        match (&self.verdict, &self.certificate) {
            (Verdict::Hamiltonian, Some(c)) => c.len() == g.order() && c.is_valid_in(g),
            (Verdict::NonHamiltonian, None) => true,
            _ => false,
        }
    }
}

/// An edge cut together with the vertex set of one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    pub edges: Vec<Edge>,
    pub side: Vec<usize>,
}

impl CutWitness {
    /// The edges are exactly the boundary of `side`, and both `side` and its
    /// complement are non-empty and connected, so the cut is a minimal
    /// disconnecting set.
    pub fn is_valid_in(&self, g: &CubicGraph) -> bool {
        let n = g.order();
        if self.side.is_empty() || self.side.len() >= n || self.side.iter().any(|&v| v >= n) {
            return false;
        }
        let mut in_side = vec![false; n];
        for &v in &self.side {
            in_side[v] = true;
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != self.edges.len() || edges != cuts::boundary(g, &in_side) {
            return false;
        }
        let rest: Vec<bool> = in_side.iter().map(|&x| !x).collect();
        connected_within(g, &in_side) && connected_within(g, &rest)
    }

    fn sides(&self, g: &CubicGraph) -> (Vec<bool>, Vec<bool>) {
        let mut a = vec![false; g.order()];
        for &v in &self.side {
            a[v] = true;
        }
        let b = a.iter().map(|&x| !x).collect();
        (a, b)
    }
}

fn connected_within(g: &CubicGraph, set: &[bool]) -> bool {
    let Some(start) = set.iter().position(|&x| x) else {
        return false;
    };
    let mut seen = vec![false; g.order()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if set[u] && !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == set.iter().filter(|&&x| x).count()
}

/// Cyclic edge connectivity value. `Unbounded` when the graph has no two
/// vertex-disjoint cycles, so no cyclic cut exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CyclicConnectivity {
    Bounded(usize),
    Unbounded,
}

impl CyclicConnectivity {
    pub fn value(self) -> Option<usize> {
        match self {
            CyclicConnectivity::Bounded(k) => Some(k),
            CyclicConnectivity::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicConnectivityResult {
    pub value: CyclicConnectivity,
    /// A minimum cut with a cycle on each side, when bounded.
    pub witness: Option<CutWitness>,
}

impl CyclicConnectivityResult {
    pub fn is_valid_in(&self, g: &CubicGraph) -> bool {
        match (self.value, &self.witness) {
            (CyclicConnectivity::Bounded(k), Some(w)) => {
                let (a, b) = w.sides(g);
                w.edges.len() == k
                    && w.is_valid_in(g)
                    && induces_cycle(g, &a)
                    && induces_cycle(g, &b)
            }
            (CyclicConnectivity::Unbounded, None) => true,
            _ => false,
        }
    }
}

/// Every analysis verdict for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub girth: usize,
    pub girth_witness: CycleWitness,
    pub hamiltonicity: HamiltonicityResult,
    pub edge_connectivity: usize,
    pub edge_cut: CutWitness,
    pub cyclic: CyclicConnectivityResult,
}

/// Runs every analysis and re-validates each certificate.
pub fn analyze(g: &CubicGraph) -> AnalysisReport {
    let (girth, girth_witness) = girth::girth(g);
    let hamiltonicity = hamilton::is_hamiltonian(g);
    let (edge_connectivity, edge_cut) = cuts::edge_connectivity(g);
    let cyclic = cuts::cyclic_edge_connectivity(g);
    assert!(girth_witness.is_valid_in(g) && girth_witness.len() == girth);
    assert!(hamiltonicity.is_valid_in(g));
    assert!(edge_cut.is_valid_in(g) && edge_cut.edges.len() == edge_connectivity);
    assert!(cyclic.is_valid_in(g));
    AnalysisReport {
        order: g.order(),
        girth,
        girth_witness,
        hamiltonicity,
        edge_connectivity,
        edge_cut,
        cyclic,
    }
}
