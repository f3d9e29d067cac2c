//! Simple connected cubic graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when a graph fails validation at the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph has a loop at vertex {0}")]
    Loop(usize),
    #[error("graph has a repeated edge {0}-{1}")]
    MultiEdge(usize, usize),
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(usize, usize),
    #[error("vertex index {index} out of range for order {order}")]
    VertexOutOfRange { index: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a cubic graph needs an even order of at least 4, got {0}")]
    BadOrder(usize),
    #[error("unknown catalog graph '{0}'")]
    UnknownName(String),
    #[error("malformed edge '{0}', expected u,v")]
    MalformedEdge(String),
}

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    /// Builds the normalized edge. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0, self.1)
    }
}

impl FromStr for Edge {
    type Err = GraphError;

    /// Accepts `u,v` or `u-v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::MalformedEdge(s.to_string());
        let (a, b) = s.trim().split_once([',', '-']).ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        if a == b {
            return Err(bad());
        }
        Ok(Edge::new(a, b))
    }
}

/// A simple, connected, 3-regular graph on vertices `0..order`.
///
/// Neighbor triples are kept sorted, so two graphs compare equal exactly when
/// they have the same labelled edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    adj: Vec<[u32; 3]>,
}

impl CubicGraph {
    /// Builds and validates a cubic graph from an edge list.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut lists: Vec<Vec<usize>> = vec![Vec::with_capacity(3); order];
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { index: x, order });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            lists[a].push(b);
            lists[b].push(a);
        }
        Self::from_lists(lists)
    }

    /// Builds and validates a cubic graph from per-vertex neighbor lists.
    /// The lists must be symmetric.
    pub fn from_lists(lists: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let order = lists.len();
        if order < 4 || order % 2 == 1 {
            // Report a degree problem first when there is one, it is the more useful message.
            if let Some((v, l)) = lists.iter().enumerate().find(|(_, l)| l.len() != 3) {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: l.len(),
                });
            }
            return Err(GraphError::BadOrder(order));
        }
        let mut adj = Vec::with_capacity(order);
        for (v, l) in lists.iter().enumerate() {
            if l.len() != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: l.len(),
                });
            }
            let mut t = [0u32; 3];
            for (slot, &u) in t.iter_mut().zip(l) {
                if u >= order {
                    return Err(GraphError::VertexOutOfRange { index: u, order });
                }
                if u == v {
                    return Err(GraphError::Loop(v));
                }
                *slot = u as u32;
            }
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                let dup = if t[0] == t[1] { t[0] } else { t[1] };
                return Err(GraphError::MultiEdge(
                    v.min(dup as usize),
                    v.max(dup as usize),
                ));
            }
            adj.push(t);
        }
        for (v, t) in adj.iter().enumerate() {
            for &u in t {
                if !adj[u as usize].contains(&(v as u32)) {
                    return Err(GraphError::Asymmetric(v, u as usize));
                }
            }
        }
        let g = CubicGraph { adj };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Wraps adjacency produced by trusted internal code. Validity is checked
    /// in debug builds only.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<[u32; 3]>) -> Self {
        let mut adj = adj;
        for t in &mut adj {
            t.sort_unstable();
        }
        let g = CubicGraph { adj };
        debug_assert!(
            CubicGraph::from_lists(g.neighbor_lists()).is_ok(),
            "internal code produced an invalid cubic graph"
        );
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() * 3 / 2
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        let t = self.adj[v];
        [t[0] as usize, t[1] as usize, t[2] as usize]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order() && self.adj[a].contains(&(b as u32))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.hi() < self.order() && self.has_edge(e.lo(), e.hi())
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, t) in self.adj.iter().enumerate() {
            for &u in t {
                if (u as usize) > v {
                    out.push(Edge(v, u as usize));
                }
            }
        }
        out
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        self.adj
            .iter()
            .map(|t| t.iter().map(|&u| u as usize).collect())
            .collect()
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> CubicGraph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![[0u32; 3]; self.order()];
        for (v, t) in self.adj.iter().enumerate() {
            adj[perm[v]] = [
                perm[t[0] as usize] as u32,
                perm[t[1] as usize] as u32,
                perm[t[2] as usize] as u32,
            ];
        }
        CubicGraph::from_adjacency_unchecked(adj)
    }

    pub(crate) fn raw(&self) -> &[[u32; 3]] {
        &self.adj
    }

    fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                let u = u as usize;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }
}
