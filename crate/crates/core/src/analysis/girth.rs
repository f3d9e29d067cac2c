//! Girth and shortest-cycle witnesses.

use std::collections::VecDeque;

use super::CycleWitness;
use crate::graph::{CubicGraph, Edge};

/// Something a girth cycle must avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Avoid {
    Edge(Edge),
    Vertex(usize),
}

/// Girth and the lexicographically smallest cycle attaining it.
pub fn girth(g: &CubicGraph) -> (usize, CycleWitness) {
    let len = girth_length(g);
    let witness = smallest_cycle_of_length(g, len, None)
        .expect("a cycle of girth length exists by construction");
    (len, witness)
}

/// A girth-length cycle that avoids `avoid`, if one exists. The returned
/// cycle is the lexicographically smallest such cycle.
pub fn girth_cycle_avoiding(g: &CubicGraph, avoid: Avoid) -> Option<CycleWitness> {
    smallest_cycle_of_length(g, girth_length(g), Some(avoid))
}

/// Minimum cycle length via one breadth-first search per root.
pub fn girth_length(g: &CubicGraph) -> usize {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(v) = queue.pop_front() {
            // Any cycle found from here is at least 2*dist[v]+1 long.
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for u in g.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if parent[v] != u {
                    best = best.min(dist[u] + dist[v] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    best
}

/// Lexicographically smallest cycle (as a vertex sequence starting at its
/// minimum vertex) of exactly `len` vertices, optionally avoiding something.
pub(crate) fn smallest_cycle_of_length(
    g: &CubicGraph,
    len: usize,
    avoid: Option<Avoid>,
) -> Option<CycleWitness> {
    let n = g.order();
    let banned_vertex = match avoid {
        Some(Avoid::Vertex(v)) => Some(v),
        _ => None,
    };
    let banned_edge = match avoid {
        Some(Avoid::Edge(e)) => Some(e),
        _ => None,
    };
    let usable = |a: usize, b: usize| banned_edge.is_none_or(|e| e != Edge::new(a, b));
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if Some(start) == banned_vertex {
            continue;
        }
        // Distances back to `start` inside the allowed subgraph (vertices >= start).
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[start] = 0;
        queue.clear();
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v) {
                if u > start && Some(u) != banned_vertex && usable(v, u) && dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        if extend(
            g,
            len,
            start,
            &dist,
            &mut path,
            &mut on_path,
            banned_vertex,
            &usable,
        ) {
            return Some(CycleWitness { vertices: path });
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &CubicGraph,
    len: usize,
    start: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    banned_vertex: Option<usize>,
    usable: &impl Fn(usize, usize) -> bool,
) -> bool {
    let v = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(v, start) && usable(v, start) && len >= 3;
    }
    for u in g.neighbors(v) {
        if u <= start || on_path[u] || Some(u) == banned_vertex || !usable(v, u) {
            continue;
        }
        // remaining edges after stepping to u: len - path.len()
        if dist[u] == usize::MAX || dist[u] > len - path.len() {
            continue;
        }
        path.push(u);
        on_path[u] = true;
        if extend(g, len, start, dist, path, on_path, banned_vertex, usable) {
            return true;
        }
        on_path[u] = false;
        path.pop();
    }
    false
}
