//! Edge cuts: bridges, edge connectivity, unit-capacity max-flow between
//! vertex sets, and cyclic edge connectivity.

use std::collections::VecDeque;

use super::{CutWitness, CycleWitness, CyclicConnectivity, CyclicConnectivityResult};
use crate::graph::{CubicGraph, Edge};

/// Bridges of `g`, optionally with one edge deleted first. Sorted.
pub(crate) fn bridges(g: &CubicGraph, removed: Option<Edge>) -> Vec<Edge> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut time = 0;
    // (vertex, parent, next neighbor slot); the tree edge to the parent is skipped once.
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut slot)) = stack.last_mut() {
            if *slot < 3 {
                let u = g.neighbors(v)[*slot];
                *slot += 1;
                if u == parent || removed == Some(Edge::new(u, v)) {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, v, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(Edge::new(v, parent));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Vertices reachable from `start` without using `cut`.
pub(crate) fn side_of(g: &CubicGraph, start: usize, cut: &[Edge]) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if !seen[u] && !cut.contains(&Edge::new(u, v)) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).filter(|&v| seen[v]).collect()
}

/// Exact edge connectivity (1, 2 or 3) with a minimum disconnecting set.
pub fn edge_connectivity(g: &CubicGraph) -> (usize, CutWitness) {
    let b = bridges(g, None);
    if let Some(&e) = b.first() {
        let side = side_of(g, e.lo(), &[e]);
        return (
            1,
            CutWitness {
                edges: vec![e],
                side,
            },
        );
    }
    for e in g.edges() {
        if let Some(&f) = bridges(g, Some(e)).first() {
            let mut edges = vec![e, f];
            edges.sort_unstable();
            let side = side_of(g, f.lo(), &edges);
            return (2, CutWitness { edges, side });
        }
    }
    let edges = g.neighbors(0).iter().map(|&u| Edge::new(0, u)).collect();
    (
        3,
        CutWitness {
            edges,
            side: vec![0],
        },
    )
}

/// Unit-capacity max-flow between two disjoint vertex sets of a cubic graph.
pub(crate) struct FlowNet<'a> {
    g: &'a CubicGraph,
    /// Edge index for each (vertex, slot).
    slot_edge: Vec<[usize; 3]>,
    lo_of: Vec<usize>,
    /// Flow on each edge in the lo->hi direction: -1, 0 or 1.
    flow: Vec<i8>,
}

pub(crate) struct FlowResult {
    pub value: usize,
    /// Residual-reachable from the sources (closest min cut to the sources).
    pub source_side: Vec<bool>,
    /// Complement of the set that can reach the sinks (closest to the sinks).
    pub far_source_side: Vec<bool>,
}

impl<'a> FlowNet<'a> {
    pub(crate) fn new(g: &'a CubicGraph) -> Self {
        let edges = g.edges();
        let mut slot_edge = vec![[0usize; 3]; g.order()];
        for v in 0..g.order() {
            for (s, u) in g.neighbors(v).into_iter().enumerate() {
                slot_edge[v][s] = edges.binary_search(&Edge::new(u, v)).unwrap();
            }
        }
        FlowNet {
            g,
            slot_edge,
            lo_of: edges.iter().map(|e| e.lo()).collect(),
            flow: vec![0; edges.len()],
        }
    }

    fn residual(&self, from: usize, slot: usize) -> i8 {
        let e = self.slot_edge[from][slot];
        if self.lo_of[e] == from {
            1 - self.flow[e]
        } else {
            1 + self.flow[e]
        }
    }

    fn push(&mut self, from: usize, slot: usize) {
        let e = self.slot_edge[from][slot];
        if self.lo_of[e] == from {
            self.flow[e] += 1;
        } else {
            self.flow[e] -= 1;
        }
    }

    /// Max flow from `src` to `snk`, stopping once `limit` is reached.
    pub(crate) fn run(&mut self, src: &[bool], snk: &[bool], limit: usize) -> FlowResult {
        let n = self.g.order();
        self.flow.iter_mut().for_each(|f| *f = 0);
        let mut value = 0;
        let mut pred: Vec<(usize, usize)> = vec![(usize::MAX, 0); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        loop {
            if value >= limit {
                break;
            }
            seen.iter_mut().for_each(|s| *s = false);
            queue.clear();
            for v in 0..n {
                if src[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
            let mut hit = None;
            'bfs: while let Some(v) = queue.pop_front() {
                for s in 0..3 {
                    let u = self.g.neighbors(v)[s];
                    if !seen[u] && self.residual(v, s) > 0 {
                        seen[u] = true;
                        pred[u] = (v, s);
                        if snk[u] {
                            hit = Some(u);
                            break 'bfs;
                        }
                        queue.push_back(u);
                    }
                }
            }
            let Some(mut t) = hit else { break };
            while !src[t] {
                let (p, s) = pred[t];
                self.push(p, s);
                t = p;
            }
            value += 1;
        }
        let source_side = self.reach_from(src);
        let sink_reach = self.reach_to(snk);
        FlowResult {
            value,
            source_side,
            far_source_side: sink_reach.iter().map(|&r| !r).collect(),
        }
    }

    fn reach_from(&self, src: &[bool]) -> Vec<bool> {
        let n = self.g.order();
        let mut seen = src.to_vec();
        let mut stack: Vec<usize> = (0..n).filter(|&v| src[v]).collect();
        while let Some(v) = stack.pop() {
            for s in 0..3 {
                let u = self.g.neighbors(v)[s];
                if !seen[u] && self.residual(v, s) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    fn reach_to(&self, snk: &[bool]) -> Vec<bool> {
        let n = self.g.order();
        let mut seen = snk.to_vec();
        let mut stack: Vec<usize> = (0..n).filter(|&v| snk[v]).collect();
        while let Some(w) = stack.pop() {
            for u in self.g.neighbors(w) {
                if seen[u] {
                    continue;
                }
                let s = self.g.neighbors(u).iter().position(|&x| x == w).unwrap();
                if self.residual(u, s) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// Edges with exactly one endpoint in `side`.
pub(crate) fn boundary(g: &CubicGraph, side: &[bool]) -> Vec<Edge> {
    g.edges()
        .into_iter()
        .filter(|e| side[e.lo()] != side[e.hi()])
        .collect()
}

/// Whether the subgraph induced by `side` contains a cycle.
pub(crate) fn induces_cycle(g: &CubicGraph, side: &[bool]) -> bool {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in 0..n {
        if !side[v] {
            continue;
        }
        for u in g.neighbors(v) {
            if u > v && side[u] {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    return true;
                }
                parent[a] = b;
            }
        }
    }
    false
}

/// Vertices of the component of `G[side]` containing `v`.
fn component_within(g: &CubicGraph, side: &[bool], v: usize) -> Vec<bool> {
    let mut comp = vec![false; g.order()];
    comp[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for u in g.neighbors(x) {
            if side[u] && !comp[u] {
                comp[u] = true;
                stack.push(u);
            }
        }
    }
    comp
}

/// A component of `G[side]` that contains a cycle.
fn cyclic_component(g: &CubicGraph, side: &[bool]) -> Option<Vec<bool>> {
    let n = g.order();
    let mut done = vec![false; n];
    for v in 0..n {
        if side[v] && !done[v] {
            let comp = component_within(g, side, v);
            if induces_cycle(g, &comp) {
                return Some(comp);
            }
            for x in 0..n {
                done[x] |= comp[x];
            }
        }
    }
    None
}

/// Turns a cyclic cut into a bond with both sides connected and cyclic,
/// never larger than the input cut.
fn normalize_cyclic_side(g: &CubicGraph, side: &[bool]) -> Vec<bool> {
    let a = cyclic_component(g, side).expect("side contains a cycle");
    let rest: Vec<bool> = a.iter().map(|&x| !x).collect();
    let b = cyclic_component(g, &rest).expect("complement contains a cycle");
    b.iter().map(|&x| !x).collect()
}

struct CyclicSearch<'a> {
    g: &'a CubicGraph,
    net: FlowNet<'a>,
    lower: usize,
    best: Option<(usize, Vec<bool>)>,
}

impl CyclicSearch<'_> {
    fn bound(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.0)
    }

    fn done(&self) -> bool {
        self.bound() <= self.lower
    }

    /// Records `side` if both it and its complement contain cycles.
    fn offer(&mut self, side: &[bool]) -> bool {
        if side.iter().all(|&x| x) || side.iter().all(|&x| !x) {
            return false;
        }
        let comp: Vec<bool> = side.iter().map(|&x| !x).collect();
        if !induces_cycle(self.g, side) || !induces_cycle(self.g, &comp) {
            return false;
        }
        let side = normalize_cyclic_side(self.g, side);
        let size = boundary(self.g, &side).len();
        if size < self.bound() {
            self.best = Some((size, side));
        }
        true
    }

    fn seed(&mut self, girth_cycle: &CycleWitness) {
        let n = self.g.order();
        let mut side = vec![false; n];
        for &v in &girth_cycle.vertices {
            side[v] = true;
        }
        self.offer(&side);
        let dist = all_distances(self.g);
        for v in 0..n {
            for r in 0..=2 {
                for gap in 1..=2 {
                    if self.done() {
                        return;
                    }
                    let src: Vec<bool> = (0..n).map(|u| dist[v][u] <= r).collect();
                    let snk: Vec<bool> = (0..n).map(|u| dist[v][u] > r + gap).collect();
                    if !snk.iter().any(|&x| x) {
                        continue;
                    }
                    self.try_pair(&src, &snk);
                }
            }
        }
    }

    /// Runs one flow and offers both extreme min cuts. Returns the flow value
    /// and whether either cut was cyclic.
    fn try_pair(&mut self, src: &[bool], snk: &[bool]) -> (usize, bool, Vec<bool>) {
        let limit = self.bound();
        let res = self.net.run(src, snk, limit);
        if res.value >= limit {
            return (res.value, false, res.source_side);
        }
        let a = self.offer(&res.source_side);
        let b = self.offer(&res.far_source_side);
        (res.value, a || b, res.source_side)
    }

    /// Explores all bonds whose near side contains `src` and far side `snk`.
    /// A found cyclic min cut between the sets is optimal for the subtree.
    fn branch(&mut self, src: &mut Vec<bool>, snk: &mut Vec<bool>) {
        if self.done() || !self.feasible(src, snk) || !self.feasible(snk, src) {
            return;
        }
        let (value, found, _) = self.try_pair(src, snk);
        if value >= self.bound() || found {
            return;
        }
        let n = self.g.order();
        let undecided = |v: usize| !src[v] && !snk[v];
        let size = |s: &[bool]| s.iter().filter(|&&x| x).count();
        // Grow the smaller side along its frontier.
        let (grow_src, first, second) = if size(src) <= size(snk) {
            (true, &*src, &*snk)
        } else {
            (false, &*snk, &*src)
        };
        let frontier = |side: &[bool]| {
            (0..n).find(|&v| undecided(v) && self.g.neighbors(v).iter().any(|&u| side[u]))
        };
        let Some(w) = frontier(first).or_else(|| frontier(second)) else {
            return;
        };
        let order = if grow_src {
            [true, false]
        } else {
            [false, true]
        };
        for to_src in order {
            if to_src {
                src[w] = true;
                self.branch(src, snk);
                src[w] = false;
            } else {
                snk[w] = true;
                self.branch(src, snk);
                snk[w] = false;
            }
        }
    }

    /// Whether `side` can still grow into a connected set containing a cycle
    /// using only undecided vertices.
    fn feasible(&self, side: &[bool], other: &[bool]) -> bool {
        let n = self.g.order();
        let Some(start) = (0..n).find(|&v| side[v]) else {
            return true;
        };
        let allowed: Vec<bool> = (0..n).map(|v| !other[v]).collect();
        let comp = component_within(self.g, &allowed, start);
        (0..n).all(|v| !side[v] || comp[v]) && induces_cycle(self.g, &comp)
    }
}

fn all_distances(g: &CubicGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for u in g.neighbors(v) {
                    if d[u] == usize::MAX {
                        d[u] = d[v] + 1;
                        q.push_back(u);
                    }
                }
            }
            d
        })
        .collect()
}

/// Exact cyclic edge connectivity.
///
/// Lower bound: edge connectivity. Upper bounds come from the girth cycle and
/// from ball-shaped seeds; a branch-and-bound over vertex assignments, pruned
/// by max-flow between the assigned sets, closes the gap.
pub fn cyclic_edge_connectivity(g: &CubicGraph) -> CyclicConnectivityResult {
    let (lower, _) = edge_connectivity(g);
    let (_, girth_cycle) = super::girth::girth(g);
    match min_cyclic_cut(g, lower, usize::MAX, Some(&girth_cycle)) {
        Some((value, side)) => {
            let edges = boundary(g, &side);
            debug_assert_eq!(edges.len(), value);
            let side = (0..g.order()).filter(|&v| side[v]).collect();
            CyclicConnectivityResult {
                value: CyclicConnectivity::Bounded(value),
                witness: Some(CutWitness { edges, side }),
            }
        }
        None => CyclicConnectivityResult {
            value: CyclicConnectivity::Unbounded,
            witness: None,
        },
    }
}

/// A cyclic cut of size at most `at_most`, if any. Used to split
/// 3-edge-connected graphs along non-trivial 3-edge cuts.
pub(crate) fn cyclic_cut_at_most(g: &CubicGraph, at_most: usize) -> Option<Vec<bool>> {
    let (lower, _) = edge_connectivity(g);
    min_cyclic_cut(g, lower, at_most + 1, None).map(|(_, side)| side)
}

/// Minimum cyclic cut strictly below `ceiling`, searching no lower than `lower`.
fn min_cyclic_cut(
    g: &CubicGraph,
    lower: usize,
    ceiling: usize,
    girth_cycle: Option<&CycleWitness>,
) -> Option<(usize, Vec<bool>)> {
    let n = g.order();
    let mut search = CyclicSearch {
        g,
        net: FlowNet::new(g),
        lower,
        best: None,
    };
    if ceiling != usize::MAX {
        // Pretend a cut of size `ceiling` is known so only smaller ones count.
        search.best = Some((ceiling, Vec::new()));
    }
    let owned;
    let cycle = match girth_cycle {
        Some(c) => c,
        None => {
            owned = super::girth::girth(g).1;
            &owned
        }
    };
    search.seed(cycle);
    // Partition the space by the smallest vertex placed on the far side; the
    // near side always holds vertex 0.
    for y in 1..n {
        if search.done() {
            break;
        }
        let mut src: Vec<bool> = (0..n).map(|v| v < y).collect();
        let mut snk: Vec<bool> = (0..n).map(|v| v == y).collect();
        search.branch(&mut src, &mut snk);
    }
    match search.best {
        Some((size, side)) if !side.is_empty() => Some((size, side)),
        _ => None,
    }
}
