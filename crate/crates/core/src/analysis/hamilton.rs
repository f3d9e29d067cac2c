//! Exact Hamiltonicity by backtracking over edge states.
//!
//! Each edge is undecided, in the cycle, or out of it. Propagation keeps
//! every vertex at two cycle edges: two in-edges exclude the third, one
//! out-edge forces the other two, two out-edges fail. Path fragments track
//! their endpoints so an edge closing a fragment early is excluded. A
//! branch dies as soon as the graph of non-excluded edges has a bridge or
//! is disconnected. Branching takes the lowest-index path end, else the
//! lowest-index vertex with an undecided edge, trying "in" before "out".
//!
//! Large 3-edge-connected graphs are first split along non-trivial 3-edge
//! cuts: a Hamiltonian cycle uses exactly two edges of such a cut, so the
//! question reduces to the two sides with the other side contracted to a
//! single vertex.

use super::cuts::{cyclic_cut_at_most, edge_connectivity};
use super::{CycleWitness, HamiltonicityResult, Verdict};
use crate::graph::{CubicGraph, Edge};

/// Orders at which the 3-edge-cut split is attempted.
const DECOMPOSE_MIN: usize = 32;

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Decides Hamiltonicity and returns a cycle when one exists.
pub fn is_hamiltonian(g: &CubicGraph) -> HamiltonicityResult {
    solve_with(g, DECOMPOSE_MIN)
}

/// The backtracking search alone, without cut decomposition.
pub fn is_hamiltonian_plain(g: &CubicGraph) -> HamiltonicityResult {
    solve_with(g, usize::MAX)
}

pub(crate) fn solve_with(g: &CubicGraph, decompose_min: usize) -> HamiltonicityResult {
    let mut nodes = 0;
    let cycle = solve(g, &[], decompose_min, &mut nodes);
    let certificate = cycle.map(|vertices| CycleWitness { vertices });
    if let Some(c) = &certificate {
        assert!(
            c.len() == g.order() && c.is_valid_in(g),
            "invalid Hamiltonian certificate"
        );
    }
    HamiltonicityResult {
        verdict: if certificate.is_some() {
            Verdict::Hamiltonian
        } else {
            Verdict::NonHamiltonian
        },
        certificate,
        nodes,
    }
}

/// A Hamiltonian cycle of `g` that uses none of `excluded`.
fn solve(
    g: &CubicGraph,
    excluded: &[Edge],
    decompose_min: usize,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    if g.order() >= decompose_min && edge_connectivity(g).0 == 3 {
        if let Some(side) = cyclic_cut_at_most(g, 3) {
            return solve_split(g, excluded, &side, decompose_min, nodes);
        }
    }
    Search::new(g).run(excluded, nodes)
}

/// One side of a 3-edge cut with the other side contracted to vertex `star`.
struct Contracted {
    graph: CubicGraph,
    /// Original label of each local vertex except `star`.
    original: Vec<usize>,
    star: usize,
    /// Local endpoint of each cut edge on this side.
    ports: [usize; 3],
}

fn contract(g: &CubicGraph, keep: &[bool], cut: &[Edge]) -> Contracted {
    let n = g.order();
    let original: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in original.iter().enumerate() {
        local[v] = i;
    }
    let star = original.len();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|e| keep[e.lo()] && keep[e.hi()])
        .map(|e| (local[e.lo()], local[e.hi()]))
        .collect();
    let mut ports = [0; 3];
    for (i, e) in cut.iter().enumerate() {
        let inside = if keep[e.lo()] { e.lo() } else { e.hi() };
        ports[i] = local[inside];
        edges.push((local[inside], star));
    }
    let graph =
        CubicGraph::from_edges(star + 1, &edges).expect("contraction of a 3-edge cut is cubic");
    Contracted {
        graph,
        original,
        star,
        ports,
    }
}

impl Contracted {
    /// Maps exclusions of the whole graph onto this side. Excluded cut edges
    /// become excluded star edges; `skip` excludes one more.
    fn exclusions(&self, excluded: &[Edge], cut: &[Edge], skip: Option<usize>) -> Vec<Edge> {
        let mut local = std::collections::HashMap::new();
        for (i, &v) in self.original.iter().enumerate() {
            local.insert(v, i);
        }
        let mut out: Vec<Edge> = excluded
            .iter()
            .filter_map(|e| Some(Edge::new(*local.get(&e.lo())?, *local.get(&e.hi())?)))
            .collect();
        for (j, e) in cut.iter().enumerate() {
            if Some(j) == skip || excluded.contains(e) {
                out.push(Edge::new(self.ports[j], self.star));
            }
        }
        out
    }

    /// Turns a Hamiltonian cycle of the contracted graph into a path through
    /// this side, in original labels, from one port to another.
    fn path(&self, cycle: &[usize]) -> Vec<usize> {
        let at = cycle.iter().position(|&v| v == self.star).unwrap();
        let k = cycle.len();
        (1..k).map(|i| self.original[cycle[(at + i) % k]]).collect()
    }
}

fn solve_split(
    g: &CubicGraph,
    excluded: &[Edge],
    side: &[bool],
    decompose_min: usize,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    let cut = super::cuts::boundary(g, side);
    debug_assert_eq!(cut.len(), 3);
    let rest: Vec<bool> = side.iter().map(|&x| !x).collect();
    let a = contract(g, side, &cut);
    let b = contract(g, &rest, &cut);
    let (small, large) = if a.graph.order() <= b.graph.order() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    // Which cut edge a cycle may leave unused, judged by the small side.
    let mut small_cycles: [Option<Vec<usize>>; 3] = [None, None, None];
    for (skip, slot) in small_cycles.iter_mut().enumerate() {
        if (0..3).any(|j| j != skip && excluded.contains(&cut[j])) {
            continue;
        }
        *slot = solve(
            &small.graph,
            &small.exclusions(excluded, &cut, Some(skip)),
            decompose_min,
            nodes,
        );
    }
    let feasible: Vec<usize> = (0..3).filter(|&k| small_cycles[k].is_some()).collect();
    let large_cycle = match feasible.len() {
        0 => None,
        // The small side behaves like a single vertex: no constraint beyond
        // the caller's own exclusions.
        3 => solve(
            &large.graph,
            &large.exclusions(excluded, &cut, None),
            decompose_min,
            nodes,
        ),
        _ => feasible.iter().find_map(|&k| {
            solve(
                &large.graph,
                &large.exclusions(excluded, &cut, Some(k)),
                decompose_min,
                nodes,
            )
        }),
    }?;
    let at = large_cycle.iter().position(|&v| v == large.star).unwrap();
    let k = large_cycle.len();
    let used = [large_cycle[(at + 1) % k], large_cycle[(at + k - 1) % k]];
    let skip = (0..3).find(|&j| !used.contains(&large.ports[j])).unwrap();
    let ps = small.path(small_cycles[skip].as_ref().expect("skip is feasible"));
    let mut pl = large.path(&large_cycle);
    // The path through the large side must start across the cut from where
    // the small-side path ends.
    let last = *ps.last().unwrap();
    if !g.has_edge(last, pl[0]) {
        pl.reverse();
    }
    let mut cycle = ps;
    cycle.extend(pl);
    Some(cycle)
}

struct Search<'a> {
    g: &'a CubicGraph,
    n: usize,
    edges: Vec<Edge>,
    slot_edge: Vec<[usize; 3]>,
}

#[derive(Clone)]
struct State {
    es: Vec<u8>,
    inc: Vec<u8>,
    outc: Vec<u8>,
    /// For a path end, the other end of its fragment; `v` itself when free.
    end: Vec<usize>,
    in_total: usize,
    closed: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a CubicGraph) -> Self {
        let edges = g.edges();
        let slot_edge = (0..g.order())
            .map(|v| {
                let nb = g.neighbors(v);
                [0, 1, 2].map(|s| edges.binary_search(&Edge::new(v, nb[s])).unwrap())
            })
            .collect();
        Search {
            g,
            n: g.order(),
            edges,
            slot_edge,
        }
    }

    fn run(&self, excluded: &[Edge], nodes: &mut u64) -> Option<Vec<usize>> {
        let mut st = State {
            es: vec![UNDECIDED; self.edges.len()],
            inc: vec![0; self.n],
            outc: vec![0; self.n],
            end: (0..self.n).collect(),
            in_total: 0,
            closed: false,
        };
        let mut queue = Vec::new();
        for e in excluded {
            let Ok(i) = self.edges.binary_search(e) else {
                continue;
            };
            if !self.set_out(&mut st, i, &mut queue) {
                return None;
            }
        }
        // Both edges of every 2-edge cut of the usable graph are forced in.
        for i in 0..self.edges.len() {
            if st.es[i] == OUT {
                continue;
            }
            let mut skip = st.es.clone();
            skip[i] = OUT;
            for f in self.bridges_of(&skip) {
                if !self.set_in(&mut st, i, &mut queue) || !self.set_in(&mut st, f, &mut queue) {
                    return None;
                }
            }
        }
        if !self.propagate(&mut st, &mut queue) {
            return None;
        }
        let st = self.dfs(st, nodes)?;
        Some(self.extract(&st))
    }

    fn dfs(&self, st: State, nodes: &mut u64) -> Option<State> {
        *nodes += 1;
        if st.closed {
            return Some(st);
        }
        if !self.usable_graph_ok(&st.es) {
            return None;
        }
        let (v, s) = self.pick(&st)?;
        let e = self.slot_edge[v][s];
        let mut queue = Vec::new();
        let mut child = st.clone();
        if self.set_in(&mut child, e, &mut queue) && self.propagate(&mut child, &mut queue) {
            if let Some(done) = self.dfs(child, nodes) {
                return Some(done);
            }
        }
        let mut child = st;
        queue.clear();
        if self.set_out(&mut child, e, &mut queue) && self.propagate(&mut child, &mut queue) {
            return self.dfs(child, nodes);
        }
        None
    }

    fn pick(&self, st: &State) -> Option<(usize, usize)> {
        let undecided_slot = |v: usize| (0..3).find(|&s| st.es[self.slot_edge[v][s]] == UNDECIDED);
        (0..self.n)
            .filter(|&v| st.inc[v] == 1)
            .find_map(|v| undecided_slot(v).map(|s| (v, s)))
            .or_else(|| (0..self.n).find_map(|v| undecided_slot(v).map(|s| (v, s))))
    }

    fn set_in(&self, st: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        match st.es[e] {
            IN => return true,
            OUT => return false,
            _ => {}
        }
        let (a, b) = (self.edges[e].lo(), self.edges[e].hi());
        if st.inc[a] == 2 || st.inc[b] == 2 {
            return false;
        }
        let (x, y) = (st.end[a], st.end[b]);
        if x == b {
            // Closes a fragment into a cycle.
            if st.in_total + 1 != self.n {
                return false;
            }
            st.closed = true;
        } else {
            st.end[x] = y;
            st.end[y] = x;
        }
        st.es[e] = IN;
        st.inc[a] += 1;
        st.inc[b] += 1;
        st.in_total += 1;
        queue.push(a);
        queue.push(b);
        if !st.closed && st.in_total + 1 < self.n {
            if let Some(s) = self.g.neighbors(x).iter().position(|&u| u == y) {
                let f = self.slot_edge[x][s];
                if st.es[f] == UNDECIDED && !self.set_out(st, f, queue) {
                    return false;
                }
            }
        }
        true
    }

    fn set_out(&self, st: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        match st.es[e] {
            OUT => return true,
            IN => return false,
            _ => {}
        }
        let (a, b) = (self.edges[e].lo(), self.edges[e].hi());
        st.es[e] = OUT;
        st.outc[a] += 1;
        st.outc[b] += 1;
        queue.push(a);
        queue.push(b);
        st.outc[a] < 2 && st.outc[b] < 2
    }

    fn propagate(&self, st: &mut State, queue: &mut Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            if st.outc[v] >= 2 {
                return false;
            }
            let want = if st.inc[v] == 2 {
                OUT
            } else if st.outc[v] == 1 {
                IN
            } else {
                continue;
            };
            for s in 0..3 {
                let e = self.slot_edge[v][s];
                if st.es[e] != UNDECIDED {
                    continue;
                }
                let ok = if want == IN {
                    self.set_in(st, e, queue)
                } else {
                    self.set_out(st, e, queue)
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The graph of non-excluded edges is connected and bridgeless.
    fn usable_graph_ok(&self, es: &[u8]) -> bool {
        let mut count = 0;
        let found = self.bridge_scan(es, |_| count += 1);
        found == self.n && count == 0
    }

    fn bridges_of(&self, es: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        self.bridge_scan(es, |e| out.push(e));
        out
    }

    /// Depth-first lowlink scan from vertex 0 over edges not marked out.
    /// Reports each bridge and returns the number of vertices reached.
    fn bridge_scan(&self, es: &[u8], mut on_bridge: impl FnMut(usize)) -> usize {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        // (vertex, edge used to enter, next slot)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, via, slot) = *top;
            if slot < 3 {
                top.2 += 1;
                let e = self.slot_edge[v][slot];
                if e == via || es[e] == OUT {
                    continue;
                }
                let u = self.edges[e].other(v);
                if disc[u] == usize::MAX {
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, e, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        on_bridge(via);
                    }
                }
            }
        }
        time
    }

    fn extract(&self, st: &State) -> Vec<usize> {
        let mut cycle = Vec::with_capacity(self.n);
        let (mut prev, mut cur) = (usize::MAX, 0);
        loop {
            cycle.push(cur);
            let next = (0..3)
                .filter(|&s| st.es[self.slot_edge[cur][s]] == IN)
                .map(|s| self.g.neighbors(cur)[s])
                .find(|&u| u != prev)
                .unwrap();
            if next == 0 {
                break;
            }
            prev = cur;
            cur = next;
        }
        cycle
    }
}
