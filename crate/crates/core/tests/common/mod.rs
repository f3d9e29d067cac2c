//! Brute-force oracles, deliberately naive and independent of the library's
//! algorithms. Graphs are plain adjacency lists.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Mutex;

use prisonforge::CubicGraph;

pub type Adj = Vec<Vec<usize>>;

pub fn adjacency(g: &CubicGraph) -> Adj {
    (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect()
}

pub fn to_graph(adj: &Adj) -> CubicGraph {
    CubicGraph::from_lists(adj.clone()).expect("oracle graphs are cubic and connected")
}

pub fn connected(adj: &Adj) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn dist_at_least(adj: &Adj, a: usize, b: usize, d: usize) -> bool {
    // Breadth-first layers up to depth d - 1.
    let mut seen = vec![false; adj.len()];
    let mut layer = vec![a];
    seen[a] = true;
    for _ in 0..d.saturating_sub(1) {
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    !seen[b]
}

/// Every labelled connected cubic graph on `n` vertices with girth at least
/// `girth_min` in which vertex 0 is adjacent to 1, 2 and 3. Every
/// isomorphism class has such a labelling.
pub fn labelled_cubic(n: usize, girth_min: usize) -> Vec<Adj> {
    let mut adj: Adj = vec![Vec::new(); n];
    for v in 1..4 {
        adj[0].push(v);
        adj[v].push(0);
    }
    let mut out = Vec::new();
    fill(&mut adj, girth_min, &mut out);
    out
}

/// Completes the smallest unfinished vertex, partners in increasing order,
/// so each labelled edge set is produced once.
fn fill(adj: &mut Adj, girth_min: usize, out: &mut Vec<Adj>) {
    let Some(u) = (0..adj.len()).find(|&v| adj[v].len() < 3) else {
        if connected(adj) {
            out.push(adj.clone());
        }
        return;
    };
    let floor = adj[u].iter().copied().filter(|&w| w > u).max().unwrap_or(u);
    for w in floor + 1..adj.len() {
        if adj[w].len() < 3 && !adj[u].contains(&w) && dist_at_least(adj, u, w, girth_min - 1) {
            adj[u].push(w);
            adj[w].push(u);
            fill(adj, girth_min, out);
            adj[u].pop();
            adj[w].pop();
        }
    }
}

/// Isomorphism by extending a vertex map one vertex at a time, checking
/// adjacency against every mapped vertex.
pub fn isomorphic(a: &Adj, b: &Adj) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let am = matrix(a);
    let bm = matrix(b);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &am, &bm, &mut map, &mut used)
}

fn matrix(adj: &Adj) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut m = vec![vec![false; n]; n];
    for (v, ns) in adj.iter().enumerate() {
        for &u in ns {
            m[v][u] = true;
        }
    }
    m
}

fn extend(
    v: usize,
    a: &[Vec<bool>],
    b: &[Vec<bool>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if v == n {
        return true;
    }
    for t in 0..n {
        if used[t] || (0..v).any(|u| a[v][u] != b[t][map[u]]) {
            continue;
        }
        map[v] = t;
        used[t] = true;
        if extend(v + 1, a, b, map, used) {
            return true;
        }
        used[t] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Sorted per-vertex counts of vertices at each distance; equal for
/// isomorphic graphs.
fn invariant(adj: &Adj) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut rows: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &u in &adj[v] {
                    if d[u] == usize::MAX {
                        d[u] = d[v] + 1;
                        q.push_back(u);
                    }
                }
            }
            let mut counts = vec![0; n];
            for x in d {
                counts[x] += 1;
            }
            counts
        })
        .collect();
    rows.sort();
    rows
}

/// One representative per isomorphism class.
pub fn classes(graphs: Vec<Adj>) -> Vec<Adj> {
    let mut buckets: std::collections::HashMap<Vec<Vec<usize>>, Vec<Adj>> = Default::default();
    let mut reps = Vec::new();
    for g in graphs {
        let bucket = buckets.entry(invariant(&g)).or_default();
        if !bucket.iter().any(|h| isomorphic(h, &g)) {
            bucket.push(g.clone());
            reps.push(g);
        }
    }
    reps
}

/// Connected cubic graphs on `n` vertices with girth at least `girth_min`,
/// one per isomorphism class. Memoized per test binary.
pub fn cubic_classes(n: usize, girth_min: usize) -> Vec<Adj> {
    static CACHE: Mutex<BTreeMap<(usize, usize), Vec<Adj>>> = Mutex::new(BTreeMap::new());
    if let Some(hit) = CACHE.lock().unwrap().get(&(n, girth_min)) {
        return hit.clone();
    }
    let reps = classes(labelled_cubic(n, girth_min));
    CACHE.lock().unwrap().insert((n, girth_min), reps.clone());
    reps
}

/// Length of a shortest cycle, by trying every simple path.
pub fn girth(adj: &Adj) -> usize {
    let n = adj.len();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        shortest_closing(adj, s, s, 1, &mut on, &mut best);
    }
    best
}

fn shortest_closing(adj: &Adj, s: usize, v: usize, len: usize, on: &mut [bool], best: &mut usize) {
    if len >= *best {
        return;
    }
    for &u in &adj[v] {
        if u == s && len >= 3 {
            *best = (*best).min(len);
        } else if !on[u] && u > s {
            on[u] = true;
            shortest_closing(adj, s, u, len + 1, on, best);
            on[u] = false;
        }
    }
}

/// Hamiltonian cycle by enumerating simple paths from vertex 0.
pub fn hamiltonian(adj: &Adj) -> bool {
    let n = adj.len();
    let mut on = vec![false; n];
    on[0] = true;
    ham_path(adj, 0, 1, &mut on)
}

fn ham_path(adj: &Adj, v: usize, len: usize, on: &mut [bool]) -> bool {
    if len == adj.len() {
        return adj[v].contains(&0);
    }
    for &u in &adj[v] {
        if !on[u] {
            on[u] = true;
            if ham_path(adj, u, len + 1, on) {
                return true;
            }
            on[u] = false;
        }
    }
    false
}

fn edges(adj: &Adj) -> Vec<(usize, usize)> {
    let mut es = Vec::new();
    for (v, ns) in adj.iter().enumerate() {
        for &u in ns {
            if v < u {
                es.push((v, u));
            }
        }
    }
    es
}

fn without(adj: &Adj, cut: &[(usize, usize)]) -> Adj {
    adj.iter()
        .enumerate()
        .map(|(v, ns)| {
            ns.iter()
                .copied()
                .filter(|&u| !cut.contains(&(v.min(u), v.max(u))))
                .collect()
        })
        .collect()
}

/// Smallest number of edges whose removal disconnects the graph, trying
/// every set of one and two edges (a vertex star always works with three).
pub fn edge_connectivity(adj: &Adj) -> usize {
    let es = edges(adj);
    for &e in &es {
        if !connected(&without(adj, &[e])) {
            return 1;
        }
    }
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if !connected(&without(adj, &[es[i], es[j]])) {
                return 2;
            }
        }
    }
    3
}

/// Minimum over all vertex bipartitions whose sides both induce a cycle of
/// the number of crossing edges; `None` when no such bipartition exists.
pub fn cyclic_edge_connectivity(adj: &Adj) -> Option<usize> {
    let n = adj.len();
    let es = edges(adj);
    let mut best = None;
    for mask in 1u64..(1 << (n - 1)) {
        let side = |v: usize| mask >> v & 1 == 1;
        if has_cycle(adj, &side) && has_cycle(adj, &|v| !side(v)) {
            let cut = es.iter().filter(|&&(a, b)| side(a) != side(b)).count();
            best = Some(best.map_or(cut, |b: usize| b.min(cut)));
        }
    }
    best
}

/// Whether the subgraph induced by `inside` has a cycle: some component has
/// at least as many edges as vertices.
fn has_cycle(adj: &Adj, inside: &dyn Fn(usize) -> bool) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    for s in (0..n).filter(|&v| inside(v)) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let (mut verts, mut degs) = (0, 0);
        while let Some(v) = stack.pop() {
            verts += 1;
            for &u in &adj[v] {
                if inside(u) {
                    degs += 1;
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        if degs / 2 >= verts {
            return true;
        }
    }
    false
}
