//! The bridge, two-edge, two-bond and three-edge constructions, eligible
//! edge/vertex selection, naive order bounds and girth-graph sourcing.
//!
//! Every construction checks its own claims with [`crate::analysis`] before
//! returning; a claim that fails is an error, never a silent result.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{
    analyze, girth_cycle_avoiding, girth_length, AnalysisReport, Avoid, CycleWitness,
    CyclicConnectivity,
};
use crate::catalog::Named;
use crate::graph::{CubicGraph, Edge, GraphError};
use crate::graph6::emit_graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no edge avoids some shortest cycle")]
    NoEligibleEdge,
    #[error("no vertex avoids some shortest cycle")]
    NoEligibleVertex,
    #[error("edge {0} is not usable here")]
    InvalidEdge(Edge),
    #[error("vertex {0} is not usable here")]
    InvalidVertex(usize),
    #[error("expected {expected} parts, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("no cage order on file for girth {0}")]
    UnsupportedGirth(usize),
    #[error("edge connectivity class must be 1, 2 or 3, got {0}")]
    UnsupportedConnectivity(usize),
    #[error("no cubic graph of girth {girth} found within {cap} vertices")]
    NotFoundWithinCap { girth: usize, cap: usize },
    #[error("claim failed: {claim} expected {expected}, found {found}")]
    ClaimFailed {
        claim: &'static str,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstructionKind {
    Bridge,
    TwoEdge,
    TwoBond,
    ThreeEdge,
}

/// How an output was assembled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recipe {
    pub kind: ConstructionKind,
    /// graph6 of each input, in argument order (base first for three-edge).
    pub inputs: Vec<String>,
    /// Broken edges, one per input that had one, in input labels.
    pub edges: Vec<Edge>,
    /// Removed vertices (three-edge), one per part, in part labels.
    pub vertices: Vec<usize>,
    /// `mapping[i][v]` is the output label of vertex `v` of input `i`, or
    /// `None` when the vertex was removed. The base of a three-edge
    /// construction has no mapping of its own.
    pub mapping: Vec<Vec<Option<usize>>>,
}

/// Properties a construction promises for its output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claims {
    pub order: usize,
    pub girth: usize,
    /// Whether `girth` is exact or only a lower bound.
    pub girth_exact: bool,
    pub edge_connectivity: Option<usize>,
    pub non_hamiltonian: bool,
    pub cyclic_connectivity: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    #[serde(skip)]
    pub graph: CubicGraph,
    pub recipe: Recipe,
    pub expected: Claims,
    /// The analysis every claim was checked against.
    pub report: AnalysisReport,
}

/// The lexicographically first edge missed by some shortest cycle.
pub fn select_edge(g: &CubicGraph) -> Result<(Edge, CycleWitness), ConstructionError> {
    g.edges()
        .into_iter()
        .find_map(|e| girth_cycle_avoiding(g, Avoid::Edge(e)).map(|w| (e, w)))
        .ok_or(ConstructionError::NoEligibleEdge)
}

/// The lowest-index vertex missed by some shortest cycle.
pub fn select_vertex(g: &CubicGraph) -> Result<(usize, CycleWitness), ConstructionError> {
    (0..g.order())
        .find_map(|v| girth_cycle_avoiding(g, Avoid::Vertex(v)).map(|w| (v, w)))
        .ok_or(ConstructionError::NoEligibleVertex)
}

fn check_edge(g: &CubicGraph, e: Edge) -> Result<(), ConstructionError> {
    if e.hi() < g.order() && g.contains_edge(e) {
        Ok(())
    } else {
        Err(ConstructionError::InvalidEdge(e))
    }
}

fn eligible_edge(g: &CubicGraph, e: Edge) -> bool {
    girth_cycle_avoiding(g, Avoid::Edge(e)).is_some()
}

fn all_three_connected(inputs: &[&CubicGraph]) -> bool {
    inputs
        .iter()
        .all(|g| crate::analysis::edge_connectivity(g).0 == 3)
}

/// Edges of `g` with every vertex shifted by `offset`, skipping `broken`.
fn shifted_edges(g: &CubicGraph, offset: usize, broken: Option<Edge>) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&e| Some(e) != broken)
        .map(|e| (e.lo() + offset, e.hi() + offset))
        .collect()
}

fn shift_map(order: usize, offset: usize) -> Vec<Option<usize>> {
    (0..order).map(|v| Some(v + offset)).collect()
}

/// Girth after breaking `e`: cycles through `e` grow by one, so the girth
/// survives exactly when `e` is eligible.
fn girth_after_break(g: &CubicGraph, e: Edge) -> usize {
    let len = girth_length(g);
    if eligible_edge(g, e) {
        len
    } else {
        len + 1
    }
}

/// Subdivides `ea` and `eb` and joins the two new vertices by a bridge.
///
/// Ineligible edges are accepted; the girth claim then rises by one on
/// that side.
pub fn bridge_construct(
    a: &CubicGraph,
    ea: Edge,
    b: &CubicGraph,
    eb: Edge,
) -> Result<ConstructionResult, ConstructionError> {
    check_edge(a, ea)?;
    check_edge(b, eb)?;
    let (na, nb) = (a.order(), b.order());
    let (wa, wb) = (na + nb, na + nb + 1);
    let mut edges = shifted_edges(a, 0, Some(ea));
    edges.extend(shifted_edges(b, na, Some(eb)));
    edges.extend([
        (ea.lo(), wa),
        (ea.hi(), wa),
        (eb.lo() + na, wb),
        (eb.hi() + na, wb),
        (wa, wb),
    ]);
    let graph = CubicGraph::from_edges(na + nb + 2, &edges)?;
    let expected = Claims {
        order: na + nb + 2,
        girth: girth_after_break(a, ea).min(girth_after_break(b, eb)),
        girth_exact: true,
        edge_connectivity: Some(1),
        non_hamiltonian: true,
        cyclic_connectivity: None,
    };
    let recipe = Recipe {
        kind: ConstructionKind::Bridge,
        inputs: vec![emit_graph6(a), emit_graph6(b)],
        edges: vec![ea, eb],
        vertices: Vec::new(),
        mapping: vec![shift_map(na, 0), shift_map(nb, na)],
    };
    verified(graph, recipe, expected)
}

/// Breaks `ea` and `eb`, joins them into a 2-bond through new vertices x
/// and y, and hangs the broken `ec` off x and y. Lower endpoints meet at x,
/// higher endpoints at y.
pub fn two_edge_construct(
    a: &CubicGraph,
    ea: Edge,
    b: &CubicGraph,
    eb: Edge,
    c: &CubicGraph,
    ec: Edge,
) -> Result<ConstructionResult, ConstructionError> {
    for (g, e) in [(a, ea), (b, eb), (c, ec)] {
        check_edge(g, e)?;
        if !eligible_edge(g, e) {
            return Err(ConstructionError::InvalidEdge(e));
        }
    }
    let (na, nb, nc) = (a.order(), b.order(), c.order());
    let (ob, oc) = (na, na + nb);
    let (x, y) = (na + nb + nc, na + nb + nc + 1);
    let mut edges = shifted_edges(a, 0, Some(ea));
    edges.extend(shifted_edges(b, ob, Some(eb)));
    edges.extend(shifted_edges(c, oc, Some(ec)));
    edges.extend([
        (ea.lo(), x),
        (eb.lo() + ob, x),
        (ec.lo() + oc, x),
        (ea.hi(), y),
        (eb.hi() + ob, y),
        (ec.hi() + oc, y),
    ]);
    let graph = CubicGraph::from_edges(na + nb + nc + 2, &edges)?;
    let expected = Claims {
        order: na + nb + nc + 2,
        girth: girth_length(a).min(girth_length(b)).min(girth_length(c)),
        girth_exact: true,
        edge_connectivity: all_three_connected(&[a, b, c]).then_some(2),
        non_hamiltonian: true,
        cyclic_connectivity: None,
    };
    let recipe = Recipe {
        kind: ConstructionKind::TwoEdge,
        inputs: vec![emit_graph6(a), emit_graph6(b), emit_graph6(c)],
        edges: vec![ea, eb, ec],
        vertices: Vec::new(),
        mapping: vec![shift_map(na, 0), shift_map(nb, ob), shift_map(nc, oc)],
    };
    verified(graph, recipe, expected)
}

/// Breaks `ea` and `eb` and rejoins the loose ends as a 2-bond: lower
/// endpoint to lower endpoint, higher to higher.
///
/// Non-Hamiltonicity is claimed only when an input is non-Hamiltonian: a
/// Hamiltonian cycle of the output would cross the bond twice and close
/// into Hamiltonian cycles of both inputs through the broken edges.
pub fn two_bond_join(
    a: &CubicGraph,
    ea: Edge,
    b: &CubicGraph,
    eb: Edge,
) -> Result<ConstructionResult, ConstructionError> {
    check_edge(a, ea)?;
    check_edge(b, eb)?;
    let (na, nb) = (a.order(), b.order());
    let mut edges = shifted_edges(a, 0, Some(ea));
    edges.extend(shifted_edges(b, na, Some(eb)));
    edges.extend([(ea.lo(), eb.lo() + na), (ea.hi(), eb.hi() + na)]);
    let graph = CubicGraph::from_edges(na + nb, &edges)?;
    let (ga, gb) = (girth_length(a), girth_length(b));
    let girth = ga.min(gb);
    // Cycles through the bond are at least ga + gb long, so the minimum
    // survives when the input attaining it keeps a shortest cycle.
    let girth_exact =
        (ga == girth && eligible_edge(a, ea)) || (gb == girth && eligible_edge(b, eb));
    let non_hamiltonian = !crate::analysis::is_hamiltonian(a).is_hamiltonian()
        || !crate::analysis::is_hamiltonian(b).is_hamiltonian();
    let expected = Claims {
        order: na + nb,
        girth,
        girth_exact,
        edge_connectivity: all_three_connected(&[a, b]).then_some(2),
        non_hamiltonian,
        cyclic_connectivity: None,
    };
    let recipe = Recipe {
        kind: ConstructionKind::TwoBond,
        inputs: vec![emit_graph6(a), emit_graph6(b)],
        edges: vec![ea, eb],
        vertices: Vec::new(),
        mapping: vec![shift_map(na, 0), shift_map(nb, na)],
    };
    verified(graph, recipe, expected)
}

/// Replaces every vertex `i` of `base` by `parts[i]` with its chosen vertex
/// removed. The three loose ends of part `i`, in ascending order of the
/// removed vertex's neighbors, are wired to the base edges at `i` in
/// ascending order of base neighbor.
pub fn three_edge_construct(
    base: &CubicGraph,
    parts: &[(CubicGraph, usize)],
) -> Result<ConstructionResult, ConstructionError> {
    let m = base.order();
    if parts.len() != m {
        return Err(ConstructionError::ArityMismatch {
            expected: m,
            found: parts.len(),
        });
    }
    for (g, v) in parts {
        if *v >= g.order() || girth_cycle_avoiding(g, Avoid::Vertex(*v)).is_none() {
            return Err(ConstructionError::InvalidVertex(*v));
        }
    }
    let mut mapping = Vec::with_capacity(m);
    let mut offset = 0;
    for (g, v) in parts {
        let map: Vec<Option<usize>> = (0..g.order())
            .map(|u| match u.cmp(v) {
                std::cmp::Ordering::Less => Some(offset + u),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(offset + u - 1),
            })
            .collect();
        offset += g.order() - 1;
        mapping.push(map);
    }
    let order = offset;
    let mut edges = Vec::new();
    for (i, (g, v)) in parts.iter().enumerate() {
        for e in g.edges() {
            if !e.contains(*v) {
                edges.push((mapping[i][e.lo()].unwrap(), mapping[i][e.hi()].unwrap()));
            }
        }
    }
    let stub = |i: usize, j: usize| {
        let (g, v) = &parts[i];
        mapping[i][g.neighbors(*v)[j]].unwrap()
    };
    for e in base.edges() {
        let (i, t) = (e.lo(), e.hi());
        let j = base.neighbors(i).iter().position(|&u| u == t).unwrap();
        let k = base.neighbors(t).iter().position(|&u| u == i).unwrap();
        edges.push((stub(i, j), stub(t, k)));
    }
    let graph = CubicGraph::from_edges(order, &edges)?;
    let girths: Vec<usize> = parts.iter().map(|(g, _)| girth_length(g)).collect();
    let mut inputs: Vec<&CubicGraph> = parts.iter().map(|(g, _)| g).collect();
    inputs.push(base);
    let three = all_three_connected(&inputs);
    let expected = Claims {
        order,
        girth: *girths.iter().min().unwrap(),
        girth_exact: true,
        edge_connectivity: three.then_some(3),
        non_hamiltonian: !crate::analysis::is_hamiltonian(base).is_hamiltonian(),
        cyclic_connectivity: three.then_some(3),
    };
    let mut all_inputs = vec![emit_graph6(base)];
    all_inputs.extend(parts.iter().map(|(g, _)| emit_graph6(g)));
    let recipe = Recipe {
        kind: ConstructionKind::ThreeEdge,
        inputs: all_inputs,
        edges: Vec::new(),
        vertices: parts.iter().map(|(_, v)| *v).collect(),
        mapping,
    };
    verified(graph, recipe, expected)
}

fn claim_failed(
    claim: &'static str,
    expected: impl ToString,
    found: impl ToString,
) -> ConstructionError {
    ConstructionError::ClaimFailed {
        claim,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Analyzes the output and checks every claim against it.
fn verified(
    graph: CubicGraph,
    recipe: Recipe,
    expected: Claims,
) -> Result<ConstructionResult, ConstructionError> {
    let report = analyze(&graph);
    if report.order != expected.order {
        return Err(claim_failed("order", expected.order, report.order));
    }
    let girth_ok = if expected.girth_exact {
        report.girth == expected.girth
    } else {
        report.girth >= expected.girth
    };
    if !girth_ok {
        return Err(claim_failed("girth", expected.girth, report.girth));
    }
    if let Some(k) = expected.edge_connectivity {
        if report.edge_connectivity != k {
            return Err(claim_failed(
                "edge connectivity",
                k,
                report.edge_connectivity,
            ));
        }
    }
    if expected.non_hamiltonian && report.hamiltonicity.is_hamiltonian() {
        return Err(claim_failed("non-Hamiltonian", true, false));
    }
    if let Some(k) = expected.cyclic_connectivity {
        if report.cyclic.value != CyclicConnectivity::Bounded(k) {
            return Err(claim_failed(
                "cyclic edge connectivity",
                k,
                format!("{:?}", report.cyclic.value),
            ));
        }
    }
    Ok(ConstructionResult {
        graph,
        recipe,
        expected,
        report,
    })
}

/// The catalog cage of girth `g`, for 3 <= g <= 8.
pub fn cage(g: usize) -> Option<Named> {
    match g {
        3 => Some(Named::K4),
        4 => Some(Named::K33),
        5 => Some(Named::Petersen),
        6 => Some(Named::Heawood),
        7 => Some(Named::McGee),
        8 => Some(Named::TutteCoxeter),
        _ => None,
    }
}

/// Naive order bound from the constructions on cages: 2n+2 (bridge),
/// 3n+2 (two-edge) or 10n-10 (three-edge).
pub fn naive_bound(girth: usize, conn: usize) -> Result<usize, ConstructionError> {
    let n = cage(girth)
        .ok_or(ConstructionError::UnsupportedGirth(girth))?
        .expected()
        .order;
    match conn {
        1 => Ok(2 * n + 2),
        2 => Ok(3 * n + 2),
        3 => Ok(10 * n - 10),
        _ => Err(ConstructionError::UnsupportedConnectivity(conn)),
    }
}

/// Smallest order a cubic graph of girth `g` can have.
pub fn moore_bound(g: usize) -> usize {
    let d = g / 2;
    if g % 2 == 1 {
        3 * (1 << d) - 2
    } else {
        2 * ((1 << d) - 1)
    }
}

/// Restarts per order before moving to the next even order.
const RESTARTS: usize = 6;
/// Non-improving moves tolerated before a restart.
const STALL_LIMIT: usize = 4000;

/// A cubic graph of girth exactly `g` with at most `n_cap` vertices.
///
/// Girths up to 8 come from the catalog cages. Larger girths use seeded
/// edge-swap hill-climbing from the Moore bound upward.
pub fn obtain_girth_graph(
    g: usize,
    n_cap: usize,
    seed: u64,
) -> Result<CubicGraph, ConstructionError> {
    if g < 3 {
        return Err(ConstructionError::UnsupportedGirth(g));
    }
    let not_found = ConstructionError::NotFoundWithinCap {
        girth: g,
        cap: n_cap,
    };
    if let Some(named) = cage(g) {
        return if named.expected().order <= n_cap {
            Ok(named.graph())
        } else {
            Err(not_found)
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = moore_bound(g).next_multiple_of(2);
    for n in (start..=n_cap).step_by(2) {
        for _ in 0..RESTARTS {
            if let Some(found) = climb(n, g, &mut rng) {
                return Ok(found);
            }
        }
    }
    Err(not_found)
}

/// Scores a graph by girth, then by how few edges lie on shortest cycles.
fn score(adj: &[[usize; 3]]) -> (usize, usize) {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut on_short = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for u in 0..n {
        for &v in &adj[u] {
            if v < u {
                continue;
            }
            // Shortest u-v path avoiding the edge uv.
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[u] = 0;
            queue.clear();
            queue.push_back(u);
            let mut d_uv = usize::MAX;
            'bfs: while let Some(x) = queue.pop_front() {
                if dist[x] + 1 >= best.min(d_uv) {
                    break;
                }
                for &y in &adj[x] {
                    if (x == u && y == v) || dist[y] != usize::MAX {
                        continue;
                    }
                    dist[y] = dist[x] + 1;
                    if y == v {
                        d_uv = dist[y];
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
            if d_uv == usize::MAX {
                continue;
            }
            let len = d_uv + 1;
            if len < best {
                best = len;
                on_short = 0;
            }
            if len == best {
                on_short += 1;
            }
        }
    }
    (best, on_short)
}

fn better(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1)
}

/// Random cubic multigraph-free start: a Hamiltonian cycle plus a random
/// perfect matching of chords, retried until simple.
fn random_cubic(n: usize, rng: &mut ChaCha8Rng) -> Vec<[usize; 3]> {
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut adj = vec![[usize::MAX; 3]; n];
        for i in 0..n {
            adj[i][0] = (i + n - 1) % n;
            adj[i][1] = (i + 1) % n;
        }
        let mut ok = true;
        for p in order.chunks(2) {
            let (a, b) = (p[0], p[1]);
            if adj[a][0] == b || adj[a][1] == b {
                ok = false;
                break;
            }
            adj[a][2] = b;
            adj[b][2] = a;
        }
        if ok {
            return adj;
        }
    }
}

fn replace(adj: &mut [[usize; 3]], v: usize, old: usize, new: usize) {
    let slot = adj[v].iter().position(|&x| x == old).unwrap();
    adj[v][slot] = new;
}

fn connected(adj: &[[usize; 3]]) -> bool {
    let mut seen = vec![false; adj.len()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == adj.len()
}

/// Hill-climbs a random cubic graph on `n` vertices toward girth `g` by
/// swapping a short-cycle edge with a random other edge.
fn climb(n: usize, g: usize, rng: &mut ChaCha8Rng) -> Option<CubicGraph> {
    let mut adj = random_cubic(n, rng);
    let mut current = score(&adj);
    let mut stall = 0;
    while stall < STALL_LIMIT {
        if current.0 >= g {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = adj[a][rng.gen_range(0..3)];
        let c = rng.gen_range(0..n);
        let d = adj[c][rng.gen_range(0..3)];
        let distinct = a != c && a != d && b != c && b != d;
        if !distinct {
            continue;
        }
        // Rewire ab, cd into ac, bd.
        if adj[a].contains(&c) || adj[b].contains(&d) {
            continue;
        }
        replace(&mut adj, a, b, c);
        replace(&mut adj, b, a, d);
        replace(&mut adj, c, d, a);
        replace(&mut adj, d, c, b);
        let next = score(&adj);
        if connected(&adj) && better(next, current) {
            if next.0 > current.0 || next.1 < current.1 {
                stall = 0;
            } else {
                stall += 1;
            }
            current = next;
        } else {
            replace(&mut adj, a, c, b);
            replace(&mut adj, b, d, a);
            replace(&mut adj, c, a, d);
            replace(&mut adj, d, b, c);
            stall += 1;
        }
    }
    if current.0 != g {
        return None;
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| adj[v].iter().filter(move |&&u| u > v).map(move |&u| (v, u)))
        .collect();
    CubicGraph::from_edges(n, &edges).ok()
}
