//! Canonical labelling and isomorphism testing.
//!
//! Ordered partitions are refined by neighbor-cell signatures until stable,
//! then the first non-singleton cell is individualized vertex by vertex. Every
//! discrete leaf yields a relabelling; the canonical one is the leaf whose
//! relabelled adjacency rows are lexicographically smallest. Automorphisms
//! discovered as leaves with equal codes prune sibling branches whose vertex
//! lies in an already explored orbit of the pointwise stabilizer of the
//! current individualization prefix.

use crate::graph::CubicGraph;
use crate::graph6::emit_graph6;

/// Upper bound on stored automorphisms used for pruning.
const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Isomorphism-invariant key of a cubic graph.
///
/// Equality, ordering and hashing look at `bytes` only; `labeling` is the
/// witness relabelling and differs between isomorphic inputs.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// graph6 bytes of the canonically relabelled graph. Equal exactly for
    /// isomorphic graphs.
    pub bytes: Vec<u8>,
    /// `labeling[v]` is the canonical label of input vertex `v`.
    pub labeling: Vec<usize>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.bytes == other.bytes
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bytes.cmp(&other.bytes)
    }
}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bytes.hash(state);
    }
}

impl CanonicalForm {
    pub fn graph6(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ASCII")
    }
}

/// Computes the canonical form of `g`.
pub fn canonical_form(g: &CubicGraph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        best_code: None,
        best_perm: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(g, &mut cells);
    search.descend(cells, &mut Vec::new());
    let labeling = search.best_perm;
    let canon = g.permute(&labeling);
    CanonicalForm {
        bytes: emit_graph6(&canon).into_bytes(),
        labeling,
    }
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &CubicGraph) -> CubicGraph {
    g.permute(&canonical_form(g).labeling)
}

/// True iff `a` and `b` are isomorphic.
pub fn are_isomorphic(a: &CubicGraph, b: &CubicGraph) -> bool {
    a.order() == b.order() && canonical_form(a).bytes == canonical_form(b).bytes
}

struct Search<'a> {
    g: &'a CubicGraph,
    best_code: Option<Vec<[u32; 3]>>,
    best_perm: Vec<usize>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &candidates {
            if !explored.is_empty() && self.in_explored_orbit(w, &explored, prefix) {
                continue;
            }
            explored.push(w);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&x| x != w).collect();
            child[target] = vec![w];
            child.insert(target + 1, rest);
            refine(self.g, &mut child);
            prefix.push(w);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.order();
        let mut perm = vec![0usize; n];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell[0]] = label;
        }
        let mut code = vec![[0u32; 3]; n];
        for (v, row) in self.g.raw().iter().enumerate() {
            let mut r = [
                perm[row[0] as usize] as u32,
                perm[row[1] as usize] as u32,
                perm[row[2] as usize] as u32,
            ];
            r.sort_unstable();
            code[perm[v]] = r;
        }
        match &self.best_code {
            None => {
                self.best_code = Some(code);
                self.best_perm = perm;
            }
            Some(best) => match code.cmp(best) {
                std::cmp::Ordering::Less => {
                    self.best_code = Some(code);
                    self.best_perm = perm;
                }
                std::cmp::Ordering::Equal => {
                    if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                        // best_perm^-1 after perm maps this leaf onto the best leaf.
                        let mut inv_best = vec![0usize; n];
                        for (v, &l) in self.best_perm.iter().enumerate() {
                            inv_best[l] = v;
                        }
                        let gamma: Vec<usize> = perm.iter().map(|&l| inv_best[l]).collect();
                        if gamma.iter().enumerate().any(|(v, &x)| v != x) {
                            self.automorphisms.push(gamma);
                        }
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `w` shares an orbit with an explored sibling under the stored
    /// automorphisms that fix `prefix` pointwise.
    fn in_explored_orbit(&self, w: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            any = true;
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gamma[v]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }
}

/// Refines an ordered partition until every cell is uniform in the multiset
/// of neighbor cells. Deterministic and labelling-independent.
fn refine(g: &CubicGraph, cells: &mut Vec<Vec<usize>>) {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<([usize; 3], usize)> = c
                .iter()
                .map(|&v| {
                    let t = g.raw()[v];
                    let mut k = [
                        cell_of[t[0] as usize],
                        cell_of[t[1] as usize],
                        cell_of[t[2] as usize],
                    ];
                    k.sort_unstable();
                    (k, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            break;
        }
    }
}
