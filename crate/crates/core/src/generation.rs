//! Isomorph-free generation of connected cubic graphs with a girth bound.
//!
//! Graphs are built in breadth-first order. Vertex 0 is the root; vertices
//! are processed by label, and processing `v` joins it to some vertices
//! already discovered but not yet processed, then creates fresh children
//! for its remaining slots under the next free labels. The code of a
//! labelled graph is the sequence of its sorted neighbor rows; the
//! canonical labelling is the breadth-first labelling (over every root and
//! every ordering of each vertex's newly discovered neighbors) with the
//! smallest code. Only canonical graphs are emitted, and a partial graph is
//! abandoned as soon as a competing labelling already beats its finished
//! rows, since every completion inherits that defeat.
//!
//! Short cycles are never created: an edge `v-w` is added only when `w` is
//! at distance at least `girth_min - 1` from `v`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::edge_connectivity;
use crate::graph::CubicGraph;

/// Largest supported order (vertex sets are 64-bit masks).
pub const MAX_ORDER: usize = 64;

const NONE: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error("order must be even and between 4 and {MAX_ORDER}, got {0}")]
    Order(usize),
    #[error("girth lower bound must be at least 3, got {0}")]
    Girth(usize),
    #[error("connectivity filter must be 1, 2 or 3, got {0}")]
    Connectivity(usize),
    #[error("part {part} out of range for {parts} parts")]
    Part { part: usize, parts: usize },
    #[error("bad task descriptor: {0}")]
    Descriptor(String),
}

/// One generation run, or one disjoint share of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GenerationTask {
    pub order: usize,
    pub girth_min: usize,
    /// Keep only graphs of exactly this edge connectivity.
    pub conn: Option<usize>,
    pub parts: usize,
    pub part: usize,
    /// Depth at which search nodes are dealt out to parts.
    pub split_level: usize,
}

impl GenerationTask {
    pub fn new(order: usize, girth_min: usize) -> Result<Self, TaskError> {
        let t = GenerationTask {
            order,
            girth_min,
            conn: None,
            parts: 1,
            part: 0,
            split_level: 0,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn with_conn(mut self, conn: Option<usize>) -> Result<Self, TaskError> {
        self.conn = conn;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), TaskError> {
        if self.order < 4 || self.order % 2 == 1 || self.order > MAX_ORDER {
            return Err(TaskError::Order(self.order));
        }
        if self.girth_min < 3 {
            return Err(TaskError::Girth(self.girth_min));
        }
        if let Some(c) = self.conn {
            if !(1..=3).contains(&c) {
                return Err(TaskError::Connectivity(c));
            }
        }
        if self.parts == 0 || self.part >= self.parts {
            return Err(TaskError::Part {
                part: self.part,
                parts: self.parts,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GenerationTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conn = self.conn.map_or("any".to_string(), |c| c.to_string());
        write!(
            f,
            "n={} girth_min={} conn={} parts={} part={} split_level={}",
            self.order, self.girth_min, conn, self.parts, self.part, self.split_level
        )
    }
}

impl FromStr for GenerationTask {
    type Err = TaskError;

    /// Parses the `key=value` form written by `Display`. `conn`, `parts`,
    /// `part` and `split_level` are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| TaskError::Descriptor(m);
        let mut order = None;
        let mut girth = None;
        let mut task = GenerationTask {
            order: 0,
            girth_min: 0,
            conn: None,
            parts: 1,
            part: 0,
            split_level: 0,
        };
        for field in s.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{field}'")))?;
            let num = || {
                v.parse::<usize>()
                    .map_err(|_| bad(format!("bad value for {k}: '{v}'")))
            };
            match k {
                "n" => order = Some(num()?),
                "girth_min" => girth = Some(num()?),
                "conn" => task.conn = if v == "any" { None } else { Some(num()?) },
                "parts" => task.parts = num()?,
                "part" => task.part = num()?,
                "split_level" => task.split_level = num()?,
                _ => return Err(bad(format!("unknown key '{k}'"))),
            }
        }
        task.order = order.ok_or_else(|| bad("missing n".into()))?;
        task.girth_min = girth.ok_or_else(|| bad("missing girth_min".into()))?;
        task.validate()?;
        Ok(task)
    }
}

/// Work counters of one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GenerationStats {
    /// Search nodes that passed the partial canonicity test.
    pub nodes: u64,
    /// Canonical graphs reached, before the connectivity filter.
    pub canonical: u64,
    /// Graphs emitted.
    pub emitted: u64,
}

/// Runs `task`, calling `emit` once per isomorphism class.
pub fn generate_each(task: &GenerationTask, mut emit: impl FnMut(&CubicGraph)) -> GenerationStats {
    task.validate().expect("valid generation task");
    let mut s = Search::new(task.order, task.girth_min);
    s.split = Some((task.split_level, task.parts, task.part));
    s.conn = task.conn;
    s.run(&mut emit);
    s.stats
}

/// Collects every graph of `task`.
pub fn generate(task: &GenerationTask) -> Vec<CubicGraph> {
    let mut out = Vec::new();
    generate_each(task, |g| out.push(g.clone()));
    out
}

/// Number of connected cubic graphs on `n` vertices with girth at least
/// `girth_min`, up to isomorphism.
pub fn count(n: usize, girth_min: usize) -> Result<u64, TaskError> {
    let task = GenerationTask::new(n, girth_min)?;
    Ok(generate_each(&task, |_| {}).emitted)
}

/// Splits `task` into `k` disjoint tasks whose outputs union to its output.
///
/// Search nodes at one depth are numbered in depth-first order and dealt
/// out round-robin. The depth is the shallowest with at least `4k` nodes,
/// or the leaves when no depth has that many.
pub fn split(task: &GenerationTask, k: usize) -> Vec<GenerationTask> {
    assert!(k >= 1, "split needs at least one part");
    if k == 1 {
        return vec![*task];
    }
    let level = (1..task.order)
        .find(|&l| nodes_at_level(task, l) >= 4 * k as u64)
        .unwrap_or(task.order);
    (0..k)
        .map(|part| GenerationTask {
            parts: k,
            part,
            split_level: level,
            ..*task
        })
        .collect()
}

/// Search nodes at depth `level` of an unsplit run.
fn nodes_at_level(task: &GenerationTask, level: usize) -> u64 {
    let mut s = Search::new(task.order, task.girth_min);
    s.stop_level = Some(level);
    s.run(&mut |_| {});
    s.level_count
}

struct Search {
    n: usize,
    girth_min: usize,
    adj: Vec<[u8; 3]>,
    deg: Vec<u8>,
    mask: Vec<u64>,
    /// Vertices created so far.
    m: usize,
    conn: Option<usize>,
    /// (level, parts, part)
    split: Option<(usize, usize, usize)>,
    /// Stop descending at this depth and only count nodes there.
    stop_level: Option<usize>,
    level_count: u64,
    stats: GenerationStats,
    // Scratch space for the canonicity test.
    lab: Vec<u8>,
    order: Vec<u8>,
}

impl Search {
    fn new(n: usize, girth_min: usize) -> Self {
        Search {
            n,
            girth_min,
            adj: vec![[NONE; 3]; n],
            deg: vec![0; n],
            mask: vec![0; n],
            m: 0,
            conn: None,
            split: None,
            stop_level: None,
            level_count: 0,
            stats: GenerationStats::default(),
            lab: vec![NONE; n],
            order: vec![0; n],
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(&CubicGraph)) {
        // The root and its three children.
        self.m = 4;
        for c in 1..4 {
            self.add_edge(0, c);
        }
        self.process(1, emit);
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a][self.deg[a] as usize] = b as u8;
        self.adj[b][self.deg[b] as usize] = a as u8;
        self.deg[a] += 1;
        self.deg[b] += 1;
        self.mask[a] |= 1 << b;
        self.mask[b] |= 1 << a;
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.deg[a] -= 1;
        self.deg[b] -= 1;
        self.adj[a][self.deg[a] as usize] = NONE;
        self.adj[b][self.deg[b] as usize] = NONE;
        self.mask[a] &= !(1 << b);
        self.mask[b] &= !(1 << a);
    }

    /// Vertices within distance `girth_min - 2` of `v`.
    fn ball(&self, v: usize) -> u64 {
        let mut ball = 1u64 << v;
        let mut frontier = ball;
        for _ in 0..self.girth_min.saturating_sub(2) {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.mask[u];
            }
            frontier = next & !ball;
            ball |= next;
            if frontier == 0 {
                break;
            }
        }
        ball
    }

    /// Vertices `0..v` are processed; `v` is next.
    fn process(&mut self, v: usize, emit: &mut dyn FnMut(&CubicGraph)) {
        let level = v;
        if let Some(stop) = self.stop_level {
            if level == stop {
                self.level_count += 1;
                return;
            }
        }
        if let Some((split_level, parts, part)) = self.split {
            if level == split_level && parts > 1 {
                let idx = self.level_count;
                self.level_count += 1;
                if idx % parts as u64 != part as u64 {
                    return;
                }
            }
        }
        self.stats.nodes += 1;
        if v == self.n {
            self.leaf(emit);
            return;
        }
        if v == self.m {
            // Every discovered vertex is processed, yet vertices are missing.
            return;
        }
        let need = 3 - self.deg[v] as usize;
        self.choose(v, v + 1, need, emit);
    }

    /// Joins `v` to queued vertices from `from` upward, then fills the
    /// remaining `need` slots with fresh children.
    fn choose(&mut self, v: usize, from: usize, need: usize, emit: &mut dyn FnMut(&CubicGraph)) {
        // Fresh children for every remaining slot.
        if self.m + need <= self.n {
            let m0 = self.m;
            for c in 0..need {
                self.add_edge(v, m0 + c);
            }
            self.m += need;
            if !self.beaten(v) {
                self.process(v + 1, emit);
            }
            self.m = m0;
            for c in (0..need).rev() {
                self.remove_edge(v, m0 + c);
            }
        }
        if need == 0 {
            return;
        }
        let ball = self.ball(v);
        for w in from..self.m {
            if self.deg[w] < 3 && ball & (1 << w) == 0 {
                self.add_edge(v, w);
                self.choose(v, w + 1, need - 1, emit);
                self.remove_edge(v, w);
            }
        }
    }

    fn leaf(&mut self, emit: &mut dyn FnMut(&CubicGraph)) {
        debug_assert!(self.deg.iter().all(|&d| d == 3));
        self.stats.canonical += 1;
        let g = CubicGraph::from_adjacency_unchecked(
            self.adj
                .iter()
                .map(|r| {
                    let mut r = [r[0] as u32, r[1] as u32, r[2] as u32];
                    r.sort_unstable();
                    r
                })
                .collect(),
        );
        if let Some(c) = self.conn {
            if edge_connectivity(&g).0 != c {
                return;
            }
        }
        self.stats.emitted += 1;
        emit(&g);
    }

    /// Whether another breadth-first labelling beats rows `0..=v`.
    fn beaten(&mut self, v: usize) -> bool {
        for r in 0..self.m {
            if self.deg[r] != 3 {
                continue;
            }
            self.lab[r] = 0;
            self.order[0] = r as u8;
            let hit = self.explore(0, 1, v);
            self.lab[r] = NONE;
            if hit {
                return true;
            }
        }
        false
    }

    /// Extends an alternative labelling at position `pos` with `next` labels
    /// used. True when it produces a row smaller than the current code.
    fn explore(&mut self, pos: usize, next: usize, limit: usize) -> bool {
        if pos > limit || pos >= next {
            return false;
        }
        let u = self.order[pos] as usize;
        if self.deg[u] != 3 {
            return false;
        }
        let mut row = [0u8; 3];
        let mut fresh = [0u8; 3];
        let mut k = 0;
        for (i, &x) in self.adj[u].iter().enumerate() {
            let l = self.lab[x as usize];
            if l == NONE {
                fresh[k] = x;
                row[i] = (next + k) as u8;
                k += 1;
            } else {
                row[i] = l;
            }
        }
        row.sort_unstable();
        let mut cur = self.adj[pos];
        cur.sort_unstable();
        match row.cmp(&cur) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
        let mut hit = false;
        for_each_permutation(&mut fresh[..k], &mut |perm| {
            if hit {
                return;
            }
            for (j, &x) in perm.iter().enumerate() {
                self.lab[x as usize] = (next + j) as u8;
                self.order[next + j] = x;
            }
            hit = self.explore(pos + 1, next + perm.len(), limit);
            for &x in perm.iter() {
                self.lab[x as usize] = NONE;
            }
        });
        hit
    }
}

/// Calls `f` with every ordering of `items` (at most three).
fn for_each_permutation(items: &mut [u8], f: &mut dyn FnMut(&[u8])) {
    match items.len() {
        0 | 1 => f(items),
        2 => {
            f(items);
            items.swap(0, 1);
            f(items);
            items.swap(0, 1);
        }
        3 => {
            let base = [items[0], items[1], items[2]];
            for p in [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ] {
                let perm = [base[p[0]], base[p[1]], base[p[2]]];
                f(&perm);
            }
        }
        _ => unreachable!("a cubic vertex has at most three fresh neighbors"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::girth_length;
    use crate::canon::canonical_form;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(count(4, 3).unwrap(), 1);
        assert_eq!(count(6, 3).unwrap(), 2);
        assert_eq!(count(8, 3).unwrap(), 5);
        assert_eq!(count(10, 5).unwrap(), 1);
        assert_eq!(count(8, 5).unwrap(), 0);
    }

    #[test]
    fn outputs_are_distinct_and_respect_girth() {
        let task = GenerationTask::new(12, 4).unwrap();
        let graphs = generate(&task);
        let forms: HashSet<_> = graphs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), graphs.len());
        assert!(graphs.iter().all(|g| girth_length(g) >= 4));
    }

    #[test]
    fn descriptor_round_trip() {
        let t = GenerationTask {
            conn: Some(2),
            parts: 4,
            part: 1,
            split_level: 6,
            ..GenerationTask::new(22, 5).unwrap()
        };
        let s = t.to_string();
        assert_eq!(s, "n=22 girth_min=5 conn=2 parts=4 part=1 split_level=6");
        assert_eq!(s.parse::<GenerationTask>().unwrap(), t);
        assert!("n=7 girth_min=3".parse::<GenerationTask>().is_err());
        assert!("n=8".parse::<GenerationTask>().is_err());
        assert!("n=8 girth_min=3 colour=red"
            .parse::<GenerationTask>()
            .is_err());
    }

    #[test]
    fn split_parts_partition_the_output() {
        let task = GenerationTask::new(14, 3).unwrap();
        assert_eq!(split(&task, 1), vec![task]);
        let whole: HashSet<_> = generate(&task).iter().map(canonical_form).collect();
        let mut union = HashSet::new();
        let mut total = 0;
        for t in split(&task, 4) {
            for g in generate(&t) {
                total += 1;
                union.insert(canonical_form(&g));
            }
        }
        assert_eq!(total, whole.len());
        assert_eq!(union, whole);
    }
}
