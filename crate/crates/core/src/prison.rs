//! Minimum-order search for (3,g,e)-prisons: non-Hamiltonian cubic graphs of
//! girth exactly `g` and edge connectivity exactly `e`.
//!
//! Orders are scanned upward from the cage order. At each order every
//! connected cubic graph of girth at least `g` is generated, and graphs of
//! girth exactly `g` and connectivity exactly `e` are tested for
//! Hamiltonicity. The first order with a non-Hamiltonian hit is the answer,
//! and every hit at that order is reported.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    cyclic_edge_connectivity, edge_connectivity, girth_length, is_hamiltonian, CyclicConnectivity,
};
use crate::canon::{are_isomorphic, canonical_form};
use crate::catalog::Named;
use crate::constructions::{cage, moore_bound, naive_bound};
use crate::generation::{generate_each, split, GenerationTask, MAX_ORDER};
use crate::graph::GraphError;
use crate::graph6::parse_graph6;

#[derive(Debug, Error)]
pub enum PrisonError {
    #[error("girth must be at least 3, got {0}")]
    Girth(usize),
    #[error("edge connectivity class must be 1, 2 or 3, got {0}")]
    Connectivity(usize),
    #[error("cap {cap} is below the smallest order {start} with girth {g}, or above {MAX_ORDER}")]
    Cap { g: usize, cap: usize, start: usize },
    #[error("no ({g},{e})-prison up to {cap} vertices; {}", hamiltonian_range(.checked))]
    NotFoundWithinCap {
        g: usize,
        e: usize,
        cap: usize,
        /// Orders fully searched, all of whose candidates are Hamiltonian.
        checked: Vec<usize>,
    },
    #[error("no cells available for any conjecture check")]
    InsufficientData,
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn hamiltonian_range(checked: &[usize]) -> String {
    match (checked.first(), checked.last()) {
        (Some(a), Some(b)) => format!("every candidate on {a} to {b} vertices is Hamiltonian"),
        _ => "no order was searched".to_string(),
    }
}

/// Work done at one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderStat {
    pub order: usize,
    /// Graphs generated (girth at least g).
    pub generated: u64,
    /// Graphs of girth exactly g and connectivity exactly e.
    pub candidates: u64,
    /// Non-Hamiltonian candidates.
    pub prisons: usize,
}

/// Result of a completed search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrisonRecord {
    pub g: usize,
    pub e: usize,
    pub order: usize,
    /// Canonical graph6 of every prison at `order`, sorted.
    pub prisons: Vec<String>,
    /// Every order below `order` (from the cage order up) was fully searched.
    pub exhaustive: bool,
    pub orders: Vec<OrderStat>,
}

impl PrisonRecord {
    /// Re-checks every listed prison: order, girth, connectivity and
    /// non-Hamiltonicity.
    pub fn revalidate(&self) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for p in &self.prisons {
            let g = parse_graph6(p).map_err(|e| format!("{p}: {e}"))?;
            if g.order() != self.order {
                return Err(format!(
                    "{p}: order {} instead of {}",
                    g.order(),
                    self.order
                ));
            }
            if girth_length(&g) != self.g {
                return Err(format!(
                    "{p}: girth {} instead of {}",
                    girth_length(&g),
                    self.g
                ));
            }
            let lambda = edge_connectivity(&g).0;
            if lambda != self.e {
                return Err(format!(
                    "{p}: edge connectivity {lambda} instead of {}",
                    self.e
                ));
            }
            if is_hamiltonian(&g).is_hamiltonian() {
                return Err(format!("{p}: Hamiltonian"));
            }
            if !seen.insert(canonical_form(&g)) {
                return Err(format!("{p}: duplicate isomorphism class"));
            }
        }
        Ok(())
    }
}

/// Knobs for [`find_prison_with`].
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Worker threads; 0 means the machine's parallelism.
    pub threads: usize,
    /// Directory for per-order checkpoint files. Completed orders found
    /// there are loaded instead of searched again.
    pub checkpoint_dir: Option<PathBuf>,
}

/// Smallest order of a cubic graph with girth `g`: the cage order when
/// known, the Moore bound otherwise.
pub fn start_order(g: usize) -> usize {
    cage(g).map_or_else(|| moore_bound(g), |c| c.expected().order)
}

/// Cap used when none is given: the naive construction bound, tightened to
/// two above the tabulated value when there is one.
pub fn default_cap(g: usize, e: usize) -> usize {
    let naive = naive_bound(g, e).unwrap_or(MAX_ORDER);
    let cap = match table_cell(g, e) {
        Some(c) => naive.min(c.order + 2),
        None => naive,
    };
    cap.min(MAX_ORDER)
}

pub fn find_prison(g: usize, e: usize, n_cap: usize) -> Result<PrisonRecord, PrisonError> {
    find_prison_with(g, e, n_cap, &SearchOptions::default(), |_| {})
}

/// [`find_prison`] with options; `progress` sees each finished order.
pub fn find_prison_with(
    g: usize,
    e: usize,
    n_cap: usize,
    opts: &SearchOptions,
    progress: impl Fn(&OrderStat),
) -> Result<PrisonRecord, PrisonError> {
    if g < 3 {
        return Err(PrisonError::Girth(g));
    }
    if !(1..=3).contains(&e) {
        return Err(PrisonError::Connectivity(e));
    }
    let start = start_order(g);
    if n_cap < start || n_cap > MAX_ORDER {
        return Err(PrisonError::Cap {
            g,
            cap: n_cap,
            start,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("thread pool");
    let mut orders = Vec::new();
    let mut n = start + start % 2;
    while n <= n_cap {
        let ckpt = opts
            .checkpoint_dir
            .as_deref()
            .map(|d| checkpoint_path(d, g, e, n));
        let (stat, prisons) = match ckpt.as_deref().filter(|p| p.exists()) {
            Some(path) => read_checkpoint(path, n)?,
            None => {
                let found = pool.install(|| search_order(g, e, n));
                if let Some(path) = &ckpt {
                    write_checkpoint(path, g, e, &found.0, &found.1)?;
                }
                found
            }
        };
        progress(&stat);
        let hit = stat.prisons > 0;
        orders.push(stat);
        if hit {
            return Ok(PrisonRecord {
                g,
                e,
                order: n,
                prisons,
                exhaustive: true,
                orders,
            });
        }
        n += 2;
    }
    Err(PrisonError::NotFoundWithinCap {
        g,
        e,
        cap: n_cap,
        checked: orders.iter().map(|s| s.order).collect(),
    })
}

/// Searches one order on the current thread pool.
fn search_order(g: usize, e: usize, n: usize) -> (OrderStat, Vec<String>) {
    let task = GenerationTask::new(n, g).expect("valid order and girth");
    let threads = rayon::current_num_threads();
    let parts = if threads > 1 {
        split(&task, 4 * threads)
    } else {
        vec![task]
    };
    let partial: Vec<(u64, u64, Vec<String>)> = parts
        .par_iter()
        .map(|t| {
            let mut candidates = 0;
            let mut hits = Vec::new();
            let stats = generate_each(t, |graph| {
                if girth_length(graph) != g || edge_connectivity(graph).0 != e {
                    return;
                }
                candidates += 1;
                if !is_hamiltonian(graph).is_hamiltonian() {
                    hits.push(canonical_form(graph).graph6().to_string());
                }
            });
            (stats.emitted, candidates, hits)
        })
        .collect();
    let mut generated = 0;
    let mut candidates = 0;
    let mut prisons = BTreeSet::new();
    for (gen, cand, hits) in partial {
        generated += gen;
        candidates += cand;
        prisons.extend(hits);
    }
    let prisons: Vec<String> = prisons.into_iter().collect();
    let stat = OrderStat {
        order: n,
        generated,
        candidates,
        prisons: prisons.len(),
    };
    (stat, prisons)
}

/// Checkpoint file for one (g, e, order) step.
pub fn checkpoint_path(dir: &Path, g: usize, e: usize, n: usize) -> PathBuf {
    dir.join(format!("prison-g{g}-e{e}-n{n}.ckpt"))
}

fn write_checkpoint(
    path: &Path,
    g: usize,
    e: usize,
    stat: &OrderStat,
    prisons: &[String],
) -> Result<(), PrisonError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut text = format!(
        "g={g} e={e} n={} generated={} candidates={} prisons={}\n",
        stat.order, stat.generated, stat.candidates, stat.prisons
    );
    for p in prisons {
        text.push_str(p);
        text.push('\n');
    }
    // Written whole then renamed, so a partial file is never read back.
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_checkpoint(path: &Path, n: usize) -> Result<(OrderStat, Vec<String>), PrisonError> {
    let bad = |reason: &str| PrisonError::Checkpoint {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let field = |key: &str| -> Result<u64, PrisonError> {
        header
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(&format!("missing {key}")))
    };
    if field("n")? != n as u64 {
        return Err(bad("order does not match file name"));
    }
    let stat = OrderStat {
        order: n,
        generated: field("generated")?,
        candidates: field("candidates")?,
        prisons: field("prisons")? as usize,
    };
    let prisons: Vec<String> = lines
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect();
    if prisons.len() != stat.prisons {
        return Err(bad("prison count does not match listed graphs"));
    }
    Ok((stat, prisons))
}

/// One tabulated value of the minimum prison order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub g: usize,
    pub e: usize,
    pub order: usize,
    /// Marked as having more than one prison.
    pub plus: bool,
    /// Exact number of prisons, when known.
    pub count: Option<usize>,
    /// Catalog graph the unique prison is isomorphic to.
    #[serde(skip)]
    pub named: Option<Named>,
    /// Searching this cell takes hours or more.
    pub extended: bool,
}

const fn cell(
    g: usize,
    e: usize,
    order: usize,
    count: Option<usize>,
    named: Option<Named>,
) -> TableCell {
    TableCell {
        g,
        e,
        order,
        plus: !matches!(count, Some(1)),
        count,
        named,
        extended: g >= 6,
    }
}

const TABLE: [TableCell; 13] = [
    cell(3, 1, 10, Some(1), None),
    cell(3, 2, 14, Some(2), None),
    cell(3, 3, 12, Some(1), Some(Named::Tietze)),
    cell(4, 1, 14, Some(1), None),
    cell(4, 2, 16, Some(1), None),
    cell(4, 3, 14, Some(1), None),
    cell(5, 1, 22, Some(1), None),
    cell(5, 2, 20, Some(1), None),
    cell(5, 3, 10, Some(1), Some(Named::Petersen)),
    cell(6, 1, 30, Some(1), None),
    cell(6, 2, 42, None, None),
    cell(6, 3, 28, Some(1), Some(Named::FlowerSnark(7))),
    cell(7, 3, 28, Some(1), Some(Named::Coxeter)),
];

/// Every tabulated cell.
pub fn table() -> &'static [TableCell] {
    &TABLE
}

pub fn table_cell(g: usize, e: usize) -> Option<&'static TableCell> {
    TABLE.iter().find(|c| c.g == g && c.e == e)
}

/// Cells searched by a table run. The (6,2) cell is listed but never
/// searched: its order is far beyond exhaustive reach.
pub fn searchable_cells(extended: bool) -> Vec<&'static TableCell> {
    TABLE
        .iter()
        .filter(|c| !(c.g == 6 && c.e == 2))
        .filter(|c| extended || !c.extended)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Match,
    Mismatch,
    NotComputed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellComparison {
    pub g: usize,
    pub e: usize,
    pub expected_order: usize,
    pub expected_count: Option<usize>,
    pub expected_named: Option<String>,
    pub computed_order: Option<usize>,
    pub computed_count: Option<usize>,
    pub status: CellStatus,
    /// Why the cell mismatches.
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub cells: Vec<CellComparison>,
    pub mismatches: usize,
    pub computed: usize,
}

impl TableReport {
    /// No mismatch, and every cell in `required` was computed.
    pub fn full_match(&self, required: &[&TableCell]) -> bool {
        self.mismatches == 0
            && required.iter().all(|r| {
                self.cells
                    .iter()
                    .any(|c| c.g == r.g && c.e == r.e && c.status == CellStatus::Match)
            })
    }
}

/// Compares computed records with the table, cell by cell.
pub fn verify_table(records: &[PrisonRecord]) -> TableReport {
    let cells: Vec<CellComparison> = TABLE
        .iter()
        .map(|cell| {
            let rec = records.iter().find(|r| r.g == cell.g && r.e == cell.e);
            compare_cell(cell, rec)
        })
        .collect();
    TableReport {
        mismatches: cells
            .iter()
            .filter(|c| c.status == CellStatus::Mismatch)
            .count(),
        computed: cells
            .iter()
            .filter(|c| c.status != CellStatus::NotComputed)
            .count(),
        cells,
    }
}

fn compare_cell(cell: &TableCell, rec: Option<&PrisonRecord>) -> CellComparison {
    let mut cmp = CellComparison {
        g: cell.g,
        e: cell.e,
        expected_order: cell.order,
        expected_count: cell.count,
        expected_named: cell.named.map(|n| n.to_string()),
        computed_order: rec.map(|r| r.order),
        computed_count: rec.map(|r| r.prisons.len()),
        status: CellStatus::NotComputed,
        problems: Vec::new(),
    };
    let Some(rec) = rec else {
        return cmp;
    };
    if rec.order != cell.order {
        cmp.problems
            .push(format!("order {} instead of {}", rec.order, cell.order));
    }
    if !rec.exhaustive {
        cmp.problems
            .push("smaller orders not fully searched".into());
    }
    if let Some(k) = cell.count {
        if rec.prisons.len() != k {
            cmp.problems
                .push(format!("{} prisons instead of {k}", rec.prisons.len()));
        }
    }
    if let Err(why) = rec.revalidate() {
        cmp.problems.push(why);
    }
    if let Some(named) = cell.named {
        let reference = named.graph();
        let all_named = rec
            .prisons
            .iter()
            .all(|p| parse_graph6(p).is_ok_and(|g| are_isomorphic(&g, &reference)));
        if rec.prisons.is_empty() || !all_named {
            cmp.problems
                .push(format!("prison not isomorphic to {named}"));
        }
    }
    cmp.status = if cmp.problems.is_empty() {
        CellStatus::Match
    } else {
        CellStatus::Mismatch
    };
    cmp
}

/// Conjecture 1 at one girth: the 3-edge-connected prison is no larger
/// than the 1- and 2-edge-connected ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderComparison {
    pub g: usize,
    pub order_e1: usize,
    pub order_e2: usize,
    pub order_e3: usize,
    pub holds: bool,
}

/// Conjecture 2 on one 3-edge-connected prison: cyclic edge connectivity
/// equals the girth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCheck {
    pub g: usize,
    pub prison: String,
    pub cyclic_edge_connectivity: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture1: Vec<OrderComparison>,
    pub conjecture2: Vec<CyclicCheck>,
    /// Girths at least 4 lacking one of the three cells.
    pub conjecture1_missing: Vec<usize>,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.conjecture1.iter().all(|c| c.holds) && self.conjecture2.iter().all(|c| c.holds)
    }
}

/// Tests both conjectures on whatever cells `records` cover. A failed
/// instance is reported, not raised.
pub fn check_conjectures(records: &[PrisonRecord]) -> Result<ConjectureReport, PrisonError> {
    let order = |g: usize, e: usize| {
        records
            .iter()
            .find(|r| r.g == g && r.e == e)
            .map(|r| r.order)
    };
    let girths: BTreeSet<usize> = records.iter().map(|r| r.g).filter(|&g| g >= 4).collect();
    let mut conjecture1 = Vec::new();
    let mut conjecture1_missing = Vec::new();
    for g in girths {
        match (order(g, 1), order(g, 2), order(g, 3)) {
            (Some(a), Some(b), Some(c)) => conjecture1.push(OrderComparison {
                g,
                order_e1: a,
                order_e2: b,
                order_e3: c,
                holds: c <= a.min(b),
            }),
            _ => conjecture1_missing.push(g),
        }
    }
    let mut conjecture2 = Vec::new();
    for rec in records.iter().filter(|r| r.e == 3 && r.g >= 5) {
        for p in &rec.prisons {
            let graph = parse_graph6(p)?;
            let value = match cyclic_edge_connectivity(&graph).value {
                CyclicConnectivity::Bounded(k) => Some(k),
                CyclicConnectivity::Unbounded => None,
            };
            conjecture2.push(CyclicCheck {
                g: rec.g,
                prison: p.clone(),
                cyclic_edge_connectivity: value,
                holds: value == Some(rec.g),
            });
        }
    }
    if conjecture1.is_empty() && conjecture2.is_empty() {
        return Err(PrisonError::InsufficientData);
    }
    Ok(ConjectureReport {
        conjecture1,
        conjecture2,
        conjecture1_missing,
    })
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Match => "match",
            CellStatus::Mismatch => "MISMATCH",
            CellStatus::NotComputed => "not computed",
        })
    }
}
