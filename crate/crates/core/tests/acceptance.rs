//! Acceptance criteria AC1 to AC8, one PASS/FAIL line each.
//!
//! All tolerances are exact. Runtime budgets are printed beside each
//! result and enforced. AC5 runs only with `PRISONFORGE_EXTENDED=1`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use prisonforge::analysis::{
    cyclic_edge_connectivity, edge_connectivity, girth_length, is_hamiltonian,
};
use prisonforge::constructions::{
    bridge_construct, select_edge, select_vertex, three_edge_construct, two_bond_join,
    two_edge_construct, ConstructionResult,
};
use prisonforge::generation::{count, generate, GenerationTask};
use prisonforge::prison::{
    check_conjectures, default_cap, find_prison_with, searchable_cells, table, verify_table,
    CellStatus, PrisonRecord, SearchOptions,
};
use prisonforge::{are_isomorphic, parse_graph6, CubicGraph, Edge, Named};

fn main() {
    let extended = std::env::var("PRISONFORGE_EXTENDED").is_ok_and(|v| v == "1");
    let mut failed = 0;
    let mut records = Vec::new();
    let mut run = |id: &str, what: &str, budget: Duration, f: &mut dyn FnMut() -> String| {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(e) => ("FAIL", panic_text(&e)),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{id} {status} {what}: {detail} [{:.2} s, budget {} s]",
            took.as_secs_f64(),
            budget.as_secs()
        );
    };

    run("AC1", "construction orders", secs(1), &mut ac1);
    run(
        "AC2",
        "girth, connectivity and non-Hamiltonicity of constructions",
        secs(300),
        &mut ac2,
    );
    run("AC3", "bridge through the only triangle", secs(1), &mut ac3);
    run("AC4", "mandatory table cells", secs(1800), &mut || {
        ac4(&mut records)
    });
    if extended {
        run(
            "AC5",
            "extended table cells",
            secs(7 * 24 * 3600),
            &mut || ac5(&mut records),
        );
    } else {
        println!("AC5 SKIP extended table cells: set PRISONFORGE_EXTENDED=1 to run (hours)");
    }
    run("AC6", "conjecture checks", secs(300), &mut || ac6(&records));
    run("AC7", "girth-8 bracket", secs(60), &mut ac7);
    run(
        "AC8",
        "brute-force oracle equivalence up to 10 vertices",
        secs(600),
        &mut ac8,
    );

    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn panic_text(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panicked".into())
}

fn edge_of(g: &CubicGraph) -> Edge {
    select_edge(g).expect("eligible edge").0
}

fn parts_of(base: &CubicGraph, part: &CubicGraph) -> Vec<(CubicGraph, usize)> {
    let v = select_vertex(part).expect("eligible vertex").0;
    vec![(part.clone(), v); base.order()]
}

fn ac1() -> String {
    let k4 = Named::K4.graph();
    let e = edge_of(&k4);
    let bridge = bridge_construct(&k4, e, &k4, e).unwrap();
    let two = two_edge_construct(&k4, e, &k4, e, &k4, e).unwrap();
    let petersen = Named::Petersen.graph();
    let three = three_edge_construct(&petersen, &parts_of(&petersen, &k4)).unwrap();
    let (heawood, j7) = (Named::Heawood.graph(), Named::FlowerSnark(7).graph());
    let bond = two_bond_join(&heawood, edge_of(&heawood), &j7, edge_of(&j7)).unwrap();
    let orders = [&bridge, &two, &three, &bond].map(|r| r.graph.order());
    assert_eq!(orders, [10, 14, 30, 42], "orders");
    "bridge 10, two-edge 14, three-edge 30, two-bond 42".to_string()
}

fn expect_prison(r: &ConstructionResult, girth: usize, lambda: usize, what: &str) {
    assert_eq!(r.report.girth, girth, "{what}: girth");
    assert_eq!(
        r.report.edge_connectivity, lambda,
        "{what}: edge connectivity"
    );
    assert!(
        !r.report.hamiltonicity.is_hamiltonian(),
        "{what}: Hamiltonian"
    );
}

fn ac2() -> String {
    let petersen = Named::Petersen.graph();
    let inputs = [
        Named::K4,
        Named::Tietze,
        Named::FlowerSnark(3),
        Named::K33,
        Named::Petersen,
        Named::FlowerSnark(5),
        Named::Heawood,
        Named::FlowerSnark(7),
    ];
    let mut checked = 0;
    for named in inputs {
        let g = named.graph();
        let girth = named.expected().girth;
        assert!((3..=6).contains(&girth));
        if let Ok((e, _)) = select_edge(&g) {
            expect_prison(
                &bridge_construct(&g, e, &g, e).unwrap(),
                girth,
                1,
                &format!("bridge {named}"),
            );
            expect_prison(
                &two_edge_construct(&g, e, &g, e, &g, e).unwrap(),
                girth,
                2,
                &format!("two-edge {named}"),
            );
            checked += 2;
        }
        if select_vertex(&g).is_ok() {
            let r = three_edge_construct(&petersen, &parts_of(&petersen, &g)).unwrap();
            expect_prison(&r, girth, 3, &format!("three-edge {named}"));
            checked += 1;
        }
    }
    format!(
        "{checked} outputs over {} catalog inputs, girth exact",
        inputs.len()
    )
}

/// K3,3 with one vertex replaced by a triangle: exactly one triangle.
fn one_triangle_graph() -> CubicGraph {
    // t0 t1 t2 = 0 1 2, a1 a2 = 3 4, b0 b1 b2 = 5 6 7.
    let edges = [
        (0, 1),
        (1, 2),
        (0, 2),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 5),
        (3, 6),
        (3, 7),
        (4, 5),
        (4, 6),
        (4, 7),
    ];
    CubicGraph::from_edges(8, &edges).unwrap()
}

fn ac3() -> String {
    let g = one_triangle_graph();
    let adj = common::adjacency(&g);
    let triangles = (0..8)
        .flat_map(|a| (a + 1..8).flat_map(move |b| (b + 1..8).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| adj[a].contains(&b) && adj[b].contains(&c) && adj[a].contains(&c))
        .count();
    assert_eq!(triangles, 1, "triangles in the hand-built graph");
    let e = Edge::new(0, 1);
    let r = bridge_construct(&g, e, &g, e).unwrap();
    assert_eq!(r.report.girth, 4, "girth after breaking the triangle");
    assert_eq!(girth_length(&r.graph), 4);
    "input girth 3 with one triangle, output girth 4".to_string()
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn search_cells(extended_only: bool, records: &mut Vec<PrisonRecord>) -> Vec<String> {
    let opts = SearchOptions {
        threads: threads(),
        checkpoint_dir: None,
    };
    let mut lines = Vec::new();
    for cell in searchable_cells(extended_only) {
        if cell.extended != extended_only {
            continue;
        }
        let rec = find_prison_with(cell.g, cell.e, default_cap(cell.g, cell.e), &opts, |_| {})
            .unwrap_or_else(|e| panic!("({},{}): {e}", cell.g, cell.e));
        lines.push(format!(
            "({},{})={}x{}",
            cell.g,
            cell.e,
            rec.order,
            rec.prisons.len()
        ));
        records.push(rec);
    }
    let report = verify_table(records);
    for c in &report.cells {
        let wanted = c.g <= 5 || extended_only;
        if wanted && !(c.g == 6 && c.e == 2) {
            assert_eq!(
                c.status,
                CellStatus::Match,
                "({},{}): {:?}",
                c.g,
                c.e,
                c.problems
            );
        }
    }
    assert_eq!(report.mismatches, 0);
    lines
}

fn ac4(records: &mut Vec<PrisonRecord>) -> String {
    let lines = search_cells(false, records);
    assert_eq!(lines.len(), 9);
    let count = |g, e| {
        records
            .iter()
            .find(|r| r.g == g && r.e == e)
            .unwrap()
            .prisons
            .len()
    };
    assert_eq!(count(3, 2), 2, "two (3,2)-prisons");
    for cell in table()
        .iter()
        .filter(|c| c.g <= 5 && !(c.g == 3 && c.e == 2))
    {
        assert_eq!(count(cell.g, cell.e), 1, "({},{}) unique", cell.g, cell.e);
    }
    let named = |g, e, n: Named| {
        let rec = records.iter().find(|r| r.g == g && r.e == e).unwrap();
        assert!(are_isomorphic(
            &parse_graph6(&rec.prisons[0]).unwrap(),
            &n.graph()
        ));
    };
    named(3, 3, Named::Tietze);
    named(5, 3, Named::Petersen);
    lines.join(" ")
}

fn ac5(records: &mut Vec<PrisonRecord>) -> String {
    search_cells(true, records).join(" ")
}

fn ac6(records: &[PrisonRecord]) -> String {
    let report = check_conjectures(records).expect("records available");
    for g in [4, 5] {
        let c = report
            .conjecture1
            .iter()
            .find(|c| c.g == g)
            .expect("conjecture 1 instance");
        assert!(c.holds, "conjecture 1 at g={g}: {c:?}");
    }
    assert!(report.conjecture1.iter().all(|c| c.holds));
    let petersen = report
        .conjecture2
        .iter()
        .find(|c| c.g == 5)
        .expect("(5,3) prison");
    assert!(petersen.holds && petersen.cyclic_edge_connectivity == Some(5));
    assert!(report.conjecture2.iter().all(|c| c.holds));
    for (named, g) in [
        (Named::Petersen, 5),
        (Named::FlowerSnark(7), 6),
        (Named::Coxeter, 7),
    ] {
        let value = cyclic_edge_connectivity(&named.graph()).value.value();
        assert_eq!(value, Some(g), "cyclic edge connectivity of {named}");
    }
    let petersen = Named::Petersen.graph();
    let mut outputs = 0;
    for named in [
        Named::K4,
        Named::Tietze,
        Named::FlowerSnark(3),
        Named::K33,
        Named::Petersen,
        Named::FlowerSnark(5),
    ] {
        let r = three_edge_construct(&petersen, &parts_of(&petersen, &named.graph())).unwrap();
        assert_eq!(
            r.report.cyclic.value.value(),
            Some(3),
            "three-edge on {named}"
        );
        outputs += 1;
    }
    format!(
        "conjecture 1 holds at g=4,5; cyclic connectivity equals girth for Petersen, J7, Coxeter; \
         {outputs} three-edge outputs have cyclic connectivity 3"
    )
}

fn ac7() -> String {
    let tc = Named::TutteCoxeter.graph();
    let ham = is_hamiltonian(&tc);
    assert!(
        ham.is_hamiltonian() && ham.is_valid_in(&tc),
        "Tutte-Coxeter Hamiltonian"
    );
    let e = edge_of(&tc);
    let r = bridge_construct(&tc, e, &tc, e).unwrap();
    assert_eq!(r.graph.order(), 62);
    expect_prison(&r, 8, 1, "bridge on two Tutte-Coxeter copies");
    "Tutte-Coxeter Hamiltonian; bridge gives a 62-vertex girth-8 prison; \
     lower bound sweep to 44 vertices not attempted"
        .to_string()
}

fn ac8() -> String {
    let mut summary = Vec::new();
    for (n, k) in [(4, 1), (6, 2), (8, 5), (10, 19)] {
        let oracle = common::cubic_classes(n, 3);
        assert_eq!(oracle.len(), k, "oracle classes at n={n}");
        assert_eq!(count(n, 3).unwrap(), k as u64, "generated classes at n={n}");
        let generated = generate(&GenerationTask::new(n, 3).unwrap());
        for g in &generated {
            let adj = common::adjacency(g);
            assert_eq!(
                oracle
                    .iter()
                    .filter(|o| common::isomorphic(o, &adj))
                    .count(),
                1
            );
        }
        let graphs: Vec<CubicGraph> = oracle.iter().map(common::to_graph).collect();
        for (i, g) in graphs.iter().enumerate() {
            let adj = &oracle[i];
            assert_eq!(girth_length(g), common::girth(adj), "girth");
            assert_eq!(
                is_hamiltonian(g).is_hamiltonian(),
                common::hamiltonian(adj),
                "Hamiltonicity"
            );
            assert_eq!(
                edge_connectivity(g).0,
                common::edge_connectivity(adj),
                "edge connectivity"
            );
            for (j, h) in graphs.iter().enumerate() {
                assert_eq!(are_isomorphic(g, h), i == j, "isomorphism");
            }
        }
        summary.push(format!("n={n}:{k}"));
    }
    summary.join(" ")
}
