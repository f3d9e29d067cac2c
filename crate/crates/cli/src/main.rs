//! `prisonforge`: analysis, constructions, generation and prison search
//! from the command line.
//!
//! Reports go to stdout as key-sorted camelCase JSON; progress goes to
//! stderr. Exit codes: 0 success, 1 usage error, 2 verification mismatch,
//! 3 search cap reached.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prisonforge::catalog::Named;
use prisonforge::constructions::{
    bridge_construct, cage, naive_bound, select_edge, select_vertex, three_edge_construct,
    two_bond_join, two_edge_construct, ConstructionError, ConstructionResult,
};
use prisonforge::generation::{generate_each, split, GenerationTask};
use prisonforge::prison::{
    check_conjectures, default_cap, find_prison_with, searchable_cells, table_cell, verify_table,
    PrisonError, PrisonRecord, SearchOptions,
};
use prisonforge::{analyze, canonical_form, emit_graph6, parse_graph6, CubicGraph, Edge};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(
    name = "prisonforge",
    version,
    about = "Non-Hamiltonian cubic graphs of prescribed girth"
)]
struct Cli {
    /// Worker threads for searches (0: all cores).
    #[arg(long, global = true, env = "PRISONFORGE_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Girth, Hamiltonicity, edge and cyclic edge connectivity of a graph.
    Analyze {
        /// graph6 string, or @name for a catalog graph.
        graph: String,
    },
    /// Build a graph with one of the four constructions.
    Construct(ConstructArgs),
    /// Naive order bound for a girth and connectivity class.
    Bounds {
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        conn: usize,
    },
    /// Print every connected cubic graph of an order and girth, one graph6 per line.
    Generate(GenerateArgs),
    /// Find the smallest prisons of a girth and connectivity class.
    SearchPrison(SearchArgs),
    /// Compare computed prison orders with the tabulated values.
    VerifyTable(TableArgs),
    /// Test both conjectures on computed prison records.
    CheckConjectures(TableArgs),
    /// List catalog graphs or show one.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Bridge,
    TwoEdge,
    TwoBond,
    ThreeEdge,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    kind: Kind,
    /// Input graphs (graph6 or @name), in construction order. For
    /// three-edge the first is the base; one further input is used for
    /// every base vertex.
    #[arg(long = "input", required = true)]
    inputs: Vec<String>,
    /// Edge to break in each input, as u,v. Chosen automatically if absent.
    #[arg(long = "edge")]
    edges: Vec<String>,
    /// Vertex to remove from each three-edge part. Chosen automatically if absent.
    #[arg(long = "vertex")]
    vertices: Vec<usize>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, required_unless_present = "task")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "task")]
    girth_min: Option<usize>,
    /// Keep only graphs of this edge connectivity.
    #[arg(long)]
    conn: Option<usize>,
    /// Split the run into this many disjoint parts...
    #[arg(long, default_value_t = 1)]
    parts: usize,
    /// ...and run only this one.
    #[arg(long, default_value_t = 0)]
    part: usize,
    /// A task descriptor as printed by --print-tasks.
    #[arg(long, conflicts_with_all = ["n", "girth_min", "conn", "parts", "part"])]
    task: Option<String>,
    /// Print the descriptors of the parts instead of graphs.
    #[arg(long)]
    print_tasks: bool,
    /// Print only the number of graphs, as JSON.
    #[arg(long)]
    count: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    girth: usize,
    #[arg(long)]
    conn: usize,
    /// Largest order searched.
    #[arg(long)]
    cap: Option<usize>,
    /// Allow girth 6 and above, whose searches may run for hours.
    #[arg(long)]
    extended: bool,
    /// Directory of per-order checkpoints; finished orders are reused.
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
    /// Also write the record to this file and the prisons to a .g6 sidecar.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Include the girth 6 and 7 cells.
    #[arg(long)]
    extended: bool,
    /// Read records from these JSON files instead of searching.
    #[arg(long = "records")]
    records: Vec<PathBuf>,
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::ClaimFailed { .. } => Failure::Mismatch(e.to_string()),
            ConstructionError::NotFoundWithinCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PrisonError> for Failure {
    fn from(e: PrisonError) -> Self {
        match e {
            PrisonError::NotFoundWithinCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A finished command: the JSON result, or raw text lines, plus the exit
/// code to report after printing.
enum Output {
    Json {
        inputs: Vec<String>,
        result: Value,
        failure: Option<Failure>,
    },
    Done,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Done) => ExitCode::SUCCESS,
        Ok(Output::Json {
            inputs,
            result,
            failure,
        }) => {
            let report = json!({
                "command": argv.iter().skip(1).collect::<Vec<_>>(),
                "inputs": inputs,
                "result": result,
                "timingMs": start.elapsed().as_millis() as u64,
                "version": env!("CARGO_PKG_VERSION"),
            });
            print_line(&render(&report));
            match failure {
                Some(f) => {
                    eprintln!("prisonforge: {}", f.message());
                    ExitCode::from(f.code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("prisonforge: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Analyze { graph } => {
            let g = load_graph(graph)?;
            let report = analyze(&g);
            let result = json!({
                "graph6": emit_graph6(&g),
                "order": report.order,
                "girth": report.girth,
                "nonHamiltonian": !report.hamiltonicity.is_hamiltonian(),
                "edgeConnectivity": report.edge_connectivity,
                "cyclicEdgeConnectivity": report.cyclic.value.value(),
                "report": to_value(&report),
            });
            Ok(json_output(vec![graph.clone()], result))
        }
        Command::Construct(args) => construct(args),
        Command::Bounds { girth, conn } => {
            let bound = naive_bound(*girth, *conn)?;
            let cage = cage(*girth).expect("bound implies a cage");
            let result = json!({
                "girth": girth,
                "conn": conn,
                "cage": cage.to_string(),
                "cageOrder": cage.expected().order,
                "naiveBound": bound,
            });
            Ok(json_output(Vec::new(), result))
        }
        Command::Generate(args) => generate(args),
        Command::SearchPrison(args) => search(cli.threads, args),
        Command::VerifyTable(args) => {
            let records = table_records(cli.threads, args)?;
            let report = verify_table(&records);
            let required = if args.records.is_empty() {
                searchable_cells(args.extended)
            } else {
                Vec::new()
            };
            let failure = (!report.full_match(&required)).then(|| {
                Failure::Mismatch(format!("{} table cell(s) do not match", report.mismatches))
            });
            for c in &report.cells {
                eprintln!(
                    "({},{}) expected {} computed {}: {}",
                    c.g,
                    c.e,
                    c.expected_order,
                    c.computed_order.map_or("-".to_string(), |o| o.to_string()),
                    c.status
                );
            }
            Ok(Output::Json {
                inputs: record_inputs(args),
                result: json!({ "report": to_value(&report), "records": to_value(&records) }),
                failure,
            })
        }
        Command::CheckConjectures(args) => {
            let records = table_records(cli.threads, args)?;
            let report = check_conjectures(&records)?;
            let failure = (!report.all_hold())
                .then(|| Failure::Mismatch("a conjecture fails on these records".to_string()));
            Ok(Output::Json {
                inputs: record_inputs(args),
                result: json!({ "allHold": report.all_hold(), "report": to_value(&report) }),
                failure,
            })
        }
        Command::Catalog { action } => catalog(action),
    }
}

fn json_output(inputs: Vec<String>, result: Value) -> Output {
    Output::Json {
        inputs,
        result,
        failure: None,
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

/// `@name` selects a catalog graph; anything else is graph6.
fn load_graph(arg: &str) -> Result<CubicGraph, Failure> {
    match arg.strip_prefix('@') {
        Some(name) => prisonforge::catalog(name).map_err(usage),
        None => parse_graph6(arg).map_err(usage),
    }
}

fn construct(args: &ConstructArgs) -> Result<Output, Failure> {
    let graphs = args
        .inputs
        .iter()
        .map(|s| load_graph(s))
        .collect::<Result<Vec<_>, _>>()?;
    let edges = args
        .edges
        .iter()
        .map(|s| s.parse::<Edge>().map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let arity = match args.kind {
        Kind::Bridge | Kind::TwoBond => 2,
        Kind::TwoEdge => 3,
        Kind::ThreeEdge => 0,
    };
    if arity > 0 && graphs.len() != arity {
        return Err(usage(format!(
            "expected {arity} inputs, got {}",
            graphs.len()
        )));
    }
    let edge = |i: usize| -> Result<Edge, Failure> {
        match edges.len() {
            0 => Ok(select_edge(&graphs[i])?.0),
            k if k == arity => Ok(edges[i]),
            k => Err(usage(format!("expected 0 or {arity} edges, got {k}"))),
        }
    };
    let result: ConstructionResult = match args.kind {
        Kind::Bridge => bridge_construct(&graphs[0], edge(0)?, &graphs[1], edge(1)?)?,
        Kind::TwoBond => two_bond_join(&graphs[0], edge(0)?, &graphs[1], edge(1)?)?,
        Kind::TwoEdge => two_edge_construct(
            &graphs[0],
            edge(0)?,
            &graphs[1],
            edge(1)?,
            &graphs[2],
            edge(2)?,
        )?,
        Kind::ThreeEdge => {
            let Some((base, rest)) = graphs.split_first() else {
                return Err(usage("three-edge needs a base graph"));
            };
            if !edges.is_empty() {
                return Err(usage("three-edge takes --vertex, not --edge"));
            }
            let m = base.order();
            let parts: Vec<&CubicGraph> = match rest.len() {
                1 => vec![&rest[0]; m],
                k if k == m => rest.iter().collect(),
                k => return Err(usage(format!("expected 1 or {m} part graphs, got {k}"))),
            };
            let parts = parts
                .into_iter()
                .enumerate()
                .map(|(i, g)| {
                    let v = match args.vertices.len() {
                        0 => select_vertex(g)?.0,
                        1 => args.vertices[0],
                        k if k == m => args.vertices[i],
                        k => return Err(usage(format!("expected 0, 1 or {m} vertices, got {k}"))),
                    };
                    Ok((g.clone(), v))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            three_edge_construct(base, &parts)?
        }
    };
    let value = json!({
        "graph6": emit_graph6(&result.graph),
        "claimsVerified": true,
        "construction": to_value(&result),
    });
    Ok(json_output(args.inputs.clone(), value))
}

fn generate(args: &GenerateArgs) -> Result<Output, Failure> {
    let task = match &args.task {
        Some(descriptor) => descriptor.parse::<GenerationTask>().map_err(usage)?,
        None => {
            let n = args.n.expect("required by clap");
            let girth_min = args.girth_min.expect("required by clap");
            let task = GenerationTask::new(n, girth_min)
                .and_then(|t| t.with_conn(args.conn))
                .map_err(usage)?;
            if args.part >= args.parts {
                return Err(usage(format!(
                    "part {} out of range for {} parts",
                    args.part, args.parts
                )));
            }
            if args.print_tasks {
                for t in split(&task, args.parts) {
                    print_line(&t.to_string());
                }
                return Ok(Output::Done);
            }
            split(&task, args.parts)[args.part]
        }
    };
    if args.count {
        let stats = generate_each(&task, |_| {});
        let result =
            json!({ "task": task.to_string(), "count": stats.emitted, "stats": to_value(&stats) });
        return Ok(json_output(Vec::new(), result));
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut failed = None;
    generate_each(&task, |g| {
        if failed.is_none() {
            if let Err(e) = writeln!(out, "{}", canonical_form(g).graph6()) {
                failed = Some(e);
            }
        }
    });
    if let Some(e) = failed.or_else(|| out.flush().err()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            return Err(usage(e));
        }
    }
    Ok(Output::Done)
}

fn needs_extended(g: usize, e: usize) -> bool {
    table_cell(g, e).map_or(g >= 6, |c| c.extended)
}

fn search(threads: usize, args: &SearchArgs) -> Result<Output, Failure> {
    if needs_extended(args.girth, args.conn) && !args.extended {
        return Err(usage(format!(
            "girth {} searches may run for hours; pass --extended to run them",
            args.girth
        )));
    }
    let cap = args
        .cap
        .unwrap_or_else(|| default_cap(args.girth, args.conn));
    let opts = SearchOptions {
        threads,
        checkpoint_dir: args.checkpoint_dir.clone(),
    };
    let record = find_prison_with(
        args.girth,
        args.conn,
        cap,
        &opts,
        progress(args.girth, args.conn),
    )?;
    if let Some(path) = &args.out {
        write_record(path, &record).map_err(usage)?;
    }
    Ok(json_output(Vec::new(), to_value(&record)))
}

fn progress(g: usize, e: usize) -> impl Fn(&prisonforge::prison::OrderStat) {
    move |s| {
        eprintln!(
            "g={g} e={e} order {}: {} generated, {} candidates, {} prisons",
            s.order, s.generated, s.candidates, s.prisons
        )
    }
}

/// Writes the record as JSON and its prisons as a graph6 sidecar.
fn write_record(path: &Path, record: &PrisonRecord) -> io::Result<()> {
    fs::write(path, render(&to_value(record)) + "\n")?;
    let mut lines = record.prisons.join("\n");
    lines.push('\n');
    fs::write(path.with_extension("g6"), lines)
}

fn record_inputs(args: &TableArgs) -> Vec<String> {
    args.records
        .iter()
        .map(|p| p.display().to_string())
        .collect()
}

/// Records from files, or fresh searches of the table cells.
fn table_records(threads: usize, args: &TableArgs) -> Result<Vec<PrisonRecord>, Failure> {
    if !args.records.is_empty() {
        let mut records = Vec::new();
        for path in &args.records {
            let text =
                fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            collect_records(&value, &mut records)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        }
        return Ok(records);
    }
    let opts = SearchOptions {
        threads,
        checkpoint_dir: args.checkpoint_dir.clone(),
    };
    let mut records = Vec::new();
    for cell in searchable_cells(args.extended) {
        let cap = default_cap(cell.g, cell.e);
        match find_prison_with(cell.g, cell.e, cap, &opts, progress(cell.g, cell.e)) {
            Ok(r) => records.push(r),
            // A missing cell shows up as a mismatch in the comparison.
            Err(PrisonError::NotFoundWithinCap { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(records)
}

/// Accepts a record, an array of them, or a report whose `result` holds
/// them (directly or under `records`).
fn collect_records(v: &Value, out: &mut Vec<PrisonRecord>) -> Result<(), serde_json::Error> {
    match v {
        Value::Array(items) => {
            for item in items {
                collect_records(item, out)?;
            }
        }
        Value::Object(map) if map.contains_key("prisons") => {
            out.push(serde_json::from_value(v.clone())?);
        }
        Value::Object(map) => {
            for key in ["result", "records"] {
                if let Some(inner) = map.get(key) {
                    collect_records(inner, out)?;
                }
            }
        }
        _ => {}
    }
    Ok(())
}

fn catalog(action: &CatalogAction) -> Result<Output, Failure> {
    let describe = |n: Named| {
        let x = n.expected();
        json!({
            "name": n.to_string(),
            "order": x.order,
            "girth": x.girth,
            "hamiltonian": x.hamiltonian,
            "edgeConnectivity": x.edge_connectivity,
        })
    };
    let result = match action {
        CatalogAction::List => Value::Array(Named::listing().into_iter().map(describe).collect()),
        CatalogAction::Show { name } => {
            let named: Named = name.trim_start_matches('@').parse().map_err(usage)?;
            let mut v = describe(named);
            v["graph6"] = Value::String(emit_graph6(&named.graph()));
            v
        }
    };
    Ok(json_output(Vec::new(), result))
}

fn to_value(x: &impl serde::Serialize) -> Value {
    camel_keys(serde_json::to_value(x).expect("reports serialize"))
}

/// Renames object keys from snake_case to camelCase, recursively.
fn camel_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (camel(&k), camel_keys(v)))
                .collect::<Map<_, _>>(),
        ),
        Value::Array(items) => Value::Array(items.into_iter().map(camel_keys).collect()),
        other => other,
    }
}

fn camel(key: &str) -> String {
    let mut out = String::with_capacity(key.len());
    let mut upper = false;
    for c in key.chars() {
        if c == '_' {
            upper = true;
        } else if upper {
            out.extend(c.to_uppercase());
            upper = false;
        } else {
            out.push(c);
        }
    }
    out
}

/// Prints to stdout, ignoring a reader that went away.
fn print_line(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

/// Pretty JSON; object keys come out sorted.
fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON renders")
}
