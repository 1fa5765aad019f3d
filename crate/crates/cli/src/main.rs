//! `triflow` — nowhere-zero 3-flow toolkit.
//!
//! Reads graphs as edge lists (`n m` header, one `tail head` line per
//! edge, `#` comments) or graph6 strings, decides nowhere-zero flow
//! existence, locates flow-irrelevant edges, certifies flow-criticality,
//! and surveys small graph universes. Exit code 0 means the command
//! produced its answer (for `solve` and `oracle`: a flow exists), 1 means
//! the answer is "no flow", 2 means the invocation itself failed.

use std::error::Error;
use std::io::Read;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use triflow::criticality::{bounds_report, certify_criticality, survey, SurveyOptions};
use triflow::families;
use triflow::flow::oracle_nz_flow_capped;
use triflow::graph::MultiGraph;
use triflow::io::{
    emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, BoundsDocument, CriticalDocument,
    FlowDocument, IrrelevantDocument, OracleDocument, SparseDocument,
};
use triflow::solver::{solve_components, solve_sparse, SolveOutcome};
use triflow::DEFAULT_ORACLE_CAP;

#[derive(Parser)]
#[command(
    name = "triflow",
    version,
    about = "Nowhere-zero 3-flow solver, irrelevant-edge finder, and criticality tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Decide nowhere-zero flow existence (components are solved separately)
    Solve {
        /// Input file; stdin when omitted or "-"
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        /// Emit the answer as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run one sparse solver round on a connected graph
    Sparse {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[arg(long)]
        json: bool,
    },
    /// Decide existence by exhaustive flow-space enumeration
    Oracle {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[arg(long)]
        json: bool,
    },
    /// Certify flow-criticality by exhaustive per-edge checks
    Critical {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[arg(long)]
        json: bool,
    },
    /// Check the density and structure bounds of a critical graph
    Bounds {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[arg(long)]
        json: bool,
    },
    /// Locate one flow-irrelevant edge, when a solver round yields one
    Irrelevant {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[arg(long)]
        json: bool,
    },
    /// Print a named graph
    Gen {
        #[arg(long, value_enum, global = true, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Enumerate a small-graph universe and certify every critical member
    Survey {
        /// Largest vertex count (≤ 7 simple, ≤ 3 with --multigraph)
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Loopless multigraphs with multiplicity ≤ 3 instead of simple graphs
        #[arg(long)]
        multigraph: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// The single edge
    K2,
    /// The complete graph on 4 vertices
    K4,
    /// The wheel with this many spokes (hub 0, rim 1..=spokes)
    Wheel { spokes: usize },
    /// Complete bipartite {0,1,2} vs {3..order-1} plus the edge 0-1
    K33e { order: usize },
    /// Seeded random connected multigraph
    Random {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(2);
        }
    }
}

fn read_graph(input: &Option<PathBuf>, format: GraphFormat) -> Result<MultiGraph, Box<dyn Error>> {
    let text = match input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)?,
        _ => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            buffer
        }
    };
    let graph = match format {
        GraphFormat::Edgelist => parse_edge_list(&text)?,
        GraphFormat::Graph6 => parse_graph6(&text)?,
    };
    Ok(graph)
}

fn oracle_cap() -> Result<usize, Box<dyn Error>> {
    match std::env::var("TRIFLOW_ORACLE_CAP") {
        Ok(raw) => Ok(raw
            .parse()
            .map_err(|_| format!("TRIFLOW_ORACLE_CAP must be a number, got {raw:?}"))?),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn print_flow_lines(doc: &FlowDocument) {
    match doc {
        FlowDocument::Found { flow, .. } => {
            println!("nowhere-zero flow found:");
            for record in flow {
                println!(
                    "  edge {}: {} -> {}  value {}",
                    record.edge, record.tail, record.head, record.value
                );
            }
        }
        FlowDocument::Absent { reason, .. } => {
            println!("no nowhere-zero flow ({reason})");
        }
    }
}

fn run(cli: Cli) -> Result<i32, Box<dyn Error>> {
    match cli.command {
        Command::Solve {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let outcome = solve_components(&g)?;
            let doc = FlowDocument::from_outcome(&g, &outcome);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                print_flow_lines(&doc);
            }
            Ok(if doc.exists() { 0 } else { 1 })
        }
        Command::Sparse {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let solve = solve_sparse(&g)?;
            let doc = SparseDocument::new(&g, &solve);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                match &solve.outcome {
                    SolveOutcome::FlowFound(_) => println!("branch {}: flow found", solve.branch),
                    SolveOutcome::NoFlow(reason) => {
                        println!("branch {}: no flow ({reason})", solve.branch)
                    }
                    SolveOutcome::IrrelevantEdge { edge, provenance } => println!(
                        "branch {}: irrelevant edge {} ({provenance})",
                        solve.branch, edge.0
                    ),
                }
                let b = &solve.budget;
                println!(
                    "budget: n={} m={} k={}/{} bound={}",
                    b.n, b.m, b.k_numerator, b.k_denominator, b.bound
                );
                if let (Some(dim), Some(space), Some(tested)) =
                    (b.b, b.enumeration_space, b.assignments_tested)
                {
                    println!("enumeration: b={dim} space={space} tested={tested}");
                }
            }
            Ok(0)
        }
        Command::Oracle {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let (flow, stats) = oracle_nz_flow_capped(&g, oracle_cap()?)?;
            let doc = OracleDocument::new(&g, &flow, &stats);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else if let Some(records) = &doc.flow {
                println!("nowhere-zero flow found:");
                for record in records {
                    println!(
                        "  edge {}: {} -> {}  value {}",
                        record.edge, record.tail, record.head, record.value
                    );
                }
                println!(
                    "(dimension {}, {} candidates checked)",
                    doc.flow_space_dimension, doc.candidates_checked
                );
            } else {
                println!(
                    "no nowhere-zero flow (dimension {}, {} candidates checked)",
                    doc.flow_space_dimension, doc.candidates_checked
                );
            }
            Ok(if doc.exists { 0 } else { 1 })
        }
        Command::Critical {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let report = certify_criticality(&g)?;
            let doc = CriticalDocument::new(&g, &report);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else if doc.critical {
                println!("critical: every edge contraction restores a nowhere-zero flow");
            } else {
                println!("not critical ({})", doc.evidence);
            }
            Ok(0)
        }
        Command::Bounds {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let report = bounds_report(&g)?;
            let doc = BoundsDocument::new(report);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                match &doc.bounds {
                    None => println!("not critical; no bounds to check"),
                    Some(b) => {
                        println!(
                            "critical graph: n={} m={} degree-3 vertices={} min degree={}",
                            b.n, b.m, b.degree3_count, b.min_degree
                        );
                        if let Some(tag) = &b.exceptional {
                            println!("exceptional case {tag}: density bounds do not apply");
                        }
                        println!(
                            "density 5m >= 8n+2: {}   strong 3m >= 5n: {}",
                            b.density_bound_holds, b.strong_density_bound_holds
                        );
                        println!(
                            "edge floor n+n3-1 = {}: holds={} tight={} wheel={} odd wheel={}",
                            b.edge_floor,
                            b.edge_floor_holds,
                            b.edge_floor_tight,
                            b.is_wheel,
                            b.is_odd_wheel
                        );
                        println!(
                            "min degree >= 3: {}   degree-3 vertices induce a forest: {}",
                            b.min_degree_at_least_three, b.degree3_induces_forest
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Irrelevant {
            input,
            format,
            json,
        } => {
            let g = read_graph(&input, format)?;
            let solve = solve_sparse(&g)?;
            let doc = IrrelevantDocument::new(&solve);
            if json {
                println!("{}", serde_json::to_string(&doc)?);
            } else {
                match (doc.irrelevant_edge, doc.provenance) {
                    (Some(edge), Some(provenance)) => {
                        println!("irrelevant edge: {edge} ({provenance})")
                    }
                    _ => println!("no irrelevant edge from this round"),
                }
            }
            Ok(0)
        }
        Command::Gen { format, family } => {
            let g = match family {
                FamilyCommand::K2 => families::k2(),
                FamilyCommand::K4 => families::k4(),
                FamilyCommand::Wheel { spokes } => families::wheel(spokes)?,
                FamilyCommand::K33e { order } => families::k33e(order)?,
                FamilyCommand::Random { n, m, seed } => families::random_connected(n, m, seed)?,
            };
            match format {
                GraphFormat::Edgelist => print!("{}", emit_edge_list(&g)),
                GraphFormat::Graph6 => println!("{}", emit_graph6(&g)?),
            }
            Ok(0)
        }
        Command::Survey {
            max_n,
            multigraph,
            json,
        } => {
            let census = survey(SurveyOptions {
                max_n,
                simple_only: !multigraph,
            })?;
            if json {
                println!("{}", serde_json::to_string(&census)?);
            } else {
                println!("{}", census.universe);
                println!(
                    "examined {} connected graphs; {} critical ({} classes)",
                    census.connected_graphs_examined,
                    census.critical_labelled_total,
                    census.classes.len()
                );
                for class in &census.classes {
                    println!(
                        "  n={} m={} degrees={:?} labelled copies={}{}",
                        class.n,
                        class.m,
                        class.degree_sequence,
                        class.labelled_count,
                        if class.bounds.is_wheel { "  (wheel)" } else { "" }
                    );
                }
                for summary in &census.min_edges_by_order {
                    println!(
                        "  minimum edges at n={}: {}",
                        summary.n, summary.min_edges
                    );
                }
            }
            Ok(0)
        }
    }
}
