//! Graph input/output and the JSON documents the CLI emits.
//!
//! Two text formats are supported. The *edge list* is the native one:
//! a header line `n m`, then one `tail head` line per edge, `#` starting a
//! comment anywhere on a line. The *graph6* format is the usual compact
//! encoding of simple graphs: 6 bits per byte offset by 63, upper-triangle
//! adjacency bits in column-major order. Parsed graph6 edges are oriented
//! from the lower to the higher vertex and numbered in bit order.
//!
//! The JSON documents mirror solver results field-for-field so two runs on
//! the same input serialize byte-identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criticality::{BoundsReport, CriticalityEvidence, CriticalityReport};
use crate::flow::{Flow, FlowError, OracleStats};
use crate::gf3::Gf3Vector;
use crate::graph::{EdgeId, GraphError, MultiGraph};
use crate::solver::{Branch, NoFlowReason, Provenance, SolveOutcome, SparseSolve, SparsityBudget};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: expected a \"vertices edges\" header")]
    BadHeader { line: usize },
    #[error("line {line}: expected a \"tail head\" edge line")]
    BadEdgeLine { line: usize },
    #[error("line {line}: vertex {vertex} is out of range for {n} vertices")]
    IndexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header announced {expected} edges, found {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("graph6 input is empty")]
    EmptyGraph6,
    #[error("graph6 byte {byte:#04x} at position {position} is out of range")]
    BadGraph6Byte { byte: u8, position: usize },
    #[error("graph6 order is too large for this tool")]
    Graph6OrderTooLarge,
    #[error("graph6 payload has {got} bytes, expected {expected}")]
    BadGraph6Length { got: usize, expected: usize },
    #[error("graph6 can only encode simple graphs")]
    NotSimple,
    #[error("flow document does not match the graph")]
    DocumentMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn two_numbers(line: &str) -> Option<(usize, usize)> {
    let mut tokens = line.split_whitespace();
    let a = tokens.next()?.parse().ok()?;
    let b = tokens.next()?.parse().ok()?;
    if tokens.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Parses the edge-list format. Line numbers in errors are 1-based and
/// refer to the original text, comments and blank lines included.
pub fn parse_edge_list(text: &str) -> Result<MultiGraph, IoError> {
    let mut significant = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, strip_comment(line).trim()))
        .filter(|(_, line)| !line.is_empty());

    let (header_line, header) = significant.next().ok_or(IoError::BadHeader { line: 1 })?;
    let (n, m) = two_numbers(header).ok_or(IoError::BadHeader { line: header_line })?;

    let mut edges = Vec::with_capacity(m);
    let mut got = 0usize;
    for (line, body) in significant {
        let (tail, head) = two_numbers(body).ok_or(IoError::BadEdgeLine { line })?;
        for vertex in [tail, head] {
            if vertex >= n {
                return Err(IoError::IndexOutOfRange { line, vertex, n });
            }
        }
        edges.push((tail, head));
        got += 1;
    }
    if got != m {
        return Err(IoError::WrongEdgeCount { expected: m, got });
    }
    Ok(MultiGraph::build(n, &edges)?)
}

/// Canonical edge-list text: header, then `tail head` per edge in id order.
pub fn emit_edge_list(g: &MultiGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.tail, e.head));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn graph6_payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Parses one graph6 line (an optional `>>graph6<<` prefix is accepted).
/// Edges run from the lower to the higher endpoint and are numbered in the
/// order their bits appear.
pub fn parse_graph6(text: &str) -> Result<MultiGraph, IoError> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(GRAPH6_HEADER).unwrap_or(trimmed);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(IoError::EmptyGraph6);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(IoError::BadGraph6Byte { byte, position });
        }
    }

    let (n, payload) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 2 {
            return Err(IoError::BadGraph6Length {
                got: bytes.len() - 1,
                expected: 3,
            });
        }
        if bytes[1] == 126 {
            // The 8-byte form encodes orders beyond anything this tool
            // can process.
            return Err(IoError::Graph6OrderTooLarge);
        }
        if bytes.len() < 4 {
            return Err(IoError::BadGraph6Length {
                got: bytes.len() - 1,
                expected: 3,
            });
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, &bytes[4..])
    };

    let expected = if n == 0 { 0 } else { graph6_payload_len(n) };
    if payload.len() != expected {
        return Err(IoError::BadGraph6Length {
            got: payload.len(),
            expected,
        });
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Ok(MultiGraph::build(n, &edges)?)
}

/// Encodes a simple graph as one graph6 line.
pub fn emit_graph6(g: &MultiGraph) -> Result<String, IoError> {
    if !g.is_simple() {
        return Err(IoError::NotSimple);
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        out.push(63 + (n >> 12 & 0x3f) as u8);
        out.push(63 + (n >> 6 & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    } else {
        return Err(IoError::Graph6OrderTooLarge);
    }

    let mut adjacency = vec![false; n * n];
    for e in g.edges() {
        adjacency[e.tail * n + e.head] = true;
        adjacency[e.head * n + e.tail] = true;
    }
    let mut current = 0u8;
    let mut filled = 0usize;
    for j in 1..n {
        for i in 0..j {
            current <<= 1;
            if adjacency[i * n + j] {
                current |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + current);
                current = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (current << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// One edge of a reported flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowEdgeRecord {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
    pub value: u8,
}

fn flow_records(g: &MultiGraph, flow: &Flow) -> Vec<FlowEdgeRecord> {
    g.edges()
        .iter()
        .map(|e| FlowEdgeRecord {
            edge: e.id.0,
            tail: e.tail,
            head: e.head,
            value: flow
                .value(g, e.id)
                .expect("flow bound to its graph")
                .residue(),
        })
        .collect()
}

/// The answer document for flow-existence queries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FlowDocument {
    Found {
        exists: bool,
        flow: Vec<FlowEdgeRecord>,
    },
    Absent {
        exists: bool,
        reason: String,
    },
}

impl FlowDocument {
    pub fn found(g: &MultiGraph, flow: &Flow) -> FlowDocument {
        FlowDocument::Found {
            exists: true,
            flow: flow_records(g, flow),
        }
    }

    pub fn absent(reason: &NoFlowReason) -> FlowDocument {
        FlowDocument::Absent {
            exists: false,
            reason: reason.to_string(),
        }
    }

    /// Builds the document for a definite outcome (`solve_full` /
    /// `solve_components` never return an irrelevant edge).
    pub fn from_outcome(g: &MultiGraph, outcome: &SolveOutcome) -> FlowDocument {
        match outcome {
            SolveOutcome::FlowFound(flow) => FlowDocument::found(g, flow),
            SolveOutcome::NoFlow(reason) => FlowDocument::absent(reason),
            SolveOutcome::IrrelevantEdge { .. } => {
                unreachable!("definite outcomes only")
            }
        }
    }

    pub fn exists(&self) -> bool {
        match self {
            FlowDocument::Found { exists, .. } | FlowDocument::Absent { exists, .. } => *exists,
        }
    }

    /// Re-checks a `Found` document against a graph from scratch: every
    /// edge record must match the graph and the values must form a
    /// nowhere-zero flow. `Absent` documents verify trivially.
    pub fn reverify(&self, g: &MultiGraph) -> Result<(), IoError> {
        let FlowDocument::Found { exists, flow } = self else {
            return Ok(());
        };
        if !exists || flow.len() != g.edge_count() {
            return Err(IoError::DocumentMismatch);
        }
        let mut values = Gf3Vector::zeros(g.edge_count());
        for record in flow {
            let id = EdgeId(record.edge);
            let Some(edge) = g.edge(id) else {
                return Err(IoError::DocumentMismatch);
            };
            if (edge.tail, edge.head) != (record.tail, record.head) {
                return Err(IoError::DocumentMismatch);
            }
            if record.value == 0 || record.value > 2 {
                return Err(IoError::DocumentMismatch);
            }
            let pos = g.edge_position(id).expect("edge exists");
            values.set(pos, crate::gf3::Gf3::new(record.value));
        }
        let checked = Flow::new(g, values).map_err(|_| IoError::DocumentMismatch)?;
        if !checked.is_nowhere_zero() {
            return Err(IoError::DocumentMismatch);
        }
        Ok(())
    }
}

/// The oracle's answer, with its enumeration statistics.
#[derive(Clone, Debug, Serialize)]
pub struct OracleDocument {
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow: Option<Vec<FlowEdgeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub flow_space_dimension: usize,
    pub candidates_checked: u64,
}

impl OracleDocument {
    pub fn new(g: &MultiGraph, flow: &Option<Flow>, stats: &OracleStats) -> OracleDocument {
        OracleDocument {
            exists: flow.is_some(),
            flow: flow.as_ref().map(|f| flow_records(g, f)),
            reason: if flow.is_some() {
                None
            } else {
                Some("flow space exhausted".to_string())
            },
            flow_space_dimension: stats.flow_space_dimension,
            candidates_checked: stats.candidates_checked,
        }
    }
}

/// One `solve_sparse` round as a document: the branch, the outcome, and
/// the sparsity budget.
#[derive(Clone, Debug, Serialize)]
pub struct SparseDocument {
    pub branch: Branch,
    pub outcome: SparseOutcomeDocument,
    pub budget: SparsityBudget,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum SparseOutcomeDocument {
    Flow {
        exists: bool,
        flow: Vec<FlowEdgeRecord>,
    },
    NoFlow {
        exists: bool,
        reason: String,
    },
    Irrelevant {
        irrelevant_edge: usize,
        provenance: Provenance,
    },
}

impl SparseDocument {
    pub fn new(g: &MultiGraph, solve: &SparseSolve) -> SparseDocument {
        let outcome = match &solve.outcome {
            SolveOutcome::FlowFound(flow) => SparseOutcomeDocument::Flow {
                exists: true,
                flow: flow_records(g, flow),
            },
            SolveOutcome::NoFlow(reason) => SparseOutcomeDocument::NoFlow {
                exists: false,
                reason: reason.to_string(),
            },
            SolveOutcome::IrrelevantEdge { edge, provenance } => {
                SparseOutcomeDocument::Irrelevant {
                    irrelevant_edge: edge.0,
                    provenance: *provenance,
                }
            }
        };
        SparseDocument {
            branch: solve.branch,
            outcome,
            budget: solve.budget.clone(),
        }
    }
}

/// The irrelevant-edge query document: `irrelevant_edge` is null when the
/// solver round settled the graph directly instead of reducing it.
#[derive(Clone, Debug, Serialize)]
pub struct IrrelevantDocument {
    pub irrelevant_edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl IrrelevantDocument {
    pub fn new(solve: &SparseSolve) -> IrrelevantDocument {
        match &solve.outcome {
            SolveOutcome::IrrelevantEdge { edge, provenance } => IrrelevantDocument {
                irrelevant_edge: Some(edge.0),
                provenance: Some(*provenance),
            },
            _ => IrrelevantDocument {
                irrelevant_edge: None,
                provenance: None,
            },
        }
    }
}

/// One per-edge criticality certificate in document form: the flow is on
/// the contracted (or loop-deleted) graph, whose edges keep their ids.
#[derive(Clone, Debug, Serialize)]
pub struct ContractionFlowRecord {
    pub edge: usize,
    pub deleted_loop: bool,
    pub child_flow: Vec<ChildFlowValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChildFlowValue {
    pub edge: usize,
    pub value: u8,
}

/// The criticality certification document.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalDocument {
    pub critical: bool,
    pub evidence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow: Option<Vec<FlowEdgeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction_flows: Option<Vec<ContractionFlowRecord>>,
}

impl CriticalDocument {
    pub fn new(g: &MultiGraph, report: &CriticalityReport) -> CriticalDocument {
        match &report.evidence {
            CriticalityEvidence::Disconnected => CriticalDocument {
                critical: false,
                evidence: "disconnected".to_string(),
                flow: None,
                failing_edge: None,
                contraction_flows: None,
            },
            CriticalityEvidence::HasFlow(flow) => CriticalDocument {
                critical: false,
                evidence: "has-flow".to_string(),
                flow: Some(flow_records(g, flow)),
                failing_edge: None,
                contraction_flows: None,
            },
            CriticalityEvidence::ContractionStillFlowless { edge } => CriticalDocument {
                critical: false,
                evidence: "contraction-still-flowless".to_string(),
                flow: None,
                failing_edge: Some(edge.0),
                contraction_flows: None,
            },
            CriticalityEvidence::AllContractionsFlow { checks } => {
                let records = checks
                    .iter()
                    .map(|check| {
                        let child = g
                            .contract_or_delete(check.edge)
                            .expect("certified edge exists");
                        ContractionFlowRecord {
                            edge: check.edge.0,
                            deleted_loop: check.contracted_as_deletion,
                            child_flow: child
                                .edges()
                                .iter()
                                .map(|e| ChildFlowValue {
                                    edge: e.id.0,
                                    value: check
                                        .flow
                                        .value(&child, e.id)
                                        .expect("check flow bound to child")
                                        .residue(),
                                })
                                .collect(),
                        }
                    })
                    .collect();
                CriticalDocument {
                    critical: true,
                    evidence: "all-contractions-flow".to_string(),
                    flow: None,
                    failing_edge: None,
                    contraction_flows: Some(records),
                }
            }
        }
    }
}

/// The bounds document: `{"critical": false}` for non-critical graphs,
/// the full report inline otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsDocument {
    pub critical: bool,
    #[serde(flatten)]
    pub bounds: Option<BoundsReport>,
}

impl BoundsDocument {
    pub fn new(bounds: Option<BoundsReport>) -> BoundsDocument {
        BoundsDocument {
            critical: bounds.is_some(),
            bounds,
        }
    }
}
