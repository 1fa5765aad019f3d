//! Flows over GF(3): incidence vectors, conservation checking, the flow
//! space, and an exhaustive oracle.
//!
//! A flow assigns an element of GF(3) to every edge so that at each vertex
//! the incidence-weighted sum is zero; it is nowhere-zero when every edge
//! carries 1 or 2. The incidence weight of vertex v on edge e is +1 when e
//! points at v, −1 (i.e. 2) when e leaves v, and 0 when e is a loop or not
//! incident — a loop enters and leaves at once, so its weight cancels and a
//! loop edge is unconstrained.
//!
//! The oracle here decides nowhere-zero flow existence by enumerating the
//! whole flow space (the kernel of the incidence matrix). It is deliberately
//! brute-force and structurally independent of the constraint-subspace
//! solver, which makes it the ground truth the solver is tested against.

use serde::Serialize;
use thiserror::Error;

use crate::gf3::{self, Gf3, Gf3Matrix, Gf3Vector};
use crate::graph::{EdgeCorrespondence, EdgeId, MultiGraph};

/// Default refusal threshold for the oracle: flow spaces of dimension above
/// this are not enumerated (3^21 candidates is past desk scale).
pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlowError {
    #[error("value vector has dimension {got}, graph has {expected} edges")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("flow space dimension {dimension} exceeds the oracle cap {cap}")]
    OracleCapExceeded { dimension: usize, cap: usize },
    #[error("flow is bound to a different graph (fingerprint mismatch)")]
    GraphMismatch,
    #[error("candidate violates conservation at vertices {0:?}")]
    NotAFlow(Vec<usize>),
    #[error("edge correspondence does not match these graphs")]
    CorrespondenceMismatch,
    #[error("graph error: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// Incidence weight of vertex `v` on edge position `pos`: +1 head, −1 tail,
/// 0 otherwise; loops weigh 0.
fn incidence_weight(g: &MultiGraph, v: usize, pos: usize) -> Gf3 {
    let e = g.edge_at(pos);
    if e.is_loop() || !e.is_incident(v) {
        gf3::ZERO
    } else if e.head == v {
        gf3::ONE
    } else {
        -gf3::ONE
    }
}

/// The incidence vector of a vertex: one coordinate per edge, in edge
/// position order.
pub fn incidence_vector(g: &MultiGraph, v: usize) -> Gf3Vector {
    assert!(v < g.vertex_count(), "vertex {v} out of range");
    Gf3Vector::from_coords((0..g.edge_count()).map(|p| incidence_weight(g, v, p)).collect())
}

/// The incidence matrix: one row per vertex, labelled by the vertex.
pub fn incidence_matrix(g: &MultiGraph) -> Gf3Matrix<usize> {
    Gf3Matrix::new(
        g.edge_count(),
        (0..g.vertex_count())
            .map(|v| (v, incidence_vector(g, v)))
            .collect(),
    )
}

/// Outcome of checking a candidate value vector against conservation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowVerdict {
    pub is_flow: bool,
    /// Vertices where the incidence-weighted sum is nonzero, ascending.
    pub violating_vertices: Vec<usize>,
    /// Edges carrying the value 0, ascending by id.
    pub zero_edges: Vec<EdgeId>,
}

impl FlowVerdict {
    pub fn is_nowhere_zero(&self) -> bool {
        self.is_flow && self.zero_edges.is_empty()
    }
}

/// Checks conservation of `values` (edge position order) at every vertex.
pub fn verify_flow(g: &MultiGraph, values: &Gf3Vector) -> Result<FlowVerdict, FlowError> {
    if values.dim() != g.edge_count() {
        return Err(FlowError::DimensionMismatch {
            expected: g.edge_count(),
            got: values.dim(),
        });
    }
    let mut violating_vertices = Vec::new();
    for v in 0..g.vertex_count() {
        if !incidence_vector(g, v).dot(values).is_zero() {
            violating_vertices.push(v);
        }
    }
    let zero_edges = (0..g.edge_count())
        .filter(|&p| values.get(p).is_zero())
        .map(|p| g.edge_at(p).id)
        .collect();
    Ok(FlowVerdict {
        is_flow: violating_vertices.is_empty(),
        violating_vertices,
        zero_edges,
    })
}

/// A verified flow, bound to the graph it was verified on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    graph_fingerprint: u64,
    values: Gf3Vector,
}

impl Flow {
    /// Wraps a value vector after checking conservation.
    pub fn new(g: &MultiGraph, values: Gf3Vector) -> Result<Flow, FlowError> {
        let verdict = verify_flow(g, &values)?;
        if !verdict.is_flow {
            return Err(FlowError::NotAFlow(verdict.violating_vertices));
        }
        Ok(Flow {
            graph_fingerprint: g.fingerprint(),
            values,
        })
    }

    pub fn values(&self) -> &Gf3Vector {
        &self.values
    }

    pub fn bound_to(&self, g: &MultiGraph) -> bool {
        self.graph_fingerprint == g.fingerprint()
    }

    /// Value on an edge, by id.
    pub fn value(&self, g: &MultiGraph, id: EdgeId) -> Result<Gf3, FlowError> {
        if !self.bound_to(g) {
            return Err(FlowError::GraphMismatch);
        }
        let pos = g
            .edge_position(id)
            .ok_or(crate::graph::GraphError::UnknownEdge(id))?;
        Ok(self.values.get(pos))
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    /// Re-checks the flow against a graph from scratch.
    pub fn verdict(&self, g: &MultiGraph) -> Result<FlowVerdict, FlowError> {
        if !self.bound_to(g) {
            return Err(FlowError::GraphMismatch);
        }
        verify_flow(g, &self.values)
    }
}

/// A basis of the flow space: the kernel of the incidence matrix. For a
/// graph with m edges, n vertices and c components the dimension is
/// m − n + c (loops are free coordinates and count toward it).
pub fn flow_space_basis(g: &MultiGraph) -> Vec<Flow> {
    let kernel = gf3::kernel_basis(&incidence_matrix(g));
    kernel
        .basis
        .into_iter()
        .map(|v| Flow::new(g, v).expect("kernel members satisfy conservation"))
        .collect()
}

/// How far the oracle had to look.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub flow_space_dimension: usize,
    pub candidates_checked: u64,
}

/// Decides nowhere-zero flow existence by enumerating every combination of
/// flow-space basis vectors in lexicographic coefficient order (first basis
/// vector most significant, digits 0 < 1 < 2) and returning the first
/// nowhere-zero member. Exhaustive and deterministic; refuses flow spaces
/// larger than `cap` dimensions.
pub fn oracle_nz_flow_capped(
    g: &MultiGraph,
    cap: usize,
) -> Result<(Option<Flow>, OracleStats), FlowError> {
    let basis = flow_space_basis(g);
    let dimension = basis.len();
    if dimension > cap {
        return Err(FlowError::OracleCapExceeded { dimension, cap });
    }
    let m = g.edge_count();

    // Odometer over the coefficient digits; the running sum is updated
    // incrementally (a digit step, wrapping included, always adds the basis
    // vector exactly once: +1 and −2 coincide mod 3).
    let mut digits = vec![0u8; dimension];
    let mut current = Gf3Vector::zeros(m);
    let total: u64 = 3u64.pow(dimension as u32);
    let mut checked = 0u64;
    loop {
        checked += 1;
        if current.iter().all(|c| !c.is_zero()) {
            let flow = Flow::new(g, current).expect("flow space members satisfy conservation");
            debug_assert!(flow.is_nowhere_zero());
            return Ok((
                Some(flow),
                OracleStats {
                    flow_space_dimension: dimension,
                    candidates_checked: checked,
                },
            ));
        }
        // Advance the least significant digit with carry.
        let mut place = dimension;
        loop {
            if place == 0 {
                debug_assert_eq!(checked, total);
                return Ok((
                    None,
                    OracleStats {
                        flow_space_dimension: dimension,
                        candidates_checked: checked,
                    },
                ));
            }
            place -= 1;
            current.add_scaled(basis[place].values(), gf3::ONE);
            if digits[place] == 2 {
                digits[place] = 0;
            } else {
                digits[place] += 1;
                break;
            }
        }
    }
}

/// [`oracle_nz_flow_capped`] at the default cap.
pub fn oracle_nz_flow(g: &MultiGraph) -> Result<Option<Flow>, FlowError> {
    oracle_nz_flow_capped(g, DEFAULT_ORACLE_CAP).map(|(flow, _)| flow)
}

/// Extends a flow on a contraction `g/e` back to `g`. The value on the
/// contracted edge is forced by conservation at its tail; conservation at
/// the head then holds automatically, which is asserted rather than assumed.
/// The extension is a flow on `g` but need not be nowhere-zero: the forced
/// value can legitimately be 0.
pub fn extend_flow(
    parent: &MultiGraph,
    child: &MultiGraph,
    correspondence: &EdgeCorrespondence,
    contracted_flow: &Flow,
) -> Result<Flow, FlowError> {
    if correspondence.parent_fingerprint != parent.fingerprint()
        || correspondence.child_fingerprint != child.fingerprint()
    {
        return Err(FlowError::CorrespondenceMismatch);
    }
    if !contracted_flow.bound_to(child) {
        return Err(FlowError::GraphMismatch);
    }
    let verdict = contracted_flow.verdict(child)?;
    if !verdict.is_flow {
        return Err(FlowError::NotAFlow(verdict.violating_vertices));
    }

    let e = *parent
        .edge(correspondence.contracted)
        .ok_or(FlowError::CorrespondenceMismatch)?;

    let mut values = Gf3Vector::zeros(parent.edge_count());
    for child_edge in child.edges() {
        let parent_id = correspondence.edge_map[&child_edge.id];
        let pos = parent
            .edge_position(parent_id)
            .ok_or(FlowError::CorrespondenceMismatch)?;
        values.set(pos, contracted_flow.value(child, child_edge.id)?);
    }

    // phi(e) = −(1/[tail,e]) · Σ_{e' ≠ e at tail} [tail,e']·phi(e').
    let forced_at = |v: usize| -> Gf3 {
        let mut sum = gf3::ZERO;
        for pos in 0..parent.edge_count() {
            if parent.edge_at(pos).id == e.id {
                continue;
            }
            sum += incidence_weight(parent, v, pos) * values.get(pos);
        }
        let weight_pos = parent.edge_position(e.id).expect("edge exists");
        let weight = incidence_weight(parent, v, weight_pos);
        -(weight.inverse().expect("non-loop incidence weight is nonzero")) * sum
    };
    let at_tail = forced_at(e.tail);
    let at_head = forced_at(e.head);
    assert_eq!(
        at_tail, at_head,
        "conservation must force the same value at both endpoints"
    );
    let e_pos = parent.edge_position(e.id).expect("edge exists");
    values.set(e_pos, at_tail);

    Flow::new(parent, values)
}

/// A flow of `g` obtained by extending a nowhere-zero flow of `g/e`; it is
/// nowhere-zero except possibly at `e` itself.
#[derive(Clone, Debug)]
pub struct ZeroEdgeExtension {
    pub flow: Flow,
    pub zero_at_edge: bool,
}

/// Contracts `e`, asks the oracle for a nowhere-zero flow of the child, and
/// extends it back. `None` when the child has no nowhere-zero flow.
pub fn zero_edge_flow(
    g: &MultiGraph,
    e: EdgeId,
    cap: usize,
) -> Result<Option<ZeroEdgeExtension>, FlowError> {
    let (child, correspondence) = g.contract(e)?;
    let (child_flow, _) = oracle_nz_flow_capped(&child, cap)?;
    let Some(child_flow) = child_flow else {
        return Ok(None);
    };
    let flow = extend_flow(g, &child, &correspondence, &child_flow)?;
    let zero_at_edge = flow.value(g, e)?.is_zero();
    debug_assert!(
        flow.values()
            .iter()
            .zip(g.edges())
            .all(|(value, edge)| edge.id == e || !value.is_zero()),
        "extension of a nowhere-zero flow can only vanish at the contracted edge"
    );
    Ok(Some(ZeroEdgeExtension { flow, zero_at_edge }))
}
