//! Per-vertex constraint subspaces and the independence test at the heart
//! of the sparse solver.
//!
//! Every vertex v contributes its incidence vector as a constraint any flow
//! must be orthogonal to. A degree-3 vertex contributes one more dimension:
//! the *equal-outflow* vector of an ordered pair of its edges (e1, e2),
//! which a flow is orthogonal to exactly when it pushes the same amount out
//! of v through e1 as through e2. A nowhere-zero flow is orthogonal to the
//! whole constraint subspace of every vertex, because at a degree-3 vertex a
//! nowhere-zero conservation pattern forces two edges to agree.
//!
//! Fixing a vertex u and stacking the generators of all other vertices
//! either proves them linearly independent — pinning the flow candidates to
//! a small complement enumerated elsewhere — or yields an explicit
//! dependency, which this module converts into a single edge whose
//! contraction provably preserves nowhere-zero flow existence in both
//! directions.

use thiserror::Error;

use crate::gf3::{self, dependency_combination, Gf3, Gf3Matrix, Gf3Vector};
use crate::graph::{EdgeId, MultiGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("graph has loops; remove them before building constraints")]
    LoopsPresent,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree}, need at least 3")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {edge} is not incident with vertex {vertex}")]
    NotIncident { vertex: usize, edge: EdgeId },
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("the two edges must be distinct")]
    EdgesNotDistinct,
    #[error("witness does not belong to this graph")]
    WitnessMismatch,
}

fn incidence_weight_at(g: &MultiGraph, v: usize, e: EdgeId) -> Gf3 {
    let edge = g.edge(e).expect("edge id valid");
    if edge.is_loop() || !edge.is_incident(v) {
        gf3::ZERO
    } else if edge.head == v {
        gf3::ONE
    } else {
        -gf3::ONE
    }
}

/// The equal-outflow vector of an ordered pair of distinct non-loop edges
/// at `v`: the incidence weight of e1 at coordinate e1, minus the weight of
/// e2 at coordinate e2, zero elsewhere. Swapping the pair negates it.
pub fn equal_outflow_vector(
    g: &MultiGraph,
    v: usize,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<Gf3Vector, ConstraintError> {
    if v >= g.vertex_count() {
        return Err(ConstraintError::VertexOutOfRange(v));
    }
    if e1 == e2 {
        return Err(ConstraintError::EdgesNotDistinct);
    }
    let mut out = Gf3Vector::zeros(g.edge_count());
    for e in [e1, e2] {
        let edge = g
            .edge(e)
            .ok_or(ConstraintError::NotIncident { vertex: v, edge: e })?;
        if !edge.is_incident(v) {
            return Err(ConstraintError::NotIncident { vertex: v, edge: e });
        }
        if edge.is_loop() {
            return Err(ConstraintError::LoopEdge(e));
        }
    }
    let p1 = g.edge_position(e1).expect("checked above");
    let p2 = g.edge_position(e2).expect("checked above");
    out.set(p1, incidence_weight_at(g, v, e1));
    out.set(p2, -incidence_weight_at(g, v, e2));
    Ok(out)
}

/// Which generator of a vertex's constraint subspace a matrix row is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorKind {
    /// The incidence vector of the vertex.
    Incidence,
    /// The equal-outflow vector of the vertex's two lowest-id edges (only
    /// degree-3 vertices carry one).
    EqualOutflow { e1: EdgeId, e2: EdgeId },
}

/// Label of one constraint-matrix row: which vertex, which generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GeneratorLabel {
    pub vertex: usize,
    pub kind: GeneratorKind,
}

/// The constraint generators of every vertex of a loopless graph: the
/// incidence vector always, plus the equal-outflow vector of the two
/// lowest-id incident edges when the degree is exactly 3.
///
/// For a degree-3 vertex the two generators are linearly independent (the
/// incidence vector is nonzero on the third edge, where the equal-outflow
/// vector vanishes), so the subspace has dimension 2 and exactly 9 members:
/// zero, ± the incidence vector, and the six ordered-pair equal-outflow
/// vectors. For any other degree it is the line through the incidence
/// vector. Which pair of edges seeds the degree-3 case does not matter; the
/// span is the same.
#[derive(Clone, Debug)]
pub struct VertexGenerators {
    graph_fingerprint: u64,
    per_vertex: Vec<Vec<(GeneratorLabel, Gf3Vector)>>,
}

impl VertexGenerators {
    pub fn build(g: &MultiGraph) -> Result<Self, ConstraintError> {
        if g.has_loops() {
            return Err(ConstraintError::LoopsPresent);
        }
        let mut per_vertex = Vec::with_capacity(g.vertex_count());
        for v in 0..g.vertex_count() {
            let mut generators = vec![(
                GeneratorLabel {
                    vertex: v,
                    kind: GeneratorKind::Incidence,
                },
                crate::flow::incidence_vector(g, v),
            )];
            if g.degree(v) == 3 {
                let incident = g.incident_edge_ids(v);
                debug_assert_eq!(incident.len(), 3, "loopless degree-3 vertex");
                let (e1, e2) = (incident[0], incident[1]);
                let pair = equal_outflow_vector(g, v, e1, e2)?;
                // Independence of the two generators: the incidence vector
                // is nonzero at the third edge, outside the pair's support.
                let third = g.edge_position(incident[2]).expect("edge exists");
                debug_assert!(!generators[0].1.get(third).is_zero());
                debug_assert!(pair.get(third).is_zero());
                generators.push((
                    GeneratorLabel {
                        vertex: v,
                        kind: GeneratorKind::EqualOutflow { e1, e2 },
                    },
                    pair,
                ));
            }
            per_vertex.push(generators);
        }
        Ok(VertexGenerators {
            graph_fingerprint: g.fingerprint(),
            per_vertex,
        })
    }

    pub fn for_vertex(&self, v: usize) -> &[(GeneratorLabel, Gf3Vector)] {
        &self.per_vertex[v]
    }

    /// Subspace dimension at `v`: 2 for degree-3 vertices, 1 otherwise.
    pub fn dimension_at(&self, v: usize) -> usize {
        self.per_vertex[v].len()
    }

    pub fn bound_to(&self, g: &MultiGraph) -> bool {
        self.graph_fingerprint == g.fingerprint()
    }
}

/// A proven linear dependency among the constraint generators of all
/// vertices other than `excluded`: per-vertex constraint vectors x_v, not
/// all zero, with x_excluded = 0 and Σ_v x_v = 0.
#[derive(Clone, Debug)]
pub struct DependencyWitness {
    graph_fingerprint: u64,
    pub excluded: usize,
    /// One vector per vertex (index = vertex); the excluded vertex's entry
    /// is zero.
    pub vertex_vectors: Vec<Gf3Vector>,
    /// The nonzero generator coefficients that produced the vectors.
    pub coefficients: Vec<(GeneratorLabel, Gf3)>,
}

impl DependencyWitness {
    /// Re-derives the witness invariants against a graph: the vectors sum
    /// to zero, the excluded vertex contributes nothing, at least one vertex
    /// contributes something, and each x_v is rebuilt by its recorded
    /// generator combination.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), ConstraintError> {
        if self.graph_fingerprint != g.fingerprint()
            || self.vertex_vectors.len() != g.vertex_count()
            || self.excluded >= g.vertex_count()
        {
            return Err(ConstraintError::WitnessMismatch);
        }
        let generators = VertexGenerators::build(g)?;
        let mut total = Gf3Vector::zeros(g.edge_count());
        let mut any_nonzero = false;
        for (v, x) in self.vertex_vectors.iter().enumerate() {
            if x.dim() != g.edge_count() {
                return Err(ConstraintError::WitnessMismatch);
            }
            total.add_scaled(x, gf3::ONE);
            any_nonzero |= !x.is_zero();

            let mut rebuilt = Gf3Vector::zeros(g.edge_count());
            for (label, coeff) in &self.coefficients {
                if label.vertex != v {
                    continue;
                }
                let vector = generators
                    .for_vertex(v)
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, vec)| vec)
                    .ok_or(ConstraintError::WitnessMismatch)?;
                rebuilt.add_scaled(vector, *coeff);
            }
            if &rebuilt != x {
                return Err(ConstraintError::WitnessMismatch);
            }
        }
        if !self.vertex_vectors[self.excluded].is_zero() || !total.is_zero() || !any_nonzero {
            return Err(ConstraintError::WitnessMismatch);
        }
        Ok(())
    }
}

/// The linearly independent case: the stacked generators of every vertex
/// except `excluded`, with their echelon form.
#[derive(Clone, Debug)]
pub struct IndependentConstraints {
    graph_fingerprint: u64,
    pub excluded: usize,
    pub row_labels: Vec<GeneratorLabel>,
    pub echelon: gf3::EchelonForm,
    /// Σ_{v ≠ excluded} dim(constraint subspace of v); equals the rank.
    pub expected_rank: usize,
}

impl IndependentConstraints {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn bound_to(&self, g: &MultiGraph) -> bool {
        self.graph_fingerprint == g.fingerprint()
    }
}

#[derive(Clone, Debug)]
pub enum IndependenceOutcome {
    Independent(IndependentConstraints),
    Dependent(DependencyWitness),
}

/// Stacks the constraint generators of every vertex other than `u` and
/// tests their linear independence.
///
/// The expected rank is computed from actual degrees — (number of vertices
/// − 1) plus the number of degree-3 vertices other than `u` — so the test
/// is meaningful for any `u` of degree ≥ 3, though the solver only ever
/// excludes a vertex of maximum degree ≥ 4.
pub fn independence_test(
    g: &MultiGraph,
    u: usize,
) -> Result<IndependenceOutcome, ConstraintError> {
    if u >= g.vertex_count() {
        return Err(ConstraintError::VertexOutOfRange(u));
    }
    if g.has_loops() {
        return Err(ConstraintError::LoopsPresent);
    }
    if !g.is_connected() {
        return Err(ConstraintError::Disconnected);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) < 3) {
        return Err(ConstraintError::DegreeTooSmall {
            vertex: v,
            degree: g.degree(v),
        });
    }

    let generators = VertexGenerators::build(g)?;
    let mut rows = Vec::new();
    for v in 0..g.vertex_count() {
        if v == u {
            continue;
        }
        for (label, vector) in generators.for_vertex(v) {
            rows.push((*label, vector.clone()));
        }
    }
    let expected_rank = rows.len();
    let matrix = Gf3Matrix::new(g.edge_count(), rows);

    match dependency_combination(&matrix) {
        None => {
            let echelon = gf3::rref(&matrix);
            assert_eq!(echelon.rank(), expected_rank);
            Ok(IndependenceOutcome::Independent(IndependentConstraints {
                graph_fingerprint: g.fingerprint(),
                excluded: u,
                row_labels: matrix.labels().to_vec(),
                echelon,
                expected_rank,
            }))
        }
        Some(dependency) => {
            let mut vertex_vectors = vec![Gf3Vector::zeros(g.edge_count()); g.vertex_count()];
            for (label, coeff) in &dependency.coefficients {
                let vector = generators
                    .for_vertex(label.vertex)
                    .iter()
                    .find(|(l, _)| l == label)
                    .map(|(_, v)| v)
                    .expect("label came from these generators");
                vertex_vectors[label.vertex].add_scaled(vector, *coeff);
            }
            let witness = DependencyWitness {
                graph_fingerprint: g.fingerprint(),
                excluded: u,
                vertex_vectors,
                coefficients: dependency.coefficients,
            };
            // A nonzero coefficient at v forces x_v ≠ 0 (the per-vertex
            // generators are independent), so the witness is nontrivial.
            witness.validate(g).expect("freshly built witness validates");
            Ok(IndependenceOutcome::Dependent(witness))
        }
    }
}

/// Converts a dependency witness into an edge whose contraction preserves
/// nowhere-zero flow existence in both directions.
///
/// Searches breadth-first from the excluded vertex through the region where
/// the witness vanishes (edges scanned in ascending id order), and returns
/// the first edge leading out of it. Its far endpoint w necessarily has
/// degree 3 with witness vector vanishing on the found edge — both facts
/// are asserted, since the lifting argument leans on them.
pub fn irrelevant_edge_from_witness(
    g: &MultiGraph,
    witness: &DependencyWitness,
) -> Result<EdgeId, ConstraintError> {
    witness.validate(g)?;

    let zero_at = |v: usize| witness.vertex_vectors[v].is_zero();
    debug_assert!(zero_at(witness.excluded));

    let mut visited = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([witness.excluded]);
    visited[witness.excluded] = true;
    while let Some(v) = queue.pop_front() {
        for e in g.incident_edge_ids(v) {
            let w = g.edge(e).expect("incident edge exists").other_endpoint(v);
            if zero_at(w) {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
                continue;
            }
            // Boundary of the zero region. The witness sums to zero and
            // every other vertex's vector vanishes at e, so x_w does too;
            // a vector in w's constraint subspace vanishing on an incident
            // edge can only be an equal-outflow vector, forcing degree 3.
            let position = g.edge_position(e).expect("edge exists");
            assert!(
                witness.vertex_vectors[w].get(position).is_zero(),
                "witness vector at the boundary vertex must vanish on the crossing edge"
            );
            assert_eq!(
                g.degree(w),
                3,
                "boundary vertex of a dependency witness must have degree 3"
            );
            return Ok(e);
        }
    }
    unreachable!("a connected graph with a nontrivial witness has a boundary edge")
}

/// The orthogonal complement of the independent constraint stack: the space
/// every nowhere-zero flow lives in, parametrised by its free edges.
#[derive(Clone, Debug)]
pub struct ConstraintComplement {
    pub excluded: usize,
    /// Complement dimension b = edge count − rank.
    pub dimension: usize,
    /// The free edges B: values there determine a member completely.
    pub free_edges: Vec<EdgeId>,
    pub basis: Vec<Gf3Vector>,
    /// For every non-free edge, the weights expressing its coordinate from
    /// the values on the free edges (in free-edge order).
    pub coefficients: Vec<(EdgeId, Gf3Vector)>,
    kernel: gf3::KernelBasis,
}

impl ConstraintComplement {
    /// The unique member with the given values on the free edges.
    pub fn member_from_free_values(&self, free_values: &Gf3Vector) -> Gf3Vector {
        self.kernel.reconstruct(free_values)
    }
}

/// Computes the orthogonal complement from an independent constraint stack.
pub fn constraint_complement(
    g: &MultiGraph,
    independent: &IndependentConstraints,
) -> Result<ConstraintComplement, ConstraintError> {
    if !independent.bound_to(g) {
        return Err(ConstraintError::WitnessMismatch);
    }
    let kernel = gf3::kernel_from_echelon(&independent.echelon);
    let free_edges: Vec<EdgeId> = kernel
        .free_columns
        .iter()
        .map(|&c| g.edge_at(c).id)
        .collect();
    let coefficients = kernel
        .coefficients
        .iter()
        .map(|(col, weights)| (g.edge_at(*col).id, weights.clone()))
        .collect();
    debug_assert_eq!(
        kernel.basis.len(),
        g.edge_count() - independent.echelon.rank()
    );
    Ok(ConstraintComplement {
        excluded: independent.excluded,
        dimension: kernel.basis.len(),
        free_edges,
        basis: kernel.basis.clone(),
        coefficients,
        kernel,
    })
}
