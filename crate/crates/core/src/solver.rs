//! The sparse nowhere-zero flow solver and the recursive full solver.
//!
//! `solve_sparse` runs one round of the decision procedure on a connected
//! multigraph, in a fixed branch order:
//!
//! 1. *preprocess* — strip loops (they are unconstrained; each gets value 1
//!    for later re-attachment), answer trivially small graphs, and bail out
//!    at degree-1 (no flow) or degree-2 (both incident edges are irrelevant;
//!    the lowest-id one is reported) vertices;
//! 2. *cubic shortcut* — a loopless 3-regular graph has a nowhere-zero flow
//!    exactly when it is bipartite, with an explicit flow in that case;
//! 3. *independence* — otherwise a vertex u of maximum degree (≥ 4 here) is
//!    excluded and the constraint generators of the remaining vertices are
//!    stacked: a dependency turns into an irrelevant edge, independence pins
//!    every nowhere-zero flow into a complement of dimension b, enumerated
//!    exhaustively over its 2^b candidate sign patterns.
//!
//! The dimension b is tied to the edge surplus above 5n/3: with minimum
//! degree 3 and an excluded vertex of degree ≥ 4, counting degrees gives
//! b ≤ 3k + 1 where k = m − 5n/3 (an exact rational). The solver asserts
//! this bound on every enumeration and reports it in [`SparsityBudget`].
//!
//! `solve_full` drives `solve_sparse` to an actual answer: every
//! irrelevant-edge outcome is followed by contracting that edge and
//! recursing, and found flows are lifted back up through the contractions —
//! each lift is forced by conservation and checked to stay nowhere-zero.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::constraints::{
    constraint_complement, independence_test, irrelevant_edge_from_witness, ConstraintError,
    IndependenceOutcome,
};
use crate::flow::{extend_flow, Flow, FlowError};
use crate::gf3::{self, Gf3, Gf3Vector};
use crate::graph::{EdgeId, GraphError, MultiGraph};

/// Complement dimensions at or above this are refused rather than
/// enumerated; 2^40 candidates is far past desk scale.
const ENUMERATION_GUARD_BITS: usize = 40;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("input graph is disconnected; solve components separately")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree}; the graph is not 3-regular")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph has loops")]
    LoopsPresent,
    #[error("complement dimension {b} is too large to enumerate")]
    EnumerationTooLarge { b: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
}

/// Why no nowhere-zero flow exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoFlowReason {
    /// A vertex of degree one cannot conserve a nonzero value.
    DegreeOneVertex(usize),
    /// 3-regular and not bipartite.
    NonBipartiteCubic,
    /// Every candidate in the constraint complement had a zero edge.
    ComplementExhausted,
    /// Some connected component of a disconnected input has no flow.
    ComponentFailure {
        component: usize,
        reason: Box<NoFlowReason>,
    },
}

impl fmt::Display for NoFlowReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoFlowReason::DegreeOneVertex(_) => write!(f, "degree-1 vertex"),
            NoFlowReason::NonBipartiteCubic => write!(f, "non-bipartite cubic"),
            NoFlowReason::ComplementExhausted => write!(f, "V^⊥ exhausted"),
            NoFlowReason::ComponentFailure { .. } => write!(f, "component-wise failure"),
        }
    }
}

/// How an irrelevant edge was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Incident to a degree-2 vertex.
    DegreeTwo,
    /// Boundary edge of a constraint dependency witness.
    DependencyWitness,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::DegreeTwo => write!(f, "degree-2"),
            Provenance::DependencyWitness => write!(f, "dependency-witness"),
        }
    }
}

/// Result of one solver round.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    /// A verified nowhere-zero flow of the input graph.
    FlowFound(Flow),
    NoFlow(NoFlowReason),
    /// An edge whose contraction preserves nowhere-zero flow existence in
    /// both directions; the question continues on the contraction.
    IrrelevantEdge { edge: EdgeId, provenance: Provenance },
}

impl SolveOutcome {
    pub fn flow(&self) -> Option<&Flow> {
        match self {
            SolveOutcome::FlowFound(f) => Some(f),
            _ => None,
        }
    }
}

/// Which branch of `solve_sparse` produced the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Preprocess,
    CubicBipartite,
    DependencyWitness,
    ComplementEnumeration,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Preprocess => write!(f, "preprocess"),
            Branch::CubicBipartite => write!(f, "cubic-bipartite"),
            Branch::DependencyWitness => write!(f, "dependency-witness"),
            Branch::ComplementEnumeration => write!(f, "complement-enumeration"),
        }
    }
}

/// The sparsity accounting of one solver round, on the loop-free reduced
/// graph: k = m − 5n/3 as an exact rational (`k_numerator`/3), and the
/// enumeration bound 3·max(k, 0) + 1 every complement dimension b must
/// respect. The enumeration fields are present only when the complement
/// branch ran; `enumeration_space` is 2^b and `assignments_tested` how many
/// candidates were actually built (all of them unless a flow was found).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityBudget {
    pub n: usize,
    pub m: usize,
    pub k_numerator: i64,
    pub k_denominator: u8,
    pub bound: u64,
    pub b: Option<usize>,
    pub enumeration_space: Option<u64>,
    pub assignments_tested: Option<u64>,
}

impl SparsityBudget {
    fn new(reduced: &MultiGraph) -> Self {
        let n = reduced.vertex_count();
        let m = reduced.edge_count();
        let k_numerator = 3 * m as i64 - 5 * n as i64;
        SparsityBudget {
            n,
            m,
            k_numerator,
            k_denominator: 3,
            bound: k_numerator.max(0) as u64 + 1,
            b: None,
            enumeration_space: None,
            assignments_tested: None,
        }
    }
}

/// A `solve_sparse` result: the outcome, the branch that produced it, and
/// the sparsity accounting.
#[derive(Clone, Debug)]
pub struct SparseSolve {
    pub outcome: SolveOutcome,
    pub branch: Branch,
    pub budget: SparsityBudget,
}

/// One preprocessing action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreprocessAction {
    /// The loop `edge` was removed and will carry `value` in any lifted flow.
    RemoveLoop { edge: EdgeId, value: Gf3 },
}

/// Preprocessing result: the loop-free reduced graph, the action log, and
/// possibly an early outcome. Any flow inside the early outcome is a flow
/// of the *reduced* graph; `attach_loop_values` lifts it back.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    pub reduced: MultiGraph,
    pub actions: Vec<PreprocessAction>,
    pub early: Option<SolveOutcome>,
}

/// Strips loops and settles the small-degree cases of a connected graph:
/// at most one vertex (trivial flow), a degree-1 vertex (no flow), a
/// degree-2 vertex (its lowest-id incident edge is irrelevant — conservation
/// forces both its edges to agree up to sign, so contraction loses nothing).
/// Scans pick the lowest-id vertex. Otherwise the reduced graph is loop-free
/// with minimum degree ≥ 3.
pub fn preprocess(g: &MultiGraph) -> Result<Preprocessed, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }

    let mut reduced = g.clone();
    let mut actions = Vec::new();
    for e in g.edges() {
        if e.is_loop() {
            reduced = reduced.remove_edge(e.id)?;
            actions.push(PreprocessAction::RemoveLoop {
                edge: e.id,
                value: gf3::ONE,
            });
        }
    }

    let early = if reduced.vertex_count() <= 1 {
        let empty = Flow::new(&reduced, Gf3Vector::zeros(0)).expect("edgeless graph");
        Some(SolveOutcome::FlowFound(empty))
    } else {
        let degrees = reduced.degrees();
        if let Some(v) = degrees.iter().position(|&d| d == 1) {
            Some(SolveOutcome::NoFlow(NoFlowReason::DegreeOneVertex(v)))
        } else if let Some(v) = degrees.iter().position(|&d| d == 2) {
            let edge = reduced.incident_edge_ids(v)[0];
            Some(SolveOutcome::IrrelevantEdge {
                edge,
                provenance: Provenance::DegreeTwo,
            })
        } else {
            debug_assert!(reduced.min_degree() >= 3);
            None
        }
    };

    Ok(Preprocessed {
        reduced,
        actions,
        early,
    })
}

/// Decides the cubic case: a loopless 3-regular graph has a nowhere-zero
/// flow exactly when it is bipartite, in which case sending one unit from
/// the side of vertex 0 to the other side across every edge works (each
/// vertex then sees three equal contributions, summing to zero in GF(3)).
pub fn cubic_bipartite_flow(g: &MultiGraph) -> Result<SolveOutcome, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    if g.has_loops() {
        return Err(SolverError::LoopsPresent);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) != 3) {
        return Err(SolverError::NotCubic {
            vertex: v,
            degree: g.degree(v),
        });
    }

    let Some(side) = g.bipartition() else {
        return Ok(SolveOutcome::NoFlow(NoFlowReason::NonBipartiteCubic));
    };
    let values = Gf3Vector::from_coords(
        g.edges()
            .iter()
            .map(|e| {
                if side[e.tail] == 0 {
                    gf3::ONE // oriented with the unit: tail on side 0
                } else {
                    gf3::TWO // oriented against it
                }
            })
            .collect(),
    );
    let flow = Flow::new(g, values).expect("bipartite orientation satisfies conservation");
    assert!(flow.is_nowhere_zero());
    Ok(SolveOutcome::FlowFound(flow))
}

/// Re-attaches removed loops to a flow of the reduced graph, producing a
/// flow of the original graph.
fn attach_loop_values(
    original: &MultiGraph,
    reduced: &MultiGraph,
    actions: &[PreprocessAction],
    flow: &Flow,
) -> Flow {
    let mut values = Gf3Vector::zeros(original.edge_count());
    for e in reduced.edges() {
        let pos = original
            .edge_position(e.id)
            .expect("reduced edges exist in the original");
        values.set(
            pos,
            flow.value(reduced, e.id).expect("flow bound to reduced"),
        );
    }
    for action in actions {
        let PreprocessAction::RemoveLoop { edge, value } = action;
        let pos = original
            .edge_position(*edge)
            .expect("removed loops exist in the original");
        values.set(pos, *value);
    }
    Flow::new(original, values).expect("loops are unconstrained")
}

/// One round of the sparse decision procedure on a connected multigraph.
/// Returns a verified flow, a proof-backed "no flow", or an irrelevant edge
/// to contract, together with branch provenance and sparsity accounting.
pub fn solve_sparse(g: &MultiGraph) -> Result<SparseSolve, SolverError> {
    let (solve, _) = solve_sparse_parts(g)?;
    Ok(solve)
}

/// `solve_sparse` plus the preprocessing split, which the full solver needs
/// to contract irrelevant edges on the reduced graph and lift flows back.
fn solve_sparse_parts(g: &MultiGraph) -> Result<(SparseSolve, Preprocessed), SolverError> {
    let pre = preprocess(g)?;
    let reduced = &pre.reduced;
    let mut budget = SparsityBudget::new(reduced);

    if let Some(early) = &pre.early {
        let outcome = match early {
            SolveOutcome::FlowFound(flow) => {
                SolveOutcome::FlowFound(attach_loop_values(g, reduced, &pre.actions, flow))
            }
            other => other.clone(),
        };
        let solve = SparseSolve {
            outcome,
            branch: Branch::Preprocess,
            budget,
        };
        return Ok((solve, pre));
    }

    if reduced.is_regular(3) {
        let outcome = match cubic_bipartite_flow(reduced)? {
            SolveOutcome::FlowFound(flow) => {
                SolveOutcome::FlowFound(attach_loop_values(g, reduced, &pre.actions, &flow))
            }
            other => other,
        };
        let solve = SparseSolve {
            outcome,
            branch: Branch::CubicBipartite,
            budget,
        };
        return Ok((solve, pre));
    }

    // Exclude a vertex of maximum degree, lowest id on ties; it has degree
    // ≥ 4 because the graph is not 3-regular and has minimum degree ≥ 3.
    let degrees = reduced.degrees();
    let mut u = 0;
    for v in 1..reduced.vertex_count() {
        if degrees[v] > degrees[u] {
            u = v;
        }
    }
    debug_assert!(degrees[u] >= 4);

    match independence_test(reduced, u)? {
        IndependenceOutcome::Dependent(witness) => {
            let edge = irrelevant_edge_from_witness(reduced, &witness)?;
            let solve = SparseSolve {
                outcome: SolveOutcome::IrrelevantEdge {
                    edge,
                    provenance: Provenance::DependencyWitness,
                },
                branch: Branch::DependencyWitness,
                budget,
            };
            Ok((solve, pre))
        }
        IndependenceOutcome::Independent(data) => {
            let complement = constraint_complement(reduced, &data)?;
            let b = complement.dimension;
            assert!(
                b as u64 <= budget.bound,
                "complement dimension {b} exceeds the sparsity bound {}",
                budget.bound
            );
            if b >= ENUMERATION_GUARD_BITS {
                return Err(SolverError::EnumerationTooLarge { b });
            }

            let space = 1u64 << b;
            budget.b = Some(b);
            budget.enumeration_space = Some(space);

            // Odometer over {1,2}^B, free edges ascending by id, the last
            // one cycling fastest, value 1 before 2.
            let mut found = None;
            let mut tested = 0u64;
            for counter in 0..space {
                tested += 1;
                let free = Gf3Vector::from_coords(
                    (0..b)
                        .map(|j| {
                            if counter >> (b - 1 - j) & 1 == 0 {
                                gf3::ONE
                            } else {
                                gf3::TWO
                            }
                        })
                        .collect(),
                );
                let member = complement.member_from_free_values(&free);
                if member.iter().all(|c| !c.is_zero()) {
                    let flow = Flow::new(reduced, member)
                        .expect("complement members satisfy conservation");
                    found = Some(flow);
                    break;
                }
            }
            budget.assignments_tested = Some(tested);

            let outcome = match found {
                Some(flow) => {
                    let lifted = attach_loop_values(g, reduced, &pre.actions, &flow);
                    let verdict = lifted.verdict(g).expect("flow bound to g");
                    assert!(verdict.is_nowhere_zero());
                    SolveOutcome::FlowFound(lifted)
                }
                None => SolveOutcome::NoFlow(NoFlowReason::ComplementExhausted),
            };
            let solve = SparseSolve {
                outcome,
                branch: Branch::ComplementEnumeration,
                budget,
            };
            Ok((solve, pre))
        }
    }
}

/// Decides nowhere-zero flow existence for a connected multigraph by
/// driving `solve_sparse` to completion: irrelevant edges are contracted
/// and the answer of the contraction is lifted back, so the result is
/// always a definite `FlowFound` (verified nowhere-zero) or `NoFlow`.
pub fn solve_full(g: &MultiGraph) -> Result<SolveOutcome, SolverError> {
    // Each recursion step removes one edge by contraction, so the depth
    // never exceeds the vertex count.
    solve_full_inner(g, g.vertex_count() + 1)
}

fn solve_full_inner(g: &MultiGraph, fuel: usize) -> Result<SolveOutcome, SolverError> {
    assert!(fuel > 0, "contraction recursion exceeded the vertex count");
    let (solve, pre) = solve_sparse_parts(g)?;
    let (edge, _provenance) = match solve.outcome {
        SolveOutcome::IrrelevantEdge { edge, provenance } => (edge, provenance),
        definite => return Ok(definite),
    };

    let reduced = &pre.reduced;
    let (child, correspondence) = reduced.contract(edge)?;
    match solve_full_inner(&child, fuel - 1)? {
        SolveOutcome::NoFlow(reason) => Ok(SolveOutcome::NoFlow(reason)),
        SolveOutcome::FlowFound(child_flow) => {
            let lifted = extend_flow(reduced, &child, &correspondence, &child_flow)?;
            // Both provenances guarantee the forced value is nonzero: at a
            // degree-2 vertex conservation copies a nonzero neighbour value,
            // and a witness boundary edge supports the same argument through
            // the witness vectors.
            assert!(
                lifted.is_nowhere_zero(),
                "irrelevant-edge lift produced a zero edge"
            );
            let full = attach_loop_values(g, reduced, &pre.actions, &lifted);
            debug_assert!(full.is_nowhere_zero());
            Ok(SolveOutcome::FlowFound(full))
        }
        SolveOutcome::IrrelevantEdge { .. } => {
            unreachable!("solve_full never returns an irrelevant edge")
        }
    }
}

/// `solve_full` for arbitrary (possibly disconnected) multigraphs: each
/// component is solved separately; a flow exists exactly when every
/// component has one, and the component flows merge by shared edge ids.
pub fn solve_components(g: &MultiGraph) -> Result<SolveOutcome, SolverError> {
    if g.is_connected() {
        return solve_full(g);
    }
    let mut values = Gf3Vector::zeros(g.edge_count());
    for (index, component) in g.components().into_iter().enumerate() {
        match solve_full(&component.graph)? {
            SolveOutcome::FlowFound(flow) => {
                for e in component.graph.edges() {
                    let pos = g.edge_position(e.id).expect("component edges exist");
                    values.set(
                        pos,
                        flow.value(&component.graph, e.id).expect("bound flow"),
                    );
                }
            }
            SolveOutcome::NoFlow(reason) => {
                return Ok(SolveOutcome::NoFlow(NoFlowReason::ComponentFailure {
                    component: index,
                    reason: Box::new(reason),
                }));
            }
            SolveOutcome::IrrelevantEdge { .. } => unreachable!(),
        }
    }
    let flow = Flow::new(g, values).expect("component flows merge");
    debug_assert!(flow.is_nowhere_zero());
    Ok(SolveOutcome::FlowFound(flow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::oracle_nz_flow;
    use crate::gf3::ONE;

    fn triangle() -> MultiGraph {
        MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn w5() -> MultiGraph {
        MultiGraph::build(
            5,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
            ],
        )
        .unwrap()
    }

    fn k34_plus_edge() -> MultiGraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..7 {
                edges.push((a, b));
            }
        }
        edges.push((0, 1));
        MultiGraph::build(7, &edges).unwrap()
    }

    fn k33() -> MultiGraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        MultiGraph::build(6, &edges).unwrap()
    }

    fn petersen() -> MultiGraph {
        MultiGraph::build(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn preprocess_strips_and_logs_loops() {
        let g = MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        let pre = preprocess(&g).unwrap();
        assert_eq!(pre.reduced.edge_count(), 3);
        assert_eq!(
            pre.actions,
            vec![PreprocessAction::RemoveLoop {
                edge: EdgeId(3),
                value: ONE
            }]
        );
        // With the loop gone every vertex has degree 2.
        assert!(matches!(
            pre.early,
            Some(SolveOutcome::IrrelevantEdge {
                edge: EdgeId(0),
                provenance: Provenance::DegreeTwo
            })
        ));
    }

    #[test]
    fn preprocess_answers_single_vertex_graphs() {
        let lone = MultiGraph::build(1, &[]).unwrap();
        let pre = preprocess(&lone).unwrap();
        assert!(matches!(pre.early, Some(SolveOutcome::FlowFound(_))));

        let looped = MultiGraph::build(1, &[(0, 0), (0, 0)]).unwrap();
        let pre = preprocess(&looped).unwrap();
        assert_eq!(pre.actions.len(), 2);
        assert!(matches!(pre.early, Some(SolveOutcome::FlowFound(_))));
    }

    #[test]
    fn preprocess_reports_degree_one_before_degree_two() {
        // The 3-path has leaves (degree 1) and a middle vertex (degree 2);
        // the definite no-flow answer wins.
        let path = MultiGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let pre = preprocess(&path).unwrap();
        assert!(matches!(
            pre.early,
            Some(SolveOutcome::NoFlow(NoFlowReason::DegreeOneVertex(0)))
        ));
    }

    #[test]
    fn preprocess_flags_star_leaves() {
        let star = MultiGraph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let pre = preprocess(&star).unwrap();
        assert!(matches!(
            pre.early,
            Some(SolveOutcome::NoFlow(NoFlowReason::DegreeOneVertex(1)))
        ));
    }

    #[test]
    fn preprocess_finds_degree_two_irrelevant_edge() {
        let pre = preprocess(&triangle()).unwrap();
        assert!(matches!(
            pre.early,
            Some(SolveOutcome::IrrelevantEdge {
                edge: EdgeId(0),
                provenance: Provenance::DegreeTwo
            })
        ));
    }

    #[test]
    fn preprocess_rejects_disconnected_input() {
        let g = MultiGraph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(preprocess(&g), Err(SolverError::Disconnected)));
    }

    #[test]
    fn cubic_flow_on_bipartite_graphs() {
        let outcome = cubic_bipartite_flow(&k33()).unwrap();
        let SolveOutcome::FlowFound(flow) = outcome else {
            panic!("K3,3 is bipartite cubic");
        };
        // Every edge is oriented from the 0-side, so every value is 1.
        assert!(flow.values().iter().all(|v| v == ONE));

        let banana = MultiGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let SolveOutcome::FlowFound(flow) = cubic_bipartite_flow(&banana).unwrap() else {
            panic!("the triple edge is bipartite cubic");
        };
        assert!(flow.is_nowhere_zero());
    }

    #[test]
    fn cubic_flow_rejects_non_cubic_input() {
        assert!(matches!(
            cubic_bipartite_flow(&triangle()),
            Err(SolverError::NotCubic {
                vertex: 0,
                degree: 2
            })
        ));
    }

    #[test]
    fn petersen_is_cubic_and_flowless() {
        let solve = solve_sparse(&petersen()).unwrap();
        assert_eq!(solve.branch, Branch::CubicBipartite);
        assert!(matches!(
            solve.outcome,
            SolveOutcome::NoFlow(NoFlowReason::NonBipartiteCubic)
        ));
    }

    #[test]
    fn k4_takes_the_cubic_branch_not_the_independence_branch() {
        let solve = solve_sparse(&k4()).unwrap();
        assert_eq!(solve.branch, Branch::CubicBipartite);
        assert!(matches!(
            solve.outcome,
            SolveOutcome::NoFlow(NoFlowReason::NonBipartiteCubic)
        ));
        assert_eq!(solve.budget.b, None);
    }

    #[test]
    fn w5_dependency_yields_an_irrelevant_edge() {
        let solve = solve_sparse(&w5()).unwrap();
        assert_eq!(solve.branch, Branch::DependencyWitness);
        let SolveOutcome::IrrelevantEdge { edge, provenance } = solve.outcome else {
            panic!("W5 goes through the witness branch");
        };
        assert_eq!(provenance, Provenance::DependencyWitness);
        // Contraction preserves existence (both sides have a flow here).
        let g = w5();
        assert!(oracle_nz_flow(&g).unwrap().is_some());
        assert!(oracle_nz_flow(&g.contract(edge).unwrap().0)
            .unwrap()
            .is_some());
    }

    #[test]
    fn k34_plus_edge_exhausts_its_complement() {
        let solve = solve_sparse(&k34_plus_edge()).unwrap();
        assert_eq!(solve.branch, Branch::ComplementEnumeration);
        assert!(matches!(
            solve.outcome,
            SolveOutcome::NoFlow(NoFlowReason::ComplementExhausted)
        ));
        let budget = &solve.budget;
        assert_eq!((budget.n, budget.m), (7, 13));
        // k = (3·13 − 5·7)/3 = 4/3, bound = 3k + 1 = 5.
        assert_eq!(budget.k_numerator, 4);
        assert_eq!(budget.bound, 5);
        assert_eq!(budget.b, Some(3));
        assert_eq!(budget.enumeration_space, Some(8));
        assert_eq!(budget.assignments_tested, Some(8));
    }

    #[test]
    fn k5_flow_is_found_by_enumeration() {
        let k5 = MultiGraph::build(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        )
        .unwrap();
        let solve = solve_sparse(&k5).unwrap();
        assert_eq!(solve.branch, Branch::ComplementEnumeration);
        let SolveOutcome::FlowFound(flow) = &solve.outcome else {
            panic!("K5 has a nowhere-zero flow");
        };
        assert!(flow.is_nowhere_zero());
        // No degree-3 vertices: the stack is the 4 incidence vectors,
        // rank 4, so b = 10 − 4 = 6.
        assert_eq!(solve.budget.b, Some(6));
        let tested = solve.budget.assignments_tested.unwrap();
        assert!(tested >= 1 && tested <= 64);
    }

    #[test]
    fn five_spoke_wheel_has_trivial_complement() {
        let w6 = crate::families::wheel(5).unwrap();
        let solve = solve_sparse(&w6).unwrap();
        assert_eq!(solve.branch, Branch::ComplementEnumeration);
        assert!(matches!(
            solve.outcome,
            SolveOutcome::NoFlow(NoFlowReason::ComplementExhausted)
        ));
        assert_eq!(solve.budget.b, Some(0));
        assert_eq!(solve.budget.assignments_tested, Some(1));
    }

    #[test]
    fn solve_full_k2_has_no_flow() {
        let k2 = MultiGraph::build(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            solve_full(&k2).unwrap(),
            SolveOutcome::NoFlow(NoFlowReason::DegreeOneVertex(0))
        ));
    }

    #[test]
    fn solve_full_triangle_finds_the_circulation() {
        let SolveOutcome::FlowFound(flow) = solve_full(&triangle()).unwrap() else {
            panic!("the triangle flows");
        };
        assert_eq!(flow.values(), &Gf3Vector::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn solve_full_w5_lifts_through_the_witness_contraction() {
        let SolveOutcome::FlowFound(flow) = solve_full(&w5()).unwrap() else {
            panic!("W5 flows");
        };
        assert!(flow.is_nowhere_zero());
        assert!(flow.bound_to(&w5()));
    }

    #[test]
    fn solve_full_handles_loops_on_the_way_down() {
        let g = MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        let SolveOutcome::FlowFound(flow) = solve_full(&g).unwrap() else {
            panic!("triangle with a loop flows");
        };
        assert!(flow.is_nowhere_zero());
        assert_eq!(flow.value(&g, EdgeId(3)).unwrap(), ONE);
    }

    #[test]
    fn solve_full_agrees_with_oracle_on_flowless_graphs() {
        assert!(matches!(
            solve_full(&k4()).unwrap(),
            SolveOutcome::NoFlow(NoFlowReason::NonBipartiteCubic)
        ));
        assert!(matches!(
            solve_full(&k34_plus_edge()).unwrap(),
            SolveOutcome::NoFlow(NoFlowReason::ComplementExhausted)
        ));
    }

    #[test]
    fn solve_components_merges_component_flows() {
        let g = MultiGraph::build(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let SolveOutcome::FlowFound(flow) = solve_components(&g).unwrap() else {
            panic!("two triangles flow");
        };
        assert!(flow.is_nowhere_zero());
    }

    #[test]
    fn solve_components_reports_the_failing_component() {
        let g = MultiGraph::build(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let SolveOutcome::NoFlow(NoFlowReason::ComponentFailure { component, reason }) =
            solve_components(&g).unwrap()
        else {
            panic!("the K2 component blocks the flow");
        };
        assert_eq!(component, 1);
        assert!(matches!(*reason, NoFlowReason::DegreeOneVertex(_)));
    }

    #[test]
    fn no_flow_reasons_render_their_fixed_strings() {
        assert_eq!(
            NoFlowReason::DegreeOneVertex(3).to_string(),
            "degree-1 vertex"
        );
        assert_eq!(
            NoFlowReason::NonBipartiteCubic.to_string(),
            "non-bipartite cubic"
        );
        assert_eq!(
            NoFlowReason::ComplementExhausted.to_string(),
            "V^⊥ exhausted"
        );
        assert_eq!(
            NoFlowReason::ComponentFailure {
                component: 0,
                reason: Box::new(NoFlowReason::NonBipartiteCubic)
            }
            .to_string(),
            "component-wise failure"
        );
    }
}
