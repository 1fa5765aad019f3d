//! Criticality certification, density/structure bound reports, and the
//! exhaustive small-graph survey.
//!
//! A connected multigraph is *flow-critical* here when it has no
//! nowhere-zero flow but every single-edge contraction does (loops, which
//! cannot be contracted, are deleted instead — for flow existence that is
//! the same question, since a loop can always carry a nonzero value).
//! Certification is oracle-only: flow existence is decided by exhaustive
//! kernel enumeration, independent of the solver machinery, so the two can
//! be checked against each other.

use serde::Serialize;
use thiserror::Error;

use crate::flow::{oracle_nz_flow, Flow, FlowError};
use crate::graph::{EdgeId, GraphError, MultiGraph};

#[derive(Debug, Error)]
pub enum CriticalityError {
    #[error("certified critical graph violates the {claim} bound")]
    BoundViolated { claim: &'static str },
    #[error("survey of simple graphs supports at most 7 vertices, got {0}")]
    SurveyTooLarge(usize),
    #[error("survey of multigraphs supports at most 3 vertices, got {0}")]
    MultigraphSurveyTooLarge(usize),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Evidence produced while certifying criticality.
#[derive(Clone, Debug)]
pub enum CriticalityEvidence {
    /// Criticality requires connectivity.
    Disconnected,
    /// The graph itself has a nowhere-zero flow, so it is not critical.
    HasFlow(Flow),
    /// Contracting (or, for a loop, deleting) this edge leaves a graph
    /// that still has no nowhere-zero flow.
    ContractionStillFlowless { edge: EdgeId },
    /// The graph has no flow and every per-edge check found one.
    AllContractionsFlow { checks: Vec<ContractionCheck> },
}

/// One per-edge certificate: the contraction (or deletion, for loops) of
/// `edge` admits the recorded nowhere-zero flow.
#[derive(Clone, Debug)]
pub struct ContractionCheck {
    pub edge: EdgeId,
    pub contracted_as_deletion: bool,
    pub flow: Flow,
}

#[derive(Clone, Debug)]
pub struct CriticalityReport {
    pub is_critical: bool,
    pub evidence: CriticalityEvidence,
}

/// Decides flow-criticality by exhaustive oracle checks: the graph must be
/// connected and flowless, and every one-edge contraction must flow.
pub fn certify_criticality(g: &MultiGraph) -> Result<CriticalityReport, CriticalityError> {
    if !g.is_connected() {
        return Ok(CriticalityReport {
            is_critical: false,
            evidence: CriticalityEvidence::Disconnected,
        });
    }
    if let Some(flow) = oracle_nz_flow(g)? {
        return Ok(CriticalityReport {
            is_critical: false,
            evidence: CriticalityEvidence::HasFlow(flow),
        });
    }
    let mut checks = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let child = g.contract_or_delete(e.id)?;
        match oracle_nz_flow(&child)? {
            Some(flow) => checks.push(ContractionCheck {
                edge: e.id,
                contracted_as_deletion: e.is_loop(),
                flow,
            }),
            None => {
                return Ok(CriticalityReport {
                    is_critical: false,
                    evidence: CriticalityEvidence::ContractionStillFlowless { edge: e.id },
                });
            }
        }
    }
    Ok(CriticalityReport {
        is_critical: true,
        evidence: CriticalityEvidence::AllContractionsFlow { checks },
    })
}

/// The density and structure facts recorded for a critical graph. The two
/// smallest critical graphs, K2 and K4, are genuine exceptions to the
/// density claims and to the edge-floor tightness characterisation, so the
/// raw booleans are reported and `exceptional` says which case applies; a
/// violation on any *other* critical graph is an error, never a report.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub degree3_count: usize,
    pub min_degree: usize,
    pub exceptional: Option<String>,
    /// 5m ≥ 8n + 2.
    pub density_bound_holds: bool,
    /// 3m ≥ 5n, i.e. m ≥ 5n/3.
    pub strong_density_bound_holds: bool,
    /// n + (number of degree-3 vertices) − 1.
    pub edge_floor: usize,
    /// m is at least the edge floor.
    pub edge_floor_holds: bool,
    /// m equals the edge floor; among non-exceptional critical graphs this
    /// happens exactly for wheels.
    pub edge_floor_tight: bool,
    pub is_wheel: bool,
    pub is_odd_wheel: bool,
    pub min_degree_at_least_three: bool,
    /// The degree-3 vertices induce a forest (odd wheels, whose rim is an
    /// induced odd cycle, are the one critical exception).
    pub degree3_induces_forest: bool,
}

fn bounds_for_critical(g: &MultiGraph) -> Result<BoundsReport, CriticalityError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let degree3_count = g.degree3_count();
    let min_degree = g.min_degree();
    let is_k2 = n == 2 && m == 1 && !g.edges()[0].is_loop();
    let is_k4 = n == 4 && m == 6 && g.is_simple() && g.is_regular(3);
    let exceptional = if is_k2 {
        Some("K2".to_string())
    } else if is_k4 {
        Some("K4".to_string())
    } else {
        None
    };

    let density_bound_holds = 5 * m >= 8 * n + 2;
    let strong_density_bound_holds = 3 * m >= 5 * n;
    let edge_floor = n + degree3_count - 1;
    let edge_floor_holds = m >= edge_floor;
    let edge_floor_tight = m == edge_floor;
    let wheel = g.wheel();
    let is_wheel = wheel.is_some();
    let is_odd_wheel = wheel.map(|w| w.is_odd()).unwrap_or(false);
    let min_degree_at_least_three = min_degree >= 3;
    let degree3_induces_forest = g.degree3_induced_forest();

    if exceptional.is_none() {
        if !density_bound_holds {
            return Err(CriticalityError::BoundViolated {
                claim: "edge density",
            });
        }
        if !strong_density_bound_holds {
            return Err(CriticalityError::BoundViolated {
                claim: "strong edge density",
            });
        }
        if !edge_floor_holds {
            return Err(CriticalityError::BoundViolated {
                claim: "edge-count floor",
            });
        }
        if edge_floor_tight != is_wheel {
            return Err(CriticalityError::BoundViolated {
                claim: "wheel tightness",
            });
        }
    }
    if !is_k2 {
        if !min_degree_at_least_three {
            return Err(CriticalityError::BoundViolated {
                claim: "minimum degree",
            });
        }
        if !(degree3_induces_forest || is_odd_wheel) {
            return Err(CriticalityError::BoundViolated {
                claim: "degree-3 forest",
            });
        }
    }

    Ok(BoundsReport {
        n,
        m,
        degree3_count,
        min_degree,
        exceptional,
        density_bound_holds,
        strong_density_bound_holds,
        edge_floor,
        edge_floor_holds,
        edge_floor_tight,
        is_wheel,
        is_odd_wheel,
        min_degree_at_least_three,
        degree3_induces_forest,
    })
}

/// Certifies criticality and, for critical graphs, checks and reports the
/// density and structure bounds. `Ok(None)` means the graph is simply not
/// critical; a bound violated by a non-exceptional critical graph is an
/// error, because it would falsify a theorem this library is built on.
pub fn bounds_report(g: &MultiGraph) -> Result<Option<BoundsReport>, CriticalityError> {
    let report = certify_criticality(g)?;
    if !report.is_critical {
        return Ok(None);
    }
    bounds_for_critical(g).map(Some)
}

/// What the survey walks over.
#[derive(Clone, Copy, Debug)]
pub struct SurveyOptions {
    /// Largest vertex count examined (≤ 7 simple, ≤ 3 multigraph).
    pub max_n: usize,
    /// Simple graphs only, or loopless multigraphs with multiplicity ≤ 3.
    pub simple_only: bool,
}

/// One isomorphism class of critical graphs found by the survey.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalClass {
    pub n: usize,
    pub m: usize,
    /// Edge list of the first labelled representative encountered.
    pub edges: Vec<(usize, usize)>,
    /// How many labelled graphs in the universe belong to this class.
    pub labelled_count: u64,
    pub degree_sequence: Vec<usize>,
    pub bounds: BoundsReport,
}

/// Minimum edge count among critical graphs of one order.
#[derive(Clone, Debug, Serialize)]
pub struct OrderSummary {
    pub n: usize,
    pub min_edges: usize,
}

/// The survey result: every critical graph in the stated universe, up to
/// isomorphism, with labelled counts and per-class bound reports.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub universe: String,
    pub max_n: usize,
    pub connected_graphs_examined: u64,
    pub critical_labelled_total: u64,
    pub classes: Vec<CriticalClass>,
    pub min_edges_by_order: Vec<OrderSummary>,
    /// True once every class passed its bound checks (violations abort the
    /// survey with an error instead).
    pub all_bounds_hold: bool,
}

fn multiplicity_matrix(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut mat = vec![vec![0usize; n]; n];
    for e in g.edges() {
        if e.is_loop() {
            mat[e.tail][e.tail] += 1;
        } else {
            mat[e.tail][e.head] += 1;
            mat[e.head][e.tail] += 1;
        }
    }
    mat
}

/// Backtracking isomorphism test on vertex-labelled multigraphs, suitable
/// for the survey's tiny orders: images must match degrees and all edge
/// multiplicities to previously mapped vertices.
fn isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let da = a.degrees();
    let db = b.degrees();
    {
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }
    let ma = multiplicity_matrix(a);
    let mb = multiplicity_matrix(b);

    fn extend(
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        da: &[usize],
        db: &[usize],
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
    ) -> bool {
        let n = da.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || da[v] != db[w] || ma[v][v] != mb[w][w] {
                continue;
            }
            if (0..v).any(|u| ma[v][u] != mb[w][image[u]]) {
                continue;
            }
            image.push(w);
            used[w] = true;
            if extend(v + 1, image, used, da, db, ma, mb) {
                return true;
            }
            image.pop();
            used[w] = false;
        }
        false
    }

    extend(
        0,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &da,
        &db,
        &ma,
        &mb,
    )
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Walks the chosen universe in a fixed order (vertex count ascending,
/// then edge masks / multiplicity vectors as ascending integers over the
/// lexicographic pair list), certifies every connected graph, and groups
/// the critical ones into isomorphism classes.
pub fn survey(options: SurveyOptions) -> Result<Census, CriticalityError> {
    if options.simple_only {
        if options.max_n > 7 {
            return Err(CriticalityError::SurveyTooLarge(options.max_n));
        }
    } else if options.max_n > 3 {
        return Err(CriticalityError::MultigraphSurveyTooLarge(options.max_n));
    }

    let universe = if options.simple_only {
        format!(
            "connected simple graphs on at most {} vertices",
            options.max_n
        )
    } else {
        format!(
            "connected loopless multigraphs on at most {} vertices with edge multiplicity at most 3",
            options.max_n
        )
    };

    let mut examined = 0u64;
    let mut critical_total = 0u64;
    let mut reps: Vec<(MultiGraph, CriticalClass)> = Vec::new();

    for n in 1..=options.max_n {
        let pairs = pair_list(n);
        let max_multiplicity: u64 = if options.simple_only { 1 } else { 3 };
        let base = max_multiplicity + 1;
        let combos = base.pow(pairs.len() as u32);
        for code in 0..combos {
            let mut edges = Vec::new();
            let mut rest = code;
            for &(i, j) in &pairs {
                let mult = rest % base;
                rest /= base;
                for _ in 0..mult {
                    edges.push((i, j));
                }
            }
            let g = MultiGraph::build(n, &edges).expect("pair endpoints are in range");
            if !g.is_connected() {
                continue;
            }
            examined += 1;
            let report = certify_criticality(&g)?;
            if !report.is_critical {
                continue;
            }
            critical_total += 1;
            if let Some((_, class)) = reps
                .iter_mut()
                .find(|(rep, _)| isomorphic(rep, &g))
            {
                class.labelled_count += 1;
            } else {
                let bounds = bounds_for_critical(&g)?;
                let mut degree_sequence = g.degrees();
                degree_sequence.sort_unstable();
                degree_sequence.reverse();
                let class = CriticalClass {
                    n,
                    m: g.edge_count(),
                    edges: g.edges().iter().map(|e| (e.tail, e.head)).collect(),
                    labelled_count: 1,
                    degree_sequence,
                    bounds,
                };
                reps.push((g, class));
            }
        }
    }

    let mut classes: Vec<CriticalClass> = reps.into_iter().map(|(_, c)| c).collect();
    classes.sort_by(|a, b| (a.n, a.m).cmp(&(b.n, b.m)));

    let mut min_edges_by_order: Vec<OrderSummary> = Vec::new();
    for class in &classes {
        match min_edges_by_order.iter_mut().find(|s| s.n == class.n) {
            Some(summary) => summary.min_edges = summary.min_edges.min(class.m),
            None => min_edges_by_order.push(OrderSummary {
                n: class.n,
                min_edges: class.m,
            }),
        }
    }

    Ok(Census {
        universe,
        max_n: options.max_n,
        connected_graphs_examined: examined,
        critical_labelled_total: critical_total,
        classes,
        min_edges_by_order,
        all_bounds_hold: true,
    })
}
