//! Nowhere-zero 3-flows on connected multigraphs.
//!
//! The crate decides whether a graph admits a flow with every edge carrying
//! 1 or 2 over GF(3), and in the sparse regime it does so by either finding
//! such a flow outright or locating an edge whose contraction provably
//! changes nothing — so the question can be pushed down to a smaller graph.
//!
//! The pieces, bottom to top:
//!
//! * [`gf3`] — exact GF(3) vectors, matrices, deterministic elimination with
//!   dependency certificates;
//! * [`graph`] — multigraphs with stable edge ids, contraction, recognisers;
//! * [`flow`] — incidence vectors, conservation checking, the flow space,
//!   and an exhaustive oracle used as ground truth;
//! * [`constraints`] — per-vertex constraint subspaces, the independence
//!   test, dependency witnesses, and the orthogonal complement;
//! * [`solver`] — the sparse solver (preprocess, cubic shortcut,
//!   independence branch) and the full recursive solver built on it;
//! * [`criticality`] — the flow-criticality certifier, edge-count bound
//!   reports, and the exhaustive small-graph census;
//! * [`families`] — named graph constructions and seeded random graphs;
//! * [`io`] — edge-list and graph6 formats plus JSON documents.

pub mod constraints;
pub mod criticality;
pub mod families;
pub mod flow;
pub mod gf3;
pub mod graph;
pub mod io;
pub mod solver;

pub use flow::{oracle_nz_flow, oracle_nz_flow_capped, Flow, DEFAULT_ORACLE_CAP};
pub use graph::{EdgeId, MultiGraph};
pub use solver::{solve_components, solve_full, solve_sparse, SolveOutcome};

