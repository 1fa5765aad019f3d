//! Named graph families used throughout the tests and the CLI `gen`
//! command, plus a seeded random connected multigraph builder.
//!
//! Every builder is deterministic: fixed vertex numbering, fixed edge order,
//! and (for the random builder) a hand-rolled SplitMix64 stream so the same
//! seed yields byte-identical graphs on every platform.

use thiserror::Error;

use crate::graph::MultiGraph;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("a wheel needs at least 3 spokes, got {0}")]
    WheelTooSmall(usize),
    #[error("the augmented bipartite family starts at 7 vertices, got {0}")]
    BipartiteTooSmall(usize),
    #[error("need at least one vertex")]
    NoVertices,
    #[error("a connected graph on {n} vertices needs at least {} edges, got {m}", n.saturating_sub(1))]
    TooFewEdges { n: usize, m: usize },
}

fn build(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::build(n, edges).expect("family endpoints are in range")
}

/// The single edge on two vertices.
pub fn k2() -> MultiGraph {
    build(2, &[(0, 1)])
}

/// The complete graph on four vertices, edges in lexicographic order.
pub fn k4() -> MultiGraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// The wheel with `spokes` rim vertices: hub 0, rim 1..=spokes. The rim
/// cycle edges come first (each from rim vertex i to its successor), then
/// the spokes from the hub outward.
pub fn wheel(spokes: usize) -> Result<MultiGraph, FamilyError> {
    if spokes < 3 {
        return Err(FamilyError::WheelTooSmall(spokes));
    }
    let mut edges = Vec::with_capacity(2 * spokes);
    for i in 0..spokes {
        edges.push((1 + i, 1 + (i + 1) % spokes));
    }
    for j in 0..spokes {
        edges.push((0, 1 + j));
    }
    Ok(build(spokes + 1, &edges))
}

/// The complete bipartite graph between {0,1,2} and {3,…,n−1} with one
/// extra edge joining 0 and 1. The bipartite edges come first, in
/// lexicographic order; the extra edge is last.
pub fn k33e(n: usize) -> Result<MultiGraph, FamilyError> {
    if n < 7 {
        return Err(FamilyError::BipartiteTooSmall(n));
    }
    let mut edges = Vec::with_capacity(3 * (n - 3) + 1);
    for a in 0..3 {
        for b in 3..n {
            edges.push((a, b));
        }
    }
    edges.push((0, 1));
    Ok(build(n, &edges))
}

/// Deterministic SplitMix64 stream.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// A seeded random connected multigraph: a random spanning tree (each
/// vertex after the first attaches to a uniformly chosen earlier one),
/// then `m − (n−1)` extra edges between distinct random endpoints.
/// Parallel edges may appear; loops never do.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<MultiGraph, FamilyError> {
    if n == 0 {
        return Err(FamilyError::NoVertices);
    }
    if m + 1 < n {
        return Err(FamilyError::TooFewEdges { n, m });
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let parent = rng.below(v as u64) as usize;
        edges.push((parent, v));
    }
    while edges.len() < m {
        let a = rng.below(n as u64) as usize;
        let b = rng.below(n as u64) as usize;
        if a != b {
            edges.push((a, b));
        }
    }
    Ok(build(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_and_k4_have_the_expected_shape() {
        let k2 = k2();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));

        let k4 = k4();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        assert!(k4.is_regular(3));
        assert!(k4.is_simple());
    }

    #[test]
    fn wheel_edge_layout_is_rim_first_then_spokes() {
        let w = wheel(4).unwrap();
        let pairs: Vec<(usize, usize)> = w.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(
            pairs,
            vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4)
            ]
        );
        assert_eq!(w.degree(0), 4);
        assert!((1..=4).all(|v| w.degree(v) == 3));
    }

    #[test]
    fn three_spoke_wheel_is_the_complete_graph() {
        let w = wheel(3).unwrap();
        assert!(w.is_regular(3));
        assert!(w.is_simple());
        let mut pairs: Vec<(usize, usize)> = w
            .edges()
            .iter()
            .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn wheel_rejects_fewer_than_three_spokes() {
        assert!(matches!(wheel(2), Err(FamilyError::WheelTooSmall(2))));
    }

    #[test]
    fn k33e_seven_has_the_frozen_degree_sequence() {
        let g = k33e(7).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 13));
        assert_eq!(g.degrees(), vec![5, 5, 4, 3, 3, 3, 3]);
        let last = g.edges().last().unwrap();
        assert_eq!((last.tail, last.head), (0, 1));
    }

    #[test]
    fn k33e_rejects_small_orders() {
        assert!(matches!(k33e(6), Err(FamilyError::BipartiteTooSmall(6))));
    }

    #[test]
    fn random_graphs_are_connected_and_loopless() {
        for seed in 0..20 {
            let g = random_connected(8, 14, seed).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (8, 14));
            assert!(g.is_connected(), "seed {seed} gave a disconnected graph");
            assert!(!g.has_loops());
        }
    }

    #[test]
    fn random_graphs_are_seed_deterministic() {
        let a = random_connected(9, 16, 42).unwrap();
        let b = random_connected(9, 16, 42).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());

        let c = random_connected(9, 16, 43).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn random_builder_rejects_impossible_requests() {
        assert!(matches!(
            random_connected(5, 3, 0),
            Err(FamilyError::TooFewEdges { n: 5, m: 3 })
        ));
        assert!(matches!(random_connected(0, 0, 0), Err(FamilyError::NoVertices)));
    }

    #[test]
    fn tree_only_request_yields_a_tree() {
        let g = random_connected(6, 5, 7).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(g.is_connected());
    }
}
