//! Connected multigraphs with stable edge identities.
//!
//! Edges are oriented (tail → head) and keep their numeric identity across
//! contraction and deletion, so a flow value attached to edge 7 of a parent
//! graph still means edge 7 after any number of minor operations. The edge
//! id space may therefore become sparse; vertices, in contrast, are always
//! the dense range `0..vertex_count` and are renumbered by contraction.
//!
//! Loops and parallel edges are first-class citizens: contraction of an edge
//! turns the edges parallel to it into loops and keeps everything else, which
//! is exactly what the flow theory downstream expects.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Identity of an edge, stable across contraction and deletion.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An oriented edge. `tail == head` encodes a loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint other than `v`; for a loop this is `v` again.
    pub fn other_endpoint(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    pub fn is_incident(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} endpoint {endpoint} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        index: usize,
        endpoint: usize,
        vertex_count: usize,
    },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("cannot contract loop {0}; contracting a loop is deletion, use remove_edge")]
    LoopContraction(EdgeId),
}

/// A multigraph on vertices `0..vertex_count` with oriented, identity-bearing
/// edges, stored in ascending id order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    /// Builds a graph from endpoint pairs; edge ids are assigned 0..m in
    /// input order and the given orientation (tail, head) is kept.
    pub fn build(vertex_count: usize, endpoints: &[(usize, usize)]) -> Result<Self, GraphError> {
        let edges = endpoints
            .iter()
            .enumerate()
            .map(|(i, &(tail, head))| Edge {
                id: EdgeId(i),
                tail,
                head,
            })
            .collect();
        Self::from_edges(vertex_count, edges)
    }

    /// Builds a graph from explicit edges with pre-assigned ids. Ids must be
    /// strictly increasing; endpoints must be in range.
    pub fn from_edges(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        for (index, e) in edges.iter().enumerate() {
            for endpoint in [e.tail, e.head] {
                if endpoint >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        endpoint,
                        vertex_count,
                    });
                }
            }
        }
        assert!(
            edges.windows(2).all(|w| w[0].id < w[1].id),
            "edge ids must be strictly increasing"
        );
        Ok(MultiGraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edge_position(id).map(|p| &self.edges[p])
    }

    /// Position of an edge in the ascending-id edge list. Positions are the
    /// coordinate indices used by the linear algebra layer.
    pub fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn edge_at(&self, position: usize) -> &Edge {
        &self.edges[position]
    }

    /// Degree of a vertex; a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            deg[e.tail] += 1;
            deg[e.head] += 1;
        }
        deg
    }

    /// Number of vertices of degree exactly 3.
    pub fn degree3_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 3).count()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    /// Incident edge ids of `v`, ascending; a loop appears once.
    pub fn incident_edge_ids(&self, v: usize) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.is_incident(v))
            .map(|e| e.id)
            .collect()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// True when there are no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.edges {
            if e.is_loop() {
                return false;
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    /// Deterministic structural fingerprint (FNV-1a over vertex count and
    /// the edge list), used to bind flows and witnesses to the graph they
    /// were computed on. Stable across runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut mix = |value: u64| {
            for byte in value.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(PRIME);
            }
        };
        mix(self.vertex_count as u64);
        for e in &self.edges {
            mix(e.id.0 as u64);
            mix(e.tail as u64);
            mix(e.head as u64);
        }
        h
    }

    /// Contracts a non-loop edge: its endpoints merge into the vertex
    /// `min(tail, head)`, the vertex `max(tail, head)` disappears, every
    /// other vertex keeps its relative order, and edges parallel to the
    /// contracted edge become loops. Edge ids are untouched.
    pub fn contract(&self, id: EdgeId) -> Result<(MultiGraph, EdgeCorrespondence), GraphError> {
        let edge = *self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
        if edge.is_loop() {
            return Err(GraphError::LoopContraction(id));
        }
        let keep = edge.tail.min(edge.head);
        let drop = edge.tail.max(edge.head);

        let vertex_map: Vec<usize> = (0..self.vertex_count)
            .map(|v| {
                if v == drop {
                    keep
                } else if v > drop {
                    v - 1
                } else {
                    v
                }
            })
            .collect();

        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        let mut edge_map = BTreeMap::new();
        for e in &self.edges {
            if e.id == id {
                continue;
            }
            edges.push(Edge {
                id: e.id,
                tail: vertex_map[e.tail],
                head: vertex_map[e.head],
            });
            edge_map.insert(e.id, e.id);
        }

        let child = MultiGraph {
            vertex_count: self.vertex_count - 1,
            edges,
        };
        debug_assert_eq!(
            child.degree(vertex_map[edge.tail]),
            self.degree(edge.tail) + self.degree(edge.head) - 2,
            "merged vertex degree must drop by exactly the two contracted endpoints"
        );
        let correspondence = EdgeCorrespondence {
            contracted: id,
            parent_fingerprint: self.fingerprint(),
            child_fingerprint: child.fingerprint(),
            vertex_map,
            edge_map,
        };
        Ok((child, correspondence))
    }

    /// Deletes an edge, keeping every vertex. This is also what contracting
    /// a loop means.
    pub fn remove_edge(&self, id: EdgeId) -> Result<MultiGraph, GraphError> {
        let position = self.edge_position(id).ok_or(GraphError::UnknownEdge(id))?;
        let mut edges = self.edges.clone();
        edges.remove(position);
        Ok(MultiGraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Contraction in the minor-order sense: loops contract as deletion.
    pub fn contract_or_delete(&self, id: EdgeId) -> Result<MultiGraph, GraphError> {
        let edge = self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
        if edge.is_loop() {
            self.remove_edge(id)
        } else {
            Ok(self.contract(id)?.0)
        }
    }

    /// Returns the same graph with one edge's orientation flipped.
    pub fn with_edge_reversed(&self, id: EdgeId) -> Result<MultiGraph, GraphError> {
        let position = self.edge_position(id).ok_or(GraphError::UnknownEdge(id))?;
        let mut edges = self.edges.clone();
        let e = &mut edges[position];
        std::mem::swap(&mut e.tail, &mut e.head);
        Ok(MultiGraph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Connectivity in the undirected sense. The empty and one-vertex
    /// graphs count as connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let adjacency = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    visited += 1;
                    stack.push(w);
                }
            }
        }
        visited == self.vertex_count
    }

    /// Splits into connected components. Each component keeps the original
    /// edge ids; its vertices are renumbered densely, with `vertex_origin`
    /// mapping the new indices back to the parent's.
    pub fn components(&self) -> Vec<Component> {
        let adjacency = self.adjacency();
        let mut assignment = vec![usize::MAX; self.vertex_count];
        let mut components = Vec::new();
        for root in 0..self.vertex_count {
            if assignment[root] != usize::MAX {
                continue;
            }
            let index = components.len();
            let mut members = Vec::new();
            let mut stack = vec![root];
            assignment[root] = index;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(w, _) in &adjacency[v] {
                    if assignment[w] == usize::MAX {
                        assignment[w] = index;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(Component {
                graph: MultiGraph {
                    vertex_count: members.len(),
                    edges: Vec::new(),
                },
                vertex_origin: members,
            });
        }
        let mut local_index = vec![usize::MAX; self.vertex_count];
        for component in &components {
            for (local, &original) in component.vertex_origin.iter().enumerate() {
                local_index[original] = local;
            }
        }
        for e in &self.edges {
            let c = assignment[e.tail];
            debug_assert_eq!(c, assignment[e.head], "edge endpoints in one component");
            components[c].graph.edges.push(Edge {
                id: e.id,
                tail: local_index[e.tail],
                head: local_index[e.head],
            });
        }
        components
    }

    /// A proper 2-colouring (sides 0/1, vertex 0 of each component on side
    /// 0), or `None` when some closed walk has odd length. A loop is an odd
    /// closed walk, so any loop rules a bipartition out.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        if self.edges.iter().any(Edge::is_loop) {
            return None;
        }
        let adjacency = self.adjacency();
        let mut side = vec![u8::MAX; self.vertex_count];
        for root in 0..self.vertex_count {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adjacency[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Vertex degrees restricted to the set of degree-3 vertices: true when
    /// the subgraph they induce is a forest (no cycles; a loop or a parallel
    /// pair inside the set is a cycle).
    pub fn degree3_induced_forest(&self) -> bool {
        let degrees = self.degrees();
        let in_set = |v: usize| degrees[v] == 3;
        let mut dsu = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            if !in_set(e.tail) || !in_set(e.head) {
                continue;
            }
            if e.is_loop() || !dsu.union(e.tail, e.head) {
                return false;
            }
        }
        true
    }

    /// Recognises simple wheels: a hub adjacent to every rim vertex, the rim
    /// a single cycle of length >= 3. Returns the lowest viable hub.
    pub fn wheel(&self) -> Option<Wheel> {
        if self.vertex_count < 4 || !self.is_simple() {
            return None;
        }
        let n = self.vertex_count;
        'hubs: for hub in 0..n {
            // Every other vertex must see the hub exactly once, and have
            // exactly two further edges forming the rim.
            let mut hub_neighbours = vec![0usize; n];
            let mut rim_adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
            for e in &self.edges {
                if e.is_incident(hub) {
                    hub_neighbours[e.other_endpoint(hub)] += 1;
                } else {
                    rim_adjacency[e.tail].push(e.head);
                    rim_adjacency[e.head].push(e.tail);
                }
            }
            for v in 0..n {
                if v == hub {
                    continue;
                }
                if hub_neighbours[v] != 1 || rim_adjacency[v].len() != 2 {
                    continue 'hubs;
                }
            }
            // Walk the rim from the smallest non-hub vertex; it must close
            // into one cycle covering all n-1 rim vertices.
            let start = (0..n).find(|&v| v != hub).expect("n >= 4");
            let mut visited = 1usize;
            let mut previous = start;
            let mut current = rim_adjacency[start][0];
            while current != start {
                visited += 1;
                let next = if rim_adjacency[current][0] == previous {
                    rim_adjacency[current][1]
                } else {
                    rim_adjacency[current][0]
                };
                previous = current;
                current = next;
                if visited > n {
                    continue 'hubs;
                }
            }
            if visited == n - 1 {
                return Some(Wheel {
                    hub,
                    rim_length: n - 1,
                });
            }
        }
        None
    }

    fn adjacency(&self) -> Vec<Vec<(usize, EdgeId)>> {
        let mut adjacency: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adjacency[e.tail].push((e.head, e.id));
            if !e.is_loop() {
                adjacency[e.head].push((e.tail, e.id));
            }
        }
        adjacency
    }
}

/// One connected component of a graph, with the translation back to the
/// parent's vertex numbering. Edge ids are shared with the parent.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: MultiGraph,
    /// `vertex_origin[local]` is the parent vertex the local index came from.
    pub vertex_origin: Vec<usize>,
}

/// A recognised wheel: `rim_length` spokes around `hub`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wheel {
    pub hub: usize,
    pub rim_length: usize,
}

impl Wheel {
    pub fn is_odd(&self) -> bool {
        self.rim_length % 2 == 1
    }
}

/// How a contraction's child graph relates to its parent: which edge was
/// contracted, how vertices were renumbered, and the (identity) pairing of
/// surviving edge ids.
#[derive(Clone, Debug)]
pub struct EdgeCorrespondence {
    pub contracted: EdgeId,
    pub parent_fingerprint: u64,
    pub child_fingerprint: u64,
    /// Parent vertex → child vertex; both contracted endpoints map to the
    /// merged vertex.
    pub vertex_map: Vec<usize>,
    /// Child edge id → parent edge id. Ids are stable, so this is the
    /// identity on the surviving edges; it exists to make the pairing (and
    /// its bijectivity) checkable rather than implicit.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    /// False when the two are already joined (i.e. the edge closes a cycle).
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MultiGraph {
        MultiGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_out_of_range_endpoints() {
        let err = MultiGraph::build(2, &[(0, 5)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::EndpointOutOfRange {
                index: 0,
                endpoint: 5,
                vertex_count: 2
            }
        );
    }

    #[test]
    fn loops_count_twice_toward_degree() {
        let g = MultiGraph::build(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree3_count(), 1);
    }

    #[test]
    fn contracting_a_triangle_edge_leaves_a_parallel_pair() {
        let (child, corr) = triangle().contract(EdgeId(2)).unwrap();
        assert_eq!(child.vertex_count(), 2);
        assert_eq!(child.edge_count(), 2);
        assert!(child.edges().iter().all(|e| !e.is_loop()));
        // Both survivors now join the merged vertex with vertex 1.
        assert!(!child.is_simple());
        assert_eq!(corr.contracted, EdgeId(2));
        assert_eq!(corr.vertex_map, vec![0, 1, 0]);
    }

    #[test]
    fn contracting_one_of_a_parallel_pair_leaves_a_loop() {
        let g = MultiGraph::build(2, &[(0, 1), (0, 1)]).unwrap();
        let (child, _) = g.contract(EdgeId(0)).unwrap();
        assert_eq!(child.vertex_count(), 1);
        assert_eq!(child.edge_count(), 1);
        assert!(child.edges()[0].is_loop());
    }

    #[test]
    fn contracting_a_k4_edge_keeps_a_parallel_pair_and_no_loops() {
        let (child, _) = k4().contract(EdgeId(0)).unwrap();
        assert_eq!(child.vertex_count(), 3);
        assert_eq!(child.edge_count(), 5);
        assert!(!child.has_loops());
        assert!(!child.is_simple());
        // Ids survive: every id but the contracted one is still present.
        let ids: Vec<usize> = child.edges().iter().map(|e| e.id.0).collect();
        assert_eq!(ids, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn loop_contraction_is_rejected_with_deletion_hint() {
        let g = MultiGraph::build(1, &[(0, 0)]).unwrap();
        assert_eq!(
            g.contract(EdgeId(0)).unwrap_err(),
            GraphError::LoopContraction(EdgeId(0))
        );
        assert_eq!(g.contract_or_delete(EdgeId(0)).unwrap().edge_count(), 0);
    }

    #[test]
    fn correspondence_pairs_every_child_edge_exactly_once() {
        let (child, corr) = k4().contract(EdgeId(3)).unwrap();
        assert_eq!(corr.edge_map.len(), child.edge_count());
        for e in child.edges() {
            assert_eq!(corr.edge_map.get(&e.id), Some(&e.id));
        }
    }

    #[test]
    fn connectivity_of_small_graphs() {
        assert!(MultiGraph::build(0, &[]).unwrap().is_connected());
        assert!(MultiGraph::build(1, &[]).unwrap().is_connected());
        assert!(triangle().is_connected());
        assert!(!MultiGraph::build(2, &[]).unwrap().is_connected());
        let two_triangles =
            MultiGraph::build(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two_triangles.is_connected());
        assert_eq!(two_triangles.components().len(), 2);
    }

    #[test]
    fn components_keep_edge_ids_and_renumber_vertices() {
        let g = MultiGraph::build(5, &[(3, 4), (0, 1), (1, 2)]).unwrap();
        let components = g.components();
        assert_eq!(components.len(), 2);
        let first = &components[0];
        assert_eq!(first.vertex_origin, vec![0, 1, 2]);
        let ids: Vec<usize> = first.graph.edges().iter().map(|e| e.id.0).collect();
        assert_eq!(ids, vec![1, 2]);
        let second = &components[1];
        assert_eq!(second.vertex_origin, vec![3, 4]);
        assert_eq!(second.graph.edges()[0].id, EdgeId(0));
        assert_eq!(second.graph.edges()[0].tail, 0);
    }

    #[test]
    fn bipartition_found_for_even_structures() {
        let k33 = MultiGraph::build(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        let side = k33.bipartition().expect("K3,3 is bipartite");
        assert_eq!(side, vec![0, 0, 0, 1, 1, 1]);

        // A parallel pair is an even closed walk and is fine.
        let banana = MultiGraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(banana.bipartition().is_some());
    }

    #[test]
    fn bipartition_rejected_for_odd_walks() {
        assert!(triangle().bipartition().is_none());
        let loop_graph = MultiGraph::build(2, &[(0, 1), (1, 1)]).unwrap();
        assert!(loop_graph.bipartition().is_none());
    }

    #[test]
    fn degree3_forest_check_on_named_graphs() {
        // All of K4 has degree 3 and induces K4 itself: certainly not a forest.
        assert!(!k4().degree3_induced_forest());
        // A 6-cycle has no degree-3 vertices at all.
        let c6 = MultiGraph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(c6.degree3_induced_forest());
    }

    #[test]
    fn wheel_recognition_on_k4_and_w6() {
        assert_eq!(
            k4().wheel(),
            Some(Wheel {
                hub: 0,
                rim_length: 3
            })
        );
        assert!(k4().wheel().unwrap().is_odd());

        // 5-spoke wheel: hub 0, rim 1..=5.
        let w6 = MultiGraph::build(
            6,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
            ],
        )
        .unwrap();
        let wheel = w6.wheel().expect("W6 is a wheel");
        assert_eq!(wheel.hub, 0);
        assert_eq!(wheel.rim_length, 5);
        assert!(wheel.is_odd());
    }

    #[test]
    fn wheel_recognition_rejects_near_misses() {
        assert!(triangle().wheel().is_none());
        // K4 plus a parallel edge is not simple, hence not a wheel.
        let k4_parallel =
            MultiGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 1)])
                .unwrap();
        assert!(k4_parallel.wheel().is_none());
        // K5 has everything adjacent to everything; its "rim" is not a cycle.
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
        assert!(k5.wheel().is_none());
    }

    #[test]
    fn fingerprint_tracks_structure() {
        assert_eq!(triangle().fingerprint(), triangle().fingerprint());
        assert_ne!(triangle().fingerprint(), k4().fingerprint());
        let reversed = triangle().with_edge_reversed(EdgeId(0)).unwrap();
        assert_ne!(triangle().fingerprint(), reversed.fingerprint());
    }

    #[test]
    fn contraction_degree_identity_on_a_seeded_sweep() {
        // deg(merged) = deg(tail) + deg(head) - 2 must hold whatever the
        // multiplicity structure around the contracted edge.
        let mut state = 0x1234_5678_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 2 + (next() % 5) as usize;
            let m = 1 + (next() % 8) as usize;
            let endpoints: Vec<(usize, usize)> = (0..m)
                .map(|_| ((next() % n as u64) as usize, (next() % n as u64) as usize))
                .collect();
            let g = MultiGraph::build(n, &endpoints).unwrap();
            for e in g.edges().to_vec() {
                if e.is_loop() {
                    continue;
                }
                let (child, corr) = g.contract(e.id).unwrap();
                let merged = corr.vertex_map[e.tail];
                assert_eq!(
                    child.degree(merged),
                    g.degree(e.tail) + g.degree(e.head) - 2
                );
                assert_eq!(child.edge_count(), g.edge_count() - 1);
            }
        }
    }

    #[test]
    fn contracting_a_spanning_tree_leaves_loops_only() {
        // Contract edges of K4 until one vertex remains: the m - (n-1)
        // surviving edges must all be loops.
        let mut g = k4();
        while g.vertex_count() > 1 {
            let next = g
                .edges()
                .iter()
                .find(|e| !e.is_loop())
                .expect("connected graph with >1 vertex has a non-loop edge")
                .id;
            g = g.contract(next).unwrap().0;
        }
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().iter().all(Edge::is_loop));
    }
}
