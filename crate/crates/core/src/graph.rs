//! Immutable simple undirected graphs, distance levels around an edge,
//! connected components and the d.i.m. certificate verifier.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;

/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

/// An unordered vertex pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Canonicalizes the pair. Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("an edge needs two distinct endpoints")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn contains(self, w: Vertex) -> bool {
        self.u == w || self.v == w
    }

    /// The endpoint that is not `w`.
    pub fn other(self, w: Vertex) -> Vertex {
        debug_assert!(self.contains(w));
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(self, other: Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
}

/// A simple undirected graph. Adjacency lists are sorted; edge ids index the
/// sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    adj_ids: Vec<Vec<EdgeId>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops, duplicates and ids `>= n` are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for w in [a, b] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            edges.push(Edge::try_new(a, b).ok_or(GraphError::SelfLoop(a))?);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted_edges(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut adj_ids = vec![Vec::new(); n];
        // Edges are sorted by (u, v): pushing in this order keeps every list sorted.
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push(e.v);
            adj_ids[e.u].push(id);
        }
        for (id, e) in edges.iter().enumerate() {
            adj[e.v].push(e.u);
            adj_ids[e.v].push(id);
        }
        for v in 0..n {
            let mut paired: Vec<_> = adj[v].iter().copied().zip(adj_ids[v].iter().copied()).collect();
            paired.sort_unstable();
            adj[v] = paired.iter().map(|p| p.0).collect();
            adj_ids[v] = paired.iter().map(|p| p.1).collect();
        }
        Graph { adj, adj_ids, edges }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Neighbors of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.adj[v].iter().copied().zip(self.adj_ids[v].iter().copied())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_id(a, b).is_some()
    }

    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        let (s, t) = if self.adj[a].len() <= self.adj[b].len() { (a, b) } else { (b, a) };
        self.adj[s].binary_search(&t).ok().map(|i| self.adj_ids[s][i])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push(Edge::new(i, j));
                }
            }
        }
        edges.sort_unstable();
        (Self::from_sorted_edges(vertices.len(), edges), vertices.to_vec())
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut edges: Vec<Edge> = self.edges.iter().map(|e| Edge::new(perm[e.u], perm[e.v])).collect();
        edges.sort_unstable();
        Self::from_sorted_edges(self.n(), edges)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&vec![true; self.n()])
    }

    /// Components of the subgraph induced by the vertices with `alive[v]`.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in self.vertices() {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Distance levels of the edge `xy`: level 0 is `{x, y}`, level `i` holds
    /// the vertices at distance `i` from the edge. Each level is sorted.
    pub fn distance_levels(&self, xy: Edge) -> Result<Vec<Vec<Vertex>>, GraphError> {
        if xy.v >= self.n() || !self.has_edge(xy.u, xy.v) {
            return Err(GraphError::NotAnEdge(xy));
        }
        Ok(self.levels_within(&vec![true; self.n()], xy))
    }

    /// Distance levels of `xy` inside the subgraph induced by `alive`.
    pub(crate) fn levels_within(&self, alive: &[bool], xy: Edge) -> Vec<Vec<Vertex>> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        let mut levels: Vec<Vec<Vertex>> = vec![vec![xy.u, xy.v]];
        dist[xy.u] = 0;
        dist[xy.v] = 0;
        queue.push_back(xy.u);
        queue.push_back(xy.v);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if alive[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    if levels.len() <= dist[w] {
                        levels.push(Vec::new());
                    }
                    levels[dist[w]].push(w);
                    queue.push_back(w);
                }
            }
        }
        for level in &mut levels {
            level.sort_unstable();
        }
        levels
    }

    /// Whether `xy` lies in an induced P3, i.e. some vertex sees exactly one of `x`, `y`.
    pub fn edge_in_p3(&self, xy: Edge) -> bool {
        self.edge_in_p3_within(None, xy)
    }

    pub(crate) fn edge_in_p3_within(&self, alive: Option<&[bool]>, xy: Edge) -> bool {
        let live = |w: Vertex| alive.is_none_or(|a| a[w]);
        let (x, y) = (xy.u, xy.v);
        self.neighbors(x).iter().any(|&z| z != y && live(z) && !self.has_edge(z, y))
            || self.neighbors(y).iter().any(|&z| z != x && live(z) && !self.has_edge(z, x))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("edges {0} and {1} share an endpoint")]
    NotAMatching(Edge, Edge),
}

/// A set of edges claimed to be a dominating induced matching.
///
/// Construction only checks that the edges are pairwise vertex-disjoint;
/// validity against a graph is established by [`verify_dim`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimCertificate {
    edges: Vec<Edge>,
}

impl DimCertificate {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self, CertificateError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut owner: std::collections::HashMap<Vertex, Edge> = std::collections::HashMap::new();
        for &e in &edges {
            for w in [e.u, e.v] {
                if let Some(prev) = owner.insert(w, e) {
                    return Err(CertificateError::NotAMatching(prev, e));
                }
            }
        }
        Ok(DimCertificate { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Maps every endpoint through `map` (e.g. from a component back to its host graph).
    pub fn mapped(&self, map: &[Vertex]) -> DimCertificate {
        DimCertificate::new(self.edges.iter().map(|e| Edge::new(map[e.u], map[e.v])))
            .expect("relabelling preserves disjointness")
    }

    pub fn union(&self, other: &DimCertificate) -> Result<DimCertificate, CertificateError> {
        DimCertificate::new(self.edges.iter().chain(other.edges.iter()).copied())
    }
}

/// First reason a certificate fails to be a d.i.m.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimViolation {
    #[error("certificate member {0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("edge {edge} is intersected by {count} certificate edges")]
    WrongDomination { edge: Edge, count: usize },
}

/// Checks that every edge of `g` is intersected by exactly one member of `m`
/// (a member intersects itself). Reports the first violating edge.
pub fn verify_dim(g: &Graph, m: &DimCertificate) -> Result<(), DimViolation> {
    let mut in_m = vec![false; g.m()];
    let mut mdeg = vec![0usize; g.n()];
    for &e in m.edges() {
        let id = (e.v < g.n()).then(|| g.edge_id(e.u, e.v)).flatten().ok_or(DimViolation::NotAnEdge(e))?;
        in_m[id] = true;
        mdeg[e.u] += 1;
        mdeg[e.v] += 1;
    }
    for (id, &e) in g.edges().iter().enumerate() {
        let count = mdeg[e.u] + mdeg[e.v] - usize::from(in_m[id]);
        if count != 1 {
            return Err(DimViolation::WrongDomination { edge: e, count });
        }
    }
    Ok(())
}

pub fn is_dim(g: &Graph, m: &DimCertificate) -> bool {
    verify_dim(g, m).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn cert(pairs: &[(usize, usize)]) -> DimCertificate {
        DimCertificate::new(pairs.iter().map(|&(a, b)| Edge::new(a, b))).unwrap()
    }

    #[test]
    fn builds_small_graphs() {
        let p2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!((p2.n(), p2.m()), (2, 1));
        let p3 = Graph::new(3, [(1, 0), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(p3.neighbors(1), &[0, 2]);
        assert!(p3.has_edge(2, 1) && !p3.has_edge(0, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(Edge::new(0, 1))));
    }

    #[test]
    fn edge_ids_follow_sorted_edges() {
        let g = cycle(5);
        for (id, e) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(e.u(), e.v()), Some(id));
            assert_eq!(g.edge_id(e.v(), e.u()), Some(id));
        }
        for v in g.vertices() {
            for (w, id) in g.incident(v) {
                assert!(g.edge(id).contains(v) && g.edge(id).contains(w));
            }
        }
    }

    #[test]
    fn distance_levels_of_paths_and_cycles() {
        let p6 = path(6);
        assert_eq!(
            p6.distance_levels(Edge::new(1, 2)).unwrap(),
            vec![vec![1, 2], vec![0, 3], vec![4], vec![5]]
        );
        assert_eq!(path(2).distance_levels(Edge::new(0, 1)).unwrap(), vec![vec![0, 1]]);
        let c6 = cycle(6);
        let levels = c6.distance_levels(Edge::new(0, 1)).unwrap();
        assert_eq!(levels.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2, 2]);
        assert_eq!(
            p6.distance_levels(Edge::new(0, 2)),
            Err(GraphError::NotAnEdge(Edge::new(0, 2)))
        );
    }

    #[test]
    fn components() {
        let two_p2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_p2.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(path(6).connected_components().len(), 1);
        assert_eq!(Graph::empty(3).connected_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn verifier_examples() {
        let p3 = path(3);
        assert!(is_dim(&p3, &cert(&[(0, 1)])));
        let c4 = cycle(4);
        assert!(matches!(
            verify_dim(&c4, &cert(&[(0, 1)])),
            Err(DimViolation::WrongDomination { edge, count: 0 }) if edge == Edge::new(2, 3)
        ));
        // butterfly: v1v2, v3v4 peripheral, u = 4
        let butterfly = Graph::new(5, [(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        assert!(is_dim(&butterfly, &cert(&[(0, 1), (2, 3)])));
        assert_eq!(verify_dim(&p3, &cert(&[(0, 2)])), Err(DimViolation::NotAnEdge(Edge::new(0, 2))));
        assert!(is_dim(&Graph::empty(3), &DimCertificate::default()));
    }

    #[test]
    fn certificates_must_be_matchings() {
        assert!(DimCertificate::new([Edge::new(0, 1), Edge::new(1, 2)]).is_err());
    }

    #[test]
    fn p3_membership() {
        let tri = cycle(3);
        assert!(!tri.edge_in_p3(Edge::new(0, 1)));
        assert!(path(3).edge_in_p3(Edge::new(0, 1)));
    }
}
