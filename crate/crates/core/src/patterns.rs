//! The fixed family of small induced patterns the algorithm reasons about:
//! constructors, induced-occurrence detection, and a generator of random
//! S_{1,1,5}-free instances.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    K4,
    /// Role order `v1, v2, v3, u`; the mid-edge is `u v2`.
    Diamond,
    /// Role order `v1, v2, v3, v4, u`; the peripheral edges are `v1 v2` and `v3 v4`.
    Butterfly,
    /// Role order: center, then the three leaves.
    Claw,
    /// Three induced legs of lengths `i`, `j`, `k` glued at a center.
    /// Role order: center, then leg `i`, leg `j`, leg `k`, each from the center outwards.
    Spider(usize, usize, usize),
    /// Induced path on `k >= 2` vertices, in path order.
    Path(usize),
    /// Induced cycle on `k >= 3` vertices, in cyclic order.
    Cycle(usize),
}

impl PatternKind {
    pub const S115: PatternKind = PatternKind::Spider(1, 1, 5);
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PatternKind::K4 => write!(f, "K4"),
            PatternKind::Diamond => write!(f, "diamond"),
            PatternKind::Butterfly => write!(f, "butterfly"),
            PatternKind::Claw => write!(f, "claw"),
            PatternKind::Spider(i, j, k) => write!(f, "S_{{{i},{j},{k}}}"),
            PatternKind::Path(k) => write!(f, "P{k}"),
            PatternKind::Cycle(k) => write!(f, "C{k}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("invalid pattern parameters: {0}")]
    InvalidParameters(PatternKind),
}

/// An induced occurrence: `vertices[r]` is the host vertex playing role `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<Vertex>,
}

impl PatternWitness {
    /// Re-checks that the listed vertices induce exactly the pattern in `host`.
    pub fn is_induced_in(&self, host: &Graph) -> bool {
        let Ok(pattern) = make_named(self.kind) else {
            return false;
        };
        if pattern.n() != self.vertices.len() {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.vertices.len() || self.vertices.iter().any(|&v| v >= host.n()) {
            return false;
        }
        (0..pattern.n()).all(|a| {
            (a + 1..pattern.n())
                .all(|b| pattern.has_edge(a, b) == host.has_edge(self.vertices[a], self.vertices[b]))
        })
    }
}

/// The canonical graph of a pattern, vertices numbered in role order.
pub fn make_named(kind: PatternKind) -> Result<Graph, PatternError> {
    let invalid = Err(PatternError::InvalidParameters(kind));
    let (n, edges): (usize, Vec<(Vertex, Vertex)>) = match kind {
        PatternKind::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        PatternKind::Diamond => (4, vec![(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]),
        PatternKind::Butterfly => (5, vec![(0, 1), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]),
        PatternKind::Claw => (4, vec![(0, 1), (0, 2), (0, 3)]),
        PatternKind::Spider(i, j, k) => {
            let mut edges = Vec::new();
            let mut next = 1;
            for len in [i, j, k] {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            (next, edges)
        }
        PatternKind::Path(k) if k >= 2 => (k, (1..k).map(|i| (i - 1, i)).collect()),
        PatternKind::Cycle(k) if k >= 3 => (k, (0..k).map(|i| (i, (i + 1) % k)).collect()),
        PatternKind::Path(_) | PatternKind::Cycle(_) => return invalid,
    };
    Ok(Graph::new(n, edges).expect("pattern constructors emit simple graphs"))
}

/// Finds an induced occurrence of `kind` in `g`, if any.
pub fn find_induced(g: &Graph, kind: PatternKind) -> Option<PatternWitness> {
    let pattern = make_named(kind).ok()?;
    let image = InducedMatcher::new(&pattern, g).find()?;
    let witness = PatternWitness { kind, vertices: image };
    debug_assert!(witness.is_induced_in(g));
    Some(witness)
}

/// Backtracking search for an induced copy of a small connected pattern.
/// Pattern vertices are placed in BFS order from role 0, so every later
/// vertex is a host neighbour of an already placed one.
struct InducedMatcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<Vertex>,
    anchor: Vec<Option<Vertex>>,
    image: Vec<Vertex>,
    used: Vec<bool>,
}

impl<'a> InducedMatcher<'a> {
    fn new(pattern: &'a Graph, host: &'a Graph) -> Self {
        let k = pattern.n();
        let mut order = Vec::with_capacity(k);
        let mut anchor = vec![None; k];
        let mut seen = vec![false; k];
        for root in 0..k {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            order.push(root);
            let mut head = order.len() - 1;
            while head < order.len() {
                let p = order[head];
                head += 1;
                for &q in pattern.neighbors(p) {
                    if !seen[q] {
                        seen[q] = true;
                        anchor[q] = Some(p);
                        order.push(q);
                    }
                }
            }
        }
        InducedMatcher { pattern, host, order, anchor, image: vec![usize::MAX; k], used: vec![false; host.n()] }
    }

    fn find(mut self) -> Option<Vec<Vertex>> {
        if self.pattern.n() > self.host.n() {
            return None;
        }
        if self.extend(0) {
            Some(self.image)
        } else {
            None
        }
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let candidates: Vec<Vertex> = match self.anchor[p] {
            Some(a) => self.host.neighbors(self.image[a]).to_vec(),
            None => self.host.vertices().collect(),
        };
        for h in candidates {
            if self.used[h] || self.host.degree(h) < self.pattern.degree(p) || !self.consistent(depth, p, h) {
                continue;
            }
            self.used[h] = true;
            self.image[p] = h;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[h] = false;
            self.image[p] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, p: Vertex, h: Vertex) -> bool {
        self.order[..depth]
            .iter()
            .all(|&q| self.pattern.has_edge(p, q) == self.host.has_edge(h, self.image[q]))
    }
}

/// Erdős–Rényi `G(n, p)` followed by repair: while an induced S_{1,1,5}
/// exists, delete its vertex of maximum degree (ties: smallest id) and
/// compact the ids. Deterministic for a fixed seed.
pub fn random_s115_free(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    let mut g = Graph::new(n, pairs).expect("sampled pairs are simple");
    while let Some(w) = find_induced(&g, PatternKind::S115) {
        let victim = *w
            .vertices
            .iter()
            .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("witness is nonempty");
        let keep: Vec<Vertex> = g.vertices().filter(|&v| v != victim).collect();
        g = g.induced_subgraph(&keep).0;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn named_graph_sizes() {
        let p3 = make_named(PatternKind::Path(3)).unwrap();
        assert_eq!((p3.n(), p3.m()), (3, 2));
        let claw = make_named(PatternKind::Spider(1, 1, 1)).unwrap();
        assert_eq!((claw.n(), claw.m()), (4, 3));
        assert_eq!(claw, make_named(PatternKind::Claw).unwrap());
        let s115 = make_named(PatternKind::S115).unwrap();
        assert_eq!((s115.n(), s115.m()), (8, 7));
        assert!(make_named(PatternKind::Path(1)).is_err());
        assert!(make_named(PatternKind::Cycle(2)).is_err());
    }

    #[test]
    fn diamond_witness_reports_mid_edge() {
        let d = make_named(PatternKind::Diamond).unwrap();
        let w = find_induced(&d, PatternKind::Diamond).unwrap();
        // the mid-edge joins the two degree-3 vertices
        let mid = Edge::new(w.vertices[3], w.vertices[1]);
        assert_eq!(mid, Edge::new(1, 3));
        assert!(d.degree(mid.u()) == 3 && d.degree(mid.v()) == 3);
    }

    #[test]
    fn butterfly_witness_lists_peripheral_edges_first() {
        let b = make_named(PatternKind::Butterfly).unwrap();
        let w = find_induced(&b, PatternKind::Butterfly).unwrap();
        assert!(b.has_edge(w.vertices[0], w.vertices[1]));
        assert!(b.has_edge(w.vertices[2], w.vertices[3]));
        assert_eq!(b.degree(w.vertices[4]), 4);
    }

    #[test]
    fn detector_examples() {
        let c6 = make_named(PatternKind::Cycle(6)).unwrap();
        assert_eq!(find_induced(&c6, PatternKind::Claw), None);
        let s115 = make_named(PatternKind::S115).unwrap();
        let w = find_induced(&s115, PatternKind::S115).unwrap();
        assert_eq!(w.vertices[0], 0);
        let p7 = make_named(PatternKind::Path(7)).unwrap();
        assert_eq!(find_induced(&p7, PatternKind::S115), None);
        // C5 has an induced P4 but no induced P5
        let c5 = make_named(PatternKind::Cycle(5)).unwrap();
        assert!(find_induced(&c5, PatternKind::Path(4)).is_some());
        assert!(find_induced(&c5, PatternKind::Path(5)).is_none());
        // induced means no chords: K4 has no induced C4
        let k4 = make_named(PatternKind::K4).unwrap();
        assert!(find_induced(&k4, PatternKind::Cycle(4)).is_none());
    }

    #[test]
    fn larger_spiders_are_absent_from_smaller_ones() {
        let s = make_named(PatternKind::Spider(1, 1, 3)).unwrap();
        assert!(find_induced(&s, PatternKind::Spider(1, 1, 3)).is_some());
        assert!(find_induced(&s, PatternKind::Spider(1, 1, 4)).is_none());
        assert!(find_induced(&s, PatternKind::Spider(1, 2, 3)).is_none());
    }

    #[test]
    fn generator_examples() {
        let g = random_s115_free(0, 0.5, 1);
        assert_eq!(g.n(), 0);
        // seven vertices cannot host an eight-vertex spider: nothing is repaired
        let g7 = random_s115_free(7, 0.5, 3);
        assert_eq!(g7.n(), 7);
        let g16 = random_s115_free(16, 0.2, 42);
        assert!(find_induced(&g16, PatternKind::S115).is_none());
        assert_eq!(g16, random_s115_free(16, 0.2, 42));
    }
}
