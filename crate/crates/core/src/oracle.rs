//! Exact reference search for dominating induced matchings, independent of
//! the coloring engine.
//!
//! The search repeatedly picks the first edge not yet dominated and branches
//! on which edge of the matching dominates it: the edge itself or one of its
//! neighbours. A candidate is taken only if it keeps the matching induced.
//! Different branches disagree on the dominator of the chosen edge, so every
//! d.i.m. is produced exactly once.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DimCertificate, Edge, EdgeId, Graph, Vertex};

/// Default cap on search nodes, overridable through `DIM_ORACLE_BUDGET`.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Graphs up to this many edges get an exact count in [`brute_force_dim`].
pub const COUNT_EDGE_LIMIT: usize = 40;

/// Largest edge count accepted by [`subset_filter_dims`].
pub const SUBSET_EDGE_LIMIT: usize = 20;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub exists: bool,
    pub witness: Option<DimCertificate>,
    pub count: Option<u64>,
}

/// Reads `DIM_ORACLE_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("DIM_ORACLE_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Existence, a witness, and for small graphs the number of d.i.m.s.
pub fn brute_force_dim(g: &Graph) -> Result<OracleReport, OracleError> {
    brute_force_dim_with_budget(g, budget_from_env())
}

pub fn brute_force_dim_with_budget(g: &Graph, budget: u64) -> Result<OracleReport, OracleError> {
    if g.m() <= COUNT_EDGE_LIMIT {
        let all = enumerate_with_budget(g, budget)?;
        let count = all.len() as u64;
        return Ok(OracleReport { exists: count > 0, witness: all.into_iter().next(), count: Some(count) });
    }
    let mut search = Search::new(g, budget);
    let mut witness = None;
    search.run(&mut |m| {
        witness = Some(m);
        false
    })?;
    Ok(OracleReport { exists: witness.is_some(), witness, count: None })
}

/// Every d.i.m. of `g`, sorted lexicographically by edge list.
pub fn enumerate_dims(g: &Graph) -> Result<Vec<DimCertificate>, OracleError> {
    enumerate_with_budget(g, budget_from_env())
}

pub fn enumerate_with_budget(g: &Graph, budget: u64) -> Result<Vec<DimCertificate>, OracleError> {
    let mut out = Vec::new();
    Search::new(g, budget).run(&mut |m| {
        out.push(m);
        true
    })?;
    out.sort_unstable_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

/// Second reference: filters all edge subsets through the definition.
/// Returns `None` above [`SUBSET_EDGE_LIMIT`] edges.
pub fn subset_filter_dims(g: &Graph) -> Option<Vec<DimCertificate>> {
    let m = g.m();
    if m > SUBSET_EDGE_LIMIT {
        return None;
    }
    // incident[e] = bitmask of edges sharing an endpoint with e, including e
    let incident: Vec<u32> = g
        .edges()
        .iter()
        .map(|e| {
            g.edges().iter().enumerate().filter(|(_, f)| e.touches(**f)).fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        if incident.iter().all(|&inc| (inc & mask).count_ones() == 1) {
            let edges = (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| g.edge(j));
            out.push(DimCertificate::new(edges).expect("exactly-once domination implies a matching"));
        }
    }
    out.sort_unstable_by(|a, b| a.edges().cmp(b.edges()));
    Some(out)
}

struct Search<'a> {
    g: &'a Graph,
    /// Number of matched vertices in the closed neighbourhood of each vertex.
    near: Vec<u32>,
    matched: Vec<bool>,
    chosen: Vec<EdgeId>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        Search { g, near: vec![0; g.n()], matched: vec![false; g.n()], chosen: Vec::new(), nodes: 0, budget }
    }

    /// Calls `visit` on every d.i.m. until it returns `false`.
    fn run(&mut self, visit: &mut dyn FnMut(DimCertificate) -> bool) -> Result<(), OracleError> {
        self.rec(0, visit).map(|_| ())
    }

    fn rec(&mut self, from: EdgeId, visit: &mut dyn FnMut(DimCertificate) -> bool) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded { budget: self.budget });
        }
        // edges before `from` are dominated, and stay so as the matching grows
        let next = (from..self.g.m()).find(|&id| {
            let e = self.g.edge(id);
            !self.matched[e.u()] && !self.matched[e.v()]
        });
        let Some(id) = next else {
            let m = DimCertificate::new(self.chosen.iter().map(|&i| self.g.edge(i)))
                .expect("chosen edges are pairwise far apart");
            return Ok(visit(m));
        };
        let e = self.g.edge(id);
        let mut candidates = vec![id];
        for end in [e.u(), e.v()] {
            candidates.extend(self.g.incident(end).map(|(_, f)| f).filter(|&f| f != id));
        }
        for f in candidates {
            let fe = self.g.edge(f);
            if self.near[fe.u()] != 0 || self.near[fe.v()] != 0 {
                continue;
            }
            self.toggle(fe, true);
            let go_on = self.rec(id + 1, visit);
            self.toggle(fe, false);
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn toggle(&mut self, e: Edge, add: bool) {
        for end in [e.u(), e.v()] {
            self.matched[end] = add;
            self.bump(end, add);
            for i in 0..self.g.degree(end) {
                let w: Vertex = self.g.neighbors(end)[i];
                self.bump(w, add);
            }
        }
        if add {
            self.chosen.push(self.g.edge_id(e.u(), e.v()).expect("edge of g"));
        } else {
            self.chosen.pop();
        }
    }

    fn bump(&mut self, v: Vertex, add: bool) {
        if add {
            self.near[v] += 1;
        } else {
            self.near[v] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_dim;
    use crate::patterns::{make_named, PatternKind};

    fn named(k: PatternKind) -> Graph {
        make_named(k).unwrap()
    }

    #[test]
    fn small_examples() {
        let p4 = named(PatternKind::Path(4));
        let r = brute_force_dim(&p4).unwrap();
        assert!(r.exists);
        assert_eq!(r.count, Some(1));
        assert_eq!(r.witness.unwrap().edges(), &[Edge::new(1, 2)]);

        let c4 = named(PatternKind::Cycle(4));
        assert_eq!(brute_force_dim(&c4).unwrap().count, Some(0));
        let k3 = named(PatternKind::Cycle(3));
        assert_eq!(brute_force_dim(&k3).unwrap().count, Some(3));
        assert!(!brute_force_dim(&named(PatternKind::K4)).unwrap().exists);
        // any single edge of a star dominates the others exactly once
        assert_eq!(brute_force_dim(&named(PatternKind::Claw)).unwrap().count, Some(3));
    }

    #[test]
    fn empty_graph_has_the_empty_dim() {
        let g = Graph::empty(3);
        let r = brute_force_dim(&g).unwrap();
        assert_eq!(r.count, Some(1));
        assert!(r.witness.unwrap().is_empty());
    }

    #[test]
    fn cycles_have_dims_iff_length_divisible_by_three() {
        for k in 3..=12 {
            let c = named(PatternKind::Cycle(k));
            let all = enumerate_dims(&c).unwrap();
            assert_eq!(!all.is_empty(), k % 3 == 0, "C{k}");
            if k % 3 == 0 {
                assert_eq!(all.len(), 3);
            }
        }
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        for k in [PatternKind::Path(6), PatternKind::Cycle(6), PatternKind::Butterfly, PatternKind::S115] {
            let g = named(k);
            let a = enumerate_dims(&g).unwrap();
            assert_eq!(Some(a.clone()), subset_filter_dims(&g), "{k}");
            assert!(a.iter().all(|m| verify_dim(&g, m).is_ok()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = named(PatternKind::Cycle(30));
        assert_eq!(brute_force_dim_with_budget(&g, 5), Err(OracleError::BudgetExceeded { budget: 5 }));
    }
}
