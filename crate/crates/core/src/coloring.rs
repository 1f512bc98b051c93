//! Black/white vertex colorings with constraint propagation.
//!
//! A complete coloring is feasible when the white vertices are independent
//! and every black vertex has exactly one black neighbour, its *mate*; the
//! mated pairs are then a dominating induced matching. A [`ColoringState`]
//! holds a partial coloring of a host graph together with the mate map, a
//! set of excluded edges (edges that may not join two mates) and an alive
//! mask. Reductions mask vertices instead of compacting ids, so the final
//! mate map is directly a certificate for the host graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DimCertificate, Edge, EdgeId, Graph, Vertex};
use crate::patterns::{find_induced, PatternKind, PatternWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Unknown,
    Black,
    White,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Unknown => "unknown",
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

/// Why a partial coloring cannot be completed.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Contradiction {
    #[error("adjacent white vertices {0}")]
    AdjacentWhites(Edge),
    #[error("black vertex {vertex} has black neighbours {first} and {second}")]
    TwoBlackNeighbors { vertex: Vertex, first: Vertex, second: Vertex },
    #[error("black vertex {0} has no possible mate")]
    NoMateCandidate(Vertex),
    #[error("excluded edge {0} has two black endpoints")]
    ExcludedEdgeBlack(Edge),
    #[error("vertex {vertex} is {current} and cannot become {requested}")]
    Recolor { vertex: Vertex, current: Color, requested: Color },
    #[error("vertex {vertex} cannot be mated to {wanted}: already mated to {mate}")]
    MateConflict { vertex: Vertex, wanted: Vertex, mate: Vertex },
    #[error("{0} is not an edge")]
    NotAnEdge(Edge),
}

const NO_MATE: Vertex = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringState {
    color: Vec<Color>,
    mate: Vec<Vertex>,
    excluded: Vec<bool>,
    alive: Vec<bool>,
    contradiction: Option<Contradiction>,
    queue: VecDeque<Vertex>,
    queued: Vec<bool>,
}

impl ColoringState {
    pub fn new(g: &Graph) -> Self {
        ColoringState {
            color: vec![Color::Unknown; g.n()],
            mate: vec![NO_MATE; g.n()],
            excluded: vec![false; g.m()],
            alive: vec![true; g.n()],
            contradiction: None,
            queue: VecDeque::new(),
            queued: vec![false; g.n()],
        }
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.color[v]
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        (self.mate[v] != NO_MATE).then_some(self.mate[v])
    }

    pub fn is_alive(&self, v: Vertex) -> bool {
        self.alive[v]
    }

    pub fn alive_mask(&self) -> &[bool] {
        &self.alive
    }

    pub fn is_excluded(&self, id: EdgeId) -> bool {
        self.excluded[id]
    }

    pub fn contradiction(&self) -> Option<&Contradiction> {
        self.contradiction.as_ref()
    }

    /// Unknown, or black without a mate: the vertices still carrying an open constraint.
    pub fn is_open(&self, v: Vertex) -> bool {
        self.alive[v] && (self.color[v] == Color::Unknown || (self.color[v] == Color::Black && self.mate[v] == NO_MATE))
    }

    pub fn black_unmated(&self, v: Vertex) -> bool {
        self.color[v] == Color::Black && self.mate[v] == NO_MATE
    }

    fn fail(&mut self, c: Contradiction) -> Result<(), Contradiction> {
        if self.contradiction.is_none() {
            self.contradiction = Some(c.clone());
        }
        Err(c)
    }

    fn check(&self) -> Result<(), Contradiction> {
        match &self.contradiction {
            Some(c) => Err(c.clone()),
            None => Ok(()),
        }
    }

    fn enqueue(&mut self, v: Vertex) {
        if self.alive[v] && !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    fn touch(&mut self, g: &Graph, v: Vertex) {
        self.enqueue(v);
        for &w in g.neighbors(v) {
            self.enqueue(w);
        }
    }

    /// Records a color. Re-assigning the same color is a no-op; a
    /// conflicting one poisons the state.
    pub fn assign(&mut self, g: &Graph, v: Vertex, c: Color) -> Result<(), Contradiction> {
        self.check()?;
        match self.color[v] {
            cur if cur == c => Ok(()),
            Color::Unknown => {
                self.color[v] = c;
                self.touch(g, v);
                Ok(())
            }
            cur => self.fail(Contradiction::Recolor { vertex: v, current: cur, requested: c }),
        }
    }

    /// Commits `uv` to the matching: both endpoints black and mated.
    pub fn set_mate(&mut self, g: &Graph, u: Vertex, v: Vertex) -> Result<(), Contradiction> {
        self.check()?;
        let e = Edge::new(u, v);
        let Some(id) = g.edge_id(u, v) else {
            return self.fail(Contradiction::NotAnEdge(e));
        };
        if self.excluded[id] {
            return self.fail(Contradiction::ExcludedEdgeBlack(e));
        }
        for (a, b) in [(u, v), (v, u)] {
            if self.mate[a] != NO_MATE && self.mate[a] != b {
                return self.fail(Contradiction::MateConflict { vertex: a, wanted: b, mate: self.mate[a] });
            }
        }
        self.assign(g, u, Color::Black)?;
        self.assign(g, v, Color::Black)?;
        self.mate[u] = v;
        self.mate[v] = u;
        self.touch(g, u);
        self.touch(g, v);
        Ok(())
    }

    /// Forbids `id` from joining two mates.
    pub fn exclude(&mut self, g: &Graph, id: EdgeId) {
        if !self.excluded[id] {
            self.excluded[id] = true;
            let e = g.edge(id);
            self.enqueue(e.u());
            self.enqueue(e.v());
        }
    }

    /// Masks `v` out of the working graph. Its color and mate are kept.
    pub fn remove(&mut self, g: &Graph, v: Vertex) {
        if self.alive[v] {
            self.alive[v] = false;
            for &w in g.neighbors(v) {
                self.enqueue(w);
            }
        }
    }

    /// Applies the forcing rules until nothing changes:
    ///
    /// * a neighbour of a white vertex is black;
    /// * a black vertex with one black neighbour is mated to it, and every
    ///   other neighbour of a mated vertex is white;
    /// * a black vertex with a single remaining candidate forces it black;
    /// * an excluded edge with a black endpoint has a white other endpoint;
    /// * an undecided vertex next to two blacks, a mated black, or without any
    ///   possible mate is white.
    ///
    /// All rules are monotone, so the fixpoint does not depend on the queue order.
    pub fn propagate(&mut self, g: &Graph) -> Result<(), Contradiction> {
        self.check()?;
        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
            if !self.alive[v] {
                continue;
            }
            if let Err(c) = self.process(g, v) {
                self.queue.clear();
                self.queued.iter_mut().for_each(|q| *q = false);
                return self.fail(c);
            }
        }
        Ok(())
    }

    /// Queues every alive vertex, e.g. after building a state by hand.
    pub fn enqueue_all(&mut self) {
        for v in 0..self.color.len() {
            self.enqueue(v);
        }
    }

    fn set(&mut self, g: &Graph, v: Vertex, c: Color) -> Result<(), Contradiction> {
        match self.color[v] {
            Color::Unknown => {
                self.color[v] = c;
                self.touch(g, v);
                Ok(())
            }
            cur if cur == c => Ok(()),
            cur => Err(Contradiction::Recolor { vertex: v, current: cur, requested: c }),
        }
    }

    fn process(&mut self, g: &Graph, u: Vertex) -> Result<(), Contradiction> {
        match self.color[u] {
            Color::White => {
                for &w in g.neighbors(u) {
                    if !self.alive[w] {
                        continue;
                    }
                    match self.color[w] {
                        Color::White => return Err(Contradiction::AdjacentWhites(Edge::new(u, w))),
                        Color::Unknown => self.set(g, w, Color::Black)?,
                        Color::Black => {}
                    }
                }
            }
            Color::Black => self.process_black(g, u)?,
            Color::Unknown => self.process_unknown(g, u)?,
        }
        Ok(())
    }

    fn process_black(&mut self, g: &Graph, u: Vertex) -> Result<(), Contradiction> {
        let mut blacks = [NO_MATE; 2];
        let mut n_black = 0;
        let mut candidate = NO_MATE;
        let mut n_candidates = 0;
        let mut whiten = Vec::new();
        for (w, id) in g.incident(u) {
            if !self.alive[w] {
                continue;
            }
            match self.color[w] {
                Color::Black => {
                    if self.excluded[id] {
                        return Err(Contradiction::ExcludedEdgeBlack(Edge::new(u, w)));
                    }
                    if n_black == 2 {
                        continue;
                    }
                    blacks[n_black] = w;
                    n_black += 1;
                }
                Color::Unknown => {
                    if self.excluded[id] {
                        whiten.push(w);
                    } else {
                        candidate = w;
                        n_candidates += 1;
                    }
                }
                Color::White => {}
            }
        }
        if n_black == 2 {
            return Err(Contradiction::TwoBlackNeighbors { vertex: u, first: blacks[0], second: blacks[1] });
        }
        for w in whiten {
            self.set(g, w, Color::White)?;
        }
        if n_black == 1 {
            let w = blacks[0];
            if self.mate[u] != NO_MATE && self.mate[u] != w {
                return Err(Contradiction::MateConflict { vertex: u, wanted: w, mate: self.mate[u] });
            }
            if self.mate[w] != NO_MATE && self.mate[w] != u {
                return Err(Contradiction::MateConflict { vertex: w, wanted: u, mate: self.mate[w] });
            }
            if self.mate[u] == NO_MATE {
                self.mate[u] = w;
                self.mate[w] = u;
                self.touch(g, u);
                self.touch(g, w);
            }
        }
        if self.mate[u] != NO_MATE {
            let m = self.mate[u];
            let rest: Vec<Vertex> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| w != m && self.alive[w] && self.color[w] == Color::Unknown)
                .collect();
            for w in rest {
                self.set(g, w, Color::White)?;
            }
        } else if n_black == 0 {
            match n_candidates {
                0 => return Err(Contradiction::NoMateCandidate(u)),
                1 => self.set(g, candidate, Color::Black)?,
                _ => {}
            }
        }
        Ok(())
    }

    fn process_unknown(&mut self, g: &Graph, u: Vertex) -> Result<(), Contradiction> {
        let mut n_black = 0;
        let mut must_be_white = false;
        let mut has_candidate = false;
        for (w, id) in g.incident(u) {
            if !self.alive[w] {
                continue;
            }
            match self.color[w] {
                Color::White => return self.set(g, u, Color::Black),
                Color::Black => {
                    n_black += 1;
                    if self.mate[w] != NO_MATE || self.excluded[id] {
                        must_be_white = true;
                    } else {
                        has_candidate = true;
                    }
                }
                Color::Unknown => has_candidate |= !self.excluded[id],
            }
        }
        if must_be_white || n_black >= 2 || !has_candidate {
            self.set(g, u, Color::White)?;
        }
        Ok(())
    }

    /// True when every alive vertex in `scope` is colored and every black one is mated.
    pub fn is_settled_on(&self, scope: &[Vertex]) -> bool {
        scope.iter().all(|&v| !self.is_open(v))
    }

    /// The mated pairs as a certificate.
    pub fn certificate(&self) -> DimCertificate {
        DimCertificate::new(
            (0..self.mate.len()).filter(|&v| self.mate[v] != NO_MATE && v < self.mate[v]).map(|v| Edge::new(v, self.mate[v])),
        )
        .expect("the mate map is symmetric")
    }

    /// Removes every alive white vertex and every alive mated pair. Their
    /// constraints are already discharged onto the remaining vertices.
    pub fn settle(&mut self, g: &Graph, log: &mut ReductionLog) -> Result<(), Contradiction> {
        self.propagate(g)?;
        for v in 0..self.color.len() {
            if !self.alive[v] {
                continue;
            }
            match self.color[v] {
                Color::White => {
                    self.remove(g, v);
                    log.push(LogAction::RemovedVertex(v), Rule::Propagation);
                }
                Color::Black if self.mate[v] != NO_MATE && v < self.mate[v] => {
                    let m = self.mate[v];
                    self.remove(g, v);
                    self.remove(g, m);
                    log.push(LogAction::ForcedEdge(Edge::new(v, m)), Rule::Propagation);
                }
                _ => {}
            }
        }
        self.propagate(g)
    }

    /// Edge Reduction: `uv` joins the matching, its neighbours turn white and
    /// both endpoints leave the working graph.
    pub fn edge_reduction(
        &mut self,
        g: &Graph,
        log: &mut ReductionLog,
        uv: Edge,
        rule: Rule,
    ) -> Result<(), Contradiction> {
        self.set_mate(g, uv.u(), uv.v())?;
        self.propagate(g)?;
        self.remove(g, uv.u());
        self.remove(g, uv.v());
        log.push(LogAction::ForcedEdge(uv), rule);
        self.propagate(g)
    }

    /// Vertex Reduction: `v` is white, its neighbours turn black and `v`
    /// leaves the working graph.
    pub fn vertex_reduction(
        &mut self,
        g: &Graph,
        log: &mut ReductionLog,
        v: Vertex,
        rule: Rule,
    ) -> Result<(), Contradiction> {
        self.assign(g, v, Color::White)?;
        self.propagate(g)?;
        self.remove(g, v);
        log.push(LogAction::WhiteForced(v), rule);
        self.propagate(g)
    }

    /// Alive vertices, in id order.
    pub fn alive_vertices(&self) -> Vec<Vertex> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }
}

/// Which rule produced a log entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    DiamondMidEdge,
    ButterflyPeripheral,
    /// Forcing-rule consequences discharged by [`ColoringState::settle`].
    Propagation,
    /// An edge inside the second distance level.
    SecondLevelEdge,
    /// A third-level vertex seeing two second-level vertices.
    SharedThirdLevel,
    /// A block vertex with two neighbours in another block.
    TwoNeighborsInBlock,
    /// A triangle with one vertex in the third level and two in the fourth.
    ThirdFourthTriangle,
    /// An interchangeable in-vertex of a block, deleted as white.
    SurplusInVertex,
    /// Two edges between a pair of blocks whiten the rest of both blocks.
    TwoEdgesBetweenBlocks,
    /// A fourth-level vertex or fifth-level vertex whose color the level structure fixes.
    LevelStructure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogAction {
    ForcedEdge(Edge),
    RemovedVertex(Vertex),
    WhiteForced(Vertex),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub action: LogAction,
    pub rule: Rule,
}

/// Forced matching edges and removed vertices, with the rule that fired.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLog {
    entries: Vec<LogEntry>,
}

impl ReductionLog {
    pub fn push(&mut self, action: LogAction, rule: Rule) {
        self.entries.push(LogEntry { action, rule });
    }

    pub fn entries(&self) -> &[LogEntry] {
        &self.entries
    }

    pub fn forced_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.entries.iter().filter_map(|e| match e.action {
            LogAction::ForcedEdge(edge) => Some(edge),
            _ => None,
        })
    }

    pub fn removed_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .entries
            .iter()
            .flat_map(|e| match e.action {
                LogAction::ForcedEdge(edge) => vec![edge.u(), edge.v()],
                LogAction::RemovedVertex(v) | LogAction::WhiteForced(v) => vec![v],
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Why the instance has no d.i.m. at all.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NoDim {
    #[error("K4 found")]
    K4Found(PatternWitness),
    #[error("contradiction: {0}")]
    Contradiction(#[from] Contradiction),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PreprocessOptions {
    /// Exclude every edge lying on an induced C4.
    pub c4_exclusions: bool,
}

/// A residual instance: the masked working graph with its partial coloring.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    pub state: ColoringState,
    pub log: ReductionLog,
}

/// Rejects graphs containing a K4 and reduces every diamond mid-edge and
/// every butterfly's peripheral edges until the working graph is free of
/// both.
pub fn preprocess(g: &Graph) -> Result<Preprocessed, NoDim> {
    preprocess_with(g, PreprocessOptions::default())
}

pub fn preprocess_with(g: &Graph, opts: PreprocessOptions) -> Result<Preprocessed, NoDim> {
    if let Some(w) = find_induced(g, PatternKind::K4) {
        return Err(NoDim::K4Found(w));
    }
    let mut state = ColoringState::new(g);
    let mut log = ReductionLog::default();
    state.enqueue_all();
    state.settle(g, &mut log)?;
    loop {
        let alive = state.alive_vertices();
        let (sub, map) = g.induced_subgraph(&alive);
        if let Some(w) = find_induced(&sub, PatternKind::Diamond) {
            let mid = Edge::new(map[w.vertices[3]], map[w.vertices[1]]);
            state.edge_reduction(g, &mut log, mid, Rule::DiamondMidEdge)?;
        } else if let Some(w) = find_induced(&sub, PatternKind::Butterfly) {
            for (a, b) in [(0, 1), (2, 3)] {
                let e = Edge::new(map[w.vertices[a]], map[w.vertices[b]]);
                state.edge_reduction(g, &mut log, e, Rule::ButterflyPeripheral)?;
            }
        } else {
            break;
        }
        state.settle(g, &mut log)?;
    }
    if opts.c4_exclusions {
        for id in c4_edges(g, state.alive_mask()) {
            state.exclude(g, id);
        }
        state.settle(g, &mut log)?;
    }
    Ok(Preprocessed { state, log })
}

/// Ids of edges lying on an induced C4 among the alive vertices.
fn c4_edges(g: &Graph, alive: &[bool]) -> Vec<EdgeId> {
    let mut on_c4 = vec![false; g.m()];
    for e in g.edges() {
        let (a, b) = (e.u(), e.v());
        if !alive[a] || !alive[b] {
            continue;
        }
        for &c in g.neighbors(b) {
            if c == a || !alive[c] || g.has_edge(a, c) {
                continue;
            }
            for &d in g.neighbors(c) {
                if d != b && alive[d] && g.has_edge(d, a) && !g.has_edge(d, b) {
                    for (p, q) in [(a, b), (b, c), (c, d), (d, a)] {
                        on_c4[g.edge_id(p, q).expect("cycle edge")] = true;
                    }
                }
            }
        }
    }
    (0..g.m()).filter(|&id| on_c4[id]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::make_named;

    fn path(n: usize) -> Graph {
        make_named(PatternKind::Path(n)).unwrap()
    }

    #[test]
    fn two_whites_on_an_edge_contradict() {
        let g = path(2);
        let mut s = ColoringState::new(&g);
        s.assign(&g, 0, Color::White).unwrap();
        s.assign(&g, 1, Color::White).unwrap();
        assert!(matches!(s.propagate(&g), Err(Contradiction::AdjacentWhites(_))));
        assert!(s.contradiction().is_some());
    }

    #[test]
    fn lone_black_vertex_has_no_mate() {
        let g = Graph::empty(1);
        let mut s = ColoringState::new(&g);
        s.assign(&g, 0, Color::Black).unwrap();
        assert_eq!(s.propagate(&g), Err(Contradiction::NoMateCandidate(0)));
    }

    #[test]
    fn white_forces_black_neighbors() {
        let g = make_named(PatternKind::Claw).unwrap();
        let mut s = ColoringState::new(&g);
        s.assign(&g, 1, Color::White).unwrap();
        // the center turns black; the other leaves stay open until more is known
        let _ = s.propagate(&g);
        assert_eq!(s.color(0), Color::Black);
    }

    #[test]
    fn p3_black_pair_whitens_the_rest() {
        let g = path(3);
        let mut s = ColoringState::new(&g);
        s.assign(&g, 0, Color::Black).unwrap();
        s.assign(&g, 1, Color::Black).unwrap();
        s.propagate(&g).unwrap();
        assert_eq!(s.color(2), Color::White);
        assert_eq!(s.mate(0), Some(1));
        assert_eq!(s.mate(1), Some(0));
    }

    #[test]
    fn excluded_edge_propagates_like_r4() {
        // P5 a-b-c-d-e with bc excluded: b black => c white => d black => de
        let g = path(5);
        let mut s = ColoringState::new(&g);
        s.exclude(&g, g.edge_id(1, 2).unwrap());
        s.assign(&g, 1, Color::Black).unwrap();
        s.propagate(&g).unwrap();
        assert_eq!(s.color(2), Color::White);
        assert_eq!(s.color(3), Color::Black);
        assert_eq!(s.mate(0), Some(1));
        assert_eq!(s.mate(3), Some(4));
    }

    #[test]
    fn c4_with_all_edges_excluded_contradicts() {
        let g = make_named(PatternKind::Cycle(4)).unwrap();
        let mut s = ColoringState::new(&g);
        for id in 0..g.m() {
            s.exclude(&g, id);
        }
        s.assign(&g, 0, Color::Black).unwrap();
        assert!(s.propagate(&g).is_err());
    }

    #[test]
    fn diamond_mid_edge_reduction() {
        let g = make_named(PatternKind::Diamond).unwrap();
        let mut s = ColoringState::new(&g);
        let mut log = ReductionLog::default();
        s.edge_reduction(&g, &mut log, Edge::new(1, 3), Rule::DiamondMidEdge).unwrap();
        assert_eq!(s.alive_vertices(), vec![0, 2]);
        assert_eq!((s.color(0), s.color(2)), (Color::White, Color::White));
        assert_eq!(log.forced_edges().collect::<Vec<_>>(), vec![Edge::new(1, 3)]);
        assert_eq!(s.certificate().edges(), &[Edge::new(1, 3)]);
    }

    #[test]
    fn butterfly_reduction_whitens_the_center() {
        let g = make_named(PatternKind::Butterfly).unwrap();
        let mut s = ColoringState::new(&g);
        let mut log = ReductionLog::default();
        s.edge_reduction(&g, &mut log, Edge::new(0, 1), Rule::ButterflyPeripheral).unwrap();
        s.edge_reduction(&g, &mut log, Edge::new(2, 3), Rule::ButterflyPeripheral).unwrap();
        assert_eq!(s.color(4), Color::White);
        assert!(s.alive_vertices().iter().all(|&v| s.color(v) != Color::Unknown));
    }

    #[test]
    fn p2_edge_reduction_empties_the_graph() {
        let g = path(2);
        let mut s = ColoringState::new(&g);
        let mut log = ReductionLog::default();
        s.edge_reduction(&g, &mut log, Edge::new(0, 1), Rule::Propagation).unwrap();
        assert!(s.alive_vertices().is_empty());
        assert_eq!(s.certificate().len(), 1);
    }

    #[test]
    fn vertex_reduction_examples() {
        let mut log = ReductionLog::default();
        let p3 = path(3);
        let mut s = ColoringState::new(&p3);
        assert!(s.vertex_reduction(&p3, &mut log, 1, Rule::Propagation).is_err());

        let lone = Graph::empty(1);
        let mut s = ColoringState::new(&lone);
        s.vertex_reduction(&lone, &mut log, 0, Rule::Propagation).unwrap();
        assert!(s.alive_vertices().is_empty());

        let claw = make_named(PatternKind::Claw).unwrap();
        let mut s = ColoringState::new(&claw);
        assert!(s.vertex_reduction(&claw, &mut log, 0, Rule::Propagation).is_err());
    }

    #[test]
    fn preprocess_examples() {
        let k4 = make_named(PatternKind::K4).unwrap();
        assert!(matches!(preprocess(&k4), Err(NoDim::K4Found(_))));

        let d = make_named(PatternKind::Diamond).unwrap();
        let p = preprocess(&d).unwrap();
        assert!(p.state.alive_vertices().is_empty());
        assert_eq!(p.state.certificate().edges(), &[Edge::new(1, 3)]);

        let c6 = make_named(PatternKind::Cycle(6)).unwrap();
        let p = preprocess(&c6).unwrap();
        assert_eq!(p.state.alive_vertices().len(), 6);
        assert!(p.log.entries().is_empty());
    }

    #[test]
    fn c4_exclusions_are_opt_in() {
        let c4 = make_named(PatternKind::Cycle(4)).unwrap();
        let p = preprocess_with(&c4, PreprocessOptions { c4_exclusions: true });
        // every edge excluded: no vertex can find a mate, so all turn white
        // and the first white pair contradicts
        assert!(p.is_err());
        assert!(preprocess(&c4).is_ok());
    }
}
