//! Distance levels around a candidate matching edge `xy` and their
//! normalization.
//!
//! With `x, y` black and mated, the first level is white, the second is
//! black, and every second-level vertex that is isolated in its level (an
//! *anchor* `u_i`) must find its mate among its private third-level
//! neighbours `T_i`. Anchor plus private neighbours form a *block*. Edges
//! inside the third level and between the third and fourth level can never
//! join two mates, so they are installed as exclusions and the generic
//! propagation rules take care of the rest.
//!
//! Level labels are fixed when the decomposition is built; later reductions
//! only mask vertices.

use thiserror::Error;

use crate::coloring::{Color, ColoringState, Contradiction, ReductionLog, Rule};
use crate::graph::{Edge, Graph, Vertex};

const UNREACHED: usize = usize::MAX;
const NO_BLOCK: usize = usize::MAX;

/// An anchor `u_i` of the second level and its alive private neighbours `T_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub anchor: Vertex,
    pub members: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct LevelDecomposition {
    pub xy: Edge,
    /// Levels as computed at decomposition time; vertices may since have been removed.
    pub levels: Vec<Vec<Vertex>>,
    level_of: Vec<usize>,
    /// Size of the second level before any reduction.
    pub n2_initial: usize,
    /// Alive edges inside the second level.
    pub m2: Vec<Edge>,
    /// Alive second-level vertices without an alive second-level neighbour.
    pub s2: Vec<Vertex>,
    /// Alive third-level vertices seeing at least two alive second-level vertices.
    pub s3: Vec<Vertex>,
    pub blocks: Vec<Block>,
    block_of: Vec<usize>,
    /// Alive fourth-level neighbours of each block.
    pub ext: Vec<Vec<Vertex>>,
    /// Block members all of whose alive neighbours lie in their own block.
    pub in_vertices: Vec<Vec<Vertex>>,
    pub out_vertices: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LevelError {
    #[error("{0} is not an edge of the working graph")]
    NotAnAliveEdge(Edge),
    #[error(transparent)]
    Contradiction(#[from] Contradiction),
}

/// Reasons why no d.i.m. contains the candidate edge.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NormalizeFailure {
    #[error(transparent)]
    Contradiction(#[from] Contradiction),
    #[error("anchor {anchor} has no private third-level neighbour")]
    EmptyBlock { anchor: Vertex },
    #[error("three edges between the blocks of anchors {first} and {second}")]
    ThreeEdgesBetweenBlocks { first: Vertex, second: Vertex },
    #[error("the third level contains an odd cycle")]
    OddCycleInThirdLevel,
}

impl LevelDecomposition {
    pub fn level(&self, v: Vertex) -> Option<usize> {
        (self.level_of[v] != UNREACHED).then_some(self.level_of[v])
    }

    pub fn block_of(&self, v: Vertex) -> Option<usize> {
        (self.block_of[v] != NO_BLOCK).then_some(self.block_of[v])
    }

    /// Alive vertices of level `i`.
    pub fn alive_level(&self, state: &ColoringState, i: usize) -> Vec<Vertex> {
        self.levels.get(i).map_or_else(Vec::new, |l| l.iter().copied().filter(|&v| state.is_alive(v)).collect())
    }

    /// Alive vertices of every level `>= i`.
    pub fn alive_from_level(&self, state: &ColoringState, i: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> =
            self.levels.iter().skip(i).flatten().copied().filter(|&v| state.is_alive(v)).collect();
        out.sort_unstable();
        out
    }

    /// Every alive vertex reached from `xy`.
    pub fn scope(&self, state: &ColoringState) -> Vec<Vertex> {
        self.alive_from_level(state, 0)
    }

    /// `{x, y}` and the first three levels.
    pub fn a_set(&self, state: &ColoringState) -> Vec<Vertex> {
        let mut out: Vec<Vertex> =
            self.levels.iter().take(4).flatten().copied().filter(|&v| state.is_alive(v)).collect();
        out.sort_unstable();
        out
    }

    /// Everything beyond the third level.
    pub fn b_set(&self, state: &ColoringState) -> Vec<Vertex> {
        self.alive_from_level(state, 4)
    }

    /// Recomputes the block structure from the alive vertices.
    pub fn refresh(&mut self, g: &Graph, state: &ColoringState) {
        let n2 = self.alive_level(state, 2);
        let n3 = self.alive_level(state, 3);
        let at = |v: Vertex, i: usize| state.is_alive(v) && self.level_of[v] == i;

        self.m2 = Vec::new();
        self.s2 = Vec::new();
        for &u in &n2 {
            let mut isolated = true;
            for &w in g.neighbors(u) {
                if at(w, 2) {
                    isolated = false;
                    if u < w {
                        self.m2.push(Edge::new(u, w));
                    }
                }
            }
            if isolated {
                self.s2.push(u);
            }
        }

        self.block_of.iter_mut().for_each(|b| *b = NO_BLOCK);
        self.blocks = self.s2.iter().map(|&u| Block { anchor: u, members: Vec::new() }).collect();
        for (i, b) in self.blocks.iter().enumerate() {
            self.block_of[b.anchor] = i;
        }
        self.s3 = Vec::new();
        for &t in &n3 {
            let seen: Vec<Vertex> = g.neighbors(t).iter().copied().filter(|&w| at(w, 2)).collect();
            if seen.len() >= 2 {
                self.s3.push(t);
            } else if let [u] = seen[..] {
                if let Some(i) = self.block_of(u) {
                    self.blocks[i].members.push(t);
                    self.block_of[t] = i;
                }
            }
        }

        self.ext = Vec::with_capacity(self.blocks.len());
        self.in_vertices = Vec::with_capacity(self.blocks.len());
        self.out_vertices = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let mut ext: Vec<Vertex> = b
                .members
                .iter()
                .flat_map(|&t| g.neighbors(t).iter().copied())
                .filter(|&w| at(w, 4))
                .collect();
            ext.sort_unstable();
            ext.dedup();
            self.ext.push(ext);
            let (ins, outs): (Vec<Vertex>, Vec<Vertex>) = b.members.iter().partition(|&&t| {
                g.neighbors(t).iter().all(|&w| !state.is_alive(w) || w == b.anchor || self.block_of[w] == i)
            });
            self.in_vertices.push(ins);
            self.out_vertices.push(outs);
        }
    }

    /// Number of alive edges between the members of two blocks, with the edges.
    pub fn edges_between(&self, g: &Graph, i: usize, j: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        for &t in &self.blocks[i].members {
            for &w in g.neighbors(t) {
                if self.block_of[w] == j {
                    out.push(Edge::new(t, w));
                }
            }
        }
        out
    }
}

/// Commits `xy` to the matching, computes its distance levels in the working
/// graph, whitens the first level, blackens the second and installs the
/// third-level exclusions.
pub fn decompose(g: &Graph, xy: Edge, state: &mut ColoringState) -> Result<LevelDecomposition, LevelError> {
    let (x, y) = (xy.u(), xy.v());
    if y >= g.n() || !g.has_edge(x, y) || !state.is_alive(x) || !state.is_alive(y) {
        return Err(LevelError::NotAnAliveEdge(xy));
    }
    state.set_mate(g, x, y)?;
    state.propagate(g)?;
    let levels = g.levels_within(state.alive_mask(), xy);
    let mut level_of = vec![UNREACHED; g.n()];
    for (i, level) in levels.iter().enumerate() {
        for &v in level {
            level_of[v] = i;
        }
    }
    for (i, color) in [(1, Color::White), (2, Color::Black)] {
        for &v in levels.get(i).into_iter().flatten() {
            state.assign(g, v, color)?;
        }
    }
    for &t in levels.get(3).into_iter().flatten() {
        for (w, id) in g.incident(t) {
            if level_of[w] == 3 || level_of[w] == 4 {
                state.exclude(g, id);
            }
        }
    }
    state.propagate(g)?;
    let mut d = LevelDecomposition {
        xy,
        n2_initial: levels.get(2).map_or(0, Vec::len),
        levels,
        level_of,
        m2: Vec::new(),
        s2: Vec::new(),
        s3: Vec::new(),
        blocks: Vec::new(),
        block_of: vec![NO_BLOCK; g.n()],
        ext: Vec::new(),
        in_vertices: Vec::new(),
        out_vertices: Vec::new(),
    };
    d.refresh(g, state);
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Delete all but one in-vertex per block. Existence-preserving but not
    /// a forcing: some d.i.m. may use a deleted vertex.
    pub prune_in_vertices: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { prune_in_vertices: true }
    }
}

/// How often each normalization rule fired.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    pub m2_reductions: usize,
    pub s3_reductions: usize,
    pub forced_by_two_neighbors: usize,
    pub singleton_blocks: usize,
    pub triangle_reductions: usize,
    pub pruned_in_vertices: usize,
    pub two_edge_whitenings: usize,
}

/// Applies the level reductions to a fixpoint. Rules are tried in a fixed
/// order and the loop restarts after every application, since each
/// reduction can re-enable an earlier rule.
pub fn normalize(
    g: &Graph,
    d: &mut LevelDecomposition,
    state: &mut ColoringState,
    log: &mut ReductionLog,
    opts: NormalizeOptions,
) -> Result<NormalizeReport, NormalizeFailure> {
    let mut report = NormalizeReport::default();
    state.settle(g, log)?;
    d.refresh(g, state);
    while apply_one(g, d, state, log, opts, &mut report)? {
        state.settle(g, log)?;
        d.refresh(g, state);
    }
    if !third_level_bipartite(g, d, state) {
        return Err(NormalizeFailure::OddCycleInThirdLevel);
    }
    debug_assert!(d.s3.is_empty());
    Ok(report)
}

fn apply_one(
    g: &Graph,
    d: &LevelDecomposition,
    state: &mut ColoringState,
    log: &mut ReductionLog,
    opts: NormalizeOptions,
    report: &mut NormalizeReport,
) -> Result<bool, NormalizeFailure> {
    if let Some(&e) = d.m2.first() {
        state.edge_reduction(g, log, e, Rule::SecondLevelEdge)?;
        report.m2_reductions += 1;
        return Ok(true);
    }
    if let Some(&v) = d.s3.first() {
        state.vertex_reduction(g, log, v, Rule::SharedThirdLevel)?;
        report.s3_reductions += 1;
        return Ok(true);
    }
    for (i, b) in d.blocks.iter().enumerate() {
        for &t in &b.members {
            let mut per_block = std::collections::HashMap::new();
            for &w in g.neighbors(t) {
                if let Some(j) = d.block_of(w) {
                    if j != i && state.is_alive(w) && d.blocks[j].anchor != w {
                        *per_block.entry(j).or_insert(0usize) += 1;
                    }
                }
            }
            if per_block.values().any(|&c| c >= 2) {
                state.edge_reduction(g, log, Edge::new(b.anchor, t), Rule::TwoNeighborsInBlock)?;
                report.forced_by_two_neighbors += 1;
                return Ok(true);
            }
        }
    }
    for b in &d.blocks {
        match b.members[..] {
            [] => return Err(NormalizeFailure::EmptyBlock { anchor: b.anchor }),
            [t] => {
                state.edge_reduction(g, log, Edge::new(b.anchor, t), Rule::TwoNeighborsInBlock)?;
                report.singleton_blocks += 1;
                return Ok(true);
            }
            _ => {}
        }
    }
    for a in d.alive_level(state, 3) {
        let fourth: Vec<Vertex> =
            g.neighbors(a).iter().copied().filter(|&w| state.is_alive(w) && d.level(w) == Some(4)).collect();
        for (k, &b) in fourth.iter().enumerate() {
            if let Some(&c) = fourth[k + 1..].iter().find(|&&c| g.has_edge(b, c)) {
                state.edge_reduction(g, log, Edge::new(b, c), Rule::ThirdFourthTriangle)?;
                report.triangle_reductions += 1;
                return Ok(true);
            }
        }
    }
    if opts.prune_in_vertices {
        for (i, ins) in d.in_vertices.iter().enumerate() {
            if ins.len() < 2 || d.blocks[i].members.iter().any(|&t| state.color(t) != Color::Unknown) {
                continue;
            }
            let in_block = |t: Vertex, w: Vertex| w != t && d.block_of(w) == Some(i) && w != d.blocks[i].anchor;
            let keep = ins
                .iter()
                .copied()
                .find(|&t| g.neighbors(t).iter().any(|&w| state.is_alive(w) && in_block(t, w)))
                .unwrap_or(ins[0]);
            for &t in ins.iter().filter(|&&t| t != keep) {
                state.vertex_reduction(g, log, t, Rule::SurplusInVertex)?;
                report.pruned_in_vertices += 1;
            }
            return Ok(true);
        }
    }
    for i in 0..d.blocks.len() {
        for j in i + 1..d.blocks.len() {
            let between = d.edges_between(g, i, j);
            if between.len() >= 3 {
                return Err(NormalizeFailure::ThreeEdgesBetweenBlocks {
                    first: d.blocks[i].anchor,
                    second: d.blocks[j].anchor,
                });
            }
            if between.len() == 2 {
                let ends: Vec<Vertex> = between.iter().flat_map(|e| [e.u(), e.v()]).collect();
                let others: Vec<Vertex> = d.blocks[i]
                    .members
                    .iter()
                    .chain(&d.blocks[j].members)
                    .copied()
                    .filter(|t| !ends.contains(t) && state.color(*t) == Color::Unknown)
                    .collect();
                if !others.is_empty() {
                    for t in others {
                        state.vertex_reduction(g, log, t, Rule::TwoEdgesBetweenBlocks)?;
                    }
                    report.two_edge_whitenings += 1;
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn third_level_bipartite(g: &Graph, d: &LevelDecomposition, state: &ColoringState) -> bool {
    let n3 = d.alive_level(state, 3);
    let mut side = vec![u8::MAX; g.n()];
    for &s in &n3 {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !state.is_alive(w) || d.level(w) != Some(3) {
                    continue;
                }
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Structural facts that hold whenever the host graph is S_{1,1,5}-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralViolation {
    /// A claw inside the third level whose center and two leaves avoid the
    /// block of the third leaf.
    CrossBlockClaw([Vertex; 4]),
    /// An induced path on five third-level vertices from five distinct blocks.
    FiveBlockPath([Vertex; 5]),
}

/// Checks the third-level consequences of S_{1,1,5}-freeness. Violations on
/// arbitrary inputs are diagnostics only.
pub fn structural_violations(g: &Graph, d: &LevelDecomposition, state: &ColoringState) -> Vec<StructuralViolation> {
    let mut out = Vec::new();
    let n3: Vec<Vertex> = d.alive_level(state, 3).into_iter().filter(|&v| d.block_of(v).is_some()).collect();
    let in3 = |v: Vertex| state.is_alive(v) && d.level(v) == Some(3) && d.block_of(v).is_some();
    for &a in &n3 {
        let nb: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&w| in3(w)).collect();
        for (i, &b) in nb.iter().enumerate() {
            for (j, &c) in nb.iter().enumerate().skip(i + 1) {
                for &dd in nb.iter().skip(j + 1) {
                    let leaves = [b, c, dd];
                    if g.has_edge(b, c) || g.has_edge(b, dd) || g.has_edge(c, dd) {
                        continue;
                    }
                    for (k, &leaf) in leaves.iter().enumerate() {
                        let blk = d.block_of(leaf);
                        let others = leaves.iter().enumerate().filter(|&(q, _)| q != k).map(|(_, &v)| v);
                        if d.block_of(a) != blk && others.clone().all(|v| d.block_of(v) != blk) {
                            let o: Vec<Vertex> = others.collect();
                            out.push(StructuralViolation::CrossBlockClaw([a, o[0], o[1], leaf]));
                        }
                    }
                }
            }
        }
    }
    // induced P5 through five distinct blocks
    let mut path = Vec::with_capacity(5);
    for &s in &n3 {
        path.clear();
        path.push(s);
        five_block_paths(g, d, &in3, &mut path, &mut out);
    }
    out
}

fn five_block_paths(
    g: &Graph,
    d: &LevelDecomposition,
    in3: &dyn Fn(Vertex) -> bool,
    path: &mut Vec<Vertex>,
    out: &mut Vec<StructuralViolation>,
) {
    if path.len() == 5 {
        if path[0] < path[4] {
            out.push(StructuralViolation::FiveBlockPath([path[0], path[1], path[2], path[3], path[4]]));
        }
        return;
    }
    let last = *path.last().expect("nonempty");
    for &w in g.neighbors(last) {
        if !in3(w) || path.iter().any(|&p| d.block_of(p) == d.block_of(w)) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        path.push(w);
        five_block_paths(g, d, in3, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{make_named, PatternKind};

    fn path(n: usize) -> Graph {
        make_named(PatternKind::Path(n)).unwrap()
    }

    #[test]
    fn p6_decomposition() {
        // a..f = 0..5, xy = bc
        let g = path(6);
        let mut s = ColoringState::new(&g);
        let d = decompose(&g, Edge::new(1, 2), &mut s).unwrap();
        assert_eq!(d.s2, vec![4]);
        assert_eq!(d.blocks, vec![Block { anchor: 4, members: vec![5] }]);
        assert!(d.m2.is_empty());
        assert!(d.b_set(&s).is_empty());
    }

    #[test]
    fn p5_decomposition() {
        let g = path(5);
        let mut s = ColoringState::new(&g);
        let d = decompose(&g, Edge::new(0, 1), &mut s).unwrap();
        assert_eq!(d.alive_level(&s, 1), vec![2]);
        assert_eq!(d.s2, vec![3]);
        assert_eq!(d.blocks[0].members, vec![4]);
    }

    #[test]
    fn c6_second_level_is_an_edge() {
        let g = make_named(PatternKind::Cycle(6)).unwrap();
        let mut s = ColoringState::new(&g);
        let d = decompose(&g, Edge::new(0, 1), &mut s).unwrap();
        assert_eq!(d.m2, vec![Edge::new(3, 4)]);
        assert!(d.s2.is_empty());
    }

    #[test]
    fn singleton_blocks_are_forced() {
        let g = path(6);
        let mut s = ColoringState::new(&g);
        let mut log = ReductionLog::default();
        let mut d = decompose(&g, Edge::new(1, 2), &mut s).unwrap();
        normalize(&g, &mut d, &mut s, &mut log, NormalizeOptions::default()).unwrap();
        assert_eq!(s.certificate().edges(), &[Edge::new(1, 2), Edge::new(4, 5)]);

        let g = path(5);
        let mut s = ColoringState::new(&g);
        let mut d = decompose(&g, Edge::new(0, 1), &mut s).unwrap();
        normalize(&g, &mut d, &mut s, &mut log, NormalizeOptions::default()).unwrap();
        assert_eq!(s.certificate().edges(), &[Edge::new(0, 1), Edge::new(3, 4)]);
    }

    #[test]
    fn empty_block_fails() {
        // x=0, y=1, r=2 with 2-3 and 3 an anchor with no third-level neighbour
        let g = Graph::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let mut s = ColoringState::new(&g);
        let mut log = ReductionLog::default();
        match decompose(&g, Edge::new(0, 1), &mut s) {
            Err(LevelError::Contradiction(_)) => {}
            Ok(mut d) => {
                let r = normalize(&g, &mut d, &mut s, &mut log, NormalizeOptions::default());
                assert!(r.is_err());
            }
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn empty_block_is_reported_by_the_rule() {
        // Build the state by hand so propagation has not yet caught the anchor.
        let g = Graph::new(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let mut s = ColoringState::new(&g);
        let mut d = LevelDecomposition {
            xy: Edge::new(0, 1),
            levels: vec![vec![0, 1], vec![2], vec![3]],
            level_of: vec![0, 0, 1, 2],
            n2_initial: 1,
            m2: vec![],
            s2: vec![],
            s3: vec![],
            blocks: vec![],
            block_of: vec![NO_BLOCK; 4],
            ext: vec![],
            in_vertices: vec![],
            out_vertices: vec![],
        };
        d.refresh(&g, &s);
        let mut log = ReductionLog::default();
        let r = apply_one(&g, &d, &mut s, &mut log, NormalizeOptions::default(), &mut NormalizeReport::default());
        assert_eq!(r, Err(NormalizeFailure::EmptyBlock { anchor: 3 }));
    }

    #[test]
    fn non_edge_is_rejected() {
        let g = path(3);
        let mut s = ColoringState::new(&g);
        assert!(matches!(decompose(&g, Edge::new(0, 2), &mut s), Err(LevelError::NotAnAliveEdge(_))));
    }
}
