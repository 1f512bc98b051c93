//! The polynomial d.i.m. solver for S_{1,1,5}-free graphs.
//!
//! Per connected component: preprocess, then try each remaining edge `xy`
//! that lies on an induced P3 (single-edge answers are checked directly),
//! decompose into distance levels around `xy`, normalize, and finish with
//! one of three case solvers. Every branch point is exhaustive, so a found
//! matching is always correct and is verified before it is returned. Where
//! a structural consequence of S_{1,1,5}-freeness fails, the solver looks
//! for an induced S_{1,1,5}; if there is one the instance is outside the
//! supported class, otherwise an exact fallback takes over.

mod cases;
mod complete;
pub mod dp;
pub mod subsolver;

use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;

use crate::coloring::{preprocess_with, ColoringState, Contradiction, NoDim, PreprocessOptions, ReductionLog};
use crate::graph::{verify_dim, DimCertificate, Edge, Graph, Vertex};
use crate::levels::{decompose, normalize, structural_violations, NormalizeOptions};
use crate::patterns::{find_induced, PatternKind, PatternWitness};

pub use dp::{treewidth2_dim_dp, DpError};
pub use subsolver::constrained_subsolver;

/// Branch records kept verbatim; beyond this only the counters grow.
const MAX_BRANCH_RECORDS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Exclude edges on induced C4s during preprocessing.
    pub c4_exclusions: bool,
    /// Keep one in-vertex per block during normalization.
    pub prune_in_vertices: bool,
    /// Worker threads for trying candidate edges; 1 runs sequentially.
    pub jobs: usize,
    /// Run the third-level structural diagnostics and count violations.
    pub check_structure: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { c4_exclusions: true, prune_in_vertices: true, jobs: 1, check_structure: cfg!(debug_assertions) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoneReason {
    K4(PatternWitness),
    Preprocessing(Contradiction),
    /// Every candidate edge was ruled out.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Found(DimCertificate),
    None(NoneReason),
    /// A lemma that needs S_{1,1,5}-freeness failed and the graph does
    /// contain this induced S_{1,1,5}.
    HypothesisViolated(PatternWitness),
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub result: SolveResult,
    pub stats: SolveStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchKind {
    /// One private neighbour per anchor, at most four anchors.
    TupleEnumeration,
    /// A block isolated from everything else.
    TrivialBlock,
    /// Three blocks meeting in an induced P3.
    BlockP3,
    /// A cycle of blocks: two colorings.
    BlockCycle,
    /// A triangle beyond the third level: one of its three edges.
    FourthLevelTriangle,
    /// Generic exact branching over one block.
    BlockEnumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRecord {
    pub kind: BranchKind,
    pub alternatives: usize,
    pub explored: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseCounts {
    pub single_edge: usize,
    pub n4_empty: usize,
    pub n2_small: usize,
    pub n2_large: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseTimings {
    pub preprocess_us: u128,
    pub n4_empty_us: u128,
    pub n2_small_us: u128,
    pub n2_large_us: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub components: usize,
    pub candidates_tried: usize,
    pub normalize_failures: usize,
    pub cases: CaseCounts,
    pub branch_points: usize,
    pub branch_bound_violations: usize,
    pub branches: Vec<BranchRecord>,
    pub dp_runs: usize,
    pub subsolver_runs: usize,
    pub subsolver_nodes: u64,
    /// Lemma checks that failed on a graph without an induced S_{1,1,5}.
    pub lemma_fallbacks: usize,
    pub structural_violations: usize,
    pub timings: CaseTimings,
}

impl SolveStats {
    pub(crate) fn record(&mut self, kind: BranchKind, alternatives: usize, explored: usize, bound: usize) {
        self.branch_points += 1;
        if alternatives > bound || explored > alternatives {
            self.branch_bound_violations += 1;
        }
        if self.branches.len() < MAX_BRANCH_RECORDS {
            self.branches.push(BranchRecord { kind, alternatives, explored, bound });
        }
    }

    fn merge(&mut self, o: SolveStats) {
        self.components += o.components;
        self.candidates_tried += o.candidates_tried;
        self.normalize_failures += o.normalize_failures;
        self.cases.single_edge += o.cases.single_edge;
        self.cases.n4_empty += o.cases.n4_empty;
        self.cases.n2_small += o.cases.n2_small;
        self.cases.n2_large += o.cases.n2_large;
        self.branch_points += o.branch_points;
        self.branch_bound_violations += o.branch_bound_violations;
        let room = MAX_BRANCH_RECORDS.saturating_sub(self.branches.len());
        self.branches.extend(o.branches.into_iter().take(room));
        self.dp_runs += o.dp_runs;
        self.subsolver_runs += o.subsolver_runs;
        self.subsolver_nodes += o.subsolver_nodes;
        self.lemma_fallbacks += o.lemma_fallbacks;
        self.structural_violations += o.structural_violations;
        self.timings.preprocess_us += o.timings.preprocess_us;
        self.timings.n4_empty_us += o.timings.n4_empty_us;
        self.timings.n2_small_us += o.timings.n2_small_us;
        self.timings.n2_large_us += o.timings.n2_large_us;
    }
}

/// Shared, read-only context for one connected component.
pub(crate) struct Shared<'a> {
    pub g: &'a Graph,
    pub opts: SolverOptions,
    witness: OnceLock<Option<PatternWitness>>,
}

impl Shared<'_> {
    /// An induced S_{1,1,5} of the component, computed once on demand.
    pub fn s115_witness(&self) -> Option<&PatternWitness> {
        self.witness.get_or_init(|| find_induced(self.g, PatternKind::S115)).as_ref()
    }
}

/// Per-attempt mutable context.
pub(crate) struct Ctx<'a, 'b> {
    pub sh: &'b Shared<'a>,
    pub stats: SolveStats,
}

/// Result of trying one candidate edge.
pub(crate) enum XyOutcome {
    Found(ColoringState),
    NoDim,
    Violated(PatternWitness),
}

/// Solves with default options.
pub fn solve(g: &Graph) -> SolveOutcome {
    Solver::default().solve(g)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Solver {
    pub opts: SolverOptions,
}

impl Solver {
    pub fn new(opts: SolverOptions) -> Self {
        Solver { opts }
    }

    pub fn solve(&self, g: &Graph) -> SolveOutcome {
        self.solve_inner(g, None)
    }

    /// Looks for a d.i.m. containing `xy`.
    pub fn solve_with_xy(&self, g: &Graph, xy: Edge) -> SolveOutcome {
        self.solve_inner(g, Some(xy))
    }

    fn solve_inner(&self, g: &Graph, xy: Option<Edge>) -> SolveOutcome {
        let mut stats = SolveStats::default();
        if let Some(e) = xy {
            if e.v() >= g.n() || !g.has_edge(e.u(), e.v()) {
                return SolveOutcome { result: SolveResult::None(NoneReason::Exhausted), stats };
            }
        }
        let mut total = DimCertificate::default();
        for comp in g.connected_components() {
            if comp.len() == 1 {
                continue;
            }
            stats.components += 1;
            let (h, map) = g.induced_subgraph(&comp);
            let local_xy = xy.and_then(|e| {
                let a = comp.binary_search(&e.u()).ok()?;
                let b = comp.binary_search(&e.v()).ok()?;
                Some(Edge::new(a, b))
            });
            let (result, s) = self.solve_connected(&h, local_xy);
            stats.merge(s);
            match result {
                SolveResult::Found(m) => {
                    total = total.union(&m.mapped(&map)).expect("components are vertex-disjoint");
                }
                SolveResult::None(r) => return SolveOutcome { result: SolveResult::None(r), stats },
                SolveResult::HypothesisViolated(w) => {
                    let w = PatternWitness { kind: w.kind, vertices: w.vertices.iter().map(|&v| map[v]).collect() };
                    return SolveOutcome { result: SolveResult::HypothesisViolated(w), stats };
                }
            }
        }
        assert!(verify_dim(g, &total).is_ok(), "solver produced an invalid certificate");
        if let Some(e) = xy {
            assert!(total.edges().contains(&e));
        }
        SolveOutcome { result: SolveResult::Found(total), stats }
    }

    fn solve_connected(&self, h: &Graph, xy: Option<Edge>) -> (SolveResult, SolveStats) {
        let sh = Shared { g: h, opts: self.opts, witness: OnceLock::new() };
        let mut stats = SolveStats::default();
        let t0 = Instant::now();
        let pre = preprocess_with(h, PreprocessOptions { c4_exclusions: self.opts.c4_exclusions });
        stats.timings.preprocess_us += t0.elapsed().as_micros();
        let mut state = match pre {
            Ok(p) => p.state,
            Err(NoDim::K4Found(w)) => return (SolveResult::None(NoneReason::K4(w)), stats),
            Err(NoDim::Contradiction(c)) => return (SolveResult::None(NoneReason::Preprocessing(c)), stats),
        };
        if let Some(e) = xy {
            // preprocessing forcings hold in every d.i.m.
            if !state.is_alive(e.u()) || !state.is_alive(e.v()) {
                if state.mate(e.u()) != Some(e.v()) {
                    return (SolveResult::None(NoneReason::Exhausted), stats);
                }
            } else if state.is_excluded(h.edge_id(e.u(), e.v()).expect("edge of h")) {
                return (SolveResult::None(NoneReason::Exhausted), stats);
            }
        }
        for rc in h.components_within(state.alive_mask()) {
            if rc.iter().all(|&v| !state.is_open(v)) {
                continue;
            }
            let fixed = xy.filter(|e| rc.binary_search(&e.u()).is_ok());
            let mut ctx = Ctx { sh: &sh, stats: SolveStats::default() };
            let outcome = match fixed {
                Some(e) => {
                    ctx.stats.candidates_tried += 1;
                    attempt_xy(&mut ctx, &state, e)
                }
                None => self.solve_residual(&sh, &mut ctx, &state, &rc),
            };
            stats.merge(ctx.stats);
            match outcome {
                XyOutcome::Found(s) => state = s,
                XyOutcome::NoDim => return (SolveResult::None(NoneReason::Exhausted), stats),
                XyOutcome::Violated(w) => return (SolveResult::HypothesisViolated(w), stats),
            }
        }
        debug_assert!(state.alive_vertices().iter().all(|&v| !state.is_open(v)));
        (SolveResult::Found(state.certificate()), stats)
    }

    /// Finds a completion on one residual component.
    fn solve_residual(&self, sh: &Shared<'_>, ctx: &mut Ctx<'_, '_>, state: &ColoringState, rc: &[Vertex]) -> XyOutcome {
        let g = sh.g;
        if let Some(s) = single_edge(g, state, rc) {
            ctx.stats.cases.single_edge += 1;
            return XyOutcome::Found(s);
        }
        let candidates: Vec<Edge> = rc
            .iter()
            .flat_map(|&u| g.incident(u).filter(move |&(w, _)| u < w).map(move |(w, id)| (u, w, id)))
            .filter(|&(u, w, id)| {
                state.is_open(u)
                    && state.is_open(w)
                    && !state.is_excluded(id)
                    && g.edge_in_p3_within(Some(state.alive_mask()), Edge::new(u, w))
            })
            .map(|(u, w, _)| Edge::new(u, w))
            .collect();
        let mut violation = None;
        let jobs = self.opts.jobs.max(1);
        if jobs == 1 {
            for &xy in &candidates {
                ctx.stats.candidates_tried += 1;
                match attempt_xy(ctx, state, xy) {
                    XyOutcome::Found(s) => return XyOutcome::Found(s),
                    XyOutcome::NoDim => {}
                    XyOutcome::Violated(w) => violation = violation.or(Some(w)),
                }
            }
        } else {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
            for chunk in candidates.chunks(jobs * 4) {
                let results: Vec<(XyOutcome, SolveStats)> = pool.install(|| {
                    chunk
                        .par_iter()
                        .map(|&xy| {
                            let mut local = Ctx { sh, stats: SolveStats::default() };
                            local.stats.candidates_tried += 1;
                            let r = attempt_xy(&mut local, state, xy);
                            (r, local.stats)
                        })
                        .collect()
                });
                let mut found = None;
                for (r, s) in results {
                    ctx.stats.merge(s);
                    match r {
                        XyOutcome::Found(s) => found = found.or(Some(s)),
                        XyOutcome::NoDim => {}
                        XyOutcome::Violated(w) => violation = violation.or(Some(w)),
                    }
                }
                if let Some(s) = found {
                    return XyOutcome::Found(s);
                }
            }
        }
        match violation {
            Some(w) => XyOutcome::Violated(w),
            None => XyOutcome::NoDim,
        }
    }
}

/// A d.i.m. of the residual component consisting of a single edge.
fn single_edge(g: &Graph, state: &ColoringState, rc: &[Vertex]) -> Option<ColoringState> {
    let alive = |v: Vertex| state.is_alive(v);
    let deg = |v: Vertex| g.neighbors(v).iter().filter(|&&w| alive(w)).count();
    let m: usize = rc.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    for &u in rc {
        for (w, id) in g.incident(u) {
            if u > w || !alive(w) || state.is_excluded(id) || m + 1 > deg(u) + deg(w) {
                continue;
            }
            let mut s = state.clone();
            if s.set_mate(g, u, w).is_ok() && s.propagate(g).is_ok() && s.is_settled_on(rc) {
                return Some(s);
            }
        }
    }
    None
}

/// Decomposes around `xy`, normalizes and dispatches to a case solver.
pub(crate) fn attempt_xy(ctx: &mut Ctx<'_, '_>, state: &ColoringState, xy: Edge) -> XyOutcome {
    let g = ctx.sh.g;
    let mut s = state.clone();
    let mut log = ReductionLog::default();
    let Ok(mut d) = decompose(g, xy, &mut s) else {
        ctx.stats.normalize_failures += 1;
        return XyOutcome::NoDim;
    };
    let opts = NormalizeOptions { prune_in_vertices: ctx.sh.opts.prune_in_vertices };
    if normalize(g, &mut d, &mut s, &mut log, opts).is_err() {
        ctx.stats.normalize_failures += 1;
        return XyOutcome::NoDim;
    }
    if ctx.sh.opts.check_structure {
        let v = structural_violations(g, &d, &s);
        if !v.is_empty() {
            ctx.stats.structural_violations += 1;
            debug_assert!(ctx.sh.s115_witness().is_some(), "structural lemma failed on an S115-free graph: {v:?}");
        }
    }
    let scope = d.scope(&s);
    let t0 = Instant::now();
    let (out, slot): (XyOutcome, fn(&mut CaseTimings) -> &mut u128) = if d.b_set(&s).is_empty() {
        ctx.stats.cases.n4_empty += 1;
        (cases::solve_n4_empty(ctx, &d, s), |t| &mut t.n4_empty_us)
    } else if d.n2_initial <= 4 {
        ctx.stats.cases.n2_small += 1;
        (cases::solve_n2_small(ctx, &d, s), |t| &mut t.n2_small_us)
    } else {
        ctx.stats.cases.n2_large += 1;
        (cases::solve_n2_large(ctx, &d, s), |t| &mut t.n2_large_us)
    };
    *slot(&mut ctx.stats.timings) += t0.elapsed().as_micros();
    if let XyOutcome::Found(done) = &out {
        debug_assert!(done.is_settled_on(&scope));
        debug_assert_eq!(done.mate(xy.u()), Some(xy.v()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::make_named;

    fn found(g: &Graph) -> Option<DimCertificate> {
        match solve(g).result {
            SolveResult::Found(m) => Some(m),
            _ => None,
        }
    }

    #[test]
    fn named_examples() {
        let p4 = make_named(PatternKind::Path(4)).unwrap();
        assert_eq!(found(&p4).unwrap().edges(), &[Edge::new(1, 2)]);
        let c6 = make_named(PatternKind::Cycle(6)).unwrap();
        assert_eq!(found(&c6).unwrap().len(), 2);
        assert!(found(&make_named(PatternKind::Cycle(4)).unwrap()).is_none());
        assert_eq!(found(&make_named(PatternKind::Claw).unwrap()).unwrap().len(), 1);
        assert!(matches!(solve(&make_named(PatternKind::K4).unwrap()).result, SolveResult::None(NoneReason::K4(_))));
        assert_eq!(found(&Graph::empty(3)).unwrap().len(), 0);
    }

    #[test]
    fn fixed_edge() {
        let c6 = make_named(PatternKind::Cycle(6)).unwrap();
        let r = Solver::default().solve_with_xy(&c6, Edge::new(1, 2));
        let SolveResult::Found(m) = r.result else { panic!("C6 has a d.i.m. through every edge") };
        assert!(m.edges().contains(&Edge::new(1, 2)));
        let p4 = make_named(PatternKind::Path(4)).unwrap();
        let r = Solver::default().solve_with_xy(&p4, Edge::new(0, 1));
        assert!(matches!(r.result, SolveResult::None(_)));
    }

    #[test]
    fn parallel_matches_sequential() {
        for seed in 0..20 {
            let g = crate::patterns::random_s115_free(14, 0.2, seed);
            let a = found(&g).is_some();
            let b = Solver::new(SolverOptions { jobs: 3, ..SolverOptions::default() }).solve(&g);
            assert_eq!(a, matches!(b.result, SolveResult::Found(_)), "seed {seed}");
        }
    }
}
