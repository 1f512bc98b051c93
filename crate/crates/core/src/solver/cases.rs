//! The three case solvers, chosen by whether anything survives beyond the
//! third level and by the size of the second level.

use crate::coloring::{Color, ColoringState, ReductionLog, Rule};
use crate::graph::{Edge, Graph, Vertex};
use crate::levels::LevelDecomposition;

use super::complete::complete;
use super::subsolver::constrained_subsolver;
use super::{BranchKind, Ctx, XyOutcome};

fn wrap(r: Option<ColoringState>) -> XyOutcome {
    match r {
        Some(s) => XyOutcome::Found(s),
        None => XyOutcome::NoDim,
    }
}

/// Nothing beyond the third level: only blocks remain.
pub(crate) fn solve_n4_empty(ctx: &mut Ctx<'_, '_>, d: &LevelDecomposition, s: ColoringState) -> XyOutcome {
    let scope = d.scope(&s);
    wrap(complete(ctx, d, s, &scope))
}

/// At most four second-level vertices: fix one private neighbour per anchor,
/// then the remainder is an exact subproblem.
pub(crate) fn solve_n2_small(ctx: &mut Ctx<'_, '_>, d: &LevelDecomposition, s: ColoringState) -> XyOutcome {
    let g = ctx.sh.g;
    let scope = d.scope(&s);
    let blocks: Vec<(Vertex, Vec<Vertex>)> = d
        .blocks
        .iter()
        .filter(|b| s.black_unmated(b.anchor))
        .map(|b| (b.anchor, b.members.iter().copied().filter(|&t| s.color(t) == Color::Unknown).collect()))
        .collect();
    assert!(blocks.len() <= 4, "at most four anchors in this case");
    let bound: usize = blocks.iter().map(|b| b.1.len()).product();
    let mut idx = vec![0usize; blocks.len()];
    let mut explored = 0;
    let mut result = None;
    if blocks.iter().all(|b| !b.1.is_empty()) {
        loop {
            explored += 1;
            let mut t = s.clone();
            let ok = blocks.iter().zip(&idx).all(|(b, &i)| t.set_mate(g, b.0, b.1[i]).is_ok()) && t.propagate(g).is_ok();
            if ok {
                ctx.stats.subsolver_runs += 1;
                if let Some(done) = constrained_subsolver(g, &t, &scope, &mut ctx.stats.subsolver_nodes) {
                    result = Some(done);
                    break;
                }
            }
            // odometer
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < blocks[pos].1.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    ctx.stats.record(BranchKind::TupleEnumeration, bound, explored, bound);
    wrap(result)
}

/// Five or more second-level vertices.
pub(crate) fn solve_n2_large(ctx: &mut Ctx<'_, '_>, d: &LevelDecomposition, s: ColoringState) -> XyOutcome {
    let g = ctx.sh.g;
    let scope = d.scope(&s);
    if !d.alive_from_level(&s, 6).is_empty() {
        return lemma_failed(ctx, d, s, &scope);
    }
    let mut s = s;
    let mut log = ReductionLog::default();
    let n5_present = !d.alive_level(&s, 5).is_empty();
    let mut used_class_rule = false;

    let level = |v: Vertex| d.level(v).unwrap_or(usize::MAX);
    let open_deep = |s: &ColoringState, v: Vertex| s.is_open(v) && level(v) >= 4;
    loop {
        let mut changed = false;
        let deep: Vec<Vertex> = d.b_set(&s).into_iter().filter(|&v| s.is_open(v)).collect();
        for &v in &deep {
            if !s.is_open(v) {
                continue;
            }
            let nb: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| open_deep(&s, w)).collect();
            let step = if level(v) == 4 && nb.len() == 1 && level(nb[0]) == 4 {
                // an isolated edge beyond the third level: both ends black
                let w = nb[0];
                let w_nb = g.neighbors(w).iter().filter(|&&x| open_deep(&s, x)).count();
                if w_nb == 1 {
                    Some(s.edge_reduction(g, &mut log, Edge::new(v, w), Rule::LevelStructure))
                } else {
                    None
                }
            } else if level(v) == 5 && n5_present && nb.iter().all(|&w| level(w) == 4) && has_nonadjacent_pair(g, &nb) {
                used_class_rule = true;
                Some(s.vertex_reduction(g, &mut log, v, Rule::LevelStructure))
            } else {
                None
            };
            match step {
                Some(Ok(())) => changed = true,
                Some(Err(_)) => return failed_after_class_rule(ctx, used_class_rule),
                None => {}
            }
        }
        if !changed {
            break;
        }
    }
    if s.propagate(g).is_err() {
        return failed_after_class_rule(ctx, used_class_rule);
    }

    // classify what is left beyond the third level
    let deep: Vec<Vertex> = d.b_set(&s).into_iter().filter(|&v| s.is_open(v)).collect();
    let mut triangles: Vec<[Vertex; 3]> = Vec::new();
    for comp in split(g, &deep) {
        let has5 = comp.iter().any(|&v| level(v) == 5);
        let edges = comp.iter().map(|&v| g.neighbors(v).iter().filter(|w| comp.contains(w)).count()).sum::<usize>() / 2;
        let ok = match (comp.len(), edges) {
            (1, _) | (2, 1) => true,
            (3, 3) => {
                if !has5 {
                    triangles.push([comp[0], comp[1], comp[2]]);
                }
                true
            }
            _ => false,
        };
        if !ok {
            return lemma_failed(ctx, d, s, &scope);
        }
    }
    let bearing: Vec<usize> = (0..d.blocks.len())
        .filter(|&i| {
            let ext = block_ext(g, d, &s, i);
            triangles.iter().any(|tri| tri.iter().all(|v| ext.contains(v)))
        })
        .collect();
    if bearing.len() > 1 {
        return lemma_failed(ctx, d, s, &scope);
    }

    // one of three edges per triangle
    let mut choice = vec![0usize; triangles.len()];
    let mut result = None;
    let mut explored = vec![0usize; triangles.len()];
    'outer: loop {
        let mut t = s.clone();
        let mut ok = true;
        for (k, tri) in triangles.iter().enumerate() {
            explored[k] = explored[k].max(choice[k] + 1);
            let (a, b) = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])][choice[k]];
            ok &= t.set_mate(g, a, b).is_ok();
        }
        if ok && t.propagate(g).is_ok() {
            if let Some(done) = complete(ctx, d, t, &scope) {
                result = Some(done);
                break 'outer;
            }
        }
        let mut pos = 0;
        while pos < choice.len() {
            choice[pos] += 1;
            if choice[pos] < 3 {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            break;
        }
    }
    for e in explored {
        ctx.stats.record(BranchKind::FourthLevelTriangle, 3, e, 3);
    }
    match result {
        Some(done) => XyOutcome::Found(done),
        None => failed_after_class_rule(ctx, used_class_rule),
    }
}

fn has_nonadjacent_pair(g: &Graph, vs: &[Vertex]) -> bool {
    vs.iter().enumerate().any(|(i, &a)| vs[i + 1..].iter().any(|&b| !g.has_edge(a, b)))
}

fn block_ext(g: &Graph, d: &LevelDecomposition, s: &ColoringState, i: usize) -> Vec<Vertex> {
    let mut ext: Vec<Vertex> = d.blocks[i]
        .members
        .iter()
        .filter(|&&t| s.is_alive(t))
        .flat_map(|&t| g.neighbors(t).iter().copied())
        .filter(|&w| s.is_alive(w) && d.level(w) == Some(4))
        .collect();
    ext.sort_unstable();
    ext.dedup();
    ext
}

/// Connected components of `g[vs]`.
fn split(g: &Graph, vs: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut inside = vec![false; g.n()];
    for &v in vs {
        inside[v] = true;
    }
    let mut out = Vec::new();
    for &r in vs {
        if !inside[r] {
            continue;
        }
        inside[r] = false;
        let mut comp = vec![r];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if inside[w] {
                    inside[w] = false;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A structural consequence of S_{1,1,5}-freeness failed. Report the
/// hypothesis violation if the graph has an induced S_{1,1,5}, otherwise
/// finish exactly.
fn lemma_failed(ctx: &mut Ctx<'_, '_>, d: &LevelDecomposition, s: ColoringState, scope: &[Vertex]) -> XyOutcome {
    if let Some(w) = ctx.sh.s115_witness() {
        return XyOutcome::Violated(w.clone());
    }
    ctx.stats.lemma_fallbacks += 1;
    wrap(complete(ctx, d, s, scope))
}

/// The fifth-level whitening rule relies on S_{1,1,5}-freeness. When it was
/// used and the search failed on a graph with an induced S_{1,1,5}, the
/// failure is not trusted.
fn failed_after_class_rule(ctx: &Ctx<'_, '_>, used_class_rule: bool) -> XyOutcome {
    match (used_class_rule, ctx.sh.s115_witness()) {
        (true, Some(w)) => XyOutcome::Violated(w.clone()),
        _ => XyOutcome::NoDim,
    }
}
