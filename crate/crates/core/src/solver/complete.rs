//! Exact completion of a partially colored level structure.
//!
//! Open vertices (undecided, or black without a mate) interact only through
//! edges between open vertices, so each open component is finished on its
//! own. Strategies, in order: an isolated block, three blocks on an induced
//! P3, a cycle of blocks, the chordal dynamic program, branching on a
//! block, and finally the generic subsolver.

use crate::coloring::{Color, ColoringState};
use crate::graph::{Graph, Vertex};
use crate::levels::LevelDecomposition;

use super::dp::treewidth2_dim_dp;
use super::subsolver::constrained_subsolver;
use super::{BranchKind, Ctx};

const CYCLE_SEARCH_STEPS: usize = 10_000;

pub(crate) fn complete(
    ctx: &mut Ctx<'_, '_>,
    d: &LevelDecomposition,
    state: ColoringState,
    scope: &[Vertex],
) -> Option<ColoringState> {
    let g = ctx.sh.g;
    let mut s = state;
    s.propagate(g).ok()?;
    for comp in open_components(g, &s, scope) {
        s = complete_component(ctx, d, s, &comp)?;
    }
    Some(s)
}

pub(crate) fn open_components(g: &Graph, s: &ColoringState, scope: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for &r in scope {
        if seen[r] || !s.is_open(r) {
            continue;
        }
        seen[r] = true;
        let mut comp = vec![r];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] && s.is_open(w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Open block members in `comp`, grouped by block: `(block, anchor, members)`.
fn open_blocks(d: &LevelDecomposition, s: &ColoringState, comp: &[Vertex]) -> Vec<(usize, Vertex, Vec<Vertex>)> {
    let mut out: Vec<(usize, Vertex, Vec<Vertex>)> = Vec::new();
    for &v in comp {
        let Some(i) = d.block_of(v) else { continue };
        let anchor = d.blocks[i].anchor;
        if v == anchor || s.color(v) != Color::Unknown || !s.black_unmated(anchor) {
            continue;
        }
        match out.iter_mut().find(|b| b.0 == i) {
            Some(b) => b.2.push(v),
            None => out.push((i, anchor, vec![v])),
        }
    }
    out
}

fn complete_component(
    ctx: &mut Ctx<'_, '_>,
    d: &LevelDecomposition,
    s: ColoringState,
    comp: &[Vertex],
) -> Option<ColoringState> {
    let g = ctx.sh.g;
    let blocks = open_blocks(d, &s, comp);
    let member_block = |v: Vertex| blocks.iter().position(|b| b.2.contains(&v));

    // a block on its own
    if let [(_, anchor, members)] = &blocks[..] {
        if comp.iter().all(|&v| v == *anchor || members.contains(&v)) {
            let mut order: Vec<Vertex> = members.clone();
            order.sort_by_key(|&t| (!g.neighbors(t).iter().any(|w| members.contains(w)), t));
            let alts: Vec<Vec<(Vertex, Vertex)>> = order.iter().map(|&t| vec![(*anchor, t)]).collect();
            return branch(ctx, d, &s, comp, BranchKind::TrivialBlock, alts, members.len());
        }
    }

    // three blocks on an induced P3 of members
    for (b2, (_, _, members)) in blocks.iter().enumerate() {
        for &t2 in members {
            let nb: Vec<(Vertex, usize)> = g
                .neighbors(t2)
                .iter()
                .filter_map(|&w| member_block(w).filter(|&b| b != b2).map(|b| (w, b)))
                .collect();
            for (i, &(_, b1)) in nb.iter().enumerate() {
                if let Some(&(_, b3)) = nb[i + 1..].iter().find(|&&(t3, b3)| b3 != b1 && !g.has_edge(nb[i].0, t3)) {
                    let trio = [b1, b2, b3];
                    let bound: usize = trio.iter().map(|&b| blocks[b].2.len()).product();
                    let mut alts = Vec::with_capacity(bound);
                    for &c1 in &blocks[b1].2 {
                        for &c2 in &blocks[b2].2 {
                            for &c3 in &blocks[b3].2 {
                                alts.push(vec![(blocks[b1].1, c1), (blocks[b2].1, c2), (blocks[b3].1, c3)]);
                            }
                        }
                    }
                    return branch(ctx, d, &s, comp, BranchKind::BlockP3, alts, bound);
                }
            }
        }
    }

    // a cycle of blocks, entering and leaving each block at distinct members
    if let Some((anchor, entry, exit)) = block_cycle(g, &blocks) {
        let alts = vec![vec![(anchor, entry)], vec![(anchor, exit)]];
        return branch(ctx, d, &s, comp, BranchKind::BlockCycle, alts, 2);
    }

    if let Ok(r) = treewidth2_dim_dp(g, &s, comp) {
        ctx.stats.dp_runs += 1;
        return r;
    }

    if let Some((_, anchor, members)) = blocks.iter().min_by_key(|b| b.2.len()) {
        let alts = members.iter().map(|&t| vec![(*anchor, t)]).collect();
        return branch(ctx, d, &s, comp, BranchKind::BlockEnumeration, alts, members.len());
    }

    ctx.stats.subsolver_runs += 1;
    constrained_subsolver(g, &s, comp, &mut ctx.stats.subsolver_nodes)
}

/// Tries each alternative (a set of pairs to mate) and recurses.
fn branch(
    ctx: &mut Ctx<'_, '_>,
    d: &LevelDecomposition,
    s: &ColoringState,
    comp: &[Vertex],
    kind: BranchKind,
    alts: Vec<Vec<(Vertex, Vertex)>>,
    bound: usize,
) -> Option<ColoringState> {
    let g = ctx.sh.g;
    let total = alts.len();
    let mut explored = 0;
    let mut result = None;
    for alt in alts {
        explored += 1;
        let mut t = s.clone();
        if alt.iter().any(|&(a, b)| t.set_mate(g, a, b).is_err()) || t.propagate(g).is_err() {
            continue;
        }
        if let Some(done) = complete(ctx, d, t, comp) {
            result = Some(done);
            break;
        }
    }
    ctx.stats.record(kind, total, explored, bound);
    result
}

/// A cycle in the multigraph whose nodes are blocks and whose edges are
/// member-member edges, such that every block on it is entered and left
/// through different members. Returns the first block's anchor with its
/// entry and exit members.
fn block_cycle(g: &Graph, blocks: &[(usize, Vertex, Vec<Vertex>)]) -> Option<(Vertex, Vertex, Vertex)> {
    let k = blocks.len();
    if k < 2 {
        return None;
    }
    // block graph edges: (block a, block b, member in a, member in b)
    let mut adj: Vec<Vec<(usize, Vertex, Vertex, usize)>> = vec![Vec::new(); k];
    let mut eid = 0;
    for (a, (_, _, ma)) in blocks.iter().enumerate() {
        for &t in ma {
            for &w in g.neighbors(t) {
                if let Some(b) = blocks.iter().position(|bl| bl.2.contains(&w)) {
                    if a < b {
                        adj[a].push((b, t, w, eid));
                        adj[b].push((a, w, t, eid));
                        eid += 1;
                    }
                }
            }
        }
    }
    // simple cycles by DFS from each start, under a step budget; giving up
    // only skips this strategy
    let mut steps = CYCLE_SEARCH_STEPS;
    for start in 0..k {
        let mut path: Vec<(usize, Vertex, Vertex, usize)> = Vec::new();
        let mut on_path = vec![false; k];
        on_path[start] = true;
        if let Some(found) = cycle_dfs(&adj, start, start, None, &mut path, &mut on_path, blocks, &mut steps) {
            return Some(found);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn cycle_dfs(
    adj: &[Vec<(usize, Vertex, Vertex, usize)>],
    start: usize,
    at: usize,
    entry: Option<Vertex>,
    path: &mut Vec<(usize, Vertex, Vertex, usize)>,
    on_path: &mut [bool],
    blocks: &[(usize, Vertex, Vec<Vertex>)],
    steps: &mut usize,
) -> Option<(Vertex, Vertex, Vertex)> {
    if *steps == 0 {
        return None;
    }
    *steps -= 1;
    for &(next, out_member, in_member, id) in &adj[at] {
        if path.last().is_some_and(|p| p.3 == id) || entry == Some(out_member) {
            continue;
        }
        if next == start && !path.is_empty() {
            let first_exit = path[0].1;
            if in_member != first_exit {
                return Some((blocks[start].1, in_member, first_exit));
            }
            continue;
        }
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push((next, out_member, in_member, id));
        let r = cycle_dfs(adj, start, next, Some(in_member), path, on_path, blocks, steps);
        path.pop();
        on_path[next] = false;
        if r.is_some() {
            return r;
        }
    }
    None
}
