//! Exact completion by branching on the dominator of an open edge.

use crate::coloring::ColoringState;
use crate::graph::{Edge, Graph, Vertex};

/// Completes `state` on `scope`, exploring every way the first open edge can
/// be dominated. Exponential in the worst case; callers use it on residual
/// pieces only. `nodes` counts search nodes.
pub fn constrained_subsolver(
    g: &Graph,
    state: &ColoringState,
    scope: &[Vertex],
    nodes: &mut u64,
) -> Option<ColoringState> {
    let mut s = state.clone();
    s.propagate(g).ok()?;
    search(g, s, scope, nodes)
}

fn search(g: &Graph, s: ColoringState, scope: &[Vertex], nodes: &mut u64) -> Option<ColoringState> {
    *nodes += 1;
    // at a fixpoint every open vertex has an open neighbour it could be mated to
    let Some(e) = scope.iter().find_map(|&v| {
        s.is_open(v).then(|| g.neighbors(v).iter().find(|&&w| s.is_open(w)).map(|&w| Edge::new(v, w))).flatten()
    }) else {
        return Some(s);
    };
    for f in dominators(g, &s, e) {
        let mut t = s.clone();
        if t.set_mate(g, f.u(), f.v()).is_err() || t.propagate(g).is_err() {
            continue;
        }
        if let Some(done) = search(g, t, scope, nodes) {
            return Some(done);
        }
    }
    None
}

/// `e` itself, then the open edges meeting it, each once.
fn dominators(g: &Graph, s: &ColoringState, e: Edge) -> Vec<Edge> {
    let usable = |a: Vertex, b: Vertex| {
        s.is_open(a) && s.is_open(b) && !s.is_excluded(g.edge_id(a, b).expect("edge of g"))
    };
    let mut out = Vec::new();
    if usable(e.u(), e.v()) {
        out.push(e);
    }
    for end in [e.u(), e.v()] {
        for &w in g.neighbors(end) {
            if !e.contains(w) && usable(end, w) {
                out.push(Edge::new(end, w));
            }
        }
    }
    out
}
