//! Completion of chordal pieces of treewidth at most two.
//!
//! A perfect elimination order gives a clique tree whose bag for `v` is `v`
//! plus its later neighbours. Each bag vertex carries one of three states:
//! white, black with no black neighbour seen yet, black with one. Every edge
//! is accounted for in the bag of its earlier endpoint, and a vertex is
//! checked when it is forgotten.

use std::collections::HashMap;

use thiserror::Error;

use crate::coloring::{Color, ColoringState};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum DpError {
    #[error("the piece is not chordal")]
    NotChordal,
    #[error("the piece contains a clique on four vertices")]
    CliqueTooLarge,
}

const W: u8 = 0;
const B0: u8 = 1;
const B1: u8 = 2;

type Key = Vec<u8>;

#[derive(Clone, Debug)]
struct Choice {
    black: bool,
    picks: Vec<(usize, Key)>,
}

/// Finds a completion of `state` on `scope` (alive, open vertices whose
/// constraints do not reach outside `scope`), or proves there is none.
pub fn treewidth2_dim_dp(
    g: &Graph,
    state: &ColoringState,
    scope: &[Vertex],
) -> Result<Option<ColoringState>, DpError> {
    let (k, map) = g.induced_subgraph(scope);
    let n = k.n();
    let peo = perfect_elimination_order(&k).ok_or(DpError::NotChordal)?;
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut later: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut l: Vec<usize> = k.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
            l.sort_unstable_by_key(|&w| pos[w]);
            l
        })
        .collect();
    for l in &mut later {
        if l.len() > 2 {
            return Err(DpError::CliqueTooLarge);
        }
        l.shrink_to_fit();
    }
    let mut children = vec![Vec::new(); n];
    for (v, l) in later.iter().enumerate() {
        if let Some(&p) = l.first() {
            children[p].push(v);
        }
    }

    let options = |v: usize| -> &'static [bool] {
        match state.color(map[v]) {
            Color::Unknown => &[false, true],
            Color::Black => &[true],
            Color::White => &[false],
        }
    };
    let excluded = |a: usize, b: usize| {
        let id = g.edge_id(map[a], map[b]).expect("edge of the piece");
        state.is_excluded(id)
    };

    let mut tables: Vec<HashMap<Key, Choice>> = vec![HashMap::new(); n];
    for &v in &peo {
        let bag: Vec<usize> = std::iter::once(v).chain(later[v].iter().copied()).collect();
        let mut partial: HashMap<Key, Vec<(usize, Key)>> = HashMap::new();
        let mut colors = vec![false; bag.len()];
        seed_colorings(&bag, 0, &options, &mut colors, &mut partial);

        for &c in &children[v] {
            let idx: Vec<usize> =
                later[c].iter().map(|w| bag.iter().position(|b| b == w).expect("later neighbours lie in the bag")).collect();
            let mut next: HashMap<Key, Vec<(usize, Key)>> = HashMap::new();
            for (st, picks) in &partial {
                for ckey in tables[c].keys() {
                    if let Some(merged) = merge(st, &idx, ckey) {
                        next.entry(merged).or_insert_with(|| {
                            let mut p = picks.clone();
                            p.push((c, ckey.clone()));
                            p
                        });
                    }
                }
            }
            partial = next;
        }

        for (st, picks) in partial {
            let mut st = st;
            let mut ok = true;
            for (j, &w) in later[v].iter().enumerate() {
                let (a, b) = (st[0], st[j + 1]);
                match (a == W, b == W) {
                    (true, true) => ok = false,
                    (false, false) => {
                        if excluded(v, w) || a == B1 || b == B1 {
                            ok = false;
                        } else {
                            st[0] = B1;
                            st[j + 1] = B1;
                        }
                    }
                    _ => {}
                }
                if !ok {
                    break;
                }
            }
            if !ok || st[0] == B0 {
                continue;
            }
            tables[v].entry(st[1..].to_vec()).or_insert(Choice { black: st[0] != W, picks });
        }
    }

    let mut black = vec![false; n];
    let mut stack = Vec::new();
    for v in 0..n {
        if later[v].is_empty() {
            if !tables[v].contains_key(&Vec::new()) {
                return Ok(None);
            }
            stack.push((v, Vec::new()));
        }
    }
    while let Some((v, key)) = stack.pop() {
        let choice = &tables[v][&key];
        black[v] = choice.black;
        stack.extend(choice.picks.iter().cloned());
    }

    let mut out = state.clone();
    for v in 0..n {
        let c = if black[v] { Color::Black } else { Color::White };
        if out.assign(g, map[v], c).is_err() {
            debug_assert!(false, "table entries respect the fixed colors");
            return Ok(None);
        }
    }
    for v in 0..n {
        if black[v] {
            let w = *k.neighbors(v).iter().find(|&&w| black[w]).expect("black vertices have exactly one black neighbour");
            if v < w && out.set_mate(g, map[v], map[w]).is_err() {
                return Ok(None);
            }
        }
    }
    if out.propagate(g).is_err() {
        debug_assert!(false, "a table-consistent coloring propagates cleanly");
        return Ok(None);
    }
    Ok(Some(out))
}

fn seed_colorings(
    bag: &[usize],
    i: usize,
    options: &dyn Fn(usize) -> &'static [bool],
    colors: &mut Vec<bool>,
    out: &mut HashMap<Key, Vec<(usize, Key)>>,
) {
    if i == bag.len() {
        out.insert(colors.iter().map(|&b| if b { B0 } else { W }).collect(), Vec::new());
        return;
    }
    for &b in options(bag[i]) {
        colors[i] = b;
        seed_colorings(bag, i + 1, options, colors, out);
    }
}

/// Adds a child's counts into the bag state, or `None` on a color clash or
/// a second black neighbour.
fn merge(st: &[u8], idx: &[usize], child: &[u8]) -> Option<Key> {
    let mut out = st.to_vec();
    for (&i, &c) in idx.iter().zip(child) {
        let (a, b) = (out[i], c);
        if (a == W) != (b == W) {
            return None;
        }
        if a != W {
            let total = (a - B0) + (b - B0);
            if total > 1 {
                return None;
            }
            out[i] = B0 + total;
        }
    }
    Some(out)
}

/// Maximum cardinality search, reversed and verified.
pub(crate) fn perfect_elimination_order(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    // buckets keyed by weight, lazily cleaned
    let mut buckets: Vec<Vec<Vertex>> = vec![(0..n).rev().collect()];
    let mut top = 0;
    while visit.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !numbered[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        numbered[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            if !numbered[w] {
                weight[w] += 1;
                if buckets.len() <= weight[w] {
                    buckets.push(Vec::new());
                }
                buckets[weight[w]].push(w);
                top = top.max(weight[w]);
            }
        }
    }
    visit.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    for v in 0..n {
        let later: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
            if later.iter().any(|&w| w != p && !g.has_edge(p, w)) {
                return None;
            }
        }
    }
    Some(visit)
}
