use std::collections::BTreeSet;

use proptest::prelude::*;

use dim_core::coloring::{Color, ColoringState};
use dim_core::graph::{verify_dim, DimCertificate, Edge, Graph};
use dim_core::io::{parse_edge_list, write_edge_list};
use dim_core::levels::decompose;
use dim_core::oracle::{enumerate_dims, subset_filter_dims};
use dim_core::patterns::{find_induced, make_named, random_s115_free, PatternKind};
use dim_core::solver::{solve, SolveResult};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()).prop_map(move |ps| Graph::new(n, ps).unwrap())
    })
}

fn exists(g: &Graph) -> Option<bool> {
    match solve(g).result {
        SolveResult::Found(m) => {
            assert!(verify_dim(g, &m).is_ok());
            Some(true)
        }
        SolveResult::None(_) => Some(false),
        SolveResult::HypothesisViolated(_) => None,
    }
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn levels_are_a_bfs_layering(g in graph(9), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() > 0);
        let xy = g.edge(pick.index(g.m()));
        let mut state = ColoringState::new(&g);
        let Ok(d) = decompose(&g, xy, &mut state) else { return Ok(()) };
        let mut seen = BTreeSet::new();
        for level in &d.levels {
            for &v in level {
                prop_assert!(seen.insert(v), "vertex {} in two levels", v);
            }
        }
        let comp = g.connected_components().into_iter().find(|c| c.contains(&xy.u())).unwrap();
        prop_assert_eq!(seen, comp.into_iter().collect::<BTreeSet<_>>());
        prop_assert_eq!(&d.levels[0], &vec![xy.u(), xy.v()]);
        for i in 1..d.levels.len() {
            for &v in &d.levels[i] {
                prop_assert!(g.neighbors(v).iter().any(|w| d.levels[i - 1].contains(w)));
            }
        }
    }

    #[test]
    fn verifier_matches_direct_count(g in graph(7), bits in any::<u32>()) {
        let chosen: Vec<Edge> = g.edges().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let direct = g.edges().iter().all(|e| chosen.iter().filter(|f| e.touches(**f)).count() == 1);
        let verified = DimCertificate::new(chosen).is_ok_and(|m| verify_dim(&g, &m).is_ok());
        prop_assert_eq!(direct, verified);
    }

    #[test]
    fn oracle_agrees_with_subset_filter(g in graph(8)) {
        prop_assume!(g.m() <= 18);
        let all = enumerate_dims(&g).unwrap();
        let distinct: BTreeSet<_> = all.iter().map(|m| m.edges().to_vec()).collect();
        prop_assert_eq!(distinct.len(), all.len());
        prop_assert!(all.iter().all(|m| verify_dim(&g, m).is_ok()));
        prop_assert_eq!(Some(all), subset_filter_dims(&g));
    }

    #[test]
    fn existence_is_invariant_under_relabeling(g in graph(10), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(exists(&g), exists(&permuted(&g, &perm)));
    }

    #[test]
    fn fixpoints_satisfy_the_coloring_invariants(g in graph(9), seeds in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..4)) {
        let mut s = ColoringState::new(&g);
        for (v, black) in &seeds {
            let c = if *black { Color::Black } else { Color::White };
            if s.assign(&g, v.index(g.n()), c).is_err() {
                return Ok(());
            }
        }
        if s.propagate(&g).is_err() {
            return Ok(());
        }
        for e in g.edges() {
            prop_assert!(!(s.color(e.u()) == Color::White && s.color(e.v()) == Color::White));
        }
        for v in 0..g.n() {
            if s.color(v) == Color::Black {
                prop_assert!(g.neighbors(v).iter().filter(|&&w| s.color(w) == Color::Black).count() <= 1);
            }
            if let Some(w) = s.mate(v) {
                prop_assert_eq!(s.mate(w), Some(v));
            }
        }
    }

    #[test]
    fn propagation_ignores_assignment_order(g in graph(9), seeds in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..4)) {
        let run = |order: &mut dyn Iterator<Item = &(prop::sample::Index, bool)>| {
            let mut s = ColoringState::new(&g);
            for (v, black) in order {
                let c = if *black { Color::Black } else { Color::White };
                s.assign(&g, v.index(g.n()), c).ok()?;
            }
            s.propagate(&g).ok()?;
            Some((0..g.n()).map(|v| (s.color(v), s.mate(v))).collect::<Vec<_>>())
        };
        prop_assert_eq!(run(&mut seeds.iter()), run(&mut seeds.iter().rev()));
    }

    #[test]
    fn generated_graphs_are_s115_free_and_round_trip(n in 0usize..18, p in 0.0f64..0.5, seed in any::<u64>()) {
        let g = random_s115_free(n, p, seed);
        prop_assert!(find_induced(&g, PatternKind::S115).is_none());
        let text = write_edge_list(&g);
        prop_assert_eq!(write_edge_list(&parse_edge_list(&text).unwrap()), text);
    }

    #[test]
    fn witnesses_are_induced_copies(g in graph(9)) {
        for kind in [PatternKind::K4, PatternKind::Diamond, PatternKind::Butterfly, PatternKind::Claw, PatternKind::Path(4), PatternKind::Cycle(4)] {
            if let Some(w) = find_induced(&g, kind) {
                let (sub, _) = g.induced_subgraph(&w.vertices);
                let pattern = make_named(kind).unwrap();
                let expect: BTreeSet<Edge> = pattern.edges().iter().copied().collect();
                let got: BTreeSet<Edge> = sub.edges().iter().copied().collect();
                prop_assert_eq!(got, expect, "{}", kind);
            }
        }
    }
}

#[test]
fn named_graphs_contain_themselves() {
    let kinds = [
        PatternKind::K4,
        PatternKind::Diamond,
        PatternKind::Butterfly,
        PatternKind::Claw,
        PatternKind::S115,
        PatternKind::Spider(2, 2, 3),
        PatternKind::Path(6),
        PatternKind::Cycle(7),
    ];
    for k in kinds {
        assert!(find_induced(&make_named(k).unwrap(), k).is_some(), "{k}");
    }
    let s = make_named(PatternKind::S115).unwrap();
    for bigger in [PatternKind::Spider(1, 1, 6), PatternKind::Spider(1, 2, 5), PatternKind::Spider(2, 2, 5)] {
        assert!(find_induced(&s, bigger).is_none(), "{bigger}");
    }
}

#[test]
fn edgeless_graphs_have_the_empty_dim() {
    for n in 0..5 {
        match solve(&Graph::empty(n)).result {
            SolveResult::Found(m) => assert!(m.is_empty()),
            other => panic!("{other:?}"),
        }
    }
}
