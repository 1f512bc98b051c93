use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dim_core::graph::{verify_dim, Graph};
use dim_core::oracle::{brute_force_dim, enumerate_dims};
use dim_core::patterns::{find_induced, random_s115_free, PatternKind};
use dim_core::solver::{SolveResult, SolveStats, Solver, SolverOptions};

/// A graph with a hidden d.i.m.: matched pairs, plus white vertices that see
/// matched vertices only, plus a few random extra edges that may destroy it.
fn planted(pairs: usize, whites: usize, p: f64, noise: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let black = 2 * pairs;
    let n = black + whites;
    let mut edges = BTreeSet::new();
    for i in 0..pairs {
        edges.insert((2 * i, 2 * i + 1));
    }
    for w in black..n {
        for b in 0..black {
            if rng.gen_bool(p) {
                edges.insert((b, w));
            }
        }
    }
    for _ in 0..noise {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Graph::new(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

fn planted_family(count: u64) -> impl Iterator<Item = Graph> {
    (0..count)
        .map(|s| planted(5 + (s % 8) as usize, 5 + (s % 11) as usize, [0.05, 0.08, 0.1, 0.14][(s % 4) as usize], (s % 3) as usize, s))
        .filter(|g| find_induced(g, PatternKind::S115).is_none())
}

fn check(solver: &Solver, g: &Graph, stats: &mut SolveStats) {
    let oracle = brute_force_dim(g).unwrap().exists;
    let out = solver.solve(g);
    match &out.result {
        SolveResult::Found(m) => {
            assert!(verify_dim(g, m).is_ok());
            assert!(oracle, "solver found a d.i.m. the oracle missed on {g:?}");
        }
        SolveResult::None(_) => assert!(!oracle, "solver missed a d.i.m. on {g:?}"),
        SolveResult::HypothesisViolated(w) => panic!("S_1,1,5-free input reported witness {w:?}"),
    }
    stats.lemma_fallbacks += out.stats.lemma_fallbacks;
    stats.branch_bound_violations += out.stats.branch_bound_violations;
    stats.structural_violations += out.stats.structural_violations;
}

#[test]
fn planted_instances_agree_with_oracle() {
    let solver = Solver::new(SolverOptions::default());
    let mut stats = SolveStats::default();
    let mut found = 0;
    for g in planted_family(3000) {
        found += usize::from(brute_force_dim(&g).unwrap().exists);
        check(&solver, &g, &mut stats);
    }
    assert!(found > 100, "planted family too sparse in d.i.m.s: {found}");
    assert_eq!((stats.branch_bound_violations, stats.structural_violations), (0, 0));
}

#[test]
fn option_variants_agree_with_oracle() {
    let variants = [
        SolverOptions { c4_exclusions: false, ..Default::default() },
        SolverOptions { prune_in_vertices: false, ..Default::default() },
        SolverOptions { jobs: 4, ..Default::default() },
    ];
    for opts in variants {
        let solver = Solver::new(opts);
        let mut stats = SolveStats::default();
        for seed in 0..400 {
            let g = random_s115_free(12 + (seed % 7) as usize, [0.12, 0.2, 0.3][(seed % 3) as usize], seed);
            check(&solver, &g, &mut stats);
        }
        for g in planted_family(400) {
            check(&solver, &g, &mut stats);
        }
    }
}

#[test]
fn fixed_edge_agrees_with_enumeration() {
    for prune in [true, false] {
        let solver = Solver::new(SolverOptions { prune_in_vertices: prune, ..Default::default() });
        let graphs = planted_family(600).chain((0..300).map(|s| random_s115_free(10 + (s % 7) as usize, 0.2, s)));
        for g in graphs {
            let all = enumerate_dims(&g).unwrap();
            for &e in g.edges() {
                let want = all.iter().any(|m| m.edges().contains(&e));
                match solver.solve_with_xy(&g, e).result {
                    SolveResult::Found(m) => {
                        assert!(want && m.edges().contains(&e) && verify_dim(&g, &m).is_ok(), "xy {e} on {g:?}")
                    }
                    SolveResult::None(_) => assert!(!want, "xy {e} on {g:?}"),
                    SolveResult::HypothesisViolated(w) => panic!("witness {w:?}"),
                }
            }
        }
    }
}

#[test]
fn parallel_search_is_deterministic() {
    for seed in 0..200 {
        let g = random_s115_free(16, 0.2, seed);
        let one = Solver::new(SolverOptions { jobs: 1, ..Default::default() }).solve(&g).result;
        let many = Solver::new(SolverOptions { jobs: 8, ..Default::default() }).solve(&g).result;
        assert_eq!(format!("{one:?}"), format!("{many:?}"));
    }
}

#[test]
fn non_s115_free_inputs_never_get_wrong_certificates() {
    let solver = Solver::new(SolverOptions::default());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violated = 0;
    for _ in 0..400 {
        let n = rng.gen_range(8..=14);
        let p = rng.gen_range(0.1..0.35);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::new(n, edges).unwrap();
        let oracle = brute_force_dim(&g).unwrap().exists;
        match solver.solve(&g).result {
            SolveResult::Found(m) => assert!(verify_dim(&g, &m).is_ok()),
            SolveResult::None(_) => assert!(!oracle),
            SolveResult::HypothesisViolated(w) => {
                violated += 1;
                let (sub, _) = g.induced_subgraph(&w.vertices);
                assert_eq!(sub.m(), 7);
            }
        }
    }
    eprintln!("{violated} hypothesis violations reported");
}
