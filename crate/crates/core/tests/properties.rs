use minmax_coloring::anneal::{acceptance_probability, anneal, AnnealConfig};
use minmax_coloring::bfs::{bfs_coloring, BfsConfig, StartVertex};
use minmax_coloring::coloring::{lower_bound_max_degree, EdgeColoring};
use minmax_coloring::exact::{brute_force_optimum, DEFAULT_EDGE_LIMIT};
use minmax_coloring::generators::{generate, points, GeneratorSpec};
use minmax_coloring::graph::Graph;
use minmax_coloring::hill_climb::{hill_climb, HillClimbConfig};
use minmax_coloring::io::{parse_dimacs, write_dimacs};
use minmax_coloring::moves::{applicable_moves, apply_move, AttractivenessWeights, MoveKind};
use minmax_coloring::tabu::{tabu_search, TabuConfig};
use minmax_coloring::trace::Step;
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

fn graph_strategy(max_n: usize, max_pairs: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_pairs).prop_map(move |pairs| {
            Graph::new_dedup(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

fn connected_strategy(max_n: usize, max_pairs: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n, max_pairs).prop_map(|g| g.largest_connected_component().graph)
}

/// A valid 2-coloring reached by a random walk of moves from the blank one
/// (split into one color per component).
fn random_walk<'g>(g: &'g Graph, seed: u64, steps: usize) -> EdgeColoring<'g> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut c = EdgeColoring::blank(g);
    c.normalize_components();
    if g.edge_count() == 0 {
        return c;
    }
    for _ in 0..steps {
        let e = rng.random_range(0..g.edge_count());
        let moves = applicable_moves(&c, e);
        if moves.is_empty() {
            continue;
        }
        let m = moves[rng.random_range(0..moves.len())];
        apply_move(&mut c, &m).unwrap();
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn moves_keep_colorings_valid_and_bookkeeping_coherent(g in graph_strategy(30, 80), seed: u64, steps in 0usize..40) {
        let mut c = random_walk(&g, seed, steps);
        prop_assert!(c.is_valid_qcoloring(2));
        prop_assert!(c.check_consistency().is_ok());
        prop_assert!(c.colors_connected());
        for e in 0..g.edge_count() {
            for m in applicable_moves(&c, e) {
                let before = c.colors().to_vec();
                let cp = c.begin();
                let out = apply_move(&mut c, &m).unwrap();
                prop_assert!(c.is_valid_qcoloring(2), "{:?} broke validity", m.kind());
                prop_assert!(c.check_consistency().is_ok());
                prop_assert!(c.colors_connected());
                prop_assert_eq!(out.objective_after, c.max_count());
                c.rollback(cp);
                prop_assert_eq!(c.colors(), before.as_slice());
                prop_assert!(c.check_consistency().is_ok());
            }
        }
    }

    #[test]
    fn renumbering_preserves_the_partition(g in graph_strategy(20, 50), seed: u64) {
        let mut c = random_walk(&g, seed, 30);
        let before = c.partition();
        let f = c.max_count();
        c.renumber_colors();
        prop_assert_eq!(c.partition(), before);
        prop_assert_eq!(c.max_count(), f);
        let k = c.live_color_count() as u32;
        prop_assert!(c.colors().iter().all(|&x| x >= 1 && x <= k));
    }

    #[test]
    fn bfs_output_is_valid_and_connected(g in connected_strategy(30, 90), start_pick: usize) {
        prop_assume!(g.edge_count() > 0);
        let start = start_pick % g.vertex_count();
        let with = BfsConfig { start_vertex: StartVertex::Index(start), improvement_step: true };
        let without = BfsConfig { improvement_step: false, ..with };
        let a = bfs_coloring(&g, &with).unwrap().coloring;
        let b = bfs_coloring(&g, &without).unwrap().coloring;
        prop_assert!(a.is_valid_qcoloring(2));
        prop_assert!(b.is_valid_qcoloring(2));
        prop_assert!(a.colors_connected());
        prop_assert!(a.max_count() <= b.max_count());
        prop_assert!(a.live_color_count() >= b.live_color_count());
        // without the split, colors are consecutive layer numbers
        let layers = b.live_color_count() as u32;
        prop_assert!(b.colors().iter().all(|&c| c >= 1 && c <= layers));
        // every edge refines a layer
        for e in 0..g.edge_count() {
            for f in 0..g.edge_count() {
                if a.color(e) == a.color(f) {
                    prop_assert_eq!(b.color(e), b.color(f));
                }
            }
        }
    }

    #[test]
    fn oracle_bounds_every_heuristic(g in connected_strategy(8, 14)) {
        prop_assume!(g.edge_count() <= 10 && g.edge_count() > 0);
        let exact = brute_force_optimum(&g, DEFAULT_EDGE_LIMIT).unwrap();
        prop_assert!(exact.witness.is_valid_qcoloring(2));
        prop_assert_eq!(exact.witness.max_count(), exact.optimum);
        prop_assert!(lower_bound_max_degree(&g) <= exact.optimum);
        let bfs = bfs_coloring(&g, &BfsConfig::default()).unwrap().coloring;
        prop_assert!(bfs.max_count() >= exact.optimum);
        let hc = hill_climb(EdgeColoring::blank(&g), &HillClimbConfig::default()).unwrap().coloring;
        prop_assert!(hc.max_count() >= exact.optimum);
        let sa = anneal(bfs.clone(), &AnnealConfig { stall_limit: 50, ..Default::default() }).unwrap().coloring;
        prop_assert!(sa.max_count() >= exact.optimum);
        let ts = tabu_search(bfs, &TabuConfig { stall_limit: 50, ..Default::default() }).unwrap().coloring;
        prop_assert!(ts.max_count() >= exact.optimum);
    }

    #[test]
    fn oracle_value_is_isomorphism_stable(g in graph_strategy(7, 10), perm_seed: u64) {
        prop_assume!(g.edge_count() <= 9);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(perm_seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let h = g.relabeled(&perm).unwrap();
        let a = brute_force_optimum(&g, DEFAULT_EDGE_LIMIT).unwrap().optimum;
        let b = brute_force_optimum(&h, DEFAULT_EDGE_LIMIT).unwrap().optimum;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn metaheuristics_are_reproducible_with_monotone_incumbent(g in connected_strategy(25, 70), seed: u64) {
        prop_assume!(g.edge_count() > 0);
        let init = bfs_coloring(&g, &BfsConfig::default()).unwrap().coloring;
        let sa_cfg = AnnealConfig { seed, stall_limit: 100, ..Default::default() };
        let tabu_cfg = TabuConfig { seed, stall_limit: 100, ..Default::default() };
        let sa1 = anneal(init.clone(), &sa_cfg).unwrap();
        let sa2 = anneal(init.clone(), &sa_cfg).unwrap();
        let ts1 = tabu_search(init.clone(), &tabu_cfg).unwrap();
        let ts2 = tabu_search(init.clone(), &tabu_cfg).unwrap();
        prop_assert_eq!(&sa1.trace.records, &sa2.trace.records);
        prop_assert_eq!(sa1.coloring.colors(), sa2.coloring.colors());
        prop_assert_eq!(&ts1.trace.records, &ts2.trace.records);
        prop_assert_eq!(ts1.coloring.colors(), ts2.coloring.colors());
        for res in [&sa1, &ts1] {
            prop_assert!(res.coloring.is_valid_qcoloring(2));
            prop_assert!(res.coloring.max_count() <= init.max_count());
            for w in res.trace.records.windows(2) {
                prop_assert!(w[1].best_objective <= w[0].best_objective);
            }
        }
        // upward jumps larger than one only come from connect or merge
        for w in ts1.trace.records.windows(2) {
            if w[1].current_objective > w[0].current_objective + 1 {
                prop_assert!(matches!(w[1].step, Step::Applied(MoveKind::Connect | MoveKind::Merge)));
            }
        }
    }

    #[test]
    fn tabu_with_biased_merges_only_jumps_on_connect_or_merge(g in connected_strategy(25, 70), seed: u64) {
        prop_assume!(g.edge_count() > 0);
        let weights = AttractivenessWeights::parse("0,1,0,1,0,0.5,0.3,0.25").unwrap();
        let cfg = TabuConfig { seed, stall_limit: 60, weights, ..Default::default() };
        let res = tabu_search(EdgeColoring::blank(&g), &cfg).unwrap();
        for w in res.trace.records.windows(2) {
            if w[1].current_objective > w[0].current_objective + 1 {
                prop_assert!(matches!(w[1].step, Step::Applied(MoveKind::Connect | MoveKind::Merge)));
            }
        }
    }

    #[test]
    fn hill_climbing_never_worsens(g in connected_strategy(25, 70)) {
        let res = hill_climb(EdgeColoring::blank(&g), &HillClimbConfig::default()).unwrap();
        for w in res.trace.records.windows(2) {
            prop_assert!(w[1].current_objective <= w[0].current_objective);
        }
        prop_assert!(res.coloring.is_valid_qcoloring(2));
    }

    #[test]
    fn cold_annealing_never_accepts_a_worse_edge(gap in 0.01f64..1e6, temp in 1e-300f64..1e-12) {
        prop_assert_eq!(acceptance_probability(0.0, gap, temp), 0.0);
    }

    #[test]
    fn qudg_is_a_subgraph_of_udg(n in 1usize..300, range in 10.0f64..800.0, seed: u64) {
        let (u, _) = generate(&GeneratorSpec::udg(n, range, seed)).unwrap();
        let (q, _) = generate(&GeneratorSpec::qudg(n, range, seed)).unwrap();
        prop_assert!(q.edges().iter().all(|&(a, b)| u.find_edge(a, b).is_some()));
    }

    #[test]
    fn layout_depends_only_on_seed_n_and_side(n in 1usize..200, r1 in 1.0f64..2000.0, r2 in 1.0f64..2000.0, seed: u64) {
        let a = points(&GeneratorSpec::udg(n, r1, seed));
        let b = points(&GeneratorSpec::qudg(n, r2, seed));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dimacs_round_trip(g in graph_strategy(40, 120)) {
        let mut buf = Vec::new();
        write_dimacs(&g, &[], &mut buf).unwrap();
        // duplicate every edge reversed; parsing must collapse them
        let mut text = String::from_utf8(buf).unwrap();
        for &(u, v) in g.edges() {
            text.push_str(&format!("e {} {}\n", v + 1, u + 1));
        }
        let (h, meta) = parse_dimacs(text.as_bytes(), "g").unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(meta.edge_count, g.edge_count());
        prop_assert_eq!(meta.max_degree, g.max_degree());
    }
}

#[test]
fn qudg_subset_over_a_hundred_seeds() {
    for seed in 0..120 {
        let (u, _) = generate(&GeneratorSpec::udg(400, 220.0, seed)).unwrap();
        let (q, _) = generate(&GeneratorSpec::qudg(400, 220.0, seed)).unwrap();
        assert!(q.edge_count() <= u.edge_count());
        assert!(q.edges().iter().all(|&(a, b)| u.find_edge(a, b).is_some()), "seed {seed}");
    }
}

#[test]
fn close_pairs_are_always_qudg_edges() {
    for seed in 0..20 {
        let spec = GeneratorSpec::qudg(300, 300.0, seed);
        let pts = points(&spec);
        let (q, _) = generate(&spec).unwrap();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d2 = (pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2);
                if d2 <= 150.0 * 150.0 {
                    assert!(q.find_edge(i, j).is_some());
                }
            }
        }
    }
}

#[test]
fn edge_count_grows_with_range_squared() {
    // expected edges ~ n^2 pi r^2 / (2 side^2) away from the border
    let mean = |range: f64| {
        (0..10).map(|s| generate(&GeneratorSpec::udg(1000, range, s)).unwrap().0.edge_count() as f64).sum::<f64>()
            / 10.0
    };
    let ratio = mean(200.0) / mean(100.0);
    assert!((3.3..4.3).contains(&ratio), "ratio {ratio}");
}

#[test]
fn generation_is_deterministic() {
    let spec = GeneratorSpec::qudg(500, 180.0, 42);
    assert_eq!(generate(&spec).unwrap().0, generate(&spec).unwrap().0);
}
