mod common;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use totalext::solver::cycle::{color_even_cycle_from_2_lists, CycleError};
use totalext::solver::list_edge::is_proper_list_edge_coloring;
use totalext::solver::{
    bipartite_extension, bipartite_list_edge_color, bipartite_total_pipeline, exhaustive_list_edge_color,
    konig_edge_coloring, planar_bipartite_vertex_3list, EdgeColoringRoute, ExtensionError,
};
use totalext::{
    check_total_coloring, extend_exact, Budget, CheckMode, Color, ColorSet, Edge, Item, ListAssignment, SolveStatus,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_agrees_with_chronological_backtracking(seed in any::<u64>(), n in 2usize..7, k in 1u32..7) {
        let mut r = rng(seed);
        let emb = random_planar(&mut r, n, 0.6);
        let h = random_subgraph(&mut r, &emb, 0.3, 0.3);
        let c = random_precoloring(&mut r, &emb, &h, k);
        prop_assume!(c.is_some());
        let c = c.unwrap();
        let out = extend_exact(&emb, &c, Budget::default()).unwrap();
        let naive = naive_extends(&emb, &c);
        prop_assert_eq!(out.status == SolveStatus::Colored, naive);
        prop_assert_ne!(out.status, SolveStatus::Timeout);
        if let Some(w) = out.witness {
            prop_assert!(w.extends(&c));
            prop_assert!(check_total_coloring(&emb, &w, CheckMode::Total).unwrap().is_proper());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn konig_uses_max_degree_colors(seed in any::<u64>(), n in 2usize..30) {
        let emb = random_bipartite_planar(&mut rng(seed), n, 0.6);
        let colors = konig_edge_coloring(emb.vertex_count(), emb.edges()).unwrap();
        let delta = emb.max_degree() as Color;
        prop_assert!(colors.iter().all(|&c| (1..=delta).contains(&c)));
        let lists = vec![ColorSet::full(delta); emb.edge_count()];
        prop_assert!(is_proper_list_edge_coloring(emb.edges(), &lists, &colors));
    }

    #[test]
    fn list_edge_coloring_at_max_degree(seed in any::<u64>(), n in 2usize..25) {
        let mut r = rng(seed);
        let emb = random_bipartite_planar(&mut r, n, 0.6);
        let delta = emb.max_degree() as Color;
        let lists: Vec<ColorSet> = emb
            .edges()
            .iter()
            .map(|e| random_list(&mut r, emb.degree(e.u).max(emb.degree(e.v)), delta + 2))
            .collect();
        let out = bipartite_list_edge_color(emb.vertex_count(), emb.edges(), &lists, Budget::default()).unwrap();
        prop_assert_eq!(out.route, EdgeColoringRoute::Kernel);
        prop_assert!(is_proper_list_edge_coloring(emb.edges(), &lists, &out.colors));
    }

    #[test]
    fn vertex_three_lists(seed in any::<u64>(), n in 2usize..30) {
        let mut r = rng(seed);
        let emb = random_bipartite_planar(&mut r, n, 0.6);
        let lists: Vec<ColorSet> = (0..n).map(|_| random_list(&mut r, 3, 5)).collect();
        let colors = planar_bipartite_vertex_3list(&emb, &lists, Budget::default()).unwrap();
        for (v, &c) in colors.iter().enumerate() {
            prop_assert!(lists[v].contains(c));
        }
        for e in emb.edges() {
            prop_assert_ne!(colors[e.u], colors[e.v]);
        }
    }

    #[test]
    fn pipeline_and_extension(seed in any::<u64>(), n in 2usize..25, d in 1usize..4) {
        let mut r = rng(seed);
        let emb = random_bipartite_planar(&mut r, n, 0.5);
        let palette = emb.max_degree() as Color + 4;
        let mut lists = ListAssignment::new();
        for v in 0..n {
            lists.insert(Item::vertex(v), random_list(&mut r, 3, palette));
        }
        for &e in emb.edges() {
            lists.insert(Item::edge(e), random_list(&mut r, emb.degree(e.u).max(emb.degree(e.v)) + 2, palette));
        }
        let out = bipartite_total_pipeline(&emb, &lists, Budget::default()).unwrap();
        prop_assert!(check_total_coloring(&emb, &out.coloring, CheckMode::Total).unwrap().is_proper());
        prop_assert!(out.shrunken.iter().all(|s| s.holds()));

        let h = random_bounded_degree(&mut r, &emb, d);
        let k = (emb.max_degree() + d + 4) as Color;
        if let Some(c) = random_precoloring(&mut r, &emb, &h, k) {
            let ext = bipartite_extension(&emb, &c, d, Budget::default()).unwrap();
            prop_assert!(ext.coloring.extends(&c));
            prop_assert!(check_total_coloring(&emb, &ext.coloring, CheckMode::Total).unwrap().is_proper());
            let small = c.with_palette(k - 1);
            if let Ok(small) = small {
                prop_assert!(
                    matches!(
                        bipartite_extension(&emb, &small, d, Budget::default()),
                        Err(ExtensionError::PaletteTooSmall { .. })
                    ),
                    "palette below the bound must be refused"
                );
            }
        }
    }
}

#[test]
fn kernel_and_exhaustive_agree_on_small_lists() {
    let mut r = rng(11);
    for _ in 0..300 {
        let n = r.gen_range(2..12);
        let emb = random_bipartite_planar(&mut r, n, 0.6);
        let lists: Vec<ColorSet> = emb.edges().iter().map(|_| random_list(&mut r, 2, 3)).collect();
        let exhaustive = exhaustive_list_edge_color(n, emb.edges(), &lists, Budget::default()).unwrap();
        if let Some(colors) = &exhaustive {
            assert!(is_proper_list_edge_coloring(emb.edges(), &lists, colors));
        }
    }
}

#[test]
fn odd_uniform_cycle_is_refused() {
    let cycle: Vec<Edge> = (0..5).map(|i| Edge::new(i, (i + 1) % 5)).collect();
    let lists = vec![ColorSet::from([1, 2]); 5];
    assert!(matches!(
        color_even_cycle_from_2_lists(&cycle, &lists),
        Err(CycleError::OddUniform { length: 5, .. })
    ));
    let mut mixed = lists.clone();
    mixed[2] = ColorSet::from([2, 3]);
    let colors = color_even_cycle_from_2_lists(&cycle, &mixed).unwrap();
    assert!(is_proper_list_edge_coloring(&cycle, &mixed, &colors));
}

#[test]
fn tiny_budget_times_out() {
    let ex = totalext::sharpness::gen_example(totalext::sharpness::ExampleId::JoinedTriangles, None).unwrap();
    let out = extend_exact(&ex.embedding, &ex.precoloring, Budget::nodes(10)).unwrap();
    assert_eq!(out.status, SolveStatus::Timeout);
}
