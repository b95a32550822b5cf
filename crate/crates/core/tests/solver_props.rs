use geosep::geometry::build_intersection_graph;
use geosep::oracle::{gen_instance, GeneratorConfig, ShapeMix};
use geosep::problem::{verify_witness, Problem};
use geosep::solvers::{
    solve, solve_connected_vertex_cover, solve_dominating_set, solve_feedback_vertex_set, solve_independent_set,
    solve_max_induced_forest, solve_separator_recursion_is, solve_steiner_tree, solve_vertex_cover, SolveOptions,
};
use geosep::separator::SeparatorOptions;
use geosep::{Graph, ObjectSet};
use proptest::prelude::*;

fn instance(d: usize, n: usize, seed: u64, sigma: f64, boxes: bool) -> (ObjectSet, Graph) {
    let shapes = if boxes { ShapeMix::Mixed } else { ShapeMix::Balls };
    let f = gen_instance(&GeneratorConfig { sigma, shapes, ..GeneratorConfig::new(d, n, seed) }).unwrap();
    let g = build_intersection_graph(&f).unwrap().graph;
    (f, g)
}

fn geometric(max_n: usize) -> impl Strategy<Value = (ObjectSet, Graph)> {
    (2usize..=3, 4..=max_n, any::<u64>(), 1.0f64..3.0, any::<bool>())
        .prop_map(|(d, n, seed, sigma, boxes)| instance(d, n, seed, sigma, boxes))
}

fn adjacency(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u)).collect()
}

/// Maximum independent set by subset enumeration.
fn brute_is(g: &Graph) -> usize {
    let adj = adjacency(g);
    (0u32..1 << g.n())
        .filter(|&s| (0..g.n()).all(|v| s >> v & 1 == 0 || adj[v] & s == 1 << v))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Minimum dominating set by subset enumeration.
fn brute_ds(g: &Graph) -> usize {
    let adj = adjacency(g);
    let all = (1u32 << g.n()) - 1;
    (0u32..1 << g.n())
        .filter(|&s| (0..g.n()).filter(|v| s >> v & 1 == 1).fold(0, |m, v| m | adj[v]) == all)
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

fn opt(r: geosep::Result<geosep::solvers::SolveResult>) -> Option<usize> {
    r.unwrap().optimum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn independent_set_matches_enumeration((_f, g) in geometric(14)) {
        let o = SolveOptions::default();
        prop_assert_eq!(opt(solve_independent_set(&g, &o)), Some(brute_is(&g)));
        prop_assert_eq!(opt(solve_dominating_set(&g, 1, &o)), Some(brute_ds(&g)));
    }

    #[test]
    fn complements_sum_to_n((_f, g) in geometric(13)) {
        let o = SolveOptions::default();
        let n = g.n();
        prop_assert_eq!(opt(solve_independent_set(&g, &o)).unwrap() + opt(solve_vertex_cover(&g, &o)).unwrap(), n);
        prop_assert_eq!(opt(solve_max_induced_forest(&g, &o)).unwrap() + opt(solve_feedback_vertex_set(&g, &o)).unwrap(), n);
    }

    #[test]
    fn isolated_vertex_monotonicity((_f, g) in geometric(12)) {
        let o = SolveOptions::default();
        let h = g.with_isolated(1);
        prop_assert_eq!(opt(solve_independent_set(&h, &o)), opt(solve_independent_set(&g, &o)).map(|x| x + 1));
        prop_assert_eq!(opt(solve_vertex_cover(&h, &o)), opt(solve_vertex_cover(&g, &o)));
        prop_assert_eq!(opt(solve_dominating_set(&h, 1, &o)), opt(solve_dominating_set(&g, 1, &o)).map(|x| x + 1));
        prop_assert_eq!(opt(solve_dominating_set(&h, 2, &o)), opt(solve_dominating_set(&g, 2, &o)).map(|x| x + 1));
        prop_assert_eq!(opt(solve_max_induced_forest(&h, &o)), opt(solve_max_induced_forest(&g, &o)).map(|x| x + 1));
        prop_assert_eq!(opt(solve_feedback_vertex_set(&h, &o)), opt(solve_feedback_vertex_set(&g, &o)));
    }

    #[test]
    fn pruning_is_safe((_f, g) in geometric(11)) {
        let on = SolveOptions::default();
        let off = SolveOptions { prune: false, ..SolveOptions::default() };
        let n = g.n();
        let problems = [
            Problem::IndependentSet,
            Problem::DominatingSet { r: 1 },
            Problem::DominatingSet { r: 2 },
            Problem::MaxInducedForest,
            Problem::ConnectedVertexCover,
            Problem::SteinerTree { terminals: vec![0, n - 1] },
        ];
        for p in &problems {
            let a = solve(&g, None, p, &on).unwrap();
            let b = solve(&g, None, p, &off).unwrap();
            prop_assert_eq!(a.optimum, b.optimum, "{}", p);
            if a.optimum.is_some() {
                prop_assert!(verify_witness(&g, p, &a.witness));
            }
        }
    }

    #[test]
    fn relabeling_keeps_optima((_f, g) in geometric(12), rot in 1usize..12) {
        let o = SolveOptions::default();
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|v| (v + rot) % n).collect();
        let h = g.relabel(&perm);
        prop_assert_eq!(opt(solve_independent_set(&h, &o)), opt(solve_independent_set(&g, &o)));
        prop_assert_eq!(opt(solve_dominating_set(&h, 1, &o)), opt(solve_dominating_set(&g, 1, &o)));
        prop_assert_eq!(opt(solve_feedback_vertex_set(&h, &o)), opt(solve_feedback_vertex_set(&g, &o)));
        prop_assert_eq!(
            opt(solve_steiner_tree(&h, &[perm[0], perm[n - 1]], &o)),
            opt(solve_steiner_tree(&g, &[0, n - 1], &o))
        );
    }

    #[test]
    fn tampered_witnesses_are_rejected((_f, g) in geometric(12), pick in any::<prop::sample::Index>()) {
        let o = SolveOptions::default();
        let ds = solve_dominating_set(&g, 1, &o).unwrap();
        let p = Problem::DominatingSet { r: 1 };
        prop_assert!(verify_witness(&g, &p, &ds.witness));
        // a minimum dominating set has no dominating proper subset
        let mut short = ds.witness.clone();
        short.remove(pick.index(short.len()));
        prop_assert!(!verify_witness(&g, &p, &short));
        let mut dup = ds.witness.clone();
        dup.push(dup[0]);
        prop_assert!(!verify_witness(&g, &p, &dup));
        let mut out = ds.witness.clone();
        out.push(g.n());
        prop_assert!(!verify_witness(&g, &p, &out));
    }

    #[test]
    fn connected_cover_dominates_cover((_f, g) in geometric(10)) {
        let o = SolveOptions::default();
        let vc = opt(solve_vertex_cover(&g, &o)).unwrap();
        match opt(solve_connected_vertex_cover(&g, &o)) {
            Some(c) => prop_assert!(c >= vc),
            None => prop_assert!(g.components().iter().filter(|c| c.len() > 1).count() > 1),
        }
    }

    #[test]
    fn separator_recursion_agrees((f, g) in geometric(40)) {
        let (set, _) = solve_separator_recursion_is(&f, &SeparatorOptions::default()).unwrap();
        prop_assert!(g.is_independent(&set));
        prop_assert_eq!(Some(set.len()), opt(solve_independent_set(&g, &SolveOptions::default())));
    }
}

#[test]
fn separator_method_on_sparse_instance() {
    let (f, g) = instance(2, 30, 9, 1.0, false);
    let o = SolveOptions { method: geosep::solvers::DecompositionMethod::Separator, base_c: 1.0, ..SolveOptions::default() };
    let a = solve(&g, Some(&f), &Problem::IndependentSet, &o).unwrap();
    let b = solve(&g, Some(&f), &Problem::IndependentSet, &SolveOptions::default()).unwrap();
    assert_eq!(a.optimum, b.optimum);
    assert!(verify_witness(&g, &Problem::IndependentSet, &a.witness));
}
