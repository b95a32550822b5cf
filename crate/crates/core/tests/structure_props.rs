use geosep::contraction::build_kappa_partition;
use geosep::geometry::{build_intersection_graph, build_intersection_graph_naive};
use geosep::oracle::{gen_instance, GeneratorConfig, ShapeMix};
use geosep::separator::{build_separator, separator_for_contraction, SeparatorOptions};
use geosep::treedecomp::{decompose_by_blowup, decompose_by_separator, to_traditional};
use geosep::{Graph, ObjectSet, WeightFunction};
use proptest::prelude::*;

fn geometric(lo: usize, hi: usize) -> impl Strategy<Value = (ObjectSet, Graph)> {
    (2usize..=3, lo..=hi, any::<u64>(), 1.0f64..4.0, 0u8..3).prop_map(|(d, n, seed, sigma, s)| {
        let shapes = [ShapeMix::Balls, ShapeMix::Boxes, ShapeMix::Mixed][s as usize];
        let f = gen_instance(&GeneratorConfig { sigma, shapes, ..GeneratorConfig::new(d, n, seed) }).unwrap();
        let g = build_intersection_graph(&f).unwrap().graph;
        (f, g)
    })
}

fn reachable(g: &Graph, set: &[usize]) -> bool {
    let Some(&s) = set.first() else { return true };
    let inside: std::collections::HashSet<usize> = set.iter().copied().collect();
    let mut seen = std::collections::HashSet::from([s]);
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if inside.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == inside.len()
}

/// Tree-decomposition axioms checked directly: the index graph is a tree,
/// every vertex and edge is in a bag, and each vertex's bags are connected.
fn td_violation(bags: &[Vec<usize>], edges: &[(usize, usize)], g: &Graph) -> Option<String> {
    let k = bags.len();
    let tree = Graph::from_edges(k, edges).ok()?;
    if edges.len() + 1 != k.max(1) || (k > 0 && !reachable(&tree, &(0..k).collect::<Vec<_>>())) {
        return Some("bags do not form a tree".into());
    }
    for v in 0..g.n() {
        let holding: Vec<usize> = (0..k).filter(|&b| bags[b].contains(&v)).collect();
        if holding.is_empty() {
            return Some(format!("vertex {v} in no bag"));
        }
        if !reachable(&tree, &holding) {
            return Some(format!("bags of {v} are disconnected"));
        }
    }
    for (u, v) in g.edges() {
        if !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Some(format!("edge {u}-{v} in no bag"));
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bucketed_graph_equals_all_pairs((f, g) in geometric(2, 120)) {
        prop_assert_eq!(build_intersection_graph_naive(&f).graph, g);
    }

    #[test]
    fn separators_are_valid((f, g) in geometric(20, 300)) {
        let sep = build_separator(&f, &SeparatorOptions::default()).unwrap();
        let n = g.n();
        let mut all: Vec<usize> = sep.cliques.iter().flatten().chain(&sep.side_a).chain(&sep.side_b).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for c in &sep.cliques {
            prop_assert!(c.iter().all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v))));
        }
        for &a in &sep.side_a {
            prop_assert!(sep.side_b.iter().all(|&b| !g.has_edge(a, b)));
        }
        let p = 6usize.pow(f.dimension as u32);
        prop_assert!(sep.side_a.len().max(sep.side_b.len()) * (p + 1) <= p * n);
        let w: f64 = sep.cliques.iter().map(|c| ((c.len() + 1) as f64).log2()).sum();
        prop_assert!((w - sep.weight).abs() < 1e-9);
    }

    #[test]
    fn kappa_partitions_are_valid((_f, g) in geometric(1, 200), unit in any::<bool>()) {
        let gamma = if unit { WeightFunction::Unit } else { WeightFunction::Log };
        let p = build_kappa_partition(&g, gamma);
        let mut all: Vec<usize> = p.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for (i, class) in p.classes.iter().enumerate() {
            prop_assert!(reachable(&g, class));
            let mut covered: Vec<usize> = p.clique_covers[i].iter().flatten().copied().collect();
            covered.sort_unstable();
            prop_assert_eq!(&covered, class);
            prop_assert!(p.clique_covers[i].len() <= p.kappa_hat);
            prop_assert!((p.contracted.weights[i] - gamma.eval(class.len())).abs() < 1e-12);
        }
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let touching = p.classes[i].iter().any(|&u| p.classes[j].iter().any(|&v| g.has_edge(u, v)));
                prop_assert_eq!(touching, p.contracted.graph.has_edge(i, j));
            }
        }
    }

    #[test]
    fn decompositions_are_valid((f, g) in geometric(5, 150)) {
        let p = build_kappa_partition(&g, WeightFunction::Log);
        let gp = &p.contracted;
        let blow = decompose_by_blowup(gp);
        prop_assert_eq!(td_violation(&blow.bags, &blow.edges, &gp.graph), None);
        let opts = SeparatorOptions::default();
        let base = 4.0 * (g.n() as f64).powf(1.0 - 1.0 / f.dimension as f64);
        let sep = decompose_by_separator(gp, base, |set| Ok(separator_for_contraction(&p, &f, set, &opts)?.vertices())).unwrap();
        prop_assert_eq!(td_violation(&sep.bags, &sep.edges, &gp.graph), None);
        for w in [&blow, &sep] {
            let heaviest = w.bags.iter().map(|b| b.iter().map(|&c| gp.weights[c]).sum::<f64>()).fold(0.0, f64::max);
            prop_assert!((heaviest - w.weighted_width).abs() < 1e-9);
            let nice = to_traditional(w, &p);
            prop_assert!(nice.validate(&g).is_empty());
        }
    }
}
