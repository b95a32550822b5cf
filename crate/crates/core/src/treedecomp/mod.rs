//! Weighted tree decompositions of contracted graphs, built either by
//! separator recursion or through the blowup graph and a min-fill
//! elimination ordering.

mod nice;

pub use nice::{to_traditional, NiceKind, NiceNode, TraditionalTreeDecomposition};

use crate::contraction::ContractedGraph;
use crate::error::Result;
use crate::graph::Graph;
use serde_json::json;

/// A tree decomposition whose bags hold nodes of a weighted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTreeDecomposition {
    /// Sorted bags.
    pub bags: Vec<Vec<usize>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
    pub weighted_width: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecompositionReport {
    pub violations: Vec<String>,
    /// Largest bag size minus one.
    pub width: usize,
    /// Largest bag weight.
    pub weighted_width: f64,
}

impl DecompositionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn bag_weight(bag: &[usize], weights: &[f64]) -> f64 {
    bag.iter().map(|&v| weights[v]).sum()
}

/// Checks the three tree-decomposition axioms and that the index graph is a
/// tree, and recomputes both widths.
pub fn validate_decomposition(bags: &[Vec<usize>], edges: &[(usize, usize)], g: &Graph, weights: &[f64]) -> DecompositionReport {
    let mut violations = Vec::new();
    let t = bags.len();
    if t == 0 {
        if g.n() > 0 {
            violations.push("no bags".to_string());
        }
        return DecompositionReport { violations, width: 0, weighted_width: 0.0 };
    }
    let mut tree_edges = Vec::new();
    for &(a, b) in edges {
        if a >= t || b >= t || a == b {
            violations.push(format!("bad tree edge ({a},{b})"));
        } else {
            tree_edges.push((a, b));
        }
    }
    let tree = Graph::from_edges(t, &tree_edges).unwrap_or_else(|_| Graph::empty(t));
    if tree_edges.len() != t - 1 || tree.edge_count() != t - 1 || tree.components().len() != 1 {
        violations.push("bags do not form a tree".to_string());
    }
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                violations.push(format!("bag {i} holds unknown vertex {v}"));
            } else {
                occurs[v].push(i);
            }
        }
    }
    for (v, occ) in occurs.iter().enumerate() {
        if occ.is_empty() {
            violations.push(format!("vertex {v} is in no bag"));
        }
    }
    if violations.is_empty() {
        // in a rooted tree, the bags holding v are connected iff exactly one
        // of them has a parent without v
        let mut parent = vec![usize::MAX; t];
        let mut seen = vec![false; t];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &b in tree.neighbors(a) {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = a;
                    stack.push(b);
                }
            }
        }
        let mut tops = vec![0usize; g.n()];
        for (i, bag) in bags.iter().enumerate() {
            for &v in bag {
                if parent[i] == usize::MAX || bags[parent[i]].binary_search(&v).is_err() {
                    tops[v] += 1;
                }
            }
        }
        for (v, &k) in tops.iter().enumerate() {
            if k > 1 {
                violations.push(format!("bags holding vertex {v} are not connected"));
            }
        }
    }
    for (u, v) in g.edges() {
        let covered = occurs[u].iter().any(|i| bags[*i].binary_search(&v).is_ok());
        if !covered {
            violations.push(format!("edge ({u},{v}) is in no bag"));
        }
    }
    DecompositionReport {
        violations,
        width: bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1),
        weighted_width: bags.iter().map(|b| bag_weight(b, weights)).fold(0.0, f64::max),
    }
}

impl WeightedTreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>, weights: &[f64]) -> Self {
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let weighted_width = bags.iter().map(|b| bag_weight(b, weights)).fold(0.0, f64::max);
        WeightedTreeDecomposition { bags, edges, weighted_width }
    }

    pub fn validate(&self, g: &Graph, weights: &[f64]) -> DecompositionReport {
        validate_decomposition(&self.bags, &self.edges, g, weights)
    }

    /// Contracts tree edges whose one bag contains the other.
    pub fn simplify(&self, weights: &[f64]) -> Self {
        let t = self.bags.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); t];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // union-find target of each bag after merging into a superset neighbor
        let mut rep: Vec<usize> = (0..t).collect();
        fn find(rep: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while rep[r] != r {
                r = rep[r];
            }
            let mut y = x;
            while rep[y] != r {
                let next = rep[y];
                rep[y] = r;
                y = next;
            }
            r
        }
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let mut bags = self.bags.clone();
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
            if subset(&bags[ra], &bags[rb]) {
                rep[ra] = rb;
            } else if subset(&bags[rb], &bags[ra]) {
                rep[rb] = ra;
            }
        }
        let mut index = vec![usize::MAX; t];
        let mut out_bags = Vec::new();
        for i in 0..t {
            let r = find(&mut rep, i);
            if index[r] == usize::MAX {
                index[r] = out_bags.len();
                out_bags.push(std::mem::take(&mut bags[r]));
            }
        }
        let mut edges = Vec::new();
        for &(a, b) in &self.edges {
            let (x, y) = (index[find(&mut rep, a)], index[find(&mut rep, b)]);
            if x != y {
                edges.push((x.min(y), x.max(y)));
            }
        }
        WeightedTreeDecomposition::new(out_bags, edges, weights)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "kind": "weighted_tree_decomposition",
            "bags": self.bags,
            "edges": self.edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "weighted_width": self.weighted_width,
        })
    }
}

/// Separator recursion: separate, decompose each component of the rest,
/// chain the component roots and add the separator to every bag. A set whose
/// weight is at most `base` becomes a single bag.
pub fn decompose_by_separator<F>(gp: &ContractedGraph, base: f64, mut sep_fn: F) -> Result<WeightedTreeDecomposition>
where
    F: FnMut(&[usize]) -> Result<Vec<usize>>,
{
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    if gp.graph.n() > 0 {
        let all: Vec<usize> = (0..gp.graph.n()).collect();
        recurse(gp, base, &mut sep_fn, &all, &mut bags, &mut edges)?;
    }
    Ok(WeightedTreeDecomposition::new(bags, edges, &gp.weights))
}

fn recurse<F>(
    gp: &ContractedGraph,
    base: f64,
    sep_fn: &mut F,
    set: &[usize],
    bags: &mut Vec<Vec<usize>>,
    edges: &mut Vec<(usize, usize)>,
) -> Result<usize>
where
    F: FnMut(&[usize]) -> Result<Vec<usize>>,
{
    let single = |bags: &mut Vec<Vec<usize>>, set: &[usize]| {
        bags.push(set.to_vec());
        bags.len() - 1
    };
    if bag_weight(set, &gp.weights) <= base {
        return Ok(single(bags, set));
    }
    let sep = sep_fn(set)?;
    let mut mask = vec![false; gp.graph.n()];
    set.iter().for_each(|&v| mask[v] = true);
    sep.iter().for_each(|&v| mask[v] = false);
    let comps = gp.graph.components_within(&mask);
    if comps.is_empty() || (comps.len() == 1 && comps[0].len() == set.len()) {
        return Ok(single(bags, set));
    }
    let start = bags.len();
    let mut roots = Vec::new();
    for c in &comps {
        roots.push(recurse(gp, base, sep_fn, c, bags, edges)?);
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    for bag in &mut bags[start..] {
        bag.extend_from_slice(&sep);
    }
    Ok(roots[0])
}

/// The blowup graph: node `v` becomes a clique of `⌈γ(|V_v|)⌉` vertices joined
/// to the cliques of its neighbors. Returns the graph and the clique of every node.
pub fn blowup(gp: &ContractedGraph, sizes: &[usize]) -> (Graph, Vec<Vec<usize>>) {
    let mut cliques = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        cliques.push((next..next + s.max(1)).collect::<Vec<_>>());
        next += s.max(1);
    }
    let mut edges = Vec::new();
    for c in &cliques {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    for (u, v) in gp.graph.edges() {
        for &a in &cliques[u] {
            for &b in &cliques[v] {
                edges.push((a, b));
            }
        }
    }
    (Graph::from_edges(next, &edges).expect("blowup edges are valid"), cliques)
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                (b != 0).then(|| {
                    let i = b.trailing_zeros() as usize;
                    b &= b - 1;
                    w * 64 + i
                })
            })
        })
    }
    fn count_minus(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }
}

/// Greedy min-fill elimination ordering (ties: smaller degree, then smaller id).
pub fn min_fill_ordering(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut b = BitSet::new(n);
            g.neighbors(v).iter().for_each(|&u| b.insert(u));
            b
        })
        .collect();
    let degree = |adj: &[BitSet], v: usize| adj[v].iter().count();
    let fill = |adj: &[BitSet], v: usize| {
        let nb: Vec<usize> = adj[v].iter().collect();
        // pairs of neighbors that are not adjacent, each counted twice
        let missing: usize = nb.iter().map(|&u| adj[v].count_minus(&adj[u]) - 1).sum();
        missing / 2
    };
    let mut key: Vec<(usize, usize)> = (0..n).map(|v| (fill(&adj, v), degree(&adj, v))).collect();
    let mut queue: std::collections::BTreeSet<(usize, usize, usize)> =
        (0..n).map(|v| (key[v].0, key[v].1, v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut gone = vec![false; n];
    while let Some((_, _, v)) = queue.pop_first() {
        order.push(v);
        gone[v] = true;
        let nb: Vec<usize> = adj[v].iter().collect();
        for &a in &nb {
            adj[a].remove(v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        let mut dirty = BitSet::new(n);
        for &a in &nb {
            dirty.insert(a);
            for b in adj[a].iter() {
                dirty.insert(b);
            }
        }
        for u in dirty.iter() {
            if gone[u] {
                continue;
            }
            let k = (fill(&adj, u), degree(&adj, u));
            if k != key[u] {
                queue.remove(&(key[u].0, key[u].1, u));
                key[u] = k;
                queue.insert((k.0, k.1, u));
            }
        }
    }
    order
}

/// Tree decomposition from an elimination ordering: one bag per vertex made of
/// the vertex and its later neighbors in the filled graph; forest roots chained.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut later: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for v in 0..n {
        for &u in g.neighbors(v) {
            if pos[u] > pos[v] {
                later[v].insert(u);
            }
        }
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for &v in order {
        let nb: Vec<usize> = later[v].iter().collect();
        if let Some(&p) = nb.iter().min_by_key(|&&u| pos[u]) {
            parent[pos[v]] = Some(pos[p]);
            for &u in &nb {
                if u != p {
                    later[p].insert(u);
                }
            }
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => edges.push((i, *p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    (bags, edges)
}

/// Robust path: decompose the blowup graph by min-fill and map back, keeping a
/// node in a bag iff its whole clique is there.
pub fn decompose_by_blowup(gp: &ContractedGraph) -> WeightedTreeDecomposition {
    if gp.graph.n() == 0 {
        return WeightedTreeDecomposition::new(Vec::new(), Vec::new(), &gp.weights);
    }
    let (h, cliques) = blowup(gp, &blowup_sizes(gp));
    let order = min_fill_ordering(&h);
    let (hbags, edges) = decomposition_from_ordering(&h, &order);
    let mut owner = vec![0; h.n()];
    for (v, c) in cliques.iter().enumerate() {
        c.iter().for_each(|&x| owner[x] = v);
    }
    let bags: Vec<Vec<usize>> = hbags
        .iter()
        .map(|hb| {
            let mut nodes: Vec<usize> = hb.iter().map(|&x| owner[x]).collect();
            nodes.sort_unstable();
            nodes.dedup();
            nodes.retain(|&v| cliques[v].iter().all(|x| hb.binary_search(x).is_ok()));
            nodes
        })
        .collect();
    WeightedTreeDecomposition::new(bags, edges, &gp.weights).simplify(&gp.weights)
}

/// Blowup sizes `⌈γ(|V_i|)⌉` of the contracted nodes.
pub fn blowup_sizes(gp: &ContractedGraph) -> Vec<usize> {
    gp.weights.iter().map(|&w| ((w - 1e-9).ceil() as usize).max(1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract;
    use crate::graph::named;
    use crate::weight::WeightFunction;

    fn unit(g: &Graph) -> ContractedGraph {
        let classes: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
        contract(g, &classes, WeightFunction::Unit).unwrap()
    }

    #[test]
    fn blowup_examples() {
        let gp = unit(&named::path(3));
        let (h, _) = blowup(&gp, &[1, 1, 1]);
        assert_eq!(h, named::path(3));
        let (h, _) = blowup(&unit(&Graph::empty(1)), &[3]);
        assert_eq!(h, named::complete(3));
        let (h, _) = blowup(&unit(&named::path(2)), &[2, 2]);
        assert_eq!(h, named::complete(4));
    }

    #[test]
    fn tree_has_width_two_under_unit_weights() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let gp = unit(&g);
        let td = decompose_by_blowup(&gp);
        let r = td.validate(&g, &gp.weights);
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(td.weighted_width <= 2.0);
    }

    #[test]
    fn separator_recursion_on_a_path() {
        let g = named::path(8);
        let gp = unit(&g);
        let td = decompose_by_separator(&gp, 2.0, |set| Ok(vec![set[set.len() / 2]])).unwrap();
        let r = td.validate(&g, &gp.weights);
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(td.weighted_width <= 5.0);
    }

    #[test]
    fn validator_catches_missing_edge() {
        let g = named::path(3);
        let bags = vec![vec![0, 1], vec![2]];
        let r = validate_decomposition(&bags, &[(0, 1)], &g, &[1.0; 3]);
        assert!(!r.is_valid());
        let bags = vec![vec![0, 1], vec![1, 2]];
        assert!(validate_decomposition(&bags, &[(0, 1)], &g, &[1.0; 3]).is_valid());
    }
}
