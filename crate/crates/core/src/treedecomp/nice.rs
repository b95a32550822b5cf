//! Nice tree decompositions over original vertices, derived from weighted
//! decompositions over partition classes.

use super::{validate_decomposition, WeightedTreeDecomposition};
use crate::contraction::KappaPartition;
use crate::graph::Graph;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted vertex bag.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored children-first; the root is the last node and has an empty bag.
#[derive(Debug, Clone, PartialEq)]
pub struct TraditionalTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

struct Builder<'a> {
    nodes: Vec<NiceNode>,
    classes: &'a [Vec<usize>],
}

impl Builder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce_class(&mut self, mut top: usize, class: usize) -> usize {
        for &v in &self.classes[class] {
            let mut bag = self.nodes[top].bag.clone();
            let at = bag.binary_search(&v).expect_err("introduced vertex is new");
            bag.insert(at, v);
            top = self.push(NiceKind::Introduce(v), bag, vec![top]);
        }
        top
    }

    fn forget_class(&mut self, mut top: usize, class: usize) -> usize {
        for &v in &self.classes[class] {
            let mut bag = self.nodes[top].bag.clone();
            let at = bag.binary_search(&v).expect("forgotten vertex is present");
            bag.remove(at);
            top = self.push(NiceKind::Forget(v), bag, vec![top]);
        }
        top
    }
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

/// Expands every class bag into runs of per-vertex introduces and forgets,
/// keeping each class contiguous, with binary joins.
pub fn to_traditional(w: &WeightedTreeDecomposition, p: &KappaPartition) -> TraditionalTreeDecomposition {
    let mut b = Builder { nodes: Vec::new(), classes: &p.classes };
    let t = w.bags.len();
    if t == 0 {
        b.push(NiceKind::Leaf, Vec::new(), Vec::new());
        return TraditionalTreeDecomposition { nodes: b.nodes, class_of: p.class_of.clone(), classes: p.classes.clone() };
    }
    let mut adj = vec![Vec::new(); t];
    for &(x, y) in &w.edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; t];
    let mut seen = vec![false; t];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
        i += 1;
    }
    let mut children = vec![Vec::new(); t];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }
    let mut top = vec![usize::MAX; t];
    for &x in order.iter().rev() {
        let bag = &w.bags[x];
        let mut branches = Vec::new();
        for &c in &children[x] {
            let mut r = top[c];
            for cls in minus(&w.bags[c], bag) {
                r = b.forget_class(r, cls);
            }
            for cls in minus(bag, &w.bags[c]) {
                r = b.introduce_class(r, cls);
            }
            branches.push(r);
        }
        if branches.is_empty() {
            let mut r = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            for &cls in bag {
                r = b.introduce_class(r, cls);
            }
            branches.push(r);
        }
        let mut acc = branches[0];
        for &r in &branches[1..] {
            let vb = b.nodes[acc].bag.clone();
            acc = b.push(NiceKind::Join, vb, vec![acc, r]);
        }
        top[x] = acc;
    }
    let mut r = top[0];
    for &cls in &w.bags[0] {
        r = b.forget_class(r, cls);
    }
    if r != b.nodes.len() - 1 {
        unreachable!("the root is created last");
    }
    TraditionalTreeDecomposition { nodes: b.nodes, class_of: p.class_of.clone(), classes: p.classes.clone() }
}

impl TraditionalTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Largest total weight of the classes meeting a single bag.
    pub fn class_weight(&self, weights: &[f64]) -> f64 {
        let mut best: f64 = 0.0;
        let mut mark = vec![false; self.classes.len()];
        for node in &self.nodes {
            let mut touched = Vec::new();
            for &v in &node.bag {
                let c = self.class_of[v];
                if !mark[c] {
                    mark[c] = true;
                    touched.push(c);
                }
            }
            best = best.max(touched.iter().map(|&c| weights[c]).sum());
            touched.iter().for_each(|&c| mark[c] = false);
        }
        best
    }

    /// Nice-grammar, class-contiguity and tree-decomposition checks.
    pub fn validate(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let mut has_parent = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                if c >= i {
                    out.push(format!("node {i} has child {c} that is not stored before it"));
                    continue;
                }
                if has_parent[c] {
                    out.push(format!("node {c} has two parents"));
                }
                has_parent[c] = true;
            }
            let kid = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && kid(0).binary_search(&v).is_err() && {
                        let mut b = kid(0).clone();
                        b.push(v);
                        b.sort_unstable();
                        b == node.bag
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && minus(kid(0), &[v]) == node.bag && kid(0).contains(&v) && {
                        let class = &self.classes[self.class_of[v]];
                        let full = class.iter().all(|u| kid(0).binary_search(u).is_ok());
                        let run = matches!(self.nodes[node.children[0]].kind,
                            NiceKind::Forget(u) if self.class_of[u] == self.class_of[v]);
                        if !full && !run {
                            out.push(format!("vertex {v} forgotten before its class was complete"));
                        }
                        true
                    }
                }
                NiceKind::Join => node.children.len() == 2 && *kid(0) == node.bag && *kid(1) == node.bag,
            };
            if !ok {
                out.push(format!("node {i} violates the {:?} rule", node.kind));
            }
        }
        if !self.nodes.is_empty() && !self.nodes[self.root()].bag.is_empty() {
            out.push("root bag is not empty".to_string());
        }
        if has_parent.iter().filter(|&&x| !x).count() != 1 {
            out.push("nodes do not form a single rooted tree".to_string());
        }
        let bags: Vec<Vec<usize>> = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((c, i));
            }
        }
        out.extend(validate_decomposition(&bags, &edges, g, &vec![1.0; g.n()]).violations);
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .map(|x| {
                let (kind, v) = match x.kind {
                    NiceKind::Leaf => ("leaf", None),
                    NiceKind::Introduce(v) => ("introduce", Some(v)),
                    NiceKind::Forget(v) => ("forget", Some(v)),
                    NiceKind::Join => ("join", None),
                };
                json!({"type": kind, "vertex": v, "bag": x.bag, "children": x.children})
            })
            .collect();
        json!({"kind": "nice_tree_decomposition", "root": self.root(), "nodes": nodes})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::treedecomp::decompose_by_blowup;
    use crate::weight::WeightFunction;

    #[test]
    fn one_class_gives_introduces_then_forgets() {
        let g = named::complete(4);
        let p = KappaPartition::from_classes(&g, vec![vec![0, 1, 2, 3]], WeightFunction::Log).unwrap();
        let w = decompose_by_blowup(&p.contracted);
        let t = to_traditional(&w, &p);
        let kinds: Vec<_> = t.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(kinds[0], NiceKind::Leaf);
        assert!(kinds[1..5].iter().all(|k| matches!(k, NiceKind::Introduce(_))));
        assert!(kinds[5..].iter().all(|k| matches!(k, NiceKind::Forget(_))));
        assert_eq!(kinds.len(), 9);
        assert!(t.validate(&g).is_empty());
    }

    #[test]
    fn petersen_round_trip() {
        let g = named::petersen();
        let p = crate::contraction::build_kappa_partition(&g, WeightFunction::Log);
        let w = decompose_by_blowup(&p.contracted);
        let t = to_traditional(&w, &p);
        assert!(t.validate(&g).is_empty(), "{:?}", t.validate(&g));
        assert!(t.class_weight(&p.contracted.weights) <= w.weighted_width + 1e-9);
    }
}
