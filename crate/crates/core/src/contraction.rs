//! κ-partitions built from a maximal independent set, and 𝒫-contractions.

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::weight::WeightFunction;
use serde_json::json;

/// The graph on partition classes, with loops and parallel edges removed.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedGraph {
    pub graph: Graph,
    /// Class sizes `|V_i|`.
    pub sizes: Vec<usize>,
    /// Node weights `γ(|V_i|)`.
    pub weights: Vec<f64>,
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KappaPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub clique_covers: Vec<Vec<Vec<usize>>>,
    pub kappa_hat: usize,
    pub gamma: WeightFunction,
    pub contracted: ContractedGraph,
}

/// Greedy maximal independent set, scanning vertices in id order.
pub fn greedy_mis(g: &Graph) -> Vec<usize> {
    let mut blocked = vec![false; g.n()];
    let mut s = Vec::new();
    for v in 0..g.n() {
        if !blocked[v] {
            s.push(v);
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    s
}

/// Contracts each class to a node. `classes` must partition the vertex set.
pub fn contract(g: &Graph, classes: &[Vec<usize>], gamma: WeightFunction) -> Result<ContractedGraph> {
    let class_of = class_index(g.n(), classes)?;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (class_of[u], class_of[v]);
        if a != b {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(classes.len(), &edges)?;
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    Ok(ContractedGraph {
        max_degree: graph.max_degree(),
        weights: sizes.iter().map(|&s| gamma.eval(s)).collect(),
        sizes,
        graph,
    })
}

fn class_index(n: usize, classes: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut class_of = vec![usize::MAX; n];
    for (i, c) in classes.iter().enumerate() {
        if c.is_empty() {
            return invalid(format!("class {i} is empty"));
        }
        for &v in c {
            if v >= n {
                return invalid(format!("vertex {v} out of range"));
            }
            if class_of[v] != usize::MAX {
                return invalid(format!("vertex {v} appears in two classes"));
            }
            class_of[v] = i;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return invalid(format!("vertex {v} is in no class"));
    }
    Ok(class_of)
}

/// Greedy clique cover of `class`: repeatedly grow a maximal clique from the
/// smallest uncovered vertex, scanning candidates in id order.
pub fn greedy_clique_cover(g: &Graph, class: &[usize]) -> Vec<Vec<usize>> {
    let mut rest: Vec<usize> = class.to_vec();
    rest.sort_unstable();
    let mut cover = Vec::new();
    while !rest.is_empty() {
        let mut clique = vec![rest[0]];
        for &u in &rest[1..] {
            if clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        rest.retain(|v| !clique.contains(v));
        cover.push(clique);
    }
    cover
}

impl KappaPartition {
    /// Partition from given classes; covers are computed greedily.
    pub fn from_classes(g: &Graph, mut classes: Vec<Vec<usize>>, gamma: WeightFunction) -> Result<Self> {
        for c in &mut classes {
            c.sort_unstable();
        }
        let contracted = contract(g, &classes, gamma)?;
        let class_of = class_index(g.n(), &classes)?;
        let clique_covers: Vec<_> = classes.iter().map(|c| greedy_clique_cover(g, c)).collect();
        let kappa_hat = clique_covers.iter().map(Vec::len).max().unwrap_or(0);
        Ok(KappaPartition { classes, class_of, clique_covers, kappa_hat, gamma, contracted })
    }

    /// Every vertex in its own class.
    pub fn trivial(g: &Graph, gamma: WeightFunction) -> Self {
        Self::from_classes(g, (0..g.n()).map(|v| vec![v]).collect(), gamma).expect("singletons partition V")
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.contracted.max_degree
    }

    /// Structural violations against `g`; empty when the partition is valid.
    pub fn validate(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = class_index(g.n(), &self.classes) {
            out.push(e.to_string());
            return out;
        }
        for (i, c) in self.classes.iter().enumerate() {
            if !g.is_connected_set(c) {
                out.push(format!("class {i} is not connected"));
            }
            let mut covered: Vec<usize> = self.clique_covers[i].iter().flatten().copied().collect();
            covered.sort_unstable();
            if covered != *c {
                out.push(format!("cover of class {i} does not partition it"));
            }
            for q in &self.clique_covers[i] {
                if !g.is_clique(q) {
                    out.push(format!("cover of class {i} contains a non-clique"));
                }
            }
            if self.clique_covers[i].len() > self.kappa_hat {
                out.push(format!("class {i} needs more than κ̂ cliques"));
            }
        }
        out
    }

    /// Classes within contracted distance `r` of class `c`, including `c`.
    pub fn class_ball(&self, c: usize, r: usize) -> Vec<usize> {
        let dist = self.contracted.graph.distances_from(&[c]);
        (0..self.len()).filter(|&i| matches!(dist[i], Some(x) if x <= r)).collect()
    }

    /// Reads classes, covers and γ back; the contracted graph is rebuilt
    /// from `g`. Covers are taken as given, so `validate` still applies.
    pub fn from_json_value(v: &serde_json::Value, g: &Graph) -> Result<Self> {
        fn field<T: serde::de::DeserializeOwned>(v: &serde_json::Value, key: &str) -> Result<T> {
            serde_json::from_value(v[key].clone()).or_else(|e| invalid(format!("partition field {key}: {e}")))
        }
        let classes: Vec<Vec<usize>> = field(v, "classes")?;
        let clique_covers: Vec<Vec<Vec<usize>>> = field(v, "clique_covers")?;
        let gamma: WeightFunction = match v["gamma"].as_str() {
            Some(s) => s.parse().map_err(crate::Error::InvalidInput)?,
            None => return invalid("partition needs a weight function"),
        };
        if clique_covers.len() != classes.len() {
            return invalid("one clique cover per class is required");
        }
        let contracted = contract(g, &classes, gamma)?;
        let class_of = class_index(g.n(), &classes)?;
        let kappa_hat = field(v, "kappa_hat")?;
        Ok(KappaPartition { classes, class_of, clique_covers, kappa_hat, gamma, contracted })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "kind": "partition",
            "n": self.class_of.len(),
            "gamma": self.gamma.to_string(),
            "classes": self.classes,
            "clique_covers": self.clique_covers,
            "kappa_hat": self.kappa_hat,
            "max_degree": self.max_degree(),
            "contracted": {
                "n": self.len(),
                "edges": self.contracted.graph.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
                "weights": self.contracted.weights,
            },
        })
    }
}

/// The κ-partition obtained by attaching every vertex to its lowest-id
/// neighbor in the greedy maximal independent set.
pub fn build_kappa_partition(g: &Graph, gamma: WeightFunction) -> KappaPartition {
    let s = greedy_mis(g);
    let mut slot = vec![usize::MAX; g.n()];
    for (i, &v) in s.iter().enumerate() {
        slot[v] = i;
    }
    let mut classes: Vec<Vec<usize>> = s.iter().map(|&v| vec![v]).collect();
    for v in 0..g.n() {
        if slot[v] != usize::MAX {
            continue;
        }
        let owner = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| slot[u] != usize::MAX)
            .expect("maximality gives every vertex an independent neighbor");
        classes[slot[owner]].push(v);
    }
    KappaPartition::from_classes(g, classes, gamma).expect("stars around an independent set partition V")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn mis_examples() {
        assert_eq!(greedy_mis(&named::path(3)), vec![0, 2]);
        assert_eq!(greedy_mis(&named::complete(5)).len(), 1);
        assert_eq!(greedy_mis(&Graph::empty(4)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn partition_examples() {
        let p = build_kappa_partition(&named::complete(5), WeightFunction::Log);
        assert_eq!(p.classes, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(p.kappa_hat, 1);
        assert_eq!(p.max_degree(), 0);

        let g = named::path(4);
        let p = build_kappa_partition(&g, WeightFunction::Log);
        assert_eq!(p.classes, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(p.contracted.graph.edges(), vec![(0, 1)]);
        assert!(p.validate(&g).is_empty());
    }

    #[test]
    fn contract_examples() {
        let g = named::path(4);
        let c = contract(&g, &[vec![0, 1, 2, 3]], WeightFunction::Log).unwrap();
        assert_eq!((c.graph.n(), c.graph.edge_count()), (1, 0));
        let c = contract(&g, &(0..4).map(|v| vec![v]).collect::<Vec<_>>(), WeightFunction::Log).unwrap();
        assert_eq!(c.graph, g);
        assert!(contract(&g, &[vec![0, 1], vec![1, 2, 3]], WeightFunction::Log).is_err());
        assert!(contract(&g, &[vec![0, 1]], WeightFunction::Log).is_err());
    }
}
