//! Simple undirected graphs with sorted adjacency lists.

use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return invalid(format!("self-loop at {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Connected components of the subgraph induced by `mask`, each sorted.
    pub fn components_within(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if !mask[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if mask[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n()])
    }

    /// Whether `vs` induces a connected subgraph (the empty set counts as connected).
    pub fn is_connected_set(&self, vs: &[usize]) -> bool {
        let mut mask = vec![false; self.n()];
        for &v in vs {
            mask[v] = true;
        }
        self.components_within(&mask).len() <= 1
    }

    /// BFS distances from a set of sources; unreachable vertices get `None`.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                q.push_back(s);
            }
        }
        while let Some(u) = q.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `vs`, with vertex `i` of the result standing for `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                let mut a: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                a.sort_unstable();
                a
            })
            .collect();
        Graph { adj }
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n(), &edges).expect("permutation keeps edges valid")
    }

    /// Adds `k` isolated vertices.
    pub fn with_isolated(&self, k: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj.extend(std::iter::repeat_with(Vec::new).take(k));
        Graph { adj }
    }

    /// Canonical form: the lexicographically largest lower-triangle adjacency
    /// code over all vertex orders. Equal codes mean isomorphic graphs.
    /// Exponential in the worst case; meant for small graphs.
    pub fn canonical_form(&self) -> (usize, Vec<bool>) {
        let n = self.n();
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        let mut code = Vec::new();
        for _ in 0..n {
            let mut best: Option<Vec<bool>> = None;
            let mut next = Vec::new();
            for order in &frontier {
                for v in (0..n).filter(|v| !order.contains(v)) {
                    let row: Vec<bool> = order.iter().map(|&u| self.has_edge(u, v)).collect();
                    let keep = match &best {
                        None => true,
                        Some(b) => row >= *b,
                    };
                    if !keep {
                        continue;
                    }
                    if best.as_ref().is_none_or(|b| row > *b) {
                        best = Some(row);
                        next.clear();
                    }
                    let mut o = order.clone();
                    o.push(v);
                    next.push(o);
                }
            }
            code.extend(best.unwrap_or_default());
            frontier = next;
        }
        (n, code)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.edge_count() == other.edge_count() && self.canonical_form() == other.canonical_form()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(u, v)| [u, v]).collect();
        serde_json::to_value(GraphJson { kind: Some("graph".into()), n: self.n(), edges })
            .expect("graph serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Graph> {
        let j: GraphJson = serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Small named graphs used by tests and the minor-embedding demo.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..a {
            for v in 0..b {
                e.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &e).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }
}
