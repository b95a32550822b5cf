//! Any graph without isolated vertices as a minor of a grid hypercube: each
//! vertex becomes a path in the bottom layer, each edge a pair of adjacent
//! points in the top layer, and the matching between them is wired.

use super::{box_points, wire_matching, GridPoint, Wiring, WiringInstance};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEmbedding {
    pub d: usize,
    /// Side of a hypercube containing every point.
    pub side: i64,
    pub points: Vec<GridPoint>,
    /// Branch set (vertex of the input graph) of each point.
    pub owner: Vec<usize>,
    /// Grid edges of the model, as point indices.
    pub edges: Vec<(usize, usize)>,
    pub wiring: Wiring,
}

/// Points of `Box(n)` in an order where consecutive points are adjacent.
pub(crate) fn snake(n: &[i64]) -> Vec<GridPoint> {
    let Some((&s, rest)) = n.split_first() else {
        return vec![Vec::new()];
    };
    let inner = snake(rest);
    let mut out = Vec::with_capacity(inner.len() * s as usize);
    for c in 1..=s {
        let block: Box<dyn Iterator<Item = &GridPoint>> =
            if c % 2 == 1 { Box::new(inner.iter()) } else { Box::new(inner.iter().rev()) };
        out.extend(block.map(|p| [vec![c], p.clone()].concat()));
    }
    out
}

pub fn embed_minor(g: &Graph, d: usize) -> Result<MinorEmbedding> {
    if d < 3 {
        return Err(Error::Unsupported(format!("minor embedding needs d ≥ 3, got {d}")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return invalid(format!("vertex {v} is isolated"));
    }
    let edges = g.edges();
    if edges.is_empty() {
        return invalid("graph has no edges");
    }
    let m = edges.len();
    let mut s = 1i64;
    while s.pow(d as u32 - 1) < 2 * m as i64 {
        s += 1;
    }
    let n = vec![s; d - 1];
    let order = snake(&n);
    debug_assert_eq!(box_points(&n).len(), order.len());
    // Bottom: the path of v visits one point per incident edge.
    let mut slot: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next = 0;
    for v in 0..g.n() {
        for &u in g.neighbors(v) {
            slot.insert((v, u), next);
            next += 1;
        }
    }
    // Top: edge uv gets two consecutive points, u's side first.
    let mut pairs = Vec::with_capacity(2 * m);
    let mut wire_owner = Vec::with_capacity(2 * m);
    for (e, &(u, v)) in edges.iter().enumerate() {
        for (k, (a, b)) in [(u, v), (v, u)].into_iter().enumerate() {
            pairs.push((order[slot[&(a, b)]].clone(), order[2 * e + k].clone()));
            wire_owner.push(a);
        }
    }
    let inst = WiringInstance { d, n: n.clone(), pairs };
    let wiring = wire_matching(&inst)?;
    let mut points = Vec::new();
    let mut owner = Vec::new();
    let mut model_edges = Vec::new();
    let mut index: HashMap<GridPoint, usize> = HashMap::new();
    let mut first = Vec::with_capacity(wiring.wires.len());
    let mut last = Vec::with_capacity(wiring.wires.len());
    for (w, &o) in wiring.wires.iter().zip(&wire_owner) {
        let mut prev: Option<usize> = None;
        for p in &w.path {
            let i = *index.entry(p.clone()).or_insert_with(|| {
                points.push(p.clone());
                owner.push(o);
                points.len() - 1
            });
            if let Some(j) = prev {
                model_edges.push((j, i));
            }
            prev = Some(i);
        }
        first.push(index[&w.path[0]]);
        last.push(prev.expect("nonempty wire"));
    }
    // Bottom paths: consecutive slots of the same vertex.
    let mut by_slot = vec![0; 2 * m];
    for (k, (p, _)) in inst.pairs.iter().enumerate() {
        let s = order.iter().position(|x| x == p).expect("slot point");
        by_slot[s] = first[k];
    }
    for v in 0..g.n() {
        let slots: Vec<usize> = g.neighbors(v).iter().map(|&u| slot[&(v, u)]).collect();
        for w in slots.windows(2) {
            model_edges.push((by_slot[w[0]], by_slot[w[1]]));
        }
    }
    // Top: the two halves of each subdivided edge.
    for e in 0..m {
        model_edges.push((last[2 * e], last[2 * e + 1]));
    }
    let side = wiring.sides.iter().copied().max().unwrap_or(1).max(wiring.height);
    Ok(MinorEmbedding { d, side, points, owner, edges: model_edges, wiring })
}

/// Checks the model and contracts every branch set to a vertex.
pub fn contract_embedding(e: &MinorEmbedding, vertices: usize) -> Result<Graph> {
    let fail = |m: String| Err(Error::VerificationFailed(m));
    if e.owner.len() != e.points.len() || e.owner.iter().any(|&o| o >= vertices) {
        return fail("branch set labels out of range".into());
    }
    if e.points.iter().any(|p| p.len() != e.d || p.iter().any(|&c| c < 1 || c > e.side)) {
        return fail("point outside the hypercube".into());
    }
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for &(a, b) in &e.edges {
        let step: i64 = e.points[a].iter().zip(&e.points[b]).map(|(x, y)| (x - y).abs()).sum();
        if step != 1 {
            return fail(format!("{:?} and {:?} are not grid neighbors", e.points[a], e.points[b]));
        }
        if e.owner[a] == e.owner[b] {
            inner.push((a, b));
        } else {
            outer.push((e.owner[a], e.owner[b]));
        }
    }
    let within = Graph::from_edges(e.points.len(), &inner)?;
    let mut seen = vec![false; vertices];
    for comp in within.components() {
        let o = e.owner[comp[0]];
        if seen[o] {
            return fail(format!("branch set {o} is disconnected"));
        }
        seen[o] = true;
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return fail(format!("branch set {v} is empty"));
    }
    Graph::from_edges(vertices, &outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn snake_steps_are_unit() {
        for n in [vec![3, 2], vec![2, 3, 2]] {
            let s = snake(&n);
            assert_eq!(s.len(), n.iter().product::<i64>() as usize);
            for w in s.windows(2) {
                assert_eq!(w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).sum::<i64>(), 1);
            }
        }
    }

    #[test]
    fn single_edge() {
        let g = named::path(2);
        let e = embed_minor(&g, 3).unwrap();
        assert_eq!(contract_embedding(&e, 2).unwrap(), g);
    }

    #[test]
    fn rejects_isolated_vertex() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(embed_minor(&g, 3).is_err());
    }

    #[test]
    fn named_graphs_survive_contraction() {
        for g in [named::complete(4), named::complete(5), named::complete_bipartite(3, 3), named::petersen()] {
            let e = embed_minor(&g, 3).unwrap();
            assert!(contract_embedding(&e, g.n()).unwrap().is_isomorphic(&g));
        }
    }
}
