//! Problem definitions and direct feasibility predicates.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum Problem {
    IndependentSet,
    VertexCover,
    /// Distance-`r` dominating set; `r = 1` is the ordinary dominating set.
    DominatingSet { r: usize },
    /// Smallest connected vertex set containing all terminals.
    SteinerTree { terminals: Vec<usize> },
    MaxInducedForest,
    FeedbackVertexSet,
    ConnectedVertexCover,
}

impl Problem {
    pub fn maximizes(&self) -> bool {
        matches!(self, Problem::IndependentSet | Problem::MaxInducedForest)
    }

    pub fn needs_connectivity(&self) -> bool {
        matches!(
            self,
            Problem::SteinerTree { .. }
                | Problem::MaxInducedForest
                | Problem::FeedbackVertexSet
                | Problem::ConnectedVertexCover
        )
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            Problem::IndependentSet => "is",
            Problem::VertexCover => "vc",
            Problem::DominatingSet { r: 1 } => "ds",
            Problem::DominatingSet { .. } => "rds",
            Problem::SteinerTree { .. } => "steiner",
            Problem::MaxInducedForest => "mif",
            Problem::FeedbackVertexSet => "fvs",
            Problem::ConnectedVertexCover => "cvc",
        }
    }

    /// Parameter checks against a graph on `n` vertices.
    pub fn check(&self, n: usize) -> Result<(), String> {
        match self {
            Problem::DominatingSet { r } if *r == 0 => Err("r must be at least 1".into()),
            Problem::SteinerTree { terminals } => {
                if terminals.is_empty() {
                    return Err("at least one terminal is required".into());
                }
                match terminals.iter().find(|&&t| t >= n) {
                    Some(t) => Err(format!("terminal {t} out of range")),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Problem::DominatingSet { r } if *r > 1 => write!(f, "rds(r={r})"),
            Problem::SteinerTree { terminals } => write!(f, "steiner({terminals:?})"),
            p => f.write_str(p.short_name()),
        }
    }
}

fn mask_of(n: usize, vs: &[usize]) -> Option<Vec<bool>> {
    let mut m = vec![false; n];
    for &v in vs {
        if v >= n || m[v] {
            return None;
        }
        m[v] = true;
    }
    Some(m)
}

fn is_vertex_cover(g: &Graph, m: &[bool]) -> bool {
    g.edges().iter().all(|&(u, v)| m[u] || m[v])
}

/// Whether `witness` is feasible for `problem` on `g`.
pub fn verify_witness(g: &Graph, problem: &Problem, witness: &[usize]) -> bool {
    let Some(m) = mask_of(g.n(), witness) else {
        return false;
    };
    match problem {
        Problem::IndependentSet => g.is_independent(witness),
        Problem::VertexCover => is_vertex_cover(g, &m),
        Problem::DominatingSet { r } => g.distances_from(witness).iter().all(|d| matches!(d, Some(x) if x <= r)),
        Problem::SteinerTree { terminals } => terminals.iter().all(|&t| t < g.n() && m[t]) && g.is_connected_set(witness),
        Problem::MaxInducedForest => is_forest(g, witness),
        Problem::FeedbackVertexSet => {
            let rest: Vec<usize> = (0..g.n()).filter(|&v| !m[v]).collect();
            is_forest(g, &rest)
        }
        Problem::ConnectedVertexCover => is_vertex_cover(g, &m) && g.is_connected_set(witness),
    }
}

/// Whether `vs` induces an acyclic subgraph.
pub fn is_forest(g: &Graph, vs: &[usize]) -> bool {
    let h = g.induced(vs);
    h.edge_count() + h.components().len() == h.n()
}
