//! Exact solvers: dynamic programming over traditional tree decompositions
//! built from a κ-partition, with per-class selection caps.

mod connect;
mod driver;
mod local;
mod seprec;

pub use seprec::{solve_separator_recursion_is, SeparatorRecursionStats};

use crate::contraction::{build_kappa_partition, KappaPartition};
use crate::error::{Error, Result};
use crate::geometry::ObjectSet;
use crate::graph::Graph;
use crate::problem::{verify_witness, Problem};
use crate::separator::{separator_for_contraction, H0Search, SeparatorOptions};
use crate::treedecomp::{decompose_by_blowup, decompose_by_separator, to_traditional, TraditionalTreeDecomposition};
use crate::weight::WeightFunction;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionMethod {
    /// Min-fill on the blowup of the contracted graph; works on any graph.
    #[default]
    Blowup,
    /// Recursive clique separators; needs the geometric objects.
    Separator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub gamma: WeightFunction,
    pub method: DecompositionMethod,
    /// Separator recursion stops at sets of weight `base_c · n^{1-1/d}`.
    pub base_c: f64,
    /// Discard partial solutions exceeding the per-class caps.
    pub prune: bool,
    pub h0: H0Search,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            gamma: WeightFunction::Log,
            method: DecompositionMethod::Blowup,
            base_c: 4.0,
            prune: true,
            h0: H0Search::Bisect,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub method: DecompositionMethod,
    pub weighted_width: f64,
    /// Largest bag of the traditional decomposition, minus one.
    pub width: usize,
    pub classes: usize,
    pub kappa_hat: usize,
    pub max_degree: usize,
    /// Selection cap per class, when pruning.
    pub cap: Option<usize>,
    pub peak_table: usize,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    #[serde(flatten)]
    pub problem: Problem,
    /// `None` when no feasible solution exists.
    pub optimum: Option<usize>,
    pub witness: Vec<usize>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["kind"] = "solve_result".into();
        v
    }
}

/// A decomposition ready for dynamic programming.
pub struct Prepared {
    pub partition: KappaPartition,
    pub weighted_width: f64,
    pub td: TraditionalTreeDecomposition,
    pub method: DecompositionMethod,
}

/// Builds the κ-partition and the traditional decomposition.
pub fn prepare(g: &Graph, geometry: Option<&ObjectSet>, opts: &SolveOptions) -> Result<Prepared> {
    let partition = build_kappa_partition(g, opts.gamma);
    let w = match (opts.method, geometry) {
        (DecompositionMethod::Blowup, _) => decompose_by_blowup(&partition.contracted),
        (DecompositionMethod::Separator, Some(f)) => {
            if f.len() != g.n() {
                return Err(Error::InvalidInput(format!("{} objects for a graph on {} vertices", f.len(), g.n())));
            }
            let sopts = SeparatorOptions { gamma: opts.gamma, h0: opts.h0 };
            let base = opts.base_c * (g.n().max(1) as f64).powf(1.0 - 1.0 / f.dimension as f64);
            decompose_by_separator(&partition.contracted, base, |set| {
                Ok(separator_for_contraction(&partition, f, set, &sopts)?.vertices())
            })?
        }
        (DecompositionMethod::Separator, None) => {
            return Err(Error::Unsupported("separator decomposition needs geometric input".into()))
        }
    };
    let td = to_traditional(&w, &partition);
    Ok(Prepared { weighted_width: w.weighted_width, partition, td, method: opts.method })
}

pub fn solve(g: &Graph, geometry: Option<&ObjectSet>, problem: &Problem, opts: &SolveOptions) -> Result<SolveResult> {
    problem.check(g.n()).map_err(Error::InvalidInput)?;
    let start = Instant::now();
    let prep = prepare(g, geometry, opts)?;
    solve_prepared(g, &prep, problem, opts.prune, start)
}

/// Solves on an existing decomposition; `start` marks the beginning of the
/// timed region.
pub fn solve_prepared(g: &Graph, prep: &Prepared, problem: &Problem, prune: bool, start: Instant) -> Result<SolveResult> {
    problem.check(g.n()).map_err(Error::InvalidInput)?;
    let n = g.n();
    let k = prep.partition.kappa_hat;
    let delta = prep.partition.max_degree();
    let spread = k * k * (delta + 1);
    let (value, witness, peak, cap) = match problem {
        Problem::IndependentSet | Problem::VertexCover => {
            let cap = prune.then_some(k);
            let out = driver::run(&prep.td, g, &local::IndependentSet, cap)?;
            let (v, w) = out.best.expect("empty set is independent");
            if *problem == Problem::VertexCover {
                (Some(n - v as usize), complement(n, &w), out.peak_table, cap)
            } else {
                (Some(v as usize), w, out.peak_table, cap)
            }
        }
        Problem::DominatingSet { r } => {
            let r = u8::try_from(*r).map_err(|_| Error::Unsupported(format!("radius {r} too large")))?;
            let cap = prune.then_some(spread);
            let out = driver::run(&prep.td, g, &local::DistanceDomination { r }, cap)?;
            let (v, w) = out.best.expect("whole vertex set dominates");
            (Some(v as usize), w, out.peak_table, cap)
        }
        Problem::SteinerTree { terminals } => {
            let mut terminal = vec![false; n];
            terminals.iter().for_each(|&t| terminal[t] = true);
            let cap = prune.then_some(spread);
            let out = driver::run(&prep.td, g, &connect::Steiner { terminal }, cap)?;
            split(out.best, out.peak_table, cap)
        }
        Problem::MaxInducedForest | Problem::FeedbackVertexSet => {
            let cap = prune.then_some(2 * k);
            let out = driver::run(&prep.td, g, &connect::InducedForest, cap)?;
            let (v, w) = out.best.expect("empty set is a forest");
            if *problem == Problem::FeedbackVertexSet {
                (Some(n - v as usize), complement(n, &w), out.peak_table, cap)
            } else {
                (Some(v as usize), w, out.peak_table, cap)
            }
        }
        Problem::ConnectedVertexCover => {
            let cap = prune.then_some(k);
            let out = driver::run(&prep.td, g, &connect::ConnectedCover, cap)?;
            split(out.best, out.peak_table, cap)
        }
    };
    if let Some(v) = value {
        if witness.len() != v || !verify_witness(g, problem, &witness) {
            return Err(Error::VerificationFailed(format!("{problem} witness {witness:?} rejected")));
        }
    }
    Ok(SolveResult {
        problem: problem.clone(),
        optimum: value,
        witness,
        stats: SolveStats {
            method: prep.method,
            weighted_width: prep.weighted_width,
            width: prep.td.width(),
            classes: prep.partition.len(),
            kappa_hat: k,
            max_degree: delta,
            cap,
            peak_table: peak,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

type Parts = (Option<usize>, Vec<usize>, usize, Option<usize>);

fn split(best: Option<(i64, Vec<usize>)>, peak: usize, cap: Option<usize>) -> Parts {
    match best {
        Some((v, w)) => (Some(v as usize), w, peak, cap),
        None => (None, Vec::new(), peak, cap),
    }
}

fn complement(n: usize, w: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    w.iter().for_each(|&v| inside[v] = true);
    (0..n).filter(|&v| !inside[v]).collect()
}

pub fn solve_independent_set(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::IndependentSet, opts)
}

pub fn solve_vertex_cover(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::VertexCover, opts)
}

pub fn solve_dominating_set(g: &Graph, r: usize, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::DominatingSet { r }, opts)
}

pub fn solve_steiner_tree(g: &Graph, terminals: &[usize], opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::SteinerTree { terminals: terminals.to_vec() }, opts)
}

pub fn solve_max_induced_forest(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::MaxInducedForest, opts)
}

pub fn solve_feedback_vertex_set(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::FeedbackVertexSet, opts)
}

pub fn solve_connected_vertex_cover(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, None, &Problem::ConnectedVertexCover, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle::brute_force;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn opt(g: &Graph, p: Problem) -> Option<usize> {
        solve(g, None, &p, &SolveOptions::default()).unwrap().optimum
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn small_examples() {
        let k5 = named::complete(5);
        assert_eq!(opt(&k5, Problem::IndependentSet), Some(1));
        assert_eq!(opt(&k5, Problem::VertexCover), Some(4));
        assert_eq!(opt(&named::cycle(5), Problem::IndependentSet), Some(2));
        assert_eq!(opt(&named::star(5), Problem::DominatingSet { r: 1 }), Some(1));
        assert_eq!(opt(&named::cycle(6), Problem::DominatingSet { r: 2 }), Some(2));
        assert_eq!(opt(&named::path(3), Problem::SteinerTree { terminals: vec![0, 2] }), Some(3));
        assert_eq!(opt(&named::complete(4), Problem::SteinerTree { terminals: vec![1, 3] }), Some(2));
        assert_eq!(opt(&named::complete(4), Problem::MaxInducedForest), Some(2));
        assert_eq!(opt(&named::complete(4), Problem::FeedbackVertexSet), Some(2));
        assert_eq!(opt(&named::path(7), Problem::MaxInducedForest), Some(7));
        assert_eq!(opt(&named::star(4), Problem::ConnectedVertexCover), Some(1));
        assert_eq!(opt(&named::path(4), Problem::ConnectedVertexCover), Some(2));
    }

    #[test]
    fn infeasible_connectivity() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(opt(&g, Problem::SteinerTree { terminals: vec![0, 3] }), None);
        assert_eq!(opt(&g, Problem::ConnectedVertexCover), None);
        assert_eq!(opt(&Graph::empty(3), Problem::ConnectedVertexCover), Some(0));
        assert_eq!(opt(&Graph::empty(3), Problem::SteinerTree { terminals: vec![1] }), Some(1));
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(0);
        assert_eq!(opt(&g, Problem::IndependentSet), Some(0));
        assert_eq!(opt(&g, Problem::DominatingSet { r: 1 }), Some(0));
        assert_eq!(opt(&g, Problem::FeedbackVertexSet), Some(0));
    }

    #[test]
    fn random_graphs_match_brute_force() {
        for seed in 0..40 {
            let n = 5 + (seed as usize % 7);
            let g = random_graph(n, 0.35, seed);
            let mut problems = vec![
                Problem::IndependentSet,
                Problem::VertexCover,
                Problem::DominatingSet { r: 1 },
                Problem::DominatingSet { r: 2 },
                Problem::MaxInducedForest,
                Problem::FeedbackVertexSet,
                Problem::ConnectedVertexCover,
            ];
            problems.push(Problem::SteinerTree { terminals: vec![0, n - 1] });
            for p in problems {
                let want = brute_force(&g, &p).unwrap().map(|x| x.0);
                for prune in [true, false] {
                    let o = SolveOptions { prune, ..Default::default() };
                    assert_eq!(solve(&g, None, &p, &o).unwrap().optimum, want, "{p} seed {seed} prune {prune}");
                }
            }
        }
    }
}
