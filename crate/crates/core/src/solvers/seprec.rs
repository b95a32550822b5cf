//! Maximum independent set by separator recursion on the geometry: try every
//! independent choice of at most one vertex per separator clique, delete the
//! separator together with the neighbors of the choice, and recurse on the
//! components of what remains.

use crate::error::Result;
use crate::geometry::{build_intersection_graph, ObjectSet};
use crate::graph::Graph;
use crate::separator::{build_separator, SeparatorOptions};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::Instant;

/// Components at most this large are solved by branching.
const SMALL: usize = 16;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SeparatorRecursionStats {
    pub separators: usize,
    /// Largest number of separator choices tried at one level.
    pub max_choices: usize,
    pub memo_hits: usize,
    /// Levels where the separator was empty and branching took over.
    pub fallbacks: usize,
    pub wall_ms: f64,
}

struct Rec<'a> {
    f: &'a ObjectSet,
    g: &'a Graph,
    opts: SeparatorOptions,
    memo: HashMap<Vec<usize>, Vec<usize>>,
    stats: SeparatorRecursionStats,
}

/// Returns a maximum independent set of the intersection graph of `f`.
pub fn solve_separator_recursion_is(f: &ObjectSet, opts: &SeparatorOptions) -> Result<(Vec<usize>, SeparatorRecursionStats)> {
    let start = Instant::now();
    let g = build_intersection_graph(f)?.graph;
    let mut rec = Rec { f, g: &g, opts: *opts, memo: HashMap::new(), stats: Default::default() };
    let mut best = Vec::new();
    for comp in g.components() {
        best.extend(rec.component(comp)?);
    }
    best.sort_unstable();
    let mut stats = rec.stats;
    stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    debug_assert!(g.is_independent(&best));
    Ok((best, stats))
}

impl Rec<'_> {
    /// Solves a connected vertex set given in increasing order.
    fn component(&mut self, set: Vec<usize>) -> Result<Vec<usize>> {
        if let Some(s) = self.memo.get(&set) {
            self.stats.memo_hits += 1;
            return Ok(s.clone());
        }
        let best = if set.len() <= SMALL { branch(self.g, &set) } else { self.separate(&set)? };
        self.memo.insert(set, best.clone());
        Ok(best)
    }

    fn separate(&mut self, set: &[usize]) -> Result<Vec<usize>> {
        let sub = self.f.subset(set);
        let sep = build_separator(&sub, &self.opts)?;
        self.stats.separators += 1;
        let cliques: Vec<Vec<usize>> = sep.cliques.iter().map(|c| c.iter().map(|&i| set[i]).collect()).collect();
        if cliques.iter().all(|c| c.is_empty()) {
            self.stats.fallbacks += 1;
            return Ok(branch(self.g, set));
        }
        let mut inside = vec![false; self.g.n()];
        set.iter().for_each(|&v| inside[v] = true);
        for c in &cliques {
            c.iter().for_each(|&v| inside[v] = false);
        }
        let mut best: Option<Vec<usize>> = None;
        let mut chosen = Vec::new();
        let mut tried = 0;
        self.choose(&cliques, 0, &mut chosen, &inside, &mut best, &mut tried)?;
        self.stats.max_choices = self.stats.max_choices.max(tried);
        Ok(best.unwrap_or_default())
    }

    fn choose(
        &mut self,
        cliques: &[Vec<usize>],
        i: usize,
        chosen: &mut Vec<usize>,
        inside: &[bool],
        best: &mut Option<Vec<usize>>,
        tried: &mut usize,
    ) -> Result<()> {
        if i == cliques.len() {
            *tried += 1;
            let mut mask = inside.to_vec();
            for &v in chosen.iter() {
                self.g.neighbors(v).iter().for_each(|&u| mask[u] = false);
            }
            let mut sol = chosen.clone();
            for comp in self.g.components_within(&mask) {
                sol.extend(self.component(comp)?);
            }
            if best.as_ref().is_none_or(|b| sol.len() > b.len()) {
                *best = Some(sol);
            }
            return Ok(());
        }
        self.choose(cliques, i + 1, chosen, inside, best, tried)?;
        for &v in &cliques[i] {
            if chosen.iter().all(|&u| !self.g.has_edge(u, v)) {
                chosen.push(v);
                self.choose(cliques, i + 1, chosen, inside, best, tried)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}

/// Maximum independent set of the subgraph induced by `set` by branching on
/// a vertex of largest degree.
fn branch(g: &Graph, set: &[usize]) -> Vec<usize> {
    let mut alive = vec![false; g.n()];
    set.iter().for_each(|&v| alive[v] = true);
    let mut out = Vec::new();
    branch_rec(g, &mut alive, set, &mut out);
    out.sort_unstable();
    out
}

fn branch_rec(g: &Graph, alive: &mut [bool], set: &[usize], out: &mut Vec<usize>) {
    let live: Vec<usize> = set.iter().copied().filter(|&v| alive[v]).collect();
    let deg = |v: usize, alive: &[bool]| g.neighbors(v).iter().filter(|&&u| alive[u]).count();
    let Some(&v) = live.iter().max_by_key(|&&v| (deg(v, alive), std::cmp::Reverse(v))) else {
        return;
    };
    if deg(v, alive) <= 1 {
        // Degree at most one everywhere: take an endpoint of every edge greedily.
        for &u in &live {
            if alive[u] {
                out.push(u);
                alive[u] = false;
                g.neighbors(u).iter().for_each(|&w| alive[w] = false);
            }
        }
        for &u in &live {
            alive[u] = set.binary_search(&u).is_ok();
        }
        return;
    }
    let snapshot: Vec<bool> = live.iter().map(|&u| alive[u]).collect();
    let restore = |alive: &mut [bool]| live.iter().zip(&snapshot).for_each(|(&u, &a)| alive[u] = a);
    // Take v.
    let mut with = vec![v];
    alive[v] = false;
    g.neighbors(v).iter().for_each(|&u| alive[u] = false);
    branch_rec(g, alive, set, &mut with);
    restore(alive);
    // Skip v.
    let mut without = Vec::new();
    alive[v] = false;
    branch_rec(g, alive, set, &mut without);
    restore(alive);
    out.extend(if with.len() >= without.len() { with } else { without });
}
