//! Set partitions of a small universe and the rank-based `reduce` that keeps
//! a representative subset of weighted partitions.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 30;

/// A partition encoded as a restricted growth string: block labels in order of
/// first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map: HashMap<usize, u8> = HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = map.len() as u8;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    /// Every element alone.
    pub fn bottom(u: usize) -> Self {
        SetPartition { labels: (0..u as u8).collect() }
    }

    /// One block holding everything.
    pub fn top(u: usize) -> Self {
        SetPartition { labels: vec![0; u] }
    }

    pub fn universe(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn is_top(&self) -> bool {
        self.block_count() <= 1
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (e, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(e);
        }
        out
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.universe() != other.universe() {
            return Err(Error::UniverseMismatch(self.universe(), other.universe()));
        }
        let u = self.universe();
        let mut parent: Vec<usize> = (0..u).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for part in [self, other] {
            let mut first = [usize::MAX; 256];
            for e in 0..u {
                let l = part.labels[e] as usize;
                if first[l] == usize::MAX {
                    first[l] = e;
                } else {
                    let (a, b) = (find(&mut parent, first[l]), find(&mut parent, e));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..u).map(|e| find(&mut parent, e)).collect();
        Ok(SetPartition::from_labels(&roots))
    }

    /// Adds a singleton block for a new element placed at position `pos`.
    pub fn insert(&self, pos: usize) -> SetPartition {
        let mut raw: Vec<usize> = self.labels.iter().map(|&l| l as usize).collect();
        raw.insert(pos, usize::MAX);
        SetPartition::from_labels(&raw)
    }

    /// Merges the blocks of elements `a` and `b`.
    pub fn glue(&self, a: usize, b: usize) -> SetPartition {
        let (la, lb) = (self.labels[a], self.labels[b]);
        let raw: Vec<usize> = self.labels.iter().map(|&l| if l == lb { la as usize } else { l as usize }).collect();
        SetPartition::from_labels(&raw)
    }

    /// Removes element `pos`; fails if it is alone in its block, since that
    /// component could never be connected to the rest.
    pub fn project(&self, pos: usize) -> Result<SetPartition> {
        let l = self.labels[pos];
        if self.labels.iter().filter(|&&x| x == l).count() == 1 {
            return Err(Error::IsolatedBlock(pos));
        }
        Ok(self.remove(pos))
    }

    /// Removes element `pos` unconditionally.
    pub fn remove(&self, pos: usize) -> SetPartition {
        let raw: Vec<usize> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(e, _)| e != pos)
            .map(|(_, &l)| l as usize)
            .collect();
        SetPartition::from_labels(&raw)
    }

    /// Keeps the listed positions, in order.
    pub fn restrict(&self, keep: &[usize]) -> SetPartition {
        let raw: Vec<usize> = keep.iter().map(|&e| self.labels[e] as usize).collect();
        SetPartition::from_labels(&raw)
    }
}

/// Weighted partitions over a common universe; duplicates keep the minimum weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedPartitionSet {
    pub universe: usize,
    pub entries: Vec<(SetPartition, i64)>,
}

impl WeightedPartitionSet {
    pub fn new(universe: usize) -> Self {
        WeightedPartitionSet { universe, entries: Vec::new() }
    }

    pub fn from_entries(universe: usize, entries: impl IntoIterator<Item = (SetPartition, i64)>) -> Result<Self> {
        let mut best: HashMap<SetPartition, i64> = HashMap::new();
        for (p, w) in entries {
            if p.universe() != universe {
                return Err(Error::UniverseMismatch(universe, p.universe()));
            }
            let e = best.entry(p).or_insert(w);
            *e = (*e).min(w);
        }
        let mut entries: Vec<_> = best.into_iter().collect();
        entries.sort();
        Ok(WeightedPartitionSet { universe, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `min { w(p) : join(p, q) = top }`, or `None` if no entry completes.
    pub fn best_completion(&self, q: &SetPartition) -> Option<i64> {
        self.entries
            .iter()
            .filter(|(p, _)| p.join(q).expect("same universe").is_top())
            .map(|(_, w)| *w)
            .min()
    }
}

/// Cuts `(X, U \ X)` with element 0 in `X`, encoded by the side bits of
/// elements `1..u`; returns the bit row of the cuts consistent with `p`.
fn cut_row(p: &SetPartition) -> Vec<u64> {
    let u = p.universe();
    let cols = 1usize << (u - 1);
    let mut row = vec![0u64; cols.div_ceil(64)];
    let blocks = p.blocks();
    let masks: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().filter(|&&e| e > 0).fold(0usize, |m, &e| m | 1 << (e - 1)))
        .collect();
    // the block holding element 0 stays on side 0
    let free = &masks[1..];
    for assign in 0usize..1 << free.len() {
        let mut cut = 0;
        for (i, &m) in free.iter().enumerate() {
            if assign >> i & 1 == 1 {
                cut |= m;
            }
        }
        row[cut / 64] |= 1 << (cut % 64);
    }
    row
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Representative subset: rows of the cut matrix taken in weight order and
/// kept when linearly independent over GF(2) of the rows kept so far.
pub fn reduce(a: &WeightedPartitionSet) -> Result<WeightedPartitionSet> {
    let u = a.universe;
    if u == 0 {
        return Err(Error::InvalidInput("reduce needs a nonempty universe".into()));
    }
    if u > MAX_UNIVERSE {
        return Err(Error::InvalidInput(format!("universe of {u} elements exceeds {MAX_UNIVERSE}")));
    }
    let mut order: Vec<usize> = (0..a.entries.len()).collect();
    order.sort_by(|&x, &y| a.entries[x].1.cmp(&a.entries[y].1).then_with(|| a.entries[x].0.cmp(&a.entries[y].0)));
    let mut basis: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut kept = Vec::new();
    for i in order {
        let mut row = cut_row(&a.entries[i].0);
        while let Some(p) = lowest_bit(&row) {
            match basis.get(&p) {
                Some(b) => row.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis.insert(p, row);
                    kept.push(a.entries[i].clone());
                    break;
                }
            }
        }
        if basis.len() == 1 << (u - 1) {
            break;
        }
    }
    kept.sort();
    Ok(WeightedPartitionSet { universe: u, entries: kept })
}

/// All partitions of `{0..u}` as restricted growth strings.
pub fn all_partitions(u: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut labels = vec![0u8; u];
    fn rec(i: usize, max: u8, labels: &mut Vec<u8>, out: &mut Vec<SetPartition>) {
        if i == labels.len() {
            out.push(SetPartition { labels: labels.clone() });
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, if l == max { max + 1 } else { max }, labels, out);
        }
    }
    if u == 0 {
        return vec![SetPartition { labels: Vec::new() }];
    }
    rec(1, 1, &mut labels, &mut out);
    out
}

/// Exhaustive check of the representation property and size bound; returns
/// a description of the first failure.
pub fn check_representation(a: &WeightedPartitionSet, r: &WeightedPartitionSet) -> Option<String> {
    if r.len() > 1 << (a.universe - 1) {
        return Some(format!("{} entries exceed 2^(u-1)", r.len()));
    }
    for q in all_partitions(a.universe) {
        let (x, y) = (a.best_completion(&q), r.best_completion(&q));
        if x != y {
            return Some(format!("completion {:?}: {x:?} vs {y:?}", q.labels()));
        }
    }
    None
}

/// Random weighted partition set with up to `max_entries` entries and
/// weights in `0..=weight_max`.
pub fn random_partition_set(universe: usize, max_entries: usize, weight_max: i64, rng: &mut impl Rng) -> WeightedPartitionSet {
    let m = rng.gen_range(1..=max_entries.max(1));
    let entries = (0..m).map(|_| {
        let labels: Vec<usize> = (0..universe).map(|_| rng.gen_range(0..universe)).collect();
        (SetPartition::from_labels(&labels), rng.gen_range(0..=weight_max))
    });
    WeightedPartitionSet::from_entries(universe, entries).expect("common universe")
}

/// Exhaustive check of `reduce` on `count` random sets with universes
/// `2..=6`: representation, size bound and idempotence. Returns the number
/// of sets checked or the first failure.
pub fn reduce_selftest(count: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let u = rng.gen_range(2..=6);
        let a = random_partition_set(u, 40, 20, &mut rng);
        let r = reduce(&a).map_err(|e| e.to_string())?;
        if let Some(msg) = check_representation(&a, &r) {
            return Err(format!("set {i} (u = {u}): {msg}"));
        }
        if reduce(&r).map_err(|e| e.to_string())? != r {
            return Err(format!("set {i} (u = {u}): reduce is not idempotent"));
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: &[usize]) -> SetPartition {
        SetPartition::from_labels(l)
    }

    #[test]
    fn joins() {
        let a = p(&[0, 0, 1]);
        assert_eq!(a.join(&SetPartition::bottom(3)).unwrap(), a);
        assert!(a.join(&p(&[0, 1, 1])).unwrap().is_top());
        assert!(a.join(&SetPartition::bottom(2)).is_err());
    }

    #[test]
    fn helpers() {
        let a = p(&[3, 7]);
        assert_eq!(a.glue(0, 1), SetPartition::top(2));
        let b = p(&[0, 1, 0]);
        assert_eq!(b.insert(1).project(1).unwrap_err(), Error::IsolatedBlock(1));
        assert_eq!(b.insert(1).remove(1), b);
        assert_eq!(b.project(0).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn reduce_keeps_both_extremes() {
        let a = WeightedPartitionSet::from_entries(2, [(SetPartition::top(2), 5), (SetPartition::bottom(2), 3)]).unwrap();
        let r = reduce(&a).unwrap();
        assert_eq!(r.len(), 2);
        assert!(check_representation(&a, &r).is_none());
    }

    #[test]
    fn duplicates_keep_minimum() {
        let a = WeightedPartitionSet::from_entries(3, [(p(&[0, 0, 1]), 7), (p(&[0, 0, 1]), 4)]).unwrap();
        assert_eq!(a.entries, vec![(p(&[0, 0, 1]), 4)]);
    }

    #[test]
    fn selftest_passes() {
        assert_eq!(reduce_selftest(60, 7), Ok(60));
    }

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..7).map(|u| all_partitions(u).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
    }
}
