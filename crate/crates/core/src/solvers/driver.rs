//! Generic dynamic program over nice tree decompositions.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedecomp::{NiceKind, TraditionalTreeDecomposition};
use std::collections::HashMap;
use std::hash::{BuildHasherDefault, DefaultHasher, Hash};
use std::rc::Rc;

/// Hash map with a fixed hasher so iteration order, and thus the reported
/// witness, is reproducible.
pub(crate) type Map<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

/// Largest bag the bitmask states support.
pub(crate) const MAX_BAG: usize = 127;

pub(crate) enum WitNode {
    Add(usize, Wit),
    Join(Wit, Wit),
}

pub(crate) type Wit = Option<Rc<WitNode>>;

#[derive(Clone)]
pub(crate) struct Entry {
    pub value: i64,
    pub wit: Wit,
}

pub(crate) type Table<S> = Map<S, Entry>;

/// A bag together with the graph, for neighborhood lookups.
pub(crate) struct Ctx<'a> {
    pub g: &'a Graph,
    pub bag: &'a [usize],
}

impl Ctx<'_> {
    /// Bag positions of the neighbors of `v`, as a bitmask.
    pub fn neighbor_mask(&self, v: usize) -> u128 {
        let mut m = 0u128;
        for (i, &u) in self.bag.iter().enumerate() {
            if u != v && self.g.has_edge(u, v) {
                m |= 1 << i;
            }
        }
        m
    }
}

pub(crate) fn low_mask(pos: usize) -> u128 {
    if pos == 0 {
        0
    } else {
        (1u128 << pos) - 1
    }
}

/// Inserts a bit at `pos`, shifting higher bits up.
pub(crate) fn ins_bit(s: u128, pos: usize, bit: bool) -> u128 {
    let low = s & low_mask(pos);
    let high = (s >> pos) << (pos + 1);
    low | high | ((bit as u128) << pos)
}

/// Removes the bit at `pos`, shifting higher bits down.
pub(crate) fn del_bit(s: u128, pos: usize) -> u128 {
    let low = s & low_mask(pos);
    let high = (s >> (pos + 1)) << pos;
    low | high
}

pub(crate) fn bit(s: u128, pos: usize) -> bool {
    s >> pos & 1 == 1
}

/// Number of set bits below `pos`.
pub(crate) fn rank(s: u128, pos: usize) -> usize {
    (s & low_mask(pos)).count_ones() as usize
}

pub(crate) trait StateAlgebra {
    type State: Clone + Eq + Hash;
    type JoinKey: Eq + Hash;

    fn maximize(&self) -> bool;
    fn empty(&self) -> Self::State;
    /// `ctx.bag` already holds `v` at `pos`.
    fn introduce(&self, ctx: &Ctx, v: usize, pos: usize, s: &Self::State, out: &mut Vec<Self::State>);
    /// `ctx.bag` still holds `v` at `pos`; pushes `(state, gain, v selected)`.
    fn forget(&self, ctx: &Ctx, v: usize, pos: usize, s: &Self::State, out: &mut Vec<(Self::State, i64, bool)>);
    fn join_key(&self, s: &Self::State) -> Self::JoinKey;
    fn join(&self, a: &Self::State, b: &Self::State) -> Option<Self::State>;
    fn accept(&self, s: &Self::State) -> bool;
    /// Whether vertex `v` at `pos` counts toward its class cap.
    fn counts(&self, s: &Self::State, pos: usize, v: usize) -> bool;
    /// Shrinks a finished table, e.g. to a representative set.
    fn compress(&self, table: Table<Self::State>) -> Result<Table<Self::State>> {
        Ok(table)
    }
}

pub(crate) fn better(maximize: bool, a: i64, b: i64) -> bool {
    if maximize {
        a > b
    } else {
        a < b
    }
}

pub(crate) fn put<S: Eq + Hash>(t: &mut Table<S>, s: S, e: Entry, maximize: bool) {
    match t.get_mut(&s) {
        Some(old) => {
            if better(maximize, e.value, old.value) {
                *old = e;
            }
        }
        None => {
            t.insert(s, e);
        }
    }
}

pub(crate) struct RunOutcome {
    pub best: Option<(i64, Vec<usize>)>,
    pub peak_table: usize,
}

/// Runs the dynamic program; `cap` bounds the counted vertices per class.
pub(crate) fn run<A: StateAlgebra>(
    td: &TraditionalTreeDecomposition,
    g: &Graph,
    alg: &A,
    cap: Option<usize>,
) -> Result<RunOutcome> {
    if let Some(big) = td.nodes.iter().map(|x| x.bag.len()).max().filter(|&b| b > MAX_BAG) {
        return Err(Error::Unsupported(format!("bag of {big} vertices exceeds {MAX_BAG}")));
    }
    let max = alg.maximize();
    let mut tables: Vec<Option<Table<A::State>>> = (0..td.nodes.len()).map(|_| None).collect();
    let mut peak = 0;
    let mut buf = Vec::new();
    let mut fbuf = Vec::new();
    for (i, node) in td.nodes.iter().enumerate() {
        let mut table: Table<A::State> = Map::default();
        match node.kind {
            NiceKind::Leaf => {
                table.insert(alg.empty(), Entry { value: 0, wit: None });
            }
            NiceKind::Introduce(v) => {
                let child = tables[node.children[0]].take().expect("child table");
                let ctx = Ctx { g, bag: &node.bag };
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                for (s, e) in child {
                    buf.clear();
                    alg.introduce(&ctx, v, pos, &s, &mut buf);
                    for s2 in buf.drain(..) {
                        put(&mut table, s2, e.clone(), max);
                    }
                }
                if let Some(cap) = cap {
                    let class = &td.classes[td.class_of[v]];
                    let members: Option<Vec<(usize, usize)>> =
                        class.iter().map(|&u| node.bag.binary_search(&u).ok().map(|p| (p, u))).collect();
                    if let Some(members) = members {
                        table.retain(|s, _| members.iter().filter(|&&(p, u)| alg.counts(s, p, u)).count() <= cap);
                    }
                }
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                let child = tables[c].take().expect("child table");
                let cbag = &td.nodes[c].bag;
                let ctx = Ctx { g, bag: cbag };
                let pos = cbag.binary_search(&v).expect("forgotten vertex in child bag");
                for (s, e) in child {
                    fbuf.clear();
                    alg.forget(&ctx, v, pos, &s, &mut fbuf);
                    for (s2, gain, sel) in fbuf.drain(..) {
                        let wit = if sel { Some(Rc::new(WitNode::Add(v, e.wit.clone()))) } else { e.wit.clone() };
                        put(&mut table, s2, Entry { value: e.value + gain, wit }, max);
                    }
                }
            }
            NiceKind::Join => {
                let a = tables[node.children[0]].take().expect("child table");
                let b = tables[node.children[1]].take().expect("child table");
                let mut groups: Map<A::JoinKey, Vec<(A::State, Entry)>> = Map::default();
                for (s, e) in b {
                    groups.entry(alg.join_key(&s)).or_default().push((s, e));
                }
                for (sa, ea) in a {
                    if let Some(list) = groups.get(&alg.join_key(&sa)) {
                        for (sb, eb) in list {
                            if let Some(s) = alg.join(&sa, sb) {
                                let wit = Some(Rc::new(WitNode::Join(ea.wit.clone(), eb.wit.clone())));
                                put(&mut table, s, Entry { value: ea.value + eb.value, wit }, max);
                            }
                        }
                    }
                }
            }
        }
        let table = alg.compress(table)?;
        peak = peak.max(table.len());
        tables[i] = Some(table);
    }
    let root = tables[td.root()].take().expect("root table");
    let mut best: Option<&Entry> = None;
    for (s, e) in &root {
        if alg.accept(s) && best.is_none_or(|b| better(max, e.value, b.value)) {
            best = Some(e);
        }
    }
    Ok(RunOutcome { best: best.map(|e| (e.value, collect(&e.wit))), peak_table: peak })
}

fn collect(w: &Wit) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack: Vec<Rc<WitNode>> = w.iter().cloned().collect();
    while let Some(n) = stack.pop() {
        match &*n {
            WitNode::Add(v, rest) => {
                out.push(*v);
                stack.extend(rest.iter().cloned());
            }
            WitNode::Join(a, b) => {
                stack.extend(a.iter().cloned());
                stack.extend(b.iter().cloned());
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_helpers() {
        assert_eq!(ins_bit(0b101, 1, true), 0b1011);
        assert_eq!(ins_bit(0b101, 0, false), 0b1010);
        assert_eq!(del_bit(0b1011, 1), 0b101);
        assert_eq!(rank(0b1011, 3), 2);
        assert_eq!(del_bit(ins_bit(u128::MAX >> 1, 126, false), 126), u128::MAX >> 1);
    }
}
