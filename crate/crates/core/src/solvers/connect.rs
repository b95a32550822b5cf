//! Connectivity problems: Steiner tree, connected vertex cover and maximum
//! induced forest, with partitions of the selected bag vertices kept small by
//! rank-based reduction.

use super::driver::{bit, del_bit, ins_bit, rank, Ctx, Entry, Map, StateAlgebra, Table};
use crate::error::Result;
use crate::rankbased::{reduce, SetPartition, WeightedPartitionSet};

/// Universes above this size are left unreduced; the cut matrix would have
/// too many columns.
const REDUCE_LIMIT: usize = 16;

/// Reduces each group of states that differ only in their partition.
fn compress_groups<S, K, F, G>(table: Table<S>, key: F, part: G, sign: i64) -> Result<Table<S>>
where
    S: Clone + Eq + std::hash::Hash,
    K: Eq + std::hash::Hash,
    F: Fn(&S) -> K,
    G: Fn(&S) -> &SetPartition,
{
    let mut groups: Map<K, Vec<(S, Entry)>> = Map::default();
    for (s, e) in table {
        groups.entry(key(&s)).or_default().push((s, e));
    }
    let mut out: Table<S> = Map::default();
    for (_, mut list) in groups {
        let u = part(&list[0].0).universe();
        if list.len() > 1 && u > 1 && u <= REDUCE_LIMIT {
            let set = WeightedPartitionSet::from_entries(u, list.iter().map(|(s, e)| (part(s).clone(), sign * e.value)))?;
            let kept: std::collections::HashSet<SetPartition> = reduce(&set)?.entries.into_iter().map(|(p, _)| p).collect();
            list.retain(|(s, _)| kept.contains(part(s)));
        }
        out.extend(list);
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct ConnState {
    sel: u128,
    part: SetPartition,
    /// A finished component has been forgotten; nothing may be selected anymore.
    closed: bool,
}

fn select(s: &ConnState, ctx: &Ctx, v: usize, pos: usize) -> ConnState {
    let sel = ins_bit(s.sel, pos, true);
    let r = rank(sel, pos);
    let mut part = s.part.insert(r);
    let nb = ctx.neighbor_mask(v) & sel;
    for i in 0..ctx.bag.len() {
        if bit(nb, i) {
            part = part.glue(r, rank(sel, i));
        }
    }
    ConnState { sel, part, closed: s.closed }
}

fn forget_conn(pos: usize, s: &ConnState, out: &mut Vec<(ConnState, i64, bool)>) {
    if !bit(s.sel, pos) {
        out.push((ConnState { sel: del_bit(s.sel, pos), ..s.clone() }, 0, false));
        return;
    }
    let r = rank(s.sel, pos);
    let sel = del_bit(s.sel, pos);
    match s.part.project(r) {
        Ok(part) => out.push((ConnState { sel, part, closed: s.closed }, 1, true)),
        // The component is complete; only valid when it is the only one.
        Err(_) if s.sel.count_ones() == 1 => {
            out.push((ConnState { sel: 0, part: SetPartition::bottom(0), closed: true }, 1, true))
        }
        Err(_) => {}
    }
}

fn join_conn(a: &ConnState, b: &ConnState) -> Option<ConnState> {
    if a.closed && b.closed {
        return None;
    }
    let part = a.part.join(&b.part).ok()?;
    Some(ConnState { sel: a.sel, part, closed: a.closed || b.closed })
}

fn empty_conn() -> ConnState {
    ConnState { sel: 0, part: SetPartition::bottom(0), closed: false }
}

pub(crate) struct Steiner {
    pub terminal: Vec<bool>,
}

impl StateAlgebra for Steiner {
    type State = ConnState;
    type JoinKey = u128;

    fn maximize(&self) -> bool {
        false
    }

    fn empty(&self) -> ConnState {
        empty_conn()
    }

    fn introduce(&self, ctx: &Ctx, v: usize, pos: usize, s: &ConnState, out: &mut Vec<ConnState>) {
        if !self.terminal[v] {
            out.push(ConnState { sel: ins_bit(s.sel, pos, false), ..s.clone() });
        }
        if !s.closed {
            out.push(select(s, ctx, v, pos));
        }
    }

    fn forget(&self, _: &Ctx, _: usize, pos: usize, s: &ConnState, out: &mut Vec<(ConnState, i64, bool)>) {
        forget_conn(pos, s, out);
    }

    fn join_key(&self, s: &ConnState) -> u128 {
        s.sel
    }

    fn join(&self, a: &ConnState, b: &ConnState) -> Option<ConnState> {
        join_conn(a, b)
    }

    fn accept(&self, s: &ConnState) -> bool {
        s.closed
    }

    fn counts(&self, s: &ConnState, pos: usize, v: usize) -> bool {
        bit(s.sel, pos) && !self.terminal[v]
    }

    fn compress(&self, table: Table<ConnState>) -> Result<Table<ConnState>> {
        compress_groups(table, |s| (s.sel, s.closed), |s| &s.part, 1)
    }
}

pub(crate) struct ConnectedCover;

impl StateAlgebra for ConnectedCover {
    type State = ConnState;
    type JoinKey = u128;

    fn maximize(&self) -> bool {
        false
    }

    fn empty(&self) -> ConnState {
        empty_conn()
    }

    fn introduce(&self, ctx: &Ctx, v: usize, pos: usize, s: &ConnState, out: &mut Vec<ConnState>) {
        let s0 = ins_bit(s.sel, pos, false);
        let nb = ctx.neighbor_mask(v);
        if nb & s0 == nb {
            out.push(ConnState { sel: s0, ..s.clone() });
        }
        if !s.closed {
            out.push(select(s, ctx, v, pos));
        }
    }

    fn forget(&self, _: &Ctx, _: usize, pos: usize, s: &ConnState, out: &mut Vec<(ConnState, i64, bool)>) {
        forget_conn(pos, s, out);
    }

    fn join_key(&self, s: &ConnState) -> u128 {
        s.sel
    }

    fn join(&self, a: &ConnState, b: &ConnState) -> Option<ConnState> {
        join_conn(a, b)
    }

    /// An open root state selected nothing, which covers an edgeless graph.
    fn accept(&self, _: &ConnState) -> bool {
        true
    }

    fn counts(&self, s: &ConnState, pos: usize, _: usize) -> bool {
        !bit(s.sel, pos)
    }

    fn compress(&self, table: Table<ConnState>) -> Result<Table<ConnState>> {
        compress_groups(table, |s| (s.sel, s.closed), |s| &s.part, 1)
    }
}

/// Partition over an extra root element at index 0 plus the selected bag
/// vertices; `i` counts forgotten selected vertices and `j` the edges used
/// to connect them, including edges to the root. A forest plus root edges
/// forms a spanning tree exactly when the final counts agree. A forest on the
/// forgotten and bag vertices has at most `i + |bag selection|` edges, which
/// bounds `j` along the way.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct ForestState {
    sel: u128,
    part: SetPartition,
    i: u32,
    j: u32,
}

pub(crate) struct InducedForest;

impl StateAlgebra for InducedForest {
    type State = ForestState;
    type JoinKey = u128;

    fn maximize(&self) -> bool {
        true
    }

    fn empty(&self) -> ForestState {
        ForestState { sel: 0, part: SetPartition::bottom(1), i: 0, j: 0 }
    }

    fn introduce(&self, _: &Ctx, _: usize, pos: usize, s: &ForestState, out: &mut Vec<ForestState>) {
        out.push(ForestState { sel: ins_bit(s.sel, pos, false), ..s.clone() });
        let sel = ins_bit(s.sel, pos, true);
        out.push(ForestState { sel, part: s.part.insert(rank(sel, pos) + 1), i: s.i, j: s.j });
    }

    fn forget(&self, ctx: &Ctx, v: usize, pos: usize, s: &ForestState, out: &mut Vec<(ForestState, i64, bool)>) {
        if !bit(s.sel, pos) {
            out.push((ForestState { sel: del_bit(s.sel, pos), ..s.clone() }, 0, false));
            return;
        }
        let r = rank(s.sel, pos) + 1;
        let mut part = s.part.clone();
        let mut j = s.j;
        let nb = ctx.neighbor_mask(v) & s.sel;
        for p in 0..ctx.bag.len() {
            if bit(nb, p) {
                let ru = rank(s.sel, p) + 1;
                if part.same_block(r, ru) {
                    return;
                }
                part = part.glue(r, ru);
                j += 1;
            }
        }
        let sel = del_bit(s.sel, pos);
        let i = s.i + 1;
        let mut options = vec![(part.clone(), j)];
        if !part.same_block(r, 0) {
            options.push((part.glue(r, 0), j + 1));
        }
        for (p, j) in options {
            if j > i + sel.count_ones() {
                continue;
            }
            if let Ok(p) = p.project(r) {
                out.push((ForestState { sel, part: p, i, j }, 1, true));
            }
        }
    }

    fn join_key(&self, s: &ForestState) -> u128 {
        s.sel
    }

    fn join(&self, a: &ForestState, b: &ForestState) -> Option<ForestState> {
        let (i, j) = (a.i + b.i, a.j + b.j);
        if j > i + a.sel.count_ones() {
            return None;
        }
        Some(ForestState { sel: a.sel, part: a.part.join(&b.part).ok()?, i, j })
    }

    fn accept(&self, s: &ForestState) -> bool {
        s.i == s.j
    }

    fn counts(&self, s: &ForestState, pos: usize, _: usize) -> bool {
        bit(s.sel, pos)
    }

    fn compress(&self, table: Table<ForestState>) -> Result<Table<ForestState>> {
        compress_groups(table, |s| (s.sel, s.i, s.j), |s| &s.part, 0)
    }
}
