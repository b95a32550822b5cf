//! Independent set and distance-r dominating set.

use super::driver::{bit, del_bit, ins_bit, Ctx, StateAlgebra};

pub(crate) struct IndependentSet;

impl StateAlgebra for IndependentSet {
    type State = u128;
    type JoinKey = u128;

    fn maximize(&self) -> bool {
        true
    }

    fn empty(&self) -> u128 {
        0
    }

    fn introduce(&self, ctx: &Ctx, v: usize, pos: usize, s: &u128, out: &mut Vec<u128>) {
        let s0 = ins_bit(*s, pos, false);
        out.push(s0);
        if s0 & ctx.neighbor_mask(v) == 0 {
            out.push(s0 | 1 << pos);
        }
    }

    fn forget(&self, _: &Ctx, _: usize, pos: usize, s: &u128, out: &mut Vec<(u128, i64, bool)>) {
        let sel = bit(*s, pos);
        out.push((del_bit(*s, pos), sel as i64, sel));
    }

    fn join_key(&self, s: &u128) -> u128 {
        *s
    }

    fn join(&self, a: &u128, _: &u128) -> Option<u128> {
        Some(*a)
    }

    fn accept(&self, _: &u128) -> bool {
        true
    }

    fn counts(&self, s: &u128, pos: usize, _: usize) -> bool {
        bit(*s, pos)
    }
}

/// Each bag vertex carries `label * 2 + satisfied`, where the label is its
/// claimed distance to the solution (0 means selected). Labels of adjacent
/// vertices differ by at most one, as exact distances do.
pub(crate) struct DistanceDomination {
    pub r: u8,
}

fn label(c: u8) -> u8 {
    c >> 1
}

impl StateAlgebra for DistanceDomination {
    type State = Vec<u8>;
    type JoinKey = Vec<u8>;

    fn maximize(&self) -> bool {
        false
    }

    fn empty(&self) -> Vec<u8> {
        Vec::new()
    }

    fn introduce(&self, ctx: &Ctx, v: usize, pos: usize, s: &Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let nb = ctx.neighbor_mask(v);
        let nbs: Vec<usize> = (0..ctx.bag.len()).filter(|&i| bit(nb, i)).map(|i| if i > pos { i - 1 } else { i }).collect();
        'label: for l in 0..=self.r {
            let mut sat = l == 0;
            for &i in &nbs {
                let lu = label(s[i]);
                if lu.abs_diff(l) > 1 {
                    continue 'label;
                }
                sat |= lu + 1 == l;
            }
            let mut t = s.clone();
            for &i in &nbs {
                if label(t[i]) == l + 1 {
                    t[i] |= 1;
                }
            }
            t.insert(pos, l << 1 | sat as u8);
            out.push(t);
        }
    }

    fn forget(&self, _: &Ctx, _: usize, pos: usize, s: &Vec<u8>, out: &mut Vec<(Vec<u8>, i64, bool)>) {
        let c = s[pos];
        if c & 1 == 1 {
            let mut t = s.clone();
            t.remove(pos);
            let sel = label(c) == 0;
            out.push((t, sel as i64, sel));
        }
    }

    fn join_key(&self, s: &Vec<u8>) -> Vec<u8> {
        s.iter().map(|&c| label(c)).collect()
    }

    fn join(&self, a: &Vec<u8>, b: &Vec<u8>) -> Option<Vec<u8>> {
        Some(a.iter().zip(b).map(|(x, y)| x | y).collect())
    }

    fn accept(&self, _: &Vec<u8>) -> bool {
        true
    }

    fn counts(&self, s: &Vec<u8>, pos: usize, _: usize) -> bool {
        label(s[pos]) == 0
    }
}
