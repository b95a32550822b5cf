//! Search for the minimum-side axis-aligned hypercube containing a given
//! weight of boxes.
//!
//! Coordinates are scaled to integers by the common denominator. A cube
//! `[x, x + L]^d` contains box `o` iff `hi_o - L <= x <= lo_o` on every axis, so
//! feasibility of a side `L` is a maximum-depth query over the boxes
//! `prod [hi_i - L, lo_i]`. The minimum side is one of the integers
//! `hi_{o,j} - lo_{o',j}`, and feasibility is monotone in `L`, so bisection
//! over the integers is exact.

use super::Hypercube;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Sub};

/// How the base hypercube is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum H0Search {
    /// Integer bisection on the side length with a depth sweep per probe.
    #[default]
    Bisect,
    /// Enumerate every lower corner and side defined by box coordinates.
    Enumerate,
}

trait Coord: Clone + Ord + Integer + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Ord + Integer + Add<Output = T> + Sub<Output = T>> Coord for T {}

/// Minimum hypercube containing boxes of total weight at least `k`.
pub fn find_base(
    boxes: &[(Vec<Rational>, Vec<Rational>)],
    weights: &[u64],
    k: u64,
    mode: H0Search,
) -> Hypercube {
    assert!(!boxes.is_empty() && k >= 1);
    let mut scale = BigInt::one();
    for (lo, hi) in boxes {
        for r in lo.iter().chain(hi) {
            scale = scale.lcm(r.denom());
        }
    }
    let to_int = |r: &Rational| (r * Rational::from_integer(scale.clone())).to_integer();
    let lo: Vec<Vec<BigInt>> = boxes.iter().map(|(l, _)| l.iter().map(to_int).collect()).collect();
    let hi: Vec<Vec<BigInt>> = boxes.iter().map(|(_, h)| h.iter().map(to_int).collect()).collect();
    let fits = lo.iter().chain(&hi).flatten().all(|v| v.bits() <= 100);
    let (corner, side): (Vec<BigInt>, BigInt) = if fits {
        let conv = |v: &Vec<Vec<BigInt>>| -> Vec<Vec<i128>> {
            v.iter().map(|p| p.iter().map(|x| x.to_i128().expect("fits")).collect()).collect()
        };
        let (c, s) = search(&conv(&lo), &conv(&hi), weights, k, mode);
        (c.into_iter().map(BigInt::from).collect(), BigInt::from(s))
    } else {
        search(&lo, &hi, weights, k, mode)
    };
    let sc = Rational::from_integer(scale);
    Hypercube {
        lower: corner.into_iter().map(|x| Rational::from_integer(x) / &sc).collect(),
        side: Rational::from_integer(side) / &sc,
    }
}

fn search<T: Coord>(lo: &[Vec<T>], hi: &[Vec<T>], w: &[u64], k: u64, mode: H0Search) -> (Vec<T>, T) {
    match mode {
        H0Search::Bisect => bisect(lo, hi, w, k),
        H0Search::Enumerate => enumerate(lo, hi, w, k),
    }
}

fn bisect<T: Coord>(lo: &[Vec<T>], hi: &[Vec<T>], w: &[u64], k: u64) -> (Vec<T>, T) {
    let d = lo[0].len();
    let mut span = T::zero();
    for j in 0..d {
        let min = lo.iter().map(|p| p[j].clone()).min().expect("nonempty");
        let max = hi.iter().map(|p| p[j].clone()).max().expect("nonempty");
        span = span.max(max - min);
    }
    let two = T::one() + T::one();
    let mut bad = T::zero();
    let mut good = span;
    let mut witness = None;
    while good.clone() - bad.clone() > T::one() {
        let mid = (bad.clone() + good.clone()).div_floor(&two);
        match probe(lo, hi, w, k, &mid) {
            Some(p) => {
                good = mid;
                witness = Some(p);
            }
            None => bad = mid,
        }
    }
    let corner = match witness {
        Some(p) => p,
        None => probe(lo, hi, w, k, &good).expect("the full span is feasible"),
    };
    (corner, good)
}

/// A point of depth at least `k` among the boxes `prod [hi - side, lo]`.
fn probe<T: Coord>(lo: &[Vec<T>], hi: &[Vec<T>], w: &[u64], k: u64, side: &T) -> Option<Vec<T>> {
    let d = lo[0].len();
    let mut a = Vec::with_capacity(lo.len());
    let mut b = Vec::with_capacity(lo.len());
    let mut items = Vec::new();
    for o in 0..lo.len() {
        let ao: Vec<T> = hi[o].iter().map(|h| h.clone() - side.clone()).collect();
        if (0..d).all(|j| ao[j] <= lo[o][j]) {
            items.push(a.len());
            a.push(ao);
            b.push(lo[o].clone());
        } else {
            a.push(Vec::new());
            b.push(Vec::new());
        }
    }
    let total: u64 = items.iter().map(|&o| w[o]).sum();
    if total < k {
        return None;
    }
    deep_point(&items, &a, &b, w, 0, k)
}

fn deep_point<T: Coord>(
    items: &[usize],
    a: &[Vec<T>],
    b: &[Vec<T>],
    w: &[u64],
    axis: usize,
    k: u64,
) -> Option<Vec<T>> {
    let d = a[items[0]].len();
    match d - axis {
        1 => sweep_1d(items, a, b, w, axis, k).map(|x| vec![x]),
        2 => sweep_2d(items, a, b, w, axis, k),
        _ => {
            let mut xs: Vec<T> = items.iter().map(|&o| a[o][axis].clone()).collect();
            xs.sort();
            xs.dedup();
            for x in xs {
                let sub: Vec<usize> = items
                    .iter()
                    .copied()
                    .filter(|&o| a[o][axis] <= x && x <= b[o][axis])
                    .collect();
                if sub.iter().map(|&o| w[o]).sum::<u64>() < k {
                    continue;
                }
                if let Some(mut p) = deep_point(&sub, a, b, w, axis + 1, k) {
                    p.insert(0, x);
                    return Some(p);
                }
            }
            None
        }
    }
}

fn sweep_1d<T: Coord>(items: &[usize], a: &[Vec<T>], b: &[Vec<T>], w: &[u64], axis: usize, k: u64) -> Option<T> {
    let mut starts: Vec<usize> = items.to_vec();
    starts.sort_by(|&x, &y| a[x][axis].cmp(&a[y][axis]));
    let mut ends: Vec<usize> = items.to_vec();
    ends.sort_by(|&x, &y| b[x][axis].cmp(&b[y][axis]));
    let (mut i, mut j, mut depth) = (0, 0, 0u64);
    while i < starts.len() {
        let x = a[starts[i]][axis].clone();
        while j < ends.len() && b[ends[j]][axis] < x {
            depth -= w[ends[j]];
            j += 1;
        }
        while i < starts.len() && a[starts[i]][axis] == x {
            depth += w[starts[i]];
            i += 1;
        }
        if depth >= k {
            return Some(x);
        }
    }
    None
}

/// Range-add / global-max segment tree reporting an argmax leaf.
struct MaxTree {
    size: usize,
    max: Vec<u64>,
    add: Vec<u64>,
}

impl MaxTree {
    fn new(n: usize) -> Self {
        let size = n.next_power_of_two();
        MaxTree { size, max: vec![0; 2 * size], add: vec![0; 2 * size] }
    }

    fn update(&mut self, node: usize, nl: usize, nr: usize, l: usize, r: usize, v: i64) {
        if r < nl || nr < l {
            return;
        }
        if l <= nl && nr <= r {
            self.add[node] = (self.add[node] as i64 + v) as u64;
            self.max[node] = (self.max[node] as i64 + v) as u64;
            return;
        }
        let mid = (nl + nr) / 2;
        self.update(2 * node, nl, mid, l, r, v);
        self.update(2 * node + 1, mid + 1, nr, l, r, v);
        self.max[node] = self.add[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    fn range_add(&mut self, l: usize, r: usize, v: i64) {
        let s = self.size;
        self.update(1, 0, s - 1, l, r, v);
    }

    fn argmax(&self) -> usize {
        let mut node = 1;
        while node < self.size {
            node = if self.max[2 * node] >= self.max[2 * node + 1] { 2 * node } else { 2 * node + 1 };
        }
        node - self.size
    }
}

fn sweep_2d<T: Coord>(
    items: &[usize],
    a: &[Vec<T>],
    b: &[Vec<T>],
    w: &[u64],
    axis: usize,
    k: u64,
) -> Option<Vec<T>> {
    let (x0, x1) = (axis, axis + 1);
    let mut ys: Vec<T> = items
        .iter()
        .flat_map(|&o| [a[o][x1].clone(), b[o][x1].clone()])
        .collect();
    ys.sort();
    ys.dedup();
    let idx = |v: &T| ys.binary_search(v).expect("compressed coordinate");
    let mut tree = MaxTree::new(ys.len());
    let mut starts: Vec<usize> = items.to_vec();
    starts.sort_by(|&x, &y| a[x][x0].cmp(&a[y][x0]));
    let mut ends: Vec<usize> = items.to_vec();
    ends.sort_by(|&x, &y| b[x][x0].cmp(&b[y][x0]));
    let (mut i, mut j) = (0, 0);
    while i < starts.len() {
        let x = a[starts[i]][x0].clone();
        while j < ends.len() && b[ends[j]][x0] < x {
            let o = ends[j];
            tree.range_add(idx(&a[o][x1]), idx(&b[o][x1]), -(w[o] as i64));
            j += 1;
        }
        while i < starts.len() && a[starts[i]][x0] == x {
            let o = starts[i];
            tree.range_add(idx(&a[o][x1]), idx(&b[o][x1]), w[o] as i64);
            i += 1;
        }
        if tree.max[1] >= k {
            return Some(vec![x, ys[tree.argmax()].clone()]);
        }
    }
    None
}

fn enumerate<T: Coord>(lo: &[Vec<T>], hi: &[Vec<T>], w: &[u64], k: u64) -> (Vec<T>, T) {
    let n = lo.len();
    let d = lo[0].len();
    let mut axis_vals: Vec<Vec<T>> = (0..d)
        .map(|j| {
            let mut v: Vec<T> = lo.iter().map(|p| p[j].clone()).collect();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    axis_vals.iter_mut().for_each(|v| v.shrink_to_fit());
    let mut best: Option<(T, Vec<T>)> = None;
    let mut corner = vec![0usize; d];
    loop {
        let x: Vec<T> = (0..d).map(|j| axis_vals[j][corner[j]].clone()).collect();
        let mut sides: Vec<T> = Vec::new();
        for p in hi {
            for j in 0..d {
                let s = p[j].clone() - x[j].clone();
                if s > T::zero() {
                    sides.push(s);
                }
            }
        }
        sides.sort();
        sides.dedup();
        for s in sides {
            if let Some((bs, _)) = &best {
                if s >= *bs {
                    break;
                }
            }
            let weight: u64 = (0..n)
                .filter(|&o| (0..d).all(|j| x[j] <= lo[o][j] && hi[o][j] <= x[j].clone() + s.clone()))
                .map(|o| w[o])
                .sum();
            if weight >= k {
                best = Some((s, x.clone()));
                break;
            }
        }
        let mut j = 0;
        loop {
            if j == d {
                let (s, x) = best.expect("some cube contains everything");
                return (x, s);
            }
            corner[j] += 1;
            if corner[j] < axis_vals[j].len() {
                break;
            }
            corner[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sq(x: i64, y: i64, s: i64) -> (Vec<Rational>, Vec<Rational>) {
        (vec![int(x), int(y)], vec![int(x + s), int(y + s)])
    }

    #[test]
    fn bisect_matches_enumeration_on_small_sets() {
        let boxes = vec![sq(0, 0, 2), sq(1, 1, 2), sq(5, 5, 1), sq(6, 5, 1), sq(20, 0, 3)];
        let w = vec![1; boxes.len()];
        for k in 1..=5 {
            let a = find_base(&boxes, &w, k, H0Search::Bisect);
            let b = find_base(&boxes, &w, k, H0Search::Enumerate);
            assert_eq!(a.side, b.side, "k = {k}");
        }
    }

    #[test]
    fn three_dimensional_probe() {
        let boxes: Vec<_> = (0..6)
            .map(|i| (vec![int(i), int(2 * i), int(0)], vec![int(i + 1), int(2 * i + 1), int(1)]))
            .collect();
        let w = vec![1; 6];
        let a = find_base(&boxes, &w, 2, H0Search::Bisect);
        let b = find_base(&boxes, &w, 2, H0Search::Enumerate);
        assert_eq!(a.side, b.side);
        assert_eq!(a.side, int(3));
    }
}
