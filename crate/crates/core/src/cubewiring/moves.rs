//! The movement primitives: local and global movement, compression and
//! expansion, and pushing/pulling along the lexicographic matching.

use super::{emb, in_box, rise, walk, GridPoint, Wire, Wiring};
use crate::error::{invalid, Result};
use std::collections::{HashMap, HashSet};

/// Index of the `k`-cell holding `x`, per coordinate; cells are numbered from 1.
pub fn comp(x: &[i64], k: i64) -> GridPoint {
    x.iter().map(|&c| (c - 1).div_euclid(k) + 1).collect()
}

pub fn magn(x: &[i64], k: i64, r: i64) -> GridPoint {
    x.iter().map(|&c| k * c + r).collect()
}

fn check_points(ps: &[GridPoint]) -> Result<usize> {
    let Some(first) = ps.first() else {
        return invalid("empty point set");
    };
    let dim = first.len();
    if dim == 0 {
        return invalid("points need at least one coordinate");
    }
    if ps.iter().any(|p| p.len() != dim) {
        return invalid("points of mixed dimension");
    }
    if ps.iter().any(|p| p.iter().any(|&c| c < 1)) {
        return invalid("coordinates must be positive");
    }
    Ok(dim)
}

/// Wires each `p ∈ P` to the `q ∈ Q` in its `k`-cell within 3 layers, never
/// leaving that cell. Both sets must have at most one point per cell and
/// occupy the same cells.
pub fn local_movement(ps: &[GridPoint], qs: &[GridPoint], k: i64) -> Result<Wiring> {
    if k < 1 {
        return invalid("k must be positive");
    }
    if ps.len() != qs.len() {
        return invalid("P and Q differ in size");
    }
    if ps.is_empty() {
        return invalid("empty point set");
    }
    let dim = check_points(ps)?;
    if check_points(qs)? != dim {
        return invalid("P and Q differ in dimension");
    }
    let mut target: HashMap<GridPoint, &GridPoint> = HashMap::new();
    for q in qs {
        if target.insert(comp(q, k), q).is_some() {
            return invalid(format!("Q has two points in the {k}-cell of {q:?}"));
        }
    }
    let mut seen = HashSet::new();
    let mut wires = Vec::with_capacity(ps.len());
    for p in ps {
        let cell = comp(p, k);
        let Some(q) = target.get(&cell) else {
            return invalid(format!("no point of Q in the {k}-cell of {p:?}"));
        };
        if !seen.insert(cell) {
            return invalid(format!("P has two points in the {k}-cell of {p:?}"));
        }
        let mut path = vec![emb(p, 1), emb(p, 2)];
        walk(&mut path, &emb(q, 2));
        path.push(emb(q, 3));
        wires.push(Wire { origin: p.clone(), destination: (*q).clone(), path });
    }
    Ok(Wiring::from_wires(dim + 1, 3, wires))
}

/// Translates `P ⊆ Box(n)` by `(k·n1, 0, …, 0)` in `n1 + 2` layers.
pub fn global_movement(ps: &[GridPoint], k: i64, n1: i64) -> Result<Wiring> {
    check_points(ps)?;
    if ps.iter().any(|p| p[0] > n1) {
        return invalid(format!("first coordinates must lie in [1, {n1}]"));
    }
    if ps.iter().any(|p| p[0] + k * n1 < 1) {
        return invalid("translation leaves the positive orthant");
    }
    Ok(shift_axis(ps, 0, k * n1, 1, n1))
}

/// Translation by `shift` along `axis` for points whose coordinate on that
/// axis lies in `[lo, hi]`. The wire at offset `i` from `lo` moves in its own
/// layer, ordered so that no wire crosses one that is still waiting.
pub(crate) fn shift_axis(ps: &[GridPoint], axis: usize, shift: i64, lo: i64, hi: i64) -> Wiring {
    let span = hi - lo + 1;
    let top = span + 2;
    let wires = ps
        .iter()
        .map(|p| {
            let i = p[axis] - lo + 1;
            debug_assert!((1..=span).contains(&i));
            let raise = if shift >= 0 { span + 1 - i } else { i };
            let mut q = p.clone();
            q[axis] += shift;
            let mut path = vec![emb(p, 1)];
            rise(&mut path, 1 + raise);
            walk(&mut path, &emb(&q, 1 + raise));
            rise(&mut path, top);
            Wire { origin: p.clone(), destination: q, path }
        })
        .collect();
    Wiring::from_wires(p_dim(ps) + 1, top, wires)
}

fn p_dim(ps: &[GridPoint]) -> usize {
    ps.first().map_or(0, |p| p.len())
}

fn check_spaced(ps: &[GridPoint], k: i64, n: &[i64]) -> Result<usize> {
    let dim = check_points(ps)?;
    if k < 1 {
        return invalid("k must be positive");
    }
    if n.len() != dim || n.iter().any(|&s| s < 1) {
        return invalid("box does not match the points");
    }
    let r = ps[0][0].rem_euclid(k);
    let big: Vec<i64> = n.iter().map(|&s| s * k).collect();
    for p in ps {
        if p.iter().any(|&c| c.rem_euclid(k) != r) {
            return invalid(format!("point {p:?} breaks the single residue {r} mod {k}"));
        }
        if !in_box(p, &big) {
            return invalid(format!("point {p:?} outside Box({big:?})"));
        }
    }
    let distinct: HashSet<&GridPoint> = ps.iter().collect();
    if distinct.len() != ps.len() {
        return invalid("repeated point");
    }
    Ok(dim)
}

/// Wires a `k`-spaced `P ⊆ Box(k·n)` to `comp_k(P)`, one axis at a time from
/// the last to the first; the stage for axis `a` takes `n_a + 2` layers.
pub fn compress(ps: &[GridPoint], k: i64, n: &[i64]) -> Result<Wiring> {
    let dim = check_spaced(ps, k, n)?;
    let mut cur: Vec<GridPoint> = ps.to_vec();
    let mut out: Option<Wiring> = None;
    for axis in (0..dim).rev() {
        let top = n[axis] + 2;
        let wires: Vec<Wire> = cur
            .iter()
            .map(|p| {
                let c = (p[axis] - 1).div_euclid(k) + 1;
                let mut q = p.clone();
                q[axis] = c;
                let mut path = vec![emb(p, 1)];
                rise(&mut path, 1 + c);
                walk(&mut path, &emb(&q, 1 + c));
                rise(&mut path, top);
                Wire { origin: p.clone(), destination: q, path }
            })
            .collect();
        cur = wires.iter().map(|w| w.destination.clone()).collect();
        let stage = Wiring::from_wires(dim + 1, top, wires);
        out = Some(match out {
            None => stage,
            Some(w) => w.then(stage),
        });
    }
    Ok(out.expect("at least one axis"))
}

/// The reverse of [`compress`]: wires `comp_k(P)` to the `k`-spaced `P`.
pub fn expand(ps: &[GridPoint], k: i64, n: &[i64]) -> Result<Wiring> {
    Ok(compress(ps, k, n)?.reversed())
}

/// Wires the lexicographic matching between equal-size `P, Q ⊆ Box(n)` in at
/// most `3·n1 + 2` layers of `Box(6n)`; requires `n1 ≥ n2 ≥ …`. Wires follow
/// the order of `ps`.
pub fn push_pull(ps: &[GridPoint], qs: &[GridPoint], n: &[i64]) -> Result<Wiring> {
    if ps.len() != qs.len() {
        return invalid("P and Q differ in size");
    }
    let dim = check_points(ps)?;
    if n.len() != dim || n.iter().any(|&s| s < 1) {
        return invalid("box does not match the points");
    }
    if n.windows(2).any(|w| w[0] < w[1]) {
        return invalid("box sides must be nonincreasing");
    }
    for set in [ps, qs] {
        if set.iter().any(|p| !in_box(p, n)) {
            return invalid(format!("point outside Box({n:?})"));
        }
        if set.iter().collect::<HashSet<_>>().len() != set.len() {
            return invalid("repeated point");
        }
    }
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&a, &b| ps[a].cmp(&ps[b]));
    let sp: Vec<GridPoint> = order.iter().map(|&i| ps[i].clone()).collect();
    let mut sq = qs.to_vec();
    sq.sort();
    let (height, paths) = lex_wiring(&sp, &sq, n)?;
    let mut wires: Vec<Option<Wire>> = vec![None; ps.len()];
    for ((path, i), q) in paths.into_iter().zip(&order).zip(sq) {
        wires[*i] = Some(Wire { origin: ps[*i].clone(), destination: q, path });
    }
    Ok(Wiring::from_wires(dim + 1, height, wires.into_iter().map(Option::unwrap).collect()))
}

/// Recursive pushing/pulling on lexicographically sorted `ps`, `qs`. Returns
/// the number of layers and one path per wire, whose last coordinate is the
/// height.
pub(crate) fn lex_wiring(ps: &[GridPoint], qs: &[GridPoint], n: &[i64]) -> Result<(i64, Vec<Vec<GridPoint>>)> {
    if n.is_empty() {
        // A single point of the zero-dimensional box.
        return Ok((1, ps.iter().map(|_| vec![vec![1]]).collect()));
    }
    if ps.is_empty() {
        return Ok((1, Vec::new()));
    }
    let n1 = n[0];
    let base = n1 + 2;
    let moved = shift_axis(ps, 0, 5 * n1, 1, n1);
    // Class boundaries: where the first coordinate changes in P or in Q.
    let k = ps.len();
    let mut starts = vec![0];
    for i in 1..k {
        if ps[i - 1][0] < ps[i][0] || qs[i - 1][0] < qs[i][0] {
            starts.push(i);
        }
    }
    let classes = starts.len() as i64;
    let top = base + classes + 1;
    let mut paths: Vec<Vec<GridPoint>> = moved.wires.into_iter().map(|w| w.path).collect();
    for (j, &a) in starts.iter().enumerate() {
        let b = starts.get(j + 1).copied().unwrap_or(k);
        let layer = base + j as i64 + 1;
        let p1 = ps[a][0];
        let sub_p: Vec<GridPoint> = ps[a..b].iter().map(|p| p[1..].to_vec()).collect();
        let sub_q: Vec<GridPoint> = qs[a..b].iter().map(|q| q[1..].to_vec()).collect();
        let (sub_h, sub_paths) = lex_wiring(&sub_p, &sub_q, &n[1..])?;
        for (i, sub) in (a..b).zip(sub_paths) {
            let q1 = qs[i][0];
            if 5 * n1 + p1 - sub_h < q1 {
                return invalid("inner wiring too tall for the outer box");
            }
            let path = &mut paths[i];
            rise(path, layer);
            // φ: inner height t becomes first coordinate 5·n1 + p1 − t.
            for x in sub {
                let (t, rest) = x.split_last().expect("height coordinate");
                let mut y = vec![5 * n1 + p1 - t];
                y.extend_from_slice(rest);
                y.push(layer);
                path.push(y);
            }
            walk(path, &emb(&qs[i], layer));
            rise(path, top);
        }
    }
    Ok((top, paths))
}

#[cfg(test)]
mod tests {
    use super::super::verify_wiring;
    use super::*;

    fn ok(w: &Wiring) {
        let v = verify_wiring(w, None);
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn comp_and_magn() {
        assert_eq!(comp(&[1, 3, 4], 3), vec![1, 1, 2]);
        assert_eq!(comp(&magn(&[2, 5], 3, 0), 3), vec![2, 5]);
        assert_eq!(comp(&magn(&[2, 5], 18, 0), 18), vec![2, 5]);
    }

    #[test]
    fn local_identity_and_cell_move() {
        let ps = vec![vec![1, 1], vec![4, 2]];
        let w = local_movement(&ps, &ps, 3).unwrap();
        ok(&w);
        assert!(w.wires.iter().all(|x| x.length() == 2));
        let w = local_movement(&[vec![1, 1]], &[vec![2, 2]], 3).unwrap();
        ok(&w);
        assert_eq!(w.height, 3);
        assert!(local_movement(&[vec![1, 1], vec![2, 2]], &[vec![1, 1], vec![3, 3]], 3).is_err());
    }

    #[test]
    fn global_single_point() {
        let w = global_movement(&[vec![1, 1]], 1, 2).unwrap();
        ok(&w);
        assert_eq!(w.height, 4);
        assert_eq!(w.wires[0].destination, vec![3, 1]);
        let w = global_movement(&[vec![1, 1], vec![2, 1]], 0, 2).unwrap();
        assert!(w.wires.iter().all(|x| x.length() == 3));
    }

    #[test]
    fn global_full_box() {
        let ps = super::super::box_points(&[4, 4]);
        let w = global_movement(&ps, 2, 4).unwrap();
        ok(&w);
        assert_eq!(w.height, 6);
        let right: Vec<GridPoint> = ps.iter().map(|p| vec![p[0] + 4, p[1]]).collect();
        let w = shift_axis(&right, 0, -4, 5, 8);
        ok(&w);
        assert!(w.wires.iter().zip(&ps).all(|(x, p)| &x.destination == p));
    }

    #[test]
    fn compress_line_and_round_trip() {
        let w = compress(&[vec![2], vec![4]], 2, &[2]).unwrap();
        ok(&w);
        assert_eq!(w.height, 4);
        let dest: Vec<GridPoint> = w.wires.iter().map(|x| x.destination.clone()).collect();
        assert_eq!(dest, vec![vec![1], vec![2]]);
        let ps: Vec<GridPoint> = super::super::box_points(&[3, 2]).iter().map(|p| magn(p, 3, 0)).collect();
        let c = compress(&ps, 3, &[3, 2]).unwrap();
        let e = expand(&ps, 3, &[3, 2]).unwrap();
        ok(&c);
        ok(&e);
        for (a, b) in c.wires.iter().zip(&e.wires) {
            assert_eq!(a.origin, b.destination);
            assert_eq!(a.destination, b.origin);
        }
        let id = compress(&[vec![1, 2]], 1, &[1, 2]).unwrap();
        assert_eq!(id.wires[0].destination, vec![1, 2]);
        assert!(compress(&[vec![1, 2]], 2, &[1, 1]).is_err());
    }

    #[test]
    fn push_pull_small() {
        let w = push_pull(&[vec![1], vec![2]], &[vec![3], vec![4]], &[4]).unwrap();
        ok(&w);
        assert!(w.height <= 2 * 4 + 4);
        let ps = vec![vec![1, 1], vec![2, 2]];
        let w = push_pull(&ps, &ps, &[2, 2]).unwrap();
        ok(&w);
        assert!(w.wires.iter().all(|x| x.origin == x.destination));
    }
}
