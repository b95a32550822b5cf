//! Divide-and-conquer wiring of an arbitrary matching: rough reordering in
//! three disjoint subgrids, a global movement of the upper half, and
//! recursion on both halves side by side.

use super::moves::{comp, compress, expand, lex_wiring, local_movement, magn, shift_axis};
use super::{box_points, emb, rise, walk, GridPoint, Wiring, WiringInstance};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Regression threshold for the longest wire, in units of `d·Σ(n)`; the
/// construction measures about 50 on random permutations up to side 16.
pub const LENGTH_FACTOR: usize = 64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireOptions {
    /// Assert that pushed, pulled and staying wires keep to the (1,3), (2,3)
    /// and (0,3) subgrids during rough reordering.
    pub check_subgrids: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WiringStats {
    pub height: i64,
    /// `Σ(n)`, the sum of the box sides.
    pub sum_n: i64,
    pub height_ratio: f64,
    pub max_length: usize,
    /// Longest wire over `d·Σ(n)`.
    pub length_ratio: f64,
}

impl WiringStats {
    pub fn measure(w: &Wiring, n: &[i64]) -> WiringStats {
        let sum_n: i64 = n.iter().sum();
        let max_length = w.max_length();
        WiringStats {
            height: w.height,
            sum_n,
            height_ratio: w.height as f64 / sum_n as f64,
            max_length,
            length_ratio: max_length as f64 / (w.d as i64 * sum_n) as f64,
        }
    }
}

pub fn wire_matching(inst: &WiringInstance) -> Result<Wiring> {
    wire_matching_with(inst, &WireOptions::default())
}

/// Wires the matching inside `Box_{d-1}(36n) × [h]`.
pub fn wire_matching_with(inst: &WiringInstance, opts: &WireOptions) -> Result<Wiring> {
    if inst.d < 3 {
        return Err(Error::Unsupported(format!("wiring needs d ≥ 3, got {}", inst.d)));
    }
    inst.validate()?;
    let big: Vec<i64> = inst.n.iter().map(|&s| (s as u64).next_power_of_two() as i64).collect();
    // Pad with dummy pairs so that both sides are the whole box.
    let used_p: HashSet<&GridPoint> = inst.pairs.iter().map(|(p, _)| p).collect();
    let used_q: HashSet<&GridPoint> = inst.pairs.iter().map(|(_, q)| q).collect();
    let all = box_points(&big);
    let free_p = all.iter().filter(|p| !used_p.contains(p));
    let free_q = all.iter().filter(|q| !used_q.contains(q));
    let mut pairs = inst.pairs.clone();
    pairs.extend(free_p.cloned().zip(free_q.cloned()));
    let spread: Vec<GridPoint> = pairs.iter().map(|(p, _)| magn(p, 3, 0)).collect();
    let gathered: Vec<GridPoint> = pairs.iter().map(|(_, q)| magn(q, 18, 0)).collect();
    let start = expand(&spread, 3, &big)?;
    let middle = route(&pairs, &big, &vec![0; big.len()], opts)?;
    let end = compress(&gathered, 18, &big)?;
    let mut w = start.then(middle).then(end);
    w.wires.truncate(inst.pairs.len());
    w.sides = inst.n.iter().map(|&s| 36 * s).collect();
    w.length_bound = Some(LENGTH_FACTOR * inst.d * inst.n.iter().sum::<i64>() as usize);
    Ok(w)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Push,
    Pull,
    Stay,
}

fn add(a: &[i64], b: &[i64]) -> GridPoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Routes wire `i` from `off + 3·a_i` to `off + 18·b_i`, where the `a_i` and
/// the `b_i` each enumerate `Box(n)`; `n` has power-of-two sides.
fn route(pairs: &[(GridPoint, GridPoint)], n: &[i64], off: &[i64], opts: &WireOptions) -> Result<Wiring> {
    let dim = n.len();
    if n.iter().all(|&s| s == 1) {
        let (a, b) = &pairs[0];
        return local_movement(&[add(off, &magn(a, 3, 0))], &[add(off, &magn(b, 18, 0))], 18);
    }
    let ax = (0..dim).fold(0, |m, i| if n[i] > n[m] { i } else { m });
    let half = n[ax] / 2;
    let kinds: Vec<Kind> = pairs
        .iter()
        .map(|(a, b)| match (a[ax] <= half, b[ax] <= half) {
            (true, false) => Kind::Push,
            (false, true) => Kind::Pull,
            _ => Kind::Stay,
        })
        .collect();
    let mut logical: Vec<GridPoint> = pairs.iter().map(|(a, _)| a.clone()).collect();
    let mut w = Wiring::vertical(dim + 1, &logical.iter().map(|a| add(off, &magn(a, 3, 0))).collect::<Vec<_>>(), 1);
    if kinds.contains(&Kind::Push) {
        let (frag, moved) = rough_reorder(&logical, &kinds, n, off, opts)?;
        w = w.then(frag);
        logical = moved;
    }
    // Global movement of the upper half along `ax` by 15·n_ax/2.
    let lo = off[ax] + 3 * (half + 1);
    let hi = off[ax] + 3 * n[ax];
    let shift = 15 * n[ax] / 2;
    let (upper, lower): (Vec<usize>, Vec<usize>) = (0..pairs.len()).partition(|&i| logical[i][ax] > half);
    let pos = |i: &usize| add(off, &magn(&logical[*i], 3, 0));
    let up_pts: Vec<GridPoint> = upper.iter().map(pos).collect();
    let low_pts: Vec<GridPoint> = lower.iter().map(pos).collect();
    let layers = hi - lo + 3;
    let glob = Wiring::parallel(
        dim + 1,
        pairs.len(),
        vec![(shift_axis(&up_pts, ax, shift, lo, hi), upper.clone()), (Wiring::vertical(dim + 1, &low_pts, layers), lower.clone())],
    );
    w = w.then(glob);
    // Recurse on both halves in disjoint sub-boxes.
    let mut sub_n = n.to_vec();
    sub_n[ax] = half;
    let mut up_off = off.to_vec();
    up_off[ax] += 9 * n[ax];
    let low_pairs: Vec<(GridPoint, GridPoint)> = lower.iter().map(|&i| (logical[i].clone(), pairs[i].1.clone())).collect();
    let down = |x: &GridPoint| {
        let mut y = x.clone();
        y[ax] -= half;
        y
    };
    let up_pairs: Vec<(GridPoint, GridPoint)> = upper.iter().map(|&i| (down(&logical[i]), down(&pairs[i].1))).collect();
    if low_pairs.iter().any(|(_, b)| b[ax] > half) || up_pairs.iter().any(|(_, b)| b[ax] < 1) {
        return Err(Error::VerificationFailed("rough reordering left a wire in the wrong half".into()));
    }
    let (a, b) = rayon::join(|| route(&low_pairs, &sub_n, off, opts), || route(&up_pairs, &sub_n, &up_off, opts));
    let rec = Wiring::parallel(dim + 1, pairs.len(), vec![(a?, lower), (b?, upper)]);
    Ok(w.then(rec))
}

/// Exchanges pushed and pulled wires through the (1,3)- and (2,3)-subgrids
/// while the rest wait in the (0,3)-subgrid, then snaps everything back to
/// residue 0. Returns the fragment and the new logical positions.
fn rough_reorder(
    logical: &[GridPoint],
    kinds: &[Kind],
    n: &[i64],
    off: &[i64],
    opts: &WireOptions,
) -> Result<(Wiring, Vec<GridPoint>)> {
    let dim = n.len();
    let d = dim + 1;
    let shift_of = |k: Kind| match k {
        Kind::Push => 2,
        Kind::Pull => 1,
        Kind::Stay => 0,
    };
    let starts: Vec<GridPoint> = logical.iter().map(|a| add(off, &magn(a, 3, 0))).collect();
    let sub: Vec<GridPoint> =
        logical.iter().zip(kinds).map(|(a, &k)| add(off, &magn(a, 3, -shift_of(k)))).collect();
    let first = local_movement(&starts, &sub, 3)?;
    // Lexicographic matching on axes sorted by decreasing side.
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.sort_by(|&x, &y| n[y].cmp(&n[x]));
    let permute = |x: &GridPoint| perm.iter().map(|&j| x[j]).collect::<GridPoint>();
    let pn = permute(&n.to_vec());
    let members = |k: Kind| (0..logical.len()).filter(|&i| kinds[i] == k).collect::<Vec<_>>();
    let push = members(Kind::Push);
    let pull = members(Kind::Pull);
    // Frame heights: layer 1 is the start of `first`; this fragment starts at 3.
    let mut paths: Vec<Vec<GridPoint>> = sub.iter().map(|p| vec![emb(p, 1)]).collect();
    let mut ends = vec![GridPoint::new(); logical.len()];
    for (group, other, residue) in [(&push, &pull, 1i64), (&pull, &push, 2i64)] {
        let mut from: Vec<(GridPoint, usize)> = group.iter().map(|&i| (permute(&logical[i]), i)).collect();
        from.sort();
        let mut to: Vec<GridPoint> = other.iter().map(|&i| permute(&logical[i])).collect();
        to.sort();
        let ps: Vec<GridPoint> = from.iter().map(|(p, _)| p.clone()).collect();
        let (_, lex) = lex_wiring(&ps, &to, &pn)?;
        for ((_, i), (lp, q)) in from.iter().zip(lex.into_iter().zip(&to)) {
            let path = &mut paths[*i];
            for y in lp {
                let (t, rest) = y.split_last().expect("height coordinate");
                let mut x = vec![0; dim];
                for (j, &c) in rest.iter().enumerate() {
                    x[perm[j]] = off[perm[j]] + 3 * c - 3 + residue;
                }
                // Subgrid layer t sits at frame height 3t + residue.
                walk(path, &emb(&x, 3 * t + residue - 2));
            }
            let mut dest = vec![0; dim];
            for (j, &c) in q.iter().enumerate() {
                dest[perm[j]] = c;
            }
            ends[*i] = dest;
        }
    }
    let top = paths.iter().map(|p| p.last().expect("nonempty")[dim]).max().unwrap_or(1);
    let mut wires = Vec::with_capacity(paths.len());
    for (i, mut path) in paths.into_iter().enumerate() {
        rise(&mut path, top);
        if kinds[i] == Kind::Stay {
            ends[i] = logical[i].clone();
        }
        let origin = sub[i].clone();
        let destination = path.last().expect("nonempty")[..dim].to_vec();
        if opts.check_subgrids {
            let r = [Kind::Stay, Kind::Push, Kind::Pull].iter().position(|&k| k == kinds[i]).expect("kind") as i64;
            for p in &path {
                let mut frame = p.clone();
                frame[dim] += 2;
                let off_grid = frame.iter().filter(|&&c| c.rem_euclid(3) != r).count();
                if off_grid > 1 && !(r == 0 && p[..dim].iter().all(|c| c.rem_euclid(3) == 0)) {
                    return Err(Error::VerificationFailed(format!("wire point {frame:?} leaves the ({r},3)-subgrid")));
                }
            }
        }
        wires.push(super::Wire { origin, destination, path });
    }
    let middle = Wiring::from_wires(d, top, wires);
    let here: Vec<GridPoint> = middle.wires.iter().map(|w| w.destination.clone()).collect();
    let snapped: Vec<GridPoint> = here.iter().map(|x| magn(&comp(x, 3), 3, 0)).collect();
    let last = local_movement(&here, &snapped, 3)?;
    let moved: Vec<GridPoint> =
        snapped.iter().map(|x| x.iter().zip(off).map(|(c, o)| (c - o) / 3).collect()).collect();
    debug_assert!(moved.iter().zip(&ends).all(|(a, b)| a == b));
    Ok((first.then(middle).then(last), moved))
}
