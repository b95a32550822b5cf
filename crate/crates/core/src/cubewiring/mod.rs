//! Routing matchings between two faces of a grid box by vertex-disjoint
//! lattice paths, and grid-minor embeddings built on top of it.
//!
//! Coordinates are 1-based. A point of `Box_{d-1}(n)` has `d - 1` coordinates;
//! a path point appends the height as coordinate `d`.

mod minor;
mod moves;
mod theorem;

pub use minor::{contract_embedding, embed_minor, MinorEmbedding};
pub use moves::{comp, compress, expand, global_movement, local_movement, magn, push_pull};
pub use theorem::{wire_matching, wire_matching_with, WireOptions, WiringStats, LENGTH_FACTOR};

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type GridPoint = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wire {
    pub origin: GridPoint,
    pub destination: GridPoint,
    /// Lattice path from `emb^1(origin)` to `emb^h(destination)`.
    pub path: Vec<GridPoint>,
}

impl Wire {
    /// Number of unit steps.
    pub fn length(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

/// Wires inside `sides[0] × … × sides[d-2] × [height]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wiring {
    pub d: usize,
    pub sides: Vec<i64>,
    pub height: i64,
    /// Declared upper bound on every wire length, if any.
    pub length_bound: Option<usize>,
    pub wires: Vec<Wire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringInstance {
    pub d: usize,
    pub n: Vec<i64>,
    /// The matching as `(p, q)` pairs with `p ∈ P` and `q ∈ Q`.
    pub pairs: Vec<(GridPoint, GridPoint)>,
}

impl WiringInstance {
    pub fn validate(&self) -> Result<()> {
        if self.n.len() + 1 != self.d {
            return invalid(format!("n has {} entries, expected {}", self.n.len(), self.d.saturating_sub(1)));
        }
        if self.n.iter().any(|&x| x < 1) {
            return invalid("box sides must be positive");
        }
        let mut ps = std::collections::HashSet::new();
        let mut qs = std::collections::HashSet::new();
        for (p, q) in &self.pairs {
            for x in [p, q] {
                if !in_box(x, &self.n) {
                    return invalid(format!("point {x:?} outside Box({:?})", self.n));
                }
            }
            if !ps.insert(p) || !qs.insert(q) {
                return invalid("matching repeats an endpoint");
            }
        }
        Ok(())
    }

    /// A uniformly random perfect matching of the whole box.
    pub fn random_permutation(d: usize, n: &[i64], seed: u64) -> Self {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let ps = box_points(n);
        let mut qs = ps.clone();
        qs.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        WiringInstance { d, n: n.to_vec(), pairs: ps.into_iter().zip(qs).collect() }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["kind"] = "wiring_instance".into();
        v
    }
}

pub(crate) fn in_box(x: &[i64], n: &[i64]) -> bool {
    x.len() == n.len() && x.iter().zip(n).all(|(&c, &s)| c >= 1 && c <= s)
}

/// All points of `Box(n)` in lexicographic order.
pub fn box_points(n: &[i64]) -> Vec<GridPoint> {
    let mut out = vec![Vec::new()];
    for &s in n {
        out = out.into_iter().flat_map(|p: GridPoint| (1..=s).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

pub(crate) fn emb(x: &[i64], h: i64) -> GridPoint {
    let mut p = x.to_vec();
    p.push(h);
    p
}

/// Appends unit steps from the last point of `path` to `target`, fixing the
/// coordinates in axis order.
pub(crate) fn walk(path: &mut Vec<GridPoint>, target: &[i64]) {
    let mut cur = path.last().expect("nonempty path").clone();
    for axis in 0..target.len() {
        while cur[axis] != target[axis] {
            cur[axis] += (target[axis] - cur[axis]).signum();
            path.push(cur.clone());
        }
    }
}

pub(crate) fn rise(path: &mut Vec<GridPoint>, to: i64) {
    let mut t = path.last().expect("nonempty path").clone();
    let h = t.len() - 1;
    t[h] = to;
    walk(path, &t);
}

impl Wiring {
    /// Wires rising straight up through `height` layers.
    pub(crate) fn vertical(d: usize, points: &[GridPoint], height: i64) -> Wiring {
        let wires = points
            .iter()
            .map(|p| Wire { origin: p.clone(), destination: p.clone(), path: (1..=height).map(|h| emb(p, h)).collect() })
            .collect();
        Wiring::from_wires(d, height, wires)
    }

    /// Sets `sides` to the bounding box of the paths.
    pub(crate) fn from_wires(d: usize, height: i64, wires: Vec<Wire>) -> Wiring {
        let mut sides = vec![1; d - 1];
        for w in &wires {
            for p in &w.path {
                for (s, &c) in sides.iter_mut().zip(p) {
                    *s = (*s).max(c);
                }
            }
        }
        Wiring { d, sides, height, length_bound: None, wires }
    }

    /// Extends every wire straight up to `height`.
    pub(crate) fn pad_to(mut self, height: i64) -> Wiring {
        for w in &mut self.wires {
            rise(&mut w.path, height);
        }
        self.height = self.height.max(height);
        self
    }

    /// Sequential composition; wire `i` of `next` continues wire `i` of `self`.
    pub(crate) fn then(mut self, next: Wiring) -> Wiring {
        assert_eq!(self.wires.len(), next.wires.len(), "composed fragments differ in size");
        let off = self.height - 1;
        let h = self.d - 1;
        for (w, n) in self.wires.iter_mut().zip(next.wires) {
            assert_eq!(w.destination, n.origin, "composed fragments do not meet");
            w.path.extend(n.path.into_iter().skip(1).map(|mut p| {
                p[h] += off;
                p
            }));
            w.destination = n.destination;
        }
        self.height += next.height - 1;
        for (s, t) in self.sides.iter_mut().zip(next.sides) {
            *s = (*s).max(t);
        }
        self
    }

    /// Places fragments side by side; `slots[k]` gives the output index of
    /// each wire of `parts[k]`. Shorter fragments are padded.
    pub(crate) fn parallel(d: usize, total: usize, parts: Vec<(Wiring, Vec<usize>)>) -> Wiring {
        let height = parts.iter().map(|(w, _)| w.height).max().unwrap_or(1);
        let mut slots: Vec<Option<Wire>> = vec![None; total];
        for (w, idx) in parts {
            for (wire, i) in w.pad_to(height).wires.into_iter().zip(idx) {
                slots[i] = Some(wire);
            }
        }
        let wires = slots.into_iter().map(|w| w.expect("every slot filled")).collect();
        Wiring::from_wires(d, height, wires)
    }

    /// Reverses every wire and flips the heights.
    pub(crate) fn reversed(mut self) -> Wiring {
        let h = self.d - 1;
        for w in &mut self.wires {
            w.path.reverse();
            for p in &mut w.path {
                p[h] = self.height + 1 - p[h];
            }
            std::mem::swap(&mut w.origin, &mut w.destination);
        }
        self
    }

    pub fn max_length(&self) -> usize {
        self.wires.iter().map(Wire::length).max().unwrap_or(0)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["kind"] = "wiring".into();
        v
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Wiring> {
        serde_json::from_value(v.clone()).or_else(|e| invalid(format!("bad wiring: {e}")))
    }
}

/// Checks a wiring against its declared box and, when given, an instance.
/// Returns the list of violations.
pub fn verify_wiring(w: &Wiring, inst: Option<&WiringInstance>) -> Vec<String> {
    let mut out = Vec::new();
    if w.sides.len() + 1 != w.d {
        out.push(format!("box has {} sides for d = {}", w.sides.len(), w.d));
        return out;
    }
    let mut owner: HashMap<&[i64], usize> = HashMap::new();
    for (i, wire) in w.wires.iter().enumerate() {
        let (Some(first), Some(last)) = (wire.path.first(), wire.path.last()) else {
            out.push(format!("wire {i} is empty"));
            continue;
        };
        if *first != emb(&wire.origin, 1) {
            out.push(format!("wire {i} starts at {first:?}, not at origin {:?} in layer 1", wire.origin));
        }
        if *last != emb(&wire.destination, w.height) {
            out.push(format!("wire {i} ends at {last:?}, not at destination {:?} in layer {}", wire.destination, w.height));
        }
        for (k, p) in wire.path.iter().enumerate() {
            let inside = p.len() == w.d
                && p[..w.d - 1].iter().zip(&w.sides).all(|(&c, &s)| c >= 1 && c <= s)
                && p[w.d - 1] >= 1
                && p[w.d - 1] <= w.height;
            if !inside {
                out.push(format!("wire {i} leaves the box at {p:?}"));
            }
            if k > 0 {
                let step: i64 = p.iter().zip(&wire.path[k - 1]).map(|(a, b)| (a - b).abs()).sum();
                if step != 1 || p.len() != wire.path[k - 1].len() {
                    out.push(format!("wire {i} jumps from {:?} to {p:?}", wire.path[k - 1]));
                }
            }
            if let Some(j) = owner.insert(p, i) {
                if j != i {
                    out.push(format!("wires {j} and {i} share {p:?}"));
                } else {
                    out.push(format!("wire {i} revisits {p:?}"));
                }
            }
        }
        if let Some(b) = w.length_bound {
            if wire.length() > b {
                out.push(format!("wire {i} has length {} above the bound {b}", wire.length()));
            }
        }
    }
    if let Some(inst) = inst {
        if inst.d != w.d {
            out.push(format!("instance dimension {} differs from wiring dimension {}", inst.d, w.d));
        }
        let mut want: Vec<(&GridPoint, &GridPoint)> = inst.pairs.iter().map(|(p, q)| (p, q)).collect();
        let mut got: Vec<(&GridPoint, &GridPoint)> = w.wires.iter().map(|x| (&x.origin, &x.destination)).collect();
        want.sort();
        got.sort();
        if want != got {
            out.push("wire endpoints do not realize the matching".into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_wires() -> Wiring {
        let mut w = Wiring::vertical(3, &[vec![1, 1], vec![2, 1]], 3);
        w.sides = vec![2, 1];
        w
    }

    #[test]
    fn vertical_wiring_is_valid() {
        assert!(verify_wiring(&two_wires(), None).is_empty());
    }

    #[test]
    fn shared_point_is_reported() {
        let mut w = two_wires();
        w.wires[1].path[1] = vec![1, 1, 2];
        let v = verify_wiring(&w, None);
        assert!(v.iter().any(|s| s.contains("share")), "{v:?}");
    }

    #[test]
    fn permuted_endpoint_is_reported() {
        let w = two_wires();
        let inst = WiringInstance { d: 3, n: vec![2, 1], pairs: vec![(vec![1, 1], vec![2, 1]), (vec![2, 1], vec![1, 1])] };
        let v = verify_wiring(&w, Some(&inst));
        assert!(v.iter().any(|s| s.contains("matching")), "{v:?}");
    }

    #[test]
    fn composition_and_reversal() {
        let a = Wiring::vertical(3, &[vec![1, 1]], 2);
        let b = Wiring::vertical(3, &[vec![1, 1]], 3);
        let c = a.then(b);
        assert_eq!(c.height, 4);
        assert_eq!(c.wires[0].length(), 3);
        let r = c.clone().reversed();
        assert!(verify_wiring(&r, None).is_empty());
        assert_eq!(box_points(&[2, 3]).len(), 6);
    }
}
