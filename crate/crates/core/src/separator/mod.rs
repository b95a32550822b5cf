//! Balanced clique-weighted separators for intersection graphs of fat objects.
//!
//! The construction: find a smallest hypercube `H_0` holding at least
//! `n/(6^d+1)` objects, place `m = ⌈n^{1/d}⌉` concentric shells `H_1..H_m` with
//! sides `L(1 + 2i/m)`, cover the objects that can meet a shell boundary by
//! cliques (one per stabbing point, per size class), and return the shell
//! whose boundary objects have the smallest clique weight.

pub mod h0;

pub use h0::H0Search;

use crate::contraction::KappaPartition;
use crate::error::{invalid, Error, Result};
use crate::geometry::{dist2_point_box, FatObject, ObjectSet, Shape};
use crate::graph::Graph;
use crate::rational::{self, int, Rational};
use crate::weight::WeightFunction;
use num_traits::{pow, Zero};
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypercube {
    pub lower: Vec<Rational>,
    pub side: Rational,
}

impl Hypercube {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn upper(&self) -> Vec<Rational> {
        self.lower.iter().map(|x| x + &self.side).collect()
    }

    pub fn center(&self) -> Vec<Rational> {
        let half = &self.side / int(2);
        self.lower.iter().map(|x| x + &half).collect()
    }

    /// Hypercube with the same center and the given side.
    pub fn concentric(&self, side: Rational) -> Hypercube {
        let half = &side / int(2);
        let lower = self.center().iter().map(|c| c - &half).collect();
        Hypercube { lower, side }
    }

    /// Whether the object meets the closed hypercube.
    pub fn meets(&self, o: &FatObject) -> bool {
        let upper = self.upper();
        match &o.shape {
            Shape::Ball { center, radius } => dist2_point_box(&center.0, &self.lower, &upper) <= radius * radius,
            Shape::Box { .. } => {
                let (lo, hi) = o.bbox();
                (0..self.dim()).all(|j| lo[j] <= upper[j] && self.lower[j] <= hi[j])
            }
        }
    }

    pub fn contains_box(&self, lo: &[Rational], hi: &[Rational]) -> bool {
        let upper = self.upper();
        (0..self.dim()).all(|j| self.lower[j] <= lo[j] && hi[j] <= upper[j])
    }

    /// Whether the box lies in the open interior.
    pub fn strictly_contains_box(&self, lo: &[Rational], hi: &[Rational]) -> bool {
        let upper = self.upper();
        (0..self.dim()).all(|j| self.lower[j] < lo[j] && hi[j] < upper[j])
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "lower": self.lower.iter().map(rational::format).collect::<Vec<_>>(),
            "side": rational::format(&self.side),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Hypercube> {
        let num = |x: &serde_json::Value| -> Result<Rational> {
            let s = x.as_str().ok_or_else(|| Error::InvalidInput(format!("expected a rational string, got {x}")))?;
            rational::parse(s).map_err(Error::InvalidInput)
        };
        let lower = v["lower"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("hypercube needs a lower corner".into()))?
            .iter()
            .map(num)
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypercube { lower, side: num(&v["side"])? })
    }
}

/// `⌈n^{1/d}⌉`, computed exactly.
pub fn shell_count(n: usize, d: usize) -> usize {
    let mut m = ((n as f64).powf(1.0 / d as f64).round() as usize).max(1);
    while m > 1 && (m - 1).pow(d as u32) >= n {
        m -= 1;
    }
    while m.pow(d as u32) < n {
        m += 1;
    }
    m
}

/// `⌈n/(6^d+1)⌉`.
pub fn base_threshold(n: u64, d: usize) -> u64 {
    n.div_ceil(6u64.pow(d as u32) + 1).max(1)
}

/// `⌈(1 - 1/d) log2 n⌉ - 2`, computed exactly.
pub fn max_size_class(n: usize, d: usize) -> i64 {
    // smallest c with 2^{c d} >= n^{d-1}
    let target = num_bigint::BigUint::from(n).pow(d as u32 - 1);
    let mut c = 0i64;
    while num_bigint::BigUint::from(2u32).pow((c as usize * d) as u32) < target {
        c += 1;
    }
    c - 2
}

pub fn find_base_hypercube(f: &ObjectSet, mode: H0Search) -> Result<Hypercube> {
    if f.is_empty() {
        return invalid("empty object set");
    }
    let boxes: Vec<_> = f.objects.iter().map(FatObject::bbox).collect();
    let k = base_threshold(f.len() as u64, f.dimension);
    Ok(h0::find_base(&boxes, &vec![1; f.len()], k, mode))
}

/// Shells `H_1..H_m` around `h0`, with `H_i` of side `L(1 + 2i/m)`.
pub fn build_candidate_shells(h0: &Hypercube, n: usize) -> Vec<Hypercube> {
    let m = shell_count(n.max(1), h0.dim());
    (1..=m)
        .map(|i| h0.concentric(&h0.side * Rational::new((m + 2 * i).into(), m.into())))
        .collect()
}

/// Index range `[a, b]` (1-based, inclusive) of the shells whose boundary
/// the object meets, given monotone predicates over `1..=m`.
fn boundary_range(m: usize, meets: impl Fn(usize) -> bool, inside: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
    let first = |p: &dyn Fn(usize) -> bool| {
        let (mut lo, mut hi) = (1, m + 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if p(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    };
    let a = first(&meets);
    let b = first(&inside) - 1;
    (a <= b).then_some((a, b))
}

/// `diam < 2^s L / n^{1/d}` for squared diameter `diam2` and squared side `l2`.
fn diam_below(diam2: &Rational, s: i64, l2: &Rational, n: usize, d: usize) -> bool {
    let lhs = pow(diam2.clone(), d) * int(n as i64) * int(n as i64);
    let scale = if s >= 0 { int(4).pow(s as i32) } else { Rational::new(1.into(), 4.into()).pow((-s) as i32) };
    lhs < pow(scale * l2, d)
}

/// Smallest `s >= 0` with `diam < 2^s L / n^{1/d}`.
pub fn size_class(diam2: &Rational, side: &Rational, n: usize, d: usize) -> usize {
    let l2 = side * side;
    let mut s = 0;
    while !diam_below(diam2, s, &l2, n, d) {
        s += 1;
    }
    s as usize
}

fn quarter_pow(s: i64) -> Rational {
    if s >= 0 {
        int(4).pow(s as i32)
    } else {
        Rational::new(1.into(), 4.into()).pow((-s) as i32)
    }
}

/// Exponent `t` of the dyadic stabbing spacing `L 2^{-t}` for size class `s`:
/// the largest spacing not exceeding `α 2^{s-2} L / (√d n^{1/d})`.
fn class_spacing_exponent(s: usize, n: usize, d: usize, alpha2: &Rational) -> u32 {
    let rhs = pow(alpha2 * quarter_pow(s as i64 - 2), d) / (int(n as i64) * int(n as i64));
    let mut t = 0u32;
    while pow(quarter_pow(-(t as i64)) * int(d as i64), d) > rhs {
        t += 1;
    }
    t
}

/// Exponent for large objects: spacing at most `α L / (4√d)`.
fn large_spacing_exponent(d: usize, alpha2: &Rational) -> u32 {
    let mut t = 0u32;
    while quarter_pow(-(t as i64)) * int(16 * d as i64) > *alpha2 {
        t += 1;
    }
    t
}

/// Lexicographically smallest point of `origin + δ Z^d` in the closed ball.
fn stab_point(center: &[Rational], radius: &Rational, origin: &[Rational], delta: &Rational) -> Vec<i64> {
    let d = center.len();
    let u: Vec<Rational> = (0..d).map(|j| (&center[j] - &origin[j]) / delta).collect();
    let rho2 = {
        let r = radius / delta;
        &r * &r
    };
    let nearest = |x: &Rational| {
        let f = x.floor();
        let a = x - &f;
        let b = &f + int(1) - x;
        if a <= b { &a * &a } else { &b * &b }
    };
    let tail: Vec<Rational> = (0..d).map(|j| nearest(&u[j])).collect();
    let mut used = Rational::zero();
    let mut z = Vec::with_capacity(d);
    for j in 0..d {
        let rest: Rational = tail[j + 1..].iter().sum();
        let budget = &rho2 - &used - rest;
        debug_assert!(budget >= Rational::zero());
        let cost = |k: i64| {
            let t = int(k) - &u[j];
            &t * &t
        };
        let guess = rational::to_f64(&u[j]) - rational::to_f64(&budget).max(0.0).sqrt();
        let mut k = guess.ceil() as i64;
        while cost(k - 1) <= budget {
            k -= 1;
        }
        while cost(k) > budget {
            k += 1;
        }
        used += cost(k);
        z.push(k);
    }
    z
}

/// Objects of size class `s >= 1` grouped by their stabbing grid point.
/// Returns object ids; errors if an object lies outside the class.
pub fn clique_cover_size_class(
    objs: &[&FatObject],
    s: usize,
    n: usize,
    base: &Hypercube,
    alpha2: &Rational,
) -> Result<Vec<Vec<usize>>> {
    if s == 0 {
        return invalid("size class 0 is covered by singletons");
    }
    let d = base.dim();
    let l2 = &base.side * &base.side;
    for o in objs {
        let diam2 = o.diameter_squared();
        if diam_below(&diam2, s as i64 - 1, &l2, n, d) || !diam_below(&diam2, s as i64, &l2, n, d) {
            return invalid(format!("object {} is not in size class {s}", o.id));
        }
    }
    let t = class_spacing_exponent(s, n, d, alpha2);
    Ok(stab_groups(objs, base, t))
}

fn stab_groups(objs: &[&FatObject], base: &Hypercube, t: u32) -> Vec<Vec<usize>> {
    let delta = &base.side / int(2).pow(t as i32);
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for o in objs {
        let (c, r) = o.inner_ball();
        groups.entry(stab_point(&c, &r, &base.lower, &delta)).or_default().push(o.id);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeparatorOptions {
    pub gamma: WeightFunction,
    pub h0: H0Search,
}

/// Everything computed before a shell is picked; exposed for inspection.
#[derive(Debug, Clone)]
pub struct ShellAnalysis {
    pub base: Hypercube,
    pub shells: Vec<Hypercube>,
    /// Large objects meeting the outermost shell.
    pub large: Vec<usize>,
    pub large_cliques: Vec<Vec<usize>>,
    /// Clique partition of the remaining objects that can meet a shell boundary.
    pub cliques: Vec<Vec<usize>>,
    /// Per object: size class if the object belongs to `F*`.
    pub size_class: Vec<Option<usize>>,
    /// Per object: 1-based shell range whose boundary it meets.
    pub boundary: Vec<Option<(usize, usize)>>,
    pub candidate_weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueSeparator {
    pub cliques: Vec<Vec<usize>>,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub weight: f64,
    /// `max(|A|, |B|) / n`, counted in original vertices.
    pub balance: f64,
    pub shell_index: usize,
    pub base: Hypercube,
    pub shell: Hypercube,
}

impl CliqueSeparator {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cliques.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Violations of the separator invariants on graph `g` in dimension `d`.
    pub fn validate(&self, g: &Graph, d: usize) -> Vec<String> {
        let n = g.n();
        let mut out = Vec::new();
        let mut label = vec![0u8; n];
        let mut put = |v: usize, l: u8, out: &mut Vec<String>| {
            if v >= n {
                out.push(format!("vertex {v} out of range"));
            } else if label[v] != 0 {
                out.push(format!("vertex {v} appears twice"));
            } else {
                label[v] = l;
            }
        };
        for c in &self.cliques {
            c.iter().for_each(|&v| put(v, 1, &mut out));
        }
        self.side_a.iter().for_each(|&v| put(v, 2, &mut out));
        self.side_b.iter().for_each(|&v| put(v, 3, &mut out));
        if !out.is_empty() {
            return out;
        }
        if let Some(v) = label.iter().position(|&l| l == 0) {
            out.push(format!("vertex {v} is not covered"));
        }
        for (i, c) in self.cliques.iter().enumerate() {
            if !g.is_clique(c) {
                out.push(format!("clique {i} is not complete"));
            }
        }
        for (u, v) in g.edges() {
            if label[u] >= 2 && label[v] >= 2 && label[u] != label[v] {
                out.push(format!("edge ({u},{v}) crosses the separator"));
            }
        }
        let big = self.side_a.len().max(self.side_b.len()) as u128;
        let p = 6u128.pow(d as u32);
        if big * (p + 1) > p * n as u128 {
            out.push(format!("unbalanced: {big} of {n}"));
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "kind": "separator",
            "cliques": self.cliques,
            "side_a": self.side_a,
            "side_b": self.side_b,
            "weight": self.weight,
            "balance": self.balance,
            "shell_index": self.shell_index,
            "base": self.base.to_json_value(),
            "shell": self.shell.to_json_value(),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<CliqueSeparator> {
        fn field<T: serde::de::DeserializeOwned>(v: &serde_json::Value, key: &str) -> Result<T> {
            serde_json::from_value(v[key].clone()).map_err(|e| Error::InvalidInput(format!("separator field {key}: {e}")))
        }
        Ok(CliqueSeparator {
            cliques: field(v, "cliques")?,
            side_a: field(v, "side_a")?,
            side_b: field(v, "side_b")?,
            weight: field(v, "weight")?,
            balance: field(v, "balance")?,
            shell_index: field(v, "shell_index")?,
            base: Hypercube::from_json_value(&v["base"])?,
            shell: Hypercube::from_json_value(&v["shell"])?,
        })
    }
}

/// Builds the shell analysis for `f`.
pub fn analyze(f: &ObjectSet, opts: &SeparatorOptions) -> Result<ShellAnalysis> {
    let n = f.len();
    let d = f.dimension;
    let base = find_base_hypercube(f, opts.h0)?;
    let shells = build_candidate_shells(&base, n);
    let m = shells.len();
    let outer = &shells[m - 1];
    let l2 = &base.side * &base.side;
    let quarter2 = &l2 / int(16);
    let alpha2 = f.fatness_squared();
    let s_max = max_size_class(n, d).max(0) as usize;

    let mut large = Vec::new();
    let mut size_class_of = vec![None; n];
    let mut boundary = vec![None; n];
    let mut by_class: BTreeMap<usize, Vec<&FatObject>> = BTreeMap::new();
    for o in &f.objects {
        let (lo, hi) = o.bbox();
        if base.strictly_contains_box(&lo, &hi) || !outer.meets(o) {
            continue;
        }
        let diam2 = o.diameter_squared();
        if diam2 >= quarter2 {
            large.push(o.id);
            continue;
        }
        let s = size_class(&diam2, &base.side, n, d);
        debug_assert!(s <= s_max, "size classes cover every small object");
        size_class_of[o.id] = Some(s);
        boundary[o.id] = boundary_range(m, |i| shells[i - 1].meets(o), |i| {
            i <= m && shells[i - 1].strictly_contains_box(&lo, &hi)
        });
        by_class.entry(s).or_default().push(o);
    }

    let mut cliques = Vec::new();
    for (&s, objs) in &by_class {
        if s == 0 {
            cliques.extend(objs.iter().map(|o| vec![o.id]));
        } else {
            let t = class_spacing_exponent(s, n, d, &alpha2);
            cliques.extend(stab_groups(objs, &base, t));
        }
    }
    let large_objs: Vec<&FatObject> = large.iter().map(|&i| &f.objects[i]).collect();
    let large_cliques = stab_groups(&large_objs, &base, large_spacing_exponent(d, &alpha2));

    let large_weight: f64 = large_cliques.iter().map(|c| opts.gamma.eval(c.len())).sum();
    let mut candidate_weights = vec![large_weight; m];
    let mut count = vec![0usize; m + 1];
    for c in &cliques {
        let ranges: Vec<(usize, usize)> = c.iter().filter_map(|&v| boundary[v]).collect();
        if ranges.is_empty() {
            continue;
        }
        let lo = ranges.iter().map(|r| r.0).min().expect("nonempty");
        let hi = ranges.iter().map(|r| r.1).max().expect("nonempty");
        for &(a, b) in &ranges {
            for slot in &mut count[a..=b] {
                *slot += 1;
            }
        }
        for i in lo..=hi {
            if count[i] > 0 {
                candidate_weights[i - 1] += opts.gamma.eval(count[i]);
                count[i] = 0;
            }
        }
    }

    Ok(ShellAnalysis {
        base,
        shells,
        large,
        large_cliques,
        cliques,
        size_class: size_class_of,
        boundary,
        candidate_weights,
    })
}

/// Index (1-based) of the lightest candidate, ties to the smallest index.
fn lightest(weights: &[f64]) -> usize {
    let mut best = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w < weights[best] {
            best = i;
        }
    }
    best + 1
}

/// Balanced clique separator of the intersection graph of `f`.
pub fn build_separator(f: &ObjectSet, opts: &SeparatorOptions) -> Result<CliqueSeparator> {
    let a = analyze(f, opts)?;
    let i = lightest(&a.candidate_weights);
    Ok(separator_at(f, &a, i))
}

/// The candidate separator of shell `i` (1-based).
pub fn separator_at(f: &ObjectSet, a: &ShellAnalysis, i: usize) -> CliqueSeparator {
    let shell = a.shells[i - 1].clone();
    let in_sep = |v: usize| matches!(a.boundary[v], Some((lo, hi)) if lo <= i && i <= hi);
    let mut cliques: Vec<Vec<usize>> = a
        .cliques
        .iter()
        .map(|c| c.iter().copied().filter(|&v| in_sep(v)).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    cliques.extend(a.large_cliques.iter().cloned());
    let mut is_large = vec![false; f.len()];
    a.large.iter().for_each(|&v| is_large[v] = true);
    let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
    for o in &f.objects {
        if is_large[o.id] {
            continue;
        }
        let (lo, hi) = o.bbox();
        if shell.strictly_contains_box(&lo, &hi) {
            side_a.push(o.id);
        } else if !shell.meets(o) {
            side_b.push(o.id);
        }
    }
    let n = f.len().max(1);
    CliqueSeparator {
        weight: a.candidate_weights[i - 1],
        balance: side_a.len().max(side_b.len()) as f64 / n as f64,
        cliques,
        side_a,
        side_b,
        shell_index: i,
        base: a.base.clone(),
        shell,
    }
}

/// Separator of the contracted graph restricted to `classes`, built on the
/// union-objects of the classes. Cliques of the result are singleton class
/// lists; the two sides list classes. Balance is counted in vertices.
pub fn separator_for_contraction(
    p: &KappaPartition,
    f: &ObjectSet,
    classes: &[usize],
    opts: &SeparatorOptions,
) -> Result<CliqueSeparator> {
    if f.len() != p.class_of.len() {
        return Err(Error::Unsupported("partition has no matching geometry".into()));
    }
    if classes.is_empty() {
        return invalid("no classes to separate");
    }
    let d = f.dimension;
    let bbox: Vec<(Vec<Rational>, Vec<Rational>)> = classes
        .iter()
        .map(|&c| {
            let mut it = p.classes[c].iter().map(|&v| f.objects[v].bbox());
            let (mut lo, mut hi) = it.next().expect("classes are nonempty");
            for (l, h) in it {
                for j in 0..d {
                    if l[j] < lo[j] {
                        lo[j] = l[j].clone();
                    }
                    if h[j] > hi[j] {
                        hi[j] = h[j].clone();
                    }
                }
            }
            (lo, hi)
        })
        .collect();
    let sizes: Vec<u64> = classes.iter().map(|&c| p.classes[c].len() as u64).collect();
    let total: u64 = sizes.iter().sum();
    let base = h0::find_base(&bbox, &sizes, base_threshold(total, d), opts.h0);
    let shells = build_candidate_shells(&base, total as usize);
    let m = shells.len();
    let quarter = &base.side / int(4);
    let meets = |k: usize, h: &Hypercube| p.classes[classes[k]].iter().any(|&v| h.meets(&f.objects[v]));

    let mut large = vec![false; classes.len()];
    let mut range = vec![None; classes.len()];
    for k in 0..classes.len() {
        let (lo, hi) = &bbox[k];
        if base.strictly_contains_box(lo, hi) || !meets(k, &shells[m - 1]) {
            continue;
        }
        let extent = (0..d).map(|j| &hi[j] - &lo[j]).max().expect("d >= 2");
        if extent >= quarter {
            large[k] = true;
            continue;
        }
        range[k] = boundary_range(m, |i| meets(k, &shells[i - 1]), |i| shells[i - 1].strictly_contains_box(lo, hi));
    }
    let w = |k: usize| p.contracted.weights[classes[k]];
    let large_weight: f64 = (0..classes.len()).filter(|&k| large[k]).map(w).sum();
    let mut weights = vec![large_weight; m];
    for k in 0..classes.len() {
        if let Some((a, b)) = range[k] {
            for wi in &mut weights[a - 1..b] {
                *wi += w(k);
            }
        }
    }
    let i = lightest(&weights);
    let shell = shells[i - 1].clone();
    let (mut cliques, mut side_a, mut side_b) = (Vec::new(), Vec::new(), Vec::new());
    let (mut na, mut nb) = (0u64, 0u64);
    for k in 0..classes.len() {
        let c = classes[k];
        let (lo, hi) = &bbox[k];
        if large[k] || matches!(range[k], Some((a, b)) if a <= i && i <= b) {
            cliques.push(vec![c]);
        } else if shell.strictly_contains_box(lo, hi) {
            side_a.push(c);
            na += sizes[k];
        } else {
            debug_assert!(!meets(k, &shell));
            side_b.push(c);
            nb += sizes[k];
        }
    }
    Ok(CliqueSeparator {
        cliques,
        side_a,
        side_b,
        weight: weights[i - 1],
        balance: na.max(nb) as f64 / total as f64,
        shell_index: i,
        base,
        shell,
    })
}
