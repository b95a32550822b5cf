//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! gating failure. Runs without the libtest harness so the lines always show.

use geosep::contraction::build_kappa_partition;
use geosep::cubewiring::{contract_embedding, embed_minor, verify_wiring, wire_matching, WiringInstance, WiringStats};
use geosep::geometry::build_intersection_graph;
use geosep::graph::named;
use geosep::oracle::{brute_force, gen_instance, GeneratorConfig};
use geosep::problem::{verify_witness, Problem};
use geosep::rankbased::{random_partition_set, reduce, WeightedPartitionSet};
use geosep::separator::{build_separator, separator_for_contraction, CliqueSeparator, SeparatorOptions};
use geosep::solvers::{prepare, solve, solve_prepared, SolveOptions};
use geosep::treedecomp::{decompose_by_blowup, decompose_by_separator, validate_decomposition};
use geosep::{Graph, ObjectSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashSet;
use std::time::Instant;

/// Stability gate for the scaling criteria.
const GATE: f64 = 1.5;
/// Wall-time limit for the oracle-equivalence suite.
const ORACLE_BUDGET_S: f64 = 600.0;

struct Report {
    failed: Vec<usize>,
}

impl Report {
    fn line(&mut self, k: usize, name: &str, pass: bool, detail: String) {
        println!("criterion {k} [{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(k);
        }
    }
}

fn instance(d: usize, n: usize, seed: u64, sigma: f64) -> (ObjectSet, Graph) {
    let f = gen_instance(&GeneratorConfig { sigma, ..GeneratorConfig::new(d, n, seed) }).expect("generator");
    let g = build_intersection_graph(&f).expect("graph").graph;
    (f, g)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

// Decomposition validity is collected across criteria 1-3.
#[derive(Default)]
struct DecompTally {
    checked: usize,
    violations: Vec<String>,
}

impl DecompTally {
    fn add(&mut self, what: String, v: Vec<String>) {
        self.checked += 1;
        if !v.is_empty() {
            self.violations.push(format!("{what}: {}", v[0]));
        }
    }
}

fn steiner_terminals(n: usize) -> Vec<usize> {
    let mut t = vec![0, n / 3, n / 2, n - 1];
    t.dedup();
    t
}

/// Oracle equivalence. Instances for one dimension are shared by all the
/// non-connectivity problems; Steiner and CVC use their own instances with
/// n ≤ 12.
fn criterion_1(rep: &mut Report, tally: &mut DecompTally) {
    let start = Instant::now();
    let opts = SolveOptions::default();
    let general = [
        Problem::IndependentSet,
        Problem::VertexCover,
        Problem::DominatingSet { r: 1 },
        Problem::DominatingSet { r: 2 },
        Problem::MaxInducedForest,
        Problem::FeedbackVertexSet,
    ];
    let connected = |n: usize| vec![Problem::SteinerTree { terminals: steiner_terminals(n) }, Problem::ConnectedVertexCover];
    let mut jobs = Vec::new();
    for d in [2usize, 3] {
        for i in 0..200u64 {
            jobs.push((d, 6 + (i as usize % 11), 1000 * d as u64 + i, false));
            jobs.push((d, 6 + (i as usize % 7), 5000 + 1000 * d as u64 + i, true));
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(d, n, seed, conn)| {
            let (f, g) = instance(d, n, seed, 2.0);
            let prep = prepare(&g, Some(&f), &opts).expect("prepare");
            let mut decomp = vec![(format!("nice d={d} seed={seed}"), prep.td.validate(&g))];
            let w = decompose_by_blowup(&prep.partition.contracted);
            let c = &prep.partition.contracted;
            decomp.push((format!("weighted d={d} seed={seed}"), validate_decomposition(&w.bags, &w.edges, &c.graph, &c.weights).violations));
            let problems = if conn { connected(n) } else { general.to_vec() };
            let mut rows = Vec::new();
            for p in problems {
                let got = solve_prepared(&g, &prep, &p, opts.prune, Instant::now()).expect("solve");
                let want = brute_force(&g, &p).expect("oracle").map(|b| b.0);
                let witness_ok = got.optimum.is_none() || verify_witness(&g, &p, &got.witness);
                rows.push((p.short_name(), got.optimum == want && witness_ok, format!("{p} d={d} n={n} seed={seed}: {:?} vs {want:?}", got.optimum)));
            }
            (decomp, rows)
        })
        .collect();
    let mut runs = 0;
    let mut bad = Vec::new();
    let mut per: std::collections::BTreeMap<&str, usize> = Default::default();
    for (decomp, rows) in results {
        for (what, v) in decomp {
            tally.add(what, v);
        }
        for (name, ok, msg) in rows {
            runs += 1;
            *per.entry(name).or_default() += 1;
            if !ok {
                bad.push(msg);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < ORACLE_BUDGET_S;
    let counts: Vec<String> = per.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut detail = format!("{}/{runs} runs agree [{}] in {secs:.1}s (limit {ORACLE_BUDGET_S}s)", runs - bad.len(), counts.join(" "));
    if let Some(b) = bad.first() {
        detail += &format!("; first mismatch {b}");
    }
    rep.line(1, "oracle equivalence", pass, detail);
}

/// Independent separator check with exact integer balance.
fn separator_violations(sep: &CliqueSeparator, g: &Graph, d: usize) -> Vec<String> {
    let n = g.n();
    let mut side = vec![0u8; n];
    let mut seen = 0;
    let mut out = Vec::new();
    for (set, tag) in sep.cliques.iter().map(|c| (c, 1u8)).chain([(&sep.side_a, 2), (&sep.side_b, 3)]) {
        for &v in set {
            if v >= n || side[v] != 0 {
                out.push(format!("vertex {v} repeated or out of range"));
                continue;
            }
            side[v] = tag;
            seen += 1;
        }
    }
    if seen != n {
        out.push(format!("{seen} of {n} vertices covered"));
    }
    for c in &sep.cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                if !g.neighbors(u).contains(&v) {
                    out.push(format!("clique misses edge {u}-{v}"));
                }
            }
        }
    }
    for u in 0..n {
        for &v in g.neighbors(u) {
            if side[u] * side[v] == 6 {
                out.push(format!("edge {u}-{v} crosses"));
            }
        }
    }
    let p = 6u64.pow(d as u32);
    let big = sep.side_a.len().max(sep.side_b.len()) as u64;
    if big * (p + 1) > p * n as u64 {
        out.push(format!("side of {big} exceeds {p}/{} of {n}", p + 1));
    }
    out
}

fn criterion_2(rep: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let jobs: Vec<(usize, usize, u64)> = (0..500u64).map(|i| (2 + (i % 2) as usize, rng.gen_range(20..=500), 20_000 + i)).collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(d, n, seed)| {
            let (f, g) = instance(d, n, seed, 2.0);
            let v = match build_separator(&f, &SeparatorOptions::default()) {
                Ok(sep) => separator_violations(&sep, &g, d),
                Err(e) => vec![e.to_string()],
            };
            v.first().map(|x| format!("d={d} n={n} seed={seed}: {x}"))
        })
        .collect();
    let mut detail = format!("{} violations over {} instances", bad.len(), jobs.len());
    if let Some(b) = bad.first() {
        detail += &format!("; first {b}");
    }
    rep.line(2, "separator validity", bad.is_empty(), detail);
}

const SCALING_N: [usize; 6] = [100, 200, 400, 800, 1600, 3200];

/// Separator weight scaling, plus the separator-based decompositions of the
/// same instances for criterion 4.
fn criterion_3(rep: &mut Report, tally: &mut DecompTally) -> Vec<f64> {
    let opts = SeparatorOptions::default();
    let runs: Vec<(usize, f64, f64, Vec<String>)> = SCALING_N
        .iter()
        .flat_map(|&n| (0..20u64).map(move |s| (n, s)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(n, s)| {
            let (f, g) = instance(2, n, 30_000 + s, 1.0);
            let root = (n as f64).sqrt();
            let sep = build_separator(&f, &opts).expect("separator");
            let p = build_kappa_partition(&g, opts.gamma);
            let w = decompose_by_separator(&p.contracted, 4.0 * root, |set| {
                Ok(separator_for_contraction(&p, &f, set, &opts)?.vertices())
            })
            .expect("decomposition");
            let c = &p.contracted;
            let v = validate_decomposition(&w.bags, &w.edges, &c.graph, &c.weights).violations;
            (n, sep.weight / root, w.weighted_width / root, v)
        })
        .collect();
    let mut weight_med = Vec::new();
    let mut width_med = Vec::new();
    for &n in &SCALING_N {
        let rows: Vec<_> = runs.iter().filter(|r| r.0 == n).collect();
        weight_med.push(median(rows.iter().map(|r| r.1).collect()));
        width_med.push(median(rows.iter().map(|r| r.2).collect()));
    }
    for (n, _, _, v) in runs {
        tally.add(format!("separator-based n={n}"), v);
    }
    let ratio = weight_med[5] / weight_med[0];
    let table: Vec<String> = SCALING_N.iter().zip(&weight_med).map(|(n, m)| format!("{n}:{m:.3}")).collect();
    rep.line(
        3,
        "separator weight scaling",
        ratio <= GATE,
        format!("median weight/√n [{}], ratio {ratio:.3} (gate {GATE})", table.join(" ")),
    );
    width_med
}

fn criterion_4(rep: &mut Report, tally: &DecompTally, width_med: &[f64]) {
    let ratio = width_med[5] / width_med[0];
    let table: Vec<String> = SCALING_N.iter().zip(width_med).map(|(n, m)| format!("{n}:{m:.3}")).collect();
    let mut detail = format!(
        "{} violations over {} decompositions; median weighted width/√n [{}], ratio {ratio:.3} (gate {GATE})",
        tally.violations.len(),
        tally.checked,
        table.join(" ")
    );
    if let Some(b) = tally.violations.first() {
        detail += &format!("; first {b}");
    }
    rep.line(4, "decomposition validity", tally.violations.is_empty() && ratio <= GATE, detail);
}

/// Partitions of `{0..u}` as restricted growth strings, built independently
/// of the library.
fn partitions(u: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..u {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let m = p.iter().max().unwrap() + 1;
                (0..=m).map(move |l| [p.clone(), vec![l]].concat())
            })
            .collect();
    }
    out
}

fn joins_to_top(a: &[u8], b: &[usize]) -> bool {
    let u = b.len();
    let mut parent: Vec<usize> = (0..u).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..u {
        for j in i + 1..u {
            if a[i] == a[j] || b[i] == b[j] {
                let (x, y) = (find(&mut parent, i), find(&mut parent, j));
                parent[x] = y;
            }
        }
    }
    (0..u).all(|i| find(&mut parent, i) == find(&mut parent, 0))
}

fn best(set: &WeightedPartitionSet, q: &[usize]) -> Option<i64> {
    set.entries.iter().filter(|(p, _)| joins_to_top(p.labels(), q)).map(|e| e.1).min()
}

fn criterion_5(rep: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    let mut largest = 0usize;
    for i in 0..500 {
        let u = rng.gen_range(2..=6);
        let a = random_partition_set(u, 60, 30, &mut rng);
        let r = reduce(&a).expect("reduce");
        largest = largest.max(r.len());
        if r.len() > 1 << (u - 1) {
            bad.push(format!("set {i}: {} entries for u={u}", r.len()));
        }
        if partitions(u).iter().any(|q| best(&a, q) != best(&r, q)) {
            bad.push(format!("set {i}: representation fails for u={u}"));
        }
        if reduce(&r).expect("reduce") != r {
            bad.push(format!("set {i}: not idempotent"));
        }
    }
    let mut detail = format!("{} failures over 500 sets, largest output {largest}", bad.len());
    if let Some(b) = bad.first() {
        detail += &format!("; first {b}");
    }
    rep.line(5, "reduce correctness", bad.is_empty(), detail);
}

/// Disjointness, unit steps, endpoints and containment in the 36n box,
/// checked without the library verifier.
fn wiring_violation(w: &geosep::cubewiring::Wiring, inst: &WiringInstance) -> Option<String> {
    let d = inst.d;
    let mut used = HashSet::new();
    let mut want: Vec<_> = inst.pairs.clone();
    let mut got: Vec<_> = w.wires.iter().map(|x| (x.origin.clone(), x.destination.clone())).collect();
    want.sort();
    got.sort();
    if want != got {
        return Some("endpoints differ from the matching".into());
    }
    for wire in &w.wires {
        let first = wire.path.first()?;
        let last = wire.path.last()?;
        if first[..d - 1] != wire.origin[..] || first[d - 1] != 1 {
            return Some(format!("wire starts at {first:?}"));
        }
        if last[..d - 1] != wire.destination[..] || last[d - 1] != w.height {
            return Some(format!("wire ends at {last:?}"));
        }
        for (k, p) in wire.path.iter().enumerate() {
            let inside = (0..d - 1).all(|j| p[j] >= 1 && p[j] <= 36 * inst.n[j]) && p[d - 1] >= 1 && p[d - 1] <= w.height;
            if !inside {
                return Some(format!("point {p:?} outside the box"));
            }
            if !used.insert(p.clone()) {
                return Some(format!("point {p:?} used twice"));
            }
            if k > 0 && p.iter().zip(&wire.path[k - 1]).map(|(a, b)| (a - b).abs()).sum::<i64>() != 1 {
                return Some(format!("non-unit step into {p:?}"));
            }
        }
    }
    None
}

fn criterion_6(rep: &mut Report) {
    let sizes: [(usize, Vec<i64>); 4] = [(3, vec![2, 2]), (3, vec![4, 4]), (3, vec![8, 8]), (4, vec![2, 2, 2])];
    let mut bad = Vec::new();
    let mut med = Vec::new();
    for (d, n) in &sizes {
        let stats: Vec<Result<WiringStats, String>> = (0..100u64)
            .into_par_iter()
            .map(|seed| {
                let inst = WiringInstance::random_permutation(*d, n, 60_000 + seed);
                let w = wire_matching(&inst).map_err(|e| e.to_string())?;
                if let Some(v) = verify_wiring(&w, Some(&inst)).first() {
                    return Err(format!("d={d} n={n:?} seed={seed}: {v}"));
                }
                if let Some(v) = wiring_violation(&w, &inst) {
                    return Err(format!("d={d} n={n:?} seed={seed}: {v}"));
                }
                Ok(WiringStats::measure(&w, n))
            })
            .collect();
        let ok: Vec<&WiringStats> = stats.iter().filter_map(|s| s.as_ref().ok()).collect();
        bad.extend(stats.iter().filter_map(|s| s.as_ref().err().cloned()));
        med.push((
            median(ok.iter().map(|s| s.height_ratio).collect()),
            median(ok.iter().map(|s| s.length_ratio).collect()),
        ));
    }
    let h_ratio = med[2].0 / med[0].0;
    let l_ratio = med[2].1 / med[0].1;
    let table: Vec<String> =
        sizes.iter().zip(&med).map(|((d, n), (h, l))| format!("d={d} {n:?}: h/Σn {h:.2} len/(dΣn) {l:.2}")).collect();
    let pass = bad.is_empty() && h_ratio <= GATE && l_ratio <= GATE;
    let mut detail = format!(
        "{} invalid of 400; medians [{}]; (8,8)/(2,2) height {h_ratio:.3}, length {l_ratio:.3} (gate {GATE})",
        bad.len(),
        table.join("; ")
    );
    if let Some(b) = bad.first() {
        detail += &format!("; first {b}");
    }
    rep.line(6, "cube wiring", pass, detail);
}

fn criterion_7(rep: &mut Report) {
    let graphs = [
        ("K4", named::complete(4)),
        ("K5", named::complete(5)),
        ("K3,3", named::complete_bipartite(3, 3)),
        ("Petersen", named::petersen()),
    ];
    let mut results = Vec::new();
    for (name, g) in &graphs {
        let ok = embed_minor(g, 3)
            .and_then(|e| contract_embedding(&e, g.n()))
            .map(|h| h.is_isomorphic(g))
            .unwrap_or(false);
        results.push((name, ok));
    }
    let pass = results.iter().all(|r| r.1);
    let detail: Vec<String> = results.iter().map(|(n, ok)| format!("{n} {}", if *ok { "ok" } else { "failed" })).collect();
    rep.line(7, "minor embedding", pass, detail.join(", "));
}

/// Reported only: log2 of solve time against √n for IS and DS at d = 2.
fn criterion_8(rep: &mut Report) {
    let mut cells = Vec::new();
    for p in [Problem::IndependentSet, Problem::DominatingSet { r: 1 }] {
        for n in [25usize, 50, 100, 200] {
            let times: Vec<f64> = (0..3u64)
                .map(|s| {
                    let (f, g) = instance(2, n, 80_000 + s, 1.0);
                    let t = Instant::now();
                    solve(&g, Some(&f), &p, &SolveOptions::default()).expect("solve");
                    (t.elapsed().as_secs_f64() * 1e3).max(1e-3).log2()
                })
                .collect();
            cells.push(format!("{p} √n={:.1} log2ms={:.2}", (n as f64).sqrt(), median(times)));
        }
    }
    rep.line(8, "runtime scaling (reported, non-gating)", true, cells.join("; "));
}

fn main() {
    let start = Instant::now();
    let mut rep = Report { failed: Vec::new() };
    let mut tally = DecompTally::default();
    criterion_1(&mut rep, &mut tally);
    criterion_2(&mut rep);
    let width_med = criterion_3(&mut rep, &mut tally);
    criterion_4(&mut rep, &tally, &width_med);
    criterion_5(&mut rep);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !rep.failed.is_empty() {
        println!("failed criteria: {:?}", rep.failed);
        std::process::exit(1);
    }
}
