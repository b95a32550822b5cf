//! Seeded benchmark sweeps producing one `RunRecord` per run.

use crate::io::hash_json;
use anyhow::Result;
use geosep::contraction::build_kappa_partition;
use geosep::cubewiring::{wire_matching, verify_wiring, WiringInstance, WiringStats};
use geosep::geometry::build_intersection_graph;
use geosep::oracle::{brute_force, gen_instance, GeneratorConfig};
use geosep::problem::Problem;
use geosep::separator::{build_separator, separator_for_contraction, SeparatorOptions};
use geosep::solvers::{solve, SolveOptions};
use geosep::treedecomp::decompose_by_separator;
use geosep::WeightFunction;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Solver against brute force.
    Oracle,
    /// Separator weight and balance.
    Separator,
    /// Weighted width of the separator-based decomposition.
    Decomposition,
    /// Cube wiring height and wire length.
    Wiring,
    /// Solver wall time against n^{1-1/d}.
    Scaling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub suite: Suite,
    pub d: Vec<usize>,
    pub n: Vec<usize>,
    /// Box sides for the wiring suite, one list per size.
    #[serde(default)]
    pub sides: Vec<Vec<i64>>,
    pub seeds: u64,
    pub seed: u64,
    /// Problem short names for the oracle and scaling suites.
    #[serde(default)]
    pub problems: Vec<String>,
    pub gamma: WeightFunction,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub config_hash: String,
    pub instance_hash: String,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub label: String,
    /// `ok`, `agree`, `disagree`, `invalid` or `error: ...`.
    pub result: String,
    pub wall_ms: f64,
    pub metrics: BTreeMap<String, f64>,
}

impl RunRecord {
    fn passed(&self) -> bool {
        self.result == "ok" || self.result == "agree"
    }
}

struct Job {
    d: usize,
    n: usize,
    sides: Vec<i64>,
    seed: u64,
    label: String,
}

pub fn problem_by_name(name: &str, r: usize) -> Result<Problem, String> {
    Ok(match name {
        "is" => Problem::IndependentSet,
        "vc" => Problem::VertexCover,
        "ds" => Problem::DominatingSet { r: 1 },
        "rds" => Problem::DominatingSet { r },
        "mif" => Problem::MaxInducedForest,
        "fvs" => Problem::FeedbackVertexSet,
        "cvc" => Problem::ConnectedVertexCover,
        _ => return Err(format!("unknown problem {name:?}")),
    })
}

/// Problem for a sweep label; Steiner sweeps use terminals spread over the ids.
fn job_problem(label: &str, n: usize) -> Result<Problem> {
    if label == "steiner" {
        let mut t = vec![0, n / 3, n / 2, n.saturating_sub(1)];
        t.dedup();
        return Ok(Problem::SteinerTree { terminals: t });
    }
    problem_by_name(label, 2).map_err(anyhow::Error::msg)
}

fn jobs(cfg: &BenchConfig) -> Vec<Job> {
    let mut out = Vec::new();
    let seeds = cfg.seed..cfg.seed + cfg.seeds;
    match cfg.suite {
        Suite::Wiring => {
            for sides in &cfg.sides {
                for s in seeds.clone() {
                    let label = sides.iter().map(i64::to_string).collect::<Vec<_>>().join("x");
                    let n = sides.iter().product::<i64>() as usize;
                    out.push(Job { d: sides.len() + 1, n, sides: sides.clone(), seed: s, label });
                }
            }
        }
        Suite::Oracle | Suite::Scaling => {
            for p in &cfg.problems {
                for &d in &cfg.d {
                    for &n in &cfg.n {
                        for s in seeds.clone() {
                            out.push(Job { d, n, sides: Vec::new(), seed: s, label: p.clone() });
                        }
                    }
                }
            }
        }
        Suite::Separator | Suite::Decomposition => {
            for &d in &cfg.d {
                for &n in &cfg.n {
                    for s in seeds.clone() {
                        out.push(Job { d, n, sides: Vec::new(), seed: s, label: String::new() });
                    }
                }
            }
        }
    }
    out
}

fn exponent(n: usize, d: usize) -> f64 {
    (n.max(1) as f64).powf(1.0 - 1.0 / d as f64)
}

fn run_job(cfg: &BenchConfig, config_hash: &str, job: &Job) -> RunRecord {
    let mut rec = RunRecord {
        command: format!("bench:{}", serde_json::to_value(cfg.suite).expect("suite").as_str().expect("name")),
        config_hash: config_hash.to_string(),
        instance_hash: String::new(),
        d: job.d,
        n: job.n,
        seed: job.seed,
        label: job.label.clone(),
        result: String::new(),
        wall_ms: 0.0,
        metrics: BTreeMap::new(),
    };
    let start = Instant::now();
    match execute(cfg, job, &mut rec) {
        Ok(result) => rec.result = result,
        Err(e) => rec.result = format!("error: {e}"),
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    if cfg.suite == Suite::Scaling {
        rec.metrics.insert("log2_ms".into(), rec.wall_ms.max(1e-3).log2());
    }
    rec
}

fn execute(cfg: &BenchConfig, job: &Job, rec: &mut RunRecord) -> Result<String> {
    let m = &mut rec.metrics;
    if cfg.suite == Suite::Wiring {
        let inst = WiringInstance::random_permutation(job.d, &job.sides, job.seed);
        rec.instance_hash = hash_json(&inst.to_json_value());
        let w = wire_matching(&inst)?;
        let s = WiringStats::measure(&w, &job.sides);
        m.insert("height".into(), s.height as f64);
        m.insert("height_ratio".into(), s.height_ratio);
        m.insert("max_length".into(), s.max_length as f64);
        m.insert("length_ratio".into(), s.length_ratio);
        return Ok(if verify_wiring(&w, Some(&inst)).is_empty() { "ok" } else { "invalid" }.into());
    }
    let gen = GeneratorConfig { sigma: cfg.sigma, ..GeneratorConfig::new(job.d, job.n, job.seed) };
    let f = gen_instance(&gen)?;
    rec.instance_hash = hash_json(&f.to_json_value());
    let g = build_intersection_graph(&f)?.graph;
    let scale = exponent(job.n, job.d);
    m.insert("n_pow".into(), scale);
    match cfg.suite {
        Suite::Oracle => {
            let p = job_problem(&job.label, job.n)?;
            let opts = SolveOptions { gamma: cfg.gamma, ..SolveOptions::default() };
            let got = solve(&g, Some(&f), &p, &opts)?;
            let want = brute_force(&g, &p)?.map(|(v, _)| v);
            m.insert("peak_table".into(), got.stats.peak_table as f64);
            if let Some(v) = got.optimum {
                m.insert("optimum".into(), v as f64);
            }
            Ok(if got.optimum == want { "agree" } else { "disagree" }.into())
        }
        Suite::Scaling => {
            let p = job_problem(&job.label, job.n)?;
            let opts = SolveOptions { gamma: cfg.gamma, ..SolveOptions::default() };
            let got = solve(&g, Some(&f), &p, &opts)?;
            m.insert("weighted_width".into(), got.stats.weighted_width);
            m.insert("peak_table".into(), got.stats.peak_table as f64);
            Ok("ok".into())
        }
        Suite::Separator => {
            let sep = build_separator(&f, &SeparatorOptions { gamma: cfg.gamma, ..Default::default() })?;
            m.insert("weight".into(), sep.weight);
            m.insert("weight_ratio".into(), sep.weight / scale);
            m.insert("balance".into(), sep.balance);
            Ok(if sep.validate(&g, job.d).is_empty() { "ok" } else { "invalid" }.into())
        }
        Suite::Decomposition => {
            let p = build_kappa_partition(&g, cfg.gamma);
            let sopts = SeparatorOptions { gamma: cfg.gamma, ..Default::default() };
            let base = SolveOptions::default().base_c * scale;
            let w = decompose_by_separator(&p.contracted, base, |set| {
                Ok(separator_for_contraction(&p, &f, set, &sopts)?.vertices())
            })?;
            m.insert("weighted_width".into(), w.weighted_width);
            m.insert("width_ratio".into(), w.weighted_width / scale);
            m.insert("kappa_hat".into(), p.kappa_hat as f64);
            let ok = w.validate(&p.contracted.graph, &p.contracted.weights).is_valid();
            Ok(if ok { "ok" } else { "invalid" }.into())
        }
        Suite::Wiring => unreachable!("handled above"),
    }
}

pub fn run(cfg: &BenchConfig) -> Vec<RunRecord> {
    let hash = hash_json(&serde_json::to_value(cfg).expect("config serializes"));
    jobs(cfg).par_iter().map(|j| run_job(cfg, &hash, j)).collect()
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

/// Per (label, d, n) group: run count, pass count and metric medians.
pub fn summarize(records: &[RunRecord]) -> Vec<Value> {
    let mut groups: BTreeMap<(String, usize, usize), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.label.clone(), r.d, r.n)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((label, d, n), rs)| {
            let mut med = BTreeMap::new();
            for key in rs[0].metrics.keys() {
                let xs: Vec<f64> = rs.iter().filter_map(|r| r.metrics.get(key).copied()).collect();
                med.insert(key.clone(), median(xs));
            }
            med.insert("wall_ms".into(), median(rs.iter().map(|r| r.wall_ms).collect()));
            json!({
                "label": label,
                "d": d,
                "n": n,
                "runs": rs.len(),
                "passed": rs.iter().filter(|r| r.passed()).count(),
                "median": med,
            })
        })
        .collect()
}

pub fn to_json(cfg: &BenchConfig, records: &[RunRecord]) -> Value {
    json!({
        "kind": "bench",
        "config": cfg,
        "records": records,
        "summary": summarize(records),
    })
}

/// Fixed columns followed by the union of metric names.
pub fn write_csv(path: &Path, records: &[RunRecord]) -> Result<()> {
    let mut keys: Vec<&String> = records.iter().flat_map(|r| r.metrics.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut w = csv::Writer::from_path(path)?;
    let mut head: Vec<&str> =
        vec!["command", "config_hash", "instance_hash", "label", "d", "n", "seed", "result", "wall_ms"];
    head.extend(keys.iter().map(|k| k.as_str()));
    w.write_record(&head)?;
    for r in records {
        let mut row = vec![
            r.command.clone(),
            r.config_hash.clone(),
            r.instance_hash.clone(),
            r.label.clone(),
            r.d.to_string(),
            r.n.to_string(),
            r.seed.to_string(),
            r.result.clone(),
            format!("{:.3}", r.wall_ms),
        ];
        row.extend(keys.iter().map(|k| r.metrics.get(*k).map(|x| format!("{x:.6}")).unwrap_or_default()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
