//! Random instance generation and brute-force reference solvers.

use crate::error::{Error, Result};
use crate::geometry::{FatObject, ObjectSet, Point, Shape};
use crate::graph::Graph;
use crate::problem::Problem;
use crate::rational::{self, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest instance the brute-force oracle accepts.
pub const GUARD: usize = 24;
/// Guard for Steiner tree and connected vertex cover.
pub const CONNECTIVITY_GUARD: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ShapeMix {
    #[default]
    Balls,
    Boxes,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub d: usize,
    pub n: usize,
    pub shapes: ShapeMix,
    /// Radii and box sides are drawn uniformly from `[1, sigma]`.
    pub sigma: f64,
    /// Side of the cube holding the centers; `None` scales it with `n` so the
    /// expected degree stays roughly constant.
    pub region: Option<f64>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(d: usize, n: usize, seed: u64) -> Self {
        GeneratorConfig { d, n, shapes: ShapeMix::Balls, sigma: 1.0, region: None, seed }
    }

    pub fn region_side(&self) -> f64 {
        self.region
            .unwrap_or_else(|| (1.0 + self.sigma) * (self.n.max(1) as f64).powf(1.0 / self.d as f64))
    }
}

const SNAP_BITS: u32 = 16;

pub fn gen_instance(cfg: &GeneratorConfig) -> Result<ObjectSet> {
    if cfg.d < 2 {
        return Err(Error::InvalidInput("dimension must be at least 2".into()));
    }
    if cfg.sigma.is_nan() || cfg.sigma < 1.0 {
        return Err(Error::InvalidInput("sigma must be at least 1".into()));
    }
    let side = cfg.region_side();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let size = |rng: &mut ChaCha8Rng| -> Rational {
        let x = if cfg.sigma > 1.0 { rng.gen_range(1.0..=cfg.sigma) } else { 1.0 };
        rational::snap(x, SNAP_BITS)
    };
    let mut objects = Vec::with_capacity(cfg.n);
    for id in 0..cfg.n {
        let center: Vec<Rational> = (0..cfg.d)
            .map(|_| rational::snap(rng.gen_range(0.0..side), SNAP_BITS))
            .collect();
        let ball = match cfg.shapes {
            ShapeMix::Balls => true,
            ShapeMix::Boxes => false,
            ShapeMix::Mixed => rng.gen_bool(0.5),
        };
        let shape = if ball {
            Shape::Ball { center: Point(center), radius: size(&mut rng) }
        } else {
            let sides: Vec<Rational> = (0..cfg.d).map(|_| size(&mut rng)).collect();
            let half = rational::frac(1, 2);
            let min = center.iter().zip(&sides).map(|(c, s)| c - s * &half).collect();
            Shape::Box { min: Point(min), sides }
        };
        objects.push(FatObject { id, shape });
    }
    ObjectSet::new(cfg.d, objects)
}

/// Optimum and a witness found by exhaustive enumeration, or `None` when
/// infeasible.
pub fn brute_force(g: &Graph, problem: &Problem) -> Result<Option<(usize, Vec<usize>)>> {
    let n = g.n();
    let guard = match problem {
        Problem::SteinerTree { .. } | Problem::ConnectedVertexCover => CONNECTIVITY_GUARD,
        _ => GUARD,
    };
    if n > guard {
        return Err(Error::GuardExceeded { n, guard });
    }
    problem.check(n).map_err(Error::InvalidInput)?;
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let independent = |m: u32| (0..n).all(|v| m >> v & 1 == 0 || adj[v] & m == 0);
    let connected = |m: u32| {
        if m == 0 {
            return true;
        }
        let mut seen = m & m.wrapping_neg();
        loop {
            let mut next = seen;
            let mut rest = seen;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= adj[v] & m;
            }
            if next == seen {
                return seen == m;
            }
            seen = next;
        }
    };
    let components = |m: u32| {
        let mut left = m;
        let mut count = 0;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let mut next = comp;
                let mut rest = comp;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    next |= adj[v] & m;
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            left &= !comp;
            count += 1;
        }
        count
    };
    let edges_in = |m: u32| {
        (0..n).filter(|&v| m >> v & 1 == 1).map(|v| (adj[v] & m).count_ones()).sum::<u32>() / 2
    };
    let is_cover = |m: u32| independent(full & !m);
    let balls: Vec<u32> = match problem {
        Problem::DominatingSet { r } => {
            let mut b: Vec<u32> = (0..n).map(|v| 1u32 << v).collect();
            for _ in 0..*r {
                b = b
                    .iter()
                    .map(|&m| {
                        let mut out = m;
                        let mut rest = m;
                        while rest != 0 {
                            let v = rest.trailing_zeros() as usize;
                            rest &= rest - 1;
                            out |= adj[v];
                        }
                        out
                    })
                    .collect();
            }
            b
        }
        _ => Vec::new(),
    };
    let terminals: u32 = match problem {
        Problem::SteinerTree { terminals } => terminals.iter().fold(0, |m, &t| m | 1 << t),
        _ => 0,
    };
    let feasible = |m: u32| -> bool {
        match problem {
            Problem::IndependentSet => independent(m),
            Problem::VertexCover => is_cover(m),
            Problem::DominatingSet { .. } => balls.iter().all(|&b| b & m != 0),
            Problem::SteinerTree { .. } => m & terminals == terminals && connected(m),
            Problem::MaxInducedForest => edges_in(m) + components(m) == m.count_ones(),
            Problem::FeedbackVertexSet => {
                let r = full & !m;
                edges_in(r) + components(r) == r.count_ones()
            }
            Problem::ConnectedVertexCover => is_cover(m) && connected(m),
        }
    };
    let mut best: Option<u32> = None;
    for m in 0..=full {
        if !feasible(m) {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) if problem.maximizes() => m.count_ones() > b.count_ones(),
            Some(b) => m.count_ones() < b.count_ones(),
        };
        if better {
            best = Some(m);
        }
        if m == full {
            break;
        }
    }
    Ok(best.map(|m| (m.count_ones() as usize, (0..n).filter(|&v| m >> v & 1 == 1).collect())))
}
