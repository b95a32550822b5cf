//! Fat objects (balls and axis-aligned boxes) with exact rational coordinates,
//! pairwise intersection predicates and intersection-graph construction.
//!
//! All objects are closed: tangency counts as intersection.

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Ball { center: Point, radius: Rational },
    Box { min: Point, sides: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatObject {
    pub id: usize,
    pub shape: Shape,
}

fn sq(r: &Rational) -> Rational {
    r * r
}

impl FatObject {
    pub fn ball(id: usize, center: Point, radius: Rational) -> Result<Self> {
        let o = FatObject { id, shape: Shape::Ball { center, radius } };
        o.validate()?;
        Ok(o)
    }

    pub fn cube_box(id: usize, min: Point, sides: Vec<Rational>) -> Result<Self> {
        let o = FatObject { id, shape: Shape::Box { min, sides } };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.shape {
            Shape::Ball { center, radius } => {
                if center.dim() < 2 {
                    return invalid(format!("object {}: dimension must be at least 2", self.id));
                }
                if !rational::is_positive(radius) {
                    return invalid(format!("object {}: radius must be positive", self.id));
                }
            }
            Shape::Box { min, sides } => {
                if min.dim() < 2 {
                    return invalid(format!("object {}: dimension must be at least 2", self.id));
                }
                if sides.len() != min.dim() {
                    return Err(Error::DimensionMismatch { expected: min.dim(), found: sides.len() });
                }
                if !sides.iter().all(rational::is_positive) {
                    return invalid(format!("object {}: box sides must be positive", self.id));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Ball { center, .. } => center.dim(),
            Shape::Box { min, .. } => min.dim(),
        }
    }

    /// Closed axis-aligned bounding box as (lower corner, upper corner).
    pub fn bbox(&self) -> (Vec<Rational>, Vec<Rational>) {
        match &self.shape {
            Shape::Ball { center, radius } => (
                center.0.iter().map(|c| c - radius).collect(),
                center.0.iter().map(|c| c + radius).collect(),
            ),
            Shape::Box { min, sides } => (
                min.0.clone(),
                min.0.iter().zip(sides).map(|(m, s)| m + s).collect(),
            ),
        }
    }

    /// Largest side of the bounding box.
    pub fn max_extent(&self) -> Rational {
        match &self.shape {
            Shape::Ball { radius, .. } => radius * rational::int(2),
            Shape::Box { sides, .. } => sides.iter().max().cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn diameter_squared(&self) -> Rational {
        match &self.shape {
            Shape::Ball { radius, .. } => sq(radius) * rational::int(4),
            Shape::Box { sides, .. } => sides.iter().map(sq).sum(),
        }
    }

    pub fn diameter(&self) -> f64 {
        rational::to_f64(&self.diameter_squared()).sqrt()
    }

    /// Ratio of inscribed to circumscribed radius, squared (exact).
    pub fn fatness_squared(&self) -> Rational {
        match &self.shape {
            Shape::Ball { .. } => rational::int(1),
            Shape::Box { sides, .. } => {
                let min = sides.iter().min().expect("box has sides");
                sq(min) / self.diameter_squared()
            }
        }
    }

    pub fn fatness(&self) -> f64 {
        rational::to_f64(&self.fatness_squared()).sqrt()
    }

    /// Largest ball contained in the object, as (center, radius).
    pub fn inner_ball(&self) -> (Vec<Rational>, Rational) {
        match &self.shape {
            Shape::Ball { center, radius } => (center.0.clone(), radius.clone()),
            Shape::Box { min, sides } => {
                let half = rational::frac(1, 2);
                let center = min.0.iter().zip(sides).map(|(m, s)| m + s * &half).collect();
                let r = sides.iter().min().expect("box has sides") * &half;
                (center, r)
            }
        }
    }

    /// Closed containment of a point.
    pub fn contains_point(&self, p: &[Rational]) -> bool {
        match &self.shape {
            Shape::Ball { center, radius } => {
                let d2: Rational = center.0.iter().zip(p).map(|(c, x)| sq(&(c - x))).sum();
                d2 <= sq(radius)
            }
            Shape::Box { min, sides } => min
                .0
                .iter()
                .zip(sides)
                .zip(p)
                .all(|((m, s), x)| m <= x && *x <= m + s),
        }
    }
}

/// Squared distance from `p` to the closed box `[lo, hi]`.
pub(crate) fn dist2_point_box(p: &[Rational], lo: &[Rational], hi: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for ((x, l), h) in p.iter().zip(lo).zip(hi) {
        if x < l {
            acc += sq(&(l - x));
        } else if x > h {
            acc += sq(&(x - h));
        }
    }
    acc
}

/// Exact intersection test for closed objects.
pub fn intersects(a: &FatObject, b: &FatObject) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(match (&a.shape, &b.shape) {
        (Shape::Ball { center: ca, radius: ra }, Shape::Ball { center: cb, radius: rb }) => {
            let d2: Rational = ca.0.iter().zip(&cb.0).map(|(x, y)| sq(&(x - y))).sum();
            d2 <= sq(&(ra + rb))
        }
        (Shape::Box { .. }, Shape::Box { .. }) => {
            let (la, ha) = a.bbox();
            let (lb, hb) = b.bbox();
            (0..a.dim()).all(|i| la[i] <= hb[i] && lb[i] <= ha[i])
        }
        (Shape::Ball { center, radius }, Shape::Box { .. }) => {
            let (lo, hi) = b.bbox();
            dist2_point_box(&center.0, &lo, &hi) <= sq(radius)
        }
        (Shape::Box { .. }, Shape::Ball { center, radius }) => {
            let (lo, hi) = a.bbox();
            dist2_point_box(&center.0, &lo, &hi) <= sq(radius)
        }
    })
}

/// A set of fat objects with ids `0..n` in a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectSet {
    pub dimension: usize,
    pub objects: Vec<FatObject>,
}

impl ObjectSet {
    pub fn new(dimension: usize, objects: Vec<FatObject>) -> Result<Self> {
        if dimension < 2 {
            return invalid("dimension must be at least 2");
        }
        for (i, o) in objects.iter().enumerate() {
            o.validate()?;
            if o.dim() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: o.dim() });
            }
            if o.id != i {
                return invalid(format!("object ids must be 0..n in order; found {} at {}", o.id, i));
            }
        }
        Ok(ObjectSet { dimension, objects })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Sub-instance on the given objects, renumbered `0..k` in the given order.
    pub fn subset(&self, ids: &[usize]) -> ObjectSet {
        let objects = ids
            .iter()
            .enumerate()
            .map(|(i, &id)| FatObject { id: i, shape: self.objects[id].shape.clone() })
            .collect();
        ObjectSet { dimension: self.dimension, objects }
    }

    pub fn min_diameter(&self) -> f64 {
        self.objects.iter().map(FatObject::diameter).fold(f64::INFINITY, f64::min)
    }

    pub fn max_diameter(&self) -> f64 {
        self.objects.iter().map(FatObject::diameter).fold(0.0, f64::max)
    }

    pub fn size_ratio(&self) -> f64 {
        self.max_diameter() / self.min_diameter()
    }

    /// Minimum fatness over all objects, squared (exact).
    pub fn fatness_squared(&self) -> Rational {
        self.objects
            .iter()
            .map(FatObject::fatness_squared)
            .min()
            .unwrap_or_else(|| rational::int(1))
    }

    pub fn fatness(&self) -> f64 {
        rational::to_f64(&self.fatness_squared()).sqrt()
    }
}

/// Intersection graph together with the object each vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub graph: Graph,
    pub object_ids: Option<Vec<usize>>,
}

/// All-pairs construction.
pub fn build_intersection_graph_naive(f: &ObjectSet) -> IntersectionGraph {
    let n = f.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if intersects(&f.objects[i], &f.objects[j]).expect("same dimension") {
                edges.push((i, j));
            }
        }
    }
    IntersectionGraph {
        graph: Graph::from_edges(n, &edges).expect("valid edges"),
        object_ids: Some((0..n).collect()),
    }
}

fn floor_i64(r: &Rational) -> i64 {
    let (q, _) = r.numer().div_mod_floor(r.denom());
    q.to_i64().expect("cell index fits in i64")
}

/// Intersection graph with a uniform-grid bucket accelerator.
///
/// The cell side is the largest bounding-box extent, so intersecting objects
/// have their lower corners in the same or adjacent cells.
pub fn build_intersection_graph(f: &ObjectSet) -> Result<IntersectionGraph> {
    if f.is_empty() {
        return invalid("cannot build the intersection graph of an empty set");
    }
    let d = f.dimension;
    let side = f.objects.iter().map(FatObject::max_extent).max().expect("nonempty");
    debug_assert!(side.is_positive());
    let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut cell_of = Vec::with_capacity(f.len());
    for o in &f.objects {
        let (lo, _) = o.bbox();
        let key: Vec<i64> = lo.iter().map(|x| floor_i64(&(x / &side))).collect();
        cells.entry(key.clone()).or_default().push(o.id);
        cell_of.push(key);
    }
    let offsets: Vec<Vec<i64>> = (0..3usize.pow(d as u32))
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let v = (code % 3) as i64 - 1;
                    code /= 3;
                    v
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for (i, key) in cell_of.iter().enumerate() {
        for off in &offsets {
            let nb: Vec<i64> = key.iter().zip(off).map(|(k, o)| k + o).collect();
            if let Some(members) = cells.get(&nb) {
                for &j in members {
                    if j > i && intersects(&f.objects[i], &f.objects[j])? {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    Ok(IntersectionGraph {
        graph: Graph::from_edges(f.len(), &edges)?,
        object_ids: Some((0..f.len()).collect()),
    })
}

// JSON instance format.

#[derive(Serialize, Deserialize)]
struct BallJson {
    #[serde(with = "rational::vec")]
    center: Vec<Rational>,
    #[serde(with = "rational")]
    radius: Rational,
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    #[serde(with = "rational::vec")]
    min: Vec<Rational>,
    #[serde(with = "rational::vec")]
    sides: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ObjectJson {
    id: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    ball: Option<BallJson>,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none", default)]
    boxed: Option<BoxJson>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    dimension: usize,
    objects: Vec<ObjectJson>,
}

impl ObjectSet {
    pub fn to_json_value(&self) -> serde_json::Value {
        let objects = self
            .objects
            .iter()
            .map(|o| match &o.shape {
                Shape::Ball { center, radius } => ObjectJson {
                    id: o.id,
                    ball: Some(BallJson { center: center.0.clone(), radius: radius.clone() }),
                    boxed: None,
                },
                Shape::Box { min, sides } => ObjectJson {
                    id: o.id,
                    ball: None,
                    boxed: Some(BoxJson { min: min.0.clone(), sides: sides.clone() }),
                },
            })
            .collect();
        let j = InstanceJson { kind: Some("instance".into()), dimension: self.dimension, objects };
        serde_json::to_value(j).expect("instance serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let j: InstanceJson =
            serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let mut objects: Vec<FatObject> = Vec::with_capacity(j.objects.len());
        for o in j.objects {
            let shape = match (o.ball, o.boxed) {
                (Some(b), None) => Shape::Ball { center: Point(b.center), radius: b.radius },
                (None, Some(b)) => Shape::Box { min: Point(b.min), sides: b.sides },
                _ => return invalid(format!("object {} must have exactly one of ball/box", o.id)),
            };
            objects.push(FatObject { id: o.id, shape });
        }
        objects.sort_by_key(|o| o.id);
        ObjectSet::new(j.dimension, objects)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ball(id: usize, c: &[i64], r: Rational) -> FatObject {
        FatObject::ball(id, Point::from_ints(c), r).unwrap()
    }

    #[test]
    fn ball_ball() {
        let a = ball(0, &[0, 0], int(1));
        let b = FatObject::ball(1, Point(vec![frac(3, 2), int(0)]), int(1)).unwrap();
        assert!(intersects(&a, &b).unwrap());
        let c = ball(2, &[3, 0], int(1));
        assert!(!intersects(&a, &c).unwrap());
        // tangent
        let t = ball(3, &[2, 0], int(1));
        assert!(intersects(&a, &t).unwrap());
    }

    #[test]
    fn box_ball_touching() {
        let b = FatObject::cube_box(0, Point::from_ints(&[0, 0]), vec![int(1), int(1)]).unwrap();
        let c = FatObject::ball(1, Point(vec![int(2), frac(1, 2)]), int(1)).unwrap();
        assert!(intersects(&b, &c).unwrap());
        assert!(intersects(&c, &b).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = ball(0, &[0, 0], int(1));
        let b = ball(1, &[0, 0, 0], int(1));
        assert!(matches!(intersects(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn diameters() {
        assert_eq!(ball(0, &[0, 0], int(1)).diameter_squared(), int(4));
        let sq = FatObject::cube_box(0, Point::from_ints(&[0, 0]), vec![int(1), int(1)]).unwrap();
        assert_eq!(sq.diameter_squared(), int(2));
        let r = FatObject::cube_box(0, Point::from_ints(&[0, 0]), vec![int(3), int(4)]).unwrap();
        assert_eq!(r.diameter_squared(), int(25));
        assert!((r.diameter() - 5.0).abs() < 1e-12);
        assert_eq!(r.fatness_squared(), frac(9, 25));
    }

    #[test]
    fn small_graphs() {
        let f = ObjectSet::new(2, vec![ball(0, &[0, 0], int(1)), ball(1, &[5, 0], int(1))]).unwrap();
        let g = build_intersection_graph(&f).unwrap();
        assert_eq!(g.graph.edge_count(), 0);

        // three unit disks at mutual distance 2 (equilateral triangle, exact
        // coordinates are irrational so use a collinear-free rational stand-in)
        let f = ObjectSet::new(
            2,
            vec![
                ball(0, &[0, 0], int(1)),
                ball(1, &[2, 0], int(1)),
                FatObject::ball(2, Point(vec![int(1), frac(3, 2)]), int(1)).unwrap(),
            ],
        )
        .unwrap();
        let g = build_intersection_graph(&f).unwrap();
        assert_eq!(g.graph.edge_count(), 3);
    }

    #[test]
    fn json_round_trip() {
        let f = ObjectSet::new(
            2,
            vec![
                FatObject::ball(0, Point(vec![frac(1, 3), int(0)]), int(1)).unwrap(),
                FatObject::cube_box(1, Point::from_ints(&[0, 0]), vec![int(1), frac(5, 2)]).unwrap(),
            ],
        )
        .unwrap();
        let v = f.to_json_value();
        assert_eq!(v["objects"][0]["ball"]["center"][0], "1/3");
        assert_eq!(ObjectSet::from_json_value(v).unwrap(), f);
    }
}
