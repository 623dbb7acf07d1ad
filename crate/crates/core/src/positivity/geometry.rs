//! Exact planar geometry in the chart `γ = 1`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::ShadowVector;
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartPoint {
    pub alpha: Rational,
    pub beta: Rational,
}

impl ChartPoint {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Self { alpha, beta }
    }

    pub fn from_ratios(alpha: (i64, i64), beta: (i64, i64)) -> Self {
        Self::new(ratio(alpha.0, alpha.1), ratio(beta.0, beta.1))
    }

    /// The root shadow vector `(α, β, 1)`.
    pub fn to_root(&self) -> ShadowVector {
        ShadowVector::new(
            self.alpha.clone(),
            self.beta.clone(),
            Rational::from_integer(1.into()),
        )
    }

    fn sub(&self, other: &Self) -> (Rational, Rational) {
        (&self.alpha - &other.alpha, &self.beta - &other.beta)
    }

    pub fn distance_squared(&self, other: &Self) -> Rational {
        let (dx, dy) = self.sub(other);
        &dx * &dx + &dy * &dy
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// `(b − a) × (c − a)`; positive for a counterclockwise turn.
fn cross(a: &ChartPoint, b: &ChartPoint, c: &ChartPoint) -> Rational {
    let (x1, y1) = b.sub(a);
    let (x2, y2) = c.sub(a);
    x1 * y2 - y1 * x2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfPlaneKind {
    Proper,
    /// `w ≥ 0` with `w` nonnegative: holds everywhere.
    Vacuous,
    /// `w ≥ 0` with `w` negative: holds nowhere.
    Infeasible,
}

/// `u·α + v·β + w ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
}

impl HalfPlane {
    pub fn new(u: Rational, v: Rational, w: Rational) -> Self {
        Self { u, v, w }
    }

    pub fn from_row(row: &[Rational; 3]) -> Self {
        Self::new(row[0].clone(), row[1].clone(), row[2].clone())
    }

    pub fn evaluate(&self, p: &ChartPoint) -> Rational {
        &self.u * &p.alpha + &self.v * &p.beta + &self.w
    }

    pub fn contains(&self, p: &ChartPoint) -> bool {
        !self.evaluate(p).is_negative()
    }

    pub fn kind(&self) -> HalfPlaneKind {
        if !self.u.is_zero() || !self.v.is_zero() {
            HalfPlaneKind::Proper
        } else if self.w.is_negative() {
            HalfPlaneKind::Infeasible
        } else {
            HalfPlaneKind::Vacuous
        }
    }

    /// Intersection of segment `p → q` with the boundary line, assuming the
    /// endpoints evaluate with opposite signs.
    fn crossing(&self, p: &ChartPoint, q: &ChartPoint) -> ChartPoint {
        let fp = self.evaluate(p);
        let fq = self.evaluate(q);
        let t = &fp / (&fp - &fq);
        let (dx, dy) = q.sub(p);
        ChartPoint::new(&p.alpha + &t * dx, &p.beta + &t * dy)
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*alpha + {}*beta + {} >= 0", self.u, self.v, self.w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Strictly convex polygon, vertices counterclockwise starting from the
/// lowest (then leftmost) vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<ChartPoint>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<ChartPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::MalformedPolygon(format!("{n} vertices")));
        }
        for i in 0..n {
            let turn = cross(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !turn.is_positive() {
                return Err(Error::MalformedPolygon(
                    "vertices must be counterclockwise with no three collinear".into(),
                ));
            }
        }
        // a strictly convex turn sequence can still wind more than once
        let lowest = lowest_index(&vertices);
        let mut winding = vertices.clone();
        winding.rotate_left(lowest);
        let angles_monotone = winding.windows(2).skip(1).all(|w| {
            cross(&winding[0], &w[0], &w[1]).is_positive()
        });
        if !angles_monotone {
            return Err(Error::MalformedPolygon("polygon is not simple".into()));
        }
        Ok(Self { vertices: winding })
    }

    pub fn rectangle(alpha_min: Rational, alpha_max: Rational, beta_min: Rational, beta_max: Rational) -> Result<Self> {
        Self::new(vec![
            ChartPoint::new(alpha_min.clone(), beta_min.clone()),
            ChartPoint::new(alpha_max.clone(), beta_min),
            ChartPoint::new(alpha_max, beta_max.clone()),
            ChartPoint::new(alpha_min, beta_max),
        ])
    }

    pub fn vertices(&self) -> &[ChartPoint] {
        &self.vertices
    }

    /// Edge `i → i+1` as a half-plane containing the polygon.
    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = &self.vertices[i];
                let q = &self.vertices[(i + 1) % n];
                // left of p → q: (q − p) × (x − p) ≥ 0
                let (dx, dy) = q.sub(p);
                let u = -&dy;
                let v = dx.clone();
                let w = &dy * &p.alpha - &dx * &p.beta;
                HalfPlane::new(u, v, w)
            })
            .collect()
    }

    pub fn location(&self, p: &ChartPoint) -> Location {
        let mut on_edge = false;
        for h in self.edge_halfplanes() {
            match h.evaluate(p).cmp(&Rational::zero()) {
                Ordering::Less => return Location::Exterior,
                Ordering::Equal => on_edge = true,
                Ordering::Greater => {}
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains(&self, p: &ChartPoint) -> bool {
        self.location(p) != Location::Exterior
    }

    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Squared Euclidean distance from `p` to the closed polygon.
    pub fn distance_squared(&self, p: &ChartPoint) -> Rational {
        if self.contains(p) {
            return Rational::zero();
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| segment_distance_squared(p, &self.vertices[i], &self.vertices[(i + 1) % n]))
            .min()
            .expect("at least three edges")
    }

    /// Bounding box `(alpha_min, alpha_max, beta_min, beta_max)`.
    pub fn bounds(&self) -> (Rational, Rational, Rational, Rational) {
        let alphas = self.vertices.iter().map(|v| &v.alpha);
        let betas = self.vertices.iter().map(|v| &v.beta);
        (
            alphas.clone().min().unwrap().clone(),
            alphas.max().unwrap().clone(),
            betas.clone().min().unwrap().clone(),
            betas.max().unwrap().clone(),
        )
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> Rational {
        let n = self.vertices.len();
        (0..n).fold(Rational::zero(), |acc, i| {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc + &p.alpha * &q.beta - &q.alpha * &p.beta
        })
    }
}

impl fmt::Display for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

fn lowest_index(vertices: &[ChartPoint]) -> usize {
    (0..vertices.len())
        .min_by(|&i, &j| {
            let (p, q) = (&vertices[i], &vertices[j]);
            p.beta.cmp(&q.beta).then_with(|| p.alpha.cmp(&q.alpha))
        })
        .unwrap_or(0)
}

fn segment_distance_squared(p: &ChartPoint, a: &ChartPoint, b: &ChartPoint) -> Rational {
    let (dx, dy) = b.sub(a);
    let (px, py) = p.sub(a);
    let len2 = &dx * &dx + &dy * &dy;
    let t = (&px * &dx + &py * &dy) / &len2;
    let t = t.clamp(Rational::zero(), Rational::from_integer(1.into()));
    let foot = ChartPoint::new(&a.alpha + &t * &dx, &a.beta + &t * &dy);
    p.distance_squared(&foot)
}

/// The quadrilateral `(0,0), (1/2,0), (1,1), (0,2)` conjectured to be the
/// positivity region.
pub fn conjectured_quadrilateral() -> ConvexPolygon {
    ConvexPolygon::new(vec![
        ChartPoint::from_ratios((0, 1), (0, 1)),
        ChartPoint::from_ratios((1, 2), (0, 1)),
        ChartPoint::from_ratios((1, 1), (1, 1)),
        ChartPoint::from_ratios((0, 1), (2, 1)),
    ])
    .expect("the quadrilateral is strictly convex")
}

/// Removes repeated and collinear vertices from a closed chain.
fn simplify(mut points: Vec<ChartPoint>) -> Vec<ChartPoint> {
    points.dedup();
    while points.len() > 1 && points.first() == points.last() {
        points.pop();
    }
    loop {
        let n = points.len();
        if n < 3 {
            return points;
        }
        let redundant = (0..n).find(|&i| {
            let prev = &points[(i + n - 1) % n];
            let next = &points[(i + 1) % n];
            cross(prev, &points[i], next).is_zero()
        });
        match redundant {
            Some(i) => {
                points.remove(i);
            }
            None => return points,
        }
    }
}

fn clip(polygon: &[ChartPoint], h: &HalfPlane) -> Vec<ChartPoint> {
    let n = polygon.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let current = &polygon[i];
        let next = &polygon[(i + 1) % n];
        let fc = h.evaluate(current);
        let fnext = h.evaluate(next);
        if !fc.is_negative() {
            out.push(current.clone());
        }
        if (fc.is_negative() && fnext.is_positive()) || (fc.is_positive() && fnext.is_negative()) {
            out.push(h.crossing(current, next));
        }
    }
    out
}

/// Clips `bbox` by every constraint in order. A region with no interior is
/// reported as [`Error::EmptyRegion`].
pub fn polygon_intersect(constraints: &[HalfPlane], bbox: &ConvexPolygon) -> Result<ConvexPolygon> {
    let mut current = bbox.vertices.clone();
    for h in constraints {
        match h.kind() {
            HalfPlaneKind::Vacuous => continue,
            HalfPlaneKind::Infeasible => return Err(Error::EmptyRegion),
            HalfPlaneKind::Proper => {}
        }
        current = simplify(clip(&current, h));
        if current.len() < 3 {
            return Err(Error::EmptyRegion);
        }
    }
    ConvexPolygon::new(current).map_err(|_| Error::EmptyRegion)
}
