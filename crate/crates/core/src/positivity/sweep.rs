use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

use super::constraints::ConstraintSet;
use super::geometry::{conjectured_quadrilateral, ChartPoint, ConvexPolygon, Location};
use super::witness::NegativityWitness;

pub const CSV_HEADER: &str = "alpha,beta,inside_conjecture,positive_to_depth,witness_word";

/// Default sweep window `[-1/2, 5/2] × [-1/2, 3]`.
pub fn default_bbox() -> ConvexPolygon {
    ConvexPolygon::rectangle(ratio(-1, 2), ratio(5, 2), ratio(-1, 2), ratio(3, 1)).expect("valid rectangle")
}

pub fn default_spacing() -> Rational {
    ratio(1, 20)
}

pub const DEFAULT_SWEEP_DEPTH: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub point: ChartPoint,
    /// Position relative to the conjectured quadrilateral.
    pub location: Location,
    pub witness: Option<NegativityWitness>,
}

impl GridRow {
    pub fn inside_conjecture(&self) -> bool {
        self.location != Location::Exterior
    }

    pub fn positive(&self) -> bool {
        self.witness.is_none()
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.point.alpha,
            self.point.beta,
            self.inside_conjecture(),
            self.positive(),
            self.witness.as_ref().map(|w| w.word.to_string()).unwrap_or_default()
        )
    }
}

/// Lattice points `spacing·(i, j)` inside `bbox`, row-major by β then α.
pub fn lattice_points(bbox: &ConvexPolygon, spacing: &Rational) -> Result<Vec<ChartPoint>> {
    if !spacing.is_positive() {
        return Err(Error::Precondition(format!("spacing must be positive, got {spacing}")));
    }
    let (a_min, a_max, b_min, b_max) = bbox.bounds();
    let range = |lo: &Rational, hi: &Rational| {
        let first = (lo / spacing).ceil().to_integer();
        let last = (hi / spacing).floor().to_integer();
        (first, last)
    };
    let (i0, i1) = range(&a_min, &a_max);
    let (j0, j1) = range(&b_min, &b_max);
    let mut points = Vec::new();
    let mut j = j0;
    while j <= j1 {
        let beta = spacing * Rational::from_integer(j.clone());
        let mut i = i0.clone();
        while i <= i1 {
            let p = ChartPoint::new(spacing * Rational::from_integer(i.clone()), beta.clone());
            if bbox.contains(&p) {
                points.push(p);
            }
            i.inc();
        }
        j.inc();
    }
    Ok(points)
}

/// Classifies every lattice point of `bbox` against the quadrilateral and
/// against positivity to `depth`. Runs on the current rayon pool; the row
/// order does not depend on scheduling.
pub fn grid_scan(bbox: &ConvexPolygon, spacing: &Rational, depth: usize) -> Result<Vec<GridRow>> {
    let points = lattice_points(bbox, spacing)?;
    let constraints = ConstraintSet::build(depth);
    Ok(scan_points(points, &constraints))
}

pub fn scan_points(points: Vec<ChartPoint>, constraints: &ConstraintSet) -> Vec<GridRow> {
    let quad = conjectured_quadrilateral();
    points
        .into_par_iter()
        .map(|point| GridRow {
            location: quad.location(&point),
            witness: constraints.witness(&point),
            point,
        })
        .collect()
}

pub fn rows_to_csv(rows: &[GridRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 32);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Counts used by the CLI summary and the acceptance suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub interior: usize,
    pub boundary: usize,
    pub exterior: usize,
    pub interior_negative: Vec<ChartPoint>,
    pub boundary_negative: Vec<ChartPoint>,
    /// Exterior points farther than the margin from the quadrilateral with
    /// no witness found.
    pub far_exterior_positive: Vec<ChartPoint>,
    pub exterior_positive: usize,
}

pub fn summarize(rows: &[GridRow], margin: &Rational) -> SweepSummary {
    let quad = conjectured_quadrilateral();
    let margin_sq = margin * margin;
    let mut s = SweepSummary {
        total: rows.len(),
        ..SweepSummary::default()
    };
    for row in rows {
        match row.location {
            Location::Interior => {
                s.interior += 1;
                if !row.positive() {
                    s.interior_negative.push(row.point.clone());
                }
            }
            Location::Boundary => {
                s.boundary += 1;
                if !row.positive() {
                    s.boundary_negative.push(row.point.clone());
                }
            }
            Location::Exterior => {
                s.exterior += 1;
                if row.positive() {
                    s.exterior_positive += 1;
                    if quad.distance_squared(&row.point) > margin_sq {
                        s.far_exterior_positive.push(row.point.clone());
                    }
                }
            }
        }
    }
    s
}

impl SweepSummary {
    pub fn render(&self, margin: &Rational) -> String {
        let mut out = format!(
            "points: {}\ninterior: {} ({} with witness)\nboundary: {} ({} with witness)\nexterior: {} ({} without witness, {} of them farther than {})\n",
            self.total,
            self.interior,
            self.interior_negative.len(),
            self.boundary,
            self.boundary_negative.len(),
            self.exterior,
            self.exterior_positive,
            self.far_exterior_positive.len(),
            margin
        );
        for p in &self.interior_negative {
            out.push_str(&format!("interior point with witness: {p}\n"));
        }
        if self.far_exterior_positive.is_empty() && !self.total.is_zero() {
            out.push_str("every far exterior point has a witness\n");
        }
        out
    }
}
