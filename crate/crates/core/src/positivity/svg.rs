//! Static SVG of the chart: conjectured quadrilateral, an outer polygon and
//! classified sample points.

use std::fmt::Write;

use crate::rational::to_f64;

use super::geometry::{conjectured_quadrilateral, ChartPoint, ConvexPolygon};
use super::sweep::GridRow;

const SIZE: f64 = 600.0;
const PAD: f64 = 40.0;

struct Frame {
    a_min: f64,
    b_min: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn new(window: &ConvexPolygon) -> Self {
        let (a0, a1, b0, b1) = window.bounds();
        let (a_min, a_max, b_min, b_max) = (to_f64(&a0), to_f64(&a1), to_f64(&b0), to_f64(&b1));
        let span = (a_max - a_min).max(b_max - b_min).max(f64::EPSILON);
        let scale = (SIZE - 2.0 * PAD) / span;
        Self {
            a_min,
            b_min,
            scale,
            height: (b_max - b_min) * scale + 2.0 * PAD,
        }
    }

    fn x(&self, alpha: f64) -> f64 {
        PAD + (alpha - self.a_min) * self.scale
    }

    fn y(&self, beta: f64) -> f64 {
        self.height - PAD - (beta - self.b_min) * self.scale
    }

    fn point(&self, p: &ChartPoint) -> (f64, f64) {
        (self.x(to_f64(&p.alpha)), self.y(to_f64(&p.beta)))
    }

    fn polygon(&self, poly: &ConvexPolygon) -> String {
        poly.vertices()
            .iter()
            .map(|p| {
                let (x, y) = self.point(p);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Renders the chart within `window`. Points with a witness are drawn as red
/// crosses, positive points as filled dots.
pub fn render_svg(window: &ConvexPolygon, outer: Option<&ConvexPolygon>, rows: &[GridRow]) -> String {
    let frame = Frame::new(window);
    let width = SIZE;
    let height = frame.height;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // axes through the origin
    let (ox, oy) = (frame.x(0.0), frame.y(0.0));
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#444" stroke-width="1"/>"##,
        PAD,
        width - PAD
    );
    let _ = writeln!(
        out,
        r##"<line x1="{ox:.2}" y1="{:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#444" stroke-width="1"/>"##,
        PAD,
        height - PAD
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="14">α</text>"#,
        width - PAD + 6.0,
        oy + 4.0
    );
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="14">β</text>"#, ox - 4.0, PAD - 8.0);

    if let Some(outer) = outer {
        let _ = writeln!(
            out,
            r##"<polygon class="outer" points="{}" fill="none" stroke="#c00" stroke-width="1.5"/>"##,
            frame.polygon(outer)
        );
    }
    let _ = writeln!(
        out,
        r##"<polygon class="conjecture" points="{}" fill="#0000ff" fill-opacity="0.5" stroke="#00f"/>"##,
        frame.polygon(&conjectured_quadrilateral())
    );

    for row in rows {
        let (x, y) = frame.point(&row.point);
        if row.positive() {
            let _ = writeln!(out, r##"<circle class="positive" cx="{x:.2}" cy="{y:.2}" r="1.6" fill="#111"/>"##);
        } else {
            let _ = writeln!(
                out,
                r##"<path class="negative" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}" stroke="#d22" stroke-width="0.8"/>"##,
                x - 1.5,
                y - 1.5,
                x + 1.5,
                y + 1.5,
                x - 1.5,
                y + 1.5,
                x + 1.5,
                y - 1.5
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
