//! Deterministic SVG 1.1 drawings of planar subdivisions.

use std::fmt::Write;

use super::hull::LowerFacet;
use super::mixed::Subdivision;
use super::support::Point;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};

/// Pixels per lattice unit.
pub const UNIT: i64 = 40;
const MARGIN: i64 = 40;

pub const MIXED_FILL: &str = "#f4b6c2";

/// Maps lattice points to canvas coordinates with y pointing up.
pub struct Canvas {
    min: (i64, i64),
    max: (i64, i64),
    body: String,
}

impl Canvas {
    pub fn new<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        let mut min = (i64::MAX, i64::MAX);
        let mut max = (i64::MIN, i64::MIN);
        for p in points {
            min = (min.0.min(p[0]), min.1.min(p[1]));
            max = (max.0.max(p[0]), max.1.max(p[1]));
        }
        if min.0 > max.0 {
            min = (0, 0);
            max = (0, 0);
        }
        Canvas {
            min,
            max,
            body: String::new(),
        }
    }

    /// Pixel coordinates of a point given in half-lattice units.
    pub fn half_xy(&self, x2: i64, y2: i64) -> (f64, f64) {
        let x = MARGIN as f64 + (x2 - 2 * self.min.0) as f64 * UNIT as f64 / 2.0;
        let y = MARGIN as f64 + (2 * self.max.1 - y2) as f64 * UNIT as f64 / 2.0;
        (x, y)
    }

    pub fn xy(&self, p: &[i64]) -> (f64, f64) {
        self.half_xy(2 * p[0], 2 * p[1])
    }

    pub fn polygon(&mut self, pts: &[Point], fill: Option<&str>, class: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}" fill="{}" stroke="black" stroke-width="1"/>"#,
            coords.join(" "),
            fill.unwrap_or("none")
        );
    }

    pub fn line_half(&mut self, a: (i64, i64), b: (i64, i64), class: &str, color: &str, width: u32) {
        let (x1, y1) = self.half_xy(a.0, a.1);
        let (x2, y2) = self.half_xy(b.0, b.1);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"/>"#
        );
    }

    pub fn line(&mut self, a: &[i64], b: &[i64], class: &str) {
        self.line_half((2 * a[0], 2 * a[1]), (2 * b[0], 2 * b[1]), class, "black", 1);
    }

    pub fn label(&mut self, p: &[i64], text: &str) {
        let (x, y) = self.xy(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x}" cy="{y}" r="3" fill="black"/><text x="{}" y="{}" font-size="14">{text}</text>"#,
            x + 5.0,
            y - 5.0
        );
    }

    pub fn dot(&mut self, p: &[i64]) {
        let (x, y) = self.xy(p);
        let _ = writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="2" fill="black"/>"#);
    }

    pub fn finish(self) -> String {
        let w = (self.max.0 - self.min.0) * UNIT + 2 * MARGIN;
        let h = (self.max.1 - self.min.1) * UNIT + 2 * MARGIN;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body
        )
    }
}

/// Convex hull of planar points, counterclockwise, without collinear
/// interior points.
pub fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &Point, a: &Point, b: &Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// The cell `F_1 + ... + F_r` as a list of planar points.
pub fn cell_points(sub: &Subdivision, cell: &LowerFacet) -> Vec<Point> {
    let mut acc: Vec<Point> = vec![vec![0, 0]];
    for (face, l) in cell.faces.iter().zip(&sub.lifted) {
        let pts = l.support.points();
        let mut next = Vec::with_capacity(acc.len() * face.len());
        for a in &acc {
            for &i in face {
                next.push(vec![a[0] + pts[i][0], a[1] + pts[i][1]]);
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    acc
}

/// Subdivision of a planar Minkowski sum; mixed cells are filled.
pub fn subdivision_svg(sub: &Subdivision) -> Result<String> {
    if sub.dim() != 2 {
        return Err(Error::Dimension("SVG output needs n = 2".into()));
    }
    let polys: Vec<(Vec<Point>, bool)> = sub
        .cells
        .iter()
        .map(|c| (convex_hull_2d(&cell_points(sub, c)), c.is_mixed && c.dims.iter().all(|&d| d == 1)))
        .collect();
    let mut canvas = Canvas::new(polys.iter().flat_map(|(p, _)| p.iter()));
    for (p, mixed) in &polys {
        let class = if *mixed { "mixed-cell" } else { "cell" };
        canvas.polygon(p, mixed.then_some(MIXED_FILL), class);
    }
    Ok(canvas.finish())
}

/// Triangulation of a planar support, drawing every simplex edge.
pub fn triangulation_svg(t: &Triangulation) -> Result<String> {
    if t.support.dim() != 2 {
        return Err(Error::Dimension("SVG output needs n = 2".into()));
    }
    let pts = t.support.points();
    let mut canvas = Canvas::new(pts.iter());
    canvas.polygon(&convex_hull_2d(pts), None, "hull");
    for (a, b) in t.edges() {
        canvas.line(&pts[a], &pts[b], "edge");
    }
    for p in pts {
        canvas.dot(p);
    }
    Ok(canvas.finish())
}
