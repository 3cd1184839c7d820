//! Sign distributions on supports: alternating edges and mixed cells,
//! positive-root counts from alternating cells, and planar Viro diagrams.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, Rational};
use crate::polyhedra::svg::{convex_hull_2d, Canvas};
use crate::polyhedra::{coherent_triangulation, mixed_volume, LiftedSupport, MixedCell, Subdivision, Support, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of(q: &Rational) -> Result<Sign> {
        if q.is_zero() {
            return Err(Error::InvalidInput("zero coefficient has no sign".into()));
        }
        Ok(if q.is_positive() { Sign::Plus } else { Sign::Minus })
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" | "−" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("bad sign {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "−",
        })
    }
}

/// One sign per point of a support, in the support's order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignDistribution {
    pub signs: Vec<Sign>,
}

impl SignDistribution {
    pub fn new(support: &Support, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != support.len() {
            return Err(Error::InvalidInput(format!(
                "{} signs for a support of {} points",
                signs.len(),
                support.len()
            )));
        }
        Ok(SignDistribution { signs })
    }

    pub fn from_coefficients(support: &Support, coeffs: &[Rational]) -> Result<Self> {
        Self::new(support, coeffs.iter().map(Sign::of).collect::<Result<_>>()?)
    }

    pub fn negated(&self) -> Self {
        SignDistribution {
            signs: self.signs.iter().map(|s| s.negate()).collect(),
        }
    }

    fn get(&self, i: usize) -> Result<Sign> {
        self.signs
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("no sign for point {i}")))
    }

    pub fn alternates(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.get(a)? != self.get(b)?)
    }
}

/// Triangulation edges whose endpoints carry opposite signs.
pub fn alternating_edges(tri: &Triangulation, signs: &SignDistribution) -> Result<Vec<(usize, usize)>> {
    if signs.signs.len() != tri.support.len() {
        return Err(Error::InvalidInput("sign distribution does not cover the support".into()));
    }
    let mut out = Vec::new();
    for (a, b) in tri.edges() {
        if signs.alternates(a, b)? {
            out.push((a, b));
        }
    }
    Ok(out)
}

fn check_edge_cell(c: &MixedCell) -> Result<()> {
    if c.faces.iter().any(|f| f.len() != 2) {
        return Err(Error::Unsupported(
            "a mixed cell edge contains more than two support points; perturb the lifting".into(),
        ));
    }
    Ok(())
}

fn cell_alternates(c: &MixedCell, signs: &[SignDistribution]) -> Result<bool> {
    for (e, s) in c.edges.iter().zip(signs) {
        if !s.alternates(e.0, e.1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternatingCells {
    pub count: usize,
    pub mixed_cells: usize,
    /// The alternating cells themselves, as a certificate.
    #[serde(skip)]
    pub cells: Vec<MixedCell>,
}

fn alternating_among(cells: Vec<MixedCell>, signs: &[SignDistribution]) -> Result<AlternatingCells> {
    let total = cells.len();
    let mut keep = Vec::new();
    for c in cells {
        check_edge_cell(&c)?;
        if cell_alternates(&c, signs)? {
            keep.push(c);
        }
    }
    Ok(AlternatingCells {
        count: keep.len(),
        mixed_cells: total,
        cells: keep,
    })
}

fn check_signs(supports: &[Support], signs: &[SignDistribution]) -> Result<()> {
    if supports.len() != signs.len() {
        return Err(Error::InvalidInput(format!("{} sign lists for {} supports", signs.len(), supports.len())));
    }
    for (s, d) in supports.iter().zip(signs) {
        if s.len() != d.signs.len() {
            return Err(Error::InvalidInput("sign distribution does not cover the support".into()));
        }
    }
    Ok(())
}

/// Mixed cells of the subdivision all of whose edges alternate.
pub fn count_alternating_mixed_cells(sub: &Subdivision, signs: &[SignDistribution]) -> Result<AlternatingCells> {
    check_signs(&sub.supports(), signs)?;
    alternating_among(crate::polyhedra::mixed_cells(sub)?, signs)
}

/// Number of positive roots, for all small `t > 0`, of the system with
/// coefficients `c_{i,a}·t^{ℓ_i(a)}` having the given signs: the number of
/// alternating mixed cells. The cells are returned as a certificate.
pub fn sturmfels_positive_count(lifted: &[LiftedSupport], signs: &[SignDistribution]) -> Result<AlternatingCells> {
    let supports: Vec<Support> = lifted.iter().map(|l| l.support.clone()).collect();
    check_signs(&supports, signs)?;
    let mv = mixed_volume(lifted, false)?;
    alternating_among(mv.cells, signs)
}

/// Point with coordinates in `(1/2)·Z^2`, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfPoint(pub i64, pub i64);

impl HalfPoint {
    fn midpoint(a: &[i64], b: &[i64]) -> Self {
        HalfPoint(a[0] + b[0], a[1] + b[1])
    }

    pub fn coords(&self) -> [Rational; 2] {
        let h = |v: i64| Rational::new(v.into(), 2.into());
        [h(self.0), h(self.1)]
    }
}

impl Serialize for HalfPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.coords();
        [format_rational(&c[0]), format_rational(&c[1])].serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViroSegment {
    pub from: HalfPoint,
    pub to: HalfPoint,
    /// Endpoints on the boundary of `Conv(A)` are removed from the diagram.
    pub open_from: bool,
    pub open_to: bool,
    /// Triangle the segment lies in.
    pub cell: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViroDiagram {
    pub segments: Vec<ViroSegment>,
}

impl ViroDiagram {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

fn on_boundary(hull: &[Vec<i64>], a: &[i64], b: &[i64]) -> bool {
    let cross = |o: &[i64], p: &[i64], q: &[i64]| (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
    (0..hull.len()).any(|i| {
        let u = &hull[i];
        let v = &hull[(i + 1) % hull.len()];
        cross(u, v, a) == 0 && cross(u, v, b) == 0
    })
}

/// Viro diagram of a signed planar triangulation: in every triangle, the
/// segment joining the midpoints of its two alternating edges.
pub fn viro_diagram_from_triangulation(tri: &Triangulation, signs: &SignDistribution) -> Result<ViroDiagram> {
    if tri.support.dim() != 2 {
        return Err(Error::Dimension("Viro diagrams are emitted for n = 2 only".into()));
    }
    if signs.signs.len() != tri.support.len() {
        return Err(Error::InvalidInput("sign distribution does not cover the support".into()));
    }
    let pts = tri.support.points();
    if tri.support.affine_dim() != 2 {
        return Err(Error::Dimension("support is not full-dimensional".into()));
    }
    let hull = convex_hull_2d(pts);
    let mut segments = Vec::new();
    for cell in &tri.simplices {
        let mut mids = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (cell[i], cell[j]);
                if signs.alternates(a, b)? {
                    mids.push((HalfPoint::midpoint(&pts[a], &pts[b]), on_boundary(&hull, &pts[a], &pts[b])));
                }
            }
        }
        if mids.len() == 2 {
            mids.sort();
            segments.push(ViroSegment {
                from: mids[0].0,
                to: mids[1].0,
                open_from: mids[0].1,
                open_to: mids[1].1,
                cell: cell.clone(),
            });
        }
    }
    segments.sort_by(|a, b| (a.from, a.to).cmp(&(b.from, b.to)));
    Ok(ViroDiagram { segments })
}

pub fn viro_diagram_2d(lifted: &LiftedSupport, signs: &SignDistribution) -> Result<ViroDiagram> {
    if lifted.support.dim() != 2 {
        return Err(Error::Dimension("Viro diagrams are emitted for n = 2 only".into()));
    }
    viro_diagram_from_triangulation(&coherent_triangulation(lifted)?, signs)
}

/// SVG of the hull, the diagram and the vertex signs; the triangulation is
/// drawn in grey when `show_triangulation` is set.
pub fn viro_svg(tri: &Triangulation, signs: &SignDistribution, diagram: &ViroDiagram, show_triangulation: bool) -> Result<String> {
    if tri.support.dim() != 2 {
        return Err(Error::Dimension("SVG output needs n = 2".into()));
    }
    let pts = tri.support.points();
    let mut canvas = Canvas::new(pts.iter());
    canvas.polygon(&convex_hull_2d(pts), None, "hull");
    if show_triangulation {
        for (a, b) in tri.edges() {
            let (p, q) = (&pts[a], &pts[b]);
            canvas.line_half((2 * p[0], 2 * p[1]), (2 * q[0], 2 * q[1]), "edge", "#aaaaaa", 1);
        }
    }
    for s in &diagram.segments {
        canvas.line_half((s.from.0, s.from.1), (s.to.0, s.to.1), "viro", "#d62728", 3);
    }
    for (p, s) in pts.iter().zip(&signs.signs) {
        canvas.label(p, &s.to_string());
    }
    Ok(canvas.finish())
}

/// JSON summary of a mixed cell.
pub fn describe_cell(c: &MixedCell, supports: &[Support]) -> serde_json::Value {
    let edges: Vec<_> = c
        .edges
        .iter()
        .zip(supports)
        .map(|(e, s)| serde_json::json!([s.points()[e.0], s.points()[e.1]]))
        .collect();
    let normal: Vec<String> = c.normal.iter().map(BigInt::to_string).collect();
    serde_json::json!({
        "normal": normal,
        "edges": edges,
        "volume": c.volume.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::induced_subdivision;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn signs(s: &str) -> Vec<Sign> {
        s.chars().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect()
    }

    #[test]
    fn segment_alternates() {
        let s = Support::new(1, vec![vec![0], vec![1]]).unwrap();
        let t = coherent_triangulation(&LiftedSupport::flat(s.clone())).unwrap();
        let d = SignDistribution::new(&s, signs("+-")).unwrap();
        assert_eq!(alternating_edges(&t, &d).unwrap(), vec![(0, 1)]);
        let d = SignDistribution::new(&s, signs("++")).unwrap();
        assert!(alternating_edges(&t, &d).unwrap().is_empty());
    }

    #[test]
    fn missing_sign_is_an_error() {
        let s = Support::new(1, vec![vec![0], vec![1]]).unwrap();
        assert!(SignDistribution::new(&s, signs("+")).is_err());
    }

    #[test]
    fn x_minus_one_has_one_positive_root() {
        let l = LiftedSupport::from_ints(1, &[&[0], &[1]], &[0, 0]).unwrap();
        let d = SignDistribution::from_coefficients(&l.support, &[q(-1), q(1)]).unwrap();
        assert_eq!(sturmfels_positive_count(&[l], &[d]).unwrap().count, 1);
    }

    #[test]
    fn triangle_diagram() {
        let l = LiftedSupport::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let d = SignDistribution::new(&l.support, signs("+--")).unwrap();
        let v = viro_diagram_2d(&l, &d).unwrap();
        assert_eq!(v.segments.len(), 1);
        let s = &v.segments[0];
        assert_eq!((s.from, s.to), (HalfPoint(0, 1), HalfPoint(1, 0)));
        assert!(s.open_from && s.open_to);
        let plus = SignDistribution::new(&l.support, signs("+++")).unwrap();
        assert!(viro_diagram_2d(&l, &plus).unwrap().is_empty());
    }

    #[test]
    fn all_plus_has_no_alternating_cells() {
        let a = LiftedSupport::from_ints(2, &[&[0, 0], &[2, 0], &[1, 1]], &[1, 0, 0]).unwrap();
        let b = LiftedSupport::from_ints(2, &[&[0, 0], &[2, 0], &[0, 1]], &[0, 1, 0]).unwrap();
        let sub = induced_subdivision(&[a.clone(), b.clone()]).unwrap();
        let plus = |l: &LiftedSupport| SignDistribution::new(&l.support, signs("+++")).unwrap();
        let r = count_alternating_mixed_cells(&sub, &[plus(&a), plus(&b)]).unwrap();
        assert_eq!((r.count, r.mixed_cells), (0, 3));
    }

    #[test]
    fn empty_diagram_svg_has_hull_only() {
        let l = LiftedSupport::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]], &[0, 0, 0]).unwrap();
        let t = coherent_triangulation(&l).unwrap();
        let d = SignDistribution::new(&l.support, signs("+++")).unwrap();
        let v = viro_diagram_from_triangulation(&t, &d).unwrap();
        let svg = viro_svg(&t, &d, &v, false).unwrap();
        assert_eq!(svg.matches("class=\"hull\"").count(), 1);
        assert_eq!(svg.matches("class=\"viro\"").count(), 0);
    }
}
