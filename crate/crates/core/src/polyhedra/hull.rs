//! Lower facets of lifted Minkowski sums.
//!
//! A lower facet is determined by its face choices `F_i` (the points of
//! each lifted support minimizing `v·a + ℓ_i(a)`), and its normal `v` is
//! the unique solution of the equalities inside the faces. The search picks
//! affinely independent points per support, one at a time, pruning with an
//! exact LP whenever the partial choice cannot lie on a common lower face.
//! Once the chosen differences span Q^n the normal is fixed and every face
//! is read off directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::height::{Height, Lin};
use super::linalg::{det_bareiss, primitive_integer_vector, solve_affine, to_rational_vec, SpanBasis};
use super::lp::{feasible, Row, Want};
use super::support::{affine_dim, Point, Support};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Search-node budget before giving up with a guardrail error.
pub const NODE_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LowerFacet {
    /// Primitive integer inner normal `(v, w)` with `w > 0`, built from the
    /// non-infinitesimal part of `v`.
    pub normal: Vec<BigInt>,
    /// Facet functional: `F_i` minimizes `v·a + ℓ_i(a)`.
    pub v: Vec<Height>,
    /// Indices of `F_i` in each support, increasing.
    pub faces: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub is_mixed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedCell {
    pub normal: Vec<BigInt>,
    pub v: Vec<Height>,
    /// Endpoints of the edge `E_i`, as indices into support `i`.
    pub edges: Vec<(usize, usize)>,
    /// Full face `F_i` (more than two points when an edge carries interior
    /// lattice points of the support).
    pub faces: Vec<Vec<usize>>,
    /// Euclidean volume `|det|` of the edge vectors.
    pub volume: BigInt,
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot_h(d: &[i64], v: &[Height]) -> Height {
    let mut acc = Height::origin();
    for (x, y) in d.iter().zip(v) {
        if *x != 0 {
            acc = acc.add(&y.scale(&Rational::from_integer((*x).into())));
        }
    }
    acc
}

fn dot_q(d: &[i64], k: &[Rational]) -> Rational {
    d.iter()
        .zip(k)
        .map(|(x, y)| Rational::from_integer((*x).into()) * y)
        .sum()
}

/// Primitive integer form of `(v, 1)`.
pub fn primitive_normal(v: &[Height]) -> Vec<BigInt> {
    let mut q: Vec<Rational> = v.iter().map(|h| h.value.clone()).collect();
    q.push(Rational::from_integer(1.into()));
    primitive_integer_vector(&q)
}

struct Constraints {
    n: usize,
    eq_rows: Vec<Vec<Rational>>,
    eq_rhs: Vec<Height>,
    /// `d · v  (>= or >)  rhs`.
    ineq: Vec<(Vec<i64>, Height)>,
}

impl Constraints {
    fn new(n: usize) -> Self {
        Constraints {
            n,
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            ineq: Vec::new(),
        }
    }

    fn check(&self, want: Want) -> bool {
        let Some(sol) = solve_affine(&self.eq_rows, &self.eq_rhs, self.n) else {
            return false;
        };
        let rows: Vec<Row<Height>> = self
            .ineq
            .iter()
            .map(|(d, rhs)| Row {
                coeffs: sol.kernel.iter().map(|k| dot_q(d, k)).collect(),
                rhs: rhs.sub(&dot_h(d, &sol.particular)),
            })
            .collect();
        feasible(&rows, sol.kernel.len(), want)
    }

    fn unique_solution(&self) -> Option<Vec<Height>> {
        let sol = solve_affine(&self.eq_rows, &self.eq_rhs, self.n)?;
        sol.kernel.is_empty().then_some(sol.particular)
    }
}

/// Indices minimizing `v·a + h(a)`.
fn argmin(points: &[Point], heights: &[Height], v: &[Height]) -> Vec<usize> {
    let vals: Vec<Height> = points
        .iter()
        .zip(heights)
        .map(|(a, h)| dot_h(a, v).add(h))
        .collect();
    let m = vals.iter().min().expect("nonempty support").clone();
    (0..vals.len()).filter(|&i| vals[i] == m).collect()
}

pub(crate) fn check_inputs(supports: &[Support], heights: &[Vec<Height>]) -> Result<usize> {
    let n = supports
        .first()
        .ok_or_else(|| Error::InvalidInput("no supports".into()))?
        .dim();
    if supports.len() != heights.len() {
        return Err(Error::InvalidInput("one lifting per support required".into()));
    }
    for (s, h) in supports.iter().zip(heights) {
        if s.dim() != n {
            return Err(Error::Dimension("supports live in different dimensions".into()));
        }
        if s.len() != h.len() {
            return Err(Error::InvalidInput("lifting length differs from support size".into()));
        }
    }
    let mut basis = SpanBasis::new();
    for s in supports {
        for p in s.points() {
            basis.try_add(&to_rational_vec(&diff(p, &s.points()[0])));
        }
    }
    if basis.rank() < n {
        return Err(Error::Dimension(format!(
            "Minkowski sum has dimension {} < {n}",
            basis.rank()
        )));
    }
    Ok(n)
}

struct FacetSearch<'a> {
    n: usize,
    supports: &'a [Support],
    heights: &'a [Vec<Height>],
    dims: Vec<usize>,
    nodes: usize,
    found: BTreeMap<Vec<Vec<usize>>, Vec<Height>>,
}

impl FacetSearch<'_> {
    fn constraints(&self, sel: &[Vec<usize>]) -> Constraints {
        let mut c = Constraints::new(self.n);
        for (j, s) in sel.iter().enumerate() {
            let Some(&a0) = s.first() else {
                continue;
            };
            let pts = self.supports[j].points();
            let h = &self.heights[j];
            for &a in &s[1..] {
                c.eq_rows.push(to_rational_vec(&diff(&pts[a], &pts[a0])));
                c.eq_rhs.push(h[a0].sub(&h[a]));
            }
            for b in 0..pts.len() {
                if !s.contains(&b) {
                    c.ineq.push((diff(&pts[b], &pts[a0]), h[a0].sub(&h[b])));
                }
            }
        }
        c
    }

    fn capacity(&self, i: usize, cur: &[usize]) -> usize {
        let used = cur.len().saturating_sub(1);
        self.dims[i].saturating_sub(used) + self.dims[i + 1..].iter().sum::<usize>()
    }

    fn dfs(&mut self, i: usize, sel: &mut Vec<Vec<usize>>, basis: &SpanBasis) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(Error::Guardrail(format!(
                "lower-facet search exceeded {NODE_LIMIT} nodes"
            )));
        }
        if basis.rank() == self.n {
            let v = self
                .constraints(sel)
                .unique_solution()
                .expect("full-rank consistent equalities");
            let faces: Vec<Vec<usize>> = self
                .supports
                .iter()
                .zip(self.heights)
                .map(|(s, h)| argmin(s.points(), h, &v))
                .collect();
            self.found.entry(faces).or_insert(v);
            return Ok(());
        }
        if i == self.supports.len() || basis.rank() + self.capacity(i, &sel[i]) < self.n {
            return Ok(());
        }
        if sel[i].len() != 1 {
            sel.push(Vec::new());
            self.dfs(i + 1, sel, basis)?;
            sel.pop();
        }
        let pts = self.supports[i].points();
        let start = sel[i].last().map_or(0, |&l| l + 1);
        for q in start..pts.len() {
            let mut b = basis.clone();
            if let Some(&a0) = sel[i].first() {
                if !b.try_add(&to_rational_vec(&diff(&pts[q], &pts[a0]))) {
                    continue;
                }
            }
            sel[i].push(q);
            if self.constraints(sel).check(Want::Feasible) {
                self.dfs(i, sel, &b)?;
            }
            sel[i].pop();
        }
        Ok(())
    }
}

/// All lower facets of `Â_1 + ... + Â_r`, ordered by normal.
pub fn lower_facets_h(supports: &[Support], heights: &[Vec<Height>]) -> Result<Vec<LowerFacet>> {
    let n = check_inputs(supports, heights)?;
    let mut search = FacetSearch {
        n,
        supports,
        heights,
        dims: supports.iter().map(|s| s.affine_dim()).collect(),
        nodes: 0,
        found: BTreeMap::new(),
    };
    let mut sel = vec![Vec::new()];
    search.dfs(0, &mut sel, &SpanBasis::new())?;
    let mut out: Vec<LowerFacet> = search
        .found
        .into_iter()
        .map(|(faces, v)| {
            let dims: Vec<usize> = faces
                .iter()
                .zip(supports)
                .map(|(f, s)| affine_dim(s.points(), f))
                .collect();
            let is_mixed = dims.iter().sum::<usize>() == n;
            LowerFacet {
                normal: primitive_normal(&v),
                v,
                faces,
                dims,
                is_mixed,
            }
        })
        .collect();
    out.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.faces.cmp(&b.faces)));
    Ok(out)
}

struct CellSearch<'a> {
    n: usize,
    supports: &'a [Support],
    heights: &'a [Vec<Height>],
    nodes: usize,
    found: BTreeMap<Vec<Vec<usize>>, (Vec<Height>, Vec<(usize, usize)>)>,
}

fn collinear_offset(c: &[i64], a: &[i64], b: &[i64]) -> Option<Rational> {
    let d = diff(b, a);
    let e = diff(c, a);
    let k = d.iter().position(|&x| x != 0)?;
    let lambda = Rational::new(e[k].into(), d[k].into());
    let ok = d
        .iter()
        .zip(&e)
        .all(|(&di, &ei)| Rational::from_integer(di.into()) * &lambda == Rational::from_integer(ei.into()));
    ok.then_some(lambda)
}

impl CellSearch<'_> {
    /// Adds the constraints making `{a, b}` span exactly the face of
    /// support `i`; `false` when a collinear point already undercuts it.
    fn add_edge(&self, c: &mut Constraints, i: usize, a: usize, b: usize) -> bool {
        let pts = self.supports[i].points();
        let h = &self.heights[i];
        c.eq_rows.push(to_rational_vec(&diff(&pts[b], &pts[a])));
        c.eq_rhs.push(h[a].sub(&h[b]));
        for q in 0..pts.len() {
            if q == a || q == b {
                continue;
            }
            match collinear_offset(&pts[q], &pts[a], &pts[b]) {
                // value(q) - value(a) = λ (h(a) - h(b)) + h(q) - h(a), independent of v
                Some(lambda) => {
                    let gap = h[a].sub(&h[b]).scale(&lambda).add(&h[q]).sub(&h[a]);
                    if gap < Height::origin() {
                        return false;
                    }
                }
                None => c.ineq.push((diff(&pts[q], &pts[a]), h[a].sub(&h[q]))),
            }
        }
        true
    }

    fn dfs(&mut self, i: usize, chosen: &mut Vec<(usize, usize)>, basis: &SpanBasis) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(Error::Guardrail(format!(
                "mixed-cell search exceeded {NODE_LIMIT} nodes"
            )));
        }
        if i == self.n {
            let mut c = Constraints::new(self.n);
            for (j, &(a, b)) in chosen.iter().enumerate() {
                self.add_edge(&mut c, j, a, b);
            }
            let v = c.unique_solution().expect("edges span Q^n");
            let faces: Vec<Vec<usize>> = self
                .supports
                .iter()
                .zip(self.heights)
                .map(|(s, h)| argmin(s.points(), h, &v))
                .collect();
            // extreme points of each (collinear) face
            let edges = faces
                .iter()
                .zip(self.supports)
                .map(|(f, s)| extreme_pair(s.points(), f))
                .collect();
            self.found.entry(faces).or_insert((v, edges));
            return Ok(());
        }
        let pts = self.supports[i].points();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                let mut nb = basis.clone();
                if !nb.try_add(&to_rational_vec(&diff(&pts[b], &pts[a]))) {
                    continue;
                }
                let mut c = Constraints::new(self.n);
                let mut ok = true;
                chosen.push((a, b));
                for (j, &(x, y)) in chosen.iter().enumerate() {
                    ok &= self.add_edge(&mut c, j, x, y);
                }
                if ok && c.check(Want::Strict) {
                    self.dfs(i + 1, chosen, &nb)?;
                }
                chosen.pop();
            }
        }
        Ok(())
    }
}

pub(crate) fn extreme_pair(points: &[Point], face: &[usize]) -> (usize, usize) {
    let a = face[0];
    let b = face[1];
    let d = diff(&points[b], &points[a]);
    let k = d.iter().position(|&x| x != 0).expect("distinct points");
    let key = |i: usize| Rational::new(points[i][k].into(), d[k].into());
    let lo = *face.iter().min_by(|&&x, &&y| key(x).cmp(&key(y))).unwrap();
    let hi = *face.iter().max_by(|&&x, &&y| key(x).cmp(&key(y))).unwrap();
    (lo.min(hi), lo.max(hi))
}

/// The mixed lower facets (sums of `n` edges) of a lifted tuple of `n`
/// supports, found without enumerating the other facets.
pub fn mixed_lower_facets_h(supports: &[Support], heights: &[Vec<Height>]) -> Result<Vec<MixedCell>> {
    let n = check_inputs(supports, heights)?;
    if supports.len() != n {
        return Err(Error::Dimension(format!(
            "mixed cells need exactly {n} supports, got {}",
            supports.len()
        )));
    }
    let mut search = CellSearch {
        n,
        supports,
        heights,
        nodes: 0,
        found: BTreeMap::new(),
    };
    search.dfs(0, &mut Vec::new(), &SpanBasis::new())?;
    let mut out: Vec<MixedCell> = search
        .found
        .into_iter()
        .map(|(faces, (v, edges))| {
            let m: Vec<Vec<BigInt>> = edges
                .iter()
                .zip(supports)
                .map(|(&(a, b), s)| {
                    diff(&s.points()[b], &s.points()[a])
                        .into_iter()
                        .map(BigInt::from)
                        .collect()
                })
                .collect();
            MixedCell {
                normal: primitive_normal(&v),
                v,
                edges,
                faces,
                volume: det_bareiss(&m).abs(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.faces.cmp(&b.faces)));
    Ok(out)
}

/// Volume of a mixed facet found by the general search.
pub fn facet_mixed_volume(supports: &[Support], f: &LowerFacet) -> BigInt {
    let m: Vec<Vec<BigInt>> = f
        .faces
        .iter()
        .zip(supports)
        .map(|(face, s)| {
            let (a, b) = extreme_pair(s.points(), face);
            diff(&s.points()[b], &s.points()[a])
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    det_bareiss(&m).abs()
}
