use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::{det_bareiss, nullspace, primitive_integer_vector, to_rational_vec};
use super::mixed::lower_facets;
use super::support::{affine_dim, LiftedSupport, Support};
use crate::error::{Error, Result};
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub support: Support,
    /// Point indices of each simplex, increasing; simplices sorted.
    pub simplices: Vec<Vec<usize>>,
    /// Lifting values as `num/den` strings, when the triangulation came
    /// from a lifting.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifting: Option<Vec<String>>,
}

impl Triangulation {
    /// `n!·Vol` of each simplex.
    pub fn normalized_volumes(&self) -> Vec<BigInt> {
        self.simplices.iter().map(|s| simplex_normalized_volume(&self.support, s)).collect()
    }

    pub fn total_normalized_volume(&self) -> BigInt {
        self.normalized_volumes().into_iter().sum()
    }

    /// Unordered edges of all simplices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in &self.simplices {
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    out.push((s[i], s[j]));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

pub fn simplex_normalized_volume(support: &Support, simplex: &[usize]) -> BigInt {
    let pts = support.points();
    let p0 = &pts[simplex[0]];
    let rows: Vec<Vec<BigInt>> = simplex[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(p0).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    det_bareiss(&rows).abs()
}

/// Triangulation induced by a lifting: the projected lower facets of the
/// lifted support, each required to be a simplex.
pub fn coherent_triangulation(lifted: &LiftedSupport) -> Result<Triangulation> {
    let n = lifted.support.dim();
    let facets = lower_facets(std::slice::from_ref(lifted))?;
    let mut simplices = Vec::with_capacity(facets.len());
    for f in facets {
        let face = f.faces.into_iter().next().unwrap_or_default();
        if face.len() != n + 1 {
            return Err(Error::NonSimplicialCell(face));
        }
        simplices.push(face);
    }
    simplices.sort();
    Ok(Triangulation {
        support: lifted.support.clone(),
        simplices,
        lifting: Some(lifted.lifting.iter().map(crate::numeric::format_rational).collect()),
    })
}

fn homogenized(support: &Support) -> Vec<Vec<Rational>> {
    let n = support.dim();
    let mut rows = vec![vec![Rational::from_integer(1.into()); support.len()]];
    for c in 0..n {
        rows.push(to_rational_vec(&support.points().iter().map(|p| p[c]).collect::<Vec<_>>()));
    }
    rows
}

/// The affine relation `Σ b_i = 0`, `Σ b_i a_i = 0` of a circuit, primitive
/// and with its first nonzero entry negative.
pub fn circuit_relation(support: &Support) -> Result<Vec<BigInt>> {
    let n = support.dim();
    if support.len() != n + 2 {
        return Err(Error::NotCircuit(format!("{} points in dimension {n}", support.len())));
    }
    let all: Vec<usize> = (0..support.len()).collect();
    if affine_dim(support.points(), &all) != n {
        return Err(Error::NotCircuit("points do not affinely span R^n".into()));
    }
    let ker = nullspace(&homogenized(support), support.len());
    if ker.len() != 1 {
        return Err(Error::NotCircuit(format!("relation space has dimension {}", ker.len())));
    }
    let mut b = primitive_integer_vector(&ker[0]);
    if b.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()) {
        b.iter_mut().for_each(|x| *x = -x.clone());
    }
    Ok(b)
}

/// One of the two triangulations of a circuit: the simplices `Q(i)`
/// (all points but `i`) for the `i` with `b_i > 0` (`positive`) or
/// `b_i < 0`.
pub fn circuit_triangulation(support: &Support, b: &[BigInt], positive: bool) -> Result<Triangulation> {
    let relation = circuit_relation(support)?;
    if b.len() != relation.len() || b.iter().all(|x| x.is_zero()) {
        return Err(Error::NotCircuit("null vector has the wrong shape".into()));
    }
    // b must be a multiple of the relation
    let rows = homogenized(support);
    for row in &rows {
        let s: Rational = row.iter().zip(b).map(|(a, x)| a * Rational::from_integer(x.clone())).sum();
        if !s.is_zero() {
            return Err(Error::NotCircuit("b is not an affine relation of the points".into()));
        }
    }
    let mut simplices: Vec<Vec<usize>> = (0..b.len())
        .filter(|&i| if positive { b[i].is_positive() } else { b[i].is_negative() })
        .map(|i| (0..b.len()).filter(|&j| j != i).collect())
        .collect();
    simplices.sort();
    Ok(Triangulation {
        support: support.clone(),
        simplices,
        lifting: None,
    })
}
