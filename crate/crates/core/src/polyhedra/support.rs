use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::height::Height;
use super::linalg::{rank, to_rational_vec};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational, Rational};

pub type Point = Vec<i64>;

/// Finite set of exponent vectors in Z^n, in a fixed order without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Support {
    n: usize,
    points: Vec<Point>,
}

impl Support {
    pub fn new(n: usize, points: Vec<Point>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.len() != n {
                return Err(Error::Dimension(format!("point {p:?} is not in Z^{n}")));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidInput(format!("duplicate point {p:?}")));
            }
        }
        Ok(Support { n, points })
    }

    /// Like `new` but silently drops repeated points.
    pub fn dedup(n: usize, points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::new();
        let pts = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        Self::new(n, pts)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Dimension of the convex hull.
    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.points, &(0..self.points.len()).collect::<Vec<_>>())
    }
}

/// Affine dimension of the selected points.
pub fn affine_dim(points: &[Point], idx: &[usize]) -> usize {
    let Some(&first) = idx.first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = idx[1..]
        .iter()
        .map(|&i| {
            let d: Vec<i64> = points[i].iter().zip(&points[first]).map(|(a, b)| a - b).collect();
            to_rational_vec(&d)
        })
        .collect();
    rank(&rows)
}

/// A support with one lifting value per point.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSupport {
    pub support: Support,
    pub lifting: Vec<Rational>,
}

impl LiftedSupport {
    pub fn new(support: Support, lifting: Vec<Rational>) -> Result<Self> {
        if lifting.len() != support.len() {
            return Err(Error::InvalidInput(format!(
                "{} lifting values for {} points",
                lifting.len(),
                support.len()
            )));
        }
        Ok(LiftedSupport { support, lifting })
    }

    pub fn flat(support: Support) -> Self {
        let lifting = vec![Rational::from_integer(0.into()); support.len()];
        LiftedSupport { support, lifting }
    }

    pub fn from_ints(n: usize, points: &[&[i64]], lifts: &[i64]) -> Result<Self> {
        let s = Support::new(n, points.iter().map(|p| p.to_vec()).collect())?;
        Self::new(s, lifts.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn heights(&self) -> Vec<Height> {
        self.lifting.iter().map(|q| Height::exact(q.clone())).collect()
    }
}

/// `{"n": int, "supports": [[[ints]]], "liftings": [["num/den"]]}`; the
/// liftings may be omitted (flat).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftedInput {
    pub n: usize,
    pub supports: Vec<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub liftings: Option<Vec<Vec<String>>>,
}

impl LiftedInput {
    pub fn to_lifted(&self) -> Result<Vec<LiftedSupport>> {
        if let Some(l) = &self.liftings {
            if l.len() != self.supports.len() {
                return Err(Error::InvalidInput("one lifting list per support required".into()));
            }
        }
        self.supports
            .iter()
            .enumerate()
            .map(|(i, pts)| {
                let s = Support::new(self.n, pts.clone())?;
                match &self.liftings {
                    Some(l) => {
                        let vals = l[i].iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()?;
                        LiftedSupport::new(s, vals)
                    }
                    None => Ok(LiftedSupport::flat(s)),
                }
            })
            .collect()
    }

    pub fn from_lifted(lifted: &[LiftedSupport]) -> Self {
        LiftedInput {
            n: lifted.first().map_or(0, |l| l.support.dim()),
            supports: lifted.iter().map(|l| l.support.points().to_vec()).collect(),
            liftings: Some(
                lifted
                    .iter()
                    .map(|l| l.lifting.iter().map(format_rational).collect())
                    .collect(),
            ),
        }
    }
}
