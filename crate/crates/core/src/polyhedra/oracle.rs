//! Mixed volume by inclusion-exclusion over sub-sums. Shares no code with
//! the lifting-based engine apart from the determinant.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::linalg::det_bareiss;
use super::support::{Point, Support};
use crate::error::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 4;
pub const ORACLE_MAX_POINTS: usize = 4096;

fn orient(facet: &[&Point], q_scaled: &[i64], scale: i64) -> BigInt {
    // det[f_1 - f_0, ..., f_{n-1} - f_0, q - scale·f_0]
    let f0 = facet[0];
    let mut rows: Vec<Vec<BigInt>> = facet[1..]
        .iter()
        .map(|f| f.iter().zip(f0).map(|(a, b)| BigInt::from(scale * (a - b))).collect())
        .collect();
    rows.push(q_scaled.iter().zip(f0).map(|(a, b)| BigInt::from(a - scale * b)).collect());
    det_bareiss(&rows)
}

fn simplex_volume(pts: &[&Point]) -> BigInt {
    let p0 = pts[0];
    let rows: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    det_bareiss(&rows).abs()
}

/// `n!·Vol(conv(points))` by a placing triangulation.
pub fn normalized_volume(n: usize, points: &[Point]) -> BigInt {
    let mut uniq: Vec<Point> = points.to_vec();
    uniq.sort();
    uniq.dedup();
    if n == 0 || uniq.is_empty() {
        return BigInt::zero();
    }
    // initial simplex
    let mut simplex = vec![0usize];
    let mut basis = super::linalg::SpanBasis::new();
    for (i, p) in uniq.iter().enumerate().skip(1) {
        let d: Vec<i64> = p.iter().zip(&uniq[0]).map(|(a, b)| a - b).collect();
        if basis.try_add(&super::linalg::to_rational_vec(&d)) {
            simplex.push(i);
            if simplex.len() == n + 1 {
                break;
            }
        }
    }
    if simplex.len() < n + 1 {
        return BigInt::zero();
    }
    let scale = (n + 1) as i64;
    let centroid: Vec<i64> = (0..n).map(|c| simplex.iter().map(|&i| uniq[i][c]).sum()).collect();
    let mut volume = simplex_volume(&simplex.iter().map(|&i| &uniq[i]).collect::<Vec<_>>());

    // boundary facets as sorted index lists with the sign of the centroid side
    let mut facets: Vec<(Vec<usize>, bool)> = Vec::new();
    let make = |idx: Vec<usize>, pts: &[Point]| -> (Vec<usize>, bool) {
        let refs: Vec<&Point> = idx.iter().map(|&i| &pts[i]).collect();
        let s = orient(&refs, &centroid, scale);
        debug_assert!(!s.is_zero());
        (idx, s.is_positive())
    };
    for skip in 0..=n {
        let mut idx: Vec<usize> = simplex.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &i)| i).collect();
        idx.sort();
        facets.push(make(idx, &uniq));
    }
    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for q in 0..uniq.len() {
        if in_simplex.contains(&q) {
            continue;
        }
        let qv: Vec<i64> = uniq[q].iter().map(|x| x * scale).collect();
        let mut visible = Vec::new();
        let mut kept = Vec::new();
        for (idx, side) in facets.drain(..) {
            let refs: Vec<&Point> = idx.iter().map(|&i| &uniq[i]).collect();
            let s = orient(&refs, &qv, scale);
            if !s.is_zero() && s.is_positive() != side {
                visible.push(idx);
            } else {
                kept.push((idx, side));
            }
        }
        facets = kept;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &visible {
            let mut refs: Vec<&Point> = f.iter().map(|&i| &uniq[i]).collect();
            refs.push(&uniq[q]);
            volume += simplex_volume(&refs);
            for skip in 0..f.len() {
                let r: Vec<usize> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &i)| i).collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut r in horizon {
            r.push(q);
            r.sort();
            facets.push(make(r, &uniq));
        }
    }
    volume
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn minkowski(n: usize, parts: &[&Support]) -> Vec<Point> {
    let mut acc: BTreeSet<Point> = BTreeSet::new();
    acc.insert(vec![0; n]);
    for s in parts {
        let mut next = BTreeSet::new();
        for a in &acc {
            for p in s.points() {
                next.insert(a.iter().zip(p).map(|(x, y)| x + y).collect());
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

/// `Σ_S (-1)^{n-|S|} Vol(Σ_{i∈S} Q_i)` with Euclidean volume, so that
/// `M(Q,…,Q) = n!·Vol(Q)`.
pub fn mixed_volume_polarization_oracle(supports: &[Support]) -> Result<BigInt> {
    let n = supports.first().map(|s| s.dim()).ok_or_else(|| Error::InvalidInput("no supports".into()))?;
    if supports.len() != n || supports.iter().any(|s| s.dim() != n) {
        return Err(Error::Dimension(format!("{} supports in dimension {n}", supports.len())));
    }
    if n > ORACLE_MAX_DIM {
        return Err(Error::Guardrail(format!("polarization oracle limited to n <= {ORACLE_MAX_DIM}")));
    }
    let total: usize = supports.iter().map(|s| s.len()).product();
    if total > ORACLE_MAX_POINTS {
        return Err(Error::Guardrail(format!("Minkowski sum has up to {total} points")));
    }
    let mut sum = BigInt::zero();
    for mask in 1u32..(1 << n) {
        let parts: Vec<&Support> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &supports[i]).collect();
        let v = normalized_volume(n, &minkowski(n, &parts));
        if (n - parts.len()) % 2 == 0 {
            sum += v;
        } else {
            sum -= v;
        }
    }
    let (q, r) = sum.div_rem(&factorial(n));
    debug_assert!(r.is_zero());
    Ok(q)
}
