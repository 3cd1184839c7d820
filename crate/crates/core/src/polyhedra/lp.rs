//! Exact feasibility tests for systems of linear inequalities.

use num_traits::{One, Signed, Zero};

use super::height::Lin;
use crate::numeric::Rational;

/// `coeffs · w >= rhs`.
#[derive(Debug, Clone)]
pub struct Row<H> {
    pub coeffs: Vec<Rational>,
    pub rhs: H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    /// Some `w` satisfies every row.
    Feasible,
    /// Some `w` satisfies every row strictly.
    Strict,
}

/// Decides whether the inequalities in `k` free variables can be satisfied
/// (strictly, for `Want::Strict`).
///
/// Maximizes `σ` subject to `c_j·w - σ >= r_j`, `σ <= 1` with a dense
/// simplex over Q using Bland's rule; the shift `σ = s0 + σ'` makes the
/// origin a feasible start, so no phase I is needed.
pub fn feasible<H: Lin>(rows: &[Row<H>], k: usize, want: Want) -> bool {
    if rows.is_empty() {
        return true;
    }
    let m = rows.len();
    // s0 = min(0, min_j(-r_j))
    let mut s0 = H::origin();
    for r in rows {
        let neg = H::origin().sub(&r.rhs);
        if neg < s0 {
            s0 = neg;
        }
    }
    let target = H::origin().sub(&s0);
    let reached = |val: &H| match want {
        Want::Feasible => *val >= target,
        Want::Strict => *val > target,
    };
    if reached(&H::origin()) {
        return true;
    }
    // columns: w+ (k), w- (k), σ' (1), slacks (m + 1)
    let ncols = 2 * k + 1 + m + 1;
    let sigma = 2 * k;
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    let mut b: Vec<H> = Vec::with_capacity(m + 1);
    for (j, r) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols];
        for (i, c) in r.coeffs.iter().enumerate() {
            row[i] = -c.clone();
            row[k + i] = c.clone();
        }
        row[sigma] = Rational::one();
        row[sigma + 1 + j] = Rational::one();
        a.push(row);
        b.push(H::origin().sub(&r.rhs).sub(&s0));
    }
    let mut cap = vec![Rational::zero(); ncols];
    cap[sigma] = Rational::one();
    cap[sigma + 1 + m] = Rational::one();
    a.push(cap);
    b.push(H::from_rational(&Rational::one()).sub(&s0));

    let mut basis: Vec<usize> = (0..=m).map(|j| sigma + 1 + j).collect();
    let mut obj = vec![Rational::zero(); ncols];
    obj[sigma] = -Rational::one();
    let mut val = H::origin();

    loop {
        let Some(e) = (0..ncols).find(|&j| obj[j].is_negative()) else {
            return reached(&val);
        };
        let mut leave: Option<(usize, H)> = None;
        for i in 0..=m {
            if !a[i][e].is_positive() {
                continue;
            }
            let ratio = b[i].scale(&(Rational::one() / &a[i][e]));
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (l, _) = leave.expect("objective is bounded by the cap row");
        let inv = Rational::one() / &a[l][e];
        for x in a[l].iter_mut() {
            *x *= &inv;
        }
        b[l] = b[l].scale(&inv);
        let pivot_row = a[l].clone();
        let pivot_rhs = b[l].clone();
        for i in 0..=m {
            if i != l && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                b[i] = b[i].sub(&pivot_rhs.scale(&f));
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for (x, y) in obj.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            val = val.sub(&pivot_rhs.scale(&f));
        }
        basis[l] = e;
        if reached(&val) {
            return true;
        }
    }
}
