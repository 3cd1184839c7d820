//! Exact linear algebra over Z and Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::height::Lin;
use crate::numeric::Rational;

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Incrementally built row-echelon basis of a subspace of Q^n.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current span.
    pub fn try_add(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[p];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep earlier rows reduced at the new pivot
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut b = SpanBasis::new();
    for r in rows {
        b.try_add(r);
    }
    b.rank()
}

/// Solution set `{ x0 + K y }` of `A x = b`.
#[derive(Debug, Clone)]
pub struct AffineSolution<H> {
    pub particular: Vec<H>,
    /// Kernel basis vectors, each of length `n`.
    pub kernel: Vec<Vec<Rational>>,
}

/// Solves `A x = b` over Q with right-hand side in any ordered Q-space.
/// Returns `None` when inconsistent.
pub fn solve_affine<H: Lin>(a: &[Vec<Rational>], b: &[H], n: usize) -> Option<AffineSolution<H>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut rhs: Vec<H> = b.to_vec();
    let rows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows {
            break;
        }
        let Some(s) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, s);
        rhs.swap(r, s);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] = rhs[r].scale(&inv);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
                rhs[i] = rhs[i].sub(&rhs[r].scale(&f));
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| *x != H::origin()) {
        return None;
    }
    let mut particular = vec![H::origin(); n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[i].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

pub fn nullspace(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let zeros = vec![Rational::zero(); a.len()];
    solve_affine(a, &zeros, n).expect("homogeneous system").kernel
}

/// Scales a rational vector to a primitive integer vector of the same
/// direction (the zero vector stays zero).
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Smith normal form `U M V = D` with `U`, `V` unimodular and `D` diagonal
/// with `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    fn row_op(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        // a[dst] -= q * a[src]
        let s = a[src].clone();
        for (x, y) in a[dst].iter_mut().zip(&s) {
            *x -= q * y;
        }
    }
    fn col_op(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        for r in a.iter_mut() {
            let t = q * &r[src];
            r[dst] -= t;
        }
    }
    fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
    }

    let mut k = 0;
    while k < rows.min(cols) {
        // choose the smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        a.swap(k, bi);
        u.swap(k, bi);
        swap_cols(&mut a, k, bj);
        swap_cols(&mut v, k, bj);
        let mut clean = true;
        for i in k + 1..rows {
            if !a[i][k].is_zero() {
                let q = a[i][k].div_floor(&a[k][k]);
                row_op(&mut a, i, k, &q);
                row_op(&mut u, i, k, &q);
                if !a[i][k].is_zero() {
                    clean = false;
                }
            }
        }
        for j in k + 1..cols {
            if !a[k][j].is_zero() {
                let q = a[k][j].div_floor(&a[k][k]);
                col_op(&mut a, j, k, &q);
                col_op(&mut v, j, k, &q);
                if !a[k][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the trailing block by the pivot
        let bad = (k + 1..rows).find_map(|i| {
            (k + 1..cols)
                .find(|&j| !(&a[i][j] % &a[k][k]).is_zero())
                .map(|_| i)
        });
        if let Some(i) = bad {
            let one = -BigInt::one();
            row_op(&mut a, k, i, &one);
            row_op(&mut u, k, i, &one);
            continue;
        }
        if a[k][k].is_negative() {
            for x in a[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
        k += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Smith { u, v, diagonal }
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = big(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 20) + 1(1*-2 - 0) = -52 - 2
        assert_eq!(det_bareiss(&m), BigInt::from(-54));
        assert_eq!(det_bareiss(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn affine_solution_and_kernel() {
        let a = vec![to_rational_vec(&[1, 1, 0]), to_rational_vec(&[0, 1, 1])];
        let b = to_rational_vec(&[2, 3]);
        let s = solve_affine(&a, &b, 3).unwrap();
        assert_eq!(s.kernel.len(), 1);
        let chk = |x: &[Rational]| {
            a.iter()
                .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>())
                .collect::<Vec<_>>()
        };
        assert_eq!(chk(&s.particular), b);
        assert!(chk(&s.kernel[0]).iter().all(|x| x.is_zero()));
        let bad = vec![to_rational_vec(&[1, 1]), to_rational_vec(&[2, 2])];
        assert!(solve_affine(&bad, &to_rational_vec(&[1, 3]), 2).is_none());
    }

    #[test]
    fn smith_form_is_consistent() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
        for (i, r) in d.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        assert_eq!(det_bareiss(&s.u).abs(), BigInt::one());
        assert_eq!(det_bareiss(&s.v).abs(), BigInt::one());
    }
}
