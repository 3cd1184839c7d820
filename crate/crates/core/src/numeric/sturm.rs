//! Exact real root counting and isolation with Sturm sequences.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::make_primitive;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Sturm sequence of the square-free part of a rational polynomial, stored
/// as primitive integer polynomials (positive multiples of the classical
/// sequence, so sign variations are unchanged).
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

fn degree(v: &[BigInt]) -> usize {
    v.len() - 1
}

/// Pseudo-remainder scaled by a positive power of `|lc(b)|`.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lc = b[db].clone();
    let lc_abs = lc.abs();
    let sgn = if lc.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        // r <- |lc| r - sgn * c x^(dr-db) b
        for x in r.iter_mut() {
            *x *= &lc_abs;
        }
        let f = &c * &sgn;
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &f * bj;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Sign of `f(n/d)` for integer coefficients and `d > 0`.
fn sign_at(f: &[BigInt], x: &Rational) -> Ordering {
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    // d^deg * f(n/d), by Horner on the homogenized form
    for c in f.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    acc.sign_ordering()
}

trait SignOrd {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn sign_at_infinity(f: &[BigInt], positive: bool) -> Ordering {
    let s = f.last().expect("nonzero").sign_ordering();
    if positive || degree(f) % 2 == 0 {
        s
    } else {
        s.reverse()
    }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut v = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

impl SturmSequence {
    pub fn new(f: &UniPoly<Rational>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let seq = Self::chain(f);
        let last = seq.last().expect("nonempty");
        if degree(last) == 0 {
            return Ok(SturmSequence { seq });
        }
        // the last element is gcd(f, f') up to a constant
        let g = UniPoly::new(last.iter().map(|c| Rational::from_integer(c.clone())).collect());
        let sf = f.div_rem(&g)?.0;
        Ok(SturmSequence { seq: Self::chain(&sf) })
    }

    fn chain(f: &UniPoly<Rational>) -> Vec<Vec<BigInt>> {
        let p0 = f.primitive_integer();
        let p1 = make_primitive(f.derivative().primitive_integer_or_empty());
        let mut seq = vec![p0];
        if !p1.is_empty() {
            seq.push(p1);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = positive_prem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigInt> = r.into_iter().map(|x| -x).collect();
            seq.push(content_reduce(neg));
        }
        seq
    }

    /// The square-free input polynomial as primitive integer coefficients.
    pub fn base(&self) -> &[BigInt] {
        &self.seq[0]
    }

    fn var_at(&self, x: Option<&Rational>, positive: bool) -> usize {
        match x {
            Some(x) => variations(self.seq.iter().map(|f| sign_at(f, x))),
            None => variations(self.seq.iter().map(|f| sign_at_infinity(f, positive))),
        }
    }

    /// Number of distinct real roots in `(a, b]`; `None` means `-∞` / `+∞`.
    pub fn count(&self, a: Option<&Rational>, b: Option<&Rational>) -> usize {
        let va = self.var_at(a, false);
        let vb = self.var_at(b, true);
        va.saturating_sub(vb)
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign_at(&self.seq[0], x)
    }
}

/// Divides by the positive content, keeping signs.
fn content_reduce(v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

impl UniPoly<Rational> {
    fn primitive_integer_or_empty(&self) -> Vec<BigInt> {
        if self.is_zero() {
            Vec::new()
        } else {
            self.primitive_integer()
        }
    }
}

/// Number of distinct real roots of `f` in `(a, b]`.
pub fn sturm_count(f: &UniPoly<Rational>, a: Option<&Rational>, b: Option<&Rational>) -> Result<usize> {
    Ok(SturmSequence::new(f)?.count(a, b))
}

/// Power of two bounding the absolute value of every root (Cauchy bound).
fn root_bound(f: &[BigInt]) -> Rational {
    let lc = f.last().expect("nonzero").abs();
    let m = f[..f.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    let b = Rational::one() + Rational::new(m, lc);
    let mut p = Rational::one();
    while p < b {
        p *= Rational::from_integer(2.into());
    }
    p
}

/// Disjoint half-open intervals `(lo, hi]`, each holding exactly one real
/// root of `f`, sorted increasingly. Roots are distinct (multiplicity is
/// ignored).
pub fn isolate_real_roots(f: &UniPoly<Rational>) -> Result<Vec<Interval>> {
    let s = SturmSequence::new(f)?;
    if degree(s.base()) == 0 {
        return Ok(Vec::new());
    }
    let b = root_bound(s.base());
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = s.count(Some(&lo), Some(&hi));
        match c {
            0 => {}
            1 => out.push(Interval::new(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Shrinks an isolating interval `(lo, hi]` of the square-free `f` until its
/// width is at most `width`. Returns a point interval when the root is hit.
pub fn refine_root(s: &SturmSequence, iv: &Interval, width: &Rational) -> Interval {
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let two = Rational::from_integer(2.into());
    let mut shi = s.sign_at(&hi);
    if shi == Ordering::Equal {
        return Interval::point(hi);
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        match s.sign_at(&mid) {
            Ordering::Equal => return Interval::point(mid),
            sm if sm == shi => {
                hi = mid;
                shi = sm;
            }
            _ => lo = mid,
        }
    }
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{from_roots, qpoly};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn counts_roots_of_product() {
        let f = from_roots(&[r(-3), r(1), r(1), r(2), Rational::new(5.into(), 2.into())]);
        assert_eq!(sturm_count(&f, None, None).unwrap(), 4);
        assert_eq!(sturm_count(&f, Some(&r(0)), None).unwrap(), 3);
        assert_eq!(sturm_count(&f, Some(&r(1)), Some(&r(2))).unwrap(), 1);
        assert_eq!(sturm_count(&f, Some(&r(0)), Some(&r(1))).unwrap(), 1);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(sturm_count(&qpoly(&[1, 0, 1]), None, None).unwrap(), 0);
        assert_eq!(sturm_count(&qpoly(&[5]), None, None).unwrap(), 0);
    }

    #[test]
    fn isolate_and_refine_sqrt_two() {
        let f = qpoly(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 2);
        let s = SturmSequence::new(&f).unwrap();
        let eps = Rational::new(1.into(), 1_000_000.into());
        let iv = refine_root(&s, &ivs[1], &eps);
        assert!(iv.width() <= eps);
        assert!(&iv.lo * &iv.lo <= r(2) && r(2) <= &iv.hi * &iv.hi);
    }
}
