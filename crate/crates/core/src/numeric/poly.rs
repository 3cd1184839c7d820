use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients stored from degree 0 upward.
///
/// Leading coefficients that are zero (or indistinguishable from zero) are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Self::new(v)
    }

    /// `x - a`.
    pub fn linear_root(a: &T) -> Self {
        Self::new(vec![a.negate(), a.one_like()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    fn sample(&self, other: &Self) -> Option<T> {
        self.coeffs.first().or(other.coeffs.first()).cloned()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let Some(s) = self.sample(other) else {
            return Self::zero();
        };
        let z = s.zero_like();
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = other.coeffs.get(i).unwrap_or(&z);
                a.plus(b)
            })
            .collect();
        Self::new(out)
    }

    pub fn negate(&self) -> Self {
        Self::new(self.coeffs.iter().map(Ring::negate).collect())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.coeffs.first() {
            Some(c) => Self::constant(c.one_like()),
            None => return if e == 0 { panic!("0^0") } else { Self::zero() },
        };
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, x: &T) -> (T, T) {
        let mut v = x.zero_like();
        let mut d = x.zero_like();
        for c in self.coeffs.iter().rev() {
            d = d.times(x).plus(&v);
            v = v.times(x).plus(c);
        }
        (v, d)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.from_i64_like(i as i64)))
                .collect(),
        )
    }

    /// `f(x + a)` by repeated synthetic division.
    pub fn taylor_shift(&self, a: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].times(a);
                c[j] = c[j].plus(&t);
            }
        }
        Self::new(c)
    }

    /// `f(b * x)`.
    pub fn scale_variable(&self, b: &T) -> Self {
        let mut pw = b.one_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.times(&pw));
            pw = pw.times(b);
        }
        Self::new(out)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a polynomial whose leading coefficient is
    /// invertible.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![lc.zero_like(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].try_div(&lc)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].minus(&c.times(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Rational polynomial from integer coefficients (low degree first).
pub fn qpoly(coeffs: &[i64]) -> UniPoly<Rational> {
    UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
}

/// Product of `x - r` over the given rational roots.
pub fn from_roots(roots: &[Rational]) -> UniPoly<Rational> {
    roots.iter().fold(qpoly(&[1]), |acc, r| acc.times(&UniPoly::linear_root(r)))
}

impl UniPoly<Rational> {
    /// Exact gcd over Q, made monic. Runs a primitive pseudo-remainder
    /// sequence over Z to keep coefficients small.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            let a = if self.is_zero() { other } else { self };
            return match a.leading().cloned() {
                Some(lc) => a.scale(&(Rational::one() / lc)),
                None => a.clone(),
            };
        }
        let (mut a, mut b) = (self.primitive_integer(), other.primitive_integer());
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = make_primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        let lc = Rational::from_integer(a.last().expect("nonzero").clone());
        UniPoly::new(a.into_iter().map(|c| Rational::from_integer(c) / &lc).collect())
    }

    /// `f / gcd(f, f')`, which has the same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g)?.0)
    }

    /// Yun's square-free factorization: `(factor, multiplicity)` pairs.
    pub fn squarefree_factorization(&self) -> Result<Vec<(Self, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0)?.0;
        let c = d.div_rem(&a0)?.0;
        let mut dd = c.minus(&b.derivative());
        let mut m = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.div_rem(&a)?.0;
            let c = dd.div_rem(&a)?.0;
            dd = c.minus(&b.derivative());
            m += 1;
        }
        Ok(out)
    }

    /// Primitive integer polynomial with positive leading coefficient and
    /// the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        make_primitive(ints)
    }
}

/// `lc(b)^k a mod b` over Z, for `deg a >= deg b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &c * bj;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Divides out the content and makes the leading coefficient positive.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let neg = v.last().is_some_and(|c| c.is_negative());
    for c in v.iter_mut() {
        *c = &*c / &g;
        if neg {
            *c = -&*c;
        }
    }
    v
}
