use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Minimal commutative-ring interface shared by every coefficient domain.
///
/// Constructors take `&self` so that domains carrying a context (prime,
/// precision) can build constants with the same context.
pub trait Ring: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, v: &BigInt) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    /// True for exact zeros and, in truncated domains, for values that are
    /// indistinguishable from zero at the known precision.
    fn is_zero(&self) -> bool;

    fn try_div(&self, other: &Self) -> Result<Self>;

    fn from_i64_like(&self, v: i64) -> Self {
        self.from_int_like(&BigInt::from(v))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents through `try_div`.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            self.one_like().try_div(&self.pow(e.unsigned_abs()))
        }
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / other)
        }
    }
}

/// Parses `"num/den"`, `"num"`, or a decimal-free integer literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"num/den"` rendering (integers render without `/1`).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Floor of log2 |q| for nonzero q, used to bracket real roots.
pub fn log2_floor(q: &Rational) -> i64 {
    let n = q.numer().abs();
    let d = q.denom().clone();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // adjust so that 2^e <= |q| < 2^(e+1)
    loop {
        let lo = pow2(e);
        if Rational::new(n.clone(), d.clone()) < lo {
            e -= 1;
            continue;
        }
        if Rational::new(n.clone(), d.clone()) >= pow2(e + 1) {
            e += 1;
            continue;
        }
        return e;
    }
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}
