use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::local::{LocalCtx, LocalField, EXACT};
use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Element of Q_p with capped relative precision.
///
/// A nonzero value is `p^val * unit` where `unit` is known modulo `p^rel`
/// and is prime to `p`. A zero carries its absolute precision in `val`
/// (`O(p^val)`), with `val == EXACT` for an exact zero.
#[derive(Clone, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    cap: u32,
    val: i64,
    unit: BigInt,
    rel: u32,
}

pub(crate) fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Strips factors of `p`, returning (count, cofactor). `n` must be nonzero.
pub(crate) fn split_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (k, n);
        }
        n = q;
        k += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl PAdic {
    pub fn zero(ctx: LocalCtx) -> Self {
        Self::inexact_zero(ctx, EXACT)
    }

    /// `O(p^abs)`.
    pub fn inexact_zero(ctx: LocalCtx, abs: i64) -> Self {
        PAdic {
            p: ctx.p,
            cap: ctx.prec,
            val: abs,
            unit: BigInt::zero(),
            rel: 0,
        }
    }

    /// Builds `p^val * n` known to absolute precision `abs` (`EXACT` means
    /// "as precise as the cap allows").
    fn normalize(ctx: LocalCtx, val: i64, n: BigInt, abs: i64) -> Self {
        let p = ctx.p;
        if abs != EXACT {
            if abs <= val {
                return Self::inexact_zero(ctx, abs);
            }
            let width = (abs - val).min(u32::MAX as i64) as u32;
            let m = big_pow(p, width);
            let n = n.mod_floor(&m);
            if n.is_zero() {
                return Self::inexact_zero(ctx, abs);
            }
            let (k, u) = split_p(&n, p);
            let v = val + k;
            let rel = ((abs - v) as u64).min(ctx.prec as u64) as u32;
            let unit = u.mod_floor(&big_pow(p, rel));
            PAdic {
                p,
                cap: ctx.prec,
                val: v,
                unit,
                rel,
            }
        } else {
            if n.is_zero() {
                return Self::zero(ctx);
            }
            let (k, u) = split_p(&n, p);
            let unit = u.mod_floor(&big_pow(p, ctx.prec));
            PAdic {
                p,
                cap: ctx.prec,
                val: val + k,
                unit,
                rel: ctx.prec,
            }
        }
    }

    pub fn from_integer(ctx: LocalCtx, n: &BigInt) -> Self {
        Self::normalize(ctx, 0, n.clone(), EXACT)
    }

    pub fn from_rational(ctx: LocalCtx, q: &Rational) -> Self {
        if q.numer().is_zero() {
            return Self::zero(ctx);
        }
        let (vn, un) = split_p(q.numer(), ctx.p);
        let (vd, ud) = split_p(q.denom(), ctx.p);
        let m = big_pow(ctx.p, ctx.prec);
        let inv = mod_inverse(&ud, &m).expect("cofactor is prime to p");
        Self::normalize(ctx, vn - vd, un * inv, EXACT)
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn relative_precision(&self) -> u32 {
        self.rel
    }

    /// Integer representative of the value modulo `p^abs` when the value is
    /// integral; `None` for negative valuation.
    pub fn to_integer_mod(&self, abs: u32) -> Option<BigInt> {
        if self.rel == 0 {
            return Some(BigInt::zero());
        }
        if self.val < 0 {
            return None;
        }
        let m = big_pow(self.p, abs);
        if self.val >= abs as i64 {
            return Some(BigInt::zero());
        }
        Some((&self.unit * big_pow(self.p, self.val as u32)).mod_floor(&m))
    }

    /// Renders as the `p^k*u` literal, with a `+O(p^a)` suffix.
    pub fn literal(&self) -> String {
        if self.rel == 0 {
            if self.val == EXACT {
                return "0".into();
            }
            return format!("O({}^{})", self.p, self.val);
        }
        format!("{}^{}*{}+O({}^{})", self.p, self.val, self.unit, self.p, self.val + self.rel as i64)
    }

    /// Parses `p^k*u`, `u`, or `num/den`, with an optional `+O(p^a)`
    /// suffix as printed by [`PAdic::literal`].
    pub fn parse(ctx: LocalCtx, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(i) = s.find("O(") {
            let abs = Self::parse_big_o(ctx, &s[i..])?;
            let head = s[..i].strip_suffix('+').unwrap_or(&s[..i]);
            if head.is_empty() {
                return Ok(Self::inexact_zero(ctx, abs));
            }
            return Ok(LocalField::truncate_abs(&Self::parse(ctx, head)?, abs));
        }
        let s = s.as_str();
        if let Some((head, tail)) = s.split_once('*') {
            let (base, exp) = head
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("bad p-adic literal {s:?}")))?;
            let base: u64 = base
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad p-adic base in {s:?}")))?;
            if base != ctx.p {
                return Err(Error::Parse(format!("literal base {base} differs from p = {}", ctx.p)));
            }
            let k: i64 = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            let u = super::parse_rational(tail)?;
            let x = Self::from_rational(ctx, &u);
            return Ok(Ring::times(&x, &Self::uniformizer_pow(ctx, k)));
        }
        Ok(Self::from_rational(ctx, &super::parse_rational(s)?))
    }
}

impl PAdic {
    /// `O(p^a)` to `a`.
    fn parse_big_o(ctx: LocalCtx, s: &str) -> Result<i64> {
        let bad = || Error::Parse(format!("bad precision suffix {s:?}"));
        let inner = s.strip_prefix("O(").and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (base, exp) = inner.split_once('^').unwrap_or((inner, "1"));
        if base.parse::<u64>().map_err(|_| bad())? != ctx.p {
            return Err(bad());
        }
        exp.parse::<i64>().map_err(|_| bad())
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Ring for PAdic {
    fn zero_like(&self) -> Self {
        Self::zero(self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::from_integer(self.ctx(), &BigInt::one())
    }

    fn from_int_like(&self, v: &BigInt) -> Self {
        Self::from_integer(self.ctx(), v)
    }

    fn plus(&self, other: &Self) -> Self {
        if self.val == EXACT && self.rel == 0 {
            return other.clone();
        }
        if other.val == EXACT && other.rel == 0 {
            return self.clone();
        }
        let ctx = self.ctx();
        let abs = self.abs_precision().min(other.abs_precision());
        let m = self.val.min(other.val);
        if abs <= m {
            return Self::inexact_zero(ctx, abs);
        }
        let mut n = BigInt::zero();
        for x in [self, other] {
            if x.rel > 0 && x.val < abs {
                n += &x.unit * big_pow(self.p, (x.val - m) as u32);
            }
        }
        Self::normalize(ctx, m, n, abs)
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn times(&self, other: &Self) -> Self {
        let ctx = self.ctx();
        let a_exact0 = self.val == EXACT && self.rel == 0;
        let b_exact0 = other.val == EXACT && other.rel == 0;
        if a_exact0 || b_exact0 {
            return Self::zero(ctx);
        }
        if self.rel == 0 || other.rel == 0 {
            // at least one inexact zero: result is O(p^(val_a + val_b))
            return Self::inexact_zero(ctx, self.val.saturating_add(other.val));
        }
        let rel = self.rel.min(other.rel);
        let unit = (&self.unit * &other.unit).mod_floor(&big_pow(self.p, rel));
        PAdic {
            p: self.p,
            cap: self.cap,
            val: self.val + other.val,
            unit,
            rel,
        }
    }

    fn negate(&self) -> Self {
        if self.rel == 0 {
            return self.clone();
        }
        let m = big_pow(self.p, self.rel);
        PAdic {
            unit: (&m - &self.unit).mod_floor(&m),
            ..self.clone()
        }
    }

    fn is_zero(&self) -> bool {
        self.rel == 0
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        if other.rel == 0 {
            return if other.val == EXACT {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::Precision(format!("division by {}", other.literal())))
            };
        }
        let ctx = self.ctx();
        if self.rel == 0 {
            if self.val == EXACT {
                return Ok(Self::zero(ctx));
            }
            return Ok(Self::inexact_zero(ctx, self.val - other.val));
        }
        let rel = self.rel.min(other.rel);
        let m = big_pow(self.p, rel);
        let inv = mod_inverse(&other.unit, &m).expect("unit is invertible");
        Ok(PAdic {
            p: self.p,
            cap: self.cap,
            val: self.val - other.val,
            unit: (&self.unit * inv).mod_floor(&m),
            rel,
        })
    }
}

impl LocalField for PAdic {
    fn ctx(&self) -> LocalCtx {
        LocalCtx {
            p: self.p,
            prec: self.cap,
        }
    }

    fn from_int(ctx: LocalCtx, v: &BigInt) -> Self {
        Self::from_integer(ctx, v)
    }

    fn from_rational_in(ctx: LocalCtx, q: &Rational) -> Result<Self> {
        Ok(Self::from_rational(ctx, q))
    }

    fn uniformizer_pow(ctx: LocalCtx, k: i64) -> Self {
        PAdic {
            p: ctx.p,
            cap: ctx.prec,
            val: k,
            unit: BigInt::one(),
            rel: ctx.prec,
        }
    }

    fn valuation(&self) -> Option<i64> {
        (self.rel > 0).then_some(self.val)
    }

    fn abs_precision(&self) -> i64 {
        if self.rel == 0 {
            self.val
        } else {
            self.val + self.rel as i64
        }
    }

    fn residue(&self) -> Option<u64> {
        if self.rel == 0 {
            return None;
        }
        Some(
            self.unit
                .mod_floor(&BigInt::from(self.p))
                .to_u64()
                .expect("residue fits"),
        )
    }

    fn shift(&self, k: i64) -> Self {
        if self.rel == 0 {
            if self.val == EXACT {
                return self.clone();
            }
            return PAdic {
                val: self.val + k,
                ..self.clone()
            };
        }
        PAdic {
            val: self.val + k,
            ..self.clone()
        }
    }

    fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        let ctx = self.ctx();
        if self.rel == 0 || abs <= self.val {
            return Self::inexact_zero(ctx, abs);
        }
        let rel = (abs - self.val) as u32;
        PAdic {
            unit: self.unit.mod_floor(&big_pow(self.p, rel)),
            rel,
            ..self.clone()
        }
    }

    fn literal(&self) -> String {
        PAdic::literal(self)
    }
}
