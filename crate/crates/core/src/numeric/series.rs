use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ffield::{add_mod, inv_mod, mul_mod, sub_mod};
use super::local::{LocalCtx, LocalField, EXACT};
use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Truncated Laurent series in F_p((t)) with capped relative precision.
///
/// A nonzero value is `t^val * (c0 + c1 t + ...)` with `c0 != 0` and
/// `rel` known coefficients. Zeros store their absolute precision in `val`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    p: u64,
    cap: u32,
    val: i64,
    coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(ctx: LocalCtx) -> Self {
        Self::inexact_zero(ctx, EXACT)
    }

    /// `O(t^abs)`.
    pub fn inexact_zero(ctx: LocalCtx, abs: i64) -> Self {
        Series {
            p: ctx.p,
            cap: ctx.prec,
            val: abs,
            coeffs: Vec::new(),
        }
    }

    /// `t^val * (c0 + c1 t + ...)` known to absolute precision `abs`
    /// (`EXACT`: as many digits as given, capped).
    fn normalize(ctx: LocalCtx, val: i64, mut c: Vec<u64>, abs: i64) -> Self {
        if abs != EXACT {
            let width = (abs - val).max(0) as usize;
            c.truncate(width);
        }
        let lead = c.iter().position(|&x| x != 0);
        let Some(k) = lead else {
            return if abs == EXACT {
                Self::zero(ctx)
            } else {
                Self::inexact_zero(ctx, abs)
            };
        };
        let v = val + k as i64;
        let mut coeffs: Vec<u64> = c[k..].to_vec();
        let width = if abs == EXACT {
            ctx.prec as usize
        } else {
            ((abs - v) as usize).min(ctx.prec as usize)
        };
        coeffs.resize(width, 0);
        Series {
            p: ctx.p,
            cap: ctx.prec,
            val: v,
            coeffs,
        }
    }

    /// Exact polynomial in `t` (coefficients low degree first, reduced mod p).
    pub fn from_poly(ctx: LocalCtx, c: &[i64]) -> Self {
        let c = c.iter().map(|&x| super::ffield::reduce_i64(x, ctx.p)).collect();
        Self::normalize(ctx, 0, c, EXACT)
    }

    /// Known coefficients of the unit part.
    pub fn unit_coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn relative_precision(&self) -> u32 {
        self.coeffs.len() as u32
    }

    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.val == EXACT
    }

    /// Renders as `t^k*(c0+c1*t+...)+O(t^a)`.
    pub fn literal(&self) -> String {
        if self.coeffs.is_empty() {
            if self.val == EXACT {
                return "0".into();
            }
            return format!("O(t^{})", self.val);
        }
        let last = self.coeffs.iter().rposition(|&x| x != 0).unwrap_or(0);
        let terms: Vec<String> = self.coeffs[..=last]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        format!(
            "t^{}*({})+O(t^{})",
            self.val,
            terms.join("+"),
            self.val + self.coeffs.len() as i64
        )
    }

    /// Parses `t^k*(c0+c1*t+...)`, `t^k`, or an integer.
    pub fn parse(ctx: LocalCtx, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.split("+O(").next().unwrap_or("").to_string();
        let bad = || Error::Parse(format!("bad series literal {s:?}"));
        let (k, body) = match s.strip_prefix("t^") {
            Some(rest) => match rest.split_once('*') {
                Some((k, body)) => (k.parse::<i64>().map_err(|_| bad())?, body.to_string()),
                None => (rest.parse::<i64>().map_err(|_| bad())?, "1".to_string()),
            },
            None if s == "t" => (1, "1".to_string()),
            None => (0, s.clone()),
        };
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(&body)
            .to_string();
        let mut coeffs: Vec<i64> = Vec::new();
        for term in body.replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
            let (c, e) = if let Some((c, rest)) = term.split_once('*') {
                let e = match rest {
                    "t" => 1,
                    _ => rest
                        .strip_prefix("t^")
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(bad)?,
                };
                (c.parse::<i64>().map_err(|_| bad())?, e)
            } else if term == "t" {
                (1, 1)
            } else if let Some(e) = term.strip_prefix("t^") {
                (1, e.parse::<usize>().map_err(|_| bad())?)
            } else {
                (term.parse::<i64>().map_err(|_| bad())?, 0)
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += c;
        }
        Ok(Self::from_poly(ctx, &coeffs).shift(k))
    }

    fn ctx_of(&self) -> LocalCtx {
        LocalCtx {
            p: self.p,
            prec: self.cap,
        }
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Ring for Series {
    fn zero_like(&self) -> Self {
        Self::zero(self.ctx_of())
    }

    fn one_like(&self) -> Self {
        Self::from_poly(self.ctx_of(), &[1])
    }

    fn from_int_like(&self, v: &BigInt) -> Self {
        Self::from_int(self.ctx_of(), v)
    }

    fn plus(&self, other: &Self) -> Self {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let ctx = self.ctx_of();
        let abs = self.abs_precision().min(other.abs_precision());
        let m = self.val.min(other.val);
        if abs <= m {
            return Self::inexact_zero(ctx, abs);
        }
        let width = (abs - m) as usize;
        let mut c = vec![0u64; width];
        for x in [self, other] {
            if x.coeffs.is_empty() {
                continue;
            }
            let off = (x.val - m) as usize;
            for (i, &a) in x.coeffs.iter().enumerate() {
                if off + i < width {
                    c[off + i] = add_mod(c[off + i], a, self.p);
                }
            }
        }
        Self::normalize(ctx, m, c, abs)
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn times(&self, other: &Self) -> Self {
        let ctx = self.ctx_of();
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(ctx);
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::inexact_zero(ctx, self.val.saturating_add(other.val));
        }
        let rel = self.coeffs.len().min(other.coeffs.len());
        let p = self.p;
        let mut c = vec![0u64; rel];
        for (i, &a) in self.coeffs.iter().take(rel).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(rel - i).enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, p), p);
            }
        }
        Series {
            p,
            cap: self.cap,
            val: self.val + other.val,
            coeffs: c,
        }
    }

    fn negate(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|&a| sub_mod(0, a, self.p)).collect(),
            ..self.clone()
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        if other.coeffs.is_empty() {
            return if other.val == EXACT {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::Precision(format!("division by {}", other.literal())))
            };
        }
        let ctx = self.ctx_of();
        if self.coeffs.is_empty() {
            if self.val == EXACT {
                return Ok(Self::zero(ctx));
            }
            return Ok(Self::inexact_zero(ctx, self.val - other.val));
        }
        let p = self.p;
        let rel = self.coeffs.len().min(other.coeffs.len());
        let b = &other.coeffs;
        let inv0 = inv_mod(b[0], p);
        // long division of power series: q_k = (a_k - sum_{j<k} q_j b_{k-j}) / b_0
        let mut q = vec![0u64; rel];
        for k in 0..rel {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc = sub_mod(acc, mul_mod(q[j], b[k - j], p), p);
            }
            q[k] = mul_mod(acc, inv0, p);
        }
        Ok(Series {
            p,
            cap: self.cap,
            val: self.val - other.val,
            coeffs: q,
        })
    }
}

impl LocalField for Series {
    fn ctx(&self) -> LocalCtx {
        self.ctx_of()
    }

    fn from_int(ctx: LocalCtx, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(ctx.p)).to_u64().expect("residue fits");
        Self::normalize(ctx, 0, vec![r], EXACT)
    }

    fn from_rational_in(ctx: LocalCtx, q: &Rational) -> Result<Self> {
        let d = Self::from_int(ctx, q.denom());
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "{q} has denominator divisible by the characteristic {}",
                ctx.p
            )));
        }
        Self::from_int(ctx, q.numer()).try_div(&d)
    }

    fn uniformizer_pow(ctx: LocalCtx, k: i64) -> Self {
        Self::from_poly(ctx, &[1]).shift(k)
    }

    fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    fn abs_precision(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.val
        } else {
            self.val + self.coeffs.len() as i64
        }
    }

    fn residue(&self) -> Option<u64> {
        self.coeffs.first().copied()
    }

    fn shift(&self, k: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        Series {
            val: self.val + k,
            ..self.clone()
        }
    }

    fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if self.coeffs.is_empty() || abs <= self.val {
            return Self::inexact_zero(self.ctx_of(), abs);
        }
        let mut c = self.coeffs.clone();
        c.truncate((abs - self.val) as usize);
        Series { coeffs: c, ..self.clone() }
    }

    fn literal(&self) -> String {
        Series::literal(self)
    }
}
