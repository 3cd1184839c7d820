//! Dense expansion of small programs over the rationals.

use crate::error::{Error, Result};
use crate::numeric::{Rational, Ring, UniPoly};

use super::program::{slp_trace, Op, Slp, ONE, X};

/// Largest degree a program may be expanded to.
pub const MAX_EXPANDED_DEGREE: u64 = 1 << 10;

/// `UniPoly<Rational>` as a ring, for running programs symbolically.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense(pub UniPoly<Rational>);

impl Ring for Dense {
    fn zero_like(&self) -> Self {
        Dense(UniPoly::zero())
    }

    fn one_like(&self) -> Self {
        Dense(UniPoly::constant(Rational::from_integer(1.into())))
    }

    fn from_int_like(&self, v: &num_bigint::BigInt) -> Self {
        Dense(UniPoly::constant(Rational::from_integer(v.clone())))
    }

    fn plus(&self, other: &Self) -> Self {
        Dense(self.0.plus(&other.0))
    }

    fn minus(&self, other: &Self) -> Self {
        Dense(self.0.minus(&other.0))
    }

    fn times(&self, other: &Self) -> Self {
        Dense(self.0.times(&other.0))
    }

    fn negate(&self) -> Self {
        Dense(self.0.negate())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        let (q, r) = self.0.div_rem(&other.0)?;
        if !r.is_zero() {
            return Err(Error::Unsupported("inexact polynomial division".into()));
        }
        Ok(Dense(q))
    }
}

/// Upper bound on the degree of every register.
pub fn degree_bounds(prog: &Slp) -> Vec<u64> {
    let mut d: Vec<u64> = Vec::with_capacity(prog.len());
    for ins in &prog.instrs {
        let get = |r: i64, d: &Vec<u64>| match r {
            ONE => 0,
            X => 1,
            _ => d[r as usize - 1],
        };
        let (a, b) = (get(ins.a, &d), get(ins.b, &d));
        d.push(match ins.op {
            Op::Mul => a.saturating_add(b),
            _ => a.max(b),
        });
    }
    d
}

/// Output and derivative as dense polynomials.
pub fn expand(prog: &Slp) -> Result<(UniPoly<Rational>, UniPoly<Rational>)> {
    if let Some(&d) = degree_bounds(prog).last() {
        if d > MAX_EXPANDED_DEGREE {
            return Err(Error::Guardrail(format!(
                "degree bound {d} exceeds the expansion limit {MAX_EXPANDED_DEGREE}"
            )));
        }
    }
    let x = Dense(UniPoly::new(vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())]));
    match slp_trace(prog, &x, true).pop() {
        Some((v, d)) => Ok((v.0, d.expect("derivative requested").0)),
        None => Ok((x.0.clone(), x.one_like().0)),
    }
}
