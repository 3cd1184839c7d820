//! Straight-line programs over `{1, x}` with `+`, `-`, `*`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Ring;

/// Register holding the constant 1.
pub const ONE: i64 = -1;
/// Register holding the input `x`.
pub const X: i64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    #[serde(rename = "+")]
    Add,
    #[serde(rename = "-")]
    Sub,
    #[serde(rename = "*")]
    Mul,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
        }
    }
}

/// `C_i = a op b` with `a, b < i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instr {
    pub op: Op,
    pub a: i64,
    pub b: i64,
}

/// The output is the last register (`x` for the empty program). The
/// length is a witness for an upper bound on `τ` of the output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slp {
    pub instrs: Vec<Instr>,
}

impl Slp {
    pub fn new(instrs: Vec<Instr>) -> Result<Self> {
        for (idx, ins) in instrs.iter().enumerate() {
            let i = idx as i64 + 1;
            for r in [ins.a, ins.b] {
                if r < ONE || r >= i {
                    return Err(Error::InvalidInput(format!("C{i} refers to register {r}")));
                }
            }
        }
        Ok(Slp { instrs })
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn output(&self) -> i64 {
        self.instrs.len() as i64
    }

    /// The sub-program computing register `out`, renumbered.
    pub fn prune(&self, out: i64) -> Result<Slp> {
        if out < ONE || out > self.output() {
            return Err(Error::InvalidInput(format!("no register {out}")));
        }
        if out <= X {
            // x itself, or 1 = 1*1
            return Ok(if out == X {
                Slp::default()
            } else {
                Slp { instrs: vec![Instr { op: Op::Mul, a: ONE, b: ONE }] }
            });
        }
        let mut live = vec![false; out as usize + 1];
        live[out as usize] = true;
        for i in (1..=out as usize).rev() {
            if live[i] {
                let ins = self.instrs[i - 1];
                for r in [ins.a, ins.b] {
                    if r > 0 {
                        live[r as usize] = true;
                    }
                }
            }
        }
        let mut map = vec![0i64; out as usize + 1];
        let mut instrs = Vec::new();
        for i in 1..=out as usize {
            if live[i] {
                let ins = self.instrs[i - 1];
                let f = |r: i64| if r > 0 { map[r as usize] } else { r };
                instrs.push(Instr { op: ins.op, a: f(ins.a), b: f(ins.b) });
                map[i] = instrs.len() as i64;
            }
        }
        Ok(Slp { instrs })
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, ins) in self.instrs.iter().enumerate() {
            writeln!(f, "C{} = {} {} {}", idx + 1, ins.a, ins.op.symbol(), ins.b)?;
        }
        Ok(())
    }
}

impl FromStr for Slp {
    type Err = Error;

    /// One `Ci = j op k` per line; blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut instrs = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse(format!("line {}: {m}: {raw:?}", lineno + 1));
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let idx: usize = lhs
                .trim()
                .strip_prefix('C')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| bad("left side must be Ci"))?;
            if idx != instrs.len() + 1 {
                return Err(bad("registers must be numbered consecutively from C1"));
            }
            let toks: Vec<&str> = rhs.split_whitespace().collect();
            let [a, op, b] = toks[..] else {
                return Err(bad("expected 'j op k'"));
            };
            let op = match op {
                "+" => Op::Add,
                "-" => Op::Sub,
                "*" => Op::Mul,
                _ => return Err(bad("unknown operator")),
            };
            let a: i64 = a.parse().map_err(|_| bad("bad register"))?;
            let b: i64 = b.parse().map_err(|_| bad("bad register"))?;
            instrs.push(Instr { op, a, b });
        }
        Slp::new(instrs)
    }
}

/// Value and derivative of every register `1..=len`.
pub fn slp_trace<K: Ring>(prog: &Slp, x: &K, with_derivative: bool) -> Vec<(K, Option<K>)> {
    let one = x.one_like();
    let zero = x.zero_like();
    let mut regs: Vec<(K, Option<K>)> = Vec::with_capacity(prog.len());
    let base_one = (one.clone(), with_derivative.then(|| zero.clone()));
    let base_x = (x.clone(), with_derivative.then(|| one.clone()));
    for ins in &prog.instrs {
        let get = |r: i64, regs: &Vec<(K, Option<K>)>| -> (K, Option<K>) {
            match r {
                ONE => base_one.clone(),
                X => base_x.clone(),
                _ => regs[r as usize - 1].clone(),
            }
        };
        let (a, da) = get(ins.a, &regs);
        let (b, db) = get(ins.b, &regs);
        let v = match ins.op {
            Op::Add => (a.plus(&b), da.zip(db).map(|(p, q)| p.plus(&q))),
            Op::Sub => (a.minus(&b), da.zip(db).map(|(p, q)| p.minus(&q))),
            Op::Mul => {
                let d = da.zip(db).map(|(p, q)| p.times(&b).plus(&a.times(&q)));
                (a.times(&b), d)
            }
        };
        regs.push(v);
    }
    regs
}

/// Output value and, when asked, derivative.
pub fn slp_eval<K: Ring>(prog: &Slp, x: &K, with_derivative: bool) -> (K, Option<K>) {
    match slp_trace(prog, x, with_derivative).pop() {
        Some(v) => v,
        None => (x.clone(), with_derivative.then(|| x.one_like())),
    }
}

/// Appends instructions and hands back their registers.
#[derive(Debug, Default)]
pub struct SlpBuilder {
    instrs: Vec<Instr>,
}

impl SlpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, op: Op, a: i64, b: i64) -> i64 {
        self.instrs.push(Instr { op, a, b });
        self.instrs.len() as i64
    }

    pub fn add(&mut self, a: i64, b: i64) -> i64 {
        self.push(Op::Add, a, b)
    }

    pub fn sub(&mut self, a: i64, b: i64) -> i64 {
        self.push(Op::Sub, a, b)
    }

    pub fn mul(&mut self, a: i64, b: i64) -> i64 {
        self.push(Op::Mul, a, b)
    }

    /// `r^e` by left-to-right binary powering.
    pub fn pow(&mut self, r: i64, e: &BigInt) -> Result<i64> {
        if !e.is_positive() {
            return Err(Error::InvalidInput("exponent must be positive".into()));
        }
        let bits = e.to_str_radix(2);
        let mut acc = r;
        for bit in bits.chars().skip(1) {
            acc = self.mul(acc, acc);
            if bit == '1' {
                acc = self.mul(acc, r);
            }
        }
        Ok(acc)
    }

    /// A positive integer by double-and-add from 1; `1` itself is the
    /// reserved register.
    pub fn constant(&mut self, v: &BigInt) -> Result<i64> {
        if !v.is_positive() {
            return Err(Error::InvalidInput("constants must be positive".into()));
        }
        if v.is_one() {
            return Ok(ONE);
        }
        let bits = v.to_str_radix(2);
        let mut acc = ONE;
        for bit in bits.chars().skip(1) {
            acc = self.add(acc, acc);
            if bit == '1' {
                acc = self.add(acc, ONE);
            }
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn finish(self) -> Slp {
        Slp { instrs: self.instrs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn logistic_seed() {
        // x(1-x)
        let p: Slp = "C1 = -1 - 0\nC2 = 0 * 1\n".parse().unwrap();
        let (v, d) = slp_eval(&p, &q(3), true);
        assert_eq!(v, q(-6));
        assert_eq!(d, Some(q(-5)));
    }

    #[test]
    fn identity_has_length_zero() {
        let p: Slp = "".parse().unwrap();
        assert_eq!(p.len(), 0);
        assert_eq!(slp_eval(&p, &q(7), true), (q(7), Some(q(1))));
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let p: Slp = "C1 = 0 * 0\nC2 = 1 + -1 # x^2+1\n".parse().unwrap();
        assert_eq!(p.to_string().parse::<Slp>().unwrap(), p);
        assert!("C1 = 1 + 0".parse::<Slp>().is_err());
        assert!("C2 = 0 + 0".parse::<Slp>().is_err());
        assert!("C1 = 0 / 0".parse::<Slp>().is_err());
    }

    #[test]
    fn powers_of_two_are_logarithmic() {
        for i in [1u32, 5, 17, 64, 200] {
            let mut b = SlpBuilder::new();
            let two = b.constant(&BigInt::from(2)).unwrap();
            b.pow(two, &BigInt::from(i)).unwrap();
            assert!(b.len() <= 2 * 8 + 1);
            let p = b.finish();
            assert_eq!(slp_eval(&p, &q(0), false).0, Rational::from_integer(BigInt::one() << i));
        }
    }

    #[test]
    fn prune_keeps_value() {
        let p: Slp = "C1 = 0 * 0\nC2 = 1 + 0\nC3 = 1 * 1\nC4 = 2 - -1\n".parse().unwrap();
        let pr = p.prune(2).unwrap();
        assert_eq!(pr.len(), 2);
        assert_eq!(slp_eval(&pr, &q(5), false).0, q(30));
    }
}
