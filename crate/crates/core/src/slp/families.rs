//! The logistic family `h_n(x) - x` and the multi-prime family `h_{n,k}`.

use num_bigint::BigInt;
use serde::Serialize;

use super::program::{Slp, SlpBuilder, ONE, X};
use crate::error::{Error, Result};
use crate::numeric::ffield::first_primes;

/// `h_n(x) - x` with `h_1 = 4x(1-x)` and `h_{m+1} = 4h_m(1-h_m)`.
/// Length `4n + 1`.
pub fn gen_logistic(n: usize) -> Result<Slp> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let mut b = SlpBuilder::new();
    let mut h = X;
    for _ in 0..n {
        let t = b.sub(ONE, h);
        let u = b.mul(h, t);
        let u2 = b.add(u, u);
        h = b.add(u2, u2);
    }
    b.sub(h, X);
    Ok(b.finish())
}

/// Registers and program of the `h_{n,k}` recurrence
/// `h_1 = x(1-x)`, `h_{m+1} = (c^{3^{m-1}} - h_m) h_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnkFamily {
    pub n: usize,
    pub k: usize,
    pub primes: Vec<u64>,
    /// Product of the first `k` primes.
    pub c: String,
    /// Computes every `h_m` and the quotient `h_n / (x(1-x))`.
    #[serde(skip)]
    pub program: Slp,
    /// Register of `h_m` for `m = 1..=n`.
    pub h: Vec<i64>,
    /// Register of `c^{3^{m-1}}` for `m = 1..=n-1`.
    pub cpow: Vec<i64>,
    /// Register of the quotient in `program`.
    pub quotient: i64,
    /// The quotient alone; its length witnesses an upper bound on `τ`.
    #[serde(skip)]
    pub quotient_program: Slp,
    pub quotient_length: usize,
    pub quotient_degree: u64,
}

impl HnkFamily {
    pub fn c_value(&self) -> BigInt {
        self.c.parse().expect("decimal")
    }

    /// `h_m` alone.
    pub fn h_program(&self, m: usize) -> Result<Slp> {
        self.program.prune(self.h[m - 1])
    }
}

/// The quotient `h_{n,k}/(x(1-x)) = (c - h_1) Π_{2<=m<n} (c^{3^{m-1}} - h_m)`,
/// together with `h_1, …, h_n`.
pub fn gen_hnk(n: usize, k: usize) -> Result<HnkFamily> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidInput("n and k must be at least 1".into()));
    }
    if n > 16 {
        return Err(Error::Guardrail(format!("n = {n} exceeds the supported 16")));
    }
    let primes = first_primes(k);
    let mut b = SlpBuilder::new();
    let mut c_reg = ONE;
    let mut c = BigInt::from(1);
    for &p in &primes {
        let r = b.constant(&BigInt::from(p))?;
        c_reg = if c_reg == ONE { r } else { b.mul(c_reg, r) };
        c *= p;
    }
    let t = b.sub(ONE, X);
    let mut h = vec![b.mul(X, t)];
    let mut cpow = Vec::new();
    let mut factors = Vec::new();
    let mut cm = c_reg;
    for m in 1..n {
        if m > 1 {
            let sq = b.mul(cm, cm);
            cm = b.mul(sq, cm);
        }
        cpow.push(cm);
        let f = b.sub(cm, h[m - 1]);
        factors.push(f);
        h.push(b.mul(f, h[m - 1]));
    }
    let quotient = match factors.split_first() {
        None => b.mul(ONE, ONE),
        Some((&first, rest)) => rest.iter().fold(first, |acc, &f| b.mul(acc, f)),
    };
    let program = b.finish();
    let quotient_program = program.prune(quotient)?;
    Ok(HnkFamily {
        n,
        k,
        primes,
        c: c.to_string(),
        h,
        cpow,
        quotient,
        quotient_length: quotient_program.len(),
        quotient_degree: (1u64 << n) - 2,
        quotient_program,
        program,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;
    use crate::slp::expand::expand;
    use crate::slp::program::slp_eval;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn logistic_values() {
        let p = gen_logistic(2).unwrap();
        assert_eq!(p.len(), 9);
        // h_1(1/2) = 1, h_2(1/2) = 0
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(slp_eval(&p, &half, false).0, -half.clone());
    }

    #[test]
    fn constants() {
        assert_eq!(gen_hnk(2, 2).unwrap().c, "6");
        assert_eq!(gen_hnk(2, 3).unwrap().c, "30");
    }

    #[test]
    fn quotient_times_seed_is_h() {
        for n in 1..=4 {
            let f = gen_hnk(n, 2).unwrap();
            let (qn, _) = expand(&f.quotient_program).unwrap();
            let (hn, _) = expand(&f.h_program(n).unwrap()).unwrap();
            let seed = crate::numeric::qpoly(&[0, 1, -1]);
            assert_eq!(qn.times(&seed), hn);
            assert_eq!(qn.degree(), Some((1usize << n) - 2));
        }
    }

    #[test]
    fn n1_quotient_is_one() {
        let f = gen_hnk(1, 1).unwrap();
        assert_eq!(slp_eval(&f.quotient_program, &q(5), false).0, q(1));
    }
}
