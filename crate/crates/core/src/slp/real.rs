//! Real-root certificates for the `h_{n,k}` quotient and the logistic family.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::expand::expand;
use super::families::{gen_hnk, gen_logistic};
use super::program::slp_eval;
use crate::error::Result;
use crate::fewnomial::Status;
use crate::numeric::sturm::SturmSequence;
use crate::numeric::{format_rational, Rational, UniPoly};

/// Largest `n` for which the Sturm cross-check expands the quotient.
pub const STURM_FALLBACK_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeStep {
    pub m: usize,
    /// `sup h_m` over the reals.
    pub max: String,
    /// `c^{3^{m-1}}`.
    pub bound: String,
    /// `2 sup h_m < c^{3^{m-1}}`: `h_{m+1}` is then increasing in `h_m`
    /// across the whole range and `c^{3^{m-1}} - h_m > 0`.
    pub below_half: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoRealRootsCertificate {
    pub n: usize,
    pub k: usize,
    pub c: String,
    pub status: Status,
    pub method: Vec<String>,
    pub chain: Vec<RangeStep>,
    /// `sup h_2 = c/4 - 1/16`.
    pub h2_max: Option<String>,
    pub h2_max_at_most_three_eighths: Option<bool>,
    /// `h_n'(0) ≠ 0` and `h_n'(1) ≠ 0`.
    pub endpoints_simple: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sturm_real_roots: Option<usize>,
}

/// `sup_ℝ h_1 = 1/4`, then `sup h_{m+1} = (C_m - M_m) M_m` while
/// `2 M_m < C_m`, so every factor `C_m - h_m` of the quotient stays positive.
pub fn certify_no_real_roots(n: usize, k: usize) -> Result<NoRealRootsCertificate> {
    let fam = gen_hnk(n, k)?;
    let c = Rational::from_integer(fam.c_value());
    let two = Rational::from_integer(2.into());
    let mut chain = Vec::new();
    let mut max = Rational::new(1.into(), 4.into());
    let mut cm = c.clone();
    let mut chain_ok = true;
    for m in 1..n {
        let below_half = &two * &max < cm;
        chain.push(RangeStep {
            m,
            max: format_rational(&max),
            bound: format_rational(&cm),
            below_half,
        });
        if !below_half {
            chain_ok = false;
            break;
        }
        max = (&cm - &max) * &max;
        cm = &cm * &cm * &cm;
    }
    let (h2_max, h2_ok) = if n >= 2 {
        let m2 = (&c - Rational::new(1.into(), 4.into())) * Rational::new(1.into(), 4.into());
        let ok = m2 <= Rational::new(3.into(), 8.into());
        (Some(format_rational(&m2)), Some(ok))
    } else {
        (None, None)
    };

    let hn = fam.h_program(n)?;
    let endpoints_simple = [0i64, 1].iter().all(|&x| {
        let (_, d) = slp_eval(&hn, &Rational::from_integer(x.into()), true);
        !d.expect("derivative").is_zero()
    });

    let mut method = vec!["exact range chain of h_1, ..., h_{n-1} over the reals".to_string()];
    let sturm_real_roots = if n <= STURM_FALLBACK_MAX_N {
        method.push("Sturm count of the expanded quotient".into());
        let (qn, _) = expand(&fam.quotient_program)?;
        Some(SturmSequence::new(&qn)?.count(None, None))
    } else {
        None
    };
    let decided = chain_ok || sturm_real_roots.is_some();
    let no_roots = sturm_real_roots.map_or(chain_ok, |s| s == 0);
    let status = match (decided, no_roots && endpoints_simple) {
        (false, _) => Status::Undecided,
        (true, true) => Status::Certified,
        (true, false) => Status::Refuted,
    };
    Ok(NoRealRootsCertificate {
        n,
        k,
        c: fam.c.clone(),
        status,
        method,
        chain,
        h2_max,
        h2_max_at_most_three_eighths: h2_ok,
        endpoints_simple,
        sturm_real_roots,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogisticReport {
    pub n: usize,
    pub length: usize,
    pub length_bound: usize,
    pub degree: usize,
    /// Distinct real roots in the open interval `(0, 1)`.
    pub roots_in_open_unit_interval: usize,
    /// Distinct real roots in `[0, 1]`.
    pub roots_in_closed_unit_interval: usize,
    pub integer_roots: Vec<String>,
}

/// Smallest power of two `B` with `|c_{d-i}| <= |c_d| (B/2)^i` for all `i`
/// (Fujiwara), so every complex root has modulus at most `B`.
fn root_bound(c: &[BigInt]) -> BigInt {
    let d = c.len() - 1;
    let lead = c[d].abs();
    let mut half = BigInt::one();
    loop {
        let ok = (1..=d).all(|i| c[d - i].abs() <= &lead * num_traits::pow(half.clone(), i));
        if ok {
            return half * 2;
        }
        half *= 2;
    }
}

/// Integer roots of a nonzero rational polynomial, by exact evaluation at
/// every integer within the root bound.
fn integer_roots(f: &UniPoly<Rational>) -> Vec<Rational> {
    let c = f.primitive_integer();
    if c.len() < 2 {
        return Vec::new();
    }
    let b = root_bound(&c);
    let mut out = Vec::new();
    let mut z = -b.clone();
    while z <= b {
        let v = c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &z + a);
        if v.is_zero() {
            out.push(Rational::from_integer(z.clone()));
        }
        z += 1;
    }
    out
}

pub fn logistic_report(n: usize) -> Result<LogisticReport> {
    let prog = gen_logistic(n)?;
    let (f, _) = expand(&prog)?;
    let s = SturmSequence::new(&f)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let at_one = usize::from(s.sign_at(&one).is_eq());
    let at_zero = usize::from(s.sign_at(&zero).is_eq());
    let half_open = s.count(Some(&zero), Some(&one));
    Ok(LogisticReport {
        n,
        length: prog.len(),
        length_bound: 5 * n + 5,
        degree: f.degree().unwrap_or(0),
        roots_in_open_unit_interval: half_open - at_one,
        roots_in_closed_unit_interval: half_open + at_zero,
        integer_roots: integer_roots(&f).iter().map(format_rational).collect(),
    })
}
