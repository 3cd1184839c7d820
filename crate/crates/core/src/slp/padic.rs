//! `p`-adic roots of `h_{n,k}` by the level-by-level Hensel induction,
//! evaluating every polynomial through its program.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::families::{gen_hnk, HnkFamily};
use super::program::slp_trace;
use crate::error::{Error, Result};
use crate::fewnomial::Status;
use crate::numeric::local::hensel_lift_root;
use crate::numeric::{LocalCtx, LocalField, PAdic, PrecisionPolicy, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicRootCert {
    pub value: String,
    /// Smallest `m` with `h_m(value) = 0`.
    pub level: usize,
    /// `ord h_n'(value)` from forward derivative propagation.
    pub derivative_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlpRootReport {
    pub n: usize,
    pub k: usize,
    pub p: u64,
    pub c: String,
    /// `2^n - 2`.
    pub expected: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<u64>,
    pub status: Status,
    /// Distinct roots of `h_n` found in `Z_p` (at most `deg h_n = 2^n`).
    pub roots_of_h: usize,
    /// Roots are pairwise distinct modulo `p^{3^{n-1}}`.
    pub distinct_mod_exponent: u64,
    pub distinct: bool,
    /// `(3^{n-1} - 1)/2`.
    pub expected_derivative_valuation: i64,
    pub derivative_valuations_ok: bool,
    /// Every root of `h_m` is again a root of `h_{m+1}`.
    pub nesting_ok: bool,
    pub quotient_nonzero_at_0_and_1: bool,
    /// Roots where `ord((c^{3^{n-2}} - h_{n-1}) h_{n-1}')` differs from the
    /// true `ord h_n'`.
    pub shortened_recurrence_mismatches: usize,
    pub precision: u32,
    pub roots: Vec<PadicRootCert>,
    pub failed: Vec<String>,
}

fn pow3(e: usize) -> u64 {
    3u64.pow(e as u32)
}

struct Level<'a> {
    fam: &'a HnkFamily,
}

impl Level<'_> {
    /// `(h_m(x), h_m'(x))` for every `m`.
    fn eval(&self, x: &PAdic) -> Vec<(PAdic, PAdic)> {
        let trace = slp_trace(&self.fam.program, x, true);
        self.fam
            .h
            .iter()
            .map(|&r| {
                let (v, d) = trace[r as usize - 1].clone();
                (v, d.expect("derivative"))
            })
            .collect()
    }
}

fn vanishes(x: &PAdic, floor: i64) -> bool {
    match x.valuation() {
        Some(v) => v >= floor,
        None => x.abs_precision() >= floor,
    }
}

fn run(fam: &HnkFamily, p: u64, prec: u32) -> Result<SlpRootReport> {
    let n = fam.n;
    let ctx = LocalCtx::new(p, prec)?;
    let c = fam.c_value();
    let lv = Level { fam };
    // absolute precision demanded of each root
    let target = pow3(n - 1) as i64 + 8;
    if target >= prec as i64 {
        return Err(Error::Precision(format!("precision {prec} is below the lift target {target}")));
    }
    let mut roots: Vec<(PAdic, usize)> = vec![
        (PAdic::from_integer(ctx, &BigInt::zero()), 1),
        (PAdic::from_integer(ctx, &BigInt::from(1)), 1),
    ];
    let mut failed = Vec::new();
    let mut nesting_ok = true;
    for m in 1..n {
        let cm = PAdic::from_integer(ctx, &num_traits::pow(c.clone(), pow3(m - 1) as usize));
        let f = |x: &PAdic| -> Result<(PAdic, PAdic)> {
            let (h, dh) = lv.eval(x)[m - 1].clone();
            Ok((cm.minus(&h), dh.negate()))
        };
        let mut next = Vec::with_capacity(2 * roots.len());
        for (z, _) in &roots {
            let lifted = hensel_lift_root(&f, z, target)?;
            next.push((lifted.root, m + 1));
        }
        // old roots stay roots of h_{m+1}
        for (z, _) in &roots {
            if !vanishes(&lv.eval(z)[m].0, target) {
                nesting_ok = false;
            }
        }
        roots.extend(next);
    }
    if !nesting_ok {
        failed.push("a root of h_m is not a root of h_{m+1}".into());
    }

    let radius = pow3(n - 1) as i64;
    let mut distinct = true;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            match roots[i].0.minus(&roots[j].0).valuation() {
                Some(v) if v < radius => {}
                Some(_) => distinct = false,
                None if roots[i].0.minus(&roots[j].0).abs_precision() >= radius => distinct = false,
                None => return Err(Error::Precision("root separation below working precision".into())),
            }
        }
    }
    if !distinct {
        failed.push(format!("roots collide modulo p^{radius}"));
    }

    let expected_dv = (pow3(n - 1) as i64 - 1) / 2;
    let mut certs = Vec::with_capacity(roots.len());
    let mut dv_ok = true;
    let mut mismatches = 0;
    for (z, level) in &roots {
        let vals = lv.eval(z);
        let (h, dh) = &vals[n - 1];
        if !vanishes(h, target) {
            failed.push(format!("h_n does not vanish at {}", z.literal()));
        }
        let dv = dh
            .valuation()
            .ok_or_else(|| Error::Precision("derivative indistinguishable from zero".into()))?;
        dv_ok &= dv == expected_dv;
        if n >= 2 {
            let cm = PAdic::from_integer(ctx, &num_traits::pow(c.clone(), pow3(n - 2) as usize));
            let (hp, dhp) = &vals[n - 2];
            let short = cm.minus(hp).times(dhp);
            if short.valuation() != Some(dv) {
                mismatches += 1;
            }
        }
        certs.push(PadicRootCert {
            value: z.literal(),
            level: *level,
            derivative_valuation: dv,
        });
    }
    if !dv_ok {
        failed.push(format!("some ord h_n' differs from {expected_dv}"));
    }

    let q_at = |x: i64| {
        let v = slp_trace(&fam.quotient_program, &Rational::from_integer(x.into()), false);
        v.last().map(|r| !Ring::is_zero(&r.0)).unwrap_or(true)
    };
    let endpoints_ok = q_at(0) && q_at(1);
    if !endpoints_ok {
        failed.push("quotient vanishes at 0 or 1".into());
    }

    let degree = 1u64 << n;
    if roots.len() as u64 > degree {
        failed.push("more roots than the degree allows".into());
    }
    let expected = degree - 2;
    let certified = roots.len() as u64 - 2;
    Ok(SlpRootReport {
        n,
        k: fam.k,
        p,
        c: fam.c.clone(),
        expected,
        certified: Some(certified),
        status: if failed.is_empty() && certified == expected { Status::Certified } else { Status::Refuted },
        roots_of_h: roots.len(),
        distinct_mod_exponent: radius as u64,
        distinct,
        expected_derivative_valuation: expected_dv,
        derivative_valuations_ok: dv_ok,
        nesting_ok,
        quotient_nonzero_at_0_and_1: endpoints_ok,
        shortened_recurrence_mismatches: mismatches,
        precision: prec,
        roots: certs,
        failed,
    })
}

/// Counts the `Z_p` roots of `h_{n,k}/(x(1-x))` for a prime `p <= p_k`.
pub fn count_slp_roots_padic(n: usize, k: usize, p: u64, policy: PrecisionPolicy) -> Result<SlpRootReport> {
    let fam = gen_hnk(n, k)?;
    if !fam.primes.contains(&p) {
        return Err(Error::InvalidInput(format!("p = {p} is not among the first {k} primes")));
    }
    let need = 2 * (pow3(n - 1) as u32 + 8) + 16;
    let policy = PrecisionPolicy {
        initial: policy.initial.max(need),
        ceiling: policy.ceiling.max(need),
    };
    let mut used = policy.initial;
    let res = policy.run(|prec| {
        used = prec;
        run(&fam, p, prec)
    });
    match res {
        Err(Error::Precision(reason)) | Err(Error::Undecided { reason, .. }) => Ok(SlpRootReport {
            n,
            k,
            p,
            c: fam.c.clone(),
            expected: (1u64 << n) - 2,
            certified: None,
            status: Status::Undecided,
            roots_of_h: 0,
            distinct_mod_exponent: pow3(n - 1),
            distinct: false,
            expected_derivative_valuation: (pow3(n - 1) as i64 - 1) / 2,
            derivative_valuations_ok: false,
            nesting_ok: false,
            quotient_nonzero_at_0_and_1: false,
            shortened_recurrence_mismatches: 0,
            precision: used,
            roots: Vec::new(),
            failed: vec![reason],
        }),
        other => other,
    }
}
