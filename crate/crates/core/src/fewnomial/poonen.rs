//! Poonen's polynomials `r_k(x) = Π (x - z_1 - z_2 t - ⋯)` over `F_p[t]`,
//! with an exhaustive root count.

use serde::Serialize;

use super::verify::Status;
use crate::error::{Error, Result};
use crate::numeric::ffield::{add_mod, is_prime, mul_mod, sub_mod};
use crate::numeric::local::{local_roots, PhaseFilter};
use crate::numeric::{LocalCtx, Series, UniPoly};

/// Largest number of linear factors expanded.
pub const MAX_FACTORS: u64 = 1 << 12;
/// Largest brute-force search space.
pub const MAX_SEARCH: u64 = 1 << 20;

/// Which digit pattern the factors use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PoonenVariant {
    /// `z_1, …, z_{k-1}` with `z_i t^{i-1}`: `p^{k-1}` factors.
    Printed,
    /// `z_1, …, z_k` with `z_i t^{i-1}`: `p^k` factors.
    DigitShifted,
}

impl PoonenVariant {
    pub fn digits(self, k: usize) -> usize {
        match self {
            PoonenVariant::Printed => k - 1,
            PoonenVariant::DigitShifted => k,
        }
    }
}

/// Polynomial in `t` over `F_p`, lowest degree first, no trailing zeros.
pub type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, x) in c.iter_mut().enumerate() {
        *x = add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p);
    }
    trim(c)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut c = vec![0; a.len().max(b.len())];
    for (i, x) in c.iter_mut().enumerate() {
        *x = sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p);
    }
    trim(c)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = add_mod(c[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(c)
}

/// The `idx`-th element of `F_p[t]_{<d}` in base-`p` digit order.
fn nth_poly(mut idx: u64, d: usize, p: u64) -> FpPoly {
    let mut c = vec![0; d];
    for x in c.iter_mut() {
        *x = idx % p;
        idx /= p;
    }
    trim(c)
}

fn check_size(p: u64, e: usize, cap: u64, what: &str) -> Result<u64> {
    let total = (p as u128).checked_pow(e as u32).filter(|&v| v <= cap as u128);
    total
        .map(|v| v as u64)
        .ok_or_else(|| Error::Guardrail(format!("{what}: {p}^{e} exceeds the limit {cap}")))
}

/// Coefficients (in `x`, lowest first) of `r_k`.
pub fn gen_poonen_rk(p: u64, k: usize, variant: PoonenVariant) -> Result<Vec<FpPoly>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let d = variant.digits(k);
    let count = check_size(p, d, MAX_FACTORS, "factor count")?;
    let mut r: Vec<FpPoly> = vec![vec![1]];
    for idx in 0..count {
        let z = nth_poly(idx, d, p);
        // r * (x - z)
        let mut next = vec![Vec::new(); r.len() + 1];
        for (i, c) in r.iter().enumerate() {
            next[i + 1] = fp_add(&next[i + 1], c, p);
            next[i] = fp_sub(&next[i], &fp_mul(c, &z, p), p);
        }
        r = next;
    }
    Ok(r)
}

fn eval(r: &[FpPoly], x: &[u64], p: u64) -> FpPoly {
    r.iter().rev().fold(Vec::new(), |acc, c| fp_add(&fp_mul(&acc, x, p), c, p))
}

fn derivative(r: &[FpPoly], p: u64) -> Vec<FpPoly> {
    r.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| trim(c.iter().map(|&a| mul_mod(a, i as u64 % p, p)).collect()))
        .collect()
}

/// Elements `x ∈ F_p[t]` of degree `< bound` with phase 1 (lowest nonzero
/// coefficient 1) and `r(x) = 0`, as `(x, r'(x) ≠ 0)`.
pub fn brute_force_phase1_roots(r: &[FpPoly], p: u64, bound: usize) -> Result<Vec<(FpPoly, bool)>> {
    let total = check_size(p, bound, MAX_SEARCH, "search space")?;
    let dr = derivative(r, p);
    let mut out = Vec::new();
    for idx in 1..total {
        let x = nth_poly(idx, bound, p);
        if x.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        if eval(r, &x, p).is_empty() {
            let simple = !eval(&dr, &x, p).is_empty();
            out.push((x, simple));
        }
    }
    Ok(out)
}

fn render(c: &[u64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, a)| match i {
            0 => format!("{a}"),
            1 => format!("{a}*t"),
            _ => format!("{a}*t^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoonenTerm {
    pub exponent: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoonenReport {
    pub p: u64,
    pub k: usize,
    pub variant: PoonenVariant,
    pub degree: usize,
    pub terms: Vec<PoonenTerm>,
    pub term_count: usize,
    /// Every root of `r_k` has degree `< k`, so searching
    /// `F_p[t]_{<search_bound}` with `search_bound = k+1` is exhaustive.
    pub search_bound: usize,
    pub brute_force_phase1: usize,
    pub brute_force_nondegenerate: usize,
    pub newton_hensel_phase1: usize,
    /// `(p^k - 1)/(p - 1)`.
    pub target: u64,
    pub matches_target: bool,
}

pub fn poonen_report(p: u64, k: usize, variant: PoonenVariant) -> Result<PoonenReport> {
    let r = gen_poonen_rk(p, k, variant)?;
    let search_bound = k + 1;
    let roots = brute_force_phase1_roots(&r, p, search_bound)?;
    let ctx = LocalCtx::new(p, (4 * search_bound as u32).max(16))?;
    let f = UniPoly::new(
        r.iter()
            .map(|c| Series::from_poly(ctx, &c.iter().map(|&a| a as i64).collect::<Vec<_>>()))
            .collect(),
    );
    let newton_hensel_phase1 = local_roots(&f, PhaseFilter::Only(1))?.len();
    let terms: Vec<PoonenTerm> = r
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| PoonenTerm {
            exponent: i,
            coeff: render(c),
        })
        .collect();
    let target = (0..k as u32).map(|i| p.pow(i)).sum::<u64>();
    let count = roots.len();
    Ok(PoonenReport {
        p,
        k,
        variant,
        degree: r.len() - 1,
        term_count: terms.len(),
        terms,
        search_bound,
        brute_force_phase1: count,
        brute_force_nondegenerate: roots.iter().filter(|r| r.1).count(),
        newton_hensel_phase1,
        target,
        matches_target: count as u64 == target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoonenComparison {
    pub printed: PoonenReport,
    pub digit_shifted: PoonenReport,
    /// Certified when the digit-shifted variant reaches the target.
    pub status: Status,
    pub finding: String,
}

pub fn poonen_compare(p: u64, k: usize) -> Result<PoonenComparison> {
    let printed = poonen_report(p, k, PoonenVariant::Printed)?;
    let digit_shifted = poonen_report(p, k, PoonenVariant::DigitShifted)?;
    let finding = format!(
        "printed product has {} phase-1 roots and {} terms; digit-shifted product has {} phase-1 roots and {} terms; target {}",
        printed.brute_force_phase1,
        printed.term_count,
        digit_shifted.brute_force_phase1,
        digit_shifted.term_count,
        printed.target
    );
    Ok(PoonenComparison {
        status: if digit_shifted.matches_target { Status::Certified } else { Status::Refuted },
        printed,
        digit_shifted,
        finding,
    })
}
