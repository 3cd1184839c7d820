//! Non-Archimedean root machinery shared by Q_p and F_p((t)).

use serde::Serialize;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::ffield;
use super::{Rational, Ring, UniPoly};
use crate::error::{Error, Result};

/// Sentinel absolute precision of an exact zero.
pub const EXACT: i64 = i64::MAX;

/// Default working precision in digits (p-adic digits or t-powers).
pub const DEFAULT_PRECISION: u32 = 64;
/// Default ceiling reached by precision doubling.
pub const DEFAULT_PRECISION_CEILING: u32 = 4096;
/// Recursion bound for multiple residual roots.
pub const MAX_ROOT_DEPTH: usize = 32;

/// Residue characteristic and relative-precision cap of a local field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalCtx {
    pub p: u64,
    pub prec: u32,
}

impl LocalCtx {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !ffield::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if prec == 0 {
            return Err(Error::InvalidInput("precision must be positive".into()));
        }
        Ok(LocalCtx { p, prec })
    }
}

/// A truncated element of a non-Archimedean local field with prime residue
/// field F_p and uniformizer `ρ` (`p` for Q_p, `t` for F_p((t))).
pub trait LocalField: Ring {
    fn ctx(&self) -> LocalCtx;
    fn from_int(ctx: LocalCtx, v: &BigInt) -> Self;
    fn from_rational_in(ctx: LocalCtx, q: &Rational) -> Result<Self>;
    /// `ρ^k`.
    fn uniformizer_pow(ctx: LocalCtx, k: i64) -> Self;
    /// `None` when the value is zero at the known precision.
    fn valuation(&self) -> Option<i64>;
    /// Absolute precision (`EXACT` for an exact zero).
    fn abs_precision(&self) -> i64;
    /// Residue of the unit part, i.e. the generalized phase.
    fn residue(&self) -> Option<u64>;
    /// Multiplication by `ρ^k`.
    fn shift(&self, k: i64) -> Self;
    /// Forgets digits at and beyond `ρ^abs`.
    fn truncate_abs(&self, abs: i64) -> Self;
    fn literal(&self) -> String;

    /// Reduction modulo `ρ` of an integral element.
    fn reduce(&self) -> Result<u64> {
        match self.valuation() {
            Some(v) if v > 0 => Ok(0),
            Some(0) => Ok(self.residue().expect("nonzero")),
            Some(v) => Err(Error::InvalidInput(format!(
                "reduction of non-integral element (valuation {v})"
            ))),
            None if self.abs_precision() >= 1 => Ok(0),
            None => Err(Error::Precision(format!(
                "residue of {} is unknown",
                self.literal()
            ))),
        }
    }

    fn from_residue(ctx: LocalCtx, r: u64) -> Self {
        Self::from_int(ctx, &BigInt::from(r))
    }
}

/// Valuation that treats indistinguishable-from-zero values as +∞ when
/// their absolute precision already exceeds `floor`.
fn val_or(x: &impl LocalField, floor: i64) -> Result<i64> {
    match x.valuation() {
        Some(v) => Ok(v),
        None if x.abs_precision() >= floor => Ok(EXACT),
        None => Err(Error::Precision(format!("value {} has unknown valuation", x.literal()))),
    }
}

/// One edge of a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSlope {
    pub slope: Rational,
    /// Horizontal length, the number of roots (with multiplicity) of
    /// valuation `-slope`.
    pub length: u64,
}

/// Lower-hull slopes of `{(i, ord c_i)}` in increasing order.
///
/// Coefficients that are zero at the working precision are skipped; a
/// monomial yields an empty list.
pub fn newton_polygon_slopes<K: LocalField>(f: &UniPoly<K>) -> Vec<NewtonSlope> {
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    newton_polygon_points(&pts)
}

/// Lower hull of integer points sorted by abscissa.
pub fn newton_polygon_points(pts: &[(i64, i64)]) -> Vec<NewtonSlope> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b if it lies on or above segment a-pt
            let cross = (b.0 - a.0) as i128 * (pt.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (pt.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| NewtonSlope {
            slope: Rational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(w[1].0 - w[0].0)),
            length: (w[1].0 - w[0].0) as u64,
        })
        .collect()
}

/// Anything that can report its value and derivative at a point.
pub trait Evaluate<K> {
    fn value_and_derivative(&self, x: &K) -> Result<(K, K)>;
}

impl<K: Ring> Evaluate<K> for UniPoly<K> {
    fn value_and_derivative(&self, x: &K) -> Result<(K, K)> {
        Ok(self.eval_with_derivative(x))
    }
}

impl<K, F: Fn(&K) -> Result<(K, K)>> Evaluate<K> for F {
    fn value_and_derivative(&self, x: &K) -> Result<(K, K)> {
        self(x)
    }
}

/// Result of a Hensel lift.
#[derive(Debug, Clone)]
pub struct HenselRoot<K> {
    pub root: K,
    /// `ord f'(root)`, unchanged along the lift.
    pub derivative_valuation: i64,
    /// Guaranteed lower bound on `ord f(root)`.
    pub residual_valuation: i64,
}

/// Newton iteration from `r` until `ord f(r) >= target`.
///
/// Requires `ord f(r) > 2 ord f'(r)`; the lifted root then agrees with `r`
/// to more than `ord f'(r)` digits.
pub fn hensel_lift_root<K: LocalField>(
    f: &impl Evaluate<K>,
    r: &K,
    target: i64,
) -> Result<HenselRoot<K>> {
    let (fv, dv) = f.value_and_derivative(r)?;
    let d_ord = dv.valuation().ok_or_else(|| {
        Error::NotHenselLiftable(format!("derivative vanishes at {}", r.literal()))
    })?;
    let f_ord = val_or(&fv, target)?;
    if f_ord != EXACT && f_ord <= 2 * d_ord {
        return Err(Error::NotHenselLiftable(format!(
            "ord f(r) = {f_ord} is not greater than 2 ord f'(r) = {}",
            2 * d_ord
        )));
    }
    let mut x = r.clone();
    let mut fx = fv;
    let mut dx = dv;
    for _ in 0..64 {
        let cur = val_or(&fx, target)?;
        if cur >= target {
            return Ok(HenselRoot {
                root: x,
                derivative_valuation: d_ord,
                residual_valuation: cur.min(fx.abs_precision()),
            });
        }
        let step = fx.try_div(&dx)?;
        let next = x.minus(&step);
        let (nf, nd) = f.value_and_derivative(&next)?;
        if nd.valuation() != Some(d_ord) {
            return Err(Error::Precision("derivative valuation drifted during lift".into()));
        }
        let nv = val_or(&nf, target)?;
        if nv <= cur {
            return Err(Error::Precision(format!(
                "Hensel iteration stalled at ord f = {cur} (target {target})"
            )));
        }
        x = next;
        fx = nf;
        dx = nd;
    }
    Err(Error::Precision("Hensel iteration did not converge".into()))
}

/// A root located in the field, known to some absolute precision.
#[derive(Debug, Clone)]
pub struct LocalRoot<K> {
    pub value: K,
    pub valuation: i64,
    pub phase: u64,
    pub derivative_valuation: i64,
}

/// `ρ^{-m} f` where `m` is the minimal coefficient valuation.
fn normalize_content<K: LocalField>(f: &UniPoly<K>) -> Result<UniPoly<K>> {
    let m = f
        .coeffs()
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .ok_or_else(|| Error::Precision("all coefficients vanish at working precision".into()))?;
    Ok(UniPoly::new(f.coeffs().iter().map(|c| c.shift(-m)).collect()))
}

fn residue_poly<K: LocalField>(f: &UniPoly<K>) -> Result<Vec<u64>> {
    f.coeffs().iter().map(|c| c.reduce()).collect()
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter()
        .rev()
        .fold(0, |acc, &a| ffield::add_mod(ffield::mul_mod(acc, x, p), a, p))
}

fn deriv_mod(c: &[u64], p: u64) -> Vec<u64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| ffield::mul_mod(a, (i as u64) % p, p))
        .collect()
}

/// Roots `y` of `g` (integral coefficients, content one) with `y ≡ r`.
fn integral_roots_near<K: LocalField>(
    g: &UniPoly<K>,
    r: u64,
    depth: usize,
    out: &mut Vec<(K, i64)>,
) -> Result<()> {
    let ctx = g.coeffs()[0].ctx();
    let p = ctx.p;
    let gbar = residue_poly(g)?;
    debug_assert_eq!(eval_mod(&gbar, r, p), 0);
    let rk = K::from_residue(ctx, r);
    if eval_mod(&deriv_mod(&gbar, p), r, p) != 0 {
        let target = g
            .coeffs()
            .iter()
            .map(|c| c.abs_precision())
            .min()
            .unwrap_or(ctx.prec as i64)
            .min(ctx.prec as i64);
        let lifted = hensel_lift_root(g, &rk, target)?;
        out.push((lifted.root, lifted.derivative_valuation));
        return Ok(());
    }
    if depth >= MAX_ROOT_DEPTH {
        return Err(Error::Undecided {
            precision: ctx.prec,
            partial: out.len(),
            reason: format!("multiple residual root beyond depth {MAX_ROOT_DEPTH}"),
        });
    }
    // y = r + ρ z
    let h = g
        .taylor_shift(&rk)
        .scale_variable(&K::uniformizer_pow(ctx, 1));
    let c = h
        .coeffs()
        .iter()
        .filter_map(|c| c.valuation())
        .min()
        .ok_or_else(|| Error::Undecided {
            precision: ctx.prec,
            partial: out.len(),
            reason: "shifted polynomial vanishes at working precision".into(),
        })?;
    let h = UniPoly::new(h.coeffs().iter().map(|x| x.shift(-c)).collect());
    let hbar = residue_poly(&h).map_err(|e| match e {
        Error::Precision(reason) => Error::Undecided {
            precision: ctx.prec,
            partial: out.len(),
            reason,
        },
        other => other,
    })?;
    let mut sub = Vec::new();
    for s in 0..p {
        if eval_mod(&hbar, s, p) == 0 {
            integral_roots_near(&h, s, depth + 1, &mut sub)?;
        }
    }
    let rho = K::uniformizer_pow(ctx, 1);
    for (z, _) in sub {
        let y = rk.plus(&rho.times(&z));
        let (_, d) = g.eval_with_derivative(&y);
        let dv = d
            .valuation()
            .ok_or_else(|| Error::Precision("derivative vanishes at lifted root".into()))?;
        out.push((y, dv));
    }
    Ok(())
}

/// Which residues of the unit part to look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseFilter {
    Any,
    Only(u64),
}

/// All roots of `f` in the field (distinct; `f` must be square-free for the
/// search to terminate), optionally restricted to one phase.
pub fn local_roots<K: LocalField>(f: &UniPoly<K>, filter: PhaseFilter) -> Result<Vec<LocalRoot<K>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.coeffs()[0].ctx();
    let mut roots = Vec::new();
    for s in newton_polygon_slopes(f) {
        if !s.slope.is_integer() {
            continue;
        }
        let v: i64 = (-s.slope.to_integer())
            .try_into()
            .map_err(|_| Error::Guardrail("root valuation out of range".into()))?;
        // x = ρ^v y with y a unit
        let g = normalize_content(&f.scale_variable(&K::uniformizer_pow(ctx, v)))?;
        let gbar = residue_poly(&g)?;
        let candidates: Vec<u64> = match filter {
            PhaseFilter::Any => (1..ctx.p).collect(),
            PhaseFilter::Only(r) => vec![r % ctx.p],
        };
        for r in candidates {
            if r == 0 || eval_mod(&gbar, r, ctx.p) != 0 {
                continue;
            }
            let mut ys = Vec::new();
            integral_roots_near(&g, r, 0, &mut ys).map_err(|e| match e {
                Error::Undecided { precision, reason, .. } => Error::Undecided {
                    precision,
                    partial: roots.len(),
                    reason,
                },
                other => other,
            })?;
            for (y, _) in ys {
                let x = y.shift(v);
                let (_, d) = f.eval_with_derivative(&x);
                let dv = d.valuation().ok_or_else(|| Error::Undecided {
                    precision: ctx.prec,
                    partial: roots.len(),
                    reason: "derivative indistinguishable from zero at a root".into(),
                })?;
                roots.push(LocalRoot {
                    valuation: v,
                    phase: y.residue().expect("unit"),
                    derivative_valuation: dv,
                    value: x,
                });
            }
        }
    }
    Ok(roots)
}

/// Number of roots of generalized phase 1.
pub fn count_phase1_roots<K: LocalField>(f: &UniPoly<K>) -> Result<usize> {
    Ok(local_roots(f, PhaseFilter::Only(1))?.len())
}

/// Precision schedule: start, double on "undecided", stop at the ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    pub initial: u32,
    pub ceiling: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            initial: DEFAULT_PRECISION,
            ceiling: DEFAULT_PRECISION_CEILING,
        }
    }
}

impl PrecisionPolicy {
    pub fn fixed(prec: u32) -> Self {
        PrecisionPolicy {
            initial: prec,
            ceiling: prec,
        }
    }

    /// Runs `job` at increasing precision while it reports precision trouble.
    pub fn run<T>(&self, mut job: impl FnMut(u32) -> Result<T>) -> Result<T> {
        let mut prec = self.initial.max(1);
        loop {
            match job(prec) {
                Err(Error::Undecided { .. }) | Err(Error::Precision(_)) if prec < self.ceiling => {
                    prec = (prec.saturating_mul(2)).min(self.ceiling);
                }
                other => return other,
            }
        }
    }
}

/// Phase-1 roots of a rational polynomial in Q_p, with adaptive precision.
///
/// With `count_multiplicity` each root is weighted by its multiplicity,
/// obtained from an exact square-free factorization over Q.
pub fn count_phase1_roots_univariate(
    f: &UniPoly<Rational>,
    p: u64,
    count_multiplicity: bool,
    policy: PrecisionPolicy,
) -> Result<usize> {
    use super::PAdic;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let parts = if count_multiplicity {
        f.squarefree_factorization()?
    } else {
        vec![(f.squarefree_part()?, 1)]
    };
    let mut total = 0;
    for (g, m) in parts {
        let n = policy.run(|prec| {
            let ctx = LocalCtx::new(p, prec)?;
            let gk = g.map(|c| PAdic::from_rational(ctx, c));
            count_phase1_roots(&gk)
        })?;
        total += n * m as usize;
    }
    Ok(total)
}

/// Exact p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while n.is_multiple_of(&pb) {
        n /= &pb;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{qpoly, PAdic};

    fn ctx(p: u64) -> LocalCtx {
        LocalCtx { p, prec: 32 }
    }

    fn padic_poly(p: u64, c: &[i64]) -> UniPoly<PAdic> {
        qpoly(c).map(|q| PAdic::from_rational(ctx(p), q))
    }

    #[test]
    fn slopes_of_p_plus_x_plus_x2() {
        let f = padic_poly(5, &[5, 1, 1]);
        let s = newton_polygon_slopes(&f);
        assert_eq!(
            s,
            vec![
                NewtonSlope { slope: Rational::from_integer((-1).into()), length: 1 },
                NewtonSlope { slope: Rational::from_integer(0.into()), length: 1 },
            ]
        );
    }

    #[test]
    fn root_valuations_of_x_minus_1_times_x_minus_p() {
        let f = padic_poly(3, &[3, -4, 1]);
        let vals: Vec<Rational> = newton_polygon_slopes(&f).into_iter().map(|s| -s.slope).collect();
        assert_eq!(vals, vec![Rational::from_integer(1.into()), Rational::from_integer(0.into())]);
        assert_eq!(count_phase1_roots(&f).unwrap(), 2);
    }

    #[test]
    fn monomial_has_no_slopes() {
        assert!(newton_polygon_slopes(&padic_poly(7, &[0, 0, 3])).is_empty());
    }

    #[test]
    fn hensel_sqrt_two_mod_seven() {
        let f = padic_poly(7, &[-2, 0, 1]);
        let r = PAdic::from_integer(ctx(7), &3.into());
        let lifted = hensel_lift_root(&f, &r, 20).unwrap();
        let fv = f.eval(&lifted.root);
        assert!(fv.valuation().unwrap_or(EXACT) >= 20);
        assert_eq!(lifted.root.residue(), Some(3));
    }

    #[test]
    fn hensel_refuses_ramified_root() {
        let f = padic_poly(5, &[-5, 0, 1]);
        for r in [0i64, 1, 2, 5] {
            let r = PAdic::from_integer(ctx(5), &r.into());
            assert!(matches!(hensel_lift_root(&f, &r, 10), Err(Error::NotHenselLiftable(_))));
        }
    }

    #[test]
    fn multiple_root_recursion_separates_close_roots() {
        // (x - 1)(x - 1 - 9): residual polynomial has a double root at 1
        let f = padic_poly(3, &[10, -11, 1]);
        let roots = local_roots(&f, PhaseFilter::Only(1)).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn square_root_of_two_in_q17() {
        let f = qpoly(&[-2, 0, 1]).times(&qpoly(&[-17, 0, 1])).times(&qpoly(&[-34, 0, 1]));
        let n = local_roots(&f.map(|q| PAdic::from_rational(ctx(17), q)), PhaseFilter::Any)
            .unwrap()
            .len();
        assert!(n > 0);
    }

    #[test]
    fn multiplicity_weighting() {
        let f = qpoly(&[-1, 1]).pow(2).times(&qpoly(&[-2, 1]));
        assert_eq!(count_phase1_roots_univariate(&f, 5, false, PrecisionPolicy::default()).unwrap(), 1);
        assert_eq!(count_phase1_roots_univariate(&f, 5, true, PrecisionPolicy::default()).unwrap(), 2);
    }
}
