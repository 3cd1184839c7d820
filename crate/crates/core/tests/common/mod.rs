//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fewnomial::fewnomial::gen_g_eps;
use fewnomial::nonarch::SparsePoly;
use fewnomial::numeric::{LocalField, PAdic, Rational, Ring};
use fewnomial::polyhedra::LiftedSupport;
use fewnomial::viro::SignDistribution;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ord(x: &BigInt, p: u64, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while v < cap && x.is_multiple_of(&pb) {
        x /= &pb;
        v += 1;
    }
    v
}

fn eval(c: &[BigInt], y: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * y + a)
}

fn deriv(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * i).collect()
}

/// Phase-1 roots in Q_p of an integer polynomial, by scanning residues
/// `y ≡ 1 (mod p)` modulo `p^m` of every rescaling `f(p^v y)`.
///
/// Returns `None` when some residue hit is too close to a multiple root
/// for the scan to separate roots (`2 ord g'(y) >= m`).
pub fn phase1_oracle(coeffs: &[i64], p: u64, m: u32) -> Option<usize> {
    assert!(coeffs[0] != 0, "constant term must be nonzero");
    let c: Vec<BigInt> = coeffs.iter().map(|&a| BigInt::from(a)).collect();
    let ords: Vec<i64> = c.iter().filter(|a| !a.is_zero()).map(|a| ord(a, p, 64) as i64).collect();
    let span = ords.iter().max().unwrap() - ords.iter().min().unwrap();
    let pm = BigInt::from(p).pow(m);
    let max_e = (m - 1) / 2;
    let mut total = 0;
    for v in -span..=span {
        // g(y) = p^s f(p^v y), integral and primitive at p
        let shift = c.iter().enumerate().map(|(i, _)| v * i as i64).min().unwrap().min(0);
        let mut g: Vec<BigInt> = c
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigInt::from(p).pow((v * i as i64 - shift) as u32))
            .collect();
        let content = g.iter().filter(|a| !a.is_zero()).map(|a| ord(a, p, 1 << 20)).min().unwrap();
        let pc = BigInt::from(p).pow(content);
        for a in g.iter_mut() {
            *a = &*a / &pc;
        }
        let dg = deriv(&g);
        let mut disks = BTreeSet::new();
        let count = p.pow(m - 1);
        for t in 0..count {
            let y = BigInt::from(1 + p * t);
            if !eval(&g, &y).mod_floor(&pm).is_zero() {
                continue;
            }
            let e = ord(&eval(&dg, &y), p, m);
            if e > max_e {
                return None;
            }
            let r = y.mod_floor(&BigInt::from(p).pow(e + 1));
            disks.insert((e, r));
        }
        total += disks.len();
    }
    Some(total)
}

/// Random integer cubics and quartics with nonzero constant term: half
/// with arbitrary coefficients, half with planted factors `x - a`.
pub fn random_poly(rng: &mut ChaCha8Rng, p: u64) -> Vec<i64> {
    let deg = rng.gen_range(3..=4usize);
    loop {
        let c: Vec<i64> = if rng.gen_bool(0.5) {
            (0..=deg).map(|_| rng.gen_range(-30..=30)).collect()
        } else {
            let mut c = vec![1i64];
            for _ in 0..deg {
                let a = if rng.gen_bool(0.7) {
                    let k = rng.gen_range(-1..=1);
                    let u = 1 + p as i64 * rng.gen_range(-3..=3);
                    let sign = if rng.gen_bool(0.8) { 1 } else { -1 };
                    if k >= 0 {
                        sign * u * (p as i64).pow(k as u32)
                    } else {
                        // a root p^{-1} u enters as the factor (p x - u)
                        c = mul(&c, &[-sign * u, p as i64]);
                        continue;
                    }
                } else {
                    rng.gen_range(-12..=12)
                };
                c = mul(&c, &[-a, 1]);
            }
            c
        };
        if c[0] != 0 && c[deg] != 0 && c.iter().all(|a| a.abs() < 1 << 40) {
            return c;
        }
    }
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `count` decisive instances for prime `p`, with their oracle counts.
pub fn oracle_instances(p: u64, count: usize, seed: u64) -> Vec<(Vec<i64>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut out = Vec::new();
    while out.len() < count {
        let f = random_poly(&mut rng, p);
        if let Some(n) = phase1_oracle(&f, p, 4) {
            out.push((f, n));
        }
    }
    out
}

pub fn quarter() -> Rational {
    Rational::new(1.into(), 4.into())
}

/// Supports of `G_{1/4}` lifted by the exponent `e` in `|c| = (1/4)^e`, and
/// the coefficient signs.
pub fn g_quarter(n: usize) -> (Vec<LiftedSupport>, Vec<SignDistribution>) {
    let g = gen_g_eps(n, &quarter()).unwrap();
    let mut lifted = Vec::new();
    let mut signs = Vec::new();
    for f in &g.polys {
        let support = f.support().unwrap();
        let mut lifts = Vec::new();
        let mut coeffs = Vec::new();
        for a in support.points() {
            let c = f.coeff(a).unwrap().clone();
            let mut m = c.abs();
            let mut e = 0;
            while !m.is_one() {
                m *= Rational::from_integer(4.into());
                e += 1;
            }
            lifts.push(Rational::from_integer(e.into()));
            coeffs.push(c);
        }
        signs.push(SignDistribution::from_coefficients(&support, &coeffs).unwrap());
        lifted.push(LiftedSupport::new(support, lifts).unwrap());
    }
    (lifted, signs)
}

/// `(exponent, sign, power of p)` per term.
pub type Printed = Vec<(Vec<i64>, i64, u32)>;

pub fn terms_match(f: &SparsePoly<PAdic>, want: &Printed, p: u64) -> bool {
    if f.terms.len() != want.len() {
        return false;
    }
    let ctx = f.terms[0].1.ctx();
    want.iter().all(|(a, s, k)| {
        let c = PAdic::from_integer(ctx, &(BigInt::from(*s) * BigInt::from(p).pow(*k)));
        f.coeff(a).is_some_and(|x| x.minus(&c).valuation().is_none())
    })
}

pub fn printed_systems() -> Vec<(Vec<i64>, [Printed; 3])> {
    let x1x2 = vec![1, 1, 0];
    let x2x3 = vec![0, 1, 1];
    let x3 = vec![0, 0, 1];
    let x1sq = vec![2, 0, 0];
    let one = vec![0, 0, 0];
    vec![
        (
            vec![1, 0, 0],
            [
                vec![(x1x2.clone(), 1, 0), (one.clone(), -1, 1)],
                vec![(x2x3.clone(), 1, 0), (one.clone(), -1, 0)],
                vec![(x3.clone(), 1, 0), (one.clone(), -1, 0)],
            ],
        ),
        (
            vec![0, 0, 0],
            [
                vec![(x1x2.clone(), 1, 0), (x1sq.clone(), -1, 0)],
                vec![(x2x3.clone(), 1, 0), (one.clone(), -1, 0)],
                vec![(x3.clone(), 1, 0), (one.clone(), -1, 0)],
            ],
        ),
        (
            vec![-1, -1, 0],
            [
                vec![(x1x2.clone(), 1, 0), (x1sq.clone(), -1, 0)],
                vec![(x2x3.clone(), 1, 0), (x1sq.clone(), -1, 1)],
                vec![(x3.clone(), 1, 0), (one.clone(), -1, 0)],
            ],
        ),
        (
            vec![-2, -2, -1],
            [
                vec![(x1x2, 1, 0), (x1sq.clone(), -1, 0)],
                vec![(x2x3, 1, 0), (x1sq.clone(), -1, 1)],
                vec![(x3, 1, 0), (x1sq, -1, 3)],
            ],
        ),
    ]
}

pub fn gp(n: usize, p: u64) -> Vec<SparsePoly<PAdic>> {
    let ctx = fewnomial::numeric::LocalCtx::new(p, 64).unwrap();
    gen_g_eps(n, &PAdic::from_integer(ctx, &BigInt::from(p))).unwrap().polys
}
