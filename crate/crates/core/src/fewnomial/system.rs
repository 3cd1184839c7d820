//! The circuit family `G_ε`, its univariate eliminant `R_n` and the
//! back-substitution recovering full roots from roots of `R_n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::nonarch::SparsePoly;
use crate::numeric::{Ring, UniPoly};
use crate::polyhedra::{Point, Support};

/// `n` sparse polynomials in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSystem<K> {
    pub n: usize,
    pub polys: Vec<SparsePoly<K>>,
}

impl<K: Ring> SparseSystem<K> {
    pub fn new(n: usize, polys: Vec<SparsePoly<K>>) -> Result<Self> {
        if polys.len() != n || polys.iter().any(|f| f.n != n) {
            return Err(Error::Dimension(format!("expected {n} polynomials in {n} variables")));
        }
        if polys.iter().any(|f| f.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(SparseSystem { n, polys })
    }

    /// Distinct exponent vectors over all polynomials, sorted.
    pub fn union_support(&self) -> Vec<Point> {
        let set: BTreeSet<Point> = self.polys.iter().flat_map(|f| f.terms.iter().map(|(a, _)| a.clone())).collect();
        set.into_iter().collect()
    }

    /// `k` such that the system is `n × n (n+k)`-nomial.
    pub fn k(&self) -> i64 {
        self.union_support().len() as i64 - self.n as i64
    }

    pub fn supports(&self) -> Result<Vec<Support>> {
        self.polys.iter().map(|f| f.support()).collect()
    }

    /// `g_i(x)` for every `i`.
    pub fn eval(&self, x: &[K]) -> Result<Vec<K>> {
        self.polys.iter().map(|f| f.eval(x)).collect()
    }
}

/// Column `j` (1-based) of the exponent matrix `A` of `G_ε`.
pub fn circuit_column(n: usize, j: usize) -> Point {
    let mut c = vec![0i64; n];
    match j {
        1 => {}
        2 => c[0] = 2,
        _ => {
            let i = j - 2;
            c[i - 1] = 1;
            if i < n {
                c[i] = 1;
            }
        }
    }
    c
}

/// The primitive affine relation `b` of the columns of `A`.
pub fn circuit_null_vector(n: usize) -> Vec<BigInt> {
    let sign = |e: usize| if e % 2 == 0 { 1i64 } else { -1 };
    let mut b = vec![BigInt::from(-1), BigInt::from(sign(n))];
    for i in 3..=n + 2 {
        b.push(BigInt::from(2 * sign(n + i - 2)));
    }
    b
}

/// `G_ε`: `x_1x_2 - (ε + x_1^2)`, `x_ix_{i+1} - (1 + ε^{2i-3}x_1^2)` for
/// `2 <= i <= n-1`, and `x_n - (1 + ε^{2n-3}x_1^2)`.
pub fn gen_g_eps<K: Ring>(n: usize, eps: &K) -> Result<SparseSystem<K>> {
    if n < 2 {
        return Err(Error::InvalidInput("G_eps needs n >= 2".into()));
    }
    if eps.is_zero() {
        return Err(Error::InvalidInput("eps must be nonzero".into()));
    }
    let one = eps.one_like();
    let polys = (1..=n)
        .map(|i| {
            let (c, d) = if i == 1 {
                (eps.clone(), one.clone())
            } else {
                (one.clone(), eps.pow(2 * i as u64 - 3))
            };
            SparsePoly::new(
                n,
                vec![
                    (circuit_column(n, i + 2), one.clone()),
                    (circuit_column(n, 1), c.negate()),
                    (circuit_column(n, 2), d.negate()),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SparseSystem::new(n, polys)
}

/// The degree-one `β_i` with `g_i = c·(x^{a_{i+2}} - β_i(x_1^2))`.
pub fn betas<K: Ring>(g: &SparseSystem<K>) -> Result<Vec<UniPoly<K>>> {
    let n = g.n;
    if n < 2 {
        return Err(Error::InvalidInput("G_eps needs n >= 2".into()));
    }
    g.polys
        .iter()
        .enumerate()
        .map(|(idx, f)| {
            let i = idx + 1;
            let lead_exp = circuit_column(n, i + 2);
            let malformed = || Error::InvalidInput(format!("polynomial {i} does not have the G_eps shape"));
            if f.terms.len() != 3 {
                return Err(malformed());
            }
            let lead = f.coeff(&lead_exp).ok_or_else(malformed)?;
            let c = f.coeff(&circuit_column(n, 1)).ok_or_else(malformed)?;
            let d = f.coeff(&circuit_column(n, 2)).ok_or_else(malformed)?;
            Ok(UniPoly::new(vec![
                c.negate().try_div(lead)?,
                d.negate().try_div(lead)?,
            ]))
        })
        .collect()
}

/// `R_n(u) = u·β_2²β_4²⋯ - β_1²β_3²⋯`, whose roots are the values
/// `u = ζ_1²` at roots `ζ` of `G_ε`.
pub fn eliminate_r_n<K: Ring>(g: &SparseSystem<K>) -> Result<UniPoly<K>> {
    let b = betas(g)?;
    let one = b[0].coeffs()[0].one_like();
    let mut even = UniPoly::new(vec![one.zero_like(), one.clone()]);
    let mut odd = UniPoly::constant(one);
    for (idx, beta) in b.iter().enumerate() {
        let sq = beta.times(beta);
        if (idx + 1) % 2 == 0 {
            even = even.times(&sq);
        } else {
            odd = odd.times(&sq);
        }
    }
    Ok(even.minus(&odd))
}

/// `ζ_n = β_n(u)`, then `ζ_i = β_i(u)/ζ_{i+1}` down to `ζ_1`. No square
/// root is taken: at a root of `R_n` the product formula for `ζ_1`
/// satisfies `ζ_1² = u` automatically.
pub fn back_substitute<K: Ring>(betas: &[UniPoly<K>], u: &K) -> Result<Vec<K>> {
    let n = betas.len();
    let vals: Vec<K> = betas.iter().map(|b| b.eval(u)).collect();
    let mut z = vec![u.zero_like(); n];
    z[n - 1] = vals[n - 1].clone();
    for i in (0..n - 1).rev() {
        z[i] = vals[i].try_div(&z[i + 1])?;
    }
    Ok(z)
}
