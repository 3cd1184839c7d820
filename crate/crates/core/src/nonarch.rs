//! Root counting over non-Archimedean fields through valuation-lifted
//! Newton polytopes and their lower binomial systems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::ffield::{mul_mod, pow_mod_signed};
use crate::numeric::{FieldKind, FieldSpec, LocalField, PAdic, Rational, Ring, Series};
use crate::polyhedra::linalg::{det_bareiss, solve_affine};
use crate::polyhedra::{lower_facets, LiftedSupport, Point, Support};

/// Sparse Laurent polynomial in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePoly<K> {
    pub n: usize,
    /// Distinct exponents, each with its coefficient.
    pub terms: Vec<(Point, K)>,
}

pub type ValuedPolynomial<K> = SparsePoly<K>;

impl<K: Ring> SparsePoly<K> {
    /// Merges repeated exponents and drops exactly cancelled terms; keeps
    /// the first-seen order.
    pub fn new(n: usize, terms: Vec<(Point, K)>) -> Result<Self> {
        let mut out: Vec<(Point, K)> = Vec::with_capacity(terms.len());
        for (a, c) in terms {
            if a.len() != n {
                return Err(Error::Dimension(format!("exponent {a:?} is not in Z^{n}")));
            }
            match out.iter_mut().find(|(b, _)| *b == a) {
                Some((_, d)) => *d = d.plus(&c),
                None => out.push((a, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(SparsePoly { n, terms: out })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Result<Support> {
        Support::new(self.n, self.terms.iter().map(|(a, _)| a.clone()).collect())
    }

    pub fn coeffs(&self) -> Vec<K> {
        self.terms.iter().map(|(_, c)| c.clone()).collect()
    }

    pub fn coeff(&self, a: &[i64]) -> Option<&K> {
        self.terms.iter().find(|(b, _)| b == a).map(|(_, c)| c)
    }

    /// Value at `x`; negative exponents need invertible coordinates.
    pub fn eval(&self, x: &[K]) -> Result<K> {
        let mut acc: Option<K> = None;
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(a) {
                if e != 0 {
                    t = t.times(&xi.powi(e)?);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(s) => s.plus(&t),
            });
        }
        acc.ok_or(Error::ZeroPolynomial)
    }

    /// `x^b · f`.
    pub fn times_monomial(&self, b: &[i64]) -> Self {
        SparsePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.iter().zip(b).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&K) -> U) -> SparsePoly<U> {
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), f(c))).collect(),
        }
    }
}

fn coeff_valuation<K: LocalField>(c: &K) -> Result<i64> {
    c.valuation()
        .ok_or_else(|| Error::Precision(format!("coefficient {} vanishes at working precision", c.literal())))
}

/// Exponents lifted by the valuations of their coefficients.
pub fn newton_polytope_val<K: LocalField>(f: &ValuedPolynomial<K>) -> Result<LiftedSupport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lifting = f
        .terms
        .iter()
        .map(|(_, c)| Ok(Rational::from_integer(coeff_valuation(c)?.into())))
        .collect::<Result<Vec<_>>>()?;
    LiftedSupport::new(f.support()?, lifting)
}

fn weight(a: &[i64], ord: i64, normal: &[BigInt]) -> BigInt {
    let n = a.len();
    a.iter().zip(&normal[..n]).map(|(x, v)| BigInt::from(*x) * v).sum::<BigInt>() + BigInt::from(ord) * &normal[n]
}

/// Terms of each polynomial on which `(v, w)·(a, ord c)` is minimal.
pub fn lower_system_for_normal<K: LocalField>(
    system: &[ValuedPolynomial<K>],
    normal: &[BigInt],
) -> Result<Vec<ValuedPolynomial<K>>> {
    let n = system.first().map(|f| f.n).ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    if normal.len() != n + 1 {
        return Err(Error::Dimension(format!("normal has {} entries, expected {}", normal.len(), n + 1)));
    }
    if !normal[n].is_positive() {
        return Err(Error::InvalidInput("normal is not a lower normal (last entry must be positive)".into()));
    }
    system
        .iter()
        .map(|f| {
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let w: Vec<BigInt> = f
                .terms
                .iter()
                .map(|(a, c)| Ok(weight(a, coeff_valuation(c)?, normal)))
                .collect::<Result<_>>()?;
            let min = w.iter().min().expect("nonempty").clone();
            Ok(SparsePoly {
                n,
                terms: f
                    .terms
                    .iter()
                    .zip(&w)
                    .filter(|(_, x)| **x == min)
                    .map(|(t, _)| t.clone())
                    .collect(),
            })
        })
        .collect()
}

/// `x^{d_i} = γ_i` for each row.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialSystem<K> {
    pub exponents: Vec<Vec<i64>>,
    pub rhs: Vec<K>,
}

impl<K: LocalField> BinomialSystem<K> {
    /// From binomials `c_1 x^{a_1} + c_2 x^{a_2}`: `x^{a_1 - a_2} = -c_2/c_1`.
    pub fn from_binomials(polys: &[ValuedPolynomial<K>]) -> Result<Self> {
        let mut exponents = Vec::new();
        let mut rhs = Vec::new();
        for f in polys {
            if f.terms.len() != 2 {
                return Err(Error::InvalidInput(format!("lower polynomial has {} terms, not 2", f.terms.len())));
            }
            let (a1, c1) = &f.terms[0];
            let (a2, c2) = &f.terms[1];
            exponents.push(a1.iter().zip(a2).map(|(x, y)| x - y).collect());
            rhs.push(c2.negate().try_div(c1)?);
        }
        Ok(BinomialSystem { exponents, rhs })
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&self.exponents.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>())
    }
}

/// Roots with `ord ζ = valuation` and phase `phase`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootClass {
    pub valuation: Vec<i64>,
    pub phase: Vec<u64>,
    pub count: usize,
}

impl RootClass {
    /// Leading form of each coordinate, e.g. `p^-1*(1+O(p))`.
    pub fn forms(&self, rho: &str) -> Vec<String> {
        self.valuation
            .iter()
            .zip(&self.phase)
            .map(|(v, th)| match v {
                0 => format!("{th}+O({rho})"),
                1 => format!("{rho}*({th}+O({rho}))"),
                _ => format!("{rho}^{v}*({th}+O({rho}))"),
            })
            .collect()
    }
}

fn to_rows(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

fn integer_solution(m: &[Vec<i64>], b: &[Rational]) -> Result<Option<Vec<i64>>> {
    let n = m.len();
    let sol = solve_affine(&to_rows(m), b, n).ok_or(Error::SingularMatrix)?;
    if !sol.kernel.is_empty() {
        return Err(Error::SingularMatrix);
    }
    let mut out = Vec::with_capacity(n);
    for q in sol.particular {
        if !q.is_integer() {
            return Ok(None);
        }
        out.push(q.to_integer().to_i64().ok_or_else(|| Error::Guardrail("valuation out of range".into()))?);
    }
    Ok(Some(out))
}

/// `Π_j z_j^{m_ij}` in F_p.
fn monomial_residue(row: &[i64], z: &[u64], p: u64) -> u64 {
    row.iter().zip(z).fold(1, |acc, (&e, &zj)| mul_mod(acc, pow_mod_signed(zj, e, p), p))
}

const PHASE_ENUMERATION_LIMIT: u64 = 1 << 20;

/// Root classes of a binomial system over the field: the valuation part
/// from `D v = ord γ`, the phase part from `θ^D = γ̄` in `F_p^*`. With `p`
/// not dividing `det D` every residue solution lifts to exactly one root.
///
/// With `theta` given, returns the single class with that phase (count 0
/// or 1); otherwise all classes.
pub fn solve_binomial_system_phase<K: LocalField>(
    b: &BinomialSystem<K>,
    theta: Option<&[u64]>,
) -> Result<Vec<RootClass>> {
    let n = b.exponents.len();
    if n == 0 || b.rhs.len() != n || b.exponents.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("binomial system must be square".into()));
    }
    let det = b.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let ctx = b.rhs[0].ctx();
    let p = ctx.p;
    if (&det % BigInt::from(p)).is_zero() {
        return Err(Error::Unsupported(format!("residue characteristic {p} divides det = {det}")));
    }
    let ords: Vec<Rational> = b
        .rhs
        .iter()
        .map(|g| Ok(Rational::from_integer(coeff_valuation(g)?.into())))
        .collect::<Result<_>>()?;
    let Some(v) = integer_solution(&b.exponents, &ords)? else {
        return Ok(Vec::new());
    };
    let gbar: Vec<u64> = b.rhs.iter().map(|g| g.residue().expect("nonzero")).collect();
    let satisfies = |z: &[u64]| {
        z.iter().all(|&x| x % p != 0)
            && b.exponents.iter().zip(&gbar).all(|(row, g)| monomial_residue(row, z, p) == *g)
    };
    if let Some(th) = theta {
        if th.len() != n {
            return Err(Error::Dimension("phase vector has the wrong length".into()));
        }
        let th: Vec<u64> = th.iter().map(|x| x % p).collect();
        let count = usize::from(satisfies(&th));
        return Ok(vec![RootClass {
            valuation: v,
            phase: th,
            count,
        }]);
    }
    if det.abs().is_one() {
        // unimodular: θ = γ̄^{D^{-1}}
        let mut inv = vec![vec![0i64; n]; n];
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            let col = integer_solution(&b.exponents, &e)?.ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                inv[j][i] = col[j];
            }
        }
        let th: Vec<u64> = inv.iter().map(|row| monomial_residue(row, &gbar, p)).collect();
        assert!(satisfies(&th), "unimodular phase solution must satisfy the residue system");
        return Ok(vec![RootClass {
            valuation: v,
            phase: th,
            count: 1,
        }]);
    }
    let total = (p - 1).checked_pow(n as u32).filter(|&t| t <= PHASE_ENUMERATION_LIMIT);
    if total.is_none() {
        return Err(Error::Guardrail("too many residue vectors to enumerate".into()));
    }
    let mut out = Vec::new();
    let mut z = vec![1u64; n];
    loop {
        if satisfies(&z) {
            out.push(RootClass {
                valuation: v.clone(),
                phase: z.clone(),
                count: 1,
            });
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            z[i] += 1;
            if z[i] < p {
                break;
            }
            z[i] = 1;
            i += 1;
        }
    }
}

/// A lower facet the counting theorem does not cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inapplicable {
    pub normal: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetClass {
    pub normal: Vec<String>,
    pub class: RootClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationPhaseCount {
    pub classes: Vec<FacetClass>,
    pub total: usize,
    pub inapplicable: Vec<Inapplicable>,
    /// Valuation vectors produced by more than one counted facet.
    pub collisions: Vec<Vec<i64>>,
}

/// Roots of `system` in `L^n` with phase `θ`, facet by facet: every lower
/// facet whose lower system is binomial with a volume-1 projection
/// contributes its binomial root class; other facets in which every
/// polynomial keeps two or more terms are reported as inapplicable.
pub fn count_roots_by_valuation_phase<K: LocalField>(
    system: &[ValuedPolynomial<K>],
    theta: &[u64],
) -> Result<ValuationPhaseCount> {
    let n = system.first().map(|f| f.n).ok_or_else(|| Error::InvalidInput("empty system".into()))?;
    if system.len() != n || theta.len() != n {
        return Err(Error::Dimension(format!("{} polynomials and {} phases for n = {n}", system.len(), theta.len())));
    }
    let lifted: Vec<LiftedSupport> = system.iter().map(newton_polytope_val).collect::<Result<_>>()?;
    let facets = lower_facets(&lifted)?;
    let mut classes = Vec::new();
    let mut inapplicable = Vec::new();
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for f in facets {
        let normal: Vec<String> = f.normal.iter().map(|x| x.to_string()).collect();
        if f.faces.iter().any(|face| face.len() < 2) {
            // some lower polynomial is a monomial: no roots in the torus
            continue;
        }
        if f.faces.iter().any(|face| face.len() > 2) {
            inapplicable.push(Inapplicable {
                normal,
                reason: "lower system is not binomial".into(),
            });
            continue;
        }
        let lower = lower_system_for_normal(system, &f.normal)?;
        let b = BinomialSystem::from_binomials(&lower)?;
        let vol = b.det().abs();
        if !vol.is_one() {
            inapplicable.push(Inapplicable {
                normal,
                reason: format!("projected cell has volume {vol}, not 1"),
            });
            continue;
        }
        for class in solve_binomial_system_phase(&b, Some(theta))? {
            if class.count > 0 {
                *seen.entry(class.valuation.clone()).or_insert(0) += 1;
            }
            classes.push(FacetClass {
                normal: normal.clone(),
                class,
            });
        }
    }
    let total = classes.iter().map(|c| c.class.count).sum();
    let collisions = seen.into_iter().filter(|(_, k)| *k > 1).map(|(v, _)| v).collect();
    Ok(ValuationPhaseCount {
        classes,
        total,
        inapplicable,
        collisions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

/// `{"field": {...}, "n": int, "polys": [{"terms": [{"exp": [...], "coeff": "..."}]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub field: FieldSpec,
    pub n: usize,
    pub polys: Vec<PolyJson>,
}

/// A parsed system over one of the supported fields.
#[derive(Debug, Clone, PartialEq)]
pub enum TypedSystem {
    Real(Vec<SparsePoly<Rational>>),
    PAdic(Vec<SparsePoly<PAdic>>),
    Series(Vec<SparsePoly<Series>>),
}

impl SystemJson {
    pub fn from_polys<K: Ring>(field: FieldSpec, polys: &[SparsePoly<K>], literal: impl Fn(&K) -> String) -> Self {
        SystemJson {
            field,
            n: polys.first().map(|f| f.n).unwrap_or(0),
            polys: polys
                .iter()
                .map(|f| PolyJson {
                    terms: f
                        .terms
                        .iter()
                        .map(|(a, c)| TermJson {
                            exp: a.clone(),
                            coeff: literal(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    fn parse_with<K: Ring>(&self, parse: impl Fn(&str) -> Result<K>) -> Result<Vec<SparsePoly<K>>> {
        self.polys
            .iter()
            .map(|p| {
                let terms = p
                    .terms
                    .iter()
                    .map(|t| Ok((t.exp.clone(), parse(&t.coeff)?)))
                    .collect::<Result<Vec<_>>>()?;
                SparsePoly::new(self.n, terms)
            })
            .collect()
    }

    pub fn to_typed(&self) -> Result<TypedSystem> {
        self.field.validate()?;
        if self.n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        Ok(match self.field.field {
            FieldKind::R => TypedSystem::Real(self.parse_with(crate::numeric::parse_rational)?),
            FieldKind::Qp => {
                let ctx = self.field.local_ctx()?;
                TypedSystem::PAdic(self.parse_with(|s| PAdic::parse(ctx, s))?)
            }
            FieldKind::Fpt => {
                let ctx = self.field.local_ctx()?;
                TypedSystem::Series(self.parse_with(|s| Series::parse(ctx, s))?)
            }
        })
    }
}
