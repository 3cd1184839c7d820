//! Per-instance certification of the root count of `G_ε`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::system::{back_substitute, betas, eliminate_r_n, gen_g_eps, SparseSystem};
use crate::error::{Error, Result};
use crate::numeric::local::{local_roots, PhaseFilter};
use crate::numeric::phase::Phase;
use crate::numeric::sturm::{isolate_real_roots, refine_root, SturmSequence};
use crate::numeric::{
    format_rational, FieldElement, FieldKind, FieldSpec, Interval, LocalCtx, LocalField, PrecisionPolicy,
    Rational, UniPoly,
};

/// Digits of cancellation demanded of a residual before it counts as zero.
pub const CHECK_DIGITS: i64 = 8;
/// Relative width `2^-64` of refined real enclosures.
const REFINE_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Refuted,
    Undecided,
}

impl Status {
    /// CLI exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Refuted => 1,
            Status::Undecided => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateReport {
    /// Interval `[lo, hi]` over the reals, a truncated literal otherwise.
    pub enclosure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    pub phase: Option<Phase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub u: CoordinateReport,
    /// `None` when `u` gives no root in the field.
    pub coordinates: Option<Vec<CoordinateReport>>,
    pub all_phase_one: bool,
    pub residual_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub field: FieldSpec,
    pub eps: String,
    pub target: usize,
    /// Present only when every step of the method chain completed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<usize>,
    pub status: Status,
    pub method: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub roots: Vec<RootReport>,
    pub notes: Vec<String>,
}

pub(crate) fn phase_one(c: &CoordinateReport) -> bool {
    matches!(c.phase, Some(Phase::Sign(1)) | Some(Phase::Residue(1)))
}

pub(crate) fn interval_report(iv: &Interval) -> CoordinateReport {
    let phase = match iv.strict_sign() {
        Some(Ordering::Greater) => Some(Phase::Sign(1)),
        Some(Ordering::Less) => Some(Phase::Sign(-1)),
        _ => None,
    };
    CoordinateReport {
        enclosure: iv.to_string(),
        valuation: None,
        phase,
    }
}

pub(crate) fn local_report<K: LocalField>(x: &K) -> CoordinateReport {
    CoordinateReport {
        enclosure: x.literal(),
        valuation: x.valuation(),
        phase: x.residue().map(Phase::Residue),
    }
}

/// Isolating intervals of the distinct real roots, none straddling 0.
fn signed_isolation(f: &UniPoly<Rational>, s: &SturmSequence) -> Result<Vec<Interval>> {
    let zero = Rational::zero();
    let mut out = Vec::new();
    for iv in isolate_real_roots(f)? {
        if iv.lo.is_negative() && iv.hi.is_positive() {
            if s.count(Some(&iv.lo), Some(&zero)) == 1 {
                out.push(Interval::new(iv.lo, zero.clone()));
            } else {
                out.push(Interval::new(zero.clone(), iv.hi));
            }
        } else {
            out.push(iv);
        }
    }
    Ok(out)
}

/// Real roots of a `G_ε`-shaped system, with positive `u` back-substituted.
pub fn certify_circuit_real(g: &SparseSystem<Rational>) -> Result<(Vec<RootReport>, Vec<String>)> {
    let r = eliminate_r_n(g)?;
    let b = betas(g)?;
    let mut notes = Vec::new();
    if r.squarefree_part()?.degree() != r.degree() {
        notes.push("R_n has a repeated root; repeated roots are degenerate".into());
    }
    let s = SturmSequence::new(&r)?;
    let positive = s.count(Some(&Rational::zero()), None);
    let mut roots = Vec::new();
    for iv in signed_isolation(&r, &s)? {
        if !iv.lo.is_negative() && iv.hi.is_positive() {
            let scale = iv.hi.clone() / Rational::from_integer(num_bigint::BigInt::one() << REFINE_BITS);
            let iv = refine_root(&s, &iv, &scale);
            let zetas = back_substitute(&b.iter().map(|p| p.map(|c| Interval::point(c.clone()))).collect::<Vec<_>>(), &iv)?;
            let gi = interval_system(g);
            let residual_ok = gi.eval(&zetas)?.iter().all(|v| v.contains_zero());
            let coords: Vec<CoordinateReport> = zetas.iter().map(interval_report).collect();
            roots.push(RootReport {
                u: interval_report(&iv),
                all_phase_one: coords.iter().all(phase_one),
                coordinates: Some(coords),
                residual_ok,
                note: None,
            });
        } else {
            roots.push(RootReport {
                u: interval_report(&iv),
                coordinates: None,
                all_phase_one: false,
                residual_ok: false,
                note: Some("u < 0, so u = x1^2 has no real solution".into()),
            });
        }
    }
    let isolated = roots.iter().filter(|r| r.coordinates.is_some()).count();
    if isolated != positive {
        return Err(Error::Guardrail(format!(
            "isolation found {isolated} positive roots but the Sturm count is {positive}"
        )));
    }
    notes.push(format!("Sturm count of R_n on (0, inf): {positive}"));
    Ok((roots, notes))
}

fn interval_system(g: &SparseSystem<Rational>) -> SparseSystem<Interval> {
    SparseSystem {
        n: g.n,
        polys: g.polys.iter().map(|f| f.map(|c| Interval::point(c.clone()))).collect(),
    }
}

/// `ord` of `value` when it cancels at least `CHECK_DIGITS` digits below
/// the smallest term valuation `floor`, or is zero at that precision.
fn cancels<K: LocalField>(value: &K, floor: i64) -> Result<bool> {
    match value.valuation() {
        Some(v) => Ok(v >= floor + CHECK_DIGITS),
        None if value.abs_precision() >= floor + CHECK_DIGITS => Ok(true),
        None => Err(Error::Precision(format!(
            "residual {} is not resolved at this precision",
            value.literal()
        ))),
    }
}

pub(crate) fn local_residual_ok<K: LocalField>(g: &SparseSystem<K>, z: &[K]) -> Result<bool> {
    for f in &g.polys {
        let mut floor = i64::MAX;
        let mut sum = z[0].zero_like();
        for (a, c) in &f.terms {
            let mut t = c.clone();
            for (zi, &e) in z.iter().zip(a) {
                t = t.times(&zi.powi(e)?);
            }
            let v = t
                .valuation()
                .ok_or_else(|| Error::Precision("term of unknown valuation".into()))?;
            floor = floor.min(v);
            sum = sum.plus(&t);
        }
        if !cancels(&sum, floor)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roots in the field of a `G_ε`-shaped system.
pub fn certify_circuit_local<K: LocalField>(g: &SparseSystem<K>) -> Result<Vec<RootReport>> {
    let r = eliminate_r_n(g)?;
    let b = betas(g)?;
    let mut out = Vec::new();
    for root in local_roots(&r, PhaseFilter::Any)? {
        let u = &root.value;
        let z = back_substitute(&b, u)?;
        let coords: Vec<CoordinateReport> = z.iter().map(local_report).collect();
        if coords.iter().any(|c| c.valuation.is_none()) {
            return Err(Error::Precision("a coordinate vanishes at working precision".into()));
        }
        let square = cancels(&z[0].times(&z[0]).minus(u), root.valuation)?;
        let residual_ok = square && local_residual_ok(g, &z)?;
        out.push(RootReport {
            u: local_report(u),
            all_phase_one: coords.iter().all(phase_one),
            coordinates: Some(coords),
            residual_ok,
            note: (!square).then(|| "x1^2 = u fails at working precision".into()),
        });
    }
    Ok(out)
}

fn finish(n: usize, field: FieldSpec, eps: &str, method: Vec<String>, precision: Option<u32>, roots: Vec<RootReport>, notes: Vec<String>) -> VerificationReport {
    let found = roots.iter().filter(|r| r.all_phase_one && r.residual_ok).count();
    let target = n + 1;
    VerificationReport {
        n,
        field,
        eps: eps.to_string(),
        target,
        certified: Some(found),
        status: if found == target { Status::Certified } else { Status::Refuted },
        method,
        precision,
        roots,
        notes,
    }
}

/// `gen_g_eps → eliminate_r_n → root isolation → back_substitute → count`.
///
/// The report says whether `G_ε` has exactly `n+1` non-degenerate roots
/// with every coordinate of phase 1 for this particular `ε`.
pub fn verify_family(n: usize, field: FieldSpec, eps: &str, policy: PrecisionPolicy) -> Result<VerificationReport> {
    field.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    match field.field {
        FieldKind::R => {
            let e = match field.parse_element(eps)? {
                FieldElement::Real(q) => q,
                _ => unreachable!(),
            };
            if !e.is_positive() {
                return Err(Error::InvalidInput("eps must be positive (phase 1)".into()));
            }
            let (roots, notes) = certify_circuit_real(&gen_g_eps(n, &e)?)?;
            let method = vec![
                "elimination: R_n(u) = u*prod(beta_even^2) - prod(beta_odd^2)".into(),
                "Sturm isolation of positive roots of R_n".into(),
                "interval back-substitution with sign and residual checks".into(),
            ];
            Ok(finish(n, field, &format_rational(&e), method, None, roots, notes))
        }
        FieldKind::Qp | FieldKind::Fpt => {
            let initial = field.precision.unwrap_or(policy.initial);
            let policy = PrecisionPolicy {
                initial,
                ceiling: policy.ceiling.max(initial),
            };
            let mut used = initial;
            let res = policy.run(|prec| {
                used = prec;
                let spec = FieldSpec { precision: Some(prec), ..field };
                let e = spec.parse_element(eps)?;
                let roots = match &e {
                    FieldElement::PAdic(x) => {
                        check_local_eps(x)?;
                        certify_circuit_local(&gen_g_eps(n, x)?)?
                    }
                    FieldElement::Series(x) => {
                        check_local_eps(x)?;
                        certify_circuit_local(&gen_g_eps(n, x)?)?
                    }
                    FieldElement::Real(_) => unreachable!(),
                };
                Ok(roots)
            });
            let method = vec![
                "elimination: R_n(u) = u*prod(beta_even^2) - prod(beta_odd^2)".into(),
                "Newton polygon and Hensel lifting of roots of R_n".into(),
                "back-substitution with valuation, phase and residual checks".into(),
            ];
            match res {
                Ok(roots) => Ok(finish(n, field, eps, method, Some(used), roots, Vec::new())),
                Err(Error::Undecided { reason, .. }) | Err(Error::Precision(reason)) => Ok(VerificationReport {
                    n,
                    field,
                    eps: eps.to_string(),
                    target: n + 1,
                    certified: None,
                    status: Status::Undecided,
                    method,
                    precision: Some(used),
                    roots: Vec::new(),
                    notes: vec![reason],
                }),
                Err(e) => Err(e),
            }
        }
    }
}

pub(crate) fn check_local_eps<K: LocalField>(e: &K) -> Result<()> {
    match e.residue() {
        Some(1) => Ok(()),
        Some(r) => Err(Error::InvalidInput(format!("eps must have phase 1, found {r}"))),
        None => Err(Error::InvalidInput("eps must be nonzero".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub ord: i64,
    pub eps: String,
    pub status: Status,
    pub certified: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub field: FieldSpec,
    pub entries: Vec<SweepEntry>,
    /// Smallest tested `ord ε` giving `n+1` phase-1 roots.
    pub smallest_certified_ord: Option<i64>,
}

/// Runs `verify_family` for `ε = ρ^j`, `1 <= j <= max_ord` (`ρ = 2^{-1}`
/// over the reals, so that `ord ε = j log 2`).
pub fn sweep_eps(n: usize, field: FieldSpec, max_ord: i64, policy: PrecisionPolicy) -> Result<SweepReport> {
    let mut entries = Vec::new();
    for j in 1..=max_ord {
        let eps = match field.field {
            FieldKind::R => format_rational(&Rational::new(One::one(), num_bigint::BigInt::one() << j as usize)),
            FieldKind::Qp => {
                let ctx: LocalCtx = field.local_ctx()?;
                format!("{}^{j}*1", ctx.p)
            }
            FieldKind::Fpt => format!("t^{j}"),
        };
        let r = verify_family(n, field, &eps, policy)?;
        entries.push(SweepEntry {
            ord: j,
            eps,
            status: r.status,
            certified: r.certified,
        });
    }
    let smallest_certified_ord = entries.iter().find(|e| e.status == Status::Certified).map(|e| e.ord);
    Ok(SweepReport {
        n,
        field,
        entries,
        smallest_certified_ord,
    })
}
