//! Field specifications, valuation and generalized phase.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::local::{LocalCtx, LocalField, DEFAULT_PRECISION, EXACT};
use super::{format_rational, parse_rational, PAdic, Rational, Series};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    R,
    Qp,
    Fpt,
}

/// `{"field": "R" | "Qp" | "Fpt", "p": <prime>, "precision": <int>}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub field: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

impl FieldSpec {
    pub fn real() -> Self {
        FieldSpec {
            field: FieldKind::R,
            p: None,
            precision: None,
        }
    }

    pub fn qp(p: u64, precision: u32) -> Self {
        FieldSpec {
            field: FieldKind::Qp,
            p: Some(p),
            precision: Some(precision),
        }
    }

    pub fn fpt(p: u64, precision: u32) -> Self {
        FieldSpec {
            field: FieldKind::Fpt,
            p: Some(p),
            precision: Some(precision),
        }
    }

    /// Local context for the non-Archimedean kinds.
    pub fn local_ctx(&self) -> Result<LocalCtx> {
        match self.field {
            FieldKind::R => Err(Error::InvalidInput("the real field has no residue field".into())),
            _ => {
                let p = self
                    .p
                    .ok_or_else(|| Error::InvalidInput("field spec needs a prime p".into()))?;
                LocalCtx::new(p, self.precision.unwrap_or(DEFAULT_PRECISION))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.field != FieldKind::R {
            self.local_ctx()?;
        }
        Ok(())
    }

    /// Parses an element literal of this field.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        Ok(match self.field {
            FieldKind::R => FieldElement::Real(parse_rational(s)?),
            FieldKind::Qp => FieldElement::PAdic(PAdic::parse(self.local_ctx()?, s)?),
            FieldKind::Fpt => FieldElement::Series(Series::parse(self.local_ctx()?, s)?),
        })
    }
}

/// An element of one of the supported local fields.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldElement {
    Real(Rational),
    PAdic(PAdic),
    Series(Series),
}

/// `ord x`: symbolic for the reals (only `|x|` is kept, since only
/// comparisons of `-log|x|` are ever needed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// `-log |x|`, stored as `|x|`.
    NegLogAbs(String),
    Valuation(i64),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Sign(i8),
    Residue(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationPhase {
    pub ord: Order,
    /// `None` exactly for zero.
    pub phase: Option<Phase>,
}

impl ValuationPhase {
    fn zero() -> Self {
        ValuationPhase {
            ord: Order::Infinite,
            phase: None,
        }
    }
}

fn local_vp<K: LocalField>(x: &K) -> Result<ValuationPhase> {
    match (x.valuation(), x.residue()) {
        (Some(v), Some(r)) => Ok(ValuationPhase {
            ord: Order::Valuation(v),
            phase: Some(Phase::Residue(r)),
        }),
        _ if x.abs_precision() == EXACT => Ok(ValuationPhase::zero()),
        _ => Err(Error::Precision(format!(
            "{} has no known nonzero digit",
            x.literal()
        ))),
    }
}

/// Valuation and generalized phase of `x`.
pub fn valuation_and_phase(x: &FieldElement) -> Result<ValuationPhase> {
    match x {
        FieldElement::Real(q) => {
            if q.is_zero() {
                return Ok(ValuationPhase::zero());
            }
            Ok(ValuationPhase {
                ord: Order::NegLogAbs(format_rational(&q.abs())),
                phase: Some(Phase::Sign(if q.is_negative() { -1 } else { 1 })),
            })
        }
        FieldElement::PAdic(a) => local_vp(a),
        FieldElement::Series(s) => local_vp(s),
    }
}
