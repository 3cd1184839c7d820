//! Exact scalars, polynomials and local fields.

pub mod ffield;
pub mod interval;
pub mod local;
pub mod padic;
pub mod phase;
pub mod poly;
pub mod ring;
pub mod series;
pub mod sturm;

pub type Rational = num_rational::BigRational;

pub use interval::Interval;
pub use local::{LocalCtx, LocalField, PrecisionPolicy};
pub use padic::PAdic;
pub use phase::{valuation_and_phase, FieldElement, FieldKind, FieldSpec};
pub use poly::{from_roots, qpoly, UniPoly};
pub use series::Series;
pub use ring::{format_rational, parse_rational, Ring};
