use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants are grouped so that a front end can map them onto a small
/// set of outcomes: bad input, precision exhaustion ("undecided"), and
/// guardrails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial")]
    ZeroPolynomial,

    /// Not enough digits are known to decide the requested quantity.
    #[error("insufficient precision: {0}")]
    Precision(String),

    /// The search could not settle the answer within its bounds.
    #[error("undecided after precision {precision}: {reason} (partial count {partial})")]
    Undecided {
        precision: u32,
        partial: usize,
        reason: String,
    },

    #[error("not Hensel-liftable: {0}")]
    NotHenselLiftable(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    /// A lower facet of a lifted configuration decomposes with summand
    /// dimensions that do not add up to `n`.
    #[error("lifting tuple is not mixed: facet with normal {normal:?} has summand dimensions {dims:?}")]
    NotMixed { normal: Vec<String>, dims: Vec<usize> },

    #[error("non-simplicial cell with points {0:?}")]
    NonSimplicialCell(Vec<usize>),

    #[error("not a circuit: {0}")]
    NotCircuit(String),

    #[error("singular exponent matrix")]
    SingularMatrix,

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A size or precision ceiling was hit.
    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
}

pub type Result<T> = std::result::Result<T, Error>;
