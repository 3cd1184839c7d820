use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::numeric::{format_rational, Rational};

/// Values that form an ordered vector space over Q. Right-hand sides of
/// the exact LP and lifting heights live in such a space.
pub trait Lin: Clone + Ord + fmt::Debug {
    fn origin() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(q: &Rational) -> Self;
}

impl Lin for Rational {
    fn origin() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Lifting value `value + perturbation·δ` with `δ` a positive
/// infinitesimal, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Height {
    pub value: Rational,
    pub perturbation: Rational,
}

impl Height {
    pub fn new(value: Rational, perturbation: Rational) -> Self {
        Height { value, perturbation }
    }

    pub fn exact(value: Rational) -> Self {
        Height {
            value,
            perturbation: Rational::zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.perturbation.is_zero()
    }
}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.perturbation.cmp(&other.perturbation))
    }
}

impl fmt::Debug for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.perturbation.is_zero() {
            write!(f, "{}", format_rational(&self.value))
        } else {
            write!(
                f,
                "{}+{}δ",
                format_rational(&self.value),
                format_rational(&self.perturbation)
            )
        }
    }
}

impl Lin for Height {
    fn origin() -> Self {
        Height::exact(Rational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        Height {
            value: &self.value + &other.value,
            perturbation: &self.perturbation + &other.perturbation,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Height {
            value: &self.value - &other.value,
            perturbation: &self.perturbation - &other.perturbation,
        }
    }
    fn scale(&self, c: &Rational) -> Self {
        Height {
            value: &self.value * c,
            perturbation: &self.perturbation * c,
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Height::exact(q.clone())
    }
}
