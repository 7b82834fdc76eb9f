//! Trace masses with a distinguished infinity.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{cmp_scalar, Scalar};

/// A nonnegative trace weight, possibly infinite.
///
/// `∞ + x = ∞` and `∞` is above every finite value. Products `∞·0` are an
/// error rather than zero; subtraction `∞ − ∞` is never attempted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtWeight<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtWeight<T> {
    pub fn zero() -> Self {
        ExtWeight::Finite(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtWeight::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtWeight::Finite(v) if v.is_zero())
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtWeight::Finite(v) => Some(v),
            ExtWeight::Infinite => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtWeight::Finite(a), ExtWeight::Finite(b)) => ExtWeight::Finite(a.clone() + b.clone()),
            _ => ExtWeight::Infinite,
        }
    }

    pub fn add_finite(&self, other: &T) -> Self {
        match self {
            ExtWeight::Finite(a) => ExtWeight::Finite(a.clone() + other.clone()),
            ExtWeight::Infinite => ExtWeight::Infinite,
        }
    }

    /// `self − other` for finite `other`; `∞ − x = ∞`.
    pub fn sub_finite(&self, other: &T) -> Self {
        match self {
            ExtWeight::Finite(a) => ExtWeight::Finite(a.clone() - other.clone()),
            ExtWeight::Infinite => ExtWeight::Infinite,
        }
    }

    /// Multiplies by a nonnegative scalar. `∞·0` is rejected.
    pub fn scale(&self, factor: &T) -> Result<Self> {
        match self {
            ExtWeight::Finite(a) => Ok(ExtWeight::Finite(a.clone() * factor.clone())),
            ExtWeight::Infinite if factor.is_zero() => Err(Error::InfiniteTimesZero),
            ExtWeight::Infinite => Ok(ExtWeight::Infinite),
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn lt_finite(&self, v: &T) -> bool {
        matches!(self, ExtWeight::Finite(a) if a < v)
    }

    pub fn map<U, F: FnOnce(&T) -> U>(&self, f: F) -> ExtWeight<U> {
        match self {
            ExtWeight::Finite(a) => ExtWeight::Finite(f(a)),
            ExtWeight::Infinite => ExtWeight::Infinite,
        }
    }
}

impl<T: Scalar> PartialOrd for ExtWeight<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (ExtWeight::Finite(a), ExtWeight::Finite(b)) => cmp_scalar(a, b),
            (ExtWeight::Finite(_), ExtWeight::Infinite) => Ordering::Less,
            (ExtWeight::Infinite, ExtWeight::Finite(_)) => Ordering::Greater,
            (ExtWeight::Infinite, ExtWeight::Infinite) => Ordering::Equal,
        })
    }
}

impl<T: fmt::Display> fmt::Display for ExtWeight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtWeight::Finite(v) => write!(f, "{v}"),
            ExtWeight::Infinite => write!(f, "inf"),
        }
    }
}

/// Extended real used for signed traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtReal<T> {
    Finite(T),
    PosInf,
    NegInf,
}

impl<T: Scalar> ExtReal<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExtReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::NegInf => write!(f, "-inf"),
        }
    }
}

/// Integer multiplicity, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl Mult {
    pub fn is_infinite(self) -> bool {
        matches!(self, Mult::Infinite)
    }

    pub fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a + b),
            _ => Mult::Infinite,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(k) => Some(k),
            Mult::Infinite => None,
        }
    }
}

impl PartialOrd for Mult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mult {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => a.cmp(b),
            (Mult::Finite(_), Mult::Infinite) => Ordering::Less,
            (Mult::Infinite, Mult::Finite(_)) => Ordering::Greater,
            (Mult::Infinite, Mult::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(k) => write!(f, "{k}"),
            Mult::Infinite => write!(f, "inf"),
        }
    }
}
