//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Everything that only needs ordered field arithmetic is written against
//! [`Scalar`], so the same routine runs over [`BigRational`] (exact decisions)
//! and over `f64`/`f32` (fast numerics). Routines that need square roots or
//! eigensolvers additionally ask for [`num_traits::Float`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// An ordered field usable by the library.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact (comparisons need no slack).
    const EXACT: bool;

    /// Absolute slack used by tolerance-aware comparisons. Zero for exact types.
    fn tolerance() -> Self;

    /// Largest integer not above `self`.
    fn floor_value(&self) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    /// Exact rational image. Non-finite floats map to zero.
    fn to_rational(&self) -> BigRational;

    /// Parses a decimal (`-1.25`, `3e-2`) or `p/q` literal.
    fn parse_literal(s: &str) -> Option<Self> {
        parse_rational(s).map(|r| Self::from_rational(&r))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer conversion")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn ceil_value(&self) -> Self {
        let f = self.floor_value();
        if &f == self {
            f
        } else {
            f + Self::one()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Self::zero()
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-10
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).unwrap_or_else(BigRational::zero)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (p.trim().parse::<f64>().ok()?, q.trim().parse::<f64>().ok()?);
                (q != 0.0).then_some(p / q)
            }
            None => s.parse::<f64>().ok().filter(|v| v.is_finite()),
        }
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-4
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).unwrap_or_else(BigRational::zero)
    }
}

/// Parses `p/q`, an integer, or a decimal with optional exponent into an
/// exact rational. Decimals are read as scaled integers, never through `f64`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut num: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().ok()? };
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Total order for scalars, treating incomparable values (NaN) as equal.
pub fn cmp_scalar<T: PartialOrd>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

pub fn max_of<T: Scalar>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_of<T: Scalar>(a: &T, b: &T) -> T {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `max(v, 0)`.
pub fn positive_part<T: Scalar>(v: &T) -> T {
    if v.is_positive() {
        v.clone()
    } else {
        T::zero()
    }
}

/// `a <= b` up to the scalar's tolerance, scaled by `scale` (at least one).
pub fn le_tol<T: Scalar>(a: &T, b: &T, scale: &T) -> bool {
    if T::EXACT {
        return a <= b;
    }
    let s = max_of(&scale.abs(), &T::one());
    a.clone() <= b.clone() + T::tolerance() * s
}

pub fn approx_eq<T: Scalar>(a: &T, b: &T, scale: &T) -> bool {
    le_tol(a, b, scale) && le_tol(b, a, scale)
}

/// Renders a scalar as a decimal with `sig` significant digits.
pub fn to_decimal_string<T: Scalar>(v: &T, sig: usize) -> String {
    let x = v.to_f64_lossy();
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", sig.saturating_sub(1), x);
    // Re-parse to drop trailing zeros and the exponent when it is small.
    let parsed: f64 = s.parse().unwrap_or(x);
    let mag = parsed.abs().log10().floor() as i32;
    if (-6..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        let mut out = format!("{:.*}", decimals, parsed);
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    } else {
        s
    }
}

/// Floating scalars: [`Scalar`] plus square roots and machine epsilon.
pub trait Real: Scalar + num_traits::Float {}

impl Real for f64 {}
impl Real for f32 {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.05"), Some(q(1, 20)));
        assert_eq!(parse_rational("-1.25"), Some(q(-5, 4)));
        assert_eq!(parse_rational("3e-2"), Some(q(3, 100)));
        assert_eq!(parse_rational("2.5E1"), Some(q(25, 1)));
        assert_eq!(parse_rational("7/21"), Some(q(1, 3)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("-"), None);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q(7, 3).floor_value(), q(2, 1));
        assert_eq!(q(-7, 3).floor_value(), q(-3, 1));
        assert_eq!(q(6, 3).ceil_value(), q(2, 1));
        assert_eq!(q(7, 3).ceil_value(), q(3, 1));
        assert_eq!(2.5f64.ceil_value(), 3.0);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&q(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal_string(&q(6, 1), 12), "6");
        assert_eq!(to_decimal_string(&0.0f64, 12), "0");
        assert_eq!(to_decimal_string(&-2.5f64, 12), "-2.5");
    }

    #[test]
    fn float_literals() {
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(f64::parse_literal("inf"), None);
    }
}
