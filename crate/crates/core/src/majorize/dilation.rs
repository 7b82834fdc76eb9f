//! Dilations turning weak majorization into majorization.

use crate::error::{Error, Result};
use crate::extended::Mult;
use crate::scalar::{max_of, Scalar};

use super::profile::{prof_submajorizes, Profile};
use super::vector::{sum, vec_majorizes, vec_submajorizes};

/// `f' = (f + ε) ∪ {ε:∞}` and `g' = (g + ε) ∪ {0:∞}`.
///
/// For nonnegative `f ≺_w g` this gives `f' ≺ g'`, with `U_k` shifted by `kε`
/// on both sides, `L_k(f') = kε` and `L_k(g') = 0`.
pub fn double_dilate<T: Scalar>(f: &Profile<T>, g: &Profile<T>, eps: &T) -> Result<(Profile<T>, Profile<T>)> {
    if !f.is_nonnegative() || !g.is_nonnegative() {
        return Err(Error::RequiresPositive);
    }
    if !eps.is_positive() {
        return Err(Error::Precondition("dilation width must be positive".into()));
    }
    if !prof_submajorizes(f, g)? {
        return Err(Error::NotSubmajorized);
    }
    let fd = f.shift(eps).union(&Profile::constant(eps.clone()));
    let gd = g.shift(eps).union(&Profile::constant(T::zero()));
    Ok((fd, gd))
}

/// Finite vectors `x ≺ y` built from `f ≺_w g`.
///
/// `x[i] = f[i] + ε` and `y[i] = g[i] + ε` for `i < n` in the caller's order
/// (shorter input zero-padded). Then `P = ⌈(Σg − Σf)/ε⌉` entries are
/// appended: `ε` repeated `P − 1` times plus the exact remainder on `x`, and
/// zeros on `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Balanced<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
    /// Length shared by `x` and `y`.
    pub len: usize,
    /// Number of appended padding entries.
    pub pad: usize,
}

pub fn truncate_balanced<T: Scalar>(f: &[T], g: &[T], eps: &T) -> Result<Balanced<T>> {
    if f.iter().chain(g).any(|v| v.is_negative()) {
        return Err(Error::RequiresPositive);
    }
    if !eps.is_positive() {
        return Err(Error::Precondition("padding width must be positive".into()));
    }
    let n = f.len().max(g.len());
    let pad_to = |v: &[T]| {
        let mut out = v.to_vec();
        out.resize(n, T::zero());
        out
    };
    let (fp, gp) = (pad_to(f), pad_to(g));
    if !vec_submajorizes(&fp, &gp)? {
        return Err(Error::NotSubmajorized);
    }
    let gap = sum(&gp) - sum(&fp);
    let gap = if gap.is_negative() && !T::EXACT { T::zero() } else { gap };
    if gap.is_negative() {
        return Err(Error::NotSubmajorized);
    }
    let pads = (gap.clone() / eps.clone()).ceil_value();
    let pads = pads.to_usize().ok_or_else(|| Error::Precondition("padding count overflows".into()))?;
    let mut x: Vec<T> = fp.iter().map(|v| v.clone() + eps.clone()).collect();
    let mut y: Vec<T> = gp.iter().map(|v| v.clone() + eps.clone()).collect();
    if pads > 0 {
        let full = pads - 1;
        x.extend(std::iter::repeat(eps.clone()).take(full));
        let last = gap - eps.clone() * T::from_usize(full).expect("count fits");
        x.push(max_of(&last, &T::zero()));
        y.extend(std::iter::repeat(T::zero()).take(pads));
    }
    if !vec_majorizes(&x, &y)? {
        return Err(Error::InternalInvariantViolation("balanced vectors are not majorized".into()));
    }
    Ok(Balanced { len: x.len(), x, y, pad: pads })
}

/// [`truncate_balanced`] on finite profiles, listing entries descending.
pub fn truncate_balanced_profiles<T: Scalar>(f: &Profile<T>, g: &Profile<T>, eps: &T) -> Result<Balanced<T>> {
    if f.total_mult() == Mult::Infinite || g.total_mult() == Mult::Infinite {
        return Err(Error::InvalidProfile("truncation needs finite profiles".into()));
    }
    truncate_balanced(&f.to_vec()?, &g.to_vec()?, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorize::profile::{prof_lower, prof_majorizes, prof_upper};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn dilation_of_constants() {
        let (f, g) = double_dilate(&Profile::constant(r(1)), &Profile::constant(r(2)), &q(1, 2)).unwrap();
        assert_eq!(f, Profile::ambient(vec![(q(3, 2), Mult::Infinite), (q(1, 2), Mult::Infinite)]).unwrap());
        assert_eq!(g, Profile::ambient(vec![(q(5, 2), Mult::Infinite), (r(0), Mult::Infinite)]).unwrap());
        assert!(prof_majorizes(&f, &g).unwrap());
    }

    #[test]
    fn dilation_lower_sums() {
        let f = Profile::ambient(vec![(r(2), Mult::Finite(1)), (r(0), Mult::Infinite)]).unwrap();
        let g = Profile::ambient(vec![(r(3), Mult::Finite(1)), (r(0), Mult::Infinite)]).unwrap();
        let (fd, gd) = double_dilate(&f, &g, &r(1)).unwrap();
        for k in 1..=10u64 {
            assert_eq!(prof_lower(&fd, k).unwrap(), r(k as i64));
            assert_eq!(prof_lower(&gd, k).unwrap(), r(0));
            assert_eq!(prof_upper(&fd, k).unwrap(), prof_upper(&f, k).unwrap() + r(k as i64));
        }
    }

    #[test]
    fn dilation_rejects_negative() {
        let f = Profile::constant(r(-1));
        assert_eq!(double_dilate(&f, &Profile::constant(r(1)), &r(1)), Err(Error::RequiresPositive));
        let g = Profile::constant(r(0));
        assert_eq!(double_dilate(&Profile::constant(r(1)), &g, &r(1)), Err(Error::NotSubmajorized));
    }

    #[test]
    fn balanced_hand_case() {
        let b = truncate_balanced(&[r(1)], &[r(2)], &q(1, 2)).unwrap();
        assert_eq!(b.x, vec![q(3, 2), q(1, 2), q(1, 2)]);
        assert_eq!(b.y, vec![q(5, 2), r(0), r(0)]);
        assert_eq!(b.len, 3);
    }

    #[test]
    fn balanced_equal_inputs_need_no_padding() {
        let b = truncate_balanced(&[r(2), r(1)], &[r(2), r(1)], &q(1, 4)).unwrap();
        assert_eq!(b.pad, 0);
        assert_eq!(b.x, b.y);
    }

    #[test]
    fn balanced_rejects_larger_sum() {
        assert_eq!(truncate_balanced(&[r(3)], &[r(2)], &r(1)), Err(Error::NotSubmajorized));
    }

    #[test]
    fn balanced_keeps_caller_order() {
        let b = truncate_balanced(&[r(0), r(1)], &[r(2), r(1)], &r(1)).unwrap();
        assert_eq!(b.x[..2], [r(1), r(2)]);
        assert_eq!(b.y[..2], [r(3), r(2)]);
        assert_eq!(b.pad, 2);
    }
}
