//! Classical majorization of finite vectors.

use crate::error::{Error, Result};
use crate::scalar::{approx_eq, cmp_scalar, le_tol, Scalar};

/// Entries sorted non-increasing.
pub fn sorted_desc<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| cmp_scalar(b, a));
    v
}

/// Partial sums of the non-increasing rearrangement, `S_1, …, S_n`.
pub fn partial_sums<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    sorted_desc(x)
        .into_iter()
        .map(|v| {
            acc = acc.clone() + v;
            acc.clone()
        })
        .collect()
}

fn magnitude<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().chain(y).fold(T::zero(), |acc, v| acc + v.abs())
}

/// `x ≺_w y`: sorted partial sums of `x` never exceed those of `y`.
pub fn vec_submajorizes<T: Scalar>(x: &[T], y: &[T]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let scale = magnitude(x, y);
    Ok(partial_sums(x).iter().zip(partial_sums(y).iter()).all(|(a, b)| le_tol(a, b, &scale)))
}

/// `x ≺ y`: submajorization with equal totals.
pub fn vec_majorizes<T: Scalar>(x: &[T], y: &[T]) -> Result<bool> {
    if !vec_submajorizes(x, y)? {
        return Ok(false);
    }
    let (sx, sy) = (sum(x), sum(y));
    Ok(approx_eq(&sx, &sy, &magnitude(x, y)))
}

pub fn sum<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(vec_majorizes(&[1.0, 1.0], &[2.0, 0.0]).unwrap());
        assert!(vec_majorizes(&[3.0, 1.0], &[3.0, 1.0]).unwrap());
        assert!(!vec_majorizes(&[2.0, 0.0], &[1.0, 1.0]).unwrap());
        assert!(!vec_majorizes(&[1.0, 0.0], &[2.0, 0.0]).unwrap());
        assert!(vec_submajorizes(&[1.0, 0.0], &[2.0, 0.0]).unwrap());
        assert_eq!(vec_majorizes(&[1.0], &[1.0, 0.0]), Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn order_does_not_matter() {
        assert!(vec_majorizes(&[0.5, 2.0, 1.5], &[0.0, 1.0, 3.0]).unwrap());
    }
}
