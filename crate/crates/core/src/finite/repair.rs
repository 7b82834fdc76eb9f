//! Nearest majorized vector in the max norm.

use crate::error::{Error, Result};
use crate::majorize::vector::sum;
use crate::majorize::vec_majorizes;
use crate::scalar::Real;

const BISECTION_STEPS: usize = 200;

/// Entries of `x` pulled toward one common level inside `[x_i − r, x_i + r]`,
/// level chosen so the total equals `target`. Among vectors in that box with
/// that total, this one is majorized by every other.
fn level_fill<F: Real>(x: &[F], r: F, target: F) -> Vec<F> {
    let lo = x.iter().fold(F::infinity(), |a, v| a.min(*v)) - r;
    let hi = x.iter().fold(F::neg_infinity(), |a, v| a.max(*v)) + r;
    let fill = |theta: F| -> Vec<F> { x.iter().map(|v| theta.max(*v - r).min(*v + r)).collect() };
    let (mut a, mut b) = (lo, hi);
    for _ in 0..BISECTION_STEPS {
        let mid = (a + b) / (F::one() + F::one());
        if sum(&fill(mid)) < target {
            a = mid;
        } else {
            b = mid;
        }
    }
    fill((a + b) / (F::one() + F::one()))
}

/// `c ≺ y` with `max |c − x|` minimal up to bisection accuracy. Returns `x`
/// itself when it is already majorized.
pub fn closest_majorized<F: Real>(x: &[F], y: &[F]) -> Result<Vec<F>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() || vec_majorizes(x, y)? {
        return Ok(x.to_vec());
    }
    let target = sum(y);
    let mean = target / F::from_usize(y.len()).unwrap();
    let mut hi = x.iter().fold(F::zero(), |a, v| a.max(num_traits::Float::abs(*v - mean)));
    let mut lo = F::zero();
    let mut best = vec![mean; x.len()];
    for _ in 0..BISECTION_STEPS {
        let mid = (lo + hi) / (F::one() + F::one());
        let box_lo = sum(x) - mid * F::from_usize(x.len()).unwrap();
        let box_hi = sum(x) + mid * F::from_usize(x.len()).unwrap();
        let c = level_fill(x, mid, target);
        if box_lo <= target && target <= box_hi && vec_majorizes(&c, y)? {
            best = c;
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= F::epsilon() * (F::one() + hi) {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majorized_input_is_kept() {
        assert_eq!(closest_majorized(&[1.0, 1.0], &[2.0, 0.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn repairs_spread_vector() {
        let x = [3.0f64, 0.0];
        let y = [2.0, 1.0];
        let c = closest_majorized(&x, &y).unwrap();
        assert!(vec_majorizes(&c, &y).unwrap());
        assert!((c[0] - 2.0).abs() < 1e-9 && (c[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn repairs_sum_mismatch() {
        let x = [1.0f64, 1.0, 1.0];
        let y = [2.0, 2.0, 2.0];
        let c = closest_majorized(&x, &y).unwrap();
        assert!(c.iter().all(|v| (v - 2.0).abs() < 1e-9));
    }
}
