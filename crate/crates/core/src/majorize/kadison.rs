use crate::error::{Error, Result};
use crate::scalar::{le_tol, Scalar};

/// Both sides of `Σ α_j y_j ≤ Σ_{j≤k} y_j` for weights `α_j ∈ [0, 1]` with
/// `Σ α_j ≤ k` and `y` non-increasing, nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct KadisonReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

pub fn kadison_check<T: Scalar>(alpha: &[T], y: &[T], k: usize) -> Result<KadisonReport<T>> {
    if alpha.len() != y.len() {
        return Err(Error::LengthMismatch(alpha.len(), y.len()));
    }
    if k == 0 || k > y.len() {
        return Err(Error::OutOfRange { k: k as u64, total: y.len() as u64 });
    }
    if alpha.iter().any(|a| a.is_negative() || *a > T::one()) {
        return Err(Error::Precondition("weights must lie in [0, 1]".into()));
    }
    let total = alpha.iter().fold(T::zero(), |acc, a| acc + a.clone());
    let kk = T::from_usize(k).expect("count fits");
    if !le_tol(&total, &kk, &kk) {
        return Err(Error::Precondition(format!("weights sum to {total}, more than {k}")));
    }
    if y.iter().any(|v| v.is_negative()) || y.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Precondition("y must be nonnegative and non-increasing".into()));
    }
    let lhs = alpha.iter().zip(y).fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
    let rhs = y[..k].iter().fold(T::zero(), |acc, v| acc + v.clone());
    let holds = le_tol(&lhs, &rhs, &rhs);
    Ok(KadisonReport { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn hand_case() {
        let a = [q(1, 1), q(1, 2), q(1, 2)];
        let y = [q(3, 1), q(2, 1), q(1, 1)];
        let rep = kadison_check(&a, &y, 2).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.holds), (q(9, 2), q(5, 1), true));
    }

    #[test]
    fn tight_and_trivial() {
        let y = [q(3, 1), q(2, 1), q(1, 1)];
        let rep = kadison_check(&[q(1, 1), q(1, 1), q(0, 1)], &y, 2).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        let rep = kadison_check(&vec![q(0, 1); 3], &y, 2).unwrap();
        assert_eq!(rep.lhs, q(0, 1));
    }

    #[test]
    fn preconditions() {
        let y = [q(1, 1), q(2, 1)];
        assert!(kadison_check(&[q(0, 1), q(0, 1)], &y, 1).is_err());
        assert!(kadison_check(&[q(1, 1), q(1, 1)], &[q(2, 1), q(1, 1)], 1).is_err());
    }
}
