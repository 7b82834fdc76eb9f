//! Hinge traces, signed parts and trace-class majorization checks.

use crate::error::{Error, Result};
use crate::extended::{ExtReal, ExtWeight};
use crate::majorize::{majorizes, submajorizes};
use crate::scalar::{positive_part, Scalar};
use crate::spectral::curve::merge_abscissae;
use crate::spectral::{trace, trace_norm, StepOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HingeSide {
    /// `τ((x − c)⁺)`
    Upper,
    /// `τ((c − x)⁺)`
    Lower,
}

pub fn hinge_trace<T: Scalar>(x: &StepOperator<T>, c: &T, side: HingeSide) -> ExtWeight<T> {
    let mut total = ExtWeight::zero();
    for a in x.atoms() {
        let gap = match side {
            HingeSide::Upper => a.value.clone() - c.clone(),
            HingeSide::Lower => c.clone() - a.value.clone(),
        };
        if !gap.is_positive() {
            continue;
        }
        total = match &a.weight {
            ExtWeight::Infinite => return ExtWeight::Infinite,
            ExtWeight::Finite(w) => total.add_finite(&(gap * w.clone())),
        };
    }
    total
}

/// Every atom value of either operator, ascending.
pub fn hinge_points<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> Vec<T> {
    let mut va: Vec<T> = a.atoms().iter().map(|x| x.value.clone()).collect();
    let mut vb: Vec<T> = b.atoms().iter().map(|x| x.value.clone()).collect();
    va.reverse();
    vb.reverse();
    merge_abscissae(&va, &vb)
}

/// `τ((a − c)⁺) ≤ τ((b − c)⁺)` at every atom value `c` of `a` or `b`. Both
/// sides are convex and piecewise linear in `c` with knots at atom values,
/// so these checks cover every real `c` above the smallest value.
pub fn hinge_dominated<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>, side: HingeSide) -> bool {
    hinge_points(a, b).iter().all(|c| {
        let (ha, hb) = (hinge_trace(a, c, side), hinge_trace(b, c, side));
        ha <= hb
    })
}

/// Atomwise positive and negative parts: `a = a₊ − a₋`.
pub fn split_signed<T: Scalar>(a: &StepOperator<T>) -> (StepOperator<T>, StepOperator<T>) {
    let pos = a.map_values(positive_part);
    let neg = a.map_values(|v| positive_part(&-v.clone()));
    (pos, neg)
}

fn require_trace_class<T: Scalar>(x: &StepOperator<T>) -> Result<()> {
    if trace_norm(x).is_infinite() {
        return Err(Error::NotTraceClass);
    }
    Ok(())
}

/// `a ≺ b` together with `τ(a) = τ(b)`, for trace-class `a` and `b`.
pub fn l1_check<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> Result<bool> {
    require_trace_class(a)?;
    require_trace_class(b)?;
    if !majorizes(a, b)? {
        return Ok(false);
    }
    Ok(match (trace(a)?, trace(b)?) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => x == y,
        _ => false,
    })
}

/// For positive `a` and positive trace-class `b`, submajorization and
/// majorization coincide; returns their common value.
pub fn l1_weak_equiv<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> Result<bool> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::RequiresPositive);
    }
    require_trace_class(b)?;
    let weak = submajorizes(a, b)?;
    let full = majorizes(a, b)?;
    if weak != full {
        return Err(Error::InternalInvariantViolation(format!(
            "submajorization ({weak}) and majorization ({full}) disagree"
        )));
    }
    Ok(weak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn op(pairs: &[(Rational, Option<Rational>)]) -> StepOperator<Rational> {
        StepOperator::from_pairs(pairs).unwrap()
    }

    #[test]
    fn hinge_values() {
        let x = op(&[(q(3, 1), Some(q(2, 1))), (q(1, 1), None)]);
        assert_eq!(hinge_trace(&x, &q(2, 1), HingeSide::Upper), ExtWeight::Finite(q(2, 1)));
        assert_eq!(hinge_trace(&x, &q(3, 1), HingeSide::Upper), ExtWeight::Finite(q(0, 1)));
        assert_eq!(hinge_trace(&x, &q(2, 1), HingeSide::Lower), ExtWeight::Infinite);
        let one = op(&[(q(1, 1), None)]);
        assert_eq!(hinge_trace(&one, &q(0, 1), HingeSide::Upper), ExtWeight::Infinite);
    }

    #[test]
    fn signed_parts() {
        let a = op(&[(q(2, 1), Some(q(1, 1))), (q(-3, 1), Some(q(2, 1))), (q(0, 1), None)]);
        let (p, n) = split_signed(&a);
        assert_eq!(p, op(&[(q(2, 1), Some(q(1, 1))), (q(0, 1), None)]));
        assert_eq!(n, op(&[(q(3, 1), Some(q(2, 1))), (q(0, 1), None)]));
        let tr = |x: &StepOperator<Rational>| trace(x).unwrap().finite().cloned().unwrap();
        assert_eq!(tr(&a), tr(&p) - tr(&n));
        let pos = op(&[(q(1, 1), Some(q(1, 1))), (q(0, 1), None)]);
        assert_eq!(split_signed(&pos), (pos.clone(), StepOperator::zero()));
    }

    #[test]
    fn trace_class_checks() {
        let a = op(&[(q(1, 1), Some(q(2, 1))), (q(0, 1), None)]);
        let b = op(&[(q(2, 1), Some(q(1, 1))), (q(0, 1), None)]);
        assert!(majorizes(&a, &b).unwrap());
        assert!(l1_check(&a, &b).unwrap());
        assert!(l1_check(&a, &a).unwrap());
        let small = op(&[(q(1, 1), Some(q(1, 1))), (q(0, 1), None)]);
        assert!(!l1_check(&small, &b).unwrap());
        assert!(l1_weak_equiv(&small, &b).unwrap());
        assert_eq!(l1_check(&StepOperator::identity(), &b), Err(Error::NotTraceClass));
    }

    #[test]
    fn hinge_matches_submajorization() {
        let a = op(&[(q(1, 1), Some(q(2, 1))), (q(0, 1), None)]);
        let b = op(&[(q(2, 1), Some(q(1, 1))), (q(0, 1), None)]);
        assert!(hinge_dominated(&a, &b, HingeSide::Upper));
        assert!(!hinge_dominated(&b, &a, HingeSide::Upper));
    }
}
