use crate::error::Result;
use crate::scalar::{le_tol, Scalar};
use crate::spectral::curve::merge_abscissae;
use crate::spectral::{lower_fn, upper_fn, PLFunction, StepOperator};

/// `F(t) ≤ G(t)` for every `t ≥ 0`.
///
/// Both sides are linear between the merged knots, so checking the knots and
/// then the slopes past the last one decides the question.
pub fn pl_dominates<T: Scalar>(f: &PLFunction<T>, g: &PLFunction<T>) -> bool {
    let ts = merge_abscissae(&f.abscissae(), &g.abscissae());
    let scale = curve_scale(f, g);
    ts.iter().all(|t| le_tol(&f.eval(t), &g.eval(t), &scale)) && le_tol(f.tail_slope(), g.tail_slope(), &T::one())
}

/// First knot where `F > G`, or a point past the last knot when only the
/// tails separate. `None` exactly when `pl_dominates` holds.
pub fn first_violation<T: Scalar>(f: &PLFunction<T>, g: &PLFunction<T>) -> Option<T> {
    let scale = curve_scale(f, g);
    let ts = merge_abscissae(&f.abscissae(), &g.abscissae());
    if let Some(t) = ts.iter().find(|t| !le_tol(&f.eval(t), &g.eval(t), &scale)) {
        return Some(t.clone());
    }
    if le_tol(f.tail_slope(), g.tail_slope(), &T::one()) {
        return None;
    }
    let last = ts.last().cloned().unwrap_or_else(T::zero);
    let rise = f.tail_slope().clone() - g.tail_slope().clone();
    let gap = g.eval(&last) - f.eval(&last);
    let mut step = gap / rise + T::one();
    for _ in 0..64 {
        let t = last.clone() + step.clone();
        let (ft, gt) = (f.eval(&t), g.eval(&t));
        let sc = if ft.abs() > gt.abs() { ft.abs() } else { gt.abs() };
        if !le_tol(&ft, &gt, &sc) {
            return Some(t);
        }
        step = step.clone() + step;
    }
    None
}

fn curve_scale<T: Scalar>(f: &PLFunction<T>, g: &PLFunction<T>) -> T {
    let a = f.last_knot().1.abs();
    let b = g.last_knot().1.abs();
    if a > b {
        a
    } else {
        b
    }
}

/// `a ≺ b`: `U_t(a) ≤ U_t(b)` and `L_t(a) ≥ L_t(b)` for every `t`.
pub fn majorizes<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> Result<bool> {
    a.same_ambient(b)?;
    Ok(pl_dominates(&upper_fn(a), &upper_fn(b)) && pl_dominates(&lower_fn(b), &lower_fn(a)))
}

/// `a ≺_w b`: the `U_t` half of majorization.
pub fn submajorizes<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> Result<bool> {
    a.same_ambient(b)?;
    Ok(pl_dominates(&upper_fn(a), &upper_fn(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn op(pairs: &[(i64, Option<i64>)]) -> StepOperator<Rational> {
        let pairs: Vec<_> = pairs.iter().map(|(v, w)| (r(*v), w.map(r))).collect();
        StepOperator::from_pairs(&pairs).unwrap()
    }

    #[test]
    fn dominance_of_curves() {
        let f = PLFunction::linear(r(1));
        let g = PLFunction::new(vec![(r(0), r(0)), (r(1), r(2))], r(1));
        assert!(pl_dominates(&f, &f));
        assert!(pl_dominates(&f, &g));
        assert!(!pl_dominates(&g, &f));
        assert_eq!(first_violation(&g, &f), Some(r(1)));
        let steep = PLFunction::new(vec![(r(0), r(0)), (r(10), r(-5))], r(3));
        assert!(!pl_dominates(&steep, &g));
        assert_eq!(first_violation(&steep, &g), Some(r(19)));
        assert_eq!(first_violation(&f, &g), None);
    }

    #[test]
    fn identity_is_majorized_by_projection() {
        let id = op(&[(1, None)]);
        let p = op(&[(1, None), (0, None)]);
        assert!(majorizes(&id, &p).unwrap());
        assert!(!majorizes(&p, &id).unwrap());
    }

    #[test]
    fn reflexive() {
        let b = op(&[(3, Some(2)), (1, None), (-2, Some(1))]);
        assert!(majorizes(&b, &b).unwrap());
    }

    #[test]
    fn weak_majorization_of_positive_compacts() {
        let a = op(&[(2, Some(1)), (1, Some(1)), (0, None)]);
        let b = op(&[(3, Some(1)), (0, None)]);
        assert!(submajorizes(&a, &b).unwrap());
        assert!(majorizes(&a, &b).unwrap());
        let a = op(&[(2, Some(1)), (1, None)]);
        let b = op(&[(3, Some(1)), (1, None)]);
        assert!(submajorizes(&a, &b).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let a = op(&[(1, Some(1))]);
        let b = op(&[(1, None)]);
        assert!(matches!(majorizes(&a, &b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn finite_ambient_needs_equal_trace() {
        let a = op(&[(1, Some(2))]);
        let b = op(&[(2, Some(1)), (0, Some(1))]);
        assert!(majorizes(&a, &b).unwrap());
        let c = op(&[(2, Some(1)), (1, Some(1))]);
        assert!(!majorizes(&a, &c).unwrap());
    }
}
