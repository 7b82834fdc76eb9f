//! Integrated spectral scales as exact piecewise-linear functions.

use crate::extended::ExtWeight;
use crate::scalar::Scalar;

use super::operator::StepOperator;
use super::scale::{lower_scale, upper_scale, StepScale};

/// Continuous piecewise-linear function on `[0, ∞)`.
///
/// Knots start at `(0, 0)` with strictly increasing abscissae; past the last
/// knot the function continues with `tail_slope`. Collinear interior knots are
/// dropped, so structural equality is functional equality.
#[derive(Clone, Debug, PartialEq)]
pub struct PLFunction<T> {
    knots: Vec<(T, T)>,
    tail_slope: T,
}

impl<T: Scalar> PLFunction<T> {
    /// Builds a function from knots (first must be `(0, 0)`) and a tail slope.
    pub fn new(knots: Vec<(T, T)>, tail_slope: T) -> Self {
        let mut f = PLFunction { knots, tail_slope };
        debug_assert!(f.knots.first().is_some_and(|(t, y)| t.is_zero() && y.is_zero()));
        f.canonicalize();
        f
    }

    pub fn zero() -> Self {
        PLFunction { knots: vec![(T::zero(), T::zero())], tail_slope: T::zero() }
    }

    /// `t ↦ c·t`.
    pub fn linear(c: T) -> Self {
        PLFunction { knots: vec![(T::zero(), T::zero())], tail_slope: c }
    }

    /// Integral of a step scale. Past a finite horizon the function is flat.
    pub fn integrate(scale: &StepScale<T>) -> Self {
        let mut knots = vec![(T::zero(), T::zero())];
        let (mut t, mut y) = (T::zero(), T::zero());
        let mut tail = T::zero();
        for (d, v) in scale.pieces() {
            match d {
                ExtWeight::Infinite => {
                    tail = v.clone();
                    break;
                }
                ExtWeight::Finite(d) => {
                    t = t + d.clone();
                    y = y + v.clone() * d.clone();
                    knots.push((t.clone(), y.clone()));
                }
            }
        }
        Self::new(knots, tail)
    }

    pub fn knots(&self) -> &[(T, T)] {
        &self.knots
    }

    pub fn tail_slope(&self) -> &T {
        &self.tail_slope
    }

    /// Abscissae of all knots.
    pub fn abscissae(&self) -> Vec<T> {
        self.knots.iter().map(|(t, _)| t.clone()).collect()
    }

    pub fn last_knot(&self) -> &(T, T) {
        self.knots.last().expect("at least the origin knot")
    }

    /// Slopes of the finite segments followed by the tail slope.
    pub fn slopes(&self) -> Vec<T> {
        let mut out: Vec<T> = self
            .knots
            .windows(2)
            .map(|w| (w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone()))
            .collect();
        out.push(self.tail_slope.clone());
        out
    }

    pub fn eval(&self, t: &T) -> T {
        let idx = self.knots.partition_point(|(k, _)| k <= t);
        if idx == self.knots.len() {
            let (kt, ky) = self.last_knot();
            return ky.clone() + self.tail_slope.clone() * (t.clone() - kt.clone());
        }
        if idx == 0 {
            return T::zero();
        }
        let (t0, y0) = &self.knots[idx - 1];
        let (t1, y1) = &self.knots[idx];
        y0.clone() + (y1.clone() - y0.clone()) * (t.clone() - t0.clone()) / (t1.clone() - t0.clone())
    }

    pub fn negate(&self) -> Self {
        PLFunction {
            knots: self.knots.iter().map(|(t, y)| (t.clone(), -y.clone())).collect(),
            tail_slope: -self.tail_slope.clone(),
        }
    }

    /// `t ↦ self(t) + c·t`.
    pub fn add_linear(&self, c: &T) -> Self {
        let knots = self.knots.iter().map(|(t, y)| (t.clone(), y.clone() + c.clone() * t.clone())).collect();
        Self::new(knots, self.tail_slope.clone() + c.clone())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let ts = merge_abscissae(&self.abscissae(), &other.abscissae());
        let knots = ts.into_iter().map(|t| (t.clone(), self.eval(&t) + other.eval(&t))).collect();
        Self::new(knots, self.tail_slope.clone() + other.tail_slope.clone())
    }

    /// Concave when slopes never increase.
    pub fn is_concave(&self) -> bool {
        self.slopes().windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[1] >= w[0])
    }

    fn canonicalize(&mut self) {
        if self.knots.len() < 2 {
            return;
        }
        let slopes = self.slopes();
        let mut keep = vec![self.knots[0].clone()];
        for i in 1..self.knots.len() {
            if slopes[i - 1] != slopes[i] {
                keep.push(self.knots[i].clone());
            }
        }
        self.knots = keep;
    }
}

/// Sorted union of two sorted abscissa lists.
pub fn merge_abscissae<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out: Vec<T> = a.iter().chain(b).cloned().collect();
    out.sort_by(crate::scalar::cmp_scalar);
    out.dedup();
    out
}

/// `U_t(b) = ∫_0^t λ_s(b) ds`.
pub fn upper_fn<T: Scalar>(b: &StepOperator<T>) -> PLFunction<T> {
    PLFunction::integrate(&upper_scale(b))
}

/// `L_t(b) = ∫_0^t μ_s(b) ds`.
pub fn lower_fn<T: Scalar>(b: &StepOperator<T>) -> PLFunction<T> {
    PLFunction::integrate(&lower_scale(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn op(pairs: &[(i64, Option<i64>)]) -> StepOperator<Rational> {
        let pairs: Vec<_> = pairs.iter().map(|(v, w)| (r(*v), w.map(r))).collect();
        StepOperator::from_pairs(&pairs).unwrap()
    }

    #[test]
    fn upper_fn_by_hand() {
        let u = upper_fn(&op(&[(3, Some(2)), (1, None)]));
        assert_eq!(u.knots(), &[(r(0), r(0)), (r(2), r(6))]);
        assert_eq!(u.tail_slope(), &r(1));
        assert_eq!(u.eval(&r(1)), r(3));
        assert_eq!(u.eval(&r(5)), r(9));
    }

    #[test]
    fn identity_and_projection_curves() {
        let id = op(&[(1, None)]);
        let p = op(&[(1, None), (0, None)]);
        for t in 0..6 {
            assert_eq!(upper_fn(&id).eval(&r(t)), r(t));
            assert_eq!(upper_fn(&p).eval(&r(t)), r(t));
            assert_eq!(lower_fn(&id).eval(&r(t)), r(t));
            assert_eq!(lower_fn(&p).eval(&r(t)), r(0));
        }
    }

    #[test]
    fn zero_operator_curves_vanish() {
        let z = StepOperator::<Rational>::zero();
        assert_eq!(upper_fn(&z), PLFunction::zero());
        assert_eq!(lower_fn(&z), PLFunction::zero());
    }

    #[test]
    fn collinear_knots_are_dropped() {
        let f = PLFunction::new(vec![(r(0), r(0)), (r(1), r(2)), (r(2), r(4))], r(2));
        assert_eq!(f, PLFunction::linear(r(2)));
    }

    #[test]
    fn add_and_shift() {
        let u = upper_fn(&op(&[(3, Some(2)), (1, None)]));
        let v = u.add_linear(&r(-1));
        assert_eq!(v.eval(&r(4)), u.eval(&r(4)) - r(4));
        assert_eq!(u.add(&u.negate()), PLFunction::zero());
    }

    #[test]
    fn concavity_of_upper_curve() {
        let b = op(&[(3, Some(2)), (1, None), (-2, Some(1))]);
        assert!(upper_fn(&b).is_concave());
        assert!(lower_fn(&b).is_convex());
    }
}
