//! Spectral scales: right-continuous monotone step functions `t ↦ λ_t`.

use crate::extended::ExtWeight;
use crate::scalar::Scalar;

use super::operator::{Ambient, StepOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    NonIncreasing,
    NonDecreasing,
}

/// A step function given by consecutive `(duration, value)` pieces starting at 0.
///
/// In the infinite ambient the last duration is infinite. For finite-trace
/// operators the pieces cover `[0, τ(1))` and the scale is undefined beyond.
#[derive(Clone, Debug, PartialEq)]
pub struct StepScale<T> {
    pieces: Vec<(ExtWeight<T>, T)>,
    monotone: Monotone,
}

impl<T: Scalar> StepScale<T> {
    /// Builds a scale, merging adjacent pieces with equal values.
    pub fn new(pieces: Vec<(ExtWeight<T>, T)>, monotone: Monotone) -> Self {
        let mut merged: Vec<(ExtWeight<T>, T)> = Vec::with_capacity(pieces.len());
        for (d, v) in pieces {
            if d.is_zero() {
                continue;
            }
            match merged.last_mut() {
                Some((ld, lv)) if *lv == v => *ld = ld.add(&d),
                _ => merged.push((d, v)),
            }
        }
        StepScale { pieces: merged, monotone }
    }

    pub fn pieces(&self) -> &[(ExtWeight<T>, T)] {
        &self.pieces
    }

    pub fn monotone(&self) -> Monotone {
        self.monotone
    }

    /// Total length of the domain.
    pub fn horizon(&self) -> ExtWeight<T> {
        self.pieces.iter().fold(ExtWeight::zero(), |acc, (d, _)| acc.add(d))
    }

    /// Value of the last piece (the limit at infinity in the infinite ambient).
    pub fn tail_value(&self) -> T {
        self.pieces.last().map(|(_, v)| v.clone()).unwrap_or_else(T::zero)
    }

    /// Value at `t`, or `None` past a finite horizon.
    pub fn value_at(&self, t: &T) -> Option<T> {
        let mut start = T::zero();
        for (d, v) in &self.pieces {
            match d {
                ExtWeight::Infinite => return Some(v.clone()),
                ExtWeight::Finite(d) => {
                    let end = start.clone() + d.clone();
                    if *t < end {
                        return Some(v.clone());
                    }
                    start = end;
                }
            }
        }
        None
    }

    /// Finite breakpoints `0 < t_1 < t_2 < …` where the value changes.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out = Vec::new();
        let mut acc = T::zero();
        for (d, _) in &self.pieces {
            if let ExtWeight::Finite(d) = d {
                acc = acc + d.clone();
                out.push(acc.clone());
            }
        }
        out
    }

    pub fn negate(&self) -> Self {
        let monotone = match self.monotone {
            Monotone::NonIncreasing => Monotone::NonDecreasing,
            Monotone::NonDecreasing => Monotone::NonIncreasing,
        };
        StepScale { pieces: self.pieces.iter().map(|(d, v)| (d.clone(), -v.clone())).collect(), monotone }
    }

    /// `∫_0^s` of the scale. Past a finite horizon the integrand counts as 0.
    pub fn integral_to(&self, s: &T) -> T {
        let mut acc = T::zero();
        let mut start = T::zero();
        for (d, v) in &self.pieces {
            if start >= *s {
                break;
            }
            match d {
                ExtWeight::Infinite => {
                    acc = acc + v.clone() * (s.clone() - start.clone());
                    break;
                }
                ExtWeight::Finite(d) => {
                    let end = start.clone() + d.clone();
                    let stop = if end < *s { end.clone() } else { s.clone() };
                    acc = acc + v.clone() * (stop - start.clone());
                    start = end;
                }
            }
        }
        acc
    }

    /// Pointwise sum of two scales of the same monotonicity.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        let mut ri = self.pieces.first().map(|p| p.0.clone());
        let mut rj = other.pieces.first().map(|p| p.0.clone());
        while i < self.pieces.len() && j < other.pieces.len() {
            let (di, dj) = (ri.clone().unwrap(), rj.clone().unwrap());
            let v = self.pieces[i].1.clone() + other.pieces[j].1.clone();
            let step = di.min(&dj);
            out.push((step.clone(), v));
            match step {
                ExtWeight::Infinite => break,
                ExtWeight::Finite(s) => {
                    let ni = di.sub_finite(&s);
                    let nj = dj.sub_finite(&s);
                    if ni.is_zero() {
                        i += 1;
                        ri = self.pieces.get(i).map(|p| p.0.clone());
                    } else {
                        ri = Some(ni);
                    }
                    if nj.is_zero() {
                        j += 1;
                        rj = other.pieces.get(j).map(|p| p.0.clone());
                    } else {
                        rj = Some(nj);
                    }
                }
            }
        }
        StepScale::new(out, self.monotone)
    }
}

/// `λ_t(b)`: values sorted descending, each held for the trace of its
/// spectral projection. The scan stops at the largest infinite-weight value.
pub fn upper_scale<T: Scalar>(b: &StepOperator<T>) -> StepScale<T> {
    let mut pieces = Vec::new();
    for a in b.atoms() {
        pieces.push((a.weight.clone(), a.value.clone()));
        if a.weight.is_infinite() {
            break;
        }
    }
    debug_assert!(b.ambient() == Ambient::FiniteTrace || pieces.last().is_some_and(|p| p.0.is_infinite()));
    StepScale::new(pieces, Monotone::NonIncreasing)
}

/// `μ_t(b) = −λ_t(−b)`.
pub fn lower_scale<T: Scalar>(b: &StepOperator<T>) -> StepScale<T> {
    upper_scale(&b.negate()).negate()
}

/// `ν_t(x) = λ_t(|x|)`.
pub fn singular_scale<T: Scalar>(x: &StepOperator<T>) -> StepScale<T> {
    upper_scale(&x.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn fin(n: i64) -> ExtWeight<Rational> {
        ExtWeight::Finite(r(n))
    }

    fn op(pairs: &[(i64, Option<i64>)]) -> StepOperator<Rational> {
        let pairs: Vec<_> = pairs.iter().map(|(v, w)| (r(*v), w.map(r))).collect();
        StepOperator::from_pairs(&pairs).unwrap()
    }

    #[test]
    fn upper_scale_stops_at_infinite_mass() {
        let b = op(&[(3, Some(2)), (1, None), (0, Some(5))]);
        assert_eq!(upper_scale(&b).pieces(), &[(fin(2), r(3)), (ExtWeight::Infinite, r(1))]);
    }

    #[test]
    fn upper_scale_of_negative_operator() {
        let b = op(&[(-1, None), (-4, Some(1))]);
        assert_eq!(upper_scale(&b).pieces(), &[(ExtWeight::Infinite, r(-1))]);
    }

    #[test]
    fn lower_scale_runs_from_the_bottom() {
        let b = op(&[(3, Some(2)), (1, None), (0, Some(5))]);
        let mu = lower_scale(&b);
        assert_eq!(mu.pieces(), &[(fin(5), r(0)), (ExtWeight::Infinite, r(1))]);
        assert_eq!(mu.monotone(), Monotone::NonDecreasing);
    }

    #[test]
    fn singular_scale_uses_absolute_values() {
        let x = op(&[(-3, Some(1)), (2, None)]);
        assert_eq!(singular_scale(&x).pieces(), &[(fin(1), r(3)), (ExtWeight::Infinite, r(2))]);
        assert_eq!(singular_scale(&StepOperator::<Rational>::zero()).tail_value(), r(0));
    }

    #[test]
    fn identity_scales() {
        let id = StepOperator::<Rational>::identity();
        assert_eq!(lower_scale(&id).pieces(), &[(ExtWeight::Infinite, r(1))]);
    }

    #[test]
    fn value_at_and_integral() {
        let s = upper_scale(&op(&[(3, Some(2)), (1, None)]));
        assert_eq!(s.value_at(&r(0)), Some(r(3)));
        assert_eq!(s.value_at(&r(2)), Some(r(1)));
        assert_eq!(s.integral_to(&r(3)), r(7));
    }

    #[test]
    fn finite_ambient_scale_has_finite_horizon() {
        let s = upper_scale(&op(&[(2, Some(1)), (1, Some(3))]));
        assert_eq!(s.horizon(), fin(4));
        assert_eq!(s.value_at(&r(4)), None);
        assert_eq!(s.integral_to(&r(10)), r(5));
    }
}
