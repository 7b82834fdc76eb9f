//! Partition of the essential band into short intervals with representatives.

use std::fmt;

use crate::error::{Error, Result};
use crate::extended::{ExtWeight, Mult};
use crate::scalar::Scalar;
use crate::spectral::{ess_bounds, Atom, StepOperator};

use super::params::to_u64;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
    /// Representative value for the spectral mass landing here.
    pub gamma: T,
    /// `gamma` was fixed to an essential value rather than the midpoint.
    pub pinned: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn contains(&self, v: &T) -> bool {
        let above = if self.lo_closed { *v >= self.lo } else { *v > self.lo };
        let below = if self.hi_closed { *v <= self.hi } else { *v < self.hi };
        above && below
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r} gamma={}", self.lo, self.hi, self.gamma)?;
        if self.pinned {
            write!(f, " pinned")?;
        }
        Ok(())
    }
}

/// Consecutive disjoint intervals covering `[emin − 1/m, emax + 1/m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPartition<T> {
    pub intervals: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalPartition<T> {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn locate(&self, v: &T) -> Option<usize> {
        self.intervals.iter().position(|i| i.contains(v))
    }

    pub fn max_length(&self) -> T {
        self.intervals.iter().map(|i| i.length()).fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn gammas(&self) -> Vec<T> {
        self.intervals.iter().map(|i| i.gamma.clone()).collect()
    }
}

/// Partition for `b`: the band is its essential range, and middle intervals
/// holding one of its essential values take that value as representative.
pub fn build_partition<T: Scalar>(b: &StepOperator<T>, m: u64) -> Result<IntervalPartition<T>> {
    let (lo, hi) = ess_bounds(b)?;
    Ok(build_partition_band(&lo, &hi, m, &b.infinite_values()))
}

/// End intervals `[emin − 1/m, emin)` and `(emax, emax + 1/m]` represented by
/// `emin` and `emax`; the band itself cut into `max(⌊(emax − emin)m⌋ + 1, 2)`
/// equal pieces, each strictly shorter than `1/m`, or a single point when
/// `emin = emax`.
pub fn build_partition_band<T: Scalar>(emin: &T, emax: &T, m: u64, pins: &[T]) -> IntervalPartition<T> {
    let w = T::one() / T::from_u64(m.max(1)).unwrap();
    let mut intervals = vec![Interval {
        lo: emin.clone() - w.clone(),
        hi: emin.clone(),
        lo_closed: true,
        hi_closed: false,
        gamma: emin.clone(),
        pinned: true,
    }];
    if emin == emax {
        intervals.push(Interval {
            lo: emin.clone(),
            hi: emax.clone(),
            lo_closed: true,
            hi_closed: true,
            gamma: emin.clone(),
            pinned: true,
        });
    } else {
        let width = emax.clone() - emin.clone();
        let k = to_u64(&(width.clone() * T::from_u64(m.max(1)).unwrap()).floor_value()).map_or(2, |k| k + 1).max(2);
        let h = width / T::from_u64(k).unwrap();
        let mut sorted_pins: Vec<T> = pins.to_vec();
        sorted_pins.sort_by(|a, b| crate::scalar::cmp_scalar(b, a));
        for i in 0..k {
            let lo = emin.clone() + h.clone() * T::from_u64(i).unwrap();
            let last = i + 1 == k;
            let hi = if last { emax.clone() } else { emin.clone() + h.clone() * T::from_u64(i + 1).unwrap() };
            let mut iv = Interval {
                lo: lo.clone(),
                hi: hi.clone(),
                lo_closed: true,
                hi_closed: last,
                gamma: (lo + hi) / T::from_int(2),
                pinned: false,
            };
            let pin = if i == 0 {
                Some(emin.clone())
            } else if last {
                Some(emax.clone())
            } else {
                sorted_pins.iter().find(|p| iv.contains(p)).cloned()
            };
            if let Some(p) = pin {
                iv.gamma = p;
                iv.pinned = true;
            }
            intervals.push(iv);
        }
    }
    intervals.push(Interval {
        lo: emax.clone(),
        hi: emax.clone() + w,
        lo_closed: false,
        hi_closed: true,
        gamma: emax.clone(),
        pinned: true,
    });
    IntervalPartition { intervals }
}

/// Mass of one interval, split into whole cells of width `t/N` and a rest.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalCount<T> {
    pub mass: ExtWeight<T>,
    pub floor_count: Mult,
    pub remainder: T,
}

impl<T: Scalar> IntervalCount<T> {
    pub fn from_mass(mass: ExtWeight<T>, cell: &T) -> Result<Self> {
        match &mass {
            ExtWeight::Infinite => Ok(IntervalCount { mass, floor_count: Mult::Infinite, remainder: T::zero() }),
            ExtWeight::Finite(w) => {
                let k = (w.clone() / cell.clone()).floor_value();
                let remainder = w.clone() - k.clone() * cell.clone();
                Ok(IntervalCount { floor_count: Mult::Finite(to_u64(&k)?), remainder, mass })
            }
        }
    }
}

/// Per-interval masses of `atoms`, which must all fall inside the partition.
pub fn count_atoms<T: Scalar>(atoms: &[Atom<T>], cell: &T, part: &IntervalPartition<T>) -> Result<Vec<IntervalCount<T>>> {
    let mut mass = vec![ExtWeight::zero(); part.len()];
    for a in atoms {
        let j = part.locate(&a.value).ok_or_else(|| {
            Error::InternalInvariantViolation(format!("value {} lies outside the interval partition", a.value))
        })?;
        mass[j] = mass[j].add(&a.weight);
    }
    mass.into_iter().map(|w| IntervalCount::from_mass(w, cell)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn single_point_band() {
        let p = build_partition_band(&q(1, 1), &q(1, 1), 2, &[q(1, 1)]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.gammas(), vec![q(1, 1); 3]);
        assert!(p.intervals[1].contains(&q(1, 1)));
        assert_eq!(p.locate(&q(3, 2)), Some(2));
        assert_eq!(p.locate(&q(1, 2)), Some(0));
        assert_eq!(p.locate(&q(8, 5)), None);
    }

    #[test]
    fn unit_band() {
        let b = StepOperator::from_pairs(&[(q(1, 1), None), (q(0, 1), None)]).unwrap();
        let p = build_partition(&b, 1).unwrap();
        assert!(p.len() <= 5);
        assert_eq!(p.intervals[1].gamma, q(0, 1));
        assert_eq!(p.intervals[p.len() - 2].gamma, q(1, 1));
        assert!(p.max_length() <= q(1, 1));
    }

    #[test]
    fn interior_pins_and_midpoints() {
        let p = build_partition_band(&q(0, 1), &q(2, 1), 2, &[q(2, 1), q(9, 8), q(0, 1)]);
        assert_eq!(p.len(), 7);
        let g = p.gammas();
        assert_eq!(g, vec![q(0, 1), q(0, 1), q(3, 5), q(9, 8), q(7, 5), q(2, 1), q(2, 1)]);
        assert!(p.intervals[2].contains(&q(1, 2)) && !p.intervals[2].pinned);
        assert!(p.intervals[3].contains(&q(7, 8)) && p.intervals[3].pinned);
        assert!(p.intervals[1..6].iter().all(|i| i.length() < q(1, 2)));
    }

    #[test]
    fn floor_arithmetic() {
        let c = IntervalCount::from_mass(ExtWeight::Finite(q(7, 3)), &q(1, 2)).unwrap();
        assert_eq!((c.floor_count, c.remainder), (Mult::Finite(4), q(1, 3)));
        let z = IntervalCount::from_mass(ExtWeight::Finite(q(0, 1)), &q(1, 2)).unwrap();
        assert_eq!((z.floor_count, z.remainder), (Mult::Finite(0), q(0, 1)));
        let inf = IntervalCount::<Rational>::from_mass(ExtWeight::Infinite, &q(1, 2)).unwrap();
        assert_eq!((inf.floor_count, inf.remainder), (Mult::Infinite, q(0, 1)));
    }
}
