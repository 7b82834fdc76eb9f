//! Essential bounds, trace functionals and measure-topology neighborhoods.

use crate::error::{Error, Result};
use crate::extended::{ExtReal, ExtWeight};
use crate::scalar::{positive_part, Scalar};

use super::operator::{Ambient, Atom, StepOperator};
use super::scale::{singular_scale, upper_scale, Monotone, StepScale};

/// `(min, max)` of the values carrying infinite weight.
pub fn ess_bounds<T: Scalar>(b: &StepOperator<T>) -> Result<(T, T)> {
    if b.ambient() != Ambient::SemifiniteInfinite {
        return Err(Error::NoEssentialSpectrum);
    }
    let ess = b.infinite_values();
    let max = ess.first().cloned().ok_or(Error::NoEssentialSpectrum)?;
    let min = ess.last().cloned().ok_or(Error::NoEssentialSpectrum)?;
    Ok((min, max))
}

/// `((b − ess_max)^+, (ess_min − b)^+)`: the parts of `b` sticking out of
/// its essential band, both positive and τ-compact.
pub fn compact_parts<T: Scalar>(b: &StepOperator<T>) -> Result<(StepOperator<T>, StepOperator<T>)> {
    let (lo, hi) = ess_bounds(b)?;
    let upper = b.map_values(|v| positive_part(&(v.clone() - hi.clone())));
    let lower = b.map_values(|v| positive_part(&(lo.clone() - v.clone())));
    Ok((upper, lower))
}

/// `‖x‖_(s) = ∫_0^s ν_t(x) dt`.
pub fn ks_norm<T: Scalar>(x: &StepOperator<T>, s: &T) -> T {
    singular_scale(x).integral_to(s)
}

/// `τ(|x|)`; infinite as soon as a nonzero value carries infinite weight.
pub fn trace_norm<T: Scalar>(x: &StepOperator<T>) -> ExtWeight<T> {
    let mut acc = ExtWeight::zero();
    for a in x.atoms() {
        if a.value.is_zero() {
            continue;
        }
        match &a.weight {
            ExtWeight::Infinite => return ExtWeight::Infinite,
            ExtWeight::Finite(w) => acc = acc.add_finite(&(a.value.abs() * w.clone())),
        }
    }
    acc
}

/// Signed trace `Σ value·weight`. Infinite mass on both sides is an error.
pub fn trace<T: Scalar>(x: &StepOperator<T>) -> Result<ExtReal<T>> {
    let (mut pos_inf, mut neg_inf) = (false, false);
    let mut sum = T::zero();
    for a in x.atoms() {
        match &a.weight {
            ExtWeight::Infinite if a.value.is_positive() => pos_inf = true,
            ExtWeight::Infinite if a.value.is_negative() => neg_inf = true,
            ExtWeight::Infinite => {}
            ExtWeight::Finite(w) => sum = sum + a.value.clone() * w.clone(),
        }
    }
    match (pos_inf, neg_inf) {
        (true, true) => Err(Error::IndeterminateTrace),
        (true, false) => Ok(ExtReal::PosInf),
        (false, true) => Ok(ExtReal::NegInf),
        (false, false) => Ok(ExtReal::Finite(sum)),
    }
}

/// `x` is τ-compact iff all infinite mass sits at 0.
pub fn is_tau_compact<T: Scalar>(x: &StepOperator<T>) -> bool {
    x.atoms().iter().all(|a| !a.weight.is_infinite() || a.value.is_zero())
}

/// Certificate for membership of `x` in `V(ε, δ)`.
///
/// The witness projection is the spectral projection of `{|value| < ε}`; its
/// complement has trace `bad_mass`.
#[derive(Clone, Debug, PartialEq)]
pub struct NbhdCert<T> {
    pub eps: T,
    pub delta: T,
    pub bad_mass: ExtWeight<T>,
    pub member: bool,
}

impl<T: Scalar> NbhdCert<T> {
    /// Re-evaluates `member` from `bad_mass`.
    pub fn consistent(&self) -> bool {
        self.member == self.bad_mass.lt_finite(&self.delta)
    }
}

/// Weight of the cells with `|value| ≥ eps`.
pub fn mass_at_least<T: Scalar>(atoms: &[Atom<T>], eps: &T) -> ExtWeight<T> {
    atoms
        .iter()
        .filter(|a| a.value.abs() >= *eps)
        .fold(ExtWeight::zero(), |acc, a| acc.add(&a.weight))
}

pub fn in_nbhd<T: Scalar>(x: &StepOperator<T>, eps: &T, delta: &T) -> NbhdCert<T> {
    nbhd_from_atoms(x.atoms(), eps, delta)
}

pub(crate) fn nbhd_from_atoms<T: Scalar>(atoms: &[Atom<T>], eps: &T, delta: &T) -> NbhdCert<T> {
    let bad_mass = mass_at_least(atoms, eps);
    let member = bad_mass.lt_finite(delta);
    NbhdCert { eps: eps.clone(), delta: delta.clone(), bad_mass, member }
}

/// Membership implied by a Ky Fan bound alone: if `δ ≤ s` and
/// `‖x‖_(s) < ε·δ` then `x ∈ V(ε, δ)`, since mass `d` at `|value| ≥ ε`
/// forces `‖x‖_(s) ≥ ε·min(s, d)`.
pub fn nbhd_from_ks_bound<T: Scalar>(ks: &T, s: &T, eps: &T, delta: &T) -> bool {
    delta <= s && *ks < eps.clone() * delta.clone()
}

/// Adds a non-increasing step envelope to the upper scale of a positive
/// τ-compact operator and returns the operator with that scale.
pub fn spectral_pad<T: Scalar>(x: &StepOperator<T>, pad: &StepScale<T>) -> Result<StepOperator<T>> {
    if !x.is_positive() {
        return Err(Error::RequiresPositive);
    }
    if !is_tau_compact(x) || x.ambient() != Ambient::SemifiniteInfinite {
        return Err(Error::RequiresCompact);
    }
    if pad.monotone() != Monotone::NonIncreasing || !pad.horizon().is_infinite() {
        return Err(Error::InvalidPad("pad must be non-increasing on [0, ∞)".into()));
    }
    let values: Vec<&T> = pad.pieces().iter().map(|(_, v)| v).collect();
    if values.iter().any(|v| v.is_negative()) || values.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidPad("pad values must be nonnegative and non-increasing".into()));
    }
    if values.iter().all(|v| v.is_zero()) {
        return Err(Error::InvalidPad("pad is identically zero".into()));
    }
    let sum = upper_scale(x).add(pad);
    let atoms = sum.pieces().iter().map(|(d, v)| Atom::new(v.clone(), d.clone())).collect();
    StepOperator::new(atoms, Ambient::SemifiniteInfinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn op(pairs: &[(Rational, Option<Rational>)]) -> StepOperator<Rational> {
        StepOperator::from_pairs(pairs).unwrap()
    }

    #[test]
    fn ess_bounds_scan() {
        let b = op(&[(r(3), Some(r(2))), (r(1), None), (r(0), None)]);
        assert_eq!(ess_bounds(&b).unwrap(), (r(0), r(1)));
        let b = op(&[(r(5), None), (r(-5), None), (r(9), Some(r(1)))]);
        assert_eq!(ess_bounds(&b).unwrap(), (r(-5), r(5)));
        let fin = op(&[(r(1), Some(r(1)))]);
        assert_eq!(ess_bounds(&fin), Err(Error::NoEssentialSpectrum));
    }

    #[test]
    fn compact_parts_by_clamping() {
        let b = op(&[(r(3), Some(r(2))), (r(1), None), (r(0), None)]);
        let (hi, lo) = compact_parts(&b).unwrap();
        assert_eq!(hi, op(&[(r(2), Some(r(2))), (r(0), None)]));
        assert_eq!(lo, StepOperator::zero());
        let (hi, lo) = compact_parts(&StepOperator::scalar(r(4))).unwrap();
        assert_eq!((hi, lo), (StepOperator::zero(), StepOperator::zero()));
    }

    #[test]
    fn ks_norm_values() {
        let x = op(&[(r(3), Some(r(2))), (r(1), None)]);
        assert_eq!(ks_norm(&x, &r(3)), r(7));
        assert_eq!(ks_norm(&x, &r(1)), r(3));
        assert_eq!(ks_norm(&x, &q(5, 2)), q(13, 2));
        assert_eq!(ks_norm(&StepOperator::zero(), &r(9)), r(0));
    }

    #[test]
    fn traces() {
        let x = op(&[(r(2), Some(r(3))), (r(0), None)]);
        assert_eq!(trace_norm(&x), ExtWeight::Finite(r(6)));
        assert_eq!(trace(&x).unwrap(), ExtReal::Finite(r(6)));
        assert_eq!(trace_norm(&StepOperator::<Rational>::identity()), ExtWeight::Infinite);
        let y = op(&[(r(1), Some(r(1))), (r(-1), Some(r(1))), (r(0), None)]);
        assert_eq!(trace(&y).unwrap(), ExtReal::Finite(r(0)));
        assert_eq!(trace_norm(&y), ExtWeight::Finite(r(2)));
        let z = op(&[(r(1), None), (r(-1), None)]);
        assert_eq!(trace(&z), Err(Error::IndeterminateTrace));
    }

    #[test]
    fn compactness() {
        assert!(is_tau_compact(&op(&[(r(3), Some(r(2))), (r(0), None)])));
        assert!(!is_tau_compact(&StepOperator::<Rational>::identity()));
        assert!(is_tau_compact(&StepOperator::<Rational>::zero()));
    }

    #[test]
    fn neighborhood_membership() {
        let x = op(&[(q(1, 20), Some(r(100))), (r(2), Some(q(1, 20))), (r(0), None)]);
        let c = in_nbhd(&x, &q(1, 10), &q(1, 10));
        assert!(c.member);
        assert_eq!(c.bad_mass, ExtWeight::Finite(q(1, 20)));
        assert!(in_nbhd(&StepOperator::<Rational>::zero(), &q(1, 100), &q(1, 100)).member);
        let c = in_nbhd(&StepOperator::identity(), &q(1, 2), &r(1));
        assert!(!c.member && c.bad_mass.is_infinite() && c.consistent());
    }

    #[test]
    fn strict_inequalities() {
        let x = op(&[(r(1), Some(r(1))), (r(0), None)]);
        assert!(!in_nbhd(&x, &r(1), &r(1)).member);
        assert!(in_nbhd(&x, &r(2), &q(1, 100)).member);
    }

    #[test]
    fn ks_bound_conversion() {
        let m = 3;
        let x = op(&[(r(1), Some(q(1, 40))), (r(0), None)]);
        let ks = ks_norm(&x, &r(1));
        assert!(ks < q(1, 4 * m * m));
        assert!(nbhd_from_ks_bound(&ks, &r(1), &q(1, 2 * m), &q(1, 2 * m)));
        assert!(in_nbhd(&x, &q(1, 2 * m), &q(1, 2 * m)).member);
    }

    #[test]
    fn pad_adds_step_scales() {
        let x = op(&[(r(2), Some(r(1))), (r(0), None)]);
        let pad = StepScale::new(
            vec![(ExtWeight::Finite(r(1)), q(1, 7)), (ExtWeight::Finite(r(3)), q(1, 8)), (ExtWeight::Infinite, r(0))],
            Monotone::NonIncreasing,
        );
        let out = spectral_pad(&x, &pad).unwrap();
        assert_eq!(out, op(&[(q(15, 7), Some(r(1))), (q(1, 8), Some(r(3))), (r(0), None)]));
        assert!(is_tau_compact(&out));
    }

    #[test]
    fn single_piece_pad_merges() {
        let x = op(&[(r(2), Some(r(1))), (r(0), None)]);
        let pad = StepScale::new(
            vec![(ExtWeight::Finite(r(2)), r(1)), (ExtWeight::Infinite, r(0))],
            Monotone::NonIncreasing,
        );
        assert_eq!(spectral_pad(&x, &pad).unwrap(), op(&[(r(3), Some(r(1))), (r(1), Some(r(1))), (r(0), None)]));
    }

    #[test]
    fn pad_preconditions() {
        let zero_pad = StepScale::new(vec![(ExtWeight::Infinite, r(0))], Monotone::NonIncreasing);
        assert!(matches!(spectral_pad(&StepOperator::zero(), &zero_pad), Err(Error::InvalidPad(_))));
        let pad = StepScale::new(vec![(ExtWeight::Infinite, q(1, 2))], Monotone::NonIncreasing);
        assert_eq!(spectral_pad(&StepOperator::identity(), &pad), Err(Error::RequiresCompact));
        let out = spectral_pad(&StepOperator::zero(), &pad).unwrap();
        assert!(!is_tau_compact(&out));
    }
}
