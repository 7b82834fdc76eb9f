use std::fmt;

use crate::error::{Error, Result};
use crate::extended::ExtWeight;
use crate::scalar::{cmp_scalar, Scalar};

/// Whether the surrounding trace is infinite or finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// Infinite total trace; at least one atom carries infinite weight.
    SemifiniteInfinite,
    /// Every weight is finite.
    FiniteTrace,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::SemifiniteInfinite => "inf",
            Ambient::FiniteTrace => "fin",
        })
    }
}

/// A spectral value together with the trace of its spectral projection.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<T> {
    pub value: T,
    pub weight: ExtWeight<T>,
}

impl<T: Scalar> Atom<T> {
    pub fn new(value: T, weight: ExtWeight<T>) -> Self {
        Atom { value, weight }
    }

    pub fn finite(value: T, weight: T) -> Self {
        Atom { value, weight: ExtWeight::Finite(weight) }
    }

    pub fn infinite(value: T) -> Self {
        Atom { value, weight: ExtWeight::Infinite }
    }
}

/// Merges equal values (weights add, `∞` absorbs) and sorts by descending value.
///
/// The empty list is returned unchanged; it is only meaningful as an
/// intermediate.
pub fn normalize<T: Scalar>(atoms: Vec<Atom<T>>) -> Result<Vec<Atom<T>>> {
    let mut atoms = atoms;
    for a in &atoms {
        match &a.weight {
            ExtWeight::Finite(w) if !w.is_positive() => {
                return Err(Error::InvalidAtom(format!("weight {w} at value {} is not positive", a.value)))
            }
            _ => {}
        }
    }
    atoms.sort_by(|a, b| cmp_scalar(&b.value, &a.value));
    let mut out: Vec<Atom<T>> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match out.last_mut() {
            Some(last) if last.value == a.value => last.weight = last.weight.add(&a.weight),
            _ => out.push(a),
        }
    }
    Ok(out)
}

/// Atomic model of a selfadjoint operator: its spectral values and the
/// traces of the corresponding spectral projections.
#[derive(Clone, Debug, PartialEq)]
pub struct StepOperator<T> {
    atoms: Vec<Atom<T>>,
    ambient: Ambient,
}

impl<T: Scalar> StepOperator<T> {
    /// Validates, normalizes and checks the ambient invariants.
    pub fn new(atoms: Vec<Atom<T>>, ambient: Ambient) -> Result<Self> {
        let atoms = normalize(atoms)?;
        if atoms.is_empty() {
            return Err(Error::InvalidAtom("operator has no atoms".into()));
        }
        let has_infinite = atoms.iter().any(|a| a.weight.is_infinite());
        match ambient {
            Ambient::SemifiniteInfinite if !has_infinite => {
                return Err(Error::AmbientMismatch("infinite ambient needs an atom of infinite weight".into()))
            }
            Ambient::FiniteTrace if has_infinite => {
                return Err(Error::AmbientMismatch("finite-trace ambient forbids infinite weights".into()))
            }
            _ => {}
        }
        Ok(StepOperator { atoms, ambient })
    }

    /// Builds an operator in the infinite ambient from `(value, weight)` pairs;
    /// `None` stands for infinite weight.
    pub fn from_pairs(pairs: &[(T, Option<T>)]) -> Result<Self> {
        let atoms = pairs
            .iter()
            .map(|(v, w)| Atom::new(v.clone(), w.clone().map_or(ExtWeight::Infinite, ExtWeight::Finite)))
            .collect();
        let ambient = if pairs.iter().any(|(_, w)| w.is_none()) {
            Ambient::SemifiniteInfinite
        } else {
            Ambient::FiniteTrace
        };
        Self::new(atoms, ambient)
    }

    /// `c·I` in the infinite ambient.
    pub fn scalar(c: T) -> Self {
        StepOperator { atoms: vec![Atom::infinite(c)], ambient: Ambient::SemifiniteInfinite }
    }

    pub fn zero() -> Self {
        Self::scalar(T::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    /// Atoms in canonical order (strictly descending values).
    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn total_weight(&self) -> ExtWeight<T> {
        self.atoms.iter().fold(ExtWeight::zero(), |acc, a| acc.add(&a.weight))
    }

    pub fn max_value(&self) -> T {
        self.atoms[0].value.clone()
    }

    pub fn min_value(&self) -> T {
        self.atoms[self.atoms.len() - 1].value.clone()
    }

    /// Operator norm, `max |value|`.
    pub fn norm(&self) -> T {
        let (hi, lo) = (self.max_value().abs(), self.min_value().abs());
        if hi >= lo {
            hi
        } else {
            lo
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.min_value().is_negative()
    }

    /// Applies `f` to every value; weights are kept and equal images merged.
    pub fn map_values<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let atoms = self.atoms.iter().map(|a| Atom::new(f(&a.value), a.weight.clone())).collect();
        StepOperator { atoms: normalize(atoms).expect("weights already validated"), ambient: self.ambient }
    }

    pub fn negate(&self) -> Self {
        self.map_values(|v| -v.clone())
    }

    pub fn abs(&self) -> Self {
        self.map_values(|v| v.abs())
    }

    /// `self + c·I`.
    pub fn shift(&self, c: &T) -> Self {
        self.map_values(|v| v.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_values(|v| v.clone() * c.clone())
    }

    /// Values carrying infinite weight, descending.
    pub fn infinite_values(&self) -> Vec<T> {
        self.atoms.iter().filter(|a| a.weight.is_infinite()).map(|a| a.value.clone()).collect()
    }

    pub fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        if self.ambient == Ambient::FiniteTrace && self.total_weight() != other.total_weight() {
            return Err(Error::AmbientMismatch(format!(
                "total traces differ: {} vs {}",
                self.total_weight(),
                other.total_weight()
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for StepOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", a.value, a.weight)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn merges_equal_values() {
        let atoms = normalize(vec![Atom::finite(r(1), r(2)), Atom::finite(r(1), r(3))]).unwrap();
        assert_eq!(atoms, vec![Atom::finite(r(1), r(5))]);
    }

    #[test]
    fn infinity_absorbs_on_merge() {
        let atoms = normalize(vec![Atom::infinite(r(1)), Atom::finite(r(1), r(2))]).unwrap();
        assert_eq!(atoms, vec![Atom::infinite(r(1))]);
    }

    #[test]
    fn empty_list_is_a_valid_intermediate() {
        assert!(normalize::<Rational>(vec![]).unwrap().is_empty());
        assert!(StepOperator::<Rational>::new(vec![], Ambient::FiniteTrace).is_err());
    }

    #[test]
    fn zero_weight_rejected() {
        let err = normalize(vec![Atom::finite(r(1), r(0))]).unwrap_err();
        assert!(matches!(err, Error::InvalidAtom(_)));
    }

    #[test]
    fn ambient_invariants() {
        assert!(StepOperator::new(vec![Atom::finite(r(1), r(1))], Ambient::SemifiniteInfinite).is_err());
        assert!(StepOperator::new(vec![Atom::infinite(r(1))], Ambient::FiniteTrace).is_err());
    }

    #[test]
    fn canonical_order_is_descending() {
        let op = StepOperator::from_pairs(&[(r(0), Some(r(5))), (r(3), Some(r(2))), (r(1), None)]).unwrap();
        let values: Vec<_> = op.atoms().iter().map(|a| a.value.clone()).collect();
        assert_eq!(values, vec![r(3), r(1), r(0)]);
        assert_eq!(op.norm(), r(3));
    }
}
