//! Finitely-valued sequences and their partial-sum functionals `U_k`, `L_k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::extended::Mult;
use crate::scalar::{cmp_scalar, Scalar};
use crate::spectral::PLFunction;

use super::dominance::pl_dominates;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileTag {
    /// Models a sequence indexed by ℕ; total multiplicity is infinite.
    Ambient,
    /// Finite-length intermediate produced by truncation.
    Truncated,
}

/// A bounded sequence taking finitely many values, each with a multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile<T> {
    entries: Vec<(T, Mult)>,
    tag: ProfileTag,
}

impl<T: Scalar> Profile<T> {
    /// Merges equal values, sorts descending and checks the tag.
    pub fn new(entries: Vec<(T, Mult)>, tag: ProfileTag) -> Result<Self> {
        if entries.iter().any(|(_, m)| *m == Mult::Finite(0)) {
            return Err(Error::InvalidProfile("zero multiplicity".into()));
        }
        let mut entries = entries;
        entries.sort_by(|a, b| cmp_scalar(&b.0, &a.0));
        let mut merged: Vec<(T, Mult)> = Vec::with_capacity(entries.len());
        for (v, m) in entries {
            match merged.last_mut() {
                Some((lv, lm)) if *lv == v => *lm = lm.add(m),
                _ => merged.push((v, m)),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidProfile("no entries".into()));
        }
        let infinite = merged.iter().any(|(_, m)| m.is_infinite());
        match tag {
            ProfileTag::Ambient if !infinite => {
                return Err(Error::InvalidProfile("ambient profile needs infinite total multiplicity".into()))
            }
            ProfileTag::Truncated if infinite => {
                return Err(Error::InvalidProfile("truncated profile must be finite".into()))
            }
            _ => {}
        }
        Ok(Profile { entries: merged, tag })
    }

    pub fn ambient(entries: Vec<(T, Mult)>) -> Result<Self> {
        Self::new(entries, ProfileTag::Ambient)
    }

    /// Finite profile listing each entry of `v` once.
    pub fn from_vec(v: &[T]) -> Result<Self> {
        Self::new(v.iter().map(|x| (x.clone(), Mult::Finite(1))).collect(), ProfileTag::Truncated)
    }

    /// The constant sequence `c`.
    pub fn constant(c: T) -> Self {
        Profile { entries: vec![(c, Mult::Infinite)], tag: ProfileTag::Ambient }
    }

    pub fn entries(&self) -> &[(T, Mult)] {
        &self.entries
    }

    pub fn tag(&self) -> ProfileTag {
        self.tag
    }

    pub fn total_mult(&self) -> Mult {
        self.entries.iter().fold(Mult::Finite(0), |acc, (_, m)| acc.add(*m))
    }

    pub fn max_value(&self) -> T {
        self.entries[0].0.clone()
    }

    pub fn min_value(&self) -> T {
        self.entries[self.entries.len() - 1].0.clone()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.min_value().is_negative()
    }

    pub fn map_values<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let entries = self.entries.iter().map(|(v, m)| (f(v), *m)).collect();
        Self::new(entries, self.tag).expect("multiplicities already valid")
    }

    pub fn negate(&self) -> Self {
        self.map_values(|v| -v.clone())
    }

    pub fn shift(&self, c: &T) -> Self {
        self.map_values(|v| v.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_values(|v| v.clone() * c.clone())
    }

    /// Disjoint union (multiplicities add on equal values).
    pub fn union(&self, other: &Self) -> Self {
        let tag = if self.tag == ProfileTag::Ambient || other.tag == ProfileTag::Ambient {
            ProfileTag::Ambient
        } else {
            ProfileTag::Truncated
        };
        let entries = self.entries.iter().chain(&other.entries).cloned().collect();
        Self::new(entries, tag).expect("union of valid profiles")
    }

    /// Entries of a finite profile, descending, with repetition.
    pub fn to_vec(&self) -> Result<Vec<T>> {
        let mut out = Vec::new();
        for (v, m) in &self.entries {
            let k = m.finite().ok_or(Error::InvalidProfile("infinite multiplicity cannot be listed".into()))?;
            out.extend(std::iter::repeat(v.clone()).take(k as usize));
        }
        Ok(out)
    }

    /// The first `n` entries of the non-increasing rearrangement.
    pub fn top(&self, n: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(n);
        for (v, m) in &self.entries {
            let take = match m {
                Mult::Infinite => n - out.len(),
                Mult::Finite(k) => (*k as usize).min(n - out.len()),
            };
            out.extend(std::iter::repeat(v.clone()).take(take));
            if out.len() == n {
                break;
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for Profile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        write!(f, "}}")
    }
}

/// `k ↦ S_k` given by its breakpoints; linear between them and continued by
/// `tail_increment` beyond the last one. `tail_increment` is `None` for
/// finite profiles, where `S_k` stops at the last break.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqPartialSums<T> {
    pub breaks: Vec<(u64, T)>,
    pub tail_increment: Option<T>,
}

impl<T: Scalar> SeqPartialSums<T> {
    pub fn eval(&self, k: u64) -> Result<T> {
        let (mut k0, mut s0) = (0u64, T::zero());
        for (kb, sb) in &self.breaks {
            if k <= *kb {
                let inc = (sb.clone() - s0.clone()) / from_u64::<T>(kb - k0);
                return Ok(s0 + inc * from_u64(k - k0));
            }
            k0 = *kb;
            s0 = sb.clone();
        }
        match &self.tail_increment {
            Some(inc) => Ok(s0 + inc.clone() * from_u64(k - k0)),
            None => Err(Error::OutOfRange { k, total: k0 }),
        }
    }

    /// The interpolating curve through `(k, S_k)`; flat after a finite end.
    pub fn to_curve(&self) -> PLFunction<T> {
        let mut knots = vec![(T::zero(), T::zero())];
        knots.extend(self.breaks.iter().map(|(k, s)| (from_u64(*k), s.clone())));
        PLFunction::new(knots, self.tail_increment.clone().unwrap_or_else(T::zero))
    }
}

fn from_u64<T: Scalar>(k: u64) -> T {
    T::from_u64(k).expect("count fits the scalar type")
}

/// `U_k(f)`: sum of the `k` largest entries counted with multiplicity.
pub fn prof_upper<T: Scalar>(f: &Profile<T>, k: u64) -> Result<T> {
    let mut left = k;
    let mut acc = T::zero();
    for (v, m) in f.entries() {
        if left == 0 {
            break;
        }
        let take = match m {
            Mult::Infinite => left,
            Mult::Finite(c) => (*c).min(left),
        };
        acc = acc + v.clone() * from_u64(take);
        left -= take;
    }
    if left > 0 {
        let total = f.total_mult().finite().unwrap_or(0);
        return Err(Error::OutOfRange { k, total });
    }
    Ok(acc)
}

/// `L_k(f) = −U_k(−f)`.
pub fn prof_lower<T: Scalar>(f: &Profile<T>, k: u64) -> Result<T> {
    prof_upper(&f.negate(), k).map(|v| -v)
}

/// Closed form of `k ↦ U_k(f)`.
pub fn prof_upper_fn<T: Scalar>(f: &Profile<T>) -> SeqPartialSums<T> {
    let mut breaks = Vec::new();
    let (mut k, mut s) = (0u64, T::zero());
    for (v, m) in f.entries() {
        match m {
            Mult::Infinite => return SeqPartialSums { breaks, tail_increment: Some(v.clone()) },
            Mult::Finite(c) => {
                k += c;
                s = s + v.clone() * from_u64(*c);
                breaks.push((k, s.clone()));
            }
        }
    }
    SeqPartialSums { breaks, tail_increment: None }
}

/// Closed form of `k ↦ L_k(f)`.
pub fn prof_lower_fn<T: Scalar>(f: &Profile<T>) -> SeqPartialSums<T> {
    let u = prof_upper_fn(&f.negate());
    SeqPartialSums {
        breaks: u.breaks.into_iter().map(|(k, s)| (k, -s)).collect(),
        tail_increment: u.tail_increment.map(|v| -v),
    }
}

fn check_lengths<T: Scalar>(f: &Profile<T>, g: &Profile<T>) -> Result<()> {
    match (f.total_mult(), g.total_mult()) {
        (Mult::Finite(a), Mult::Finite(b)) if a != b => Err(Error::LengthMismatch(a as usize, b as usize)),
        (Mult::Finite(_), Mult::Infinite) | (Mult::Infinite, Mult::Finite(_)) => {
            Err(Error::InvalidProfile("cannot compare a finite profile with an ambient one".into()))
        }
        _ => Ok(()),
    }
}

/// `f ≺_w g`: `U_k(f) ≤ U_k(g)` for every `k`.
pub fn prof_submajorizes<T: Scalar>(f: &Profile<T>, g: &Profile<T>) -> Result<bool> {
    check_lengths(f, g)?;
    Ok(pl_dominates(&prof_upper_fn(f).to_curve(), &prof_upper_fn(g).to_curve()))
}

/// `f ≺ g`: submajorization plus `L_k(f) ≥ L_k(g)` for every `k`.
pub fn prof_majorizes<T: Scalar>(f: &Profile<T>, g: &Profile<T>) -> Result<bool> {
    Ok(prof_submajorizes(f, g)?
        && pl_dominates(&prof_lower_fn(g).to_curve(), &prof_lower_fn(f).to_curve()))
}
