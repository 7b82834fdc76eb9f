//! Convex decomposition of a doubly stochastic matrix into permutations.

use crate::error::{Error, Result};
use crate::scalar::{cmp_scalar, Scalar};

use super::matrix::{DenseMatrix, DoublyStochastic};

/// `D = Σ coeff·P_σ`, where `σ[i]` is the column matched to row `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BirkhoffDecomp<T> {
    pub terms: Vec<(T, Vec<usize>)>,
}

impl<T: Scalar> BirkhoffDecomp<T> {
    pub fn reconstruct(&self, n: usize) -> DenseMatrix<T> {
        let mut m = DenseMatrix::<T>::zeros(n, n);
        for (c, perm) in &self.terms {
            for (i, &j) in perm.iter().enumerate() {
                let v = m.get(i, j).clone() + c.clone();
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn coefficient_sum(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, (c, _)| acc + c.clone())
    }
}

/// Kuhn's augmenting-path matching on `{(i, j) : allowed(i, j)}`; returns the
/// column of each row when a perfect matching exists.
fn perfect_matching(n: usize, allowed: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        i: usize,
        n: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..n {
            if !allowed(i, j) || seen[j] {
                continue;
            }
            seen[j] = true;
            let free = match col_owner[j] {
                None => true,
                Some(other) => augment(other, n, allowed, seen, col_owner),
            };
            if free {
                col_owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut col_owner = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, n, allowed, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, owner) in col_owner.iter().enumerate() {
        perm[owner.expect("perfect matching")] = j;
    }
    Some(perm)
}

/// Peels permutation matrices off `D`, each time choosing a perfect matching
/// of the support that maximizes its smallest entry.
pub fn birkhoff_decompose<T: Scalar>(d: &DoublyStochastic<T>) -> Result<BirkhoffDecomp<T>> {
    let n = d.order();
    let tol = if T::EXACT { T::zero() } else { T::from_f64(1e-12).unwrap() };
    let max_terms = (n.saturating_sub(1)).pow(2) + 1;
    let mut m = d.matrix().clone();
    let mut remaining = T::one();
    let mut terms = Vec::new();
    let stop = tol.clone() * T::from_usize(n.max(1)).unwrap();
    while remaining > stop {
        if terms.len() == max_terms {
            return Err(Error::DecompositionFailed(format!("more than {max_terms} terms needed")));
        }
        let mut support: Vec<T> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if *m.get(i, j) > tol {
                    support.push(m.get(i, j).clone());
                }
            }
        }
        support.sort_by(cmp_scalar);
        support.dedup();
        // Largest threshold whose super-level set still has a perfect matching.
        let feasible = |th: &T| perfect_matching(n, &|i, j| *m.get(i, j) >= *th && *m.get(i, j) > tol);
        let Some(mut best) = support.first().and_then(|th| feasible(th)) else {
            if !T::EXACT && m.max_abs() <= super::matrix::ds_tolerance::<T>() {
                break;
            }
            return Err(Error::DecompositionFailed("support has no perfect matching".into()));
        };
        let (mut lo, mut hi) = (0usize, support.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            match feasible(&support[mid]) {
                Some(p) => {
                    best = p;
                    lo = mid;
                }
                None => hi = mid,
            }
        }
        let coeff = best.iter().enumerate().map(|(i, &j)| m.get(i, j).clone()).fold(None, |acc: Option<T>, v| {
            Some(match acc {
                Some(a) if a <= v => a,
                _ => v,
            })
        });
        let coeff = coeff.unwrap_or_else(T::zero);
        for (i, &j) in best.iter().enumerate() {
            let mut v = m.get(i, j).clone() - coeff.clone();
            if v <= tol {
                v = T::zero();
            }
            m.set(i, j, v);
        }
        remaining = remaining - coeff.clone();
        terms.push((coeff, best));
    }
    Ok(BirkhoffDecomp { terms })
}
