//! Oracles shared by the integration tests. None of them calls the code
//! path it checks.
#![allow(dead_code)]

use nalgebra::DMatrix;
use schur_horn::finite::DenseMatrix;
use schur_horn::spectral::PLFunction;
use schur_horn::{Rational, Scalar};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Largest and smallest sums over all `k`-element subsets of `v`, for every
/// `k` from `0` to `v.len()`. Each subset sum extends a smaller one by its
/// lowest element.
pub fn subset_sum_extremes(v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(v.len() <= 20);
    let n = v.len();
    let mut sums = vec![q(0, 1); 1 << n];
    let mut hi: Vec<Option<Rational>> = vec![None; n + 1];
    let mut lo: Vec<Option<Rational>> = vec![None; n + 1];
    for mask in 0usize..(1 << n) {
        if mask > 0 {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = sums[mask & (mask - 1)].clone() + v[low].clone();
        }
        let (k, s) = (mask.count_ones() as usize, &sums[mask]);
        if hi[k].as_ref().is_none_or(|b| s > b) {
            hi[k] = Some(s.clone());
        }
        if lo[k].as_ref().is_none_or(|b| s < b) {
            lo[k] = Some(s.clone());
        }
    }
    (hi.into_iter().map(Option::unwrap).collect(), lo.into_iter().map(Option::unwrap).collect())
}

pub fn to_nalgebra(m: &DenseMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| *m.get(i, j))
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn eigen_desc(m: &DenseMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = to_nalgebra(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| b.partial_cmp(a).unwrap());
    e
}

pub fn singular_max(m: &DenseMatrix<f64>) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    to_nalgebra(m).singular_values().iter().copied().fold(0.0, f64::max)
}

/// `x ≺ y` by sorted partial sums, up to `tol`.
pub fn majorized_tol(x: &[f64], y: &[f64], tol: f64) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let sort = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    };
    let (xs, ys) = (sort(x), sort(y));
    let (mut px, mut py) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        if px > py + tol {
            return false;
        }
    }
    (px - py).abs() <= tol
}

/// A grid point where `f > g`, checked exactly, on `[0, 2·last knot + 1]`.
pub fn grid_violation(f: &PLFunction<Rational>, g: &PLFunction<Rational>, points: i64) -> Option<Rational> {
    let last = f.last_knot().0.clone().max(g.last_knot().0.clone());
    let h = last * q(2, 1) + q(1, 1);
    (0..=points).map(|i| h.clone() * q(i, points)).find(|t| f.eval(t) > g.eval(t))
}

/// Equality of two curves as functions: values at every knot of either,
/// and tail slopes.
pub fn curves_equal(f: &PLFunction<Rational>, g: &PLFunction<Rational>) -> bool {
    let mut xs = f.abscissae();
    xs.extend(g.abscissae());
    xs.sort();
    xs.dedup();
    f.tail_slope() == g.tail_slope() && xs.iter().all(|t| f.eval(t) == g.eval(t))
}
