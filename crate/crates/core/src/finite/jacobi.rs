//! Cyclic Jacobi eigensolver for real symmetric matrices.

use crate::error::{Error, Result};
use crate::scalar::{cmp_scalar, Real};

use super::matrix::{DenseMatrix, SymMatrix};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (non-increasing) and the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigen<F> {
    pub values: Vec<F>,
    pub vectors: DenseMatrix<F>,
}

/// Sweeps until the off-diagonal Frobenius norm drops below
/// `max(1e−12, ε_machine)·‖A‖_F`.
pub fn symmetric_eigen<F: Real>(a: &SymMatrix<F>) -> Result<Eigen<F>> {
    let n = a.order();
    let mut m = a.matrix().clone();
    let mut v = DenseMatrix::<F>::identity(n);
    let rel = F::from_f64(1e-12).unwrap().max(F::epsilon());
    let threshold = rel * m.frobenius();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = *m.get(p, q);
                if apq == F::zero() {
                    continue;
                }
                let (app, aqq) = (*m.get(p, p), *m.get(q, q));
                let two = F::one() + F::one();
                let theta = (aqq - app) / (two * apq);
                let t = {
                    let sign = if theta < F::zero() { -F::one() } else { F::one() };
                    sign / (num_traits::Float::abs(theta) + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_diagonal(&m) > threshold {
        return Err(Error::EigenFailure(MAX_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cmp_scalar(m.get(j, j), m.get(i, i)));
    let values = order.iter().map(|&i| *m.get(i, i)).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, c| *v.get(r, order[c]));
    Ok(Eigen { values, vectors })
}

fn off_diagonal<F: Real>(m: &DenseMatrix<F>) -> F {
    let n = m.rows();
    let mut acc = F::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + *m.get(i, j) * *m.get(i, j);
            }
        }
    }
    acc.sqrt()
}

/// `M ← JᵀMJ`, `V ← VJ` for the rotation `J` in the `(p, q)` plane.
fn rotate<F: Real>(m: &mut DenseMatrix<F>, v: &mut DenseMatrix<F>, p: usize, q: usize, c: F, s: F) {
    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (*m.get(k, p), *m.get(k, q));
        m.set(k, p, c * mkp - s * mkq);
        m.set(k, q, s * mkp + c * mkq);
    }
    for k in 0..n {
        let (mpk, mqk) = (*m.get(p, k), *m.get(q, k));
        m.set(p, k, c * mpk - s * mqk);
        m.set(q, k, s * mpk + c * mqk);
    }
    m.set(p, q, F::zero());
    m.set(q, p, F::zero());
    for k in 0..n {
        let (vkp, vkq) = (*v.get(k, p), *v.get(k, q));
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

pub fn eigenvalues<F: Real>(a: &SymMatrix<F>) -> Result<Vec<F>> {
    symmetric_eigen(a).map(|e| e.values)
}

/// Largest singular value, from the top eigenvalue of the smaller of `MᵀM`
/// and `MMᵀ`.
pub fn largest_singular_value<F: Real>(m: &DenseMatrix<F>) -> Result<F> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(F::zero());
    }
    let t = m.transpose();
    let gram = if m.rows() < m.cols() { m.matmul(&t)? } else { t.matmul(m)? };
    let gram = DenseMatrix::from_fn(gram.rows(), gram.cols(), |i, j| {
        let two = F::one() + F::one();
        (*gram.get(i, j) + *gram.get(j, i)) / two
    });
    let top = eigenvalues(&SymMatrix::new(gram)?)?[0];
    Ok(top.max(F::zero()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_swap() {
        let a = SymMatrix::from_rows(vec![vec![0.0f64, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = symmetric_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstructs_matrix() {
        let a = SymMatrix::from_rows(vec![
            vec![4.0, 1.0, -2.0],
            vec![1.0, 2.0, 0.5],
            vec![-2.0, 0.5, -3.0],
        ])
        .unwrap();
        let e = symmetric_eigen(&a).unwrap();
        let d = DenseMatrix::from_diag(&e.values);
        let back = e.vectors.matmul(&d).unwrap().matmul(&e.vectors.transpose()).unwrap();
        assert!(back.max_abs_diff(a.matrix()) < 1e-12);
        assert!(e.vectors.orthogonality_defect() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn single_precision_converges() {
        let a = SymMatrix::from_rows(vec![vec![2.0f32, 1.0], vec![1.0, 2.0]]).unwrap();
        let vals = eigenvalues(&a).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-5 && (vals[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn singular_value_of_row() {
        let m = DenseMatrix::from_rows(vec![vec![3.0f64, 4.0]]).unwrap();
        assert!((largest_singular_value(&m).unwrap() - 5.0).abs() < 1e-12);
    }
}
