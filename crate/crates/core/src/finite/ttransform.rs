//! Doubly stochastic witnesses `x = D·y` built from T-transforms.

use crate::error::{Error, Result};
use crate::majorize::vec_majorizes;
use crate::scalar::{approx_eq, cmp_scalar, Scalar};

use super::matrix::{DenseMatrix, DoublyStochastic};

/// `T = λI + (1−λ)P_{jk}` acting on sorted coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TStep<T> {
    pub j: usize,
    pub k: usize,
    pub lambda: T,
}

#[derive(Clone, Debug)]
pub struct TChain<T> {
    pub steps: Vec<TStep<T>>,
    pub matrix: DoublyStochastic<T>,
}

fn sort_perm<T: Scalar>(v: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| cmp_scalar(&v[b], &v[a]));
    idx
}

/// At most `n − 1` T-transforms carrying `y` to `x`, composed into `D`.
pub fn ttransform_chain<T: Scalar>(x: &[T], y: &[T]) -> Result<TChain<T>> {
    if !vec_majorizes(x, y)? {
        return Err(Error::NotMajorized);
    }
    let n = x.len();
    let (sx, sy) = (sort_perm(x), sort_perm(y));
    let xs: Vec<T> = sx.iter().map(|&i| x[i].clone()).collect();
    let mut z: Vec<T> = sy.iter().map(|&i| y[i].clone()).collect();
    let scale = z.iter().fold(T::one(), |acc, v| acc + v.abs());
    let eq = |a: &T, b: &T| approx_eq(a, b, &scale);
    let mut d = DenseMatrix::<T>::identity(n);
    let mut steps = Vec::new();
    while steps.len() + 1 < n.max(1) {
        let Some(j) = (0..n).rev().find(|&j| xs[j] < z[j] && !eq(&xs[j], &z[j])) else {
            break;
        };
        let Some(k) = (j + 1..n).find(|&k| xs[k] > z[k] && !eq(&xs[k], &z[k])) else {
            break;
        };
        let up = z[j].clone() - xs[j].clone();
        let down = xs[k].clone() - z[k].clone();
        let delta = if up < down { up } else { down };
        let lambda = T::one() - delta.clone() / (z[j].clone() - z[k].clone());
        let mu = T::one() - lambda.clone();
        let (zj, zk) = (z[j].clone(), z[k].clone());
        z[j] = lambda.clone() * zj.clone() + mu.clone() * zk.clone();
        z[k] = mu.clone() * zj + lambda.clone() * zk;
        // D ← T·D
        let (rj, rk) = (d.row(j).to_vec(), d.row(k).to_vec());
        for c in 0..n {
            d.set(j, c, lambda.clone() * rj[c].clone() + mu.clone() * rk[c].clone());
            d.set(k, c, mu.clone() * rj[c].clone() + lambda.clone() * rk[c].clone());
        }
        steps.push(TStep { j, k, lambda });
    }
    if T::EXACT && z != xs {
        return Err(Error::InternalInvariantViolation("T-transform chain did not reach the target".into()));
    }
    let mut out = DenseMatrix::<T>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(sx[i], sy[j], d.get(i, j).clone());
        }
    }
    Ok(TChain { steps, matrix: DoublyStochastic::new_unchecked(out) })
}
