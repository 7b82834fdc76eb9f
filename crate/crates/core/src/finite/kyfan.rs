use crate::error::{Error, Result};
use crate::majorize::vec_majorizes;
use crate::scalar::Real;

use super::jacobi::eigenvalues;
use super::matrix::{DenseMatrix, SymMatrix};

/// Sum of the `k` largest eigenvalues, the maximum of `Tr(AP)` over rank-`k`
/// projections `P`.
pub fn kyfan_upper<F: Real>(a: &SymMatrix<F>, k: usize) -> Result<F> {
    let n = a.order();
    if k == 0 || k > n {
        return Err(Error::OutOfRange { k: k as u64, total: n as u64 });
    }
    Ok(eigenvalues(a)?.into_iter().take(k).fold(F::zero(), |acc, v| acc + v))
}

/// `diag(A) ≺ eig(A)`. Always true; exposed so callers can test it.
pub fn schur_check<F: Real>(a: &SymMatrix<F>) -> Result<bool> {
    let eig = eigenvalues(a)?;
    vec_majorizes(&a.matrix().diag(), &eig)
}

/// Block-diagonal compression: entries outside the blocks are zeroed.
pub fn pinch<F: Real>(a: &SymMatrix<F>, blocks: &[Vec<usize>]) -> Result<SymMatrix<F>> {
    let n = a.order();
    let mut owner = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::BadPartition(format!("block {b} is empty")));
        }
        for &i in block {
            if i >= n {
                return Err(Error::BadPartition(format!("index {i} outside 0..{n}")));
            }
            if owner[i] != usize::MAX {
                return Err(Error::BadPartition(format!("index {i} appears twice")));
            }
            owner[i] = b;
        }
    }
    if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::BadPartition(format!("index {i} is not covered")));
    }
    let m = a.matrix();
    let out = DenseMatrix::from_fn(n, n, |i, j| if owner[i] == owner[j] { *m.get(i, j) } else { F::zero() });
    SymMatrix::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: Vec<Vec<f64>>) -> SymMatrix<f64> {
        SymMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kyfan_values() {
        let id = SymMatrix::new(DenseMatrix::<f64>::identity(5)).unwrap();
        assert!((kyfan_upper(&id, 3).unwrap() - 3.0).abs() < 1e-12);
        let d = SymMatrix::new(DenseMatrix::from_diag(&[3.0f64, 1.0, -2.0])).unwrap();
        assert!((kyfan_upper(&d, 2).unwrap() - 4.0).abs() < 1e-12);
        assert!(kyfan_upper(&d, 4).is_err());
    }

    #[test]
    fn schur_on_small_matrices() {
        assert!(schur_check(&sym(vec![vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap());
        assert!(schur_check(&SymMatrix::new(DenseMatrix::from_diag(&[2.0, -1.0, 5.0])).unwrap()).unwrap());
    }

    #[test]
    fn pinch_extremes() {
        let a = sym(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 5.0], vec![3.0, 5.0, 6.0]]);
        let singletons = pinch(&a, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(singletons.matrix(), &DenseMatrix::from_diag(&[1.0, 4.0, 6.0]));
        assert_eq!(pinch(&a, &[vec![2, 0, 1]]).unwrap(), a);
        let p = pinch(&a, &[vec![0, 2], vec![1]]).unwrap();
        assert_eq!(*p.matrix().get(0, 2), 3.0);
        assert_eq!(*p.matrix().get(0, 1), 0.0);
    }

    #[test]
    fn pinch_rejects_bad_partitions() {
        let a = sym(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(pinch(&a, &[vec![0]]), Err(Error::BadPartition(_))));
        assert!(matches!(pinch(&a, &[vec![0, 1], vec![1]]), Err(Error::BadPartition(_))));
        assert!(matches!(pinch(&a, &[vec![0, 2]]), Err(Error::BadPartition(_))));
    }
}
