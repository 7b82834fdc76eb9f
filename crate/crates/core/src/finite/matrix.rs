//! Dense row-major matrices and the validated wrappers used by the finite stage.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("rectangular (ragged rows)".into()));
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::LengthMismatch(self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> T {
        self.diag().into_iter().fold(T::zero(), |acc, v| acc + v)
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> DenseMatrix<U> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).clone() * other.get(i, j).clone())
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| if v.abs() > acc { v.abs() } else { acc })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| {
                let d = (a.clone() - b.clone()).abs();
                if d > acc {
                    d
                } else {
                    acc
                }
            })
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.rows).map(|i| self.row(i).iter().fold(T::zero(), |acc, v| acc + v.clone())).collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, j).clone()))
            .collect()
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<F: Real> DenseMatrix<F> {
    pub fn frobenius(&self) -> F {
        self.data.iter().fold(F::zero(), |acc, v| acc + *v * *v).sqrt()
    }

    /// `max |MᵀM − I|`, computed exactly for every entry.
    pub fn orthogonality_defect(&self) -> F {
        let n = self.cols;
        let mut worst = F::zero();
        for i in 0..n {
            for j in i..n {
                let mut dot = F::zero();
                for k in 0..self.rows {
                    dot = dot + *self.get(k, i) * *self.get(k, j);
                }
                let target = if i == j { F::one() } else { F::zero() };
                worst = worst.max(num_traits::Float::abs(dot - target));
            }
        }
        worst
    }
}

impl<T: Scalar> fmt::Display for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Real symmetric matrix, symmetric up to `1e−12·max|entry|`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<F>(DenseMatrix<F>);

impl<F: Real> SymMatrix<F> {
    pub fn new(m: DenseMatrix<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidMatrix("square".into()));
        }
        let tol = F::from_f64(1e-12).unwrap() * m.max_abs().max(F::min_positive_value());
        if m.max_abs_diff(&m.transpose()) > tol {
            return Err(Error::InvalidMatrix("symmetric".into()));
        }
        Ok(SymMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        Self::new(DenseMatrix::from_rows(rows)?)
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<F> {
        &self.0
    }

    pub fn into_matrix(self) -> DenseMatrix<F> {
        self.0
    }
}

/// Nonnegative matrix with unit row and column sums (exact for exact scalars,
/// within `1e−9` otherwise).
#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochastic<T>(DenseMatrix<T>);

impl<T: Scalar> DoublyStochastic<T> {
    pub fn new(m: DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidMatrix("square".into()));
        }
        let tol = ds_tolerance::<T>();
        if m.data.iter().any(|v| *v < -tol.clone()) {
            return Err(Error::InvalidMatrix("entrywise nonnegative".into()));
        }
        let ok = |s: &T| {
            let d = (s.clone() - T::one()).abs();
            if T::EXACT {
                d.is_zero()
            } else {
                d <= tol
            }
        };
        if !m.row_sums().iter().all(ok) || !m.col_sums().iter().all(ok) {
            return Err(Error::InvalidMatrix("doubly stochastic".into()));
        }
        Ok(DoublyStochastic(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> DenseMatrix<T> {
        self.0
    }

    pub(crate) fn new_unchecked(m: DenseMatrix<T>) -> Self {
        DoublyStochastic(m)
    }
}

pub(crate) fn ds_tolerance<T: Scalar>() -> T {
    if T::EXACT {
        T::zero()
    } else {
        T::from_f64(1e-9).unwrap()
    }
}

/// Rectangular matrix whose largest singular value is at most `1 + 1e−9`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction<F> {
    matrix: DenseMatrix<F>,
    sigma_max: F,
}

impl<F: Real> Contraction<F> {
    pub fn new(matrix: DenseMatrix<F>) -> Result<Self> {
        let sigma_max = super::jacobi::largest_singular_value(&matrix)?;
        if sigma_max > F::one() + F::from_f64(1e-9).unwrap() {
            return Err(Error::InvalidMatrix(format!("a contraction (largest singular value {sigma_max})")));
        }
        Ok(Contraction { matrix, sigma_max })
    }

    pub fn matrix(&self) -> &DenseMatrix<F> {
        &self.matrix
    }

    pub fn sigma_max(&self) -> F {
        self.sigma_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn products_and_transpose() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = a.matmul(&a.transpose()).unwrap();
        assert_eq!(b.to_rows(), vec![vec![5.0, 11.0], vec![11.0, 25.0]]);
        assert_eq!(a.matvec(&[1.0, 1.0]).unwrap(), vec![3.0, 7.0]);
        assert!(DenseMatrix::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn symmetric_validation() {
        assert!(SymMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        assert!(SymMatrix::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
    }

    #[test]
    fn doubly_stochastic_validation() {
        let h = Rational::ratio(1, 2);
        let m = DenseMatrix::from_rows(vec![vec![h.clone(), h.clone()], vec![h.clone(), h]]).unwrap();
        assert!(DoublyStochastic::new(m).is_ok());
        let bad = DenseMatrix::from_rows(vec![vec![1.0, 0.5], vec![0.0, 0.5]]).unwrap();
        assert!(DoublyStochastic::new(bad).is_err());
    }

    #[test]
    fn orthogonality_of_rotation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = DenseMatrix::from_rows(vec![vec![s, s], vec![-s, s]]).unwrap();
        assert!(u.orthogonality_defect() < 1e-15);
    }
}
