//! Contractions `C` with `diag(C·diag(g)·Cᵀ) ≈ f` for `f ≺_w g`.
//!
//! `f` and `g` are dilated to `x ≺ y` (shift by `ε`, pad with `ε`-blocks on
//! one side and zeros on the other), an orthogonal `U` with
//! `diag(U·diag(y)·Uᵀ) = x` is built, and `C` is the block of `U` on the rows
//! of `f` and the columns of `g`. Each diagonal entry then lies in
//! `[f_i, f_i + ε]`.

use crate::error::{Error, Result};
use crate::majorize::{truncate_balanced, Balanced};
use crate::scalar::{Real, Scalar};

use super::horn::{horn_plan, HornPlan};
use super::matrix::{Contraction, DenseMatrix};

#[derive(Clone, Debug)]
pub struct ContractivePlan<T> {
    pub balanced: Balanced<T>,
    pub plan: HornPlan<T>,
    pub f_len: usize,
    pub g_len: usize,
}

pub fn contractive_plan<T: Scalar>(f: &[T], g: &[T], eps: &T) -> Result<ContractivePlan<T>> {
    if f.iter().chain(g).any(|v| v.is_negative()) {
        return Err(Error::RequiresPositive);
    }
    let balanced = truncate_balanced(f, g, eps)?;
    let plan = horn_plan(&balanced.x, &balanced.y)?;
    Ok(ContractivePlan { balanced, plan, f_len: f.len(), g_len: g.len() })
}

impl<T: Scalar> ContractivePlan<T> {
    fn rows(&self) -> Vec<usize> {
        (0..self.f_len).collect()
    }

    fn cols(&self) -> Vec<usize> {
        (0..self.g_len).collect()
    }

    /// `C ∘ C` in the plan's arithmetic.
    pub fn squares(&self) -> DenseMatrix<T> {
        self.plan.orthostochastic().select(&self.rows(), &self.cols())
    }

    /// `diag(C·diag(g)·Cᵀ)` in the plan's arithmetic.
    pub fn diag_values(&self, g: &[T]) -> Result<Vec<T>> {
        self.squares().matvec(g)
    }

    pub fn realize<F: Real>(&self) -> Result<Contraction<F>> {
        Contraction::new(self.plan.orthogonal_columns::<F>(self.g_len).select(&self.rows(), &self.cols()))
    }
}

#[derive(Clone, Debug)]
pub struct ContractiveOutcome<F> {
    pub contraction: Contraction<F>,
    /// `max_i |diag(C·diag(g)·Cᵀ)_i − f_i|`.
    pub diag_error: F,
    /// Order of the dilated problem.
    pub dilated_len: usize,
}

pub fn contractive_construct<F: Real>(f: &[F], g: &[F], eps: F) -> Result<ContractiveOutcome<F>> {
    let plan = contractive_plan(f, g, &eps)?;
    let contraction = plan.realize::<F>()?;
    let diag_error = compressed_diag_error(contraction.matrix(), f, g);
    Ok(ContractiveOutcome { contraction, diag_error, dilated_len: plan.balanced.len })
}

pub fn compressed_diag_error<F: Real>(c: &DenseMatrix<F>, f: &[F], g: &[F]) -> F {
    (0..c.rows())
        .map(|i| {
            let d = c.row(i).iter().zip(g).fold(F::zero(), |acc, (a, b)| acc + *a * *a * *b);
            num_traits::Float::abs(d - f[i])
        })
        .fold(F::zero(), |a, b| a.max(b))
}
