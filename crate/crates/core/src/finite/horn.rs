//! Orthogonal matrices with prescribed diagonal (Horn's converse to Schur).
//!
//! Targets are met one at a time, largest first. For the current target `x`
//! the two adjacent active slots `p, q` (values sorted descending) with
//! `val_p ≥ x ≥ val_q` are rotated so that slot `p` carries exactly `x`;
//! slot `p` is then frozen and `q` keeps the leftover `val_p + val_q − x`.
//! Active rows always have disjoint supports, so the squared entries evolve
//! by the same convex combination and can be tracked exactly.

use crate::error::{Error, Result};
use crate::majorize::vec_majorizes;
use crate::scalar::{cmp_scalar, Real, Scalar};
use crate::Rational;

use super::matrix::DenseMatrix;

/// Rotation in the `(p, q)` plane with `cos² = cos2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GivensStep<T> {
    pub p: usize,
    pub q: usize,
    pub cos2: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HornPlan<T> {
    n: usize,
    steps: Vec<GivensStep<T>>,
    /// Row of the rotated basis carrying target `i`.
    slot_of_target: Vec<usize>,
}

impl<T: Scalar> HornPlan<T> {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[GivensStep<T>] {
        &self.steps
    }

    /// The orthogonal matrix `U` with `diag(U·diag(y)·Uᵀ) = x`.
    pub fn orthogonal<F: Real>(&self) -> DenseMatrix<F> {
        self.orthogonal_columns(self.n)
    }

    /// The first `cols` columns of [`HornPlan::orthogonal`]. Rotations act on
    /// rows, so each column evolves on its own.
    pub fn orthogonal_columns<F: Real>(&self, cols: usize) -> DenseMatrix<F> {
        let n = self.n;
        let cols = cols.min(n);
        let mut q = DenseMatrix::<F>::from_fn(n, cols, |i, j| if i == j { F::one() } else { F::zero() });
        for st in &self.steps {
            let c2 = F::from_f64(st.cos2.to_f64_lossy()).unwrap();
            let c2 = c2.max(F::zero()).min(F::one());
            let (c, s) = (c2.sqrt(), (F::one() - c2).sqrt());
            let (rp, rq) = (q.row(st.p).to_vec(), q.row(st.q).to_vec());
            for k in 0..cols {
                q.set(st.p, k, c * rp[k] + s * rq[k]);
                q.set(st.q, k, c * rq[k] - s * rp[k]);
            }
        }
        let mut out = DenseMatrix::<F>::zeros(n, cols);
        for i in 0..n {
            out.row_mut(i).copy_from_slice(q.row(self.slot_of_target[i]));
        }
        out
    }

    /// `U ∘ U`, computed in the plan's own arithmetic.
    pub fn orthostochastic(&self) -> DenseMatrix<T> {
        let n = self.n;
        let mut d = DenseMatrix::<T>::identity(n);
        for st in &self.steps {
            let s2 = T::one() - st.cos2.clone();
            let (rp, rq) = (d.row(st.p).to_vec(), d.row(st.q).to_vec());
            for k in 0..n {
                d.set(st.p, k, st.cos2.clone() * rp[k].clone() + s2.clone() * rq[k].clone());
                d.set(st.q, k, s2.clone() * rp[k].clone() + st.cos2.clone() * rq[k].clone());
            }
        }
        DenseMatrix::from_fn(n, n, |i, j| d.get(self.slot_of_target[i], j).clone())
    }
}

/// Rotation plan for `x ≺ y`, checked first.
pub fn horn_plan<T: Scalar>(x: &[T], y: &[T]) -> Result<HornPlan<T>> {
    if !vec_majorizes(x, y)? {
        return Err(Error::NotMajorized);
    }
    Ok(plan_unchecked(x, y))
}

/// Builds the plan without the majorization check. When rounding leaves a
/// target outside every bracket, the nearest end pair is used and the
/// rotation clamped, so the result is always orthogonal.
pub(crate) fn plan_unchecked<T: Scalar>(x: &[T], y: &[T]) -> HornPlan<T> {
    let n = x.len();
    let mut vals = y.to_vec();
    let mut active = vec![true; n];
    let mut targets: Vec<usize> = (0..n).collect();
    targets.sort_by(|&i, &j| cmp_scalar(&x[j], &x[i]));
    let mut steps = Vec::new();
    let mut slot_of_target = vec![0usize; n];
    for &i in &targets {
        let mut act: Vec<usize> = (0..n).filter(|&s| active[s]).collect();
        act.sort_by(|&a, &b| cmp_scalar(&vals[b], &vals[a]));
        if act.len() == 1 {
            slot_of_target[i] = act[0];
            active[act[0]] = false;
            continue;
        }
        let xi = &x[i];
        let k = (0..act.len() - 1)
            .find(|&k| vals[act[k]] >= *xi && *xi >= vals[act[k + 1]])
            .unwrap_or(if *xi > vals[act[0]] { 0 } else { act.len() - 2 });
        let (p, q) = (act[k], act[k + 1]);
        let (vp, vq) = (vals[p].clone(), vals[q].clone());
        let denom = vp.clone() - vq.clone();
        let cos2 = if denom.is_zero() {
            T::one()
        } else {
            let c = (xi.clone() - vq.clone()) / denom;
            if c < T::zero() {
                T::zero()
            } else if c > T::one() {
                T::one()
            } else {
                c
            }
        };
        let s2 = T::one() - cos2.clone();
        vals[p] = cos2.clone() * vp.clone() + s2.clone() * vq.clone();
        vals[q] = s2 * vp + cos2.clone() * vq;
        steps.push(GivensStep { p, q, cos2 });
        slot_of_target[i] = p;
        active[p] = false;
    }
    HornPlan { n, steps, slot_of_target }
}

/// `max_i |(U·diag(y)·Uᵀ)_ii − x_i|`.
pub fn diag_error<F: Real>(u: &DenseMatrix<F>, x: &[F], y: &[F]) -> F {
    (0..u.rows())
        .map(|i| {
            let d = u.row(i).iter().zip(y).fold(F::zero(), |acc, (a, b)| acc + *a * *a * *b);
            num_traits::Float::abs(d - x[i])
        })
        .fold(F::zero(), |a, b| a.max(b))
}

/// Accuracy required of the diagonal: `1e−8`, or a few thousand ulps for
/// types too coarse for that.
pub fn diag_tolerance<F: Real>() -> F {
    F::from_f64(1e-8).unwrap().max(F::epsilon() * F::from_f64(1e3).unwrap())
}

#[derive(Clone, Debug)]
pub struct HornOutcome<F> {
    pub u: DenseMatrix<F>,
    pub orthostochastic: DenseMatrix<F>,
    pub diag_error: F,
    /// The floating plan missed the tolerance and was redone exactly.
    pub exact_fallback: bool,
}

/// Orthogonal `U` with `diag(U·diag(y)·Uᵀ) = x` for `x ≺ y`.
pub fn horn_construct<F: Real>(x: &[F], y: &[F]) -> Result<DenseMatrix<F>> {
    horn_construct_detailed(x, y).map(|o| o.u)
}

pub fn horn_construct_detailed<F: Real>(x: &[F], y: &[F]) -> Result<HornOutcome<F>> {
    let plan = horn_plan(x, y)?;
    let u = plan.orthogonal::<F>();
    let err = diag_error(&u, x, y);
    if err <= diag_tolerance::<F>() {
        return Ok(HornOutcome { orthostochastic: plan.orthostochastic(), u, diag_error: err, exact_fallback: false });
    }
    let xr: Vec<Rational> = x.iter().map(|v| v.to_rational()).collect();
    let yr: Vec<Rational> = y.iter().map(|v| v.to_rational()).collect();
    let exact = plan_unchecked(&xr, &yr);
    let ue = exact.orthogonal::<F>();
    let err_e = diag_error(&ue, x, y);
    if err_e < err {
        let d = ue.hadamard(&ue);
        Ok(HornOutcome { u: ue, orthostochastic: d, diag_error: err_e, exact_fallback: true })
    } else {
        Ok(HornOutcome { orthostochastic: plan.orthostochastic(), u, diag_error: err, exact_fallback: true })
    }
}
