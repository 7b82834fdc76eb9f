//! Flag time `t`, cell count `N` and cell averages of the spectral scale.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::extended::ExtWeight;
use crate::scalar::Scalar;
use crate::spectral::norms::mass_at_least;
use crate::spectral::{is_tau_compact, upper_fn, PLFunction, StepOperator};

pub(crate) fn to_u64<T: Scalar>(v: &T) -> Result<u64> {
    v.to_rational()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Precondition(format!("{v} does not fit a 64-bit count")))
}

/// Smallest `t` at which every part's scale has dropped below `1/m`. Scales
/// are step functions, so the minimum sits at a breakpoint: the mass of the
/// part at values `≥ 1/m`. All-zero parts give `t = 1`.
pub fn choose_t_parts<T: Scalar>(parts: &[&StepOperator<T>], m: u64) -> Result<T> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let level = T::one() / T::from_u64(m).unwrap();
    let mut t = T::zero();
    for p in parts {
        match mass_at_least(p.atoms(), &level) {
            ExtWeight::Finite(w) => {
                if w > t {
                    t = w;
                }
            }
            ExtWeight::Infinite => return Err(Error::RequiresCompact),
        }
    }
    Ok(if t.is_zero() { T::one() } else { t })
}

/// `t` for a pair, using the four compact parts above and below the
/// essential bands of `a` and `b`.
pub fn choose_t<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>, m: u64) -> Result<T> {
    let (a_up, a_lo) = crate::spectral::compact_parts(a)?;
    let (b_up, b_lo) = crate::spectral::compact_parts(b)?;
    choose_t_parts(&[&a_up, &b_up, &a_lo, &b_lo], m)
}

/// `N = ⌈t·3m·(2‖b‖m + 3)⌉`.
pub fn choose_n<T: Scalar>(t: &T, m: u64, norm_b: &T) -> Result<u64> {
    let mm = T::from_u64(m).unwrap();
    let two = T::from_int(2);
    let three = T::from_int(3);
    let n = (t.clone() * three.clone() * mm.clone() * (two * norm_b.clone() * mm + three)).ceil_value();
    to_u64(&n).map(|n| n.max(1))
}

/// `(N/t)·(F(jt/N) − F((j−1)t/N))` for `j = 1..=N`.
///
/// A cell inside one linear piece averages to that piece's slope, so only
/// the cells straddling a knot evaluate the curve.
pub fn cell_means<T: Scalar>(curve: &PLFunction<T>, t: &T, n: u64) -> Vec<T> {
    let nn = T::from_u64(n).unwrap();
    let step = t.clone() / nn.clone();
    let scale = nn.clone() / t.clone();
    let slopes = curve.slopes();
    // Knot positions in cell units: (floor, is an integer).
    let marks: Vec<(u64, bool)> = curve.knots()[1..]
        .iter()
        .map(|(k, _)| {
            let u = k.clone() * scale.clone();
            let f = u.floor_value();
            (to_u64(&f).unwrap_or(u64::MAX), f == u)
        })
        .collect();
    let mut p = 0usize;
    let mut out = Vec::with_capacity(n as usize);
    for j in 1..=n {
        while p < marks.len() && !(if marks[p].1 { marks[p].0 > j - 1 } else { marks[p].0 >= j - 1 }) {
            p += 1;
        }
        if p == marks.len() || marks[p].0 >= j {
            out.push(slopes[p].clone());
        } else {
            let hi = curve.eval(&(step.clone() * T::from_u64(j).unwrap()));
            let lo = curve.eval(&(step.clone() * T::from_u64(j - 1).unwrap()));
            out.push(scale.clone() * (hi - lo));
        }
    }
    out
}

/// Cell averages of the upper scale of a positive τ-compact `x` over `[0, t]`.
pub fn upper_coeffs<T: Scalar>(x: &StepOperator<T>, t: &T, n: u64) -> Result<Vec<T>> {
    if !x.is_positive() || !is_tau_compact(x) {
        return Err(Error::RequiresCompact);
    }
    Ok(cell_means(&upper_fn(x), t, n))
}
