//! Operators written along a fixed flag, and arithmetic between two of them.

use crate::error::{Error, Result};
use crate::extended::ExtWeight;
use crate::scalar::Scalar;

use super::operator::{Ambient, Atom, StepOperator};

/// Cells `(value, weight)` laid out along a flag. Order is meaningful: cell
/// `i` occupies the flag interval after the cumulative weight of cells `< i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlaggedOperator<T> {
    cells: Vec<Atom<T>>,
}

/// One slot of a common refinement: both values over a shared weight.
#[derive(Clone, Debug, PartialEq)]
pub struct AlignedCell<T> {
    pub x: T,
    pub y: T,
    pub weight: ExtWeight<T>,
}

impl<T: Scalar> FlaggedOperator<T> {
    pub fn new(cells: Vec<Atom<T>>) -> Result<Self> {
        for c in &cells {
            if let ExtWeight::Finite(w) = &c.weight {
                if !w.is_positive() {
                    return Err(Error::InvalidAtom(format!("cell weight {w} is not positive")));
                }
            }
        }
        Ok(FlaggedOperator { cells })
    }

    /// Cells in the operator's canonical (descending) order.
    pub fn from_operator(op: &StepOperator<T>) -> Self {
        FlaggedOperator { cells: op.atoms().to_vec() }
    }

    pub fn from_pairs(pairs: &[(T, Option<T>)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|(v, w)| Atom::new(v.clone(), w.clone().map_or(ExtWeight::Infinite, ExtWeight::Finite)))
                .collect(),
        )
    }

    pub fn cells(&self) -> &[Atom<T>] {
        &self.cells
    }

    pub fn total_weight(&self) -> ExtWeight<T> {
        self.cells.iter().fold(ExtWeight::zero(), |acc, c| acc.add(&c.weight))
    }

    /// Forgets the flag; ambient follows from the presence of infinite cells.
    pub fn to_operator(&self) -> Result<StepOperator<T>> {
        let ambient = if self.cells.iter().any(|c| c.weight.is_infinite()) {
            Ambient::SemifiniteInfinite
        } else {
            Ambient::FiniteTrace
        };
        StepOperator::new(self.cells.clone(), ambient)
    }

    pub fn map_values<F: Fn(&T) -> T>(&self, f: F) -> Self {
        FlaggedOperator { cells: self.cells.iter().map(|c| Atom::new(f(&c.value), c.weight.clone())).collect() }
    }
}

/// Common refinement of two flags.
///
/// Infinite cells may split off finite pieces. Once one list is exhausted on
/// an infinite cell, that cell absorbs a tail of infinite cells of the other.
pub fn refine<T: Scalar>(x: &FlaggedOperator<T>, y: &FlaggedOperator<T>) -> Result<Vec<AlignedCell<T>>> {
    let (xs, ys) = (x.cells(), y.cells());
    let mut out = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let mut rx = xs.first().map(|c| c.weight.clone());
    let mut ry = ys.first().map(|c| c.weight.clone());
    loop {
        match (i < xs.len(), j < ys.len()) {
            (false, false) => return Ok(out),
            (false, true) => return absorb_tail(xs.last(), &ys[j..], ends_infinite(xs), &mut out, false).map(|_| out),
            (true, false) => return absorb_tail(ys.last(), &xs[i..], ends_infinite(ys), &mut out, true).map(|_| out),
            (true, true) => {}
        }
        let (wx, wy) = (rx.clone().unwrap(), ry.clone().unwrap());
        let (vx, vy) = (xs[i].value.clone(), ys[j].value.clone());
        match (&wx, &wy) {
            (ExtWeight::Infinite, ExtWeight::Infinite) => {
                out.push(AlignedCell { x: vx, y: vy, weight: ExtWeight::Infinite });
                i += 1;
                j += 1;
                rx = xs.get(i).map(|c| c.weight.clone());
                ry = ys.get(j).map(|c| c.weight.clone());
            }
            _ => {
                let step = wx.min(&wy);
                let s = step.finite().expect("one side finite").clone();
                out.push(AlignedCell { x: vx, y: vy, weight: step.clone() });
                let nx = wx.sub_finite(&s);
                let ny = wy.sub_finite(&s);
                if nx.is_zero() {
                    i += 1;
                    rx = xs.get(i).map(|c| c.weight.clone());
                } else {
                    rx = Some(nx);
                }
                if ny.is_zero() {
                    j += 1;
                    ry = ys.get(j).map(|c| c.weight.clone());
                } else {
                    ry = Some(ny);
                }
            }
        }
    }
}

fn ends_infinite<T: Scalar>(cells: &[Atom<T>]) -> bool {
    cells.last().is_some_and(|c| c.weight.is_infinite())
}

fn absorb_tail<T: Scalar>(
    last: Option<&Atom<T>>,
    rest: &[Atom<T>],
    last_infinite: bool,
    out: &mut Vec<AlignedCell<T>>,
    rest_is_x: bool,
) -> Result<()> {
    let Some(last) = last.filter(|_| last_infinite) else {
        return Err(Error::FlagMismatch("one flag ends before the other".into()));
    };
    if rest.iter().any(|c| !c.weight.is_infinite()) {
        return Err(Error::FlagMismatch("finite cell after an exhausted infinite cell".into()));
    }
    for c in rest {
        let (x, y) = if rest_is_x {
            (c.value.clone(), last.value.clone())
        } else {
            (last.value.clone(), c.value.clone())
        };
        out.push(AlignedCell { x, y, weight: ExtWeight::Infinite });
    }
    Ok(())
}

/// Cellwise `f(x, y)` on the common refinement.
pub fn flag_zip<T: Scalar, F: Fn(&T, &T) -> T>(
    x: &FlaggedOperator<T>,
    y: &FlaggedOperator<T>,
    f: F,
) -> Result<FlaggedOperator<T>> {
    let cells = refine(x, y)?.into_iter().map(|c| Atom::new(f(&c.x, &c.y), c.weight)).collect();
    Ok(FlaggedOperator { cells })
}

/// `x − y` along a shared flag.
pub fn flag_sub<T: Scalar>(x: &FlaggedOperator<T>, y: &FlaggedOperator<T>) -> Result<FlaggedOperator<T>> {
    flag_zip(x, y, |a, b| a.clone() - b.clone())
}

/// `γ·x + (1−γ)·y` along a shared flag.
pub fn flag_combine<T: Scalar>(gamma: &T, x: &FlaggedOperator<T>, y: &FlaggedOperator<T>) -> Result<FlaggedOperator<T>> {
    if *gamma < T::zero() || *gamma > T::one() {
        return Err(Error::Precondition(format!("combination weight {gamma} outside [0, 1]")));
    }
    let co = T::one() - gamma.clone();
    flag_zip(x, y, |a, b| gamma.clone() * a.clone() + co.clone() * b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn fl(pairs: &[(i64, Option<i64>)]) -> FlaggedOperator<Rational> {
        let pairs: Vec<_> = pairs.iter().map(|(v, w)| (r(*v), w.map(r))).collect();
        FlaggedOperator::from_pairs(&pairs).unwrap()
    }

    #[test]
    fn aligned_difference() {
        let d = flag_sub(&fl(&[(3, Some(2)), (1, None)]), &fl(&[(2, Some(2)), (1, None)])).unwrap();
        assert_eq!(d, fl(&[(1, Some(2)), (0, None)]));
    }

    #[test]
    fn refinement_splits_cells() {
        let d = flag_sub(&fl(&[(3, Some(2)), (1, None)]), &fl(&[(2, Some(1)), (2, Some(1)), (1, None)])).unwrap();
        assert_eq!(d, fl(&[(1, Some(1)), (1, Some(1)), (0, None)]));
    }

    #[test]
    fn infinite_cell_splits_against_finite() {
        let d = flag_sub(&fl(&[(1, None)]), &fl(&[(3, Some(2)), (1, None)])).unwrap();
        assert_eq!(d, fl(&[(-2, Some(2)), (0, None)]));
    }

    #[test]
    fn infinite_cell_absorbs_infinite_tail() {
        let d = flag_sub(&fl(&[(1, None)]), &fl(&[(1, None), (0, None)])).unwrap();
        assert_eq!(d, fl(&[(0, None), (1, None)]));
    }

    #[test]
    fn mismatches() {
        assert!(matches!(
            flag_sub(&fl(&[(1, Some(2))]), &fl(&[(1, Some(1))])),
            Err(Error::FlagMismatch(_))
        ));
        assert!(matches!(
            flag_sub(&fl(&[(1, None)]), &fl(&[(1, None), (0, Some(1))])),
            Err(Error::FlagMismatch(_))
        ));
    }

    #[test]
    fn combine_endpoints() {
        let x = fl(&[(3, Some(2)), (1, None)]);
        let y = fl(&[(2, Some(2)), (1, None)]);
        assert_eq!(flag_combine(&r(1), &x, &y).unwrap(), x);
        assert_eq!(flag_combine(&r(0), &x, &y).unwrap(), y);
        assert!(flag_combine(&r(2), &x, &y).is_err());
    }
}
