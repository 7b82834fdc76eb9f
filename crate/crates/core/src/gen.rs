//! Seeded random inputs for tests and the command line. Values sit on small
//! dyadic grids so exact and `f64` representations agree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extended::Mult;
use crate::finite::{DenseMatrix, DoublyStochastic, SymMatrix};
use crate::majorize::{majorizes, submajorizes, Profile, ProfileTag};
use crate::scalar::Scalar;
use crate::spectral::{Ambient, Atom, StepOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn grid<T: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> T {
    T::ratio(rng.gen_range(lo..=hi), den)
}

fn weight<T: Scalar, R: Rng>(rng: &mut R) -> T {
    grid(rng, 1, 8, 4)
}

fn build<T: Scalar>(atoms: Vec<Atom<T>>) -> StepOperator<T> {
    StepOperator::new(atoms, Ambient::SemifiniteInfinite).expect("generated atoms are valid")
}

/// Ranges for [`random_operator_shaped`], in quarters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorShape {
    /// Largest essential value.
    pub top: i64,
    /// Largest gap between the essential values.
    pub band: i64,
    /// Largest distance of a compact atom from the band.
    pub reach: i64,
    pub max_weight: i64,
    /// Compact atoms on each side of the band.
    pub max_compact: usize,
}

impl Default for OperatorShape {
    fn default() -> Self {
        OperatorShape { top: 8, band: 8, reach: 8, max_weight: 8, max_compact: 3 }
    }
}

impl OperatorShape {
    /// Norm at most 2 and little compact mass, for runs that build dense
    /// matrices.
    pub fn small() -> Self {
        OperatorShape { top: 2, band: 4, reach: 2, max_weight: 2, max_compact: 2 }
    }
}

/// Self-adjoint operator with one or two essential values, compact parts
/// above and below them and a few finite atoms in between.
pub fn random_operator<T: Scalar, R: Rng>(rng: &mut R) -> StepOperator<T> {
    random_operator_shaped(rng, OperatorShape::default())
}

pub fn random_operator_shaped<T: Scalar, R: Rng>(rng: &mut R, s: OperatorShape) -> StepOperator<T> {
    let hi = rng.gen_range(-s.top / 2..=s.top);
    let lo = if rng.gen_bool(0.7) { hi - rng.gen_range(1..=s.band) } else { hi };
    let w = |rng: &mut R| grid::<T, R>(rng, 1, s.max_weight, 4);
    let mut atoms = vec![Atom::infinite(T::ratio(hi, 4))];
    if lo < hi {
        atoms.push(Atom::infinite(T::ratio(lo, 4)));
        for _ in 0..rng.gen_range(0..=2) {
            atoms.push(Atom::finite(grid(rng, 2 * lo + 1, 2 * hi - 1, 8), w(rng)));
        }
    }
    for _ in 0..rng.gen_range(0..=s.max_compact) {
        atoms.push(Atom::finite(grid(rng, hi + 1, hi + s.reach, 4), w(rng)));
    }
    for _ in 0..rng.gen_range(0..=s.max_compact) {
        atoms.push(Atom::finite(grid(rng, lo - s.reach, lo - 1, 4), w(rng)));
    }
    build(atoms)
}

/// Positive operator; `compact` forces the only essential value to be `0`.
pub fn random_positive<T: Scalar, R: Rng>(rng: &mut R, compact: bool) -> StepOperator<T> {
    let (lo, hi) = if compact {
        (0, 0)
    } else {
        let lo = rng.gen_range(0..=4);
        (lo, lo + rng.gen_range(0..=4))
    };
    let mut atoms = vec![Atom::infinite(T::ratio(hi, 4)), Atom::infinite(T::ratio(lo, 4))];
    for _ in 0..rng.gen_range(usize::from(compact)..=4) {
        atoms.push(Atom::finite(grid(rng, hi + 1, hi + 12, 4), weight(rng)));
    }
    if lo > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            atoms.push(Atom::finite(grid(rng, 0, lo - 1, 4), weight(rng)));
        }
    }
    build(atoms)
}

/// Replaces consecutive runs of the list by their weighted averages.
fn block_average<T: Scalar, R: Rng>(rng: &mut R, atoms: &[Atom<T>]) -> Vec<Atom<T>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < atoms.len() {
        let j = (i + rng.gen_range(1..=3)).min(atoms.len());
        let (mut mass, mut w) = (T::zero(), T::zero());
        for a in &atoms[i..j] {
            let aw = a.weight.finite().expect("compact atoms have finite weight").clone();
            mass = mass + a.value.clone() * aw.clone();
            w = w + aw;
        }
        out.push(Atom::finite(mass / w.clone(), w));
        i = j;
    }
    out
}

/// `a` obtained from `b` by averaging its scale over blocks above and below
/// the essential band, and possibly collapsing the essential values to one
/// point of the band; `a ≺ b`.
pub fn flag_averaged_from<T: Scalar, R: Rng>(rng: &mut R, b: &StepOperator<T>) -> StepOperator<T> {
    let ess = b.infinite_values();
    let (hi, lo) = (ess[0].clone(), ess[ess.len() - 1].clone());
    let finite: Vec<&Atom<T>> = b.atoms().iter().filter(|a| !a.weight.is_infinite()).collect();
    let upper: Vec<Atom<T>> = finite.iter().filter(|a| a.value > hi).map(|a| (*a).clone()).collect();
    let mut lower: Vec<Atom<T>> = finite.iter().filter(|a| a.value < lo).map(|a| (*a).clone()).collect();
    lower.reverse();
    let middle: Vec<Atom<T>> = finite.iter().filter(|a| a.value >= lo && a.value <= hi).map(|a| (*a).clone()).collect();
    let mut base = block_average(rng, &upper);
    base.extend(block_average(rng, &lower));
    base.extend(middle);
    let kept: Vec<Atom<T>> = ess.iter().map(|v| Atom::infinite(v.clone())).collect();
    if lo < hi && rng.gen_bool(0.5) {
        let s = T::ratio(rng.gen_range(0..=8), 8);
        let c = lo.clone() + (hi.clone() - lo.clone()) * s;
        let mut atoms = base.clone();
        atoms.push(Atom::infinite(c));
        let a = build(atoms);
        if majorizes(&a, b).unwrap_or(false) {
            return a;
        }
    }
    base.extend(kept);
    let a = build(base);
    debug_assert!(majorizes(&a, b).unwrap());
    a
}

pub fn flag_averaged_pair<T: Scalar, R: Rng>(rng: &mut R) -> (StepOperator<T>, StepOperator<T>) {
    flag_averaged_pair_shaped(rng, OperatorShape::default())
}

pub fn flag_averaged_pair_shaped<T: Scalar, R: Rng>(
    rng: &mut R,
    shape: OperatorShape,
) -> (StepOperator<T>, StepOperator<T>) {
    let b = random_operator_shaped(rng, shape);
    (flag_averaged_from(rng, &b), b)
}

/// Positive pair with `a ≺_w b`: a flag average of `b`, scaled down and with
/// some values sent to zero.
pub fn positive_weak_pair<T: Scalar, R: Rng>(rng: &mut R, compact: bool) -> (StepOperator<T>, StepOperator<T>) {
    let b = random_positive::<T, R>(rng, compact);
    let avg = flag_averaged_from(rng, &b);
    let c = T::ratio(rng.gen_range(1..=4), 4);
    let atoms: Vec<Atom<T>> = avg
        .atoms()
        .iter()
        .map(|at| {
            let v = if rng.gen_bool(0.2) { T::zero() } else { at.value.clone() * c.clone() };
            Atom::new(v, at.weight.clone())
        })
        .collect();
    let a = build(atoms);
    debug_assert!(submajorizes(&a, &b).unwrap());
    (a, b)
}

/// Finite profile over at most `values` distinct values with total
/// multiplicity between 1 and `max_total`.
pub fn random_profile<T: Scalar, R: Rng>(rng: &mut R, values: usize, max_total: u64) -> Profile<T> {
    let k = rng.gen_range(1..=values.max(1));
    let mut pool: Vec<i64> = (-6..=6).collect();
    pool.shuffle(rng);
    let mut left = rng.gen_range(k as u64..=max_total.max(k as u64));
    let mut entries = Vec::new();
    for (i, v) in pool.iter().take(k).enumerate() {
        let rest = (k - i - 1) as u64;
        let mult = if rest == 0 { left } else { rng.gen_range(1..=left - rest) };
        left -= mult;
        entries.push((T::ratio(*v, 2), Mult::Finite(mult)));
    }
    Profile::new(entries, ProfileTag::Truncated).expect("generated profile is valid")
}

/// Profile with at least one value of infinite multiplicity.
pub fn random_ambient_profile<T: Scalar, R: Rng>(rng: &mut R) -> Profile<T> {
    let base = random_profile::<T, R>(rng, 4, 10);
    let mut entries: Vec<(T, Mult)> = base.entries().to_vec();
    let n = entries.len();
    entries[rng.gen_range(0..n)].1 = Mult::Infinite;
    if n > 1 && rng.gen_bool(0.3) {
        entries[rng.gen_range(0..n)].1 = Mult::Infinite;
    }
    Profile::ambient(entries).expect("generated profile is valid")
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> SymMatrix<f64> {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    SymMatrix::new(m).expect("symmetric by construction")
}

fn random_composition<R: Rng>(rng: &mut R, total: u32, parts: usize) -> Vec<u32> {
    let mut cuts: Vec<u32> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let d = c - prev;
            prev = c;
            d
        })
        .collect()
}

/// Convex combination of up to four random permutation matrices with
/// weights in `1/8`ths.
pub fn random_doubly_stochastic<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> DoublyStochastic<T> {
    let terms = rng.gen_range(1..=4);
    let weights = random_composition(rng, 8, terms);
    let mut m = DenseMatrix::<T>::zeros(n, n);
    let mut perm: Vec<usize> = (0..n).collect();
    for w in weights {
        perm.shuffle(rng);
        let c = T::ratio(w as i64, 8);
        for (i, &j) in perm.iter().enumerate() {
            let v = m.get(i, j).clone() + c.clone();
            m.set(i, j, v);
        }
    }
    DoublyStochastic::new(m).expect("doubly stochastic by construction")
}

/// Convex combination of `1..=max_terms` random permutation matrices with
/// integer weights normalized to sum to one.
pub fn random_doubly_stochastic_mixed<T: Scalar, R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> DoublyStochastic<T> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let weights: Vec<i64> = (0..terms).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let mut m = DenseMatrix::<T>::zeros(n, n);
    let mut perm: Vec<usize> = (0..n).collect();
    for w in weights {
        perm.shuffle(rng);
        let c = T::ratio(w, total);
        for (i, &j) in perm.iter().enumerate() {
            let v = m.get(i, j).clone() + c.clone();
            m.set(i, j, v);
        }
    }
    DoublyStochastic::new(m).expect("doubly stochastic by construction")
}

/// `(x, y)` with `x = D·y` for a random doubly stochastic `D`, hence `x ≺ y`.
pub fn majorized_vectors<T: Scalar, R: Rng>(rng: &mut R, n: usize) -> (Vec<T>, Vec<T>) {
    let y: Vec<T> = (0..n).map(|_| grid(rng, -16, 16, 8)).collect();
    let d = random_doubly_stochastic::<T, R>(rng, n);
    let x = d.matrix().matvec(&y).expect("square");
    (x, y)
}

/// Nonnegative `(f, g)` with `f ≺_w g`, possibly of different lengths.
pub fn weak_vectors<T: Scalar, R: Rng>(rng: &mut R, max_len: usize) -> (Vec<T>, Vec<T>) {
    let n = rng.gen_range(1..=max_len);
    let g: Vec<T> = (0..n).map(|_| grid(rng, 0, 16, 8)).collect();
    let d = random_doubly_stochastic::<T, R>(rng, n);
    let mixed = d.matrix().matvec(&g).expect("square");
    let mut f: Vec<T> = mixed.into_iter().map(|v| v * T::ratio(rng.gen_range(0..=4), 4)).collect();
    f.truncate(rng.gen_range(1..=n));
    (f, g)
}

/// Product of random plane rotations.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix<f64> {
    let mut q = DenseMatrix::<f64>::identity(n);
    if n < 2 {
        return q;
    }
    for _ in 0..3 * n * n {
        let p = rng.gen_range(0..n);
        let mut r = rng.gen_range(0..n - 1);
        if r >= p {
            r += 1;
        }
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (c, s) = (th.cos(), th.sin());
        for k in 0..n {
            let (a, b) = (*q.get(p, k), *q.get(r, k));
            q.set(p, k, c * a - s * b);
            q.set(r, k, s * a + c * b);
        }
    }
    q
}

/// Positive contraction with trace at most `k`.
pub fn random_positive_contraction<R: Rng>(rng: &mut R, n: usize, k: usize) -> SymMatrix<f64> {
    let mut s: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = s.iter().sum();
    if total > k as f64 {
        let f = k as f64 / total;
        s.iter_mut().for_each(|v| *v *= f);
    }
    let q = random_orthogonal(rng, n);
    let m = DenseMatrix::from_fn(n, n, |i, j| (0..n).map(|l| q.get(i, l) * s[l] * q.get(j, l)).sum::<f64>());
    let sym = DenseMatrix::from_fn(n, n, |i, j| 0.5 * (*m.get(i, j) + *m.get(j, i)));
    SymMatrix::new(sym).expect("symmetrized")
}

/// Random partition of `0..n` into nonempty blocks.
pub fn random_blocks<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let parts = rng.gen_range(1..=n.max(1));
    let sizes = random_composition(rng, n as u32, parts.min(n));
    let mut out = Vec::new();
    let mut at = 0;
    for s in sizes {
        out.push(idx[at..at + s as usize].to_vec());
        at += s as usize;
    }
    out
}

/// Total weight of an operator's finite atoms.
pub fn finite_mass<T: Scalar>(x: &StepOperator<T>) -> T {
    x.atoms().iter().filter_map(|a| a.weight.finite().cloned()).fold(T::zero(), |s, w| s + w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorize::vec_majorizes;
    use crate::Rational;

    #[test]
    fn pairs_are_majorized() {
        let mut r = rng(7);
        for _ in 0..200 {
            let (a, b) = flag_averaged_pair::<Rational, _>(&mut r);
            assert!(majorizes(&a, &b).unwrap(), "{a} / {b}");
            let compact = r.gen_bool(0.5);
            let (a, b) = positive_weak_pair::<Rational, _>(&mut r, compact);
            assert!(a.is_positive() && b.is_positive());
            assert!(submajorizes(&a, &b).unwrap(), "{a} / {b}");
        }
    }

    #[test]
    fn vectors_and_matrices() {
        let mut r = rng(11);
        for n in 1..=8 {
            let (x, y) = majorized_vectors::<Rational, _>(&mut r, n);
            assert!(vec_majorizes(&x, &y).unwrap());
            let q = random_orthogonal(&mut r, n);
            assert!(q.orthogonality_defect() < 1e-12);
            let blocks = random_blocks(&mut r, n);
            assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), n);
        }
    }

    #[test]
    fn profiles_respect_bounds() {
        let mut r = rng(3);
        for _ in 0..100 {
            let p = random_profile::<Rational, _>(&mut r, 4, 12);
            assert!(p.entries().len() <= 4);
            let total = p.total_mult().finite().unwrap();
            assert!((1..=12).contains(&total));
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = flag_averaged_pair::<Rational, _>(&mut rng(5));
        let b = flag_averaged_pair::<Rational, _>(&mut rng(5));
        assert_eq!(a, b);
    }
}
