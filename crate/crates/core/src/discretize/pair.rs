//! Discretization of a majorized pair into majorized profiles.
//!
//! The top `t` of each operator's spectrum (and the bottom `t`, unless in
//! weak mode) is cut into `N` cells of trace `t/N` and replaced by cell
//! averages. What remains is sorted into the intervals of a partition of the
//! essential band of `b`; each interval contributes whole cells at its
//! representative value and leaves a remainder of trace below `t/N`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extended::{ExtWeight, Mult};
use crate::io::emit_profile;
use crate::majorize::{majorizes, prof_lower, prof_majorizes, prof_submajorizes, prof_upper, submajorizes, Profile};
use crate::scalar::{cmp_scalar, Scalar};
use crate::spectral::norms::nbhd_from_atoms;
use crate::spectral::{compact_parts, ess_bounds, flag_sub, lower_fn, upper_fn, Ambient, Atom, FlaggedOperator, NbhdCert, StepOperator};

use super::params::{cell_means, choose_n, choose_t_parts, to_u64};
use super::partition::{build_partition_band, count_atoms, IntervalCount, IntervalPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Trace moved out of an infinite interval so both sides leave the same
/// amount unassigned.
#[derive(Clone, Debug, PartialEq)]
pub struct Balance<T> {
    pub side: Side,
    pub interval: usize,
    pub mass: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlackEntry<T> {
    pub step: String,
    pub eps: T,
    pub delta: T,
}

/// An operator's atoms cut at flag time `t` from the top and (unless weak)
/// from the bottom. `top` is descending, `bottom` ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagSplit<T> {
    pub top: Vec<Atom<T>>,
    pub bottom: Vec<Atom<T>>,
    pub middle: Vec<Atom<T>>,
}

fn take_mass<T: Scalar>(atoms: &mut [Atom<T>], order: impl Iterator<Item = usize>, t: &T) -> Vec<Atom<T>> {
    let mut left = t.clone();
    let mut taken = Vec::new();
    for i in order {
        if !left.is_positive() {
            break;
        }
        let take = match &atoms[i].weight {
            ExtWeight::Infinite => left.clone(),
            ExtWeight::Finite(w) if *w <= left => w.clone(),
            ExtWeight::Finite(_) => left.clone(),
        };
        if take.is_positive() {
            atoms[i].weight = atoms[i].weight.sub_finite(&take);
            left = left - take.clone();
            taken.push(Atom::finite(atoms[i].value.clone(), take));
        }
    }
    taken
}

pub fn split_flags<T: Scalar>(x: &StepOperator<T>, t: &T, weak: bool) -> FlagSplit<T> {
    let mut atoms = x.atoms().to_vec();
    let n = atoms.len();
    let top = take_mass(&mut atoms, 0..n, t);
    let bottom = if weak { Vec::new() } else { take_mass(&mut atoms, (0..n).rev(), t) };
    let middle = atoms.into_iter().filter(|a| !a.weight.is_zero()).collect();
    FlagSplit { top, bottom, middle }
}

#[derive(Clone, Debug)]
pub struct DiscretizationResult<T> {
    pub f: Profile<T>,
    pub g: Profile<T>,
    pub m: u64,
    pub t: T,
    pub n: u64,
    pub l: usize,
    pub weak: bool,
    /// `N` was raised above its formula value to keep `L·t/N ≤ 1/(3m)`.
    pub n_raised: bool,
    pub partition: IntervalPartition<T>,
    pub gamma_a: Vec<T>,
    pub gamma_b: Vec<T>,
    pub alpha_upper: Vec<T>,
    pub alpha_lower: Vec<T>,
    pub beta_upper: Vec<T>,
    pub beta_lower: Vec<T>,
    pub interval_counts_a: Vec<IntervalCount<T>>,
    pub interval_counts_b: Vec<IntervalCount<T>>,
    pub balance: Option<Balance<T>>,
    pub remainder_total: T,
    pub cert_a: NbhdCert<T>,
    pub cert_b: NbhdCert<T>,
    pub slack_ledger: Vec<SlackEntry<T>>,
}

impl<T: Scalar> DiscretizationResult<T> {
    /// Cell width `t/N`.
    pub fn cell(&self) -> T {
        self.t.clone() / T::from_u64(self.n).unwrap()
    }

    /// Largest `(ε, δ)` over both residual certificates.
    pub fn claim(&self) -> (T, T) {
        let e = if self.cert_a.eps >= self.cert_b.eps { &self.cert_a.eps } else { &self.cert_b.eps };
        let d = if self.cert_a.delta >= self.cert_b.delta { &self.cert_a.delta } else { &self.cert_b.delta };
        (e.clone(), d.clone())
    }

    /// `key: value` lines followed by both profiles.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let (e, d) = self.claim();
        let _ = writeln!(s, "mode: {}", if self.weak { "weak" } else { "full" });
        let _ = writeln!(s, "m: {}", self.m);
        let _ = writeln!(s, "t: {}", self.t);
        let _ = writeln!(s, "N: {}", self.n);
        let _ = writeln!(s, "L: {}", self.l);
        let _ = writeln!(s, "N_raised: {}", self.n_raised);
        for (j, iv) in self.partition.intervals.iter().enumerate() {
            let (ca, cb) = (&self.interval_counts_a[j], &self.interval_counts_b[j]);
            let _ = writeln!(
                s,
                "interval {j}: {iv} a_mass={} a_count={} a_rest={} b_mass={} b_count={} b_rest={}",
                ca.mass, ca.floor_count, ca.remainder, cb.mass, cb.floor_count, cb.remainder
            );
        }
        if let Some(b) = &self.balance {
            let _ = writeln!(s, "balance: side={:?} interval={} mass={}", b.side, b.interval, b.mass);
        }
        let _ = writeln!(s, "remainder_total: {}", self.remainder_total);
        for (name, c) in [("cert_a", &self.cert_a), ("cert_b", &self.cert_b)] {
            let _ = writeln!(s, "{name}: eps={} delta={} bad_mass={} member={}", c.eps, c.delta, c.bad_mass, c.member);
        }
        for entry in &self.slack_ledger {
            let _ = writeln!(s, "slack: {} eps={} delta={}", entry.step, entry.eps, entry.delta);
        }
        let _ = writeln!(s, "claim: eps={e} delta={d}");
        let _ = writeln!(s, "f:");
        s.push_str(&emit_profile(&self.f));
        let _ = writeln!(s, "g:");
        s.push_str(&emit_profile(&self.g));
        s
    }

    /// CSV rows `k,U_k(f),U_k(g),L_k(f),L_k(g)` for `k = 1..=k_max`.
    pub fn curve_csv(&self, k_max: u64) -> Result<String> {
        let mut s = String::from("k,U_f,U_g,L_f,L_g\n");
        for k in 1..=k_max {
            let row = [
                prof_upper(&self.f, k)?,
                prof_upper(&self.g, k)?,
                prof_lower(&self.f, k)?,
                prof_lower(&self.g, k)?,
            ];
            let cols: Vec<String> = row.iter().map(|v| crate::scalar::to_decimal_string(v, 12)).collect();
            let _ = writeln!(s, "{k},{}", cols.join(","));
        }
        Ok(s)
    }
}

fn merged_cells<T: Scalar>(values: impl Iterator<Item = T>, cell: &T) -> Vec<Atom<T>> {
    let mut out: Vec<Atom<T>> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(last) if last.value == v => last.weight = last.weight.add_finite(cell),
            _ => out.push(Atom::finite(v, cell.clone())),
        }
    }
    out
}

struct SideData<'a, T> {
    split: &'a FlagSplit<T>,
    upper: &'a [T],
    /// Ascending, as read off the lower scale.
    lower_ascending: &'a [T],
    counts: &'a [IntervalCount<T>],
    gammas: &'a [T],
    taken: Option<(usize, T)>,
}

/// Flag-aligned `x − approx`, region by region.
fn residual_atoms<T: Scalar>(side: &SideData<'_, T>, part: &IntervalPartition<T>, cell: &T) -> Result<Vec<Atom<T>>> {
    let mut regions: Vec<(Vec<Atom<T>>, Vec<Atom<T>>)> = Vec::new();
    if !side.split.top.is_empty() {
        regions.push((side.split.top.clone(), merged_cells(side.upper.iter().cloned(), cell)));
    }
    if !side.split.bottom.is_empty() {
        regions.push((side.split.bottom.clone(), merged_cells(side.lower_ascending.iter().cloned(), cell)));
    }
    for (j, count) in side.counts.iter().enumerate() {
        if count.mass.is_zero() {
            continue;
        }
        let inside = side.split.middle.iter().filter(|a| part.intervals[j].contains(&a.value));
        let (mut x, inf): (Vec<Atom<T>>, Vec<Atom<T>>) = inside.cloned().partition(|a| !a.weight.is_infinite());
        x.extend(inf);
        let gamma = side.gammas[j].clone();
        let mut approx = Vec::new();
        match count.floor_count {
            Mult::Infinite => {
                if let Some((i, mass)) = &side.taken {
                    if *i == j && mass.is_positive() {
                        approx.push(Atom::finite(T::zero(), mass.clone()));
                    }
                }
                approx.push(Atom::infinite(gamma));
            }
            Mult::Finite(k) => {
                if k > 0 {
                    approx.push(Atom::finite(gamma, cell.clone() * T::from_u64(k).unwrap()));
                }
                if count.remainder.is_positive() {
                    approx.push(Atom::finite(T::zero(), count.remainder.clone()));
                }
            }
        }
        regions.push((x, approx));
    }
    let mut out = Vec::new();
    for (x, approx) in regions {
        let diff = flag_sub(&FlaggedOperator::new(x)?, &FlaggedOperator::new(approx)?)?;
        out.extend(diff.cells().iter().cloned());
    }
    Ok(out)
}

/// Membership of `x − approx` in `V(ε, δ)` along their shared flag.
pub fn residual_certificate<T: Scalar>(
    x: &FlaggedOperator<T>,
    approx: &FlaggedOperator<T>,
    eps: &T,
    delta: &T,
) -> Result<NbhdCert<T>> {
    let diff = flag_sub(x, approx)?;
    Ok(nbhd_from_atoms(diff.cells(), eps, delta))
}

/// Tries `(1/m, 1/m)`, then `(1/m, 2/m)`, then `(2/m, 2/m)`, each `ε` raised
/// by `extra`. The last attempt is returned even if it fails.
fn ladder<T: Scalar>(atoms: &[Atom<T>], m: u64, extra: &T) -> NbhdCert<T> {
    let w = T::one() / T::from_u64(m).unwrap();
    let two_w = w.clone() + w.clone();
    let steps = [(w.clone(), w.clone()), (w.clone(), two_w.clone()), (two_w.clone(), two_w)];
    let mut last = None;
    for (e, d) in steps {
        let cert = nbhd_from_atoms(atoms, &(e + extra.clone()), &d);
        if cert.member {
            return cert;
        }
        last = Some(cert);
    }
    last.expect("ladder has steps")
}

fn assemble<T: Scalar>(upper: &[T], lower: &[T], counts: &[IntervalCount<T>], gammas: &[T]) -> Result<Profile<T>> {
    let mut entries: Vec<(T, Mult)> = upper.iter().chain(lower).map(|v| (v.clone(), Mult::Finite(1))).collect();
    for (c, g) in counts.iter().zip(gammas) {
        if c.floor_count != Mult::Finite(0) {
            entries.push((g.clone(), c.floor_count));
        }
    }
    Profile::ambient(entries)
}

fn remainder_sum<T: Scalar>(counts: &[IntervalCount<T>]) -> T {
    counts.iter().fold(T::zero(), |acc, c| acc + c.remainder.clone())
}

/// Profiles `f ≺ g` (or `f ≺_w g` when `weak`) discretizing `a ≺ b` at
/// precision `1/m`, with residual certificates for both sides.
pub fn discretize_pair<T: Scalar>(
    a: &StepOperator<T>,
    b: &StepOperator<T>,
    m: u64,
    weak: bool,
) -> Result<DiscretizationResult<T>> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    for x in [a, b] {
        if x.ambient() != Ambient::SemifiniteInfinite {
            return Err(Error::NoEssentialSpectrum);
        }
    }
    if weak {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::RequiresPositive);
        }
        if !submajorizes(a, b)? {
            return Err(Error::NotSubmajorized);
        }
    } else if !majorizes(a, b)? {
        return Err(Error::NotMajorized);
    }
    let (_, emax_a) = ess_bounds(a)?;
    let (emin_b, emax_b) = ess_bounds(b)?;
    let (a_up, a_lo) = compact_parts(a)?;
    let (b_up, b_lo) = compact_parts(b)?;
    let t = if weak { choose_t_parts(&[&a_up, &b_up], m)? } else { choose_t_parts(&[&a_up, &b_up, &a_lo, &b_lo], m)? };
    let band_lo = if weak { T::zero() } else { emin_b.clone() };
    let partition = build_partition_band(&band_lo, &emax_b, m, &b.infinite_values());
    let l = partition.len();

    let mm = T::from_u64(m).unwrap();
    let norm_b = b.norm();
    let mut n = choose_n(&t, m, &norm_b)?;
    let l_bound = T::from_int(2) * norm_b * mm.clone() + T::from_int(3);
    let mut n_raised = false;
    if T::from_usize(l).unwrap() > l_bound {
        let needed = to_u64(&(T::from_int(3) * mm.clone() * t.clone() * T::from_usize(l).unwrap()).ceil_value())?;
        if needed > n {
            n = needed;
            n_raised = true;
        }
    }
    let cell = t.clone() / T::from_u64(n).unwrap();

    let alpha_upper = cell_means(&upper_fn(a), &t, n);
    let beta_upper = cell_means(&upper_fn(b), &t, n);
    let (alpha_lo_asc, beta_lo_asc) =
        if weak { (Vec::new(), Vec::new()) } else { (cell_means(&lower_fn(a), &t, n), cell_means(&lower_fn(b), &t, n)) };
    let alpha_lower: Vec<T> = alpha_lo_asc.iter().rev().cloned().collect();
    let beta_lower: Vec<T> = beta_lo_asc.iter().rev().cloned().collect();

    let split_a = split_flags(a, &t, weak);
    let split_b = split_flags(b, &t, weak);
    let counts_a = count_atoms(&split_a.middle, &cell, &partition)?;
    let counts_b = count_atoms(&split_b.middle, &cell, &partition)?;

    let (r_a, r_b) = (remainder_sum(&counts_a), remainder_sum(&counts_b));
    let balance = match cmp_scalar(&r_a, &r_b) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => {
            let interval = partition.locate(&emax_b).expect("essential maximum lies in the band");
            Some(Balance { side: Side::B, interval, mass: r_a.clone() - r_b.clone() })
        }
        std::cmp::Ordering::Less => {
            let interval = partition
                .locate(&emax_a)
                .filter(|&j| counts_a[j].mass.is_infinite())
                .or_else(|| counts_a.iter().position(|c| c.mass.is_infinite()))
                .ok_or_else(|| Error::InternalInvariantViolation("no infinite interval on the a side".into()))?;
            Some(Balance { side: Side::A, interval, mass: r_b.clone() - r_a.clone() })
        }
    };
    let remainder_total = if r_a >= r_b { r_a } else { r_b };

    let mut gamma_a = partition.gammas();
    let mut gamma_b = partition.gammas();
    let mut slack_ledger = Vec::new();
    let mut extra = T::zero();
    let check = |f: &Profile<T>, g: &Profile<T>| if weak { prof_submajorizes(f, g) } else { prof_majorizes(f, g) };
    let mut f = assemble(&alpha_upper, &alpha_lower, &counts_a, &gamma_a)?;
    let mut g = assemble(&beta_upper, &beta_lower, &counts_b, &gamma_b)?;
    if !check(&f, &g)? {
        // Move free representatives by up to 1/(2m) inside their intervals:
        // b up and a down when the upper sums fail, the reverse otherwise.
        let half = T::one() / (T::from_int(2) * mm.clone());
        let up = !prof_submajorizes(&f, &g)?;
        for (j, iv) in partition.intervals.iter().enumerate() {
            if iv.pinned {
                continue;
            }
            let (raise, lower) = if up { (&mut gamma_b[j], &mut gamma_a[j]) } else { (&mut gamma_a[j], &mut gamma_b[j]) };
            let r = raise.clone() + half.clone();
            *raise = if r > iv.hi { iv.hi.clone() } else { r };
            let d = lower.clone() - half.clone();
            *lower = if d < iv.lo { iv.lo.clone() } else { d };
        }
        f = assemble(&alpha_upper, &alpha_lower, &counts_a, &gamma_a)?;
        g = assemble(&beta_upper, &beta_lower, &counts_b, &gamma_b)?;
        if !check(&f, &g)? {
            return Err(Error::FallbackExhausted("representative shift did not restore majorization".into()));
        }
        slack_ledger.push(SlackEntry { step: "representative shift".into(), eps: half.clone(), delta: T::zero() });
        extra = half;
    }

    let taken = |side: Side| balance.as_ref().filter(|b| b.side == side).map(|b| (b.interval, b.mass.clone()));
    let data_a = SideData {
        split: &split_a,
        upper: &alpha_upper,
        lower_ascending: &alpha_lo_asc,
        counts: &counts_a,
        gammas: &gamma_a,
        taken: taken(Side::A),
    };
    let data_b = SideData {
        split: &split_b,
        upper: &beta_upper,
        lower_ascending: &beta_lo_asc,
        counts: &counts_b,
        gammas: &gamma_b,
        taken: taken(Side::B),
    };
    let cert_a = ladder(&residual_atoms(&data_a, &partition, &cell)?, m, &extra);
    let cert_b = ladder(&residual_atoms(&data_b, &partition, &cell)?, m, &extra);
    slack_ledger.push(SlackEntry { step: "residual a".into(), eps: cert_a.eps.clone(), delta: cert_a.delta.clone() });
    slack_ledger.push(SlackEntry { step: "residual b".into(), eps: cert_b.eps.clone(), delta: cert_b.delta.clone() });

    Ok(DiscretizationResult {
        f,
        g,
        m,
        t,
        n,
        l,
        weak,
        n_raised,
        partition,
        gamma_a,
        gamma_b,
        alpha_upper,
        alpha_lower,
        beta_upper,
        beta_lower,
        interval_counts_a: counts_a,
        interval_counts_b: counts_b,
        balance,
        remainder_total,
        cert_a,
        cert_b,
        slack_ledger,
    })
}
