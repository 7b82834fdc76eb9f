//! End-to-end approximation runs: discretize, truncate to a finite problem,
//! build the matrix, and add up the neighbourhood budget.

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::discretize::{discretize_pair, DiscretizationResult};
use crate::error::{Error, Result};
use crate::extended::Mult;
use crate::finite::{
    closest_majorized, contractive_construct, diag_error, horn_construct_detailed, DenseMatrix, DoublyStochastic,
};
use crate::majorize::Profile;
use crate::scalar::{Real, Scalar};
use crate::spectral::{NbhdCert, StepOperator};

/// Operators above this order get a sampled orthogonality check.
pub const FULL_DEFECT_LIMIT: usize = 256;

const ORTHO_TOL: f64 = 1e-9;
const DIAG_SLACK: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Unitary,
    Contractive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LedgerStep<T> {
    pub label: String,
    pub eps: T,
    pub delta: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscretizationSummary<T> {
    pub t: T,
    pub n: u64,
    pub l: usize,
    pub n_raised: bool,
    pub remainder_total: T,
    pub cert_a: NbhdCert<T>,
    pub cert_b: NbhdCert<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationSummary {
    /// Length of the finite diagonal target.
    pub len: usize,
    /// Copies taken from the essential values of each side.
    pub copies_f: usize,
    pub copies_g: usize,
    /// Entries of the second profile left out (contractive runs only).
    pub dropped_g: usize,
    /// `max |x̃ − x|` after moving the target onto `{x̃ ≺ y}`.
    pub repair_radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixStage {
    /// Diagonal error against the unrepaired target.
    pub diag_error: f64,
    pub bound: f64,
    pub orthogonality_defect: Option<f64>,
    pub defect_sampled: bool,
    pub sigma_max: Option<f64>,
    pub exact_fallback: bool,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport<T> {
    pub variant: Variant,
    pub m: u64,
    pub eps: Option<T>,
    pub copies: usize,
    pub shift: T,
    pub discretization: DiscretizationSummary<T>,
    pub truncation: TruncationSummary,
    pub matrix: MatrixStage,
    pub ledger: Vec<LedgerStep<T>>,
    pub claim: (T, T),
    pub envelope: (T, T),
    pub verdict: bool,
}

impl<T: Scalar> RunReport<T> {
    /// Sum of the ledger entries.
    pub fn recompute_claim(&self) -> (T, T) {
        self.ledger.iter().fold((T::zero(), T::zero()), |(e, d), s| (e + s.eps.clone(), d + s.delta.clone()))
    }

    pub fn stage_checks(&self) -> Vec<(&'static str, bool)> {
        let mut out = vec![
            ("certificate a", self.discretization.cert_a.member && self.discretization.cert_a.consistent()),
            ("certificate b", self.discretization.cert_b.member && self.discretization.cert_b.consistent()),
            ("diagonal", self.matrix.diag_error < self.matrix.bound),
        ];
        if let Some(d) = self.matrix.orthogonality_defect {
            out.push(("orthogonality", d < ORTHO_TOL));
        }
        if let Some(s) = self.matrix.sigma_max {
            out.push(("contraction", s <= 1.0 + ORTHO_TOL));
        }
        out.push(("envelope", self.claim.0 <= self.envelope.0 && self.claim.1 <= self.envelope.1));
        out
    }

    pub fn recompute_verdict(&self) -> bool {
        self.stage_checks().iter().all(|(_, ok)| *ok)
    }

    /// The stored claim and verdict agree with the ledger and stage data.
    pub fn audit(&self) -> bool {
        self.recompute_claim() == self.claim && self.recompute_verdict() == self.verdict
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let d = &self.discretization;
        let variant = match self.variant {
            Variant::Unitary => "unitary",
            Variant::Contractive => "contractive",
        };
        let _ = writeln!(s, "variant: {variant}");
        let _ = writeln!(s, "m: {}", self.m);
        if let Some(e) = &self.eps {
            let _ = writeln!(s, "eps: {e}");
        }
        let _ = writeln!(s, "copies: {}", self.copies);
        let _ = writeln!(s, "shift: {}", self.shift);
        let _ = writeln!(s, "t: {}", d.t);
        let _ = writeln!(s, "N: {}{}", d.n, if d.n_raised { " (raised)" } else { "" });
        let _ = writeln!(s, "intervals: {}", d.l);
        let _ = writeln!(s, "remainder: {}", d.remainder_total);
        for (name, c) in [("a", &d.cert_a), ("b", &d.cert_b)] {
            let _ = writeln!(
                s,
                "cert_{name}: eps={} delta={} bad_mass={} member={}",
                c.eps, c.delta, c.bad_mass, c.member
            );
        }
        let t = &self.truncation;
        let _ = writeln!(s, "finite_len: {}", t.len);
        let _ = writeln!(s, "essential_copies: {} {}", t.copies_f, t.copies_g);
        if t.dropped_g > 0 {
            let _ = writeln!(s, "dropped: {}", t.dropped_g);
        }
        let _ = writeln!(s, "repair_radius: {:e}", t.repair_radius);
        let mx = &self.matrix;
        let _ = writeln!(s, "order: {}", mx.order);
        let _ = writeln!(s, "diag_error: {:e} (bound {:e})", mx.diag_error, mx.bound);
        if let Some(o) = mx.orthogonality_defect {
            let _ = writeln!(s, "orthogonality_defect: {o:e}{}", if mx.defect_sampled { " (sampled)" } else { "" });
        }
        if let Some(sg) = mx.sigma_max {
            let _ = writeln!(s, "sigma_max: {sg}");
        }
        let _ = writeln!(s, "exact_fallback: {}", mx.exact_fallback);
        for step in &self.ledger {
            let _ = writeln!(s, "ledger: {} eps={} delta={}", step.label, step.eps, step.delta);
        }
        let _ = writeln!(s, "claim: eps={} delta={}", self.claim.0, self.claim.1);
        let _ = writeln!(s, "envelope: eps={} delta={}", self.envelope.0, self.envelope.1);
        for (name, ok) in self.stage_checks() {
            let _ = writeln!(s, "check: {name} {}", if ok { "ok" } else { "failed" });
        }
        let _ = writeln!(s, "verdict: {}", if self.verdict { "pass" } else { "fail" });
        s
    }
}

/// Data of the finite stage of a unitary run.
#[derive(Clone, Debug)]
pub struct FiniteStage {
    pub x: Vec<f64>,
    pub x_repaired: Vec<f64>,
    pub y: Vec<f64>,
    pub u: DenseMatrix<f64>,
    pub squares: DenseMatrix<f64>,
}

pub(crate) fn from_f64<T: Scalar>(v: f64) -> T {
    T::from_rational(&BigRational::from_float(v).unwrap_or_default())
}

fn to_f64s<T: Scalar>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64_lossy()).collect()
}

/// `max |MᵀM − I|`, over every column pair up to [`FULL_DEFECT_LIMIT`] and
/// over all norms plus one pseudo-random partner per column beyond it.
pub fn orthogonality_check<F: Real>(u: &DenseMatrix<F>) -> (F, bool) {
    let n = u.cols();
    if n <= FULL_DEFECT_LIMIT {
        return (u.orthogonality_defect(), false);
    }
    let dot = |i: usize, j: usize| (0..u.rows()).fold(F::zero(), |acc, k| acc + *u.get(k, i) * *u.get(k, j));
    let mut worst = F::zero();
    for i in 0..n {
        worst = worst.max((dot(i, i) - F::one()).abs());
        let j = (i * 7919 + 1) % n;
        if j != i {
            worst = worst.max(dot(i, j).abs());
        }
    }
    (worst, true)
}

/// Finite-multiplicity entries with repetition, and the values carried with
/// infinite multiplicity, both descending.
fn split_profile<T: Scalar>(p: &Profile<T>) -> (Vec<T>, Vec<T>) {
    let mut fin = Vec::new();
    let mut ess = Vec::new();
    for (v, m) in p.entries() {
        match m {
            Mult::Finite(k) => fin.extend(std::iter::repeat(v.clone()).take(*k as usize)),
            Mult::Infinite => ess.push(v.clone()),
        }
    }
    (fin, ess)
}

/// `copies` split as evenly as possible over `k` values, extras to the first.
fn spread(k: usize, copies: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    (0..k).map(|i| copies / k + usize::from(i < copies % k)).collect()
}

fn expand<T: Scalar>(fin: &[T], ess: &[T], counts: &[usize]) -> Vec<T> {
    let mut v = fin.to_vec();
    for (e, c) in ess.iter().zip(counts) {
        v.extend(std::iter::repeat(e.clone()).take(*c));
    }
    v
}

fn sum<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, b| a + b.clone())
}

/// Moves copies between the largest and smallest essential values of `g` to
/// bring `Σy` as close as possible to `target`.
fn match_sum<T: Scalar>(fin: &[T], ess: &[T], counts: &mut [usize], target: &T) {
    if ess.len() < 2 {
        return;
    }
    let last = ess.len() - 1;
    let w = ess[0].clone() - ess[last].clone();
    let gap = target.clone() - sum(&expand(fin, ess, counts));
    let k = (gap / w + T::ratio(1, 2)).floor_value().to_i64().unwrap_or(0);
    if k > 0 {
        let k = (k as usize).min(counts[last]);
        counts[0] += k;
        counts[last] -= k;
    } else if k < 0 {
        let k = (k.unsigned_abs() as usize).min(counts[0]);
        counts[0] -= k;
        counts[last] += k;
    }
}

struct FiniteVectors<T> {
    x: Vec<T>,
    y: Vec<T>,
    copies_f: usize,
    copies_g: usize,
}

fn finite_vectors<T: Scalar>(f: &Profile<T>, g: &Profile<T>, copies: usize) -> Result<FiniteVectors<T>> {
    let (fin_f, ess_f) = split_profile(f);
    let (fin_g, ess_g) = split_profile(g);
    if ess_f.is_empty() || ess_g.is_empty() {
        return Err(Error::InternalInvariantViolation("discretized profiles lack essential values".into()));
    }
    let n = copies.max(fin_f.len().max(fin_g.len()) + copies);
    let cf = spread(ess_f.len(), n - fin_f.len());
    let x = expand(&fin_f, &ess_f, &cf);
    let mut cg = spread(ess_g.len(), n - fin_g.len());
    match_sum(&fin_g, &ess_g, &mut cg, &sum(&x));
    let y = expand(&fin_g, &ess_g, &cg);
    Ok(FiniteVectors { x, y, copies_f: n - fin_f.len(), copies_g: n - fin_g.len() })
}

fn summary<T: Scalar>(d: &DiscretizationResult<T>) -> DiscretizationSummary<T> {
    DiscretizationSummary {
        t: d.t.clone(),
        n: d.n,
        l: d.l,
        n_raised: d.n_raised,
        remainder_total: d.remainder_total.clone(),
        cert_a: d.cert_a.clone(),
        cert_b: d.cert_b.clone(),
    }
}

fn discretization_ledger<T: Scalar>(d: &DiscretizationResult<T>) -> Vec<LedgerStep<T>> {
    vec![
        LedgerStep { label: "discretize a".into(), eps: d.cert_a.eps.clone(), delta: d.cert_a.delta.clone() },
        LedgerStep { label: "discretize b".into(), eps: d.cert_b.eps.clone(), delta: d.cert_b.delta.clone() },
        LedgerStep {
            label: "unassigned remainder".into(),
            eps: T::zero(),
            delta: T::from_int(2) * d.remainder_total.clone(),
        },
        LedgerStep { label: "truncation".into(), eps: T::zero(), delta: T::zero() },
    ]
}

fn inv<T: Scalar>(m: u64) -> T {
    T::one() / T::from_u64(m).unwrap()
}

fn finish<T: Scalar>(mut r: RunReport<T>) -> RunReport<T> {
    r.claim = r.recompute_claim();
    r.verdict = r.recompute_verdict();
    r
}

fn unitary_run<T: Scalar>(
    a: &StepOperator<T>,
    b: &StepOperator<T>,
    m: u64,
    copies: usize,
) -> Result<(RunReport<T>, FiniteStage)> {
    if copies == 0 {
        return Err(Error::Precondition("the number of essential copies must be positive".into()));
    }
    let d = discretize_pair(a, b, m, false).map_err(|e| e.at_stage("discretize"))?;
    let lo = if d.f.min_value() < d.g.min_value() { d.f.min_value() } else { d.g.min_value() };
    let shift = -lo;
    let f = d.f.shift(&shift);
    let g = d.g.shift(&shift);
    let fv = finite_vectors(&f, &g, copies).map_err(|e| e.at_stage("truncate"))?;
    let x = to_f64s(&fv.x);
    let y = to_f64s(&fv.y);
    let x_repaired = closest_majorized(&x, &y).map_err(|e| e.at_stage("repair"))?;
    let repair_radius = x.iter().zip(&x_repaired).fold(0.0f64, |w, (p, q)| w.max((p - q).abs()));
    let horn = horn_construct_detailed(&x_repaired, &y).map_err(|e| e.at_stage("matrix"))?;
    let err = diag_error(&horn.u, &x, &y);
    let (defect, sampled) = orthogonality_check(&horn.u);
    let mut ledger = discretization_ledger(&d);
    ledger.push(LedgerStep { label: "matrix diagonal".into(), eps: from_f64(err), delta: T::zero() });
    let report = RunReport {
        variant: Variant::Unitary,
        m,
        eps: None,
        copies,
        shift,
        discretization: summary(&d),
        truncation: TruncationSummary {
            len: x.len(),
            copies_f: fv.copies_f,
            copies_g: fv.copies_g,
            dropped_g: 0,
            repair_radius,
        },
        matrix: MatrixStage {
            diag_error: err,
            bound: 1.0 / m as f64 + DIAG_SLACK,
            orthogonality_defect: Some(defect),
            defect_sampled: sampled,
            sigma_max: None,
            exact_fallback: horn.exact_fallback,
            order: x.len(),
        },
        ledger,
        claim: (T::zero(), T::zero()),
        envelope: (T::from_int(3) * inv::<T>(m), T::from_int(4) * inv::<T>(m)),
        verdict: false,
    };
    let stage = FiniteStage { x, x_repaired, y, u: horn.u, squares: horn.orthostochastic };
    Ok((finish(report), stage))
}

/// Approximates `a` by the compression of a unitary orbit of `b`, for `a ≺ b`
/// with `b` self-adjoint. `copies` is the minimum finite length per
/// essential block.
pub fn sh_approximate<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>, m: u64, copies: usize) -> Result<RunReport<T>> {
    unitary_run(a, b, m, copies).map(|(r, _)| r)
}

#[derive(Clone, Debug)]
pub struct DsReport {
    pub matrix: DoublyStochastic<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `max |D·y − x̃|` against the repaired target.
    pub residual: f64,
    pub row_defect: f64,
    pub col_defect: f64,
}

/// The orthostochastic matrix `D = U∘U` of a unitary run, with `D·y ≈ x`.
pub fn doubly_stochastic_report<T: Scalar>(
    a: &StepOperator<T>,
    b: &StepOperator<T>,
    m: u64,
    copies: usize,
) -> Result<(RunReport<T>, DsReport)> {
    let (report, stage) = unitary_run(a, b, m, copies)?;
    let dy = stage.squares.matvec(&stage.y)?;
    let residual = dy.iter().zip(&stage.x_repaired).fold(0.0f64, |w, (p, q)| w.max((p - q).abs()));
    let defect = |s: Vec<f64>| s.iter().fold(0.0f64, |w, v| w.max((v - 1.0).abs()));
    let row_defect = defect(stage.squares.row_sums());
    let col_defect = defect(stage.squares.col_sums());
    let matrix = DoublyStochastic::new(stage.squares).map_err(|e| e.at_stage("matrix"))?;
    Ok((report, DsReport { matrix, x: stage.x_repaired, y: stage.y, residual, row_defect, col_defect }))
}

/// Approximates a positive `a` by the compression of a contraction applied to
/// a positive `b`, for `a ≺_w b`.
pub fn contractive_approximate<T: Scalar>(
    a: &StepOperator<T>,
    b: &StepOperator<T>,
    m: u64,
    eps: &T,
    copies: usize,
) -> Result<RunReport<T>> {
    if copies == 0 {
        return Err(Error::Precondition("the number of essential copies must be positive".into()));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::RequiresPositive);
    }
    let d = discretize_pair(a, b, m, true).map_err(|e| e.at_stage("discretize"))?;
    let (fin_f, ess_f) = split_profile(&d.f);
    let counts = vec![copies; ess_f.len()];
    let f_t = expand(&fin_f, &ess_f, &counts);
    let g_t = d.g.top(f_t.len());
    let dropped_g = match d.g.total_mult() {
        Mult::Finite(k) => (k as usize).saturating_sub(g_t.len()),
        Mult::Infinite => 0,
    };
    let (ff, gf) = (to_f64s(&f_t), to_f64s(&g_t));
    let eps_f = eps.to_f64_lossy();
    let out = contractive_construct(&ff, &gf, eps_f).map_err(|e| e.at_stage("matrix"))?;
    let mut ledger = discretization_ledger(&d);
    ledger.push(LedgerStep { label: "matrix diagonal".into(), eps: from_f64(out.diag_error), delta: T::zero() });
    let report = RunReport {
        variant: Variant::Contractive,
        m,
        eps: Some(eps.clone()),
        copies,
        shift: T::zero(),
        discretization: summary(&d),
        truncation: TruncationSummary {
            len: f_t.len(),
            copies_f: copies * ess_f.len(),
            copies_g: 0,
            dropped_g,
            repair_radius: 0.0,
        },
        matrix: MatrixStage {
            diag_error: out.diag_error,
            bound: 3.0 * eps_f,
            orthogonality_defect: None,
            defect_sampled: false,
            sigma_max: Some(out.contraction.sigma_max()),
            exact_fallback: false,
            order: out.dilated_len,
        },
        ledger,
        claim: (T::zero(), T::zero()),
        envelope: (
            T::from_int(2) * inv::<T>(m) + T::from_int(3) * eps.clone(),
            T::from_int(4) * inv::<T>(m),
        ),
        verdict: false,
    };
    Ok(finish(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn op(pairs: &[(Rational, Option<Rational>)]) -> StepOperator<Rational> {
        StepOperator::from_pairs(pairs).unwrap()
    }

    fn projection() -> StepOperator<Rational> {
        op(&[(q(1, 1), None), (q(0, 1), None)])
    }

    #[test]
    fn even_spread() {
        assert_eq!(spread(3, 8), vec![3, 3, 2]);
        assert_eq!(spread(2, 0), vec![0, 0]);
        assert!(spread(0, 4).is_empty());
    }

    #[test]
    fn identity_under_projection() {
        for m in [1u64, 2, 4] {
            let r = sh_approximate(&StepOperator::identity(), &projection(), m, 16).unwrap();
            assert!(r.verdict, "{}", r.render());
            assert!(r.audit());
            assert!(r.matrix.diag_error < 1e-8);
            assert!(r.claim.0 <= q(3, 1) / q(m as i64, 1));
        }
    }

    #[test]
    fn scalar_pair_is_exact() {
        let c = op(&[(q(1, 2), None)]);
        let r = sh_approximate(&c, &c, 2, 8).unwrap();
        assert!(r.verdict);
        assert_eq!(r.truncation.repair_radius, 0.0);
    }

    #[test]
    fn ds_report_rows_and_columns() {
        let a = op(&[(q(1, 2), None)]);
        let (r, ds) = doubly_stochastic_report(&a, &projection(), 2, 12).unwrap();
        assert!(r.verdict, "{}", r.render());
        assert!(ds.residual < 1e-8 && ds.row_defect < 1e-9 && ds.col_defect < 1e-9);
        assert_eq!(ds.matrix.order(), ds.x.len());
    }

    #[test]
    fn tampered_ledger_fails_audit() {
        let mut r = sh_approximate(&StepOperator::identity(), &projection(), 2, 8).unwrap();
        r.ledger[0].eps = r.ledger[0].eps.clone() + q(1, 1);
        assert!(!r.audit());
    }

    #[test]
    fn rejects_non_majorized_pair() {
        let e = sh_approximate(&projection(), &StepOperator::<Rational>::zero(), 2, 4).unwrap_err();
        assert_eq!(e.root(), &Error::NotMajorized);
        assert!(matches!(e, Error::Stage { stage: "discretize", .. }));
        assert!(sh_approximate(&StepOperator::identity(), &projection(), 2, 0).is_err());
    }

    #[test]
    fn contractive_scalar_pair() {
        let a = op(&[(q(1, 1), None)]);
        let b = op(&[(q(2, 1), None)]);
        let r = contractive_approximate(&a, &b, 2, &q(1, 2), 1).unwrap();
        assert!(r.verdict, "{}", r.render());
        assert!(r.matrix.diag_error <= 0.5 + 1e-12);
        assert!(r.matrix.sigma_max.unwrap() <= 1.0 + 1e-9);
        assert!(r.audit());
    }

    #[test]
    fn contractive_preconditions() {
        let neg = op(&[(q(-1, 1), None)]);
        let one = op(&[(q(1, 1), None)]);
        assert_eq!(contractive_approximate(&neg, &one, 2, &q(1, 2), 1).unwrap_err(), Error::RequiresPositive);
        let two = op(&[(q(2, 1), None)]);
        let e = contractive_approximate(&two, &one, 2, &q(1, 2), 1).unwrap_err();
        assert_eq!(e.root(), &Error::NotSubmajorized);
    }
}
