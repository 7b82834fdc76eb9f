//! One function per verb. Each returns the text for stdout and a verdict.

use std::fmt::Write as _;
use std::path::Path;

use schur_horn::finite::{
    birkhoff_decompose, contractive_construct, eigenvalues, horn_construct_detailed, kyfan_upper, pinch,
    ttransform_chain, DoublyStochastic, SymMatrix,
};
use schur_horn::gen;
use schur_horn::io::{
    emit_curves, emit_matrix, emit_profile, emit_stepop, emit_vector, parse_matrix, parse_profile, parse_stepop,
    parse_vector,
};
use schur_horn::majorize::{first_violation, majorizes, prof_lower, prof_upper, submajorizes, vec_majorizes, Profile};
use schur_horn::pipeline::{
    contractive_approximate, doubly_stochastic_report, hinge_dominated, hinge_points, hinge_trace, l1_check,
    sh_approximate, HingeSide, RunReport,
};
use schur_horn::spectral::{ess_bounds, lower_fn, lower_scale, upper_fn, upper_scale, PLFunction, StepOperator, StepScale};
use schur_horn::{Rational, Scalar};

use crate::input::{format_of, load, read, write, CliError};
use crate::{Cli, GenKind, Mode, Pair, Side, Verb};

pub struct Output {
    pub text: String,
    pub pass: bool,
}

fn done(text: String, pass: bool) -> Result<Output, CliError> {
    Ok(Output { text, pass })
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.verb {
        Verb::Kfan { file, k } => kfan(cli, file, *k),
        Verb::Horn { x, y, out } => horn(x, y, out.as_deref()),
        Verb::Pinch { file, blocks } => pinch_verb(file, blocks.as_deref()),
        Verb::Contract { f, g, eps, out } => contract(f, g, eps, out.as_deref()),
        Verb::Gen { seed, kind, out_dir } => generate(*seed, *kind, out_dir.as_deref()),
        _ => match cli.mode {
            Mode::Exact => exact_or_float::<Rational>(cli),
            Mode::Float => exact_or_float::<f64>(cli),
        },
    }
}

/// Verbs that run in either arithmetic.
fn exact_or_float<T: Scalar>(cli: &Cli) -> Result<Output, CliError> {
    let csv = cli.csv_out.as_deref();
    match &cli.verb {
        Verb::Scales { file } => scales::<T>(file, csv),
        Verb::Check(p) => check::<T>(p, false, csv),
        Verb::CheckWeak(p) => check::<T>(p, true, csv),
        Verb::Ttransform { x, y } => ttransform::<T>(x, y),
        Verb::Birkhoff { file } => birkhoff::<T>(file),
        Verb::Discretize { pair, m, weak } => discretize::<T>(pair, *m, *weak, csv),
        Verb::Run { pair, precision } => {
            let (a, b) = operators::<T>(pair)?;
            let rep = sh_approximate(&a, &b, precision.m, precision.copies).map_err(|e| core_err("run", pair, e))?;
            report(rep, csv)
        }
        Verb::RunContractive { pair, precision, eps } => {
            let (a, b) = operators::<T>(pair)?;
            let eps = literal::<T>("--eps", eps)?;
            let rep = contractive_approximate(&a, &b, precision.m, &eps, precision.copies)
                .map_err(|e| core_err("run-contractive", pair, e))?;
            report(rep, csv)
        }
        Verb::L1Check(p) => {
            let (a, b) = operators::<T>(p)?;
            let ok = l1_check(&a, &b).map_err(|e| core_err("l1-check", p, e))?;
            done(format!("L1_MAJORIZES: {ok}\n"), ok)
        }
        Verb::Hinge { pair, side } => hinge::<T>(pair, *side),
        Verb::Ds { pair, precision, out } => ds::<T>(pair, precision.m, precision.copies, out.as_deref()),
        _ => unreachable!("handled in dispatch"),
    }
}

fn core_err(verb: &str, p: &Pair, e: schur_horn::Error) -> CliError {
    CliError::from_core(&format!("{verb} {} {}", p.a.display(), p.b.display()), e)
}

fn literal<T: Scalar>(name: &str, s: &str) -> Result<T, CliError> {
    T::parse_literal(s).ok_or_else(|| CliError::Usage(format!("{name}: not a number: {s}")))
}

fn operator<T: Scalar>(path: &Path) -> Result<StepOperator<T>, CliError> {
    load(path, parse_stepop::<T>)
}

fn operators<T: Scalar>(p: &Pair) -> Result<(StepOperator<T>, StepOperator<T>), CliError> {
    Ok((operator(&p.a)?, operator(&p.b)?))
}

fn vector<T: Scalar>(path: &Path) -> Result<Vec<T>, CliError> {
    load(path, parse_vector::<T>)
}

fn write_scale<T: Scalar>(s: &mut String, name: &str, scale: &StepScale<T>) {
    let _ = writeln!(s, "{name}:");
    for (d, v) in scale.pieces() {
        let _ = writeln!(s, "  {d} {v}");
    }
}

fn write_curve<T: Scalar>(s: &mut String, name: &str, f: &PLFunction<T>) {
    let knots: Vec<String> = f.knots().iter().map(|(t, y)| format!("({t}, {y})")).collect();
    let _ = writeln!(s, "{name}: knots {} tail_slope {}", knots.join(" "), f.tail_slope());
}

fn scales<T: Scalar>(file: &Path, csv: Option<&Path>) -> Result<Output, CliError> {
    let x = operator::<T>(file)?;
    let mut s = String::new();
    write_scale(&mut s, "upper_scale", &upper_scale(&x));
    write_scale(&mut s, "lower_scale", &lower_scale(&x));
    write_curve(&mut s, "U", &upper_fn(&x));
    write_curve(&mut s, "L", &lower_fn(&x));
    if let Ok((lo, hi)) = ess_bounds(&x) {
        let _ = writeln!(s, "ess_min: {lo}");
        let _ = writeln!(s, "ess_max: {hi}");
    }
    if let Some(path) = csv {
        write(path, &emit_curves(&x, &x))?;
    }
    done(s, true)
}

fn check<T: Scalar>(p: &Pair, weak: bool, csv: Option<&Path>) -> Result<Output, CliError> {
    let (a, b) = operators::<T>(p)?;
    let verb = if weak { "check-weak" } else { "check" };
    let ok = if weak { submajorizes(&a, &b) } else { majorizes(&a, &b) }.map_err(|e| core_err(verb, p, e))?;
    let mut s = format!("{}: {ok}\n", if weak { "SUBMAJORIZES" } else { "MAJORIZES" });
    if !ok {
        if let Some(t) = first_violation(&upper_fn(&a), &upper_fn(&b)) {
            let _ = writeln!(s, "upper violation at t = {t}");
        } else if let Some(t) = first_violation(&lower_fn(&b), &lower_fn(&a)) {
            let _ = writeln!(s, "lower violation at t = {t}");
        }
    }
    if let Some(path) = csv {
        write(path, &emit_curves(&a, &b))?;
    }
    done(s, ok)
}

fn kfan(cli: &Cli, file: &Path, k_max: u64) -> Result<Output, CliError> {
    let text = read(file)?;
    let mut s = String::new();
    let mut rows = String::from("k,U_k,L_k\n");
    match format_of(&text) {
        Some("matrix") => {
            let m = load(file, parse_matrix::<f64>)?;
            let sym = SymMatrix::new(m).map_err(|e| CliError::from_core(&file.display().to_string(), e))?;
            for k in 1..=sym.order() {
                let u = kyfan_upper(&sym, k).map_err(|e| CliError::from_core("kfan", e))?;
                let _ = writeln!(s, "{k} {u}");
                let _ = writeln!(rows, "{k},{u},");
            }
        }
        Some("profile") | Some("vector") => {
            let f: Profile<Rational> = if format_of(&text) == Some("vector") {
                let v = vector::<Rational>(file)?;
                Profile::from_vec(&v).map_err(|e| CliError::from_core(&file.display().to_string(), e))?
            } else {
                load(file, parse_profile::<Rational>)?
            };
            let k_max = match f.total_mult().finite() {
                Some(total) => k_max.min(total),
                None => k_max,
            };
            for k in 0..=k_max {
                let u = prof_upper(&f, k).map_err(|e| CliError::from_core("kfan", e))?;
                let l = prof_lower(&f, k).map_err(|e| CliError::from_core("kfan", e))?;
                let _ = writeln!(s, "{k} {u} {l}");
                let _ = writeln!(rows, "{k},{u},{l}");
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "{}:1: expected a matrix, profile or vector, found `{}`",
                file.display(),
                other.unwrap_or("")
            )))
        }
    }
    if let Some(path) = &cli.csv_out {
        write(path, &rows)?;
    }
    done(s, true)
}

fn horn(x: &Path, y: &Path, out: Option<&Path>) -> Result<Output, CliError> {
    let (xv, yv) = (vector::<f64>(x)?, vector::<f64>(y)?);
    let what = format!("horn {} {}", x.display(), y.display());
    let o = horn_construct_detailed(&xv, &yv).map_err(|e| CliError::from_core(&what, e))?;
    let text = emit_matrix(&o.u);
    eprintln!("diag_error: {:e}", o.diag_error);
    match out {
        Some(path) => {
            write(path, &text)?;
            done(format!("diag_error: {:e}\n", o.diag_error), true)
        }
        None => done(text, true),
    }
}

fn ttransform<T: Scalar>(x: &Path, y: &Path) -> Result<Output, CliError> {
    let (xv, yv) = (vector::<T>(x)?, vector::<T>(y)?);
    let what = format!("ttransform {} {}", x.display(), y.display());
    let chain = ttransform_chain(&xv, &yv).map_err(|e| CliError::from_core(&what, e))?;
    let mut s = format!("steps: {}\n", chain.steps.len());
    for st in &chain.steps {
        let _ = writeln!(s, "T {} {} {}", st.j, st.k, st.lambda);
    }
    s.push_str(&emit_matrix(chain.matrix.matrix()));
    done(s, true)
}

fn birkhoff<T: Scalar>(file: &Path) -> Result<Output, CliError> {
    let m = load(file, parse_matrix::<T>)?;
    let name = file.display().to_string();
    let d = DoublyStochastic::new(m).map_err(|e| CliError::from_core(&name, e))?;
    let dec = birkhoff_decompose(&d).map_err(|e| CliError::from_core(&name, e))?;
    let mut s = format!("terms: {}\n", dec.terms.len());
    for (c, perm) in &dec.terms {
        let p: Vec<String> = perm.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "{c} {}", p.join(" "));
    }
    done(s, true)
}

fn parse_blocks(spec: Option<&str>, n: usize) -> Result<Vec<Vec<usize>>, CliError> {
    let Some(spec) = spec else {
        return Ok((0..n).map(|i| vec![i]).collect());
    };
    spec.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("--blocks: bad index `{t}`"))))
                .collect()
        })
        .collect()
}

fn pinch_verb(file: &Path, blocks: Option<&str>) -> Result<Output, CliError> {
    let name = file.display().to_string();
    let m = load(file, parse_matrix::<f64>)?;
    let a = SymMatrix::new(m).map_err(|e| CliError::from_core(&name, e))?;
    let blocks = parse_blocks(blocks, a.order())?;
    let p = pinch(&a, &blocks).map_err(|e| CliError::from_core(&name, e))?;
    let ep = eigenvalues(&p).map_err(|e| CliError::from_core(&name, e))?;
    let ea = eigenvalues(&a).map_err(|e| CliError::from_core(&name, e))?;
    let ok = vec_majorizes(&ep, &ea).map_err(|e| CliError::from_core(&name, e))?;
    let mut s = emit_matrix(p.matrix());
    let _ = writeln!(s, "MAJORIZED: {ok}");
    done(s, ok)
}

fn contract(f: &Path, g: &Path, eps: &str, out: Option<&Path>) -> Result<Output, CliError> {
    let (fv, gv) = (vector::<f64>(f)?, vector::<f64>(g)?);
    let eps = literal::<f64>("--eps", eps)?;
    let what = format!("contract {} {}", f.display(), g.display());
    let o = contractive_construct(&fv, &gv, eps).map_err(|e| CliError::from_core(&what, e))?;
    let sigma = o.contraction.sigma_max();
    let ok = sigma <= 1.0 + 1e-9 && o.diag_error < 3.0 * eps;
    let mut s = String::new();
    let _ = writeln!(s, "dilated_order: {}", o.dilated_len);
    let _ = writeln!(s, "sigma_max: {sigma}");
    let _ = writeln!(s, "diag_error: {:e} (bound {:e})", o.diag_error, 3.0 * eps);
    let _ = writeln!(s, "CONTRACTIVE: {ok}");
    if let Some(path) = out {
        write(path, &emit_matrix(o.contraction.matrix()))?;
    }
    done(s, ok)
}

fn discretize<T: Scalar>(p: &Pair, m: u64, weak: bool, csv: Option<&Path>) -> Result<Output, CliError> {
    let (a, b) = operators::<T>(p)?;
    let d = schur_horn::discretize::discretize_pair(&a, &b, m, weak).map_err(|e| core_err("discretize", p, e))?;
    let ok = d.cert_a.member && d.cert_b.member;
    if let Some(path) = csv {
        let k_max = d.n + 3 * d.l as u64;
        write(path, &d.curve_csv(k_max).map_err(|e| core_err("discretize", p, e))?)?;
    }
    done(d.report(), ok)
}

fn report<T: Scalar>(rep: RunReport<T>, csv: Option<&Path>) -> Result<Output, CliError> {
    if let Some(path) = csv {
        let mut rows = String::from("step,eps,delta\n");
        for st in &rep.ledger {
            let _ = writeln!(rows, "{},{},{}", st.label, st.eps, st.delta);
        }
        write(path, &rows)?;
    }
    let ok = rep.verdict;
    done(rep.render(), ok)
}

fn hinge<T: Scalar>(p: &Pair, side: Side) -> Result<Output, CliError> {
    let (a, b) = operators::<T>(p)?;
    let side = match side {
        Side::Upper => HingeSide::Upper,
        Side::Lower => HingeSide::Lower,
    };
    let mut s = String::from("c hinge_a hinge_b\n");
    for c in hinge_points(&a, &b) {
        let _ = writeln!(s, "{c} {} {}", hinge_trace(&a, &c, side), hinge_trace(&b, &c, side));
    }
    let ok = hinge_dominated(&a, &b, side);
    let _ = writeln!(s, "HINGE_DOMINATED: {ok}");
    done(s, ok)
}

fn ds<T: Scalar>(p: &Pair, m: u64, copies: usize, out: Option<&Path>) -> Result<Output, CliError> {
    let (a, b) = operators::<T>(p)?;
    let (rep, d) = doubly_stochastic_report(&a, &b, m, copies).map_err(|e| core_err("ds", p, e))?;
    let mut s = rep.render();
    let _ = writeln!(s, "ds_order: {}", d.matrix.order());
    let _ = writeln!(s, "row_defect: {:e}", d.row_defect);
    let _ = writeln!(s, "col_defect: {:e}", d.col_defect);
    let _ = writeln!(s, "residual: {:e}", d.residual);
    if let Some(path) = out {
        write(path, &emit_matrix(d.matrix.matrix()))?;
    }
    let ok = rep.verdict && d.row_defect < 1e-9 && d.col_defect < 1e-9 && d.residual < 1e-8;
    done(s, ok)
}

fn generate(seed: u64, kind: GenKind, out_dir: Option<&Path>) -> Result<Output, CliError> {
    let mut r = gen::rng(seed);
    let docs: Vec<(&str, String)> = match kind {
        GenKind::Pair => {
            let (a, b) = gen::flag_averaged_pair::<Rational, _>(&mut r);
            vec![("a.op", emit_stepop(&a)), ("b.op", emit_stepop(&b))]
        }
        GenKind::Weak => {
            let (a, b) = gen::positive_weak_pair::<Rational, _>(&mut r, seed % 2 == 0);
            vec![("a.op", emit_stepop(&a)), ("b.op", emit_stepop(&b))]
        }
        GenKind::Operator => vec![("a.op", emit_stepop(&gen::random_operator::<Rational, _>(&mut r)))],
        GenKind::Profile => vec![("f.prof", emit_profile(&gen::random_ambient_profile::<Rational, _>(&mut r)))],
        GenKind::Vectors => {
            let n = 2 + (seed % 5) as usize;
            let (x, y) = gen::majorized_vectors::<Rational, _>(&mut r, n);
            vec![("x.vec", emit_vector(&x)), ("y.vec", emit_vector(&y))]
        }
        GenKind::Symmetric => {
            let n = 2 + (seed % 5) as usize;
            vec![("a.mat", emit_matrix(gen::random_symmetric(&mut r, n).matrix()))]
        }
        GenKind::Ds => {
            let n = 2 + (seed % 4) as usize;
            let d = gen::random_doubly_stochastic_mixed::<Rational, _>(&mut r, n, 4);
            vec![("d.mat", emit_matrix(d.matrix()))]
        }
    };
    let mut s = String::new();
    for (name, text) in docs {
        match out_dir {
            Some(dir) => {
                let path = dir.join(name);
                write(&path, &text)?;
                let _ = writeln!(s, "{}", path.display());
            }
            None => {
                let _ = writeln!(s, "# {name}");
                s.push_str(&text);
            }
        }
    }
    done(s, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_lists() {
        assert_eq!(parse_blocks(None, 3).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(parse_blocks(Some("0,2; 1"), 3).unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(parse_blocks(Some("0,x"), 3).unwrap_err().code(), 2);
    }
}
