//! Text formats for operators, profiles, vectors and matrices.
//!
//! Every format starts with a header line. `#` starts a comment anywhere on a
//! line; blank lines are ignored. Numbers are integers, decimals (with an
//! optional exponent) or `p/q`; weights and multiplicities may be `inf`.
//!
//! ```text
//! stepop v1 inf        profile v1        vector v1        matrix v1 2 2
//! 1 inf                2 3               1 1/2 0.25       0 1
//! 0 inf                1 inf                              1 0
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extended::{ExtWeight, Mult};
use crate::finite::DenseMatrix;
use crate::majorize::{Profile, ProfileTag};
use crate::scalar::{to_decimal_string, Scalar};
use crate::spectral::curve::merge_abscissae;
use crate::spectral::{lower_fn, upper_fn, Ambient, Atom, StepOperator};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn number<T: Scalar>(tok: &str, line: usize) -> Result<T> {
    T::parse_literal(tok).ok_or_else(|| perr(line, format!("not a number: {tok}")))
}

fn is_inf(tok: &str) -> bool {
    matches!(tok, "inf" | "Inf" | "INF" | "infinity" | "∞")
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    kind: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let (line, toks) = lines.next().ok_or_else(|| perr(1, format!("empty input, expected `{kind} v1` header")))?;
    if toks.len() < 2 || toks[0] != kind || toks[1] != "v1" {
        return Err(perr(line, format!("expected `{kind} v1` header, found `{}`", toks.join(" "))));
    }
    Ok((line, toks[2..].to_vec()))
}

/// `stepop v1 inf|fin` followed by `value weight` lines.
pub fn parse_stepop<T: Scalar>(text: &str) -> Result<StepOperator<T>> {
    let mut lines = content_lines(text);
    let (hline, rest) = header(&mut lines, "stepop")?;
    let ambient = match rest.as_slice() {
        ["inf"] | [] => Ambient::SemifiniteInfinite,
        ["fin"] => Ambient::FiniteTrace,
        other => return Err(perr(hline, format!("unknown ambient `{}`, expected inf or fin", other.join(" ")))),
    };
    let mut atoms = Vec::new();
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        if toks.len() != 2 {
            return Err(perr(line, format!("expected `value weight`, found {} fields", toks.len())));
        }
        let value = number::<T>(toks[0], line)?;
        let weight = if is_inf(toks[1]) { ExtWeight::Infinite } else { ExtWeight::Finite(number::<T>(toks[1], line)?) };
        if let ExtWeight::Finite(w) = &weight {
            if !w.is_positive() {
                return Err(perr(line, format!("weight {w} is not positive")));
            }
        }
        atoms.push(Atom::new(value, weight));
    }
    StepOperator::new(atoms, ambient).map_err(|e| perr(last_line, e.to_string()))
}

pub fn emit_stepop<T: Scalar>(x: &StepOperator<T>) -> String {
    let amb = match x.ambient() {
        Ambient::SemifiniteInfinite => "inf",
        Ambient::FiniteTrace => "fin",
    };
    let mut s = format!("stepop v1 {amb}\n");
    for a in x.atoms() {
        let _ = writeln!(s, "{} {}", a.value, a.weight);
    }
    s
}

/// `profile v1` followed by `value multiplicity` lines. The profile is
/// ambient when some multiplicity is infinite, truncated otherwise.
pub fn parse_profile<T: Scalar>(text: &str) -> Result<Profile<T>> {
    let mut lines = content_lines(text);
    let (hline, rest) = header(&mut lines, "profile")?;
    if !rest.is_empty() {
        return Err(perr(hline, "unexpected fields after profile header"));
    }
    let mut entries = Vec::new();
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        if toks.len() != 2 {
            return Err(perr(line, format!("expected `value multiplicity`, found {} fields", toks.len())));
        }
        let value = number::<T>(toks[0], line)?;
        let mult = if is_inf(toks[1]) {
            Mult::Infinite
        } else {
            Mult::Finite(toks[1].parse::<u64>().map_err(|_| perr(line, format!("bad multiplicity: {}", toks[1])))?)
        };
        entries.push((value, mult));
    }
    let tag = if entries.iter().any(|(_, m)| m.is_infinite()) { ProfileTag::Ambient } else { ProfileTag::Truncated };
    Profile::new(entries, tag).map_err(|e| perr(last_line, e.to_string()))
}

pub fn emit_profile<T: Scalar>(f: &Profile<T>) -> String {
    let mut s = String::from("profile v1\n");
    for (v, m) in f.entries() {
        let _ = writeln!(s, "{v} {m}");
    }
    s
}

/// `vector v1` followed by entries, any number per line.
pub fn parse_vector<T: Scalar>(text: &str) -> Result<Vec<T>> {
    let mut lines = content_lines(text);
    let (hline, rest) = header(&mut lines, "vector")?;
    if !rest.is_empty() {
        return Err(perr(hline, "unexpected fields after vector header"));
    }
    let mut out = Vec::new();
    for (line, toks) in lines {
        for t in toks {
            out.push(number::<T>(t, line)?);
        }
    }
    Ok(out)
}

pub fn emit_vector<T: Scalar>(v: &[T]) -> String {
    let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("vector v1\n{}\n", body.join(" "))
}

/// `matrix v1 n m` followed by `n` rows of `m` entries.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<DenseMatrix<T>> {
    let mut lines = content_lines(text);
    let (hline, rest) = header(&mut lines, "matrix")?;
    let dims: Vec<usize> = rest.iter().filter_map(|t| t.parse().ok()).collect();
    let [n, m] = dims[..] else {
        return Err(perr(hline, "matrix header needs `n m` dimensions"));
    };
    if rest.len() != 2 {
        return Err(perr(hline, "matrix header needs `n m` dimensions"));
    }
    let mut rows = Vec::with_capacity(n);
    for (line, toks) in lines {
        if rows.len() == n {
            return Err(perr(line, format!("more than {n} rows")));
        }
        if toks.len() != m {
            return Err(perr(line, format!("expected {m} entries, found {}", toks.len())));
        }
        rows.push(toks.iter().map(|t| number::<T>(t, line)).collect::<Result<Vec<T>>>()?);
    }
    if rows.len() != n {
        return Err(perr(hline, format!("expected {n} rows, found {}", rows.len())));
    }
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, m));
    }
    DenseMatrix::from_rows(rows).map_err(|e| perr(hline, e.to_string()))
}

pub fn emit_matrix<T: Scalar>(a: &DenseMatrix<T>) -> String {
    let mut s = format!("matrix v1 {} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

/// CSV `t,U_a,U_b,L_a,L_b` at the union of the knots of `U_a` and `U_b`,
/// then ten evenly spaced samples past the last knot. Values are rendered
/// with 12 significant digits.
pub fn emit_curves<T: Scalar>(a: &StepOperator<T>, b: &StepOperator<T>) -> String {
    let (ua, ub, la, lb) = (upper_fn(a), upper_fn(b), lower_fn(a), lower_fn(b));
    let mut ts = merge_abscissae(&ua.abscissae(), &ub.abscissae());
    let last = ts.last().cloned().unwrap_or_else(T::zero);
    let step = if last.is_positive() { last.clone() / T::from_int(10) } else { T::one() / T::from_int(10) };
    for k in 1..=10 {
        ts.push(last.clone() + step.clone() * T::from_int(k));
    }
    let mut s = String::from("t,U_a,U_b,L_a,L_b\n");
    for t in &ts {
        let row = [t.clone(), ua.eval(t), ub.eval(t), la.eval(t), lb.eval(t)];
        let cols: Vec<String> = row.iter().map(|v| to_decimal_string(v, 12)).collect();
        let _ = writeln!(s, "{}", cols.join(","));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn stepop_round_trip() {
        let text = "# projection\nstepop v1 inf\n1 inf\n0 inf  # kernel\n\n1/2 3/4\n";
        let x: StepOperator<Rational> = parse_stepop(text).unwrap();
        assert_eq!(x.atoms().len(), 3);
        assert_eq!(parse_stepop::<Rational>(&emit_stepop(&x)).unwrap(), x);
        let y: StepOperator<f64> = parse_stepop("stepop v1 fin\n0.1 0.25\n-2 1\n").unwrap();
        assert_eq!(parse_stepop::<f64>(&emit_stepop(&y)).unwrap(), y);
    }

    #[test]
    fn parse_errors_name_lines() {
        let e = parse_stepop::<Rational>("stepop v1 inf\n1 inf\nx 2\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, message: "not a number: x".into() });
        assert!(matches!(parse_stepop::<Rational>("profile v1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_stepop::<Rational>("stepop v1 inf\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix::<f64>("matrix v1 2 2\n1 2\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn profile_round_trip() {
        let f: Profile<Rational> = parse_profile("profile v1\n2 3\n1 inf\n").unwrap();
        assert_eq!(f.tag(), ProfileTag::Ambient);
        assert_eq!(parse_profile::<Rational>(&emit_profile(&f)).unwrap(), f);
        let g: Profile<Rational> = parse_profile("profile v1\n2 3\n").unwrap();
        assert_eq!(g.tag(), ProfileTag::Truncated);
    }

    #[test]
    fn vector_and_matrix_round_trip() {
        let v: Vec<Rational> = parse_vector("vector v1\n1 1/2\n0.25\n").unwrap();
        assert_eq!(v, vec![q(1, 1), q(1, 2), q(1, 4)]);
        assert_eq!(parse_vector::<Rational>(&emit_vector(&v)).unwrap(), v);
        let m = DenseMatrix::from_rows(vec![vec![0.1, -2.5e-7], vec![1.0 / 3.0, 7.0]]).unwrap();
        assert_eq!(parse_matrix::<f64>(&emit_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn curve_rows() {
        let i: StepOperator<Rational> = StepOperator::identity();
        let p = StepOperator::from_pairs(&[(q(1, 1), None), (q(0, 1), None)]).unwrap();
        let csv = emit_curves(&i, &p);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,U_a,U_b,L_a,L_b");
        let knots = merge_abscissae(&upper_fn(&i).abscissae(), &upper_fn(&p).abscissae()).len();
        assert_eq!(lines.len() - 1, knots + 10);
        for row in &lines[1..] {
            let c: Vec<&str> = row.split(',').collect();
            assert_eq!(c[1], c[2]);
            assert_eq!(c[3], c[0]);
            assert_eq!(c[4], "0");
        }
    }
}
