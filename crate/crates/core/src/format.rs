//! Line-oriented text formats.
//!
//! - element of `F_{q^k}`: `k` base-`q` digits, lowest coefficient first
//!   (`λ + 1` in `F_4` is `1 1`);
//! - matrix over `F_q`: a `rows cols` line, then one line per row;
//! - code header: `q k r p_0 … p_{k-1}`;
//! - subspace file: code header followed by a matrix;
//! - point file: one coordinate per line (shorter lines are zero-padded),
//!   or a single line of `r` scalars from `F_q`.
//!
//! Blank lines and lines starting with `#` are skipped; diagnostics carry
//! 1-based line numbers of the input.

use crate::error::{Error, Result};
use crate::gf::{ExtElement, ExtField, PrimeField};
use crate::linalg::Matrix;
use crate::spread::{SpreadCode, Subspace};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Numbered non-blank, non-comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("not a number: {t:?}"))))
        .collect()
}

fn digits(line: usize, s: &str, q: u32) -> Result<Vec<u32>> {
    parse_numbers(line, s)?
        .into_iter()
        .map(|d| {
            if d < q as u64 {
                Ok(d as u32)
            } else {
                Err(parse_err(line, format!("digit {d} out of range for q = {q}")))
            }
        })
        .collect()
}

pub fn format_element(a: &ExtElement) -> String {
    join(a.coeffs().iter())
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses one element; fewer than `k` digits are zero-padded.
pub fn parse_element(ext: &ExtField, line: usize, s: &str) -> Result<ExtElement> {
    let d = digits(line, s, ext.base().modulus())?;
    if d.len() > ext.degree() {
        return Err(parse_err(line, format!("{} digits, at most {} allowed", d.len(), ext.degree())));
    }
    ext.element(&d).map_err(|e| parse_err(line, e.to_string()))
}

pub fn format_matrix(m: &Matrix<PrimeField>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&join(m.row(i).iter()));
        out.push('\n');
    }
    out
}

fn parse_matrix_lines<'a>(
    base: &PrimeField,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    last: usize,
) -> Result<Matrix<PrimeField>> {
    let (ln, dims) = lines.next().ok_or_else(|| parse_err(last + 1, "missing \"rows cols\" line"))?;
    let dims = parse_numbers(ln, dims)?;
    let [rows, cols] = dims[..] else {
        return Err(parse_err(ln, "expected \"rows cols\""));
    };
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows * cols);
    let mut at = ln;
    for i in 0..rows {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| parse_err(at + 1, format!("missing row {} of {rows}", i + 1)))?;
        at = ln;
        let d = digits(ln, row, base.modulus())?;
        if d.len() != cols {
            return Err(parse_err(ln, format!("expected {cols} entries, found {}", d.len())));
        }
        data.extend(d);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected extra line"));
    }
    Matrix::new(*base, rows, cols, data).map_err(|e| parse_err(at, e.to_string()))
}

pub fn parse_matrix(base: &PrimeField, text: &str) -> Result<Matrix<PrimeField>> {
    parse_matrix_lines(base, &mut content_lines(text), 0)
}

pub fn format_header(code: &SpreadCode) -> String {
    let p = &code.modulus()[..code.k()];
    format!("{} {} {} {}", code.q(), code.k(), code.r(), join(p.iter()))
}

/// Parses a code header line into a code instance.
pub fn parse_header(line: usize, s: &str) -> Result<SpreadCode> {
    let v = parse_numbers(line, s)?;
    if v.len() < 3 {
        return Err(parse_err(line, "expected \"q k r p_0 … p_{k-1}\""));
    }
    let (q, k, r) = (v[0], v[1] as usize, v[2] as usize);
    if v.len() != 3 + k {
        return Err(parse_err(line, format!("expected {k} polynomial coefficients, found {}", v.len() - 3)));
    }
    let q = u32::try_from(q).map_err(|_| parse_err(line, "q too large"))?;
    let mut p: Vec<u32> = v[3..]
        .iter()
        .map(|&c| u32::try_from(c).map_err(|_| parse_err(line, "coefficient too large")))
        .collect::<Result<_>>()?;
    p.push(1);
    SpreadCode::with_modulus(q, r, &p).map_err(|e| parse_err(line, e.to_string()))
}

pub fn format_subspace(code: &SpreadCode, w: &Subspace) -> String {
    format!("{}\n{}", format_header(code), format_matrix(w.basis()))
}

/// Parses a subspace file, returning its code and the row space of its
/// matrix.
pub fn parse_subspace(text: &str) -> Result<(SpreadCode, Subspace)> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing code header"))?;
    let code = parse_header(ln, header)?;
    let m = parse_matrix_lines(&code.base(), &mut lines, ln)?;
    if m.cols() != code.n() {
        return Err(parse_err(ln + 1, format!("expected {} columns, found {}", code.n(), m.cols())));
    }
    Ok((code, Subspace::row_space(&m)))
}

pub fn format_point(point: &[ExtElement]) -> String {
    point.iter().map(|a| format_element(a) + "\n").collect()
}

pub fn parse_point(code: &SpreadCode, text: &str) -> Result<Vec<ExtElement>> {
    let ext = code.ext();
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let r = code.r();
    match lines.as_slice() {
        [] => Err(parse_err(1, "empty point file")),
        [(ln, s)] if r > 1 => {
            let d = digits(*ln, s, code.q())?;
            if d.len() != r {
                return Err(parse_err(*ln, format!("expected {r} coordinates, found {}", d.len())));
            }
            Ok(d.into_iter().map(|c| ext.embed(c)).collect())
        }
        _ if lines.len() != r => {
            let ln = lines.get(r).map_or(lines.last().unwrap().0, |l| l.0);
            Err(parse_err(ln, format!("expected {r} coordinates, found {}", lines.len())))
        }
        _ => lines.iter().map(|(ln, s)| parse_element(ext, *ln, s)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn element_round_trip() {
        let f = ExtField::with_default_modulus(2, 2).unwrap();
        let a = f.add(&f.lambda(), &f.one());
        assert_eq!(format_element(&a), "1 1");
        assert_eq!(parse_element(&f, 1, "1 1").unwrap(), a);
        assert_eq!(parse_element(&f, 1, "1").unwrap(), f.one());
        assert!(parse_element(&f, 3, "1 2").is_err());
    }

    #[test]
    fn subspace_round_trip() {
        let code = SpreadCode::new(3, 2, 3).unwrap();
        for c in code.enumerate().step_by(7) {
            let text = format_subspace(&code, &c.subspace);
            let (code2, w) = parse_subspace(&text).unwrap();
            assert_eq!(code2.modulus(), code.modulus());
            assert_eq!(w, c.subspace);
        }
    }

    #[test]
    fn header_matches_default_polynomial() {
        let code = SpreadCode::new(2, 3, 2).unwrap();
        assert_eq!(format_header(&code), "2 3 2 1 1 0");
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let bad = "2 2 2 1 1\n\n2 4\n1 0 0 0\n0 1 x 0\n";
        assert_eq!(
            parse_subspace(bad).unwrap_err(),
            Error::Parse { line: 5, msg: "not a number: \"x\"".into() }
        );
        let short = "2 2 2 1 1\n2 4\n1 0 0 0\n";
        assert!(matches!(parse_subspace(short), Err(Error::Parse { line: 4, .. })));
        let wrong_cols = "2 2 2 1 1\n1 3\n1 0 0\n";
        assert!(matches!(parse_subspace(wrong_cols), Err(Error::Parse { line: 2, .. })));
        let reducible = "2 2 2 0 0\n1 4\n1 0 0 0\n";
        assert!(matches!(parse_subspace(reducible), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn point_forms() {
        let code = SpreadCode::new(2, 2, 2).unwrap();
        let e = code.ext();
        assert_eq!(parse_point(&code, "1 0\n").unwrap(), vec![e.one(), e.zero()]);
        assert_eq!(parse_point(&code, "1\n0 1\n").unwrap(), vec![e.one(), e.lambda()]);
        assert!(matches!(parse_point(&code, "1\n0\n1\n"), Err(Error::Parse { line: 3, .. })));
    }
}
