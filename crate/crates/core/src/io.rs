//! Plain-text file formats.
//!
//! | ext    | line format                         |
//! |--------|-------------------------------------|
//! | `.scx` | `v0 v1 ... vq` (one maximal simplex) |
//! | `.chn` | `coeff v0 ... vp`                   |
//! | `.wts` | `num/den v0 ... vp`                 |
//! | `.xyz` | `vid x1 ... xd`                     |
//! | `.mat` | `m n` header, then m rows of n ints  |
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

fn parse_vertex(line: usize, tok: &str) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| Error::parse(line, format!("invalid vertex id {tok:?}")))
}

fn parse_int(line: usize, tok: &str) -> Result<BigInt> {
    BigInt::from_str(tok).map_err(|_| Error::parse(line, format!("invalid integer {tok:?}")))
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut maximal = Vec::new();
    for (line, toks) in content_lines(text) {
        let verts = toks.iter().map(|t| parse_vertex(line, t)).collect::<Result<Vec<u32>>>()?;
        if verts.len() > 63 {
            return Err(Error::parse(line, "simplex has too many vertices"));
        }
        Simplex::new(&verts).map_err(|e| Error::parse(line, e.to_string()))?;
        maximal.push(verts);
    }
    SimplicialComplex::from_maximal(&maximal)
}

/// The maximal simplices of `complex`, one per line.
pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    let dim = complex.dim();
    for q in (0..=dim.max(-1)).rev().map(|q| q as usize) {
        for s in complex.simplices(q) {
            let is_face = (q as isize) < dim
                && complex
                    .simplices(q + 1)
                    .iter()
                    .any(|t| s.vertices().iter().all(|v| t.vertices().contains(v)));
            if !is_face {
                out.push_str(&join(s.vertices()));
                out.push('\n');
            }
        }
    }
    out
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses a `.chn` file of dimension `dim` against `complex`. Repeated
/// simplices accumulate; orientation is folded into the sign.
pub fn parse_chain(text: &str, complex: &SimplicialComplex, dim: usize) -> Result<Chain> {
    let mut chain = Chain::zero(dim);
    for (line, toks) in content_lines(text) {
        let coeff = parse_int(line, toks[0])?;
        let verts = toks[1..].iter().map(|t| parse_vertex(line, t)).collect::<Result<Vec<u32>>>()?;
        chain
            .add_oriented(complex, &verts, coeff)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(chain)
}

/// Writes a chain in basis order with canonical vertex order.
pub fn write_chain(complex: &SimplicialComplex, chain: &Chain) -> String {
    let mut out = String::new();
    for (i, c) in chain.iter() {
        out.push_str(&format!("{} {}\n", c, join(complex.simplex(chain.dim, i).vertices())));
    }
    out
}

/// Parses a `.wts` file; simplices not listed get weight 1. Orientation of the
/// listed vertices is irrelevant.
pub fn parse_weights(text: &str, complex: &SimplicialComplex, dim: usize) -> Result<Vec<BigRational>> {
    let mut w = vec![BigRational::one(); complex.count(dim)];
    for (line, toks) in content_lines(text) {
        let value = parse_rational(toks[0]).map_err(|m| Error::parse(line, m))?;
        let verts = toks[1..].iter().map(|t| parse_vertex(line, t)).collect::<Result<Vec<u32>>>()?;
        if verts.len() != dim + 1 {
            return Err(Error::parse(
                line,
                format!("expected {} vertices, found {}", dim + 1, verts.len()),
            ));
        }
        let s = Simplex::new(&verts).map_err(|e| Error::parse(line, e.to_string()))?;
        let idx = complex
            .index_of(&s)
            .ok_or_else(|| Error::parse(line, format!("simplex {verts:?} not in complex")))?;
        w[idx] = value;
    }
    Ok(w)
}

pub fn write_weights(complex: &SimplicialComplex, dim: usize, weights: &[BigRational]) -> String {
    complex
        .simplices(dim)
        .iter()
        .zip(weights)
        .map(|(s, w)| format!("{} {}\n", format_rational(w), join(s.vertices())))
        .collect()
}

pub fn parse_coordinates(text: &str) -> Result<HashMap<u32, Vec<BigRational>>> {
    let mut out = HashMap::new();
    for (line, toks) in content_lines(text) {
        let vid = parse_vertex(line, toks[0])?;
        let pt = toks[1..]
            .iter()
            .map(|t| parse_rational(t).map_err(|m| Error::parse(line, m)))
            .collect::<Result<Vec<_>>>()?;
        if out.insert(vid, pt).is_some() {
            return Err(Error::parse(line, format!("duplicate vertex {vid}")));
        }
    }
    Ok(out)
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
    if header.len() != 2 {
        return Err(Error::parse(hline, "header must be `m n`"));
    }
    let dims = |t: &str| t.parse::<usize>().map_err(|_| Error::parse(hline, format!("bad size {t:?}")));
    let (m, n) = (dims(header[0])?, dims(header[1])?);
    let mut mat = IntMatrix::zeros(m, n);
    let mut row = 0;
    for (line, toks) in lines {
        if row == m {
            return Err(Error::parse(line, "more rows than declared"));
        }
        if toks.len() != n {
            return Err(Error::parse(line, format!("expected {n} entries, found {}", toks.len())));
        }
        for (j, t) in toks.iter().enumerate() {
            mat.set(row, j, parse_int(line, t)?);
        }
        row += 1;
    }
    if row != m {
        return Err(Error::parse(0, format!("declared {m} rows, found {row}")));
    }
    Ok(mat)
}

/// Accepts `p/q`, integers and decimals with optional exponent
/// (`-1.25`, `3e-2`).
pub fn parse_rational(tok: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("invalid rational {tok:?}");
    if let Some((n, d)) = tok.split_once('/') {
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {tok:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match tok.find(['e', 'E']) {
        Some(pos) => (&tok[..pos], tok[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (tok, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

/// Always `p/q`, including integers (`0/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn complex_file_with_comments() {
        let k = parse_complex("# a triangle and a dangling edge\n0 1 2\n\n2 3\n").unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 4, 1));
        assert_eq!(write_complex(&k), "0 1 2\n2 3\n");
    }

    #[test]
    fn complex_parse_errors_carry_line() {
        assert_eq!(
            parse_complex("0 1\n0 x\n").unwrap_err(),
            Error::parse(2, "invalid vertex id \"x\"")
        );
        assert!(matches!(parse_complex("1 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn chain_sign_follows_orientation() {
        let k = parse_complex("0 1 2\n").unwrap();
        let c = parse_chain("1 1 0\n2 1 2\n", &k, 1).unwrap();
        assert_eq!(c.get(0), BigInt::from(-1));
        assert_eq!(c.get(2), BigInt::from(2));
        assert_eq!(write_chain(&k, &c), "-1 0 1\n2 1 2\n");
        assert!(parse_chain("1 0 5\n", &k, 1).is_err());
        assert!(parse_chain("1 0 1 2\n", &k, 1).is_err());
    }

    #[test]
    fn weights_default_to_one() {
        let k = parse_complex("0 1 2\n").unwrap();
        let w = parse_weights("3/2 2 1\n", &k, 1).unwrap();
        assert_eq!(w, vec![q(1, 1), q(1, 1), q(3, 2)]);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("3e-2").unwrap(), q(3, 100));
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("-").is_err());
        assert_eq!(format_rational(&q(0, 5)), "0/1");
    }

    #[test]
    fn coordinates() {
        let c = parse_coordinates("0 0 0\n1 3 4.0\n").unwrap();
        assert_eq!(c[&1], vec![q(3, 1), q(4, 1)]);
        assert!(parse_coordinates("0 0\n0 1\n").is_err());
    }

    #[test]
    fn matrix_file() {
        let m = parse_matrix("2 3\n1 0 -1\n0 1 1\n").unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1i64, 0, -1], vec![0, 1, 1]]));
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        assert!(parse_matrix("2 2\n1 0\n").is_err());
        assert!(parse_matrix("1 2\n1 0 0\n").is_err());
        assert!(parse_matrix("").is_err());
    }
}
