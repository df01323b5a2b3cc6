//! Plain-text point-set files.
//!
//! ```text
//! # optional comments
//! points 4 dim 2 mode rational
//! 0/1 0/1
//! 1/1 0/1
//! 1/1 1/1
//! 0/1 1/2
//! ```
//!
//! Float files hold decimal literals; rational files hold `p/q` (or bare
//! integers). A file may be loaded in the other mode: rational → float
//! rounds each value, float → rational accepts a literal only when its
//! decimal value equals its binary64 value exactly (`0.5` passes, `0.1`
//! does not).

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Configuration, Point};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfiguration {
    Float(Configuration<f64>),
    Rational(Configuration<BigRational>),
}

impl AnyConfiguration {
    pub fn mode(&self) -> Mode {
        match self {
            AnyConfiguration::Float(_) => Mode::Float,
            AnyConfiguration::Rational(_) => Mode::Rational,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyConfiguration::Float(c) => c.len(),
            AnyConfiguration::Rational(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyConfiguration::Float(c) => c.dim(),
            AnyConfiguration::Rational(c) => c.dim(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyConfiguration::Float(c) => write_point_file(c),
            AnyConfiguration::Rational(c) => write_point_file(c),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Exact value of a decimal literal such as `-12.5e-3`.
pub fn parse_decimal_exact(token: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(i) => (&token[..i], token[i + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(digits, Pow::pow(&ten, scale.unsigned_abs()))
    };
    Some(if negative { -value } else { value })
}

fn parse_rational_token(token: &str) -> Option<BigRational> {
    let (p, q) = token.split_once('/').unwrap_or((token, "1"));
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

fn parse_float_token(token: &str) -> Option<f64> {
    // Syntax check first: Rust's parser also accepts `inf` and `NaN`.
    parse_decimal_exact(token)?;
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// A coordinate read from a file of `file_mode` and converted to `S`.
trait FromToken: Scalar {
    fn from_token(token: &str, file_mode: Mode, line: usize) -> Result<Self>;
}

impl FromToken for f64 {
    fn from_token(token: &str, file_mode: Mode, line: usize) -> Result<Self> {
        match file_mode {
            Mode::Float => parse_float_token(token),
            Mode::Rational => parse_rational_token(token).map(|r| r.to_f64()),
        }
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(line, format!("bad {file_mode} coordinate `{token}`")))
    }
}

impl FromToken for BigRational {
    fn from_token(token: &str, file_mode: Mode, line: usize) -> Result<Self> {
        match file_mode {
            Mode::Rational => parse_rational_token(token)
                .ok_or_else(|| parse_err(line, format!("bad rational coordinate `{token}`"))),
            Mode::Float => {
                let exact = parse_decimal_exact(token)
                    .ok_or_else(|| parse_err(line, format!("bad float coordinate `{token}`")))?;
                let binary = parse_float_token(token).and_then(BigRational::from_float);
                if binary.as_ref() != Some(&exact) {
                    return Err(parse_err(
                        line,
                        format!(
                            "decimal `{token}` is not exactly representable in binary64; \
                             write it as p/q in a rational file"
                        ),
                    ));
                }
                Ok(exact)
            }
        }
    }
}

struct Header {
    n: usize,
    dim: usize,
    mode: Mode,
}

fn parse_header(line: &str, line_no: usize) -> Result<Header> {
    let t: Vec<&str> = line.split_whitespace().collect();
    let bad = || {
        parse_err(
            line_no,
            format!("expected `points <n> dim <d> mode <float|rational>`, got `{line}`"),
        )
    };
    if t.len() != 6 || t[0] != "points" || t[2] != "dim" || t[4] != "mode" {
        return Err(bad());
    }
    let n: usize = t[1].parse().map_err(|_| bad())?;
    let dim: usize = t[3].parse().map_err(|_| bad())?;
    let mode: Mode = t[5].parse().map_err(|_| bad())?;
    if n < 3 {
        return Err(parse_err(line_no, format!("need at least 3 points, got {n}")));
    }
    if !(2..=3).contains(&dim) {
        return Err(parse_err(line_no, format!("dim must be 2 or 3, got {dim}")));
    }
    Ok(Header { n, dim, mode })
}

fn parse_body<S: FromToken>(
    rows: &[(usize, &str)],
    header: &Header,
) -> Result<Configuration<S>> {
    let points = rows
        .iter()
        .map(|&(line_no, row)| {
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != header.dim {
                return Err(parse_err(
                    line_no,
                    format!("expected {} coordinates, got {}", header.dim, tokens.len()),
                ));
            }
            let coords = tokens
                .iter()
                .map(|tok| S::from_token(tok, header.mode, line_no))
                .collect::<Result<Vec<_>>>()?;
            Point::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(points)
}

/// Parses a point file, loading it in `mode` when given and in the file's
/// own mode otherwise.
pub fn parse_point_file(text: &str, mode: Option<Mode>) -> Result<AnyConfiguration> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header_text) = lines.next().ok_or_else(|| parse_err(1, "empty point file"))?;
    let header = parse_header(header_text, header_line)?;
    let rows: Vec<(usize, &str)> = lines.collect();
    if rows.len() != header.n {
        let line = rows.last().map_or(header_line, |r| r.0);
        return Err(parse_err(
            line,
            format!("header announces {} points, found {}", header.n, rows.len()),
        ));
    }
    Ok(match mode.unwrap_or(header.mode) {
        Mode::Float => AnyConfiguration::Float(parse_body(&rows, &header)?),
        Mode::Rational => AnyConfiguration::Rational(parse_body(&rows, &header)?),
    })
}

pub fn read_point_file(path: &Path, mode: Option<Mode>) -> Result<AnyConfiguration> {
    let text = std::fs::read_to_string(path)?;
    parse_point_file(&text, mode)
}

pub fn write_point_file<S: Scalar>(c: &Configuration<S>) -> String {
    let mut out = format!("points {} dim {} mode {}\n", c.len(), c.dim(), S::MODE);
    for p in c.points() {
        let row: Vec<String> = p.coords().iter().map(Scalar::to_token).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
