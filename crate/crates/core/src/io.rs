//! Plain-text coefficient files.
//!
//! ```text
//! rcforms-coeff 1
//! kind jacobi
//! weight 4
//! index 1
//! trunc 2
//! coeff 0 0 1/1
//! coeff 1 -2 1/1
//! ...
//! END
//! ```
//!
//! Siegel files use `kind siegel`, omit `index`, and carry `coeff n r m a`
//! records. Records are sorted ascending by key, values are reduced
//! `num/den` fractions, and absent keys are zero. `#` starts a comment.
//! Export is canonical: importing and re-exporting a canonical file gives
//! the same bytes.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_canonical, parse_canonical, Rational};
use crate::series::JacobiSeries;
use crate::siegel::SiegelSeries;

pub const FORMAT_TAG: &str = "rcforms-coeff";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientFile {
    Jacobi(JacobiSeries),
    Siegel(SiegelSeries),
}

impl CoefficientFile {
    pub fn export(&self) -> String {
        match self {
            CoefficientFile::Jacobi(f) => export_jacobi(f),
            CoefficientFile::Siegel(f) => export_siegel(f),
        }
    }
}

pub fn export_jacobi(f: &JacobiSeries) -> String {
    let mut out = format!(
        "{FORMAT_TAG} {FORMAT_VERSION}\nkind jacobi\nweight {}\nindex {}\ntrunc {}\n",
        f.weight(),
        f.index(),
        f.trunc()
    );
    for (&(n, r), c) in f.iter() {
        writeln!(out, "coeff {n} {r} {}", format_canonical(c)).unwrap();
    }
    out.push_str("END\n");
    out
}

pub fn export_siegel(f: &SiegelSeries) -> String {
    let mut out = format!(
        "{FORMAT_TAG} {FORMAT_VERSION}\nkind siegel\nweight {}\ntrunc {}\n",
        f.weight(),
        f.trunc()
    );
    for (&(n, r, m), c) in f.iter() {
        writeln!(out, "coeff {n} {r} {m} {}", format_canonical(c)).unwrap();
    }
    out.push_str("END\n");
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Split<'a, char>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.split('\n').enumerate(),
        }
    }

    /// Next non-blank line with comments stripped, as `(line_no, tokens)`.
    fn next_tokens(&mut self) -> Result<Option<(usize, Vec<&'a str>)>> {
        for (idx, raw) in self.inner.by_ref() {
            let line = idx + 1;
            if raw.contains('\r') {
                return Err(parse_err(line, "CR line ending"));
            }
            let content = raw.split_once('#').map_or(raw, |(a, _)| a);
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Ok(Some((line, tokens)));
            }
        }
        Ok(None)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_tokens()?
            .ok_or_else(|| parse_err(0, &format!("unexpected end of file, expected {what}")))
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    // Reject "+5" and leading zeros so that every accepted file is canonical.
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && tok != "-0";
    if !canonical {
        return Err(parse_err(line, &format!("bad {what} {tok:?}")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, &format!("bad {what} {tok:?}")))
}

fn metadata<T: std::str::FromStr>(lines: &mut Lines<'_>, key: &str) -> Result<T> {
    let (line, tokens) = lines.expect(key)?;
    match tokens.as_slice() {
        [k, v] if *k == key => parse_num(line, v, key),
        _ => Err(parse_err(line, &format!("expected `{key} <value>`"))),
    }
}

fn parse_value(line: usize, tok: &str) -> Result<Rational> {
    let v = parse_canonical(tok).map_err(|_| parse_err(line, &format!("non-canonical fraction {tok:?}")))?;
    if v.is_zero() {
        return Err(parse_err(line, "explicit zero coefficient"));
    }
    Ok(v)
}

/// Reads any coefficient file.
pub fn import(text: &str) -> Result<CoefficientFile> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect("header")?;
    match header.as_slice() {
        [tag, version] if *tag == FORMAT_TAG => {
            let v: u32 = parse_num(line, version, "version")?;
            if v != FORMAT_VERSION {
                return Err(parse_err(line, &format!("unsupported version {v}")));
            }
        }
        _ => return Err(parse_err(line, &format!("expected `{FORMAT_TAG} {FORMAT_VERSION}`"))),
    }
    let (line, kind) = lines.expect("kind")?;
    match kind.as_slice() {
        ["kind", "jacobi"] => read_jacobi(&mut lines).map(CoefficientFile::Jacobi),
        ["kind", "siegel"] => read_siegel(&mut lines).map(CoefficientFile::Siegel),
        _ => Err(parse_err(line, "expected `kind jacobi` or `kind siegel`")),
    }
}

pub fn import_jacobi(text: &str) -> Result<JacobiSeries> {
    match import(text)? {
        CoefficientFile::Jacobi(f) => Ok(f),
        CoefficientFile::Siegel(_) => Err(parse_err(2, "expected a jacobi file")),
    }
}

pub fn import_siegel(text: &str) -> Result<SiegelSeries> {
    match import(text)? {
        CoefficientFile::Siegel(f) => Ok(f),
        CoefficientFile::Jacobi(_) => Err(parse_err(2, "expected a siegel file")),
    }
}

/// Reads `coeff` records up to `END`, checking order and arity.
fn read_records<K: Ord + Copy>(
    lines: &mut Lines<'_>,
    arity: usize,
    mut key_of: impl FnMut(usize, &[&str]) -> Result<K>,
) -> Result<Vec<(usize, K, Rational)>> {
    let mut out: Vec<(usize, K, Rational)> = Vec::new();
    loop {
        let (line, tokens) = lines.expect("END")?;
        match tokens.as_slice() {
            ["END"] => break,
            ["coeff", rest @ ..] if rest.len() == arity + 1 => {
                let key = key_of(line, &rest[..arity])?;
                if let Some((_, prev, _)) = out.last() {
                    if *prev >= key {
                        return Err(parse_err(line, "records not strictly ascending"));
                    }
                }
                out.push((line, key, parse_value(line, rest[arity])?));
            }
            _ => return Err(parse_err(line, "expected `coeff` record or END")),
        }
    }
    if let Some((line, _)) = lines.next_tokens()? {
        return Err(parse_err(line, "content after END"));
    }
    Ok(out)
}

fn read_jacobi(lines: &mut Lines<'_>) -> Result<JacobiSeries> {
    let weight: i64 = metadata(lines, "weight")?;
    let index: u32 = metadata(lines, "index")?;
    let trunc: u32 = metadata(lines, "trunc")?;
    let records = read_records(lines, 2, |line, t| {
        Ok((parse_num::<i64>(line, t[0], "n")?, parse_num::<i64>(line, t[1], "r")?))
    })?;
    let mut f = JacobiSeries::zero(weight, index, trunc);
    for (line, (n, r), c) in records {
        f.set(n, r, c).map_err(|e| parse_err(line, &e.to_string()))?;
    }
    Ok(f)
}

fn read_siegel(lines: &mut Lines<'_>) -> Result<SiegelSeries> {
    let weight: i64 = metadata(lines, "weight")?;
    let trunc: u32 = metadata(lines, "trunc")?;
    let records = read_records(lines, 3, |line, t| {
        Ok((
            parse_num::<i64>(line, t[0], "n")?,
            parse_num::<i64>(line, t[1], "r")?,
            parse_num::<i64>(line, t[2], "m")?,
        ))
    })?;
    let t = i64::from(trunc);
    for (line, (n, r, m), _) in &records {
        if !(0..=t).contains(n) || !(0..=t).contains(m) {
            return Err(parse_err(*line, &format!("key ({n},{r},{m}) outside trunc {trunc}")));
        }
    }
    SiegelSeries::from_coeffs(weight, trunc, records.into_iter().map(|(_, k, c)| (k, c)))
}
