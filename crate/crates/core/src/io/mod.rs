//! Text formats, DOT emitters and small parsing helpers.

pub mod algebra;
pub mod dot;
pub mod graph;
pub mod rep;
pub mod table;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

pub use algebra::{parse_algebra, print_algebra};
pub use dot::{cells_dot, diagram_dot};
pub use graph::{parse_dims, parse_graph, print_dims, print_graph};
pub use rep::{parse_rep, parse_rep_with, print_rep};
pub use table::{parse_table, print_table};

/// Location-tagged diagnostic. `Syntax` is malformed text, `Semantic` is
/// well-formed text that refers to something invalid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Missing(String),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => Some(*line),
            ParseError::Missing(_) => None,
        }
    }
}

/// A non-blank line with its comment stripped.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub raw: &'a str,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    /// 1-based column of `part`, which must be a subslice of this line.
    pub fn col_of(&self, part: &str) -> usize {
        let base = self.raw.as_ptr() as usize;
        let p = part.as_ptr() as usize;
        if p >= base && p <= base + self.raw.len() {
            self.raw[..p - base].chars().count() + 1
        } else {
            1
        }
    }

    pub fn syntax(&self, part: &str, message: impl fmt::Display) -> ParseError {
        ParseError::Syntax {
            line: self.number,
            col: self.col_of(part),
            message: message.to_string(),
        }
    }

    pub fn semantic(&self, message: impl fmt::Display) -> ParseError {
        ParseError::Semantic {
            line: self.number,
            message: message.to_string(),
        }
    }

    /// `key: rest` with the key matched case-sensitively.
    pub fn keyed(&self, key: &str) -> Option<&'a str> {
        let rest = self.text.strip_prefix(key)?;
        let rest = rest.trim_start().strip_prefix(':')?;
        Some(rest.trim())
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let text = body.trim();
        (!text.is_empty()).then_some(Line {
            number: i + 1,
            raw,
            text,
        })
    })
}

/// Splits on commas and whitespace, dropping empty pieces.
pub(crate) fn words(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty())
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses `2 a + b - 1/2 c`, `(1+T) a`, `3*a` or `0` into `(name, coefficient)` pairs.
pub(crate) fn parse_lincomb<'a>(
    line: &Line<'a>,
    s: &'a str,
    field: &Field,
) -> Result<Vec<(&'a str, Scalar)>, ParseError> {
    let t = s.trim();
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = t.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let piece = t[start..i].trim();
                if piece.is_empty() {
                    if !terms.is_empty() || i != 0 {
                        return Err(line.syntax(&t[i..], "dangling sign"));
                    }
                } else {
                    terms.push((negative, piece));
                }
                negative = c == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = t[start..].trim();
    if last.is_empty() {
        return Err(line.syntax(t, "expected a term after the sign"));
    }
    terms.push((negative, last));

    let mut out = Vec::new();
    for (neg, piece) in terms {
        let (coef, name) = if let Some(rest) = piece.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| line.syntax(piece, "unbalanced parenthesis"))?;
            let c = field
                .parse(&rest[..close])
                .map_err(|e| line.syntax(piece, e))?;
            (c, rest[close + 1..].trim().trim_start_matches('*').trim())
        } else if piece.starts_with(|c: char| c.is_ascii_digit()) {
            let end = piece
                .find(|c: char| c.is_whitespace() || c == '*')
                .unwrap_or(piece.len());
            let c = field
                .parse(&piece[..end])
                .map_err(|e| line.syntax(piece, e))?;
            (c, piece[end..].trim().trim_start_matches('*').trim())
        } else {
            (field.one(), piece)
        };
        if !is_identifier(name) {
            return Err(line.syntax(piece, format!("expected a name, found `{name}`")));
        }
        out.push((name, if neg { -coef } else { coef }));
    }
    Ok(out)
}

/// Inverse of [`parse_lincomb`] for named coordinates.
pub(crate) fn format_lincomb(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_rational() && c.to_rational().map(|r| r < num_traits::Zero::zero()).unwrap_or(false);
        let mag = if negative { -c } else { c.clone() };
        let coef = if mag.is_one() {
            String::new()
        } else if mag.is_rational() {
            format!("{mag} ")
        } else {
            format!("({mag}) ")
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&coef);
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(text: &str) -> Line<'_> {
        Line { number: 1, raw: text, text }
    }

    #[test]
    fn lincomb_round_trip() {
        let f = Field::eisenstein();
        let l = line("-xy - xx + 2 x + (1+T) y");
        let parsed = parse_lincomb(&l, l.text, &f).unwrap();
        let names: Vec<&str> = parsed.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["xy", "xx", "x", "y"]);
        assert_eq!(parsed[0].1, f.int(-1));
        assert_eq!(parsed[3].1, f.parse("1+T").unwrap());
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let v: Vec<Scalar> = parsed.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(format_lincomb(&names, &v), "-xy - xx + 2 x + (1+T) y");
    }

    #[test]
    fn lincomb_errors_carry_columns() {
        let f = Field::rationals();
        let l = line("x + + y");
        match parse_lincomb(&l, l.text, &f) {
            Err(ParseError::Syntax { col, .. }) => assert_eq!(col, 5),
            other => panic!("unexpected {other:?}"),
        }
        let l = line("2 3x");
        assert!(parse_lincomb(&l, l.text, &f).is_err());
    }

    #[test]
    fn zero_is_empty() {
        let f = Field::rationals();
        let l = line("0");
        assert!(parse_lincomb(&l, l.text, &f).unwrap().is_empty());
    }
}
