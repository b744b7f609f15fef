//! OEIS b-files: one `index value` pair per line, `#` starts a comment line.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum BFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: index {found} does not follow {previous}")]
    Gap { line: usize, previous: i64, found: i64 },
    #[error("no terms found")]
    Empty,
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Terms read from a b-file, starting at index `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub terms: Vec<BigInt>,
    pub comments: Vec<String>,
}

pub fn parse(text: &str) -> Result<BFile, BFileError> {
    let mut offset = None;
    let mut terms = Vec::new();
    let mut comments = Vec::new();
    let mut previous = 0i64;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_owned());
            continue;
        }
        let syntax = |message: String| BFileError::Syntax { line: k + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(syntax(format!("expected `index value`, got {line:?}")));
        };
        let idx: i64 = idx.parse().map_err(|_| syntax(format!("bad index {idx:?}")))?;
        let val: BigInt = val.parse().map_err(|_| syntax(format!("bad value {val:?}")))?;
        match offset {
            None => offset = Some(idx),
            Some(_) if idx != previous + 1 => {
                return Err(BFileError::Gap { line: k + 1, previous, found: idx });
            }
            Some(_) => {}
        }
        previous = idx;
        terms.push(val);
    }
    let offset = offset.ok_or(BFileError::Empty)?;
    Ok(BFile { offset, terms, comments })
}

pub fn read(path: &Path) -> Result<BFile, BFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| BFileError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

/// Comment lines first, then `offset + k  terms[k]`.
pub fn render<T: std::fmt::Display>(offset: i64, terms: &[T], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for (k, t) in terms.iter().enumerate() {
        let _ = writeln!(out, "{} {t}", offset + k as i64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let b = parse("# A000108\n\n1 1\n2 2\n  3   5\n4 -14\n").unwrap();
        assert_eq!(b.offset, 1);
        assert_eq!(b.terms, [1, 2, 5, -14].map(BigInt::from).to_vec());
        assert_eq!(b.comments, ["A000108"]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse("0 1\n2 3\n"), Err(BFileError::Gap { line: 2, .. })));
        assert!(matches!(parse("0 1 2\n"), Err(BFileError::Syntax { line: 1, .. })));
        assert!(matches!(parse("0 x\n"), Err(BFileError::Syntax { .. })));
        assert!(matches!(parse("# nothing\n"), Err(BFileError::Empty)));
    }

    #[test]
    fn round_trip() {
        let terms: Vec<BigInt> = ["1", "-7", "123456789012345678901234567890"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let text = render(-1, &terms, &["two\nlines".to_owned()]);
        let back = parse(&text).unwrap();
        assert_eq!((back.offset, back.terms), (-1, terms));
        assert_eq!(back.comments, ["two", "lines"]);
    }
}
