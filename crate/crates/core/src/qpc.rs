//! QPC v1: sparse text serialization of an F4 parity-check matrix.
//!
//! ```text
//! QPC v1 n=<n> m=<m>
//! <col><sym> <col><sym> ...      one line per row, columns ascending
//! ```
//!
//! `sym` is `w` (ω), `W` (ω̄) or `y` (1). Lines end with LF and carry no
//! trailing whitespace.

use std::fs;
use std::path::Path;

use crate::gf4::F4;
use crate::stabilizer::ParityCheck;
use crate::{Error, Result};

pub fn to_string(m: &ParityCheck) -> String {
    let mut out = format!("QPC v1 n={} m={}\n", m.n(), m.m());
    for row in m.rows() {
        let mut first = true;
        for &(c, s) in row {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&c.to_string());
            out.push(s.to_char());
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<ParityCheck> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or("");
    let (n, m) = parse_header(header).ok_or_else(|| err(1, format!("bad header {header:?}")))?;
    let mut rows = Vec::with_capacity(m);
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        if rows.len() == m {
            if line.is_empty() {
                continue;
            }
            return Err(err(lineno, "more rows than declared".into()));
        }
        if line.ends_with(char::is_whitespace) || line.starts_with(char::is_whitespace) {
            return Err(err(lineno, "stray whitespace".into()));
        }
        let mut row = Vec::new();
        for tok in line.split(' ') {
            let sym_char = tok
                .chars()
                .last()
                .ok_or_else(|| err(lineno, "empty token".into()))?;
            let sym = match F4::from_char(sym_char) {
                Some(F4::Zero) | None => {
                    return Err(err(lineno, format!("bad symbol in token {tok:?}")));
                }
                Some(s) => s,
            };
            let col: u32 = tok[..tok.len() - 1]
                .parse()
                .map_err(|_| err(lineno, format!("bad column in token {tok:?}")))?;
            if let Some(&(prev, _)) = row.last() {
                if col <= prev {
                    return Err(err(lineno, "columns must be strictly ascending".into()));
                }
            }
            row.push((col, sym));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(err(0, format!("expected {m} rows, found {}", rows.len())));
    }
    ParityCheck::new(n, rows)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix("QPC v1 n=")?;
    let (n, rest) = rest.split_once(" m=")?;
    Some((n.parse().ok()?, rest.parse().ok()?))
}

pub fn write_file(m: &ParityCheck, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_string(m))?;
    Ok(())
}

pub fn read_file(path: impl AsRef<Path>) -> Result<ParityCheck> {
    parse(&fs::read_to_string(path)?)
}
