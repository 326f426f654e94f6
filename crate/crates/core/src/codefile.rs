//! Text format for binary codes.
//!
//! ```text
//! # generator form: header "n k", then k basis words of n bits
//! 4 1
//! 1 1 1 1
//! ```
//!
//! ```text
//! # explicit form: header "n *", then one codeword per line
//! 2 *
//! 0 0
//! 1 1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BinaryCode, BitWord};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_row(line_no: usize, text: &str, n: usize) -> Result<BitWord> {
    let bits: Vec<u8> = text
        .split_whitespace()
        .map(|tok| match tok {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(Error::Parse {
                line: line_no,
                msg: format!("expected 0 or 1, found `{other}`"),
            }),
        })
        .collect::<Result<_>>()?;
    if bits.len() != n {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("expected {n} bits, found {}", bits.len()),
        });
    }
    Ok(BitWord::from_bits(&bits))
}

pub fn parse_code(text: &str, cap: u64) -> Result<BinaryCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: "header must start with a positive length n".into(),
        })?;
    let second = parts.next().ok_or_else(|| Error::Parse {
        line: hline,
        msg: "header must be `n k` or `n *`".into(),
    })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }

    if second == "*" {
        let words = lines
            .map(|(no, l)| parse_row(no, l, n))
            .collect::<Result<Vec<_>>>()?;
        if words.is_empty() {
            return Err(Error::Parse {
                line: hline,
                msg: "explicit form lists no codewords".into(),
            });
        }
        return BinaryCode::from_words(n, words);
    }

    let k: usize = second.parse().map_err(|_| Error::Parse {
        line: hline,
        msg: format!("bad row count `{second}`"),
    })?;
    let rows = lines
        .map(|(no, l)| parse_row(no, l, n))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != k {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header promises {k} generator rows, found {}", rows.len()),
        });
    }
    BinaryCode::from_generator(n, rows, cap)
}

pub fn read_code(path: &Path, cap: u64) -> Result<BinaryCode> {
    let text = std::fs::read_to_string(path)?;
    parse_code(&text, cap)
}

fn push_row(out: &mut String, w: &BitWord) {
    let row: Vec<String> = w.bits().map(|b| b.to_string()).collect();
    out.push_str(&row.join(" "));
    out.push('\n');
}

/// Generator form when a generator is known, explicit form otherwise.
pub fn write_code(code: &BinaryCode) -> String {
    let mut out = String::new();
    match code.generator() {
        Some(g) if !g.is_empty() => {
            let _ = writeln!(out, "{} {}", code.n(), g.len());
            for row in g {
                push_row(&mut out, row);
            }
        }
        _ => {
            let _ = writeln!(out, "{} *", code.n());
            for w in code.words() {
                push_row(&mut out, w);
            }
        }
    }
    out
}
