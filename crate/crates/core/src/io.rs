//! Plain-text arrangement files.
//!
//! ```text
//! # comment
//! field: rational
//! 0 1 0
//! 1/2 1 -3
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Line};
use crate::scalar::{FieldSpec, Scalar};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Byte offsets of whitespace-separated tokens.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

pub fn parse_arrangement(text: &str, name: &str) -> Result<Arrangement> {
    let mut field = None;
    let mut lines = Vec::new();
    let mut origin = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(f) = field else {
            let col = raw.len() - raw.trim_start().len() + 1;
            let value = trimmed
                .strip_prefix("field:")
                .ok_or_else(|| parse_error(lineno, col, "expected `field: rational` or `field: eisenstein`"))?;
            field = Some(value.trim().parse::<FieldSpec>().map_err(|e| parse_error(lineno, col, e.to_string()))?);
            continue;
        };
        let toks = tokens(raw);
        if toks.len() != 3 {
            let col = toks.get(3).map_or(raw.len() + 1, |t| t.0 + 1);
            return Err(parse_error(lineno, col, format!("expected 3 coefficients, found {}", toks.len())));
        }
        let mut t = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        for (slot, (off, tok)) in t.iter_mut().zip(&toks) {
            *slot = Scalar::parse(tok, f).map_err(|e| parse_error(lineno, off + 1, e.to_string()))?;
        }
        let line = Line::new(t).map_err(|e| parse_error(lineno, toks[0].0 + 1, e.to_string()))?;
        lines.push(line);
        origin.push(lineno);
    }
    let Some(field) = field else {
        return Err(parse_error(1, 1, "missing `field:` header"));
    };
    if lines.is_empty() {
        return Err(parse_error(text.lines().count().max(1), 1, "no lines given"));
    }
    Arrangement::new(name, field, lines).map_err(|e| match e {
        Error::DuplicateLine { first, second } => parse_error(
            origin[second],
            1,
            format!("line {} duplicates line {} (file line {})", second + 1, first + 1, origin[first]),
        ),
        other => other,
    })
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("arrangement");
    parse_arrangement(&text, name)
}

pub fn format_arrangement(a: &Arrangement) -> String {
    let mut out = format!("# {}\nfield: {}\n", a.name(), a.field());
    for l in a.lines() {
        let c = l.coeffs();
        out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
    }
    out
}

pub fn save_arrangement(a: &Arrangement, path: &Path) -> Result<()> {
    std::fs::write(path, format_arrangement(a))?;
    Ok(())
}
