//! Parsers for the textual argument forms: set specs, integer ranges and
//! tuple lists.

use std::fs;

use anyhow::{bail, Context, Result};

/// A set given inline (`1,2,4`) or as `@path` to a file of integers
/// separated by commas or whitespace.
pub fn set_spec(spec: &str) -> Result<Vec<u64>> {
    let text = match spec.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading set file {path}"))?
        }
        None => spec.to_string(),
    };
    let body = text.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .or_else(|| body.strip_prefix('[').and_then(|b| b.strip_suffix(']')))
        .unwrap_or(body);
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .with_context(|| format!("malformed set element `{t}`"))
        })
        .collect()
}

/// Integer lists such as `3..15`, `2..=7`, `2,3,5,7` or `3..6,9`, both range
/// ends inclusive. Values come back sorted and deduplicated.
pub fn range(spec: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u64 = lo
                .trim()
                .parse()
                .with_context(|| format!("bad range start in `{part}`"))?;
            let hi: u64 = hi
                .trim()
                .parse()
                .with_context(|| format!("bad range end in `{part}`"))?;
            if lo > hi {
                bail!("empty range `{part}`");
            }
            if hi - lo > 10_000_000 {
                bail!("range `{part}` is too long");
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .with_context(|| format!("bad integer `{part}`"))?,
            );
        }
    }
    if out.is_empty() {
        bail!("empty parameter list `{spec}`");
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Tuples of a fixed arity: `(25,5),(49,7)` or `25:5 49:7`.
pub fn tuples(spec: &str, arity: usize) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let cleaned: String = spec
        .chars()
        .map(|c| if c == '(' || c == ')' { ' ' } else { c })
        .collect();
    let numbers: Vec<&str> = cleaned
        .split(|c: char| c == ',' || c == ':' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if numbers.is_empty() || !numbers.len().is_multiple_of(arity) {
        bail!("expected groups of {arity} integers in `{spec}`");
    }
    for group in numbers.chunks(arity) {
        let tuple = group
            .iter()
            .map(|t| {
                t.parse::<u64>()
                    .with_context(|| format!("bad integer `{t}` in `{spec}`"))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(tuple);
    }
    Ok(out)
}
