//! Plain-text fixture format: a header line `n r m` followed by `m` lines of
//! `r` space-separated vertex labels. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;
use std::path::Path;

use super::Hypergraph;
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Hypergraph> {
    parse_with(text, false)
}

/// Parses a fixture, optionally keeping repeated edges.
pub fn parse_with(text: &str, allow_duplicates: bool) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let nums = parse_numbers(header)?;
    let [n, r, m] = nums[..] else {
        return Err(Error::Parse(format!("header must be `n r m`, got `{header}`")));
    };
    let mut edges = Vec::with_capacity(m);
    for line in lines.by_ref().take(m) {
        edges.push(parse_numbers(line)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    if lines.next().is_some() {
        return Err(Error::Parse(format!("more than {m} edge lines")));
    }
    if allow_duplicates {
        Hypergraph::with_duplicates(n, r, edges)
    } else {
        Hypergraph::new(n, r, edges)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: `{tok}`")))
        })
        .collect()
}

pub fn to_string(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.r(), h.m());
    for (_, e) in h.edges() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn read(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: impl AsRef<Path>, h: &Hypergraph) -> Result<()> {
    std::fs::write(path, to_string(h))?;
    Ok(())
}
