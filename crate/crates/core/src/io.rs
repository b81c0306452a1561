//! Text formats for posets, matchings and simplicial complexes.
//!
//! Poset files hold `#` comments, blank lines, an optional
//! `elements: a b c` header and one `x < y` cover per line. When the header
//! is present it lists every element; otherwise elements are collected from
//! the covers. Matching files hold `x -- y` lines, complex files one facet
//! per line.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::poset::{validate_identifier, Poset};
use crate::simplicial::SimplicialComplex;

/// Lines with `#` comments and surrounding whitespace removed, skipping
/// blanks, with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Syntax { .. } => e,
        other => Error::AtLine {
            line,
            source: Box::new(other),
        },
    }
}

/// Splits `x <sep> y` with single spaces around the separator token.
fn split_pair<'a>(line: &'a str, sep: &str, n: usize) -> Result<(&'a str, &'a str)> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != 3 || parts[1] != sep {
        return Err(syntax(n, format!("expected `x {sep} y`, found `{line}`")));
    }
    for id in [parts[0], parts[2]] {
        validate_identifier(id).map_err(|e| at_line(n, e))?;
    }
    Ok((parts[0], parts[2]))
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut cover_line: HashMap<(String, String), usize> = HashMap::new();
    for (n, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("elements:") {
            if header.is_some() {
                return Err(syntax(n, "repeated `elements:` header"));
            }
            if !covers.is_empty() {
                return Err(syntax(n, "`elements:` header must precede the covers"));
            }
            let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            for id in &ids {
                validate_identifier(id).map_err(|e| at_line(n, e))?;
            }
            header = Some((n, ids));
            continue;
        }
        let (a, b) = split_pair(line, "<", n)?;
        let key = (a.to_string(), b.to_string());
        if let Some(first) = cover_line.get(&key) {
            return Err(syntax(n, format!("duplicate cover `{a} < {b}` (first on line {first})")));
        }
        cover_line.insert(key.clone(), n);
        covers.push(key);
    }
    let elements: Vec<String> = match &header {
        Some((hn, ids)) => {
            let known: BTreeSet<&String> = ids.iter().collect();
            for (a, b) in &covers {
                for id in [a, b] {
                    if !known.contains(id) {
                        return Err(at_line(cover_line[&(a.clone(), b.clone())], Error::UnknownElement(id.clone())));
                    }
                }
            }
            let mut seen = BTreeSet::new();
            for id in ids {
                if !seen.insert(id) {
                    return Err(at_line(*hn, Error::DuplicateElement(id.clone())));
                }
            }
            ids.clone()
        }
        None => {
            let set: BTreeSet<&String> = covers.iter().flat_map(|(a, b)| [a, b]).collect();
            set.into_iter().cloned().collect()
        }
    };
    Poset::new(elements, covers.clone()).map_err(|e| {
        let line = match &e {
            Error::RedundantCover(a, b) | Error::DuplicateCover(a, b) => cover_line.get(&(a.clone(), b.clone())).copied(),
            Error::CoverCycle(x) => covers.iter().find(|(a, b)| a == x && b == x).map(|k| cover_line[k]),
            _ => None,
        };
        match line {
            Some(n) => at_line(n, e),
            None => e,
        }
    })
}

/// Canonical text: the full `elements:` header, then covers sorted by lower
/// and then upper element.
pub fn serialize_poset(poset: &Poset) -> String {
    let mut out = String::from("elements:");
    for name in poset.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    let mut covers = poset.cover_names();
    covers.sort();
    for (a, b) in covers {
        let _ = writeln!(out, "{a} < {b}");
    }
    out
}

/// `{"elements": [...], "covers": [[x, y], ...]}`.
pub fn poset_to_json(poset: &Poset) -> Value {
    json!({
        "elements": poset.names(),
        "covers": poset.cover_names().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn parse_matching(text: &str) -> Result<Matching> {
    let mut pairs = Vec::new();
    let mut seen = HashMap::new();
    for (n, line) in content_lines(text) {
        let (a, b) = split_pair(line, "--", n)?;
        if let Some(first) = seen.insert((a.to_string(), b.to_string()), n) {
            return Err(syntax(n, format!("duplicate pair `{a} -- {b}` (first on line {first})")));
        }
        pairs.push((a.to_string(), b.to_string()));
    }
    Ok(Matching::new(pairs))
}

pub fn serialize_matching(matching: &Matching) -> String {
    let mut out = String::new();
    for (a, b) in matching.pairs() {
        let _ = writeln!(out, "{a} -- {b}");
    }
    out
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (n, line) in content_lines(text) {
        let facet: Vec<&str> = line.split_whitespace().collect();
        for v in &facet {
            validate_identifier(v).map_err(|e| at_line(n, e))?;
        }
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets)
}

/// One facet per line, vertices and facets in identifier order.
pub fn serialize_complex(complex: &SimplicialComplex) -> String {
    let mut facets = complex.facet_names();
    facets.sort();
    let mut out = String::new();
    for f in facets {
        out.push_str(&f.join(" "));
        out.push('\n');
    }
    out
}
