//! Bundled fixture posets and matchings with their expected behaviour.
//!
//! Every fixture is validated when loaded: its classification flags,
//! critical set and homology must match `fixtures/expectations.toml`. A
//! failure there means the data file is wrong.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::poset_homology;
use crate::io::{parse_matching, parse_poset};
use crate::matching::{classify_poset, morse_check, Matching};
use crate::poset::Poset;

const EXPECTATIONS: &str = include_str!("../fixtures/expectations.toml");

const FILES: &[(&str, &str)] = &[
    ("fig1x.poset", include_str!("../fixtures/fig1x.poset")),
    ("fig2.match", include_str!("../fixtures/fig2.match")),
    ("fig3x.poset", include_str!("../fixtures/fig3x.poset")),
    ("fig3.match", include_str!("../fixtures/fig3.match")),
    ("fig4x.poset", include_str!("../fixtures/fig4x.poset")),
    ("fig4.match", include_str!("../fixtures/fig4.match")),
    ("sq2.poset", include_str!("../fixtures/sq2.poset")),
    ("sq2.match", include_str!("../fixtures/sq2.match")),
];

/// Fixture names in load order.
pub const NAMES: &[&str] = &["fig1x", "fig3x", "fig4x", "sq2"];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct Expectation {
    pub poset: String,
    pub matching: Option<String>,
    pub graded: bool,
    pub homologically_h_regular: bool,
    pub cellular: bool,
    pub critical: Vec<String>,
    /// Heights of the critical elements, ascending.
    pub critical_heights: Vec<usize>,
    /// Nonzero reduced Betti numbers keyed by degree.
    pub reduced_betti: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub poset: Poset,
    pub matching: Option<Matching>,
    pub expected: Expectation,
}

/// Names of the bundled data files.
pub fn file_names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

/// Raw text of a bundled data file.
pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn expectations() -> Result<BTreeMap<String, Expectation>> {
    toml::from_str(EXPECTATIONS).map_err(|e| Error::Fixture {
        name: "expectations.toml".into(),
        message: e.to_string(),
    })
}

fn fixture_error(name: &str, message: impl Into<String>) -> Error {
    Error::Fixture {
        name: name.to_string(),
        message: message.into(),
    }
}

/// One expectation and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Fixture {
    /// Compares the fixture against its expectations.
    pub fn check(&self) -> FixtureReport {
        let mut checks = Vec::new();
        let mut push = |what: &str, expected: String, actual: String| {
            checks.push(Check {
                what: what.to_string(),
                passed: expected == actual,
                expected,
                actual,
            });
        };
        let class = classify_poset(&self.poset);
        let e = &self.expected;
        push("graded", e.graded.to_string(), class.graded.to_string());
        push(
            "homologically_h_regular",
            e.homologically_h_regular.to_string(),
            class.homologically_h_regular.to_string(),
        );
        push("cellular", e.cellular.to_string(), class.cellular.to_string());
        let h = poset_homology(&self.poset, true);
        let betti: BTreeMap<String, usize> = h
            .groups
            .iter()
            .filter(|(_, g)| g.betti > 0)
            .map(|(p, g)| (p.to_string(), g.betti))
            .collect();
        push("reduced_betti", format!("{:?}", e.reduced_betti), format!("{betti:?}"));
        push("torsion_free", "true".into(), (!h.has_torsion()).to_string());
        if let Some(m) = &self.matching {
            let report = morse_check(&self.poset, m);
            push("is_matching", "true".into(), report.is_matching.to_string());
            push("is_acyclic", "true".into(), report.is_acyclic.to_string());
            push(
                "admissible",
                "[]".into(),
                format!("{:?}", report.inadmissible_edges),
            );
            push("critical", format!("{:?}", e.critical), format!("{:?}", report.critical));
            let mut heights: Vec<usize> = report.critical_heights.values().copied().collect();
            heights.sort_unstable();
            push("critical_heights", format!("{:?}", e.critical_heights), format!("{heights:?}"));
        }
        let passed = checks.iter().all(|c| c.passed);
        FixtureReport {
            name: self.name.clone(),
            checks,
            passed,
        }
    }
}

/// Parses a fixture without validating it.
pub fn load_unchecked(name: &str) -> Result<Fixture> {
    let mut all = expectations()?;
    let expected = all
        .remove(name)
        .ok_or_else(|| fixture_error(name, "no such fixture"))?;
    let text = |f: &str| file(f).ok_or_else(|| fixture_error(name, format!("missing data file {f}")));
    let poset = parse_poset(text(&expected.poset)?).map_err(|e| fixture_error(name, e.to_string()))?;
    let matching = match &expected.matching {
        Some(f) => Some(parse_matching(text(f)?).map_err(|e| fixture_error(name, e.to_string()))?),
        None => None,
    };
    Ok(Fixture {
        name: name.to_string(),
        poset,
        matching,
        expected,
    })
}

/// Loads and validates a fixture.
pub fn load(name: &str) -> Result<Fixture> {
    let f = load_unchecked(name)?;
    let report = f.check();
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(fixture_error(
            name,
            format!("{}: expected {}, found {}", c.what, c.expected, c.actual),
        ));
    }
    Ok(f)
}

/// All fixtures, validated.
pub fn all() -> Result<Vec<Fixture>> {
    NAMES.iter().map(|n| load(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_validates() {
        for name in NAMES {
            let f = load_unchecked(name).unwrap();
            let r = f.check();
            assert!(r.passed, "{name}: {:#?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }

    #[test]
    fn fixture_sizes() {
        let sizes: Vec<(usize, usize)> = NAMES
            .iter()
            .map(|n| {
                let f = load(n).unwrap();
                (f.poset.len(), f.poset.cover_count())
            })
            .collect();
        assert_eq!(sizes, [(10, 16), (15, 28), (7, 9), (8, 12)]);
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(load("nope"), Err(Error::Fixture { .. })));
    }
}
