//! Canonical JSON reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use pfh_core::f2homology::betti;
use pfh_core::{ChainComplexF2, Check};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub id: usize,
    pub text: String,
    pub grade: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub grade: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        CheckEntry { name: c.name.clone(), pass: c.pass, details: c.details.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub problem: String,
    pub generators: Vec<GeneratorEntry>,
    /// `[from, to]` generator ids.
    pub differential: Vec<[usize; 2]>,
    pub betti: Vec<BettiEntry>,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(problem: impl Into<String>) -> Self {
        Report {
            tool: "pfh".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            problem: problem.into(),
            generators: Vec::new(),
            differential: Vec::new(),
            betti: Vec::new(),
            checks: Vec::new(),
        }
    }

    /// Generators ordered by grade then text, ids renumbered to match;
    /// nonzero Betti numbers only.
    pub fn with_complex(mut self, c: &ChainComplexF2) -> Result<Self> {
        let mut order: Vec<usize> = (0..c.len()).collect();
        order.sort_by(|&a, &b| (c.grades()[a], &c.labels()[a]).cmp(&(c.grades()[b], &c.labels()[b])));
        let mut id = vec![0; c.len()];
        for (new, &old) in order.iter().enumerate() {
            id[old] = new;
        }
        self.generators = order
            .iter()
            .enumerate()
            .map(|(new, &old)| GeneratorEntry { id: new, text: c.labels()[old].clone(), grade: c.grades()[old] })
            .collect();
        let mut edges: Vec<[usize; 2]> = c.edges().into_iter().map(|(s, t)| [id[s], id[t]]).collect();
        edges.sort_unstable();
        self.differential = edges;
        self.betti = betti(c)?
            .into_iter()
            .filter(|&(_, d)| d > 0)
            .map(|(grade, dim)| BettiEntry { grade, dim })
            .collect();
        Ok(self)
    }

    pub fn with_checks<'a>(mut self, checks: impl IntoIterator<Item = &'a Check>) -> Self {
        self.checks.extend(checks.into_iter().map(CheckEntry::from));
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn betti_map(&self) -> BTreeMap<i64, usize> {
        self.betti.iter().map(|b| (b.grade, b.dim)).collect()
    }

    /// Pretty JSON with keys sorted at every level, newline-terminated.
    pub fn to_canonical_json(&self) -> Result<String> {
        // serde_json's default map is ordered by key.
        let value = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_canonical_json()?).with_context(|| format!("writing report to {}", path.display()))
    }
}
