//! JSON documents and their plain-text rendering.

use std::fmt::Write as _;

use dcp_core::{HomologyGroup, Subspace};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Group {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    fn new(degree: usize, g: &HomologyGroup) -> Group {
        Group {
            degree,
            rank: g.rank,
            torsion: g.torsion.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedRow {
    pub subspace: String,
    /// `F₂`-dimension per degree.
    pub dims: Vec<usize>,
    /// Nonzero groups only; empty for pure counts.
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Total {
    Groups(Vec<Group>),
    Counts(Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub arrangement_key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub graded: Vec<GradedRow>,
    pub total: Total,
}

pub fn group_row(subspace: &Subspace, groups: &[HomologyGroup]) -> GradedRow {
    GradedRow {
        subspace: subspace.key().to_string(),
        dims: groups.iter().map(HomologyGroup::dim_mod2).collect(),
        groups: groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(k, g)| Group::new(k, g))
            .collect(),
    }
}

pub fn count_row(subspace: &Subspace, dims: &[usize]) -> GradedRow {
    GradedRow {
        subspace: subspace.key().to_string(),
        dims: dims.to_vec(),
        groups: Vec::new(),
    }
}

pub fn group_total(groups: &[HomologyGroup]) -> Total {
    Total::Groups(
        groups
            .iter()
            .enumerate()
            .map(|(k, g)| Group::new(k, g))
            .collect(),
    )
}

fn show(g: &Group) -> String {
    HomologyGroup::from_cyclic(g.rank, &g.torsion).to_string()
}

impl Table {
    pub fn to_text(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{title} for arrangement {}",
            &self.arrangement_key[..16]
        );
        if let Some(m) = self.m {
            let _ = writeln!(out, "m = {m}");
        }
        for row in &self.graded {
            let body = if row.groups.is_empty() {
                if row.dims.iter().all(|&d| d == 0) {
                    continue;
                }
                format!("{:?}", row.dims)
            } else {
                row.groups
                    .iter()
                    .map(|g| format!("H{} = {}", g.degree, show(g)))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = writeln!(out, "  [{}]  {body}", row.subspace);
        }
        let total = match &self.total {
            Total::Groups(gs) => gs.iter().map(show).collect::<Vec<_>>().join(", "),
            Total::Counts(cs) => cs
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        };
        let _ = writeln!(out, "total: ({total})");
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementRow {
    pub subspace: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementList {
    pub arrangement_key: String,
    pub elements: Vec<ElementRow>,
}

impl ElementList {
    pub fn to_text(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{title} for arrangement {}: {} elements",
            &self.arrangement_key[..16],
            self.elements.len()
        );
        for e in &self.elements {
            let _ = write!(out, "  dim {}  [{}]", e.dim, e.subspace);
            if let Some(c) = &e.components {
                if c.len() > 1 {
                    let _ = write!(
                        out,
                        " = {}",
                        c.iter()
                            .map(|k| format!("[{k}]"))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    );
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub arrangement_key: String,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify arrangement {}", &self.arrangement_key[..16]);
        for s in &self.suites {
            let status = if s.passed { "ok" } else { "FAILED" };
            let _ = writeln!(
                out,
                "  {:<10} {status:<6} {} checks  {}",
                s.name, s.checks, s.detail
            );
        }
        out
    }
}
