//! Versioned JSON documents for hypergraphs, permutations, covers, solver
//! instances and set families. All documents reject unknown fields.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cover::{CoverFamily, HostGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Permutation};
use crate::set::VertexSet;

pub const VERSION: u32 = 1;

fn default_version() -> u32 {
    VERSION
}

fn check_version(v: u32) -> Result<()> {
    if v == VERSION {
        Ok(())
    } else {
        Err(Error::Domain(format!("unsupported document version {v}")))
    }
}

/// Parses a document, reporting failures with a byte offset.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn names(labels: &[String], set: &VertexSet) -> Vec<String> {
    set.iter().map(|x| labels[x].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl HypergraphDoc {
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        check_version(self.version)?;
        let refs: Vec<&[String]> = self.edges.iter().map(Vec::as_slice).collect();
        Hypergraph::from_labels(&self.vertices, &refs)
    }
}

impl From<&Hypergraph> for HypergraphDoc {
    fn from(h: &Hypergraph) -> Self {
        HypergraphDoc {
            version: VERSION,
            vertices: h.labels().to_vec(),
            edges: h.edges().iter().map(|e| names(h.labels(), e)).collect(),
        }
    }
}

/// A permutation as a label-to-label map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub map: BTreeMap<String, String>,
}

impl PermutationDoc {
    pub fn new(labels: &[String], p: &Permutation) -> Self {
        let map = p
            .image()
            .iter()
            .enumerate()
            .map(|(x, &y)| (labels[x].clone(), labels[y].clone()))
            .collect();
        PermutationDoc {
            version: VERSION,
            map,
        }
    }

    /// Resolves the map against the vertex labels of a hypergraph.
    pub fn to_permutation(&self, h: &Hypergraph) -> Result<Permutation> {
        check_version(self.version)?;
        if self.map.len() != h.vertex_count() {
            return Err(Error::DomainMismatch {
                permutation: self.map.len(),
                vertices: h.vertex_count(),
            });
        }
        let mut image = vec![0; h.vertex_count()];
        for (from, to) in &self.map {
            image[h.index_of(from)?] = h.index_of(to)?;
        }
        Permutation::new(image)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HostDoc {
    Complete {
        vertices: Vec<String>,
    },
    Bipartite {
        part1: Vec<String>,
        part2: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub host: HostDoc,
    pub members: Vec<Vec<String>>,
}

impl CoverDoc {
    pub fn to_cover(&self) -> Result<CoverFamily> {
        check_version(self.version)?;
        let refs: Vec<&[String]> = self.members.iter().map(Vec::as_slice).collect();
        match &self.host {
            HostDoc::Complete { vertices } => CoverFamily::complete(vertices, &refs),
            HostDoc::Bipartite { part1, part2 } => CoverFamily::bipartite(part1, part2, &refs),
        }
    }
}

impl From<&CoverFamily> for CoverDoc {
    fn from(c: &CoverFamily) -> Self {
        let labels = c.labels();
        let host = match c.host() {
            HostGraph::Complete { .. } => HostDoc::Complete {
                vertices: labels.to_vec(),
            },
            HostGraph::CompleteBipartite { left, .. } => HostDoc::Bipartite {
                part1: labels[..left].to_vec(),
                part2: labels[left..].to_vec(),
            },
        };
        CoverDoc {
            version: VERSION,
            host,
            members: c.members().iter().map(|m| names(labels, m)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDoc {
    pub set: Vec<String>,
    pub cap: usize,
}

/// A general covering instance: pick a maximum subfamily of `candidates`
/// that minimally covers `ground` while meeting each restriction set at
/// most `cap` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub ground: Vec<String>,
    pub candidates: Vec<Vec<String>>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionDoc>,
}

/// A set family together with a family of its minimal covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamiliesDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub family: Vec<Vec<String>>,
    pub covers: Vec<Vec<String>>,
}

impl FamiliesDoc {
    pub fn check_version(&self) -> Result<()> {
        check_version(self.version)
    }
}
