//! Input documents: graphs, collection selectors and metric structures.

use std::{fs, path::Path};

use gammacx_core::{
    blowup::{BlowupComplex, Cell, Label, LabelSet},
    metric::{CubeFrame, SkewedStructure, TotalLabelOrder},
    partition::{compatible_collections, WhiteheadPartition},
    DefiningGraph,
};
use serde::{Deserialize, Serialize};

/// Anything wrong with the input rather than with the mathematics. Maps to
/// exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed {what}: {source}")]
    Json { what: &'static str, source: serde_json::Error },
    #[error("{0}")]
    Graph(gammacx_core::Error),
    #[error("bad collection selector `{selector}`: {reason}")]
    Collection { selector: String, reason: String },
    #[error("bad structure: {0}")]
    Structure(String),
    #[error("{0}")]
    Argument(String),
}

/// `{"vertices": ["a", "b"], "edges": [["a", "b"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphDoc {
    pub fn of(g: &DefiningGraph) -> Self {
        GraphDoc {
            vertices: g.names().to_vec(),
            edges: g.edges().into_iter().map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<DefiningGraph, InputError> {
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        DefiningGraph::new(&vertices, &edges).map_err(InputError::Graph)
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Read { path: path.display().to_string(), source })
}

pub fn parse_graph(text: &str) -> Result<DefiningGraph, InputError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|source| InputError::Json { what: "graph", source })?;
    doc.to_graph()
}

pub fn read_graph(path: &Path) -> Result<DefiningGraph, InputError> {
    parse_graph(&read(path)?)
}

/// `{"plus": ["a", "b"], "minus": ["a^-1", "b^-1"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionDoc {
    pub base: String,
    pub plus: Vec<String>,
    pub minus: Vec<String>,
}

impl PartitionDoc {
    pub fn of(g: &DefiningGraph, p: &WhiteheadPartition) -> Self {
        let side = |s: gammacx_core::set::SignedSet| {
            s.iter().map(|x| if x.inverse { format!("{}^-1", g.name(x.vertex)) } else { g.name(x.vertex).to_string() }).collect()
        };
        PartitionDoc { base: g.name(p.base).to_string(), plus: side(p.plus), minus: side(p.minus) }
    }
}

/// Which collections a command runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollectionSelector {
    All,
    Index(usize),
    /// Partitions written as `a b | a^-1 b^-1`, separated by `;`.
    Explicit(String),
}

impl std::str::FromStr for CollectionSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Ok(if t.eq_ignore_ascii_case("all") {
            CollectionSelector::All
        } else if let Ok(i) = t.parse() {
            CollectionSelector::Index(i)
        } else {
            CollectionSelector::Explicit(t.to_string())
        })
    }
}

impl std::fmt::Display for CollectionSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CollectionSelector::All => write!(f, "all"),
            CollectionSelector::Index(i) => write!(f, "{i}"),
            CollectionSelector::Explicit(s) => write!(f, "{s}"),
        }
    }
}

/// A collection and its index in the graph's collection list, if listed.
pub type Selected = (Option<usize>, Vec<WhiteheadPartition>);

/// Resolve a selector to `(index in the collection list, partitions)`.
/// Explicit partitions must be valid and pairwise compatible.
pub fn select_collections(g: &DefiningGraph, sel: &CollectionSelector) -> Result<Vec<Selected>, InputError> {
    let all = compatible_collections(g);
    let err = |reason: String| InputError::Collection { selector: sel.to_string(), reason };
    match sel {
        CollectionSelector::All => Ok(all.into_iter().enumerate().map(|(i, c)| (Some(i), c)).collect()),
        CollectionSelector::Index(i) => match all.get(*i) {
            Some(c) => Ok(vec![(Some(*i), c.clone())]),
            None => Err(err(format!("the graph has {} collections", all.len()))),
        },
        CollectionSelector::Explicit(s) => {
            let parts = s
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| WhiteheadPartition::parse(g, p).map_err(|e| err(format!("`{}`: {e}", p.trim()))))
                .collect::<Result<Vec<_>, _>>()?;
            let mut key: Vec<_> = parts.iter().map(|p| p.key()).collect();
            key.sort();
            let index = all.iter().position(|c| {
                let mut k: Vec<_> = c.iter().map(|p| p.key()).collect();
                k.sort();
                k == key
            });
            if index.is_none() {
                return Err(err(String::from("partitions are not pairwise compatible or repeat")));
            }
            Ok(vec![(index, parts)])
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LabelLength {
    pub label: String,
    pub length: f64,
}

/// One maximal cube of a structure: labels greatest first, the diagonal of
/// `D`, and the strictly upper triangular rows of `U`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CubeDoc {
    pub base: usize,
    pub labels: Vec<String>,
    pub diagonal: Vec<f64>,
    pub shear: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureDoc {
    pub seed: Option<u64>,
    /// Labels, least first.
    pub order: Vec<String>,
    pub lengths: Vec<LabelLength>,
    pub cubes: Vec<CubeDoc>,
}

impl StructureDoc {
    pub fn of(b: &BlowupComplex, s: &SkewedStructure, seed: Option<u64>) -> Self {
        StructureDoc {
            seed,
            order: s.order.ascending.iter().map(|&l| b.label_name(l)).collect(),
            lengths: s.lengths.iter().enumerate().map(|(l, &length)| LabelLength { label: b.label_name(l), length }).collect(),
            cubes: s
                .frames
                .iter()
                .map(|f| CubeDoc {
                    base: f.cube.base,
                    labels: f.labels.iter().map(|&l| b.label_name(l)).collect(),
                    diagonal: f.diagonal.clone(),
                    shear: (0..f.labels.len()).map(|i| f.shear[i][i + 1..].to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_structure(&self, b: &BlowupComplex) -> Result<SkewedStructure, InputError> {
        let label = |name: &str| -> Result<Label, InputError> {
            (0..b.label_count())
                .find(|&l| b.label_name(l) == name)
                .ok_or_else(|| InputError::Structure(format!("unknown label `{name}`")))
        };
        let ascending = self.order.iter().map(|n| label(n)).collect::<Result<Vec<_>, _>>()?;
        let mut lengths = vec![f64::NAN; b.label_count()];
        for ll in &self.lengths {
            lengths[label(&ll.label)?] = ll.length;
        }
        let mut frames = Vec::with_capacity(self.cubes.len());
        for c in &self.cubes {
            let labels = c.labels.iter().map(|n| label(n)).collect::<Result<Vec<_>, _>>()?;
            let n = labels.len();
            if c.diagonal.len() != n || c.shear.len() != n || c.shear.iter().enumerate().any(|(i, r)| r.len() != n - i - 1) {
                return Err(InputError::Structure(format!("cube {:?} has inconsistent sizes", c.labels)));
            }
            let mut shear = vec![vec![0.0; n]; n];
            for (i, row) in c.shear.iter().enumerate() {
                shear[i][i + 1..].copy_from_slice(row);
            }
            let cube = Cell { labels: labels.iter().copied().collect::<LabelSet>(), base: c.base };
            frames.push(CubeFrame { cube, labels, diagonal: c.diagonal.clone(), shear });
        }
        Ok(SkewedStructure { order: TotalLabelOrder { ascending }, lengths, frames })
    }
}

pub fn read_structure(path: &Path) -> Result<StructureDoc, InputError> {
    serde_json::from_str(&read(path)?).map_err(|source| InputError::Json { what: "structure", source })
}
