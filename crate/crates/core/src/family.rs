//! Deduplicated collections of ordered graphs on a common vertex set.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{sorted_unique, OrderedGraph};

/// A set of ordered graphs on `[n]`, kept in ascending bitmask order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FamilyFile", into = "FamilyFile")]
pub struct GraphFamily {
    n: usize,
    members: Vec<OrderedGraph>,
}

/// On-disk JSON form: `{"n": int, "graphs": [literal, ...]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    pub n: usize,
    pub graphs: Vec<OrderedGraph>,
}

impl TryFrom<FamilyFile> for GraphFamily {
    type Error = Error;

    fn try_from(file: FamilyFile) -> Result<Self> {
        GraphFamily::new(file.n, file.graphs)
    }
}

impl From<GraphFamily> for FamilyFile {
    fn from(family: GraphFamily) -> Self {
        FamilyFile {
            n: family.n,
            graphs: family.members,
        }
    }
}

impl GraphFamily {
    /// Collects graphs into a family, dropping duplicates.
    pub fn new<I>(n: usize, graphs: I) -> Result<Self>
    where
        I: IntoIterator<Item = OrderedGraph>,
    {
        let members: Vec<_> = graphs.into_iter().collect();
        if let Some(bad) = members.iter().find(|g| g.n() != n) {
            return Err(invalid(format!(
                "graph {bad} does not have {n} vertices"
            )));
        }
        Ok(GraphFamily {
            n,
            members: sorted_unique(members),
        })
    }

    pub fn empty(n: usize) -> Self {
        GraphFamily {
            n,
            members: Vec::new(),
        }
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<OrderedGraph>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|g| g.n() == n));
        GraphFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[OrderedGraph] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OrderedGraph> {
        self.members.iter()
    }

    pub fn contains(&self, g: &OrderedGraph) -> bool {
        self.members.binary_search(g).is_ok()
    }

    pub fn is_subset(&self, other: &GraphFamily) -> bool {
        self.n == other.n && self.members.iter().all(|g| other.contains(g))
    }

    pub fn union(&self, other: &GraphFamily) -> Result<GraphFamily> {
        if self.n != other.n {
            return Err(invalid(format!(
                "cannot unite families on [{}] and [{}]",
                self.n, other.n
            )));
        }
        let mut all = self.members.clone();
        all.extend_from_slice(&other.members);
        Ok(GraphFamily::from_sorted_unchecked(self.n, sorted_unique(all)))
    }

    /// `∂𝒢`, the union of the members' shadows on `[n-1]`.
    pub fn shadow(&self) -> Result<GraphFamily> {
        if self.n == 0 {
            return Err(invalid("families on [0] have no shadow"));
        }
        let all = self
            .members
            .iter()
            .flat_map(|g| g.deletions().map(|(_, h)| h))
            .collect();
        Ok(GraphFamily::from_sorted_unchecked(self.n - 1, sorted_unique(all)))
    }

    /// Applies `f` to every member and deduplicates the result.
    pub fn map<F>(&self, f: F) -> GraphFamily
    where
        F: Fn(&OrderedGraph) -> OrderedGraph,
    {
        GraphFamily::from_sorted_unchecked(
            self.n,
            sorted_unique(self.members.iter().map(f).collect()),
        )
    }

    pub fn complement_image(&self) -> GraphFamily {
        self.map(OrderedGraph::complement)
    }

    pub fn reverse_image(&self) -> GraphFamily {
        self.map(OrderedGraph::reverse)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization is infallible")
    }

    /// One literal per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.members {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses either the JSON form or the line-oriented text form, where
    /// blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<GraphFamily> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()));
        }
        let mut graphs = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                graphs.push(line.parse::<OrderedGraph>()?);
            }
        }
        let n = graphs
            .first()
            .map(OrderedGraph::n)
            .ok_or_else(|| Error::Parse("text family lists no graphs".into()))?;
        GraphFamily::new(n, graphs)
    }
}

impl<'a> IntoIterator for &'a GraphFamily {
    type Item = &'a OrderedGraph;
    type IntoIter = std::slice::Iter<'a, OrderedGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
