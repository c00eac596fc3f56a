//! Finite simple graphs, vertex subsets and the complement-component
//! decomposition of a subset.
//!
//! Vertices are identified by their index in the listing order of the input,
//! and that listing order is the vertex order used everywhere else (letter
//! order, block order, report keys).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of vertices a [`SimpleGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("empty vertex label")]
    EmptyLabel,
    #[error("loop edge at vertex `{0}`")]
    Loop(String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("vertex set is empty")]
    EmptySubset,
}

/// A set of vertex indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// The first `n` vertices.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least member in vertex order.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, the empty set first, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(VertexSet(cur))
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The on-disk graph document: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

/// A finite simple graph. Adjacency is kept as one bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    labels: Vec<String>,
    adjacency: Vec<u64>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels())
            .finish()
    }
}

impl SimpleGraph {
    /// Builds a graph from labels and index pairs, checking every invariant.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_VERTICES {
            return Err(GraphError::TooLarge(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(GraphError::EmptyLabel);
            }
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let mut adjacency = vec![0u64; labels.len()];
        for (u, v) in edges {
            if u >= labels.len() {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= labels.len() {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::Loop(labels[u].clone()));
            }
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
        }
        Ok(SimpleGraph { labels, adjacency })
    }

    /// Graph with vertices labelled by the given strings and edges given by label pairs.
    pub fn from_labels(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        Self::from_document(GraphDocument {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        })
    }

    pub fn from_document(doc: GraphDocument) -> Result<Self, GraphError> {
        // Label checks first, so that a duplicate label is reported as such
        // rather than as an ambiguous endpoint.
        let skeleton = SimpleGraph::new(doc.vertices.iter().cloned(), std::iter::empty())?;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (a, b) in &doc.edges {
            let u = skeleton.index_of(a).ok_or_else(|| GraphError::UnknownEndpoint(a.clone()))?;
            let v = skeleton.index_of(b).ok_or_else(|| GraphError::UnknownEndpoint(b.clone()))?;
            edges.push((u, v));
        }
        SimpleGraph::new(doc.vertices, edges)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument { vertices: self.labels.clone(), edges: self.edge_labels() }
    }

    /// Edgeless graph on `n` vertices named `a`, `b`, ... (or `v0`, `v1`, ... past 26).
    pub fn edgeless(n: usize) -> Self {
        SimpleGraph::new(default_labels(n), std::iter::empty()).expect("valid")
    }

    /// Complete graph on `n` vertices with default labels.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::new(default_labels(n), edges).expect("valid")
    }

    /// Path `v0 - v1 - ... - v(n-1)` with default labels.
    pub fn path(n: usize) -> Self {
        SimpleGraph::new(default_labels(n), (1..n).map(|v| (v - 1, v))).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.labels.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Vertex set from labels; unknown labels are an error.
    pub fn set_of(&self, labels: &[&str]) -> Result<VertexSet, GraphError> {
        labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| GraphError::UnknownEndpoint(l.to_string())))
            .collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.is_adjacent(u, v)).map(move |v| (u, v)))
            .collect()
    }

    fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.adjacency.get(v).map(|&m| VertexSet(m)).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn complement(&self) -> SimpleGraph {
        let all = self.vertices().0;
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(v, &m)| !m & all & !(1u64 << v))
            .collect();
        SimpleGraph { labels: self.labels.clone(), adjacency }
    }

    /// The subgraph induced by `u`; vertices keep their relative order.
    pub fn induced_subgraph(&self, u: VertexSet) -> Result<SimpleGraph, GraphError> {
        self.check_subset(u)?;
        let members: Vec<usize> = u.iter().collect();
        let labels = members.iter().map(|&v| self.labels[v].clone()).collect::<Vec<_>>();
        let mut edges = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        SimpleGraph::new(labels, edges)
    }

    /// Connected components, each listed once, ordered by least member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Connected components of the subgraph induced by `within`.
    fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut components = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in VertexSet(self.adjacency[v]).intersection(within).iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            seen = seen.union(comp);
            components.push(comp);
        }
        components.sort_by_key(|c| VertexSet::min(*c));
        components
    }

    /// Splits `u` into the vertex sets of the connected components of the
    /// complement graph restricted to `u`, ordered by least vertex.
    pub fn decompose(&self, u: VertexSet) -> Result<SubsetDecomposition, GraphError> {
        self.check_subset(u)?;
        if u.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        Ok(SubsetDecomposition { blocks: self.complement().components_within(u) })
    }

    pub fn is_indecomposable(&self, u: VertexSet) -> bool {
        !u.is_empty()
            && u.is_subset(self.vertices())
            && self.complement().components_within(u).len() == 1
    }

    fn check_subset(&self, u: VertexSet) -> Result<(), GraphError> {
        match u.difference(self.vertices()).min() {
            Some(v) => Err(GraphError::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// Renders a vertex set as `{a,c}` using vertex labels.
    pub fn format_set(&self, u: VertexSet) -> String {
        let names: Vec<&str> = u.iter().map(|v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Isomorphism-invariant key of the subgraph induced by `u`: the least
    /// adjacency encoding over all vertex orderings. Exhaustive, so only for
    /// small `u`.
    pub fn canonical_key(&self, u: VertexSet) -> Option<(usize, u64)> {
        let members: Vec<usize> = u.iter().collect();
        let k = members.len();
        if k > 8 {
            return None;
        }
        let mut perm: Vec<usize> = (0..k).collect();
        let mut best = u64::MAX;
        loop {
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if self.is_adjacent(members[perm[i]], members[perm[j]]) {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Some((k, best))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

/// Parses the JSON graph document.
pub fn parse_graph(text: &str) -> Result<SimpleGraph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
    SimpleGraph::from_document(doc)
}

/// Ordered complement-component blocks of a vertex subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetDecomposition {
    pub blocks: Vec<VertexSet>,
}

impl SubsetDecomposition {
    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }
}
