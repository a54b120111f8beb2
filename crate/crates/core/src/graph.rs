//! Immutable undirected simple graph over dense 0-based vertex indices.
//!
//! Adjacency is stored as packed 64-bit rows so neighborhood intersections,
//! degree counts and clique checks are word-parallel. Graphs are frozen after
//! construction; operations that "modify" a graph return a new one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph with a bit-matrix adjacency relation.
///
/// Invariants maintained by every constructor:
/// - symmetry: `has_edge(u, v) == has_edge(v, u)`
/// - no self-loops: `has_edge(v, v) == false`
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0u64; n * words],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Build from an explicit edge list. Duplicate edges are allowed,
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        let total: u64 = self.rows.iter().map(|w| w.count_ones() as u64).sum();
        (total / 2) as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed neighbor bitmask of `v`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterator over neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    // Constructors use this before the graph is handed out; the public API
    // never mutates an existing graph.
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max_vertex() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    /// True iff every unordered pair in `s` is an edge. The empty set and
    /// singletons are cliques.
    pub fn is_clique(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        let m = s.as_slice();
        for (i, &u) in m.iter().enumerate() {
            for &v in &m[i + 1..] {
                if !self.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Vertices outside `s` adjacent to every member of `s`. For the empty
    /// set this is all of `V` (the condition is vacuous).
    pub fn common_neighbors(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(VertexSet::from_mask(
            &self.common_neighbor_mask(s.as_slice()),
        ))
    }

    /// Packed mask of vertices adjacent to all of `members`, excluding
    /// `members` themselves. Empty `members` yields the full vertex set.
    pub(crate) fn common_neighbor_mask(&self, members: &[usize]) -> Vec<u64> {
        let mut mask = vec![!0u64; self.words];
        if self.words > 0 && !self.n.is_multiple_of(64) {
            mask[self.words - 1] = (1u64 << (self.n % 64)) - 1;
        }
        for &u in members {
            for (m, w) in mask.iter_mut().zip(self.row(u)) {
                *m &= w;
            }
        }
        // members are cleared automatically for nonempty s (no self-loops),
        // but the empty-set case starts from the full mask.
        mask
    }

    /// Number of members of `within` adjacent to `v`.
    pub fn degree_in(&self, v: usize, within: &VertexSet) -> Result<usize> {
        self.check_vertex(v)?;
        self.check_set(within)?;
        let mask = within.to_mask(self.words);
        Ok(self.degree_in_mask(v, &mask))
    }

    #[inline]
    pub(crate) fn degree_in_mask(&self, v: usize, mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(mask)
            .map(|(r, m)| (r & m).count_ones() as usize)
            .sum()
    }

    /// Subgraph induced by `s`, plus the mapping from new indices back to
    /// the original ones (`mapping[new] == old`).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let mapping: Vec<usize> = s.iter().collect();
        let mut g = Graph::edgeless(mapping.len());
        for (i, &u) in mapping.iter().enumerate() {
            for (j, &v) in mapping.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok((g, mapping))
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in iter_bits(self.row(u)) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet {
            members: Vec::new(),
        }
    }

    /// Sorts and deduplicates the input.
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// Caller promises `members` is strictly ascending.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.members.last().copied()
    }

    /// Set union, preserving order.
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.members[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.members[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.members[i..]);
        out.extend_from_slice(&other.members[j..]);
        VertexSet { members: out }
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    pub(crate) fn to_mask(&self, words: usize) -> Vec<u64> {
        let mut mask = vec![0u64; words];
        for &v in &self.members {
            mask[v / 64] |= 1u64 << (v % 64);
        }
        mask
    }

    pub(crate) fn from_mask(mask: &[u64]) -> Self {
        VertexSet {
            members: iter_bits(mask).collect(),
        }
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Ascending indices of set bits in a packed mask.
pub(crate) fn iter_bits(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

pub(crate) fn popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}
