//! Small labeled simple graphs stored as per-vertex neighbor bitsets.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_graph, is_isomorphic, CanonicalForm};
pub use graph6::{from_graph6, to_graph6, Graph6Error};

use std::fmt;

use thiserror::Error;

/// Largest order a [`Graph`] can hold (single-byte graph6 header).
pub const MAX_ORDER: usize = 62;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the limit of {MAX_ORDER}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
}

/// Orders an edge so that the smaller endpoint comes first.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A labeled simple undirected graph on vertices `0..n`, `n <= 62`.
///
/// Bit `w` of `adj[v]` is set iff `vw` is an edge. The adjacency is kept
/// symmetric and irreflexive by every mutator, and `m` tracks the edge count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Self {
            adj: vec![0; n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// The star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(k + 1)?;
        for leaf in 1..=k {
            g.add_edge(0, leaf)?;
        }
        Ok(g)
    }

    /// The path on `n` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    /// `k` disjoint copies of `K_2`.
    pub fn matching_graph(k: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(2 * k)?;
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Bitmask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n())
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && b < self.n() && self.adj[a] >> b & 1 == 1
    }

    /// Edges in lexicographic order, smaller endpoint first.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for a in 0..self.n() {
            for b in bits(self.adj[a] >> a >> 1) {
                out.push((a, a + 1 + b));
            }
        }
        out
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Inserts `ab`; returns whether the edge was new.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::Loop(a));
        }
        if self.has_edge(a, b) {
            return Ok(false);
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.m += 1;
        Ok(true)
    }

    /// Deletes `ab`; returns whether the edge was present.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if !self.has_edge(a, b) {
            return Ok(false);
        }
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        self.m -= 1;
        Ok(true)
    }

    /// Appends `k` isolated vertices; returns the index of the first one.
    pub fn add_vertices(&mut self, k: usize) -> Result<usize, GraphError> {
        let first = self.n();
        if first + k > MAX_ORDER {
            return Err(GraphError::TooManyVertices(first + k));
        }
        self.adj.resize(first + k, 0);
        Ok(first)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.n();
        let mut g = self.clone();
        g.add_vertices(other.n())?;
        for (a, b) in other.edges() {
            g.add_edge(a + offset, b + offset)?;
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = vec![0u64; self.n()];
        for (v, &image) in perm.iter().enumerate() {
            adj[image] = bits(self.adj[v]).fold(0, |acc, w| acc | 1 << perm[w]);
        }
        Graph { adj, m: self.m }
    }

    /// Subgraph induced by `vertices`, relabeled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            if seen >> v & 1 == 1 {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen |= 1 << v;
        }
        let mut g = Graph::empty(vertices.len())?;
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Drops isolated vertices, keeping the relative order of the others.
    /// Neither `q` nor the matching number changes.
    pub fn normalize(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| self.adj[v] != 0).collect();
        self.induced_subgraph(&keep)
            .expect("vertices come from the graph itself")
    }

    /// Vertex set of the component containing `v`, as a bitmask.
    pub fn component_mask(&self, v: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for w in bits(frontier) {
                next |= self.adj[w];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_mask(0) == self.vertex_mask()
    }

    /// Splits the graph into connected components, ordered by smallest vertex.
    pub fn components(&self) -> ComponentDecomposition {
        let mut remaining = self.vertex_mask();
        let mut parts = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let mask = self.component_mask(start);
            remaining &= !mask;
            let vertices: Vec<usize> = bits(mask).collect();
            let graph = self
                .induced_subgraph(&vertices)
                .expect("component vertices are valid");
            parts.push(Component { graph, vertices });
        }
        ComponentDecomposition { parts }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        from_graph6(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

/// One connected piece together with its vertex labels in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the parent label of component vertex `i`.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub parts: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Rebuilds the parent graph on `n` vertices.
    pub fn reassemble(&self, n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for part in &self.parts {
            for (a, b) in part.graph.edges() {
                g.add_edge(part.vertices[a], part.vertices[b])?;
            }
        }
        Ok(g)
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a mask in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
