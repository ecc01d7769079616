//! Undirected simple graphs with dense integer vertex ids, plus the
//! elementary quantities every other module builds on: labellings and their
//! bandwidth, multi-source BFS, induced subgraphs, and degree/diameter lower
//! bounds.

use std::collections::VecDeque;

use num_traits::Zero;
use thiserror::Error;

use crate::Rational;

pub mod generate;

pub use generate::{generate, Family, GenerateError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("operation requires a nonempty vertex set")]
    EmptySubset,
    #[error("labelling covers {got} vertices but the graph has {expected}")]
    LabellingLength { got: usize, expected: usize },
    #[error("labelling positions are not a bijection onto 0..{0}")]
    NotBijective(usize),
}

/// An immutable undirected simple graph. Vertices are `0..n`; adjacency
/// lists are kept sorted ascending so that all downstream output is
/// canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting out-of-range endpoints,
    /// self-loops, and parallel edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Builds a graph with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected components, each as a sorted vertex set, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::from_iter_unchecked(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Exact diameter by all-pairs BFS; `None` when the graph is
    /// disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.n();
        if n == 0 {
            return None;
        }
        let mut diam = 0;
        for v in 0..n {
            let dist = self.multi_source_distances(&VertexSet::singleton(v));
            for d in &dist {
                match d {
                    Some(d) => diam = diam.max(*d),
                    None => return None,
                }
            }
        }
        Some(diam)
    }

    /// BFS distance from every vertex to the nearest source; `None` marks
    /// vertices unreachable from all sources.
    pub fn multi_source_distances(&self, sources: &VertexSet) -> Vec<Option<usize>> {
        let mut dist: Vec<Option<usize>> = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources.members() {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced by a nonempty vertex set, together with the
    /// translation table mapping new ids to the original ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        if let Some(&v) = s.members().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let table: Vec<usize> = s.members().to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in table.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); table.len()];
        let mut m = 0;
        for (i, &v) in table.iter().enumerate() {
            for &w in &self.adj[v] {
                if new_id[w] != usize::MAX {
                    adj[i].push(new_id[w]);
                    if new_id[w] > i {
                        m += 1;
                    }
                }
            }
        }
        // Neighbor ids inherit the sorted order of the originals.
        Ok((Graph { adj, m }, table))
    }
}

/// A set of vertex ids, stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet::default()
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet { members: vec![v] }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// For callers that already hold distinct vertices (avoids the dedup).
    pub(crate) fn from_iter_unchecked<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
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

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|v| !large.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_iter(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// A bijection between vertices and positions `0..n`. Positions are 0-based
/// internally; serialization shifts to 1-based ids on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    position: Vec<usize>,
    order: Vec<usize>,
}

impl Labelling {
    pub fn identity(n: usize) -> Self {
        Labelling {
            position: (0..n).collect(),
            order: (0..n).collect(),
        }
    }

    /// From per-vertex positions (`position[v] = p`).
    pub fn from_positions(position: Vec<usize>) -> Result<Self, GraphError> {
        let n = position.len();
        let mut order = vec![usize::MAX; n];
        for (v, &p) in position.iter().enumerate() {
            if p >= n || order[p] != usize::MAX {
                return Err(GraphError::NotBijective(n));
            }
            order[p] = v;
        }
        Ok(Labelling { position, order })
    }

    /// From the position-to-vertex sequence (`order[p] = v`).
    pub fn from_order(order: Vec<usize>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(GraphError::NotBijective(n));
            }
            position[v] = p;
        }
        Ok(Labelling { position, order })
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn vertex_at(&self, p: usize) -> usize {
        self.order[p]
    }

    /// Vertices listed by ascending position.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Maximum position difference across an edge; 0 for edgeless graphs.
pub fn bandwidth_of_labelling(g: &Graph, labelling: &Labelling) -> Result<usize, GraphError> {
    if labelling.len() != g.n() {
        return Err(GraphError::LabellingLength {
            got: labelling.len(),
            expected: g.n(),
        });
    }
    Ok(g.edges()
        .map(|(u, v)| labelling.position(u).abs_diff(labelling.position(v)))
        .max()
        .unwrap_or(0))
}

/// Every labelling stretches some edge at a maximum-degree vertex by at
/// least half its degree.
pub fn degree_lower_bound(g: &Graph) -> usize {
    g.max_degree().div_ceil(2)
}

/// `(n - 1) / diam(G)` as an exact rational; a connected graph cannot be
/// ordered with smaller bandwidth. Zero for a single vertex.
pub fn diameter_lower_bound(g: &Graph) -> Result<Rational, GraphError> {
    if g.n() <= 1 {
        if g.n() == 0 {
            return Err(GraphError::EmptySubset);
        }
        return Ok(Rational::zero());
    }
    let diam = g.diameter().ok_or(GraphError::Disconnected)?;
    Ok(Rational::new((g.n() - 1) as i64, diam as i64))
}
