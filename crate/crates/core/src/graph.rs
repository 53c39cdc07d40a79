//! Immutable simple undirected graph.

use std::collections::HashSet;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// A simple undirected graph with dense vertex and edge indices.
///
/// Edges are stored with their endpoints normalized so that `u < v`. Each
/// vertex keeps an adjacency list of `(neighbor, edge index)` pairs in edge
/// insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate edges (in either orientation).
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            let key = check_pair(vertex_count, u, v)?;
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(u, v));
            }
            list.push(key);
        }
        Ok(Self::from_normalized(vertex_count, list))
    }

    /// Like [`Graph::new`] but silently drops repeated edges, keeping the
    /// first occurrence.
    pub fn new_dedup(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            let key = check_pair(vertex_count, u, v)?;
            if seen.insert(key) {
                list.push(key);
            }
        }
        Ok(Self::from_normalized(vertex_count, list))
    }

    fn from_normalized(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        Graph { vertex_count, edges, adjacency }
    }

    pub fn empty() -> Self {
        Graph { vertex_count: 0, edges: Vec::new(), adjacency: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count })
        }
    }

    pub fn check_edge(&self, e: usize) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange { edge: e, count: self.edges.len() })
        }
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    /// Component label per vertex, labels numbered by smallest member.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut dsu = DisjointSets::new(self.vertex_count);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut root_label = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            let r = dsu.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[v] = root_label[r];
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    /// Vertex-induced subgraph on the largest connected component.
    ///
    /// Ties go to the component whose smallest vertex index is lowest.
    /// Surviving vertices keep their relative order.
    pub fn largest_connected_component(&self) -> Subgraph {
        let (count, label) = self.components();
        if count == 0 {
            return Subgraph { graph: Graph::empty(), old_to_new: Vec::new(), new_to_old: Vec::new() };
        }
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        // labels are assigned in order of smallest member, so the first max wins ties
        let best = (0..count).fold(0, |best, l| if sizes[l] > sizes[best] { l } else { best });
        let mut old_to_new = vec![None; self.vertex_count];
        let mut new_to_old = Vec::with_capacity(sizes[best]);
        for v in 0..self.vertex_count {
            if label[v] == best {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, _)| label[u] == best)
            .map(|&(u, v)| (old_to_new[u].unwrap(), old_to_new[v].unwrap()))
            .collect();
        Subgraph {
            graph: Graph::from_normalized(new_to_old.len(), edges),
            old_to_new,
            new_to_old,
        }
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        Graph::new(self.vertex_count, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(usize, usize)> {
    if u >= n {
        return Err(Error::VertexOutOfRange { vertex: u, count: n });
    }
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, count: n });
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok((u.min(v), u.max(v)))
}

/// A re-indexed subgraph together with the vertex maps back to its parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }
}
