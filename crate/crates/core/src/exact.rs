//! Exhaustive optimum for tiny graphs.

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use crate::coloring::lower_bound_max_degree;

pub const DEFAULT_EDGE_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct ExactResult<'g> {
    pub optimum: usize,
    pub witness: EdgeColoring<'g>,
    /// Complete valid partitions reached by the search.
    pub partitions_examined: u64,
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    /// `mult[v * m + b]`: edges of block `b` at vertex `v`.
    mult: Vec<u8>,
    distinct: Vec<u8>,
    sizes: Vec<usize>,
    assign: Vec<usize>,
    best: usize,
    best_assign: Vec<usize>,
    target: usize,
    leaves: u64,
}

impl Search<'_> {
    fn m(&self) -> usize {
        self.edges.len()
    }

    fn add(&mut self, v: usize, b: usize) {
        let i = v * self.m() + b;
        if self.mult[i] == 0 {
            self.distinct[v] += 1;
        }
        self.mult[i] += 1;
    }

    fn remove(&mut self, v: usize, b: usize) {
        let i = v * self.m() + b;
        self.mult[i] -= 1;
        if self.mult[i] == 0 {
            self.distinct[v] -= 1;
        }
    }

    fn run(&mut self, e: usize, blocks: usize, max_size: usize) {
        if self.best == self.target {
            return;
        }
        if e == self.m() {
            self.leaves += 1;
            if max_size < self.best {
                self.best = max_size;
                self.best_assign.copy_from_slice(&self.assign);
            }
            return;
        }
        let (u, v) = self.edges[e];
        for b in 0..=blocks {
            if self.sizes[b] + 1 >= self.best {
                continue;
            }
            self.add(u, b);
            self.add(v, b);
            if self.distinct[u] <= 2 && self.distinct[v] <= 2 {
                self.sizes[b] += 1;
                self.assign[e] = b;
                let grown = if b == blocks { blocks + 1 } else { blocks };
                self.run(e + 1, grown, max_size.max(self.sizes[b]));
                self.sizes[b] -= 1;
            }
            self.remove(u, b);
            self.remove(v, b);
        }
    }
}

/// Minimum over all valid 2-colorings of the largest color class.
///
/// Enumerates set partitions of the edges as restricted-growth strings in
/// lexicographic order, abandoning a prefix as soon as a vertex sees three
/// blocks or a block can no longer beat the best value found. Stops early
/// once the degree lower bound is met. The witness is the first partition
/// reaching the optimum in that order.
pub fn brute_force_optimum(g: &Graph, edge_limit: usize) -> Result<ExactResult<'_>> {
    let m = g.edge_count();
    if m > edge_limit {
        return Err(Error::TooManyEdges { edges: m, limit: edge_limit });
    }
    let mut s = Search {
        edges: g.edges(),
        mult: vec![0; g.vertex_count() * m],
        distinct: vec![0; g.vertex_count()],
        sizes: vec![0; m],
        assign: vec![0; m],
        best: m + 1,
        best_assign: vec![0; m],
        target: lower_bound_max_degree(g),
        leaves: 0,
    };
    if m == 0 {
        s.best = 0;
        s.leaves = 1;
    } else {
        s.run(0, 0, 0);
    }
    let colors: Vec<Color> = s.best_assign.iter().map(|&b| b as Color + 1).collect();
    let witness = EdgeColoring::from_colors(g, colors)?;
    debug_assert!(witness.is_valid_qcoloring(2));
    debug_assert_eq!(witness.max_count(), s.best);
    Ok(ExactResult { optimum: s.best, witness, partitions_examined: s.leaves })
}
