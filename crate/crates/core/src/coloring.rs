//! Edge coloring state with incremental per-vertex and per-color bookkeeping.
//!
//! Every mutation goes through [`EdgeColoring::set_color`], which keeps the
//! vertex color classes, the per-color edge counts and the objective tracker
//! in sync. While a journal is open, each write is recorded so the caller can
//! roll a whole move back.

use std::collections::BTreeSet;

use smallvec::SmallVec;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Color identifier. Live colors are always positive.
pub type Color = u32;

/// Color class of one vertex: each incident color with its incidence count.
type ClassEntries = SmallVec<[(Color, u32); 3]>;

/// Largest color class size together with the smallest color attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObjectiveValue {
    pub value: usize,
    pub argmax_color: Option<Color>,
}

/// Opaque marker returned by [`EdgeColoring::begin`].
#[derive(Debug, Clone, Copy)]
pub struct Checkpoint {
    next_color: Color,
    max_count: usize,
}

#[derive(Debug, Clone)]
pub struct EdgeColoring<'g> {
    graph: &'g Graph,
    color_of: Vec<Color>,
    classes: Vec<ClassEntries>,
    /// Indexed by color id; slot 0 is unused.
    count_of: Vec<u32>,
    /// `histogram[k]` is the number of colors with exactly `k` edges.
    histogram: Vec<u32>,
    max_count: usize,
    live: usize,
    next_color: Color,
    journal: Option<Vec<(usize, Color)>>,
    mark_a: Vec<u32>,
    mark_b: Vec<u32>,
    stamp: u32,
}

impl<'g> EdgeColoring<'g> {
    /// Every edge in color 1.
    pub fn blank(graph: &'g Graph) -> Self {
        Self::build(graph, vec![1; graph.edge_count()])
    }

    /// Wraps an explicit per-edge color vector. Colors must be positive.
    pub fn from_colors(graph: &'g Graph, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != graph.edge_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors given for {} edges",
                colors.len(),
                graph.edge_count()
            )));
        }
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidColoring(format!("edge {e} has color 0")));
        }
        Ok(Self::build(graph, colors))
    }

    fn build(graph: &'g Graph, colors: Vec<Color>) -> Self {
        let top = colors.iter().copied().max().unwrap_or(0);
        let mut c = EdgeColoring {
            graph,
            color_of: vec![0; colors.len()],
            classes: vec![ClassEntries::new(); graph.vertex_count()],
            count_of: vec![0; top as usize + 1],
            histogram: vec![0; graph.edge_count() + 1],
            max_count: 0,
            live: 0,
            next_color: top + 1,
            journal: None,
            mark_a: vec![0; graph.vertex_count()],
            mark_b: vec![0; graph.vertex_count()],
            stamp: 0,
        };
        for (e, col) in colors.into_iter().enumerate() {
            c.paint(e, col);
        }
        c
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn colors(&self) -> &[Color] {
        &self.color_of
    }

    #[inline]
    pub fn color(&self, e: usize) -> Color {
        self.color_of[e]
    }

    #[inline]
    pub fn count(&self, c: Color) -> usize {
        self.count_of.get(c as usize).copied().unwrap_or(0) as usize
    }

    /// Number of colors currently in use.
    pub fn live_color_count(&self) -> usize {
        self.live
    }

    pub fn next_color(&self) -> Color {
        self.next_color
    }

    pub fn live_colors(&self) -> Vec<Color> {
        (1..self.count_of.len() as Color).filter(|&c| self.count_of[c as usize] > 0).collect()
    }

    /// Raw `(color, incident edge count)` entries of a vertex's color class.
    #[inline]
    pub fn class_entries(&self, v: usize) -> &[(Color, u32)] {
        &self.classes[v]
    }

    #[inline]
    pub fn class_contains(&self, v: usize, c: Color) -> bool {
        self.classes[v].iter().any(|&(x, _)| x == c)
    }

    /// The set of distinct colors on edges incident to `v`, sorted.
    pub fn color_class(&self, v: usize) -> Result<Vec<Color>> {
        self.graph.check_vertex(v)?;
        let mut out: Vec<Color> = self.classes[v].iter().map(|&(c, _)| c).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Size of the largest color class, maintained incrementally.
    #[inline]
    pub fn max_count(&self) -> usize {
        self.max_count
    }

    pub fn objective(&self) -> ObjectiveValue {
        let argmax_color = (1..self.count_of.len())
            .find(|&c| self.max_count > 0 && self.count_of[c] as usize == self.max_count)
            .map(|c| c as Color);
        ObjectiveValue { value: self.max_count, argmax_color }
    }

    /// `true` iff no vertex sees more than `q` distinct colors.
    pub fn is_valid_qcoloring(&self, q: usize) -> bool {
        self.classes.iter().all(|cls| cls.len() <= q)
    }

    /// Hands out a color id that has never been used since the last renumbering.
    pub fn fresh_color(&mut self) -> Color {
        let c = self.next_color;
        self.next_color += 1;
        c
    }

    /// Recolors one edge, keeping all caches coherent.
    pub fn set_color(&mut self, e: usize, c: Color) {
        debug_assert!(c > 0);
        let old = self.color_of[e];
        if old == c {
            return;
        }
        if let Some(j) = self.journal.as_mut() {
            j.push((e, old));
        }
        self.unpaint(e);
        self.paint(e, c);
    }

    fn paint(&mut self, e: usize, c: Color) {
        let (u, v) = self.graph.endpoints(e);
        self.color_of[e] = c;
        class_add(&mut self.classes[u], c);
        class_add(&mut self.classes[v], c);
        if c as usize >= self.count_of.len() {
            self.count_of.resize(c as usize + 1, 0);
        }
        let k = self.count_of[c as usize] as usize;
        if k == 0 {
            self.live += 1;
        } else {
            self.histogram[k] -= 1;
        }
        self.histogram[k + 1] += 1;
        self.count_of[c as usize] += 1;
        self.max_count = self.max_count.max(k + 1);
    }

    fn unpaint(&mut self, e: usize) {
        let (u, v) = self.graph.endpoints(e);
        let c = self.color_of[e];
        class_remove(&mut self.classes[u], c);
        class_remove(&mut self.classes[v], c);
        let k = self.count_of[c as usize] as usize;
        self.histogram[k] -= 1;
        if k > 1 {
            self.histogram[k - 1] += 1;
        } else {
            self.live -= 1;
        }
        self.count_of[c as usize] -= 1;
        while self.max_count > 0 && self.histogram[self.max_count] == 0 {
            self.max_count -= 1;
        }
    }

    /// Starts recording writes. Nested journals are not supported.
    pub fn begin(&mut self) -> Checkpoint {
        assert!(self.journal.is_none(), "journal already open");
        self.journal = Some(Vec::new());
        Checkpoint { next_color: self.next_color, max_count: self.max_count }
    }

    /// Keeps every write since [`EdgeColoring::begin`].
    pub fn commit(&mut self) {
        self.journal = None;
    }

    /// Reverts every write since [`EdgeColoring::begin`].
    pub fn rollback(&mut self, cp: Checkpoint) {
        let journal = self.journal.take().expect("no journal open");
        for &(e, old) in journal.iter().rev() {
            self.unpaint(e);
            self.paint(e, old);
        }
        self.next_color = cp.next_color;
        debug_assert_eq!(self.max_count, cp.max_count);
    }

    fn next_stamp(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.mark_a.iter_mut().for_each(|m| *m = 0);
            self.mark_b.iter_mut().for_each(|m| *m = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    /// Repaints the connected component of color `from` reachable from
    /// vertex `start` with color `to`. Returns the number of edges repainted.
    pub fn repaint_component(&mut self, start: usize, from: Color, to: Color) -> usize {
        if from == to {
            return 0;
        }
        let graph = self.graph;
        let mut stack = vec![start];
        let mut repainted = 0;
        while let Some(x) = stack.pop() {
            if !self.class_contains(x, from) {
                continue;
            }
            for &(y, e) in graph.neighbors(x) {
                if self.color_of[e] == from {
                    self.set_color(e, to);
                    repainted += 1;
                    stack.push(y);
                }
            }
        }
        repainted
    }

    /// `true` iff removing `e` from the subgraph induced by the edges of its
    /// color increases that subgraph's number of components. Isolated
    /// vertices are not counted as components.
    pub fn is_color_critical(&mut self, e: usize) -> Result<bool> {
        self.graph.check_edge(e)?;
        let c = self.color_of[e];
        let (u, v) = self.graph.endpoints(e);
        let has_other = |s: &Self, x: usize| s.classes[x].iter().any(|&(col, k)| col == c && k > 1);
        if !has_other(self, u) || !has_other(self, v) {
            return Ok(false);
        }
        Ok(!self.connected_without(c, u, v, Some(e)))
    }

    /// Whether `u` reaches `v` through edges of color `c`, skipping `skip`.
    fn connected_without(&mut self, c: Color, u: usize, v: usize, skip: Option<usize>) -> bool {
        let stamp = self.next_stamp();
        let graph = self.graph;
        let mut stack = vec![u];
        self.mark_a[u] = stamp;
        while let Some(x) = stack.pop() {
            for &(y, e) in graph.neighbors(x) {
                if Some(e) == skip || self.color_of[e] != c || self.mark_a[y] == stamp {
                    continue;
                }
                if y == v {
                    return true;
                }
                self.mark_a[y] = stamp;
                stack.push(y);
            }
        }
        false
    }

    /// Restores connectivity of color `c` after one of its edges between `a`
    /// and `b` was recolored. Assumes `c` was connected before the change.
    ///
    /// Both sides are explored in lockstep; if they do not meet, the side
    /// that is exhausted first (the smaller fragment, ties going to `b`) gets
    /// a fresh color. Returns the number of colors introduced (0 or 1).
    pub fn split_after_edge_removal(&mut self, c: Color, a: usize, b: usize) -> usize {
        if self.count(c) == 0 || !self.class_contains(a, c) || !self.class_contains(b, c) {
            return 0;
        }
        let stamp = self.next_stamp();
        let graph = self.graph;
        let mut stack_a = vec![a];
        let mut stack_b = vec![b];
        self.mark_a[a] = stamp;
        self.mark_b[b] = stamp;
        let fragment = loop {
            if let Some(x) = stack_b.pop() {
                for &(y, e) in graph.neighbors(x) {
                    if self.color_of[e] != c || self.mark_b[y] == stamp {
                        continue;
                    }
                    if self.mark_a[y] == stamp {
                        return 0;
                    }
                    self.mark_b[y] = stamp;
                    stack_b.push(y);
                }
            } else {
                break b;
            }
            if let Some(x) = stack_a.pop() {
                for &(y, e) in graph.neighbors(x) {
                    if self.color_of[e] != c || self.mark_a[y] == stamp {
                        continue;
                    }
                    if self.mark_b[y] == stamp {
                        return 0;
                    }
                    self.mark_a[y] = stamp;
                    stack_a.push(y);
                }
            } else {
                break a;
            }
        };
        let fresh = self.fresh_color();
        self.repaint_component(fragment, c, fresh);
        1
    }

    /// Gives every connected component of color `c` beyond the first (the
    /// one holding the lowest edge index) its own fresh color. Returns the
    /// number of colors introduced.
    pub fn split_components_after_recolor(&mut self, c: Color) -> usize {
        let graph = self.graph;
        let members: Vec<usize> = (0..self.color_of.len()).filter(|&e| self.color_of[e] == c).collect();
        let Some(&first) = members.first() else {
            return 0;
        };
        let stamp = self.next_stamp();
        let (root, _) = graph.endpoints(first);
        let mut stack = vec![root];
        self.mark_a[root] = stamp;
        while let Some(x) = stack.pop() {
            for &(y, e) in graph.neighbors(x) {
                if self.color_of[e] == c && self.mark_a[y] != stamp {
                    self.mark_a[y] = stamp;
                    stack.push(y);
                }
            }
        }
        let mut introduced = 0;
        for e in members {
            let (u, _) = graph.endpoints(e);
            if self.color_of[e] == c && self.mark_a[u] != stamp {
                let fresh = self.fresh_color();
                self.repaint_component(u, c, fresh);
                introduced += 1;
            }
        }
        introduced
    }

    /// Splits every color into its connected components.
    pub fn normalize_components(&mut self) -> usize {
        self.live_colors().into_iter().map(|c| self.split_components_after_recolor(c)).sum()
    }

    /// `true` iff every live color induces a connected edge subgraph.
    pub fn colors_connected(&self) -> bool {
        let n = self.graph.vertex_count();
        let mut dsu = DisjointSets::new(n + self.color_of.len());
        // one node per edge; edges of the same color sharing a vertex are joined
        let mut anchor: Vec<Vec<(Color, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            let c = self.color_of[e];
            for x in [u, v] {
                match anchor[x].iter().find(|&&(col, _)| col == c) {
                    Some(&(_, other)) => {
                        dsu.union(e, other);
                    }
                    None => anchor[x].push((c, e)),
                }
            }
        }
        let mut root_of_color = std::collections::HashMap::new();
        for (e, &c) in self.color_of.iter().enumerate() {
            let r = dsu.find(e);
            if *root_of_color.entry(c).or_insert(r) != r {
                return false;
            }
        }
        true
    }

    /// Remaps live colors to `1..=k` in ascending order of their old ids.
    /// The edge partition is unchanged.
    pub fn renumber_colors(&mut self) {
        assert!(self.journal.is_none(), "cannot renumber inside a journal");
        let mut map = vec![0 as Color; self.count_of.len()];
        let mut next = 1;
        for c in 1..self.count_of.len() {
            if self.count_of[c] > 0 {
                map[c] = next;
                next += 1;
            }
        }
        let mut counts = vec![0u32; next as usize];
        for c in 1..self.count_of.len() {
            if self.count_of[c] > 0 {
                counts[map[c] as usize] = self.count_of[c];
            }
        }
        for col in self.color_of.iter_mut() {
            *col = map[*col as usize];
        }
        for cls in self.classes.iter_mut() {
            for entry in cls.iter_mut() {
                entry.0 = map[entry.0 as usize];
            }
        }
        self.count_of = counts;
        self.next_color = next;
    }

    /// Renumbers when the color counter has run past `4 * |E|`.
    pub fn maybe_renumber(&mut self) -> bool {
        if self.journal.is_none() && self.next_color as usize > 4 * self.color_of.len().max(1) {
            self.renumber_colors();
            true
        } else {
            false
        }
    }

    /// Recomputes every cache from `color_of` and compares with the
    /// incremental state.
    pub fn check_consistency(&self) -> Result<()> {
        let fresh = Self::build(self.graph, self.color_of.clone());
        for v in 0..self.classes.len() {
            let mut a = self.classes[v].to_vec();
            let mut b = fresh.classes[v].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::InvalidColoring(format!("class cache of vertex {v} is stale")));
            }
        }
        let top = self.count_of.len().max(fresh.count_of.len());
        for c in 0..top {
            if self.count(c as Color) != fresh.count(c as Color) {
                return Err(Error::InvalidColoring(format!("count of color {c} is stale")));
            }
        }
        if self.max_count != fresh.max_count || self.live != fresh.live {
            return Err(Error::InvalidColoring("objective tracker is stale".into()));
        }
        if self.count_of.iter().map(|&k| k as usize).sum::<usize>() != self.color_of.len() {
            return Err(Error::InvalidColoring("color counts do not sum to |E|".into()));
        }
        if self.color_of.iter().any(|&c| c >= self.next_color) {
            return Err(Error::InvalidColoring("color id beyond the fresh counter".into()));
        }
        Ok(())
    }

    /// Color classes as a set of edge sets, independent of color ids.
    pub fn partition(&self) -> BTreeSet<Vec<usize>> {
        let mut by_color: std::collections::HashMap<Color, Vec<usize>> = Default::default();
        for (e, &c) in self.color_of.iter().enumerate() {
            by_color.entry(c).or_default().push(e);
        }
        by_color.into_values().collect()
    }
}

#[inline]
fn class_add(cls: &mut ClassEntries, c: Color) {
    match cls.iter_mut().find(|(x, _)| *x == c) {
        Some(entry) => entry.1 += 1,
        None => cls.push((c, 1)),
    }
}

#[inline]
fn class_remove(cls: &mut ClassEntries, c: Color) {
    let i = cls.iter().position(|&(x, _)| x == c).expect("color missing from class");
    cls[i].1 -= 1;
    if cls[i].1 == 0 {
        cls.swap_remove(i);
    }
}

/// `⌈Δ/2⌉`, a lower bound on the objective of every 2-coloring.
pub fn lower_bound_max_degree(graph: &Graph) -> usize {
    graph.max_degree().div_ceil(2)
}
