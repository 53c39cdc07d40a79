//! Layered breadth-first edge coloring.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trace::{RunTrace, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartPolicy {
    First,
    MaxDegree,
    BestOfAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartVertex {
    /// Smallest-index vertex of maximum degree.
    Auto,
    /// Try every start and keep the best.
    Best,
    Index(usize),
}

impl fmt::Display for StartVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartVertex::Auto => f.write_str("auto"),
            StartVertex::Best => f.write_str("best"),
            StartVertex::Index(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for StartVertex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(StartVertex::Auto),
            "best" => Ok(StartVertex::Best),
            _ => s
                .parse()
                .map(StartVertex::Index)
                .map_err(|_| format!("expected `auto`, `best` or a vertex index, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BfsConfig {
    pub start_vertex: StartVertex,
    pub improvement_step: bool,
}

impl Default for BfsConfig {
    fn default() -> Self {
        BfsConfig { start_vertex: StartVertex::Auto, improvement_step: true }
    }
}

/// Colors of one BFS run, with 0 marking edges outside the start's component.
struct Layered {
    colors: Vec<Color>,
    uncolored: usize,
    objective: usize,
}

fn layered_colors(g: &Graph, start: usize, improve: bool) -> Layered {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut colors = vec![0 as Color; m];
    let mut seen = vec![false; n];
    let mut layer: Vec<usize> = vec![start];
    let mut next: Vec<usize> = Vec::new();
    let mut painted: Vec<usize> = Vec::new();
    seen[start] = true;

    let mut dsu = DisjointSets::new(if improve { m } else { 0 });
    let mut anchor = vec![usize::MAX; if improve { n } else { 0 }];
    let mut anchor_stamp = vec![u32::MAX; if improve { n } else { 0 }];
    let mut slot = vec![u32::MAX; if improve { m } else { 0 }];

    let mut c: Color = 1;
    let mut depth: u32 = 0;
    while !layer.is_empty() {
        layer.sort_unstable();
        painted.clear();
        for &v in &layer {
            for &(w, e) in g.neighbors(v) {
                if colors[e] == 0 {
                    colors[e] = c;
                    painted.push(e);
                }
                if !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if !painted.is_empty() {
            if improve {
                for &e in &painted {
                    let (a, b) = g.endpoints(e);
                    for x in [a, b] {
                        if anchor_stamp[x] == depth {
                            dsu.union(e, anchor[x]);
                        } else {
                            anchor_stamp[x] = depth;
                            anchor[x] = e;
                        }
                    }
                }
                // components in order of their first painted edge
                let mut used: u32 = 0;
                for &e in &painted {
                    let r = dsu.find(e);
                    if slot[r] == u32::MAX {
                        slot[r] = used;
                        used += 1;
                    }
                    colors[e] = c + slot[r];
                }
                c += used;
            } else {
                c += 1;
            }
        }
        depth += 1;
        std::mem::swap(&mut layer, &mut next);
        next.clear();
    }

    let mut counts = vec![0usize; c as usize];
    let mut uncolored = 0;
    for &col in &colors {
        if col == 0 {
            uncolored += 1;
        } else {
            counts[col as usize] += 1;
        }
    }
    Layered { colors, uncolored, objective: counts.into_iter().max().unwrap_or(0) }
}

/// Picks the BFS start vertex.
///
/// `BestOfAll` runs the heuristic (with the improvement step) from every
/// vertex and returns the one with the smallest objective, lowest index on
/// ties. Starts that cannot reach every edge are skipped.
pub fn choose_start_vertex(g: &Graph, policy: StartPolicy) -> Result<usize> {
    best_start(g, policy, true)
}

fn best_start(g: &Graph, policy: StartPolicy, improve: bool) -> Result<usize> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    match policy {
        StartPolicy::First => Ok(0),
        StartPolicy::MaxDegree => {
            let d = g.max_degree();
            Ok((0..g.vertex_count()).find(|&v| g.degree(v) == d).unwrap())
        }
        StartPolicy::BestOfAll => (0..g.vertex_count())
            .into_par_iter()
            .filter_map(|v| {
                let run = layered_colors(g, v, improve);
                (run.uncolored == 0).then_some((run.objective, v))
            })
            .min()
            .map(|(_, v)| v)
            .ok_or(Error::Disconnected { uncolored: g.edge_count() }),
    }
}

/// Colors edges layer by layer outward from the start vertex: every still
/// uncolored edge touching the current layer gets the layer's color. With
/// the improvement step each layer's color is split into its connected
/// pieces, each under its own color.
///
/// Fails with [`Error::Disconnected`] if some edge is not reachable from the
/// start.
pub fn bfs_coloring<'g>(g: &'g Graph, cfg: &BfsConfig) -> Result<SolveResult<'g>> {
    let started = Instant::now();
    let start = match cfg.start_vertex {
        StartVertex::Auto => best_start(g, StartPolicy::MaxDegree, cfg.improvement_step)?,
        StartVertex::Best => best_start(g, StartPolicy::BestOfAll, cfg.improvement_step)?,
        StartVertex::Index(v) => {
            g.check_vertex(v)?;
            v
        }
    };
    let run = layered_colors(g, start, cfg.improvement_step);
    if run.uncolored > 0 {
        return Err(Error::Disconnected { uncolored: run.uncolored });
    }
    let coloring = EdgeColoring::from_colors(g, run.colors)?;
    let echo = BfsConfig { start_vertex: StartVertex::Index(start), ..*cfg };
    let mut trace = RunTrace::new(serde_json::to_string(&echo)?);
    trace.start(&coloring);
    trace.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(SolveResult { coloring, trace })
}
