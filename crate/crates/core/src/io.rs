//! DIMACS instances, result tables, traces and coloring files.

use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::Graph;
use crate::trace::{RunTrace, Step, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceSource {
    Dimacs,
    GeneratedUdg,
    GeneratedQudg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceMetadata {
    pub name: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub source: InstanceSource,
    pub generator_params: Option<GeneratorSpec>,
}

impl InstanceMetadata {
    pub fn describe(
        name: impl Into<String>,
        graph: &Graph,
        source: InstanceSource,
        generator_params: Option<GeneratorSpec>,
    ) -> Self {
        InstanceMetadata {
            name: name.into(),
            vertex_count: graph.vertex_count(),
            edge_count: graph.edge_count(),
            max_degree: graph.max_degree(),
            source,
            generator_params,
        }
    }

    /// Same instance, counts refreshed from `graph` (e.g. after taking the
    /// largest component).
    pub fn for_graph(&self, graph: &Graph) -> Self {
        InstanceMetadata {
            vertex_count: graph.vertex_count(),
            edge_count: graph.edge_count(),
            max_degree: graph.max_degree(),
            ..self.clone()
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

/// Reads a DIMACS `.col` graph.
///
/// Both `p edge` and `p col` headers are accepted. The declared edge count is
/// not enforced because many published files list each edge in both
/// orientations; duplicates collapse into one undirected edge.
pub fn parse_dimacs(reader: impl BufRead, name: &str) -> Result<(Graph, InstanceMetadata)> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last = lineno;
        let line = line?;
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(lineno, "second problem line"));
                }
                let kind: String = field(tok.next(), lineno, "problem type")?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err(lineno, format!("unsupported problem type `{kind}`")));
                }
                n = Some(field(tok.next(), lineno, "vertex count")?);
                let _m: usize = field(tok.next(), lineno, "edge count")?;
            }
            Some("e") => {
                let nv = n.ok_or_else(|| parse_err(lineno, "edge before problem line"))?;
                let u: usize = field(tok.next(), lineno, "vertex id")?;
                let v: usize = field(tok.next(), lineno, "vertex id")?;
                for x in [u, v] {
                    if x == 0 || x > nv {
                        return Err(parse_err(lineno, format!("vertex {x} out of range 1..={nv}")));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop on vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(lineno, format!("unrecognized line type `{other}`"))),
        }
        if tok.next().is_some() && !line.trim_start().starts_with('c') {
            return Err(parse_err(lineno, "trailing tokens"));
        }
    }
    let n = n.ok_or_else(|| parse_err(last.max(1), "missing problem line"))?;
    let graph = Graph::new_dedup(n, edges)?;
    let meta = InstanceMetadata::describe(name, &graph, InstanceSource::Dimacs, None);
    Ok((graph, meta))
}

pub fn parse_dimacs_str(text: &str, name: &str) -> Result<(Graph, InstanceMetadata)> {
    parse_dimacs(text.as_bytes(), name)
}

pub fn write_dimacs(graph: &Graph, comments: &[String], mut out: impl Write) -> Result<()> {
    for c in comments {
        writeln!(out, "c {c}")?;
    }
    writeln!(out, "p edge {} {}", graph.vertex_count(), graph.edge_count())?;
    for &(u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bfs,
    Hc,
    Sa,
    Tabu,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Bfs, Algorithm::Hc, Algorithm::Sa, Algorithm::Tabu];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Hc => "hc",
            Algorithm::Sa => "sa",
            Algorithm::Tabu => "tabu",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    Blank,
    Bfs,
}

impl fmt::Display for InitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitKind::Blank => "blank",
            InitKind::Bfs => "bfs",
        })
    }
}

impl FromStr for InitKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "blank" => Ok(InitKind::Blank),
            "bfs" => Ok(InitKind::Bfs),
            _ => Err(format!("unknown initial solution `{s}`")),
        }
    }
}

/// One line of a results table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub graph: String,
    #[serde(rename = "|V|")]
    pub vertices: usize,
    #[serde(rename = "|E|")]
    pub edges: usize,
    #[serde(rename = "Deg")]
    pub max_degree: usize,
    pub algorithm: Algorithm,
    pub init: InitKind,
    pub objective: usize,
    pub iterations: u64,
    pub time_ms: u64,
    pub seed: u64,
    pub ilp_ref: Option<u64>,
}

pub const RESULT_HEADER: [&str; 11] =
    ["graph", "|V|", "|E|", "Deg", "algorithm", "init", "objective", "iterations", "time_ms", "seed", "ilp_ref"];

impl ResultRow {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        meta: &InstanceMetadata,
        algorithm: Algorithm,
        init: InitKind,
        objective: usize,
        iterations: u64,
        time_ms: u64,
        seed: u64,
        ilp_ref: Option<u64>,
    ) -> Self {
        ResultRow {
            graph: meta.name.clone(),
            vertices: meta.vertex_count,
            edges: meta.edge_count,
            max_degree: meta.max_degree,
            algorithm,
            init,
            objective,
            iterations,
            time_ms,
            seed,
            ilp_ref,
        }
    }
}

pub fn write_result_csv(rows: &[ResultRow], out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(RESULT_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_result_csv(input: impl Read) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != RESULT_HEADER {
        return Err(parse_err(1, format!("unexpected result header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub const TRACE_HEADER: [&str; 4] = ["iteration", "current_objective", "best_objective", "move_kind"];

pub fn write_trace(trace: &RunTrace, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in &trace.records {
        w.write_record([
            r.iteration.to_string(),
            r.current_objective.to_string(),
            r.best_objective.to_string(),
            r.step.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trace CSV back. Edge indices are not stored and come back as `None`.
pub fn read_trace(input: impl Read) -> Result<Vec<TraceRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != TRACE_HEADER.len() {
            return Err(parse_err(line, format!("expected 4 fields, got {}", rec.len())));
        }
        let step = rec[3].parse::<Step>().map_err(|m| parse_err(line, m))?;
        out.push(TraceRecord {
            iteration: field(Some(&rec[0]), line, "iteration")?,
            current_objective: field(Some(&rec[1]), line, "objective")?,
            best_objective: field(Some(&rec[2]), line, "objective")?,
            step,
            edge: None,
        });
    }
    Ok(out)
}

/// Writes `u v color` per edge with 1-based vertex ids. `original` maps the
/// coloring's vertices back to ids of a parent graph.
pub fn write_coloring(coloring: &EdgeColoring<'_>, original: Option<&[usize]>, mut out: impl Write) -> Result<()> {
    let id = |v: usize| original.map_or(v, |map| map[v]) + 1;
    for (e, &(u, v)) in coloring.graph().edges().iter().enumerate() {
        writeln!(out, "{} {} {}", id(u), id(v), coloring.color(e))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads `u v color` lines (1-based ids, `c` comments allowed) as a list of
/// 0-based edges with colors.
pub fn read_coloring_lines(reader: impl BufRead) -> Result<Vec<(usize, usize, Color)>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('#') {
            continue;
        }
        let mut tok = t.split_whitespace();
        let u: usize = field(tok.next(), lineno, "vertex id")?;
        let v: usize = field(tok.next(), lineno, "vertex id")?;
        let c: Color = field(tok.next(), lineno, "color")?;
        if u == 0 || v == 0 {
            return Err(parse_err(lineno, "vertex ids are 1-based"));
        }
        if tok.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens"));
        }
        out.push((u - 1, v - 1, c));
    }
    Ok(out)
}

/// Reads a coloring file against `graph`; every edge must be listed once.
pub fn read_coloring<'g>(graph: &'g Graph, reader: impl BufRead) -> Result<EdgeColoring<'g>> {
    let mut colors: Vec<Color> = vec![0; graph.edge_count()];
    for (u, v, c) in read_coloring_lines(reader)? {
        graph.check_vertex(u)?;
        graph.check_vertex(v)?;
        let e = graph
            .find_edge(u, v)
            .ok_or_else(|| Error::InvalidColoring(format!("({}, {}) is not an edge", u + 1, v + 1)))?;
        if colors[e] != 0 {
            return Err(Error::InvalidColoring(format!("edge ({}, {}) listed twice", u + 1, v + 1)));
        }
        colors[e] = c;
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        let (u, v) = graph.endpoints(e);
        return Err(Error::InvalidColoring(format!("edge ({}, {}) has no color", u + 1, v + 1)));
    }
    EdgeColoring::from_colors(graph, colors)
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
