//! Commands behind the `minmax` binary.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use minmax_coloring::bfs::{bfs_coloring, BfsConfig};
use minmax_coloring::coloring::{lower_bound_max_degree, Color, EdgeColoring};
use minmax_coloring::exact::brute_force_optimum;
use minmax_coloring::generators::{generate, GeneratorSpec};
use minmax_coloring::graph::{Graph, Subgraph};
use minmax_coloring::io::{self, Algorithm, InitKind, InstanceMetadata, InstanceSource, ResultRow};
use minmax_coloring::trace::RunTrace;
use minmax_coloring::{anneal, hill_climb, reference, tabu_search, AnnealConfig, HillClimbConfig, TabuConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A command failure, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration (exit 2).
    Usage(anyhow::Error),
    /// Unreadable or malformed input, or a failed write (exit 3).
    Input(anyhow::Error),
    /// A produced or supplied coloring violates the 2-coloring rules (exit 4).
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "usage error: {e:#}"),
            CliError::Input(e) => write!(f, "{e:#}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<minmax_coloring::Error> for CliError {
    fn from(e: minmax_coloring::Error) -> Self {
        use minmax_coloring::Error as E;
        match e {
            E::InvalidConfig(_) | E::TooManyEdges { .. } | E::VertexOutOfRange { .. } => CliError::Usage(e.into()),
            E::InvalidColoring(m) => CliError::Invariant(m),
            other => CliError::Input(other.into()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl fmt::Display) -> CliError {
    CliError::Usage(anyhow!("{msg}"))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
        .map_err(CliError::Input)
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .with_context(|| format!("cannot open {}", path.display()))
        .map_err(CliError::Input)
}

fn input_ctx(e: minmax_coloring::Error, path: &Path) -> CliError {
    match CliError::from(e) {
        CliError::Input(err) => CliError::Input(err.context(format!("reading {}", path.display()))),
        other => other,
    }
}

/// Sidecar path for an instance file: `g.col` -> `g.meta.json`.
pub fn sidecar_path(instance: &Path) -> PathBuf {
    instance.with_extension("meta.json")
}

/// Loads a DIMACS file. If a generator sidecar sits next to it and agrees
/// with the parsed graph, its name and generator parameters are used.
pub fn load_instance(path: &Path) -> CliResult<(Graph, InstanceMetadata)> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (graph, mut meta) = io::parse_dimacs(open(path)?, &name).map_err(|e| input_ctx(e, path))?;
    let side = sidecar_path(path);
    if side.exists() {
        let stored: InstanceMetadata = serde_json::from_reader(open(&side)?)
            .with_context(|| format!("reading {}", side.display()))
            .map_err(CliError::Input)?;
        if stored.vertex_count == meta.vertex_count && stored.edge_count == meta.edge_count {
            meta.name = stored.name;
            meta.source = stored.source;
            meta.generator_params = stored.generator_params;
        }
    }
    Ok((graph, meta))
}

pub fn write_instance(graph: &Graph, meta: &InstanceMetadata, path: &Path) -> CliResult<()> {
    let mut comments = vec![meta.name.clone()];
    if let Some(p) = &meta.generator_params {
        comments.push(format!(
            "{} n={} side={} range={} seed={}",
            if p.quasi { "qudg" } else { "udg" },
            p.n,
            p.side,
            p.range,
            p.seed
        ));
    }
    io::write_dimacs(graph, &comments, create(path)?).map_err(|e| input_ctx(e, path))?;
    let side = sidecar_path(path);
    io::write_json(meta, create(&side)?).map_err(|e| input_ctx(e, &side))
}

/// Generates an instance and writes it plus its metadata sidecar.
/// Returns the path of the `.col` file.
pub fn cmd_generate(spec: &GeneratorSpec, out: Option<&Path>) -> CliResult<PathBuf> {
    let (graph, meta) = generate(spec)?;
    let path = out.map_or_else(|| PathBuf::from(format!("{}.col", meta.name)), Path::to_path_buf);
    write_instance(&graph, &meta, &path)?;
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub init: InitKind,
    pub seed: u64,
    /// Used by the `bfs` algorithm and by the `bfs` initial solution.
    pub bfs: BfsConfig,
    pub hc: HillClimbConfig,
    pub sa: AnnealConfig,
    pub tabu: TabuConfig,
    /// Report wall time; when off, `time_ms` is written as 0.
    pub timing: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Tabu,
            init: InitKind::Bfs,
            seed: 0,
            bfs: BfsConfig::default(),
            hc: HillClimbConfig::default(),
            sa: AnnealConfig::default(),
            tabu: TabuConfig::default(),
            timing: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> CliResult<()> {
        match self.algorithm {
            Algorithm::Bfs => Ok(()),
            Algorithm::Hc => self.hc.validate(),
            Algorithm::Sa => self.sa.validate(),
            Algorithm::Tabu => self.tabu.validate(),
        }
        .map_err(CliError::from)
    }

    /// The init column reported for this configuration.
    pub fn effective_init(&self) -> InitKind {
        if self.algorithm == Algorithm::Bfs {
            InitKind::Bfs
        } else {
            self.init
        }
    }
}

/// Everything a solve produced, on the largest component of the instance.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub row: ResultRow,
    pub trace: RunTrace,
    pub component: Subgraph,
    pub colors: Vec<Color>,
    pub initial_objective: usize,
    /// Algorithm configuration as actually run, with defaults resolved.
    pub config_echo: String,
}

impl SolveReport {
    pub fn coloring(&self) -> EdgeColoring<'_> {
        EdgeColoring::from_colors(&self.component.graph, self.colors.clone()).expect("solver colors are positive")
    }
}

/// Largest component, initial solution, search, then validation.
pub fn run_solve(graph: &Graph, meta: &InstanceMetadata, cfg: &SolverConfig) -> CliResult<SolveReport> {
    cfg.validate()?;
    let started = Instant::now();
    let component = graph.largest_connected_component();
    let g = &component.graph;
    let meta = meta.for_graph(g);

    let init = match cfg.effective_init() {
        InitKind::Blank => EdgeColoring::blank(g),
        InitKind::Bfs => {
            if g.edge_count() == 0 {
                EdgeColoring::blank(g)
            } else {
                bfs_coloring(g, &cfg.bfs)?.coloring
            }
        }
    };
    let initial_objective = init.max_count();
    let result = match cfg.algorithm {
        Algorithm::Bfs => {
            let mut trace = RunTrace::new(serde_json::to_string(&cfg.bfs).expect("config serializes"));
            trace.start(&init);
            minmax_coloring::SolveResult { coloring: init, trace }
        }
        Algorithm::Hc => hill_climb(init, &cfg.hc)?,
        Algorithm::Sa => anneal(init, &AnnealConfig { seed: cfg.seed, ..cfg.sa })?,
        Algorithm::Tabu => tabu_search(init, &TabuConfig { seed: cfg.seed, ..cfg.tabu })?,
    };
    let coloring = result.coloring;
    check_output(&coloring)?;

    let elapsed = if cfg.timing { started.elapsed().as_millis() as u64 } else { 0 };
    let ilp = if meta.source == InstanceSource::Dimacs { reference::ilp_bound(&meta.name) } else { None };
    let row = ResultRow::new(
        &meta,
        cfg.algorithm,
        cfg.effective_init(),
        coloring.max_count(),
        result.trace.iterations(),
        elapsed,
        cfg.seed,
        ilp,
    );
    let mut trace = result.trace;
    if !cfg.timing {
        trace.wall_time_ms = 0;
    }
    let config_echo = trace.config.clone();
    let colors = coloring.colors().to_vec();
    Ok(SolveReport { row, config_echo, trace, colors, initial_objective, component })
}

fn check_output(c: &EdgeColoring<'_>) -> CliResult<()> {
    if !c.is_valid_qcoloring(2) {
        return Err(CliError::Invariant("solver produced a coloring with a vertex seeing three colors".into()));
    }
    c.check_consistency().map_err(|e| CliError::Invariant(e.to_string()))?;
    let f = c.max_count();
    let g = c.graph();
    if f < lower_bound_max_degree(g) || f > g.edge_count() {
        return Err(CliError::Invariant(format!("objective {f} outside [lower bound, |E|]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct SolveOutputs {
    /// Result CSV; stdout when absent.
    pub result: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub coloring: Option<PathBuf>,
    pub meta: Option<PathBuf>,
}

#[derive(Serialize)]
struct SolveMeta<'a> {
    instance: &'a InstanceMetadata,
    component: InstanceMetadata,
    solver: &'a SolverConfig,
    algorithm_config: serde_json::Value,
    initial_objective: usize,
    lower_bound: usize,
    version: &'static str,
}

pub fn cmd_solve(input: &Path, cfg: &SolverConfig, out: &SolveOutputs) -> CliResult<SolveReport> {
    let (graph, meta) = load_instance(input)?;
    let report = run_solve(&graph, &meta, cfg)?;
    let rows = std::slice::from_ref(&report.row);
    match &out.result {
        Some(p) => io::write_result_csv(rows, create(p)?).map_err(|e| input_ctx(e, p))?,
        None => io::write_result_csv(rows, std::io::stdout().lock()).map_err(CliError::from)?,
    }
    if let Some(p) = &out.trace {
        io::write_trace(&report.trace, create(p)?).map_err(|e| input_ctx(e, p))?;
    }
    if let Some(p) = &out.coloring {
        io::write_coloring(&report.coloring(), Some(&report.component.new_to_old), create(p)?)
            .map_err(|e| input_ctx(e, p))?;
    }
    if let Some(p) = &out.meta {
        let doc = SolveMeta {
            instance: &meta,
            component: meta.for_graph(&report.component.graph),
            solver: cfg,
            algorithm_config: serde_json::from_str(&report.config_echo).unwrap_or(serde_json::Value::Null),
            initial_objective: report.initial_objective,
            lower_bound: lower_bound_max_degree(&report.component.graph),
            version: env!("CARGO_PKG_VERSION"),
        };
        io::write_json(&doc, create(p)?).map_err(|e| input_ctx(e, p))?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactReport {
    pub optimum: usize,
    pub lower_bound: usize,
    pub partitions_examined: u64,
    pub colors: Vec<Color>,
}

pub fn cmd_exact(input: &Path, edge_limit: usize) -> CliResult<ExactReport> {
    let (graph, _) = load_instance(input)?;
    let r = brute_force_optimum(&graph, edge_limit)?;
    Ok(ExactReport {
        optimum: r.optimum,
        lower_bound: lower_bound_max_degree(&graph),
        partitions_examined: r.partitions_examined,
        colors: r.witness.colors().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidateReport {
    pub colored_edges: usize,
    pub instance_edges: usize,
    pub objective: usize,
    pub colors: usize,
    pub valid: bool,
}

/// Checks a coloring file against an instance. The file may cover only part
/// of the instance (for example its largest component); every listed pair
/// must be an edge of the instance.
pub fn cmd_validate(input: &Path, coloring: &Path) -> CliResult<ValidateReport> {
    let (graph, _) = load_instance(input)?;
    let lines = io::read_coloring_lines(open(coloring)?).map_err(|e| input_ctx(e, coloring))?;
    let mut edges = Vec::with_capacity(lines.len());
    let mut colors = Vec::with_capacity(lines.len());
    for &(u, v, c) in &lines {
        if u >= graph.vertex_count() || v >= graph.vertex_count() || graph.find_edge(u, v).is_none() {
            return Err(CliError::Input(anyhow!("({}, {}) is not an edge of {}", u + 1, v + 1, input.display())));
        }
        if c == 0 {
            return Err(CliError::Input(anyhow!("color 0 on edge ({}, {})", u + 1, v + 1)));
        }
        edges.push((u, v));
        colors.push(c);
    }
    let sub = Graph::new(graph.vertex_count(), edges)
        .map_err(|e| CliError::Input(anyhow!("{e} in {}", coloring.display())))?;
    let c = EdgeColoring::from_colors(&sub, colors)?;
    Ok(ValidateReport {
        colored_edges: sub.edge_count(),
        instance_edges: graph.edge_count(),
        objective: c.max_count(),
        colors: c.live_color_count(),
        valid: c.is_valid_qcoloring(2),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Path(PathBuf),
    Generate(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchEntry {
    pub instance: InstanceSpec,
    pub configs: Vec<SolverConfig>,
    #[serde(default = "one")]
    pub repetitions: u64,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchPlan {
    pub entries: Vec<BenchEntry>,
    pub output: Option<PathBuf>,
    /// Run cells on all cores.
    #[serde(default)]
    pub parallel: bool,
}

impl BenchPlan {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let plan: BenchPlan = toml::from_str(text).map_err(|e| CliError::Usage(e.into()))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> CliResult<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.repetitions == 0 {
                return Err(usage(format!("entry {}: repetitions must be at least 1", i + 1)));
            }
            if let InstanceSpec::Generate(spec) = &e.instance {
                spec.validate()?;
            }
            for c in &e.configs {
                c.validate()?;
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct BenchOutcome {
    pub rows: Vec<ResultRow>,
    /// Cells that failed, as (instance, algorithm, init, seed, message).
    pub failures: Vec<(String, Algorithm, InitKind, u64, String)>,
}

/// Runs every (instance, config, repetition) cell. Repetition `r` uses seed
/// `config.seed + r`. Rows come out in plan order regardless of scheduling.
pub fn cmd_bench(plan: &BenchPlan) -> CliResult<BenchOutcome> {
    plan.validate()?;
    let mut instances = Vec::with_capacity(plan.entries.len());
    for e in &plan.entries {
        instances.push(match &e.instance {
            InstanceSpec::Path(p) => load_instance(p)?,
            InstanceSpec::Generate(spec) => generate(spec)?,
        });
    }
    let mut cells = Vec::new();
    for (i, e) in plan.entries.iter().enumerate() {
        for c in &e.configs {
            for r in 0..e.repetitions {
                cells.push((i, SolverConfig { seed: c.seed.wrapping_add(r), ..c.clone() }));
            }
        }
    }
    let run = |(i, cfg): &(usize, SolverConfig)| {
        let (g, meta) = &instances[*i];
        run_solve(g, meta, cfg).map(|r| r.row).map_err(|e| {
            (meta.name.clone(), cfg.algorithm, cfg.effective_init(), cfg.seed, e.to_string())
        })
    };
    let results: Vec<_> = if plan.parallel { cells.par_iter().map(run).collect() } else { cells.iter().map(run).collect() };
    let mut out = BenchOutcome { rows: Vec::new(), failures: Vec::new() };
    for r in results {
        match r {
            Ok(row) => out.rows.push(row),
            Err(f) => out.failures.push(f),
        }
    }
    match &plan.output {
        Some(p) => io::write_result_csv(&out.rows, create(p)?).map_err(|e| input_ctx(e, p))?,
        None => io::write_result_csv(&out.rows, std::io::stdout().lock()).map_err(CliError::from)?,
    }
    Ok(out)
}

/// Prints a failure summary to stderr.
pub fn report_failures(out: &BenchOutcome, mut err: impl Write) {
    for (name, alg, init, seed, msg) in &out.failures {
        let _ = writeln!(err, "failed: {name} {alg}/{init} seed {seed}: {msg}");
    }
}
