use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minmax_cli::{
    cmd_bench, cmd_exact, cmd_generate, cmd_solve, cmd_validate, report_failures, BenchEntry, BenchPlan, CliError,
    CliResult, InstanceSpec, SolveOutputs, SolverConfig,
};
use minmax_coloring::bfs::{BfsConfig, StartVertex};
use minmax_coloring::exact::DEFAULT_EDGE_LIMIT;
use minmax_coloring::generators::{GeneratorSpec, DEFAULT_SIDE};
use minmax_coloring::io::{Algorithm, InitKind};
use minmax_coloring::{AnnealConfig, AttractivenessWeights, HillClimbConfig, TabuConfig};

#[derive(Parser)]
#[command(name = "minmax", version, about = "Min-max edge 2-coloring solvers and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random (quasi) unit disk graph as DIMACS plus a metadata sidecar
    Generate(GenerateArgs),
    /// Solve one instance and print a result row
    Solve(SolveArgs),
    /// Exact optimum of a tiny instance
    Exact(ExactArgs),
    /// Check a coloring file against an instance
    Validate(ValidateArgs),
    /// Run a batch of solves and write a results table
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Unit disk graph (default)
    #[arg(long, conflicts_with = "qudg")]
    udg: bool,
    /// Quasi unit disk graph
    #[arg(long)]
    qudg: bool,
    #[arg(short = 'n', long)]
    vertices: usize,
    /// Maximum transmission range
    #[arg(long)]
    range: f64,
    #[arg(long, default_value_t = DEFAULT_SIDE)]
    side: f64,
    #[arg(long, env = "MINMAX_SEED", default_value_t = 0)]
    seed: u64,
    /// Output `.col` path; defaults to `<name>.col`
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, value_parser = parse_algorithm, default_value = "tabu")]
    algorithm: Algorithm,
    #[arg(long, value_parser = parse_init, default_value = "bfs")]
    init: InitKind,
    /// BFS start vertex: `auto`, `best` or a 0-based index
    #[arg(long, default_value = "auto")]
    start: StartVertex,
    /// Skip the BFS layer-splitting step
    #[arg(long)]
    no_improve: bool,
    #[arg(long, env = "MINMAX_SEED", default_value_t = 0)]
    seed: u64,
    /// Attractiveness biases and weights as `b1,w1,b2,w2,b3,w3,b4,w4`
    #[arg(long)]
    weights: Option<String>,
    /// Iterations without improvement before stopping
    #[arg(long)]
    max_stall: Option<u64>,
    #[arg(long)]
    max_iter: Option<u64>,
    /// Initial annealing temperature
    #[arg(long)]
    temp0: Option<f64>,
    /// Annealing cooling factor
    #[arg(long)]
    cool: Option<f64>,
    #[arg(long)]
    tenure: Option<u64>,
    #[arg(long)]
    freq_penalty: Option<f64>,
    /// Count every move kind toward tabu edge frequency
    #[arg(long)]
    freq_all_moves: bool,
    /// Allow tabu edges whose move gives a new best
    #[arg(long)]
    aspiration: bool,
    /// Write 0 instead of the measured wall time
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Result CSV path (stdout if omitted)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Per-iteration trace CSV
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the final coloring as `u v color` lines
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Write the resolved configuration and instance metadata as JSON
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    edge_limit: usize,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    coloring: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML bench plan; other instance and solver flags are ignored when given
    #[arg(long)]
    plan: Option<PathBuf>,
    /// Instance files
    #[arg(short, long = "input")]
    inputs: Vec<PathBuf>,
    /// Comma-separated algorithms
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_value = "bfs,hc,sa,tabu")]
    algorithms: Vec<Algorithm>,
    /// Comma-separated initial solutions
    #[arg(long, value_delimiter = ',', value_parser = parse_init, default_value = "blank,bfs")]
    inits: Vec<InitKind>,
    #[arg(long, default_value_t = 1)]
    repetitions: u64,
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Run cells in parallel
    #[arg(long)]
    parallel: bool,
    #[command(flatten)]
    search: SearchArgs,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_init(s: &str) -> Result<InitKind, String> {
    s.parse()
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(anyhow::anyhow!("{msg}"))
}

impl SearchArgs {
    fn solver_config(&self) -> CliResult<SolverConfig> {
        let weights = match &self.weights {
            Some(s) => AttractivenessWeights::parse(s)?,
            None => AttractivenessWeights::default(),
        };
        let mut hc = HillClimbConfig { weights, ..Default::default() };
        let mut sa = AnnealConfig { weights, temp_initial: self.temp0, seed: self.seed, ..Default::default() };
        let mut tabu = TabuConfig {
            weights,
            tenure: self.tenure,
            seed: self.seed,
            freq_all_moves: self.freq_all_moves,
            aspiration: self.aspiration,
            ..Default::default()
        };
        if let Some(k) = self.cool {
            sa.cool = k;
        }
        if let Some(k) = self.freq_penalty {
            tabu.freq_penalty = k;
        }
        if let Some(n) = self.max_stall {
            hc.stall_limit = n;
            sa.stall_limit = n;
            tabu.stall_limit = n;
        }
        if let Some(n) = self.max_iter {
            hc.max_iterations = n;
            sa.max_iterations = n;
            tabu.max_iterations = n;
        }
        let cfg = SolverConfig {
            algorithm: self.algorithm,
            init: self.init,
            seed: self.seed,
            bfs: BfsConfig { start_vertex: self.start, improvement_step: !self.no_improve },
            hc,
            sa,
            tabu,
            timing: !self.no_timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn generate(a: GenerateArgs) -> CliResult<()> {
    let spec = GeneratorSpec { n: a.vertices, side: a.side, range: a.range, seed: a.seed, quasi: a.qudg && !a.udg };
    spec.validate()?;
    let path = cmd_generate(&spec, a.out.as_deref())?;
    println!("{}", path.display());
    Ok(())
}

fn solve(a: SolveArgs) -> CliResult<()> {
    let cfg = a.search.solver_config()?;
    let outputs = SolveOutputs { result: a.out, trace: a.trace, coloring: a.coloring, meta: a.meta };
    cmd_solve(&a.input, &cfg, &outputs)?;
    Ok(())
}

fn exact(a: ExactArgs) -> CliResult<()> {
    let r = cmd_exact(&a.input, a.edge_limit)?;
    println!("optimum {}", r.optimum);
    println!("lower_bound {}", r.lower_bound);
    println!("partitions_examined {}", r.partitions_examined);
    Ok(())
}

fn validate(a: ValidateArgs) -> CliResult<()> {
    let r = cmd_validate(&a.input, &a.coloring)?;
    println!(
        "{} objective {} colors {} edges {}/{}",
        if r.valid { "valid" } else { "invalid" },
        r.objective,
        r.colors,
        r.colored_edges,
        r.instance_edges
    );
    if !r.valid {
        return Err(CliError::Invariant("some vertex sees more than two colors".into()));
    }
    Ok(())
}

fn bench(a: BenchArgs) -> CliResult<()> {
    let plan = match &a.plan {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(anyhow::Error::new(e).context(format!("reading {}", p.display()))))?;
            let mut plan = BenchPlan::from_toml(&text)?;
            if a.out.is_some() {
                plan.output = a.out.clone();
            }
            plan.parallel |= a.parallel;
            plan
        }
        None => {
            if a.inputs.is_empty() {
                return Err(usage("bench needs --plan or at least one --input"));
            }
            let base = a.search.solver_config()?;
            let mut configs = Vec::new();
            for &algorithm in &a.algorithms {
                let inits: &[InitKind] = if algorithm == Algorithm::Bfs { &[InitKind::Bfs] } else { &a.inits };
                for &init in inits {
                    configs.push(SolverConfig { algorithm, init, ..base.clone() });
                }
            }
            BenchPlan {
                entries: a
                    .inputs
                    .iter()
                    .map(|p| BenchEntry {
                        instance: InstanceSpec::Path(p.clone()),
                        configs: configs.clone(),
                        repetitions: a.repetitions,
                    })
                    .collect(),
                output: a.out.clone(),
                parallel: a.parallel,
            }
        }
    };
    let out = cmd_bench(&plan)?;
    report_failures(&out, std::io::stderr().lock());
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.exit_code() == 0 => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Exact(a) => exact(a),
        Command::Validate(a) => validate(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("minmax: {e}");
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()) as u8)
}
