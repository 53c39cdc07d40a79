//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Set `MINMAX_DIMACS_DIR` to a directory holding `dsjc250.5.col`,
//! `dsjc500.1.col`, `r250.5.col` and `le450_25c.col` for criterion 7
//! (defaults to `data/dimacs` at the workspace root).

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use minmax_cli::{run_solve, SolverConfig};
use minmax_coloring::anneal::{anneal, AnnealConfig};
use minmax_coloring::bfs::{bfs_coloring, BfsConfig};
use minmax_coloring::coloring::{lower_bound_max_degree, EdgeColoring};
use minmax_coloring::exact::{brute_force_optimum, DEFAULT_EDGE_LIMIT};
use minmax_coloring::generators::{generate, GeneratorSpec, DEFAULT_SIDE};
use minmax_coloring::graph::{named, Graph};
use minmax_coloring::hill_climb::{hill_climb, HillClimbConfig};
use minmax_coloring::io::{parse_dimacs, read_result_csv, read_trace, Algorithm, InitKind};
use minmax_coloring::moves::{applicable_moves, apply_move, MoveKind};
use minmax_coloring::reference;
use minmax_coloring::tabu::{tabu_search, TabuConfig};
use minmax_coloring::trace::{Step, TraceRecord};
use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_graph(rng: &mut Xoshiro256PlusPlus, max_n: usize, max_edges: usize) -> Graph {
    let n = rng.random_range(2..=max_n);
    let p: f64 = rng.random_range(0.05..0.6);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if edges.len() < max_edges && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A valid coloring reached by random moves from the blank one.
fn random_coloring<'g>(g: &'g Graph, rng: &mut Xoshiro256PlusPlus, steps: usize) -> EdgeColoring<'g> {
    let mut c = EdgeColoring::blank(g);
    c.normalize_components();
    for _ in 0..steps {
        if g.edge_count() == 0 {
            break;
        }
        let e = rng.random_range(0..g.edge_count());
        let moves = applicable_moves(&c, e);
        if !moves.is_empty() {
            let m = moves[rng.random_range(0..moves.len())];
            apply_move(&mut c, &m).unwrap();
        }
    }
    c
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
    let (mut trials, mut failures) = (0, 0);
    while trials < 10_000 {
        let g = random_graph(&mut rng, 30, 120);
        if g.edge_count() == 0 {
            continue;
        }
        let steps = rng.random_range(0..60);
        let mut c = random_coloring(&g, &mut rng, steps);
        let candidates: Vec<_> = (0..g.edge_count()).flat_map(|e| applicable_moves(&c, e)).collect();
        if candidates.is_empty() {
            continue;
        }
        let m = candidates[rng.random_range(0..candidates.len())];
        apply_move(&mut c, &m).unwrap();
        trials += 1;
        if !c.is_valid_qcoloring(2) {
            failures += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    outcome(failures == 0 && secs < 60.0, format!("{trials} trials, {failures} invalid, {secs:.1}s (limit 60s)"))
}

/// Every assignment of colors 0..m to the m edges, checked at the leaves.
fn naive_optimum(g: &Graph) -> usize {
    let m = g.edge_count();
    if m == 0 {
        return 0;
    }
    let mut colors = vec![0usize; m];
    let mut best = usize::MAX;
    loop {
        let mut ok = true;
        for v in 0..g.vertex_count() {
            let seen: HashSet<usize> = g.neighbors(v).iter().map(|&(_, e)| colors[e]).collect();
            if seen.len() > 2 {
                ok = false;
                break;
            }
        }
        if ok {
            let mut count = vec![0usize; m];
            for &c in &colors {
                count[c] += 1;
            }
            best = best.min(*count.iter().max().unwrap());
        }
        let mut i = 0;
        loop {
            if i == m {
                return best;
            }
            colors[i] += 1;
            if colors[i] < m {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<_> = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
        .into_iter()
        .filter(|_| n > 0)
        .collect()
}

/// All connected graphs with 1..=max_m edges up to isomorphism, grown one
/// edge at a time.
fn connected_graphs(max_m: usize) -> Vec<Graph> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=max_m + 1).map(permutations).collect();
    let mut level: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::from([(2, vec![(0, 1)])]);
    let mut all = Vec::new();
    for _ in 1..max_m {
        let mut next = HashSet::new();
        for (n, edges) in &level {
            let n = *n;
            let mut grow = |k: usize, e: Vec<(usize, usize)>| {
                next.insert((k, canonical(k, &e, &perms[k])));
            };
            for u in 0..n {
                for v in u + 1..n {
                    if !edges.contains(&(u, v)) {
                        let mut e = edges.clone();
                        e.push((u, v));
                        grow(n, e);
                    }
                }
                let mut e = edges.clone();
                e.push((u, n));
                grow(n + 1, e);
            }
        }
        all.extend(level.drain());
        level = next;
    }
    all.extend(level);
    all.sort();
    all.into_iter().map(|(n, e)| Graph::new(n, e).unwrap()).collect()
}

fn heuristic_objectives(g: &Graph) -> Vec<(&'static str, usize)> {
    let bfs = bfs_coloring(g, &BfsConfig::default()).unwrap().coloring;
    let hc_cfg = HillClimbConfig::default();
    let sa_cfg = AnnealConfig { stall_limit: 200, ..Default::default() };
    let ts_cfg = TabuConfig { stall_limit: 200, ..Default::default() };
    vec![
        ("bfs", bfs.max_count()),
        ("hc", hill_climb(EdgeColoring::blank(g), &hc_cfg).unwrap().coloring.max_count()),
        ("hc'", hill_climb(bfs.clone(), &hc_cfg).unwrap().coloring.max_count()),
        ("sa", anneal(EdgeColoring::blank(g), &sa_cfg).unwrap().coloring.max_count()),
        ("sa'", anneal(bfs.clone(), &sa_cfg).unwrap().coloring.max_count()),
        ("ts", tabu_search(EdgeColoring::blank(g), &ts_cfg).unwrap().coloring.max_count()),
        ("ts'", tabu_search(bfs, &ts_cfg).unwrap().coloring.max_count()),
    ]
}

fn tiny_corpus() -> (Vec<Graph>, usize) {
    let mut graphs = connected_graphs(6);
    let exhaustive = graphs.len();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(2);
    while graphs.len() < exhaustive + 500 {
        let g = random_graph(&mut rng, 11, 10).largest_connected_component().graph;
        if g.edge_count() > 0 {
            graphs.push(g);
        }
    }
    (graphs, exhaustive)
}

fn criterion_2(corpus: &[Graph], exhaustive: usize) -> Outcome {
    let started = Instant::now();
    let mut notes = Vec::new();
    // connected graphs by edge count: 1, 1, 3, 5, 12, 30
    let mut by_m = [0usize; 7];
    for g in &corpus[..exhaustive] {
        by_m[g.edge_count()] += 1;
    }
    let census_ok = by_m[1..] == [1, 1, 3, 5, 12, 30];
    if !census_ok {
        notes.push(format!("graph census {:?}", &by_m[1..]));
    }
    let anchors = [
        ("K3", named::complete(3), 1),
        ("K1,3", named::star(3), 2),
        ("K4", named::complete(4), 3),
        ("P4", named::path(4), 1),
    ];
    let mut anchors_ok = true;
    for (name, g, want) in &anchors {
        let naive = naive_optimum(g);
        let fast = brute_force_optimum(g, DEFAULT_EDGE_LIMIT).unwrap().optimum;
        if naive != *want || fast != *want {
            anchors_ok = false;
            notes.push(format!("{name}: naive {naive}, oracle {fast}, expected {want}"));
        }
    }
    let (mut disagree, mut below, mut hc_hits) = (0, 0, 0);
    for (i, g) in corpus.iter().enumerate() {
        let opt = brute_force_optimum(g, DEFAULT_EDGE_LIMIT).unwrap().optimum;
        if i < exhaustive && naive_optimum(g) != opt {
            disagree += 1;
        }
        let objs = heuristic_objectives(g);
        below += objs.iter().filter(|(_, f)| *f < opt).count();
        if objs[1].1 == opt {
            hc_hits += 1;
        }
    }
    let rate = hc_hits as f64 / corpus.len() as f64;
    let secs = started.elapsed().as_secs_f64();
    outcome(
        census_ok && anchors_ok && disagree == 0 && below == 0 && rate >= 0.8 && secs < 300.0,
        format!(
            "{} graphs ({exhaustive} exhaustive), oracle/naive disagreements {disagree}, heuristic below optimum {below}, \
             hill climbing from blank optimal on {:.1}% (floor 80%), anchors {}, {secs:.1}s{}",
            corpus.len(),
            rate * 100.0,
            if anchors_ok { "ok" } else { "wrong" },
            if notes.is_empty() { String::new() } else { format!(" [{}]", notes.join("; ")) }
        ),
    )
}

fn mid_corpus() -> Vec<GeneratorSpec> {
    vec![
        GeneratorSpec::udg(100, 400.0, 11),
        GeneratorSpec::qudg(100, 600.0, 12),
        GeneratorSpec::udg(500, 140.0, 13),
        GeneratorSpec::qudg(500, 180.0, 14),
        GeneratorSpec::udg(1000, 140.0, 15),
    ]
}

fn criterion_3(tiny: &[Graph]) -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for g in tiny {
        let lb = lower_bound_max_degree(g);
        for (_, f) in heuristic_objectives(g) {
            checked += 1;
            if f < lb {
                violations += 1;
            }
        }
    }
    for spec in mid_corpus() {
        let (g, meta) = generate(&spec).unwrap();
        for alg in Algorithm::ALL {
            for init in [InitKind::Blank, InitKind::Bfs] {
                let cfg = SolverConfig {
                    algorithm: alg,
                    init,
                    seed: 3,
                    sa: AnnealConfig { stall_limit: 300, ..Default::default() },
                    tabu: TabuConfig { stall_limit: 300, ..Default::default() },
                    timing: false,
                    ..Default::default()
                };
                let row = run_solve(&g, &meta, &cfg).unwrap().row;
                checked += 1;
                if row.objective < row.max_degree.div_ceil(2) {
                    violations += 1;
                }
            }
        }
    }
    outcome(violations == 0, format!("{checked} solver outputs, {violations} below the degree bound"))
}

/// Least-squares slope of log y against log x.
fn log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// UDG with roughly constant density: the square grows with `n`.
fn scaled_udg(n: usize, seed: u64) -> Graph {
    let side = DEFAULT_SIDE * (n as f64 / 1000.0).sqrt();
    let spec = GeneratorSpec { n, side, range: 180.0, seed, quasi: false };
    generate(&spec).unwrap().0.largest_connected_component().graph
}

/// Fastest of several timed runs, each repeated until it takes at least 20ms.
fn time_min<F: FnMut()>(mut f: F) -> f64 {
    let mut reps = 1u32;
    loop {
        let t = Instant::now();
        for _ in 0..reps {
            f();
        }
        if t.elapsed() >= Duration::from_millis(20) {
            break;
        }
        reps *= 2;
    }
    (0..5)
        .map(|_| {
            let t = Instant::now();
            for _ in 0..reps {
                f();
            }
            t.elapsed().as_secs_f64() / reps as f64
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let mut points = Vec::new();
    let mut sizes = Vec::new();
    for n in [150, 300, 600, 1200, 2500, 5000, 10_000, 14_000] {
        let g = scaled_udg(n, 21);
        let t = time_min(|| {
            bfs_coloring(&g, &BfsConfig::default()).unwrap();
        });
        points.push(((g.vertex_count() + g.edge_count()) as f64, t));
        sizes.push(g.edge_count());
    }
    let slope = log_slope(&points);
    let secs = started.elapsed().as_secs_f64();
    outcome(
        (slope - 1.0).abs() <= 0.25 && secs < 120.0,
        format!(
            "log-log slope {slope:.3} (target 1.0 +/- 0.25) over {}..{} edges, {secs:.1}s",
            sizes[0],
            sizes[sizes.len() - 1]
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut tabu_pts = Vec::new();
    let mut sa_pts = Vec::new();
    for n in [250, 500, 1000, 2000, 4000] {
        let g = scaled_udg(n, 31);
        let init = bfs_coloring(&g, &BfsConfig::default()).unwrap().coloring;
        let iters = 40;
        let ts_cfg = TabuConfig { max_iterations: iters, stall_limit: u64::MAX, ..Default::default() };
        let sa_cfg = AnnealConfig { max_iterations: iters, stall_limit: u64::MAX, ..Default::default() };
        let per_iter = |r: &minmax_coloring::SolveResult<'_>, t: f64| t / r.trace.iterations().max(1) as f64;
        let mut t_ts = f64::INFINITY;
        let mut t_sa = f64::INFINITY;
        for _ in 0..3 {
            let t = Instant::now();
            let r = tabu_search(init.clone(), &ts_cfg).unwrap();
            t_ts = t_ts.min(per_iter(&r, t.elapsed().as_secs_f64()));
            let t = Instant::now();
            let r = anneal(init.clone(), &sa_cfg).unwrap();
            t_sa = t_sa.min(per_iter(&r, t.elapsed().as_secs_f64()));
        }
        tabu_pts.push((g.edge_count() as f64, t_ts));
        sa_pts.push((g.edge_count() as f64, t_sa));
    }
    let (s_ts, s_sa) = (log_slope(&tabu_pts), log_slope(&sa_pts));
    outcome(
        s_ts <= 1.3 && s_sa <= 1.3,
        format!("iteration-time slope vs |E|: tabu {s_ts:.3}, sa {s_sa:.3} (limit 1.3)"),
    )
}

fn criterion_6() -> Outcome {
    let started = Instant::now();
    let specs = [
        GeneratorSpec::udg(100, 400.0, 101),
        GeneratorSpec::qudg(100, 600.0, 102),
        GeneratorSpec::udg(500, 180.0, 103),
        GeneratorSpec::qudg(500, 180.0, 104),
        GeneratorSpec::udg(500, 220.0, 105),
        GeneratorSpec::qudg(500, 220.0, 106),
        GeneratorSpec::udg(1000, 140.0, 107),
        GeneratorSpec::qudg(1000, 140.0, 108),
        GeneratorSpec::udg(1000, 180.0, 109),
        GeneratorSpec::qudg(1000, 220.0, 110),
    ];
    let mut gains = Vec::new();
    let mut worse = 0;
    for spec in specs {
        let (g, meta) = generate(&spec).unwrap();
        let base = SolverConfig { seed: spec.seed, timing: false, ..Default::default() };
        let bfs = run_solve(&g, &meta, &SolverConfig { algorithm: Algorithm::Bfs, ..base.clone() }).unwrap().row;
        let ts = run_solve(&g, &meta, &SolverConfig { algorithm: Algorithm::Tabu, init: InitKind::Bfs, ..base })
            .unwrap()
            .row;
        if ts.objective > bfs.objective {
            worse += 1;
        }
        gains.push(1.0 - ts.objective as f64 / bfs.objective as f64);
    }
    let mean = gains.iter().sum::<f64>() / gains.len() as f64;
    let best = gains.iter().copied().fold(0.0, f64::max);
    let secs = started.elapsed().as_secs_f64();
    outcome(
        mean >= 0.10 && worse == 0 && secs < 1800.0,
        format!(
            "tabu from BFS improves BFS by {:.1}% on average (floor 10%), best {:.1}%, {worse} worse, {secs:.1}s",
            mean * 100.0,
            best * 100.0
        ),
    )
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).ancestors().nth(2).unwrap().to_path_buf()
}

fn criterion_7() -> Outcome {
    let dir = std::env::var_os("MINMAX_DIMACS_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| workspace_root().join("data").join("dimacs"));
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["dsjc250.5", "dsjc500.1", "r250.5", "le450_25c"] {
        let want = reference::lookup(name).unwrap();
        let path = dir.join(format!("{name}.col"));
        let Ok(file) = fs::File::open(&path) else {
            ok = false;
            notes.push(format!("{name}: {} not found", path.display()));
            continue;
        };
        match parse_dimacs(std::io::BufReader::new(file), name) {
            Ok((_, meta)) => {
                let got = (meta.vertex_count, meta.edge_count, meta.max_degree);
                let exp = (want.vertices, want.edges, want.max_degree);
                if got != exp {
                    ok = false;
                }
                notes.push(format!("{name}: {got:?} vs {exp:?}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn minmax(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_minmax")).args(args).output().expect("minmax runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Length and relative drop of the longest non-increasing prefix.
fn decrease_phase(t: &[TraceRecord]) -> (usize, f64) {
    let len = t.windows(2).take_while(|w| w[1].current_objective <= w[0].current_objective).count();
    let start = t[0].current_objective as f64;
    (len, (start - t[len].current_objective as f64) / start)
}

fn criterion_8(dir: &Path) -> Outcome {
    let g = dir.join("qudg1000.220.col");
    let gen = minmax(&["generate", "--qudg", "-n", "1000", "--range", "220", "--seed", "1", "--out", s(&g)]);
    if !gen.status.success() {
        return outcome(false, "instance generation failed");
    }
    let run = |alg: &str, extra: &[&str]| -> Option<Vec<TraceRecord>> {
        let trace = dir.join(format!("fig-{alg}.csv"));
        let res = dir.join(format!("fig-{alg}-result.csv"));
        let mut args = vec!["solve", "-i", s(&g), "--algorithm", alg, "--init", "blank", "--seed", "1"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--trace", s(&trace), "-o", s(&res)]);
        minmax(&args).status.success().then(|| read_trace(fs::File::open(&trace).ok()?).ok()).flatten()
    };
    let Some(sa) = run("sa", &[]) else { return outcome(false, "sa run failed") };
    let Some(ts) = run("tabu", &["--weights", "0,1,0,1,0,0.5,0.3,0.25"]) else {
        return outcome(false, "tabu run failed");
    };
    let (sa_len, sa_drop) = decrease_phase(&sa);
    let (ts_len, ts_drop) = decrease_phase(&ts);
    let phase_ok = |len: usize, drop: f64| len >= 100 && drop >= 0.25;
    let is_jump_kind = |r: &TraceRecord| matches!(r.step, Step::Applied(MoveKind::Connect | MoveKind::Merge));
    let spikes = ts.windows(2).filter(|w| w[1].current_objective > w[0].current_objective && is_jump_kind(&w[1])).count();
    let stray = ts.windows(2).filter(|w| w[1].current_objective > w[0].current_objective + 1 && !is_jump_kind(&w[1])).count();
    outcome(
        phase_ok(sa_len, sa_drop) && phase_ok(ts_len, ts_drop) && spikes >= 1 && stray == 0,
        format!(
            "decrease phase sa {sa_len} iters -{:.0}%, tabu {ts_len} iters -{:.0}%; tabu connect/merge spikes {spikes}, \
             other jumps > 1: {stray}",
            sa_drop * 100.0,
            ts_drop * 100.0
        ),
    )
}

fn criterion_9(dir: &Path) -> Outcome {
    let g = dir.join("udg300.500.col");
    if !minmax(&["generate", "-n", "300", "--range", "500", "--seed", "9", "--out", s(&g)]).status.success() {
        return outcome(false, "instance generation failed");
    }
    let mut mismatches = Vec::new();
    for alg in ["bfs", "hc", "sa", "tabu"] {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let res = dir.join(format!("det-{alg}-{k}.csv"));
            let trace = dir.join(format!("det-{alg}-{k}.trace.csv"));
            let meta = dir.join(format!("det-{alg}-{k}.json"));
            let args = [
                "solve", "-i", s(&g), "--algorithm", alg, "--init", "blank", "--seed", "9", "--no-timing", "-o",
                s(&res), "--trace", s(&trace), "--meta", s(&meta),
            ];
            if !minmax(&args).status.success() {
                return outcome(false, format!("{alg} run failed"));
            }
            let rows = read_result_csv(fs::File::open(&res).unwrap()).unwrap();
            outputs.push((fs::read(&res).unwrap(), fs::read(&trace).unwrap(), fs::read(&meta).unwrap(), rows));
        }
        if outputs[0].0 != outputs[1].0 || outputs[0].1 != outputs[1].1 || outputs[0].2 != outputs[1].2 {
            mismatches.push(alg);
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "bfs, hc, sa, tabu: result, trace and meta files byte-identical across reruns".to_string()
        } else {
            format!("differing outputs for {mismatches:?}")
        },
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let (tiny, exhaustive) = tiny_corpus();

    let criteria: Vec<(&str, Check<'_>)> = vec![
        ("1 validity closure", Box::new(criterion_1)),
        ("2 oracle agreement", Box::new(|| criterion_2(&tiny, exhaustive))),
        ("3 lower-bound sanity", Box::new(|| criterion_3(&tiny))),
        ("4 BFS complexity", Box::new(criterion_4)),
        ("5 iteration cost", Box::new(criterion_5)),
        ("6 tabu improves BFS", Box::new(criterion_6)),
        ("7 DIMACS structure", Box::new(criterion_7)),
        ("8 trace shape", Box::new(|| criterion_8(tmp.path()))),
        ("9 determinism", Box::new(|| criterion_9(tmp.path()))),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        let o = check();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(*name);
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    drop(criteria);
    tmp.close().ok();
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
