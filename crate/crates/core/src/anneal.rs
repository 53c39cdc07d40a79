//! Simulated annealing over the move neighborhood with exponential cooling.

use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::hill_climb::prepare;
use crate::moves::{apply_move, best_move_on_edge, AttractivenessWeights, Move};
use crate::trace::{RunTrace, SolveResult, Step};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealConfig {
    /// Starting temperature. `None` uses the mean positive attractiveness of
    /// the initial neighborhood.
    pub temp_initial: Option<f64>,
    /// Geometric cooling factor, `T <- k * T`.
    pub cool: f64,
    pub stall_limit: u64,
    pub max_iterations: u64,
    pub seed: u64,
    pub weights: AttractivenessWeights,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            temp_initial: None,
            cool: 0.999,
            stall_limit: 2000,
            max_iterations: 200_000,
            seed: 0,
            weights: AttractivenessWeights::default(),
        }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        if let Some(t) = self.temp_initial {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidConfig(format!("initial temperature must be positive, got {t}")));
            }
        }
        if !(self.cool > 0.0 && self.cool < 1.0) {
            return Err(Error::InvalidConfig(format!("cooling factor must lie in (0, 1), got {}", self.cool)));
        }
        if self.stall_limit == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("stall limit and iteration cap must be positive".into()));
        }
        Ok(())
    }
}

/// Probability of adopting an edge whose attractiveness `att` does not beat
/// the running choice `chosen`.
#[inline]
pub fn acceptance_probability(att: f64, chosen: f64, temp: f64) -> f64 {
    ((att - chosen) / temp).exp()
}

/// Mean of the positive per-edge best attractiveness values, or 1.0.
pub fn mean_positive_attractiveness(coloring: &EdgeColoring<'_>, w: &AttractivenessWeights) -> f64 {
    let (sum, n) = (0..coloring.graph().edge_count())
        .filter_map(|e| best_move_on_edge(coloring, e, w))
        .map(|m| m.attractiveness)
        .filter(|&a| a > 0.0)
        .fold((0.0, 0usize), |(s, n), a| (s + a, n + 1));
    if n == 0 {
        1.0
    } else {
        sum / n as f64
    }
}

/// Each iteration sweeps all edges in index order, keeping a running choice
/// that starts empty with attractiveness 0. An edge whose best move beats the
/// running value is always adopted; otherwise it is adopted with probability
/// `exp((att - att_chosen) / T)`. The final choice is applied whether or not
/// it worsens the objective, then the temperature cools. The best coloring
/// seen is returned.
pub fn anneal<'g>(init: EdgeColoring<'g>, cfg: &AnnealConfig) -> Result<SolveResult<'g>> {
    cfg.validate()?;
    let started = Instant::now();
    let mut cur = prepare(init)?;
    let m = cur.graph().edge_count();
    let mut temp = cfg.temp_initial.unwrap_or_else(|| mean_positive_attractiveness(&cur, &cfg.weights));
    let mut echo = *cfg;
    echo.temp_initial = Some(temp);
    let mut trace = RunTrace::new(serde_json::to_string(&echo)?);
    trace.start(&cur);

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    let mut best_f = cur.max_count();
    let mut best: Vec<Color> = cur.colors().to_vec();
    let mut stall = 0;
    let mut iter = 0;
    while iter < cfg.max_iterations && stall < cfg.stall_limit {
        iter += 1;
        let mut chosen: Option<Move> = None;
        let mut att_chosen = 0.0;
        for e in 0..m {
            let Some(mv) = best_move_on_edge(&cur, e, &cfg.weights) else {
                continue;
            };
            let att = mv.attractiveness;
            if att > att_chosen {
                chosen = Some(mv);
                att_chosen = att;
            } else {
                let p = acceptance_probability(att, att_chosen, temp);
                if p > 0.0 && rng.random::<f64>() < p {
                    chosen = Some(mv);
                    att_chosen = att;
                }
            }
        }
        let step = match chosen {
            Some(mv) => Step::Applied(apply_move(&mut cur, &mv)?.kind),
            None => Step::Idle,
        };
        temp *= cfg.cool;
        if cur.max_count() < best_f {
            best_f = cur.max_count();
            best.copy_from_slice(cur.colors());
            stall = 0;
        } else {
            stall += 1;
        }
        trace.push(iter, cur.max_count(), best_f, step, chosen.map(|mv| mv.edge));
        cur.maybe_renumber();
    }
    let mut out = EdgeColoring::from_colors(cur.graph(), best)?;
    out.renumber_colors();
    trace.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(SolveResult { coloring: out, trace })
}
