//! Tabu search with an edge tabu list and long-term frequency penalties.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::hill_climb::prepare;
use crate::moves::{apply_move, best_move_on_edge, AttractivenessWeights, Move, MoveKind};
use crate::trace::{RunTrace, SolveResult, Step};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TabuConfig {
    /// Iterations an edge stays tabu after a move on it. `None` means
    /// `max(7, |E| / 50)`.
    pub tenure: Option<u64>,
    /// Penalty per unit of edge frequency.
    pub freq_penalty: f64,
    pub stall_limit: u64,
    pub max_iterations: u64,
    pub weights: AttractivenessWeights,
    pub seed: u64,
    /// Count every applied move toward the edge frequency, not just exchanges.
    pub freq_all_moves: bool,
    /// Allow a tabu edge when its move yields a new best objective.
    pub aspiration: bool,
}

impl Default for TabuConfig {
    fn default() -> Self {
        TabuConfig {
            tenure: None,
            freq_penalty: 0.2,
            stall_limit: 2000,
            max_iterations: 200_000,
            weights: AttractivenessWeights::default(),
            seed: 0,
            freq_all_moves: false,
            aspiration: false,
        }
    }
}

impl TabuConfig {
    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        if self.tenure == Some(0) {
            return Err(Error::InvalidConfig("tabu tenure must be at least 1".into()));
        }
        if !(self.freq_penalty >= 0.0 && self.freq_penalty.is_finite()) {
            return Err(Error::InvalidConfig("frequency penalty must be non-negative".into()));
        }
        if self.stall_limit == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("stall limit and iteration cap must be positive".into()));
        }
        Ok(())
    }

    pub fn effective_tenure(&self, edge_count: usize) -> u64 {
        self.tenure.unwrap_or_else(|| 7.max(edge_count as u64 / 50))
    }
}

/// Short- and long-term memory of the search.
#[derive(Debug, Clone)]
pub struct TabuState {
    /// Last iteration (inclusive) during which the edge is tabu.
    pub tabu_until: Vec<u64>,
    pub frequency: Vec<u64>,
}

impl TabuState {
    pub fn new(edge_count: usize) -> Self {
        TabuState { tabu_until: vec![0; edge_count], frequency: vec![0; edge_count] }
    }

    #[inline]
    pub fn is_tabu(&self, e: usize, iteration: u64) -> bool {
        iteration <= self.tabu_until[e]
    }
}

#[inline]
pub fn penalized_score(att: f64, freq_penalty: f64, frequency: u64) -> f64 {
    att - freq_penalty * frequency as f64
}

/// Each iteration sweeps the non-tabu edges and keeps the first edge whose
/// penalized score `att(e) - k * frequency(e)` strictly beats the running
/// value (which starts at 0). The chosen move is applied and its edge becomes
/// tabu for `tenure` iterations; exchanges bump the edge frequency. The best
/// coloring seen is returned.
pub fn tabu_search<'g>(init: EdgeColoring<'g>, cfg: &TabuConfig) -> Result<SolveResult<'g>> {
    cfg.validate()?;
    let started = Instant::now();
    let mut cur = prepare(init)?;
    let m = cur.graph().edge_count();
    let tenure = cfg.effective_tenure(m);
    let mut echo = *cfg;
    echo.tenure = Some(tenure);
    let mut trace = RunTrace::new(serde_json::to_string(&echo)?);
    trace.start(&cur);

    let mut state = TabuState::new(m);
    let mut best_f = cur.max_count();
    let mut best: Vec<Color> = cur.colors().to_vec();
    let mut stall = 0;
    let mut iter = 0;
    while iter < cfg.max_iterations && stall < cfg.stall_limit {
        iter += 1;
        let mut chosen: Option<Move> = None;
        let mut att_chosen = 0.0;
        for e in 0..m {
            let tabu = state.is_tabu(e, iter);
            if tabu && !cfg.aspiration {
                continue;
            }
            let Some(mv) = best_move_on_edge(&cur, e, &cfg.weights) else {
                continue;
            };
            let score = penalized_score(mv.attractiveness, cfg.freq_penalty, state.frequency[e]);
            if score > att_chosen && (!tabu || reaches_new_best(&mut cur, &mv, best_f)?) {
                chosen = Some(mv);
                att_chosen = score;
            }
        }
        let step = match chosen {
            Some(mv) => {
                debug_assert!(cfg.aspiration || !state.is_tabu(mv.edge, iter));
                let out = apply_move(&mut cur, &mv)?;
                state.tabu_until[mv.edge] = iter + tenure;
                if out.kind == MoveKind::Exchange || cfg.freq_all_moves {
                    state.frequency[mv.edge] += 1;
                }
                Step::Applied(out.kind)
            }
            None => Step::Idle,
        };
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

fn reaches_new_best(cur: &mut EdgeColoring<'_>, mv: &Move, best_f: usize) -> Result<bool> {
    let cp = cur.begin();
    let out = apply_move(cur, mv);
    cur.rollback(cp);
    Ok(out?.objective_after < best_f)
}
