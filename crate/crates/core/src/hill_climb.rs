//! Best-improvement hill climbing over the move neighborhood.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::moves::{apply_move, best_move, AttractivenessWeights};
use crate::trace::{RunTrace, SolveResult, Step};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HillClimbConfig {
    pub weights: AttractivenessWeights,
    /// Consecutive iterations without a strict objective improvement.
    pub stall_limit: u64,
    pub max_iterations: u64,
}

impl Default for HillClimbConfig {
    fn default() -> Self {
        HillClimbConfig { weights: AttractivenessWeights::default(), stall_limit: 1000, max_iterations: 1_000_000 }
    }
}

impl HillClimbConfig {
    pub fn validate(&self) -> Result<()> {
        self.weights.validate()?;
        if self.stall_limit == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("stall limit and iteration cap must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn prepare<'g>(mut init: EdgeColoring<'g>) -> Result<EdgeColoring<'g>> {
    if !init.is_valid_qcoloring(2) {
        return Err(Error::InvalidColoring("initial solution is not a 2-coloring".into()));
    }
    // moves assume every color is one connected component
    init.normalize_components();
    init.renumber_colors();
    Ok(init)
}

/// Repeatedly applies the most attractive move.
///
/// A move is kept only if its attractiveness is positive and it does not
/// worsen the objective; otherwise it is rolled back. An edge that was
/// rolled back or moved without strict improvement is not considered again
/// until the objective next improves, which rules out cycling on plateaus.
/// Stops when no candidate with positive attractiveness remains, or after
/// `stall_limit` iterations without improvement.
pub fn hill_climb<'g>(init: EdgeColoring<'g>, cfg: &HillClimbConfig) -> Result<SolveResult<'g>> {
    cfg.validate()?;
    let started = Instant::now();
    let mut cur = prepare(init)?;
    let m = cur.graph().edge_count();
    let mut trace = RunTrace::new(serde_json::to_string(cfg)?);
    trace.start(&cur);

    let mut excluded = vec![false; m];
    let mut stall = 0;
    let mut iter = 0;
    while iter < cfg.max_iterations && stall < cfg.stall_limit {
        let Some(mv) = best_move(&cur, &cfg.weights, Some(&|e| !excluded[e])) else {
            break;
        };
        if mv.attractiveness <= 0.0 {
            break;
        }
        iter += 1;
        let cp = cur.begin();
        let out = apply_move(&mut cur, &mv)?;
        if out.delta() > 0 {
            cur.rollback(cp);
            excluded[mv.edge] = true;
            stall += 1;
            trace.push(iter, cur.max_count(), cur.max_count(), Step::Idle, Some(mv.edge));
            continue;
        }
        cur.commit();
        if out.delta() < 0 {
            excluded.iter_mut().for_each(|x| *x = false);
            stall = 0;
        } else {
            excluded[mv.edge] = true;
            stall += 1;
        }
        cur.maybe_renumber();
        trace.push(iter, cur.max_count(), cur.max_count(), Step::Applied(out.kind), Some(mv.edge));
    }
    cur.renumber_colors();
    trace.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(SolveResult { coloring: cur, trace })
}
