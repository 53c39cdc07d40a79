//! Per-iteration run records.

use std::fmt;
use std::str::FromStr;

use crate::coloring::EdgeColoring;
use crate::moves::MoveKind;

/// What happened in one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// The starting solution, recorded as iteration 0.
    Initial,
    Applied(MoveKind),
    /// No move was applied (none selected, or the selected one was undone).
    Idle,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Initial => f.write_str("init"),
            Step::Applied(k) => f.write_str(k.as_str()),
            Step::Idle => f.write_str("none"),
        }
    }
}

impl FromStr for Step {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "init" => Step::Initial,
            "none" => Step::Idle,
            "exchange" => Step::Applied(MoveKind::Exchange),
            "connect" => Step::Applied(MoveKind::Connect),
            "create" => Step::Applied(MoveKind::Create),
            "merge" => Step::Applied(MoveKind::Merge),
            other => return Err(format!("unknown move kind `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub iteration: u64,
    pub current_objective: usize,
    pub best_objective: usize,
    pub step: Step,
    pub edge: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub records: Vec<TraceRecord>,
    /// JSON echo of the configuration that produced the run.
    pub config: String,
    pub wall_time_ms: u64,
}

impl RunTrace {
    pub fn new(config: String) -> Self {
        RunTrace { records: Vec::new(), config, wall_time_ms: 0 }
    }

    pub fn push(&mut self, iteration: u64, current: usize, best: usize, step: Step, edge: Option<usize>) {
        self.records.push(TraceRecord {
            iteration,
            current_objective: current,
            best_objective: best,
            step,
            edge,
        });
    }

    pub fn start(&mut self, initial: &EdgeColoring<'_>) {
        let f = initial.max_count();
        self.push(0, f, f, Step::Initial, None);
    }

    /// Iterations performed, not counting the initial record.
    pub fn iterations(&self) -> u64 {
        self.records.last().map_or(0, |r| r.iteration)
    }

    pub fn applied_moves(&self) -> usize {
        self.records.iter().filter(|r| matches!(r.step, Step::Applied(_))).count()
    }

    pub fn best_objective(&self) -> Option<usize> {
        self.records.last().map(|r| r.best_objective)
    }
}

/// A finished run: the returned coloring and how it was reached.
#[derive(Debug, Clone)]
pub struct SolveResult<'g> {
    pub coloring: EdgeColoring<'g>,
    pub trace: RunTrace,
}
