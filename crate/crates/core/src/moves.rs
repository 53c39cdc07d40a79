//! The four-move neighborhood over valid 2-colorings.
//!
//! Each move is anchored at one edge `e = (u, v)` with color `ec` and is
//! applicable depending on the color classes of its endpoints:
//!
//! | kind     | endpoint classes                   | effect                                   |
//! |----------|------------------------------------|------------------------------------------|
//! | Exchange | one ⊆ other, union `{ec, o}`       | `e` takes color `o`                      |
//! | Connect  | `{ec, c1}`, `{ec, c2}`, `c1 ≠ c2`  | `e`, `c1` and `c2` join one fresh color  |
//! | Create   | `{ec}`, `{ec}`                     | `e` takes a fresh color                  |
//! | Merge    | some endpoint `{ec, o}`            | components of `ec` and `o` join a fresh color |
//!
//! Moves never add a third color at any vertex, so applying any applicable
//! move to a valid 2-coloring yields a valid 2-coloring. When the edge's old
//! color loses connectivity, the detached fragment gets a fresh color.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Exchange,
    Connect,
    Create,
    Merge,
}

impl MoveKind {
    pub const ALL: [MoveKind; 4] = [MoveKind::Exchange, MoveKind::Connect, MoveKind::Create, MoveKind::Merge];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Exchange => "exchange",
            MoveKind::Connect => "connect",
            MoveKind::Create => "create",
            MoveKind::Merge => "merge",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoveAction {
    Exchange { target: Color },
    /// `first` is the non-edge color at the lower endpoint, `second` at the upper one.
    Connect { first: Color, second: Color },
    Create,
    Merge { other: Color, anchor: usize },
}

/// A candidate recoloring anchored at one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Move {
    pub edge: usize,
    pub edge_color: Color,
    pub action: MoveAction,
    pub attractiveness: f64,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self.action {
            MoveAction::Exchange { .. } => MoveKind::Exchange,
            MoveAction::Connect { .. } => MoveKind::Connect,
            MoveAction::Create => MoveKind::Create,
            MoveAction::Merge { .. } => MoveKind::Merge,
        }
    }

    /// The edge color followed by the other colors the move touches.
    pub fn involved_colors(&self) -> SmallVec<[Color; 3]> {
        let mut out = SmallVec::new();
        out.push(self.edge_color);
        match self.action {
            MoveAction::Exchange { target } => out.push(target),
            MoveAction::Connect { first, second } => {
                out.push(first);
                out.push(second);
            }
            MoveAction::Create => {}
            MoveAction::Merge { other, .. } => out.push(other),
        }
        out
    }
}

/// Offsets `b` and scale factors `w` of the four attractiveness formulas,
/// indexed Exchange, Connect, Create, Merge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AttractivenessWeights {
    pub b: [f64; 4],
    pub w: [f64; 4],
}

impl Default for AttractivenessWeights {
    fn default() -> Self {
        AttractivenessWeights { b: [0.0; 4], w: [1.0, 1.0, 0.5, 0.25] }
    }
}

impl AttractivenessWeights {
    /// Parses `b1,w1,b2,w2,b3,w3,b4,w4`.
    pub fn parse(s: &str) -> Result<Self> {
        let vals: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidConfig(format!("weights: {e}")))?;
        if vals.len() != 8 {
            return Err(Error::InvalidConfig(format!("weights: expected 8 values, got {}", vals.len())));
        }
        let w = AttractivenessWeights {
            b: [vals[0], vals[2], vals[4], vals[6]],
            w: [vals[1], vals[3], vals[5], vals[7]],
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.iter().chain(self.w.iter()).all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidConfig("weights must be finite".into()))
        }
    }
}

impl fmt::Display for AttractivenessWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (b, w) = (self.b, self.w);
        write!(f, "{},{},{},{},{},{},{},{}", b[0], w[0], b[1], w[1], b[2], w[2], b[3], w[3])
    }
}

type Moves = SmallVec<[Move; 4]>;

/// Applicable moves on edge `e`, in kind order. Attractiveness is left at 0.
pub fn applicable_moves(coloring: &EdgeColoring<'_>, e: usize) -> Moves {
    let mut out = Moves::new();
    let (u, v) = coloring.graph().endpoints(e);
    let ec = coloring.color(e);
    let cu = coloring.class_entries(u);
    let cv = coloring.class_entries(v);
    let other_u = other_color(cu, ec);
    let other_v = other_color(cv, ec);
    // both classes contain ec, so each has at most one other color in a 2-coloring
    if cu.len() > 2 || cv.len() > 2 {
        return out;
    }
    let mk = |action| Move { edge: e, edge_color: ec, action, attractiveness: 0.0 };
    match (other_u, other_v) {
        (Some(a), Some(b)) if a == b => out.push(mk(MoveAction::Exchange { target: a })),
        (Some(a), None) | (None, Some(a)) => out.push(mk(MoveAction::Exchange { target: a })),
        (Some(a), Some(b)) => out.push(mk(MoveAction::Connect { first: a, second: b })),
        (None, None) => {
            // recoloring a singleton class alone would leave the partition unchanged
            if coloring.count(ec) >= 2 {
                out.push(mk(MoveAction::Create));
            }
        }
    }
    if let Some(o) = other_u {
        out.push(mk(MoveAction::Merge { other: o, anchor: u }));
    } else if let Some(o) = other_v {
        out.push(mk(MoveAction::Merge { other: o, anchor: v }));
    }
    out
}

#[inline]
fn other_color(cls: &[(Color, u32)], ec: Color) -> Option<Color> {
    cls.iter().map(|&(c, _)| c).find(|&c| c != ec)
}

/// Attractiveness of `m` under the current objective `f`.
pub fn attractiveness(coloring: &EdgeColoring<'_>, m: &Move, w: &AttractivenessWeights) -> f64 {
    let f = coloring.max_count().max(1) as f64;
    let count = |c: Color| coloring.count(c) as f64;
    let ec = count(m.edge_color);
    match m.action {
        MoveAction::Exchange { target } => w.b[0] + w.w[0] * ec * (f - count(target)) / f,
        MoveAction::Connect { first, second } => {
            w.b[1] + w.w[1] * ec * (f - count(first) - count(second) - 1.0) / f
        }
        MoveAction::Create => w.b[2] + w.w[2] * ec * (1.0 / f),
        MoveAction::Merge { other, .. } => w.b[3] + w.w[3] * (f - ec - count(other)) / f,
    }
}

/// Highest-attractiveness move on one edge; ties go to the earlier kind.
pub fn best_move_on_edge(coloring: &EdgeColoring<'_>, e: usize, w: &AttractivenessWeights) -> Option<Move> {
    let mut best: Option<Move> = None;
    for mut m in applicable_moves(coloring, e) {
        m.attractiveness = attractiveness(coloring, &m, w);
        if best.is_none_or(|b| m.attractiveness > b.attractiveness) {
            best = Some(m);
        }
    }
    best
}

/// Global argmax over edges accepted by `filter`; ties go to the lower edge
/// index, then to the earlier kind.
pub fn best_move(
    coloring: &EdgeColoring<'_>,
    w: &AttractivenessWeights,
    filter: Option<&dyn Fn(usize) -> bool>,
) -> Option<Move> {
    let mut best: Option<Move> = None;
    for e in 0..coloring.graph().edge_count() {
        if filter.is_some_and(|f| !f(e)) {
            continue;
        }
        if let Some(m) = best_move_on_edge(coloring, e, w) {
            if best.is_none_or(|b| m.attractiveness > b.attractiveness) {
                best = Some(m);
            }
        }
    }
    best
}

/// What happened when a move was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveOutcome {
    pub kind: MoveKind,
    pub objective_before: usize,
    pub objective_after: usize,
    /// Fragments split off into fresh colors.
    pub split_colors: usize,
}

impl MoveOutcome {
    pub fn delta(&self) -> isize {
        self.objective_after as isize - self.objective_before as isize
    }
}

/// Applies `m` in place. Fails with [`Error::StaleMove`] if `m` is no longer
/// applicable to the coloring as it stands.
pub fn apply_move(coloring: &mut EdgeColoring<'_>, m: &Move) -> Result<MoveOutcome> {
    let e = m.edge;
    coloring.graph().check_edge(e)?;
    let still_valid = coloring.color(e) == m.edge_color
        && applicable_moves(coloring, e).iter().any(|c| c.action == m.action);
    if !still_valid {
        return Err(Error::StaleMove);
    }
    let before = coloring.max_count();
    let (u, v) = coloring.graph().endpoints(e);
    let ec = m.edge_color;
    let split_colors = match m.action {
        MoveAction::Exchange { target } => {
            coloring.set_color(e, target);
            coloring.split_after_edge_removal(ec, u, v)
        }
        MoveAction::Create => {
            let fresh = coloring.fresh_color();
            coloring.set_color(e, fresh);
            coloring.split_after_edge_removal(ec, u, v)
        }
        MoveAction::Connect { first, second } => {
            let fresh = coloring.fresh_color();
            coloring.repaint_component(u, first, fresh);
            coloring.repaint_component(v, second, fresh);
            coloring.set_color(e, fresh);
            coloring.split_after_edge_removal(ec, u, v)
        }
        MoveAction::Merge { other, anchor } => {
            let fresh = coloring.fresh_color();
            coloring.repaint_component(anchor, ec, fresh);
            coloring.repaint_component(anchor, other, fresh);
            0
        }
    };
    Ok(MoveOutcome {
        kind: m.kind(),
        objective_before: before,
        objective_after: coloring.max_count(),
        split_colors,
    })
}
