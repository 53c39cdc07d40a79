//! Random unit disk and quasi unit disk graphs.
//!
//! Points are drawn from `Xoshiro256PlusPlus::seed_from_u64(seed)` (two
//! uniforms per point, x then y). Quasi thresholds come from a second stream:
//! the same seeded generator advanced by one `jump()`, i.e. 2^128 steps. The
//! layout therefore does not depend on `quasi` or `range`.

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{InstanceMetadata, InstanceSource};

pub const DEFAULT_SIDE: f64 = 2500.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub side: f64,
    pub range: f64,
    pub seed: u64,
    pub quasi: bool,
}

impl GeneratorSpec {
    pub fn udg(n: usize, range: f64, seed: u64) -> Self {
        GeneratorSpec { n, side: DEFAULT_SIDE, range, seed, quasi: false }
    }

    pub fn qudg(n: usize, range: f64, seed: u64) -> Self {
        GeneratorSpec { quasi: true, ..Self::udg(n, range, seed) }
    }

    /// Range may go up to the square's diagonal.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("vertex count must be at least 1".into()));
        }
        if !(self.side > 0.0 && self.side.is_finite()) {
            return Err(Error::InvalidConfig(format!("side must be positive, got {}", self.side)));
        }
        if !(self.range > 0.0 && self.range <= self.side * std::f64::consts::SQRT_2) {
            return Err(Error::InvalidConfig(format!(
                "range must lie in (0, {}], got {}",
                self.side * std::f64::consts::SQRT_2,
                self.range
            )));
        }
        Ok(())
    }

    /// `udg<N>.<range>` or `qudg<N>.<range>`.
    pub fn name(&self) -> String {
        format!("{}{}.{}", if self.quasi { "qudg" } else { "udg" }, self.n, self.range)
    }
}

/// The `n` points of a spec, in vertex order.
pub fn points(spec: &GeneratorSpec) -> Vec<(f64, f64)> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.seed);
    (0..spec.n)
        .map(|_| {
            let x = rng.random::<f64>() * spec.side;
            let y = rng.random::<f64>() * spec.side;
            (x, y)
        })
        .collect()
}

fn threshold_stream(seed: u64) -> Xoshiro256PlusPlus {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    rng.jump();
    rng
}

#[inline]
fn dist2(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

/// Pairs `(u, v)`, `u < v`, within distance `range`, sorted, with their
/// squared distances.
fn candidate_pairs(pts: &[(f64, f64)], side: f64, range: f64) -> Vec<(usize, usize, f64)> {
    let n = pts.len();
    // cells are at least `range` wide so neighbors lie in the 3x3 block
    let cap = ((n as f64).sqrt().ceil() as usize).max(1);
    let k = ((side / range).floor() as usize).clamp(1, cap);
    let cell = side / k as f64;
    let index = |c: f64| ((c / cell) as usize).min(k - 1);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k * k];
    for (i, &(x, y)) in pts.iter().enumerate() {
        buckets[index(y) * k + index(x)].push(i);
    }
    let r2 = range * range;
    let mut pairs = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        let (cx, cy) = (index(p.0), index(p.1));
        for gy in cy.saturating_sub(1)..=(cy + 1).min(k - 1) {
            for gx in cx.saturating_sub(1)..=(cx + 1).min(k - 1) {
                for &j in &buckets[gy * k + gx] {
                    if j > i {
                        let d2 = dist2(p, pts[j]);
                        if d2 <= r2 {
                            pairs.push((i, j, d2));
                        }
                    }
                }
            }
        }
    }
    pairs.sort_unstable_by_key(|&(u, v, _)| (u, v));
    pairs
}

/// Unit disk graph, or a quasi unit disk graph when `spec.quasi` is set.
///
/// In the quasi case each pair within `range` draws its own threshold
/// uniformly from `[range/2, range]` (pairs taken in sorted order) and is kept
/// when its distance does not exceed it.
pub fn generate(spec: &GeneratorSpec) -> Result<(Graph, InstanceMetadata)> {
    spec.validate()?;
    let pts = points(spec);
    let pairs = candidate_pairs(&pts, spec.side, spec.range);
    let edges: Vec<(usize, usize)> = if spec.quasi {
        let mut rng = threshold_stream(spec.seed);
        pairs
            .into_iter()
            .filter(|&(_, _, d2)| {
                let r = rng.random_range(spec.range / 2.0..=spec.range);
                d2 <= r * r
            })
            .map(|(u, v, _)| (u, v))
            .collect()
    } else {
        pairs.into_iter().map(|(u, v, _)| (u, v)).collect()
    };
    let graph = Graph::new(spec.n, edges)?;
    let source = if spec.quasi { InstanceSource::GeneratedQudg } else { InstanceSource::GeneratedUdg };
    let meta = InstanceMetadata::describe(spec.name(), &graph, source, Some(*spec));
    Ok((graph, meta))
}

pub fn generate_udg(spec: &GeneratorSpec) -> Result<(Graph, InstanceMetadata)> {
    generate(&GeneratorSpec { quasi: false, ..*spec })
}

pub fn generate_qudg(spec: &GeneratorSpec) -> Result<(Graph, InstanceMetadata)> {
    generate(&GeneratorSpec { quasi: true, ..*spec })
}
