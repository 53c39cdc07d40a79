//! Min-max edge 2-coloring: every vertex may see at most two edge colors,
//! and the goal is to keep the largest color class small.
//!
//! The crate provides the graph and coloring model, a layered BFS
//! construction, local search with hill climbing, simulated annealing and
//! tabu search, an exhaustive oracle for tiny graphs, random (quasi) unit
//! disk graph generators, and the file formats used by the `minmax` tool.

pub mod anneal;
pub mod bfs;
pub mod coloring;
pub mod dsu;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod hill_climb;
pub mod io;
pub mod moves;
pub mod reference;
pub mod tabu;
pub mod trace;

pub use anneal::{anneal, AnnealConfig};
pub use bfs::{bfs_coloring, choose_start_vertex, BfsConfig, StartPolicy, StartVertex};
pub use coloring::{lower_bound_max_degree, Color, EdgeColoring, ObjectiveValue};
pub use error::{Error, Result};
pub use exact::{brute_force_optimum, ExactResult};
pub use generators::{generate, generate_qudg, generate_udg, GeneratorSpec};
pub use graph::Graph;
pub use hill_climb::{hill_climb, HillClimbConfig};
pub use io::{Algorithm, InitKind, InstanceMetadata, InstanceSource, ResultRow};
pub use moves::{apply_move, applicable_moves, attractiveness, best_move, AttractivenessWeights, Move, MoveKind};
pub use tabu::{tabu_search, TabuConfig};
pub use trace::{RunTrace, SolveResult, Step, TraceRecord};
