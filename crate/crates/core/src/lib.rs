//! Sampling-based motion planning: RRT, RRG, RRT* and PRM* over box worlds,
//! plus a Monte-Carlo benchmark harness for convergence and complexity
//! studies.
//!
//! Everything is deterministic given a seed: equal seeds reproduce runs
//! bit-for-bit, including across serial and parallel execution.

pub mod cost;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod index;
pub mod planner;
pub mod query;
pub mod scenario;
pub mod world;

pub use cost::CostModel;
pub use error::Error;
pub use geometry::{concat, line, path_length, steer, Point, Polyline, Segment};
pub use index::KdIndex;
pub use planner::{
    near_radius, prm_star_build, run, unit_ball_volume, NearParams, PlannerGraph, PlannerKind,
    RunOptions, RunResult,
};
pub use query::{best_graph_path, best_tree_path, oracle_optimal_cost, PathResult};
pub use scenario::{Scenario, ScenarioFile};
pub use world::{Aabb, GoalRegion, SampleStream, WorldModel};
