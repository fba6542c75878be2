//! Incremental sampling-based planners — RRT, RRG, RRT* — behind one shared
//! iteration loop, plus the batch PRM* roadmap builder.
//!
//! All three incremental planners consume the identical sample stream for a
//! given seed, which is what makes the head-to-head structural comparisons
//! (shared vertex sets, edge-set inclusions) exact rather than statistical.
//!
//! Conventions fixed for reproducibility:
//! - every raw sample costs one iteration, whether it is rejected by an
//!   obstacle, fails to extend, or adds a vertex;
//! - `Near` is evaluated on the graph *before* the new vertex is inserted,
//!   with the vertex count of that pre-insertion graph;
//! - candidate sets are traversed in ascending vertex-id order, and cost
//!   ties keep the earliest candidate.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cost::CostModel;
use crate::error::Error;
use crate::geometry::{steer, Point};
use crate::index::KdIndex;
use crate::query;
use crate::world::{SampleStream, WorldModel, SAMPLE_REJECTION_LIMIT};

/// Which planner drives the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlannerKind {
    Rrt,
    Rrg,
    RrtStar,
    PrmStar,
}

impl PlannerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PlannerKind::Rrt => "rrt",
            PlannerKind::Rrg => "rrg",
            PlannerKind::RrtStar => "rrt_star",
            PlannerKind::PrmStar => "prm_star",
        }
    }

    /// Tree-structured planners (parent pointers + cost-to-come).
    pub fn is_tree(&self) -> bool {
        matches!(self, PlannerKind::Rrt | PlannerKind::RrtStar)
    }

    /// Planners that run under the incremental sample loop.
    pub fn is_incremental(&self) -> bool {
        !matches!(self, PlannerKind::PrmStar)
    }
}

impl std::fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PlannerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rrt" => Ok(PlannerKind::Rrt),
            "rrg" => Ok(PlannerKind::Rrg),
            "rrt_star" => Ok(PlannerKind::RrtStar),
            "prm_star" => Ok(PlannerKind::PrmStar),
            other => Err(Error::InvalidParams(format!("unknown planner {other:?}"))),
        }
    }
}

/// Volume of the unit ball in `R^d`, by the two-step recurrence
/// `zeta_0 = 1, zeta_1 = 2, zeta_d = zeta_{d-2} * 2 pi / d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// Parameters of the shrinking connection radius.
#[derive(Clone, Debug, PartialEq)]
pub struct NearParams {
    pub d: usize,
    /// Steering bound: maximum length of a single extension.
    pub eta: f64,
    /// Connection-radius constant; asymptotic optimality needs
    /// `gamma > gamma_lower_bound(d, mu_free)`.
    pub gamma: f64,
    /// Unit-ball volume in `R^d`.
    pub zeta_d: f64,
}

impl NearParams {
    pub fn new(d: usize, eta: f64, gamma: f64) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::InvalidParams("dimension must be at least 2".into()));
        }
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::InvalidParams("eta must be positive".into()));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParams("gamma must be positive".into()));
        }
        Ok(NearParams {
            d,
            eta,
            gamma,
            zeta_d: unit_ball_volume(d),
        })
    }

    /// The optimality threshold `2^d (1 + 1/d) mu_free`: any `gamma` above
    /// it makes the shrinking-radius planners asymptotically optimal.
    pub fn gamma_lower_bound(d: usize, mu_free: f64) -> f64 {
        2f64.powi(d as i32) * (1.0 + 1.0 / d as f64) * mu_free
    }
}

/// Connection radius for a graph of `n` vertices:
/// `min((gamma/zeta_d * ln n / n)^(1/d), eta)`, natural log.
///
/// `n = 1` returns `eta`: the formula's `ln 1 = 0` would freeze the radius
/// at zero before the second vertex exists, which the cap semantics (ball
/// volume never exceeds `zeta_d eta^d`) clearly do not intend.
pub fn near_radius(p: &NearParams, n: usize) -> f64 {
    assert!(n >= 1, "vertex count must be at least 1");
    if n == 1 {
        return p.eta;
    }
    let n = n as f64;
    let r = (p.gamma / p.zeta_d * n.ln() / n).powf(1.0 / p.d as f64);
    r.min(p.eta)
}

/// Vertex/edge store shared by all planners.
///
/// Tree planners (`rrt`, `rrt_star`) maintain `parent`, `children`,
/// `edge_cost` and `cost_to_come`; graph planners (`rrg`, `prm_star`)
/// maintain a symmetric adjacency list. Vertex 0 is always the initial
/// state.
#[derive(Clone, Debug)]
pub struct PlannerGraph {
    kind: PlannerKind,
    points: Vec<Point>,
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    edge_cost: Vec<f64>,
    cost_to_come: Vec<f64>,
    adjacency: Vec<Vec<u32>>,
    goal_ids: Vec<u32>,
    index: KdIndex,
    obstacle_calls: u64,
}

impl PartialEq for PlannerGraph {
    fn eq(&self, other: &Self) -> bool {
        // Semantic state only; the spatial index is derived data.
        self.kind == other.kind
            && self.points == other.points
            && self.parent == other.parent
            && self.edge_cost == other.edge_cost
            && self.cost_to_come == other.cost_to_come
            && self.adjacency == other.adjacency
            && self.goal_ids == other.goal_ids
            && self.obstacle_calls == other.obstacle_calls
    }
}

impl PlannerGraph {
    /// A one-vertex graph rooted at the world's initial state.
    pub fn new(kind: PlannerKind, world: &WorldModel) -> Self {
        let mut g = PlannerGraph {
            kind,
            points: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
            edge_cost: Vec::new(),
            cost_to_come: Vec::new(),
            adjacency: Vec::new(),
            goal_ids: Vec::new(),
            index: KdIndex::new(world.dim()),
            obstacle_calls: 0,
        };
        g.push_vertex(world, world.x_init().clone());
        g
    }

    pub fn kind(&self) -> PlannerKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds the root
    }

    pub fn point(&self, id: u32) -> &Point {
        &self.points[id as usize]
    }

    pub fn parent_of(&self, id: u32) -> Option<u32> {
        self.parent[id as usize]
    }

    pub fn cost_to_come(&self, id: u32) -> f64 {
        self.cost_to_come[id as usize]
    }

    pub fn neighbors(&self, id: u32) -> &[u32] {
        &self.adjacency[id as usize]
    }

    pub fn goal_ids(&self) -> &[u32] {
        &self.goal_ids
    }

    /// Cumulative number of segment collision tests issued by extensions.
    pub fn obstacle_calls(&self) -> u64 {
        self.obstacle_calls
    }

    /// Number of directed edges: `|V| - 1` for trees, adjacency entries for
    /// graphs (each symmetric pair counts twice).
    pub fn directed_edge_count(&self) -> usize {
        if self.kind.is_tree() {
            self.points.len() - 1
        } else {
            self.adjacency.iter().map(Vec::len).sum()
        }
    }

    /// The directed edge set: `(parent, child)` for trees, every adjacency
    /// arc for graphs. Used by the structural-equivalence checks.
    pub fn directed_edges(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        if self.kind.is_tree() {
            for (v, p) in self.parent.iter().enumerate() {
                if let Some(p) = p {
                    out.insert((*p, v as u32));
                }
            }
        } else {
            for (u, nbrs) in self.adjacency.iter().enumerate() {
                for &v in nbrs {
                    out.insert((u as u32, v));
                }
            }
        }
        out
    }

    /// All vertex positions, id order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn push_vertex(&mut self, world: &WorldModel, p: Point) -> u32 {
        let id = self.points.len() as u32;
        self.index.insert(id, p.clone());
        if world.in_goal(&p) {
            self.goal_ids.push(id);
        }
        self.points.push(p);
        self.parent.push(None);
        self.children.push(Vec::new());
        self.edge_cost.push(0.0);
        self.cost_to_come.push(0.0);
        self.adjacency.push(Vec::new());
        id
    }

    fn obstacle_free(&mut self, world: &WorldModel, a: &Point, b: &Point) -> bool {
        self.obstacle_calls += 1;
        world.obstacle_free_segment(a, b)
    }

    /// Nearest vertex, then a bounded step toward the sample. Returns
    /// `None` when the sample coincides with the nearest vertex — the only
    /// way a duplicate vertex could arise (any other duplicate would have
    /// been a strictly nearer neighbor than the one returned).
    fn nearest_and_steer(&self, x_rand: &Point, eta: f64) -> Option<(u32, Point)> {
        let (nearest_id, _) = self
            .index
            .nearest(x_rand)
            .expect("graph always holds the root");
        let x_new = steer(&self.points[nearest_id as usize], x_rand, eta);
        if x_new == self.points[nearest_id as usize] {
            return None;
        }
        Some((nearest_id, x_new))
    }

    /// One RRT extension: nearest, steer, one collision test, insert on
    /// success. Returns `true` if a vertex was added.
    pub fn rrt_extend(
        &mut self,
        world: &WorldModel,
        cost: &CostModel,
        x_rand: &Point,
        eta: f64,
    ) -> bool {
        debug_assert_eq!(self.kind, PlannerKind::Rrt);
        let Some((nearest_id, x_new)) = self.nearest_and_steer(x_rand, eta) else {
            return false;
        };
        if !self.obstacle_free(world, &self.points[nearest_id as usize].clone(), &x_new) {
            return false;
        }
        let edge = cost.segment_cost(&self.points[nearest_id as usize], &x_new);
        let id = self.push_vertex(world, x_new);
        self.parent[id as usize] = Some(nearest_id);
        self.children[nearest_id as usize].push(id);
        self.edge_cost[id as usize] = edge;
        self.cost_to_come[id as usize] = self.cost_to_come[nearest_id as usize] + edge;
        true
    }

    /// One RRG extension: like RRT, then symmetric connections to every
    /// near vertex with a free line of sight. The near set is taken from
    /// the pre-insertion graph, candidates in ascending id order.
    pub fn rrg_extend(&mut self, world: &WorldModel, x_rand: &Point, p: &NearParams) -> bool {
        debug_assert_eq!(self.kind, PlannerKind::Rrg);
        let Some((nearest_id, x_new)) = self.nearest_and_steer(x_rand, p.eta) else {
            return false;
        };
        if !self.obstacle_free(world, &self.points[nearest_id as usize].clone(), &x_new) {
            return false;
        }
        let radius = near_radius(p, self.len());
        let x_near = self.index.near(&x_new, radius);
        let id = self.push_vertex(world, x_new.clone());
        self.adjacency[nearest_id as usize].push(id);
        self.adjacency[id as usize].push(nearest_id);
        for near_id in x_near {
            // The collision test runs for every candidate — including
            // `nearest_id`, whose edge already exists — to keep the
            // per-iteration call count at exactly 1 + |X_near|.
            let free = self.obstacle_free(
                world,
                &self.points[near_id as usize].clone(),
                &x_new,
            );
            if free && near_id != nearest_id {
                self.adjacency[near_id as usize].push(id);
                self.adjacency[id as usize].push(near_id);
            }
        }
        true
    }

    /// One RRT* extension: choose the cheapest collision-free parent among
    /// the near set, insert, then rewire near vertices through the new one
    /// where that strictly lowers their cost-to-come.
    ///
    /// Two bookkeeping rules keep the cost table trustworthy:
    /// 1. the running parent minimum starts at the nearest vertex's cost,
    ///    so the comparison is well-defined from the first candidate;
    /// 2. every rewire propagates the cost change through the whole
    ///    affected subtree immediately, so later rewire decisions never see
    ///    stale values. The no-cycle argument depends on this: a rewire
    ///    candidate whose subtree contained the new vertex would have
    ///    cost-to-come at most the new vertex's, and the strict improvement
    ///    test would already rule it out.
    pub fn rrt_star_extend(
        &mut self,
        world: &WorldModel,
        cost: &CostModel,
        x_rand: &Point,
        p: &NearParams,
    ) -> bool {
        debug_assert_eq!(self.kind, PlannerKind::RrtStar);
        let Some((nearest_id, x_new)) = self.nearest_and_steer(x_rand, p.eta) else {
            return false;
        };
        if !self.obstacle_free(world, &self.points[nearest_id as usize].clone(), &x_new) {
            return false;
        }
        let radius = near_radius(p, self.len());
        let x_near = self.index.near(&x_new, radius);

        // Parent selection: running minimum over {nearest} + near set.
        let mut min_id = nearest_id;
        let mut min_cost = self.cost_to_come[nearest_id as usize]
            + cost.segment_cost(&self.points[nearest_id as usize], &x_new);
        for &near_id in &x_near {
            let free = self.obstacle_free(
                world,
                &self.points[near_id as usize].clone(),
                &x_new,
            );
            let candidate = self.cost_to_come[near_id as usize]
                + cost.segment_cost(&self.points[near_id as usize], &x_new);
            if free && candidate < min_cost {
                min_id = near_id;
                min_cost = candidate;
            }
        }

        let edge = cost.segment_cost(&self.points[min_id as usize], &x_new);
        let new_id = self.push_vertex(world, x_new.clone());
        self.parent[new_id as usize] = Some(min_id);
        self.children[min_id as usize].push(new_id);
        self.edge_cost[new_id as usize] = edge;
        self.cost_to_come[new_id as usize] = self.cost_to_come[min_id as usize] + edge;

        // Rewire pass.
        for near_id in x_near {
            let free = self.obstacle_free(
                world,
                &x_new,
                &self.points[near_id as usize].clone(),
            );
            let via_new = cost.segment_cost(&x_new, &self.points[near_id as usize]);
            let candidate = self.cost_to_come[new_id as usize] + via_new;
            if free && self.cost_to_come[near_id as usize] > candidate {
                self.reparent(near_id, new_id, via_new);
            }
        }
        true
    }

    /// Moves `v` under `new_parent` and refreshes cost-to-come across `v`'s
    /// subtree (iteratively — subtrees can be deep).
    fn reparent(&mut self, v: u32, new_parent: u32, edge: f64) {
        let old_parent = self.parent[v as usize].expect("rewire target is never the root");
        let siblings = &mut self.children[old_parent as usize];
        let pos = siblings
            .iter()
            .position(|&c| c == v)
            .expect("child list tracks parent pointers");
        siblings.remove(pos);
        self.children[new_parent as usize].push(v);
        self.parent[v as usize] = Some(new_parent);
        self.edge_cost[v as usize] = edge;

        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let parent = self.parent[u as usize].expect("subtree nodes have parents");
            self.cost_to_come[u as usize] =
                self.cost_to_come[parent as usize] + self.edge_cost[u as usize];
            stack.extend_from_slice(&self.children[u as usize]);
        }
    }

    /// Cheapest goal vertex by cost-to-come (tree planners), `+inf` when no
    /// goal vertex exists yet.
    pub fn best_goal_cost(&self) -> f64 {
        self.goal_ids
            .iter()
            .map(|&g| self.cost_to_come[g as usize])
            .fold(f64::INFINITY, f64::min)
    }

    /// Structural self-check used by debug runs and the property suites:
    /// tree shape, root reachability, exact cost-to-come consistency, and
    /// adjacency symmetry. Cheap enough to run after every iteration on
    /// test-sized graphs.
    pub fn verify_invariants(&self, cost: &CostModel) -> Result<(), String> {
        let n = self.points.len();
        if self.kind.is_tree() {
            if self.parent[0].is_some() {
                return Err("root has a parent".into());
            }
            let mut non_root_children = 0usize;
            for c in &self.children {
                non_root_children += c.len();
            }
            if non_root_children != n - 1 {
                return Err(format!(
                    "edge count {} does not match |V|-1 = {}",
                    non_root_children,
                    n - 1
                ));
            }
            // Root reachability with memoization: O(n) per call.
            let mut reaches = vec![false; n];
            reaches[0] = true;
            for v in 0..n {
                let mut chain = Vec::new();
                let mut u = v;
                while !reaches[u] {
                    chain.push(u);
                    if chain.len() > n {
                        return Err(format!("vertex {v} sits on a parent cycle"));
                    }
                    u = match self.parent[u] {
                        Some(p) => p as usize,
                        None => return Err(format!("non-root vertex {u} has no parent")),
                    };
                }
                for c in chain {
                    reaches[c] = true;
                }
            }
            // Cost-to-come equals the parent-chain resummation.
            let mut resum = vec![f64::NAN; n];
            resum[0] = 0.0;
            for v in 0..n {
                let mut chain = Vec::new();
                let mut u = v;
                while resum[u].is_nan() {
                    chain.push(u);
                    u = self.parent[u].expect("reachability verified above") as usize;
                }
                while let Some(c) = chain.pop() {
                    let p = self.parent[c].expect("non-root") as usize;
                    resum[c] = resum[p]
                        + cost.segment_cost(&self.points[p], &self.points[c]);
                }
                if (resum[v] - self.cost_to_come[v]).abs() > 1e-9 {
                    return Err(format!(
                        "cost_to_come({v}) = {} but parent-chain resummation gives {}",
                        self.cost_to_come[v], resum[v]
                    ));
                }
            }
        } else {
            // Symmetric adjacency, no self-loops, no duplicate arcs.
            let mut arcs = BTreeSet::new();
            for (u, nbrs) in self.adjacency.iter().enumerate() {
                for &v in nbrs {
                    if v as usize == u {
                        return Err(format!("self-loop at vertex {u}"));
                    }
                    if !arcs.insert((u as u32, v)) {
                        return Err(format!("duplicate arc ({u}, {v})"));
                    }
                }
            }
            for &(u, v) in &arcs {
                if !arcs.contains(&(v, u)) {
                    return Err(format!("arc ({u}, {v}) lacks its reverse"));
                }
            }
        }
        Ok(())
    }
}

/// Knobs for [`run`]; the defaults record every iteration, refresh the RRG
/// best-cost every 50 iterations, and keep timing off (wall-time columns
/// stay zero so outputs are byte-reproducible).
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Record the series every this many iterations (the final iteration is
    /// always recorded).
    pub record_stride: usize,
    /// RRG best-cost refresh cadence (a graph shortest-path run); 0 skips
    /// best-cost tracking entirely (counter-only experiments).
    pub rrg_y_every: usize,
    /// Measure wall time. Off by default: timing values vary run to run,
    /// and the determinism contract covers everything else.
    pub timing: bool,
    /// Run the full structural self-check after every iteration.
    pub check_invariants: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            record_stride: 1,
            rrg_y_every: 50,
            timing: false,
            check_invariants: false,
        }
    }
}

/// Per-iteration series sampled at the record stride. All vectors share
/// one length; `iterations[k]` is the 1-based iteration index of row `k`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordedSeries {
    pub iterations: Vec<u32>,
    /// Best feasible cost found so far (`+inf` before the first solution).
    pub best_cost: Vec<f64>,
    /// Vertex count after the iteration.
    pub n_vertices: Vec<u32>,
    /// Cumulative collision-test calls.
    pub obstacle_calls: Vec<u64>,
    /// Cumulative sum of (per-iteration calls) / ln(max(vertex count, 2)).
    pub calls_per_log_sum: Vec<f64>,
    /// Cumulative wall time (seconds); all zeros unless timing was on.
    pub wall_s: Vec<f64>,
}

/// Outcome of one seeded planner run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub kind: PlannerKind,
    pub seed: u64,
    pub iterations: usize,
    pub graph: PlannerGraph,
    pub series: RecordedSeries,
    /// Final best feasible cost (`+inf` if the goal was never connected).
    pub final_cost: f64,
    /// Order-sensitive digest of every raw sample drawn (rejected ones
    /// included): equal digests mean identical sample sequences.
    pub sample_hash: u64,
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv1a_point(mut hash: u64, p: &Point) -> u64 {
    for c in p.coords() {
        for byte in c.to_bits().to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(FNV_PRIME);
        }
    }
    hash
}

/// Runs an incremental planner for `n_iters` iterations from `seed`.
///
/// Each iteration draws one raw uniform sample over the bounds. Samples
/// inside obstacles and failed extensions both consume their iteration.
/// The result is a pure function of the arguments.
pub fn run(
    world: &WorldModel,
    cost: &CostModel,
    kind: PlannerKind,
    params: &NearParams,
    n_iters: usize,
    seed: u64,
    opts: &RunOptions,
) -> Result<RunResult, Error> {
    if !kind.is_incremental() {
        return Err(Error::InvalidParams(
            "prm_star builds its roadmap in one shot; use prm_star_build".into(),
        ));
    }
    if n_iters < 1 {
        return Err(Error::InvalidParams("iteration count must be >= 1".into()));
    }
    if opts.record_stride < 1 {
        return Err(Error::InvalidParams("record stride must be >= 1".into()));
    }
    if params.d != world.dim() {
        return Err(Error::InvalidParams(format!(
            "near params are {}-dimensional but the world is {}-dimensional",
            params.d,
            world.dim()
        )));
    }

    let mut graph = PlannerGraph::new(kind, world);
    let mut stream = SampleStream::new(seed);
    let mut series = RecordedSeries::default();
    let mut sample_hash = FNV_OFFSET;
    let mut best = if kind.is_tree() || opts.rrg_y_every > 0 {
        graph_best_cost_initial(&graph)
    } else {
        f64::INFINITY
    };
    let mut calls_per_log_sum = 0.0;
    let mut consecutive_rejects: u64 = 0;
    let started = Instant::now();

    for i in 1..=n_iters {
        let calls_before = graph.obstacle_calls();
        let x_rand = stream.sample_in(world.bounds());
        sample_hash = fnv1a_point(sample_hash, &x_rand);

        if world.obstacle_free_point(&x_rand) {
            consecutive_rejects = 0;
            match kind {
                PlannerKind::Rrt => {
                    graph.rrt_extend(world, cost, &x_rand, params.eta);
                }
                PlannerKind::Rrg => {
                    graph.rrg_extend(world, &x_rand, params);
                }
                PlannerKind::RrtStar => {
                    graph.rrt_star_extend(world, cost, &x_rand, params);
                }
                PlannerKind::PrmStar => unreachable!("rejected above"),
            }
        } else {
            consecutive_rejects += 1;
            if consecutive_rejects >= SAMPLE_REJECTION_LIMIT {
                return Err(Error::FreeSpaceExhausted {
                    rejections: consecutive_rejects,
                });
            }
        }

        // Best-cost bookkeeping. Tree planners read the goal set directly;
        // RRG recomputes a shortest path every `rrg_y_every` iterations
        // (and at the end), holding the value flat in between.
        if kind.is_tree() {
            best = graph.best_goal_cost();
        } else if opts.rrg_y_every > 0 && (i % opts.rrg_y_every == 0 || i == n_iters) {
            best = query::graph_goal_cost(&graph, cost);
        }

        if opts.check_invariants {
            if let Err(msg) = graph.verify_invariants(cost) {
                panic!("invariant violated after iteration {i}: {msg}");
            }
        }

        let calls_now = graph.obstacle_calls();
        let n_after = graph.len();
        calls_per_log_sum +=
            (calls_now - calls_before) as f64 / (n_after.max(2) as f64).ln();

        if i % opts.record_stride == 0 || i == n_iters {
            series.iterations.push(i as u32);
            series.best_cost.push(best);
            series.n_vertices.push(n_after as u32);
            series.obstacle_calls.push(calls_now);
            series.calls_per_log_sum.push(calls_per_log_sum);
            series.wall_s.push(if opts.timing {
                started.elapsed().as_secs_f64()
            } else {
                0.0
            });
        }
    }

    Ok(RunResult {
        kind,
        seed,
        iterations: n_iters,
        final_cost: best,
        sample_hash,
        graph,
        series,
    })
}

/// Best cost of the initial one-vertex graph: 0 when the root already sits
/// in the goal, `+inf` otherwise.
fn graph_best_cost_initial(graph: &PlannerGraph) -> f64 {
    if graph.goal_ids().contains(&0) {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Builds a PRM* roadmap: `n` free samples plus the initial state, every
/// pair within the shrinking radius `(gamma/zeta_d * ln n / n)^(1/d)`
/// connected iff the straight segment is collision-free.
///
/// Each unordered pair is collision-tested once; the test count is
/// available from the graph's counter for edge-work assertions.
pub fn prm_star_build(
    world: &WorldModel,
    _cost: &CostModel,
    params: &NearParams,
    n: usize,
    seed: u64,
) -> Result<PlannerGraph, Error> {
    if n < 2 {
        return Err(Error::InvalidParams(
            "prm_star needs at least 2 samples".into(),
        ));
    }
    if params.d != world.dim() {
        return Err(Error::InvalidParams(format!(
            "near params are {}-dimensional but the world is {}-dimensional",
            params.d,
            world.dim()
        )));
    }
    let mut graph = PlannerGraph::new(PlannerKind::PrmStar, world);
    let mut stream = SampleStream::new(seed);
    for _ in 0..n {
        let p = world.sample_free(&mut stream)?;
        graph.push_vertex(world, p);
    }
    let nf = n as f64;
    let radius = (params.gamma / params.zeta_d * nf.ln() / nf).powf(1.0 / params.d as f64);
    for u in 0..graph.len() as u32 {
        let near = graph.index.near(&graph.points[u as usize], radius);
        for v in near {
            if v <= u {
                continue; // each unordered pair once; no self-loops
            }
            let free = graph.obstacle_free(
                world,
                &graph.points[u as usize].clone(),
                &graph.points[v as usize].clone(),
            );
            if free {
                graph.adjacency[u as usize].push(v);
                graph.adjacency[v as usize].push(u);
            }
        }
    }
    Ok(graph)
}
