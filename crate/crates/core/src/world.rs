//! World model: bounding box, axis-aligned box obstacles, goal region,
//! initial state, and the deterministic sample stream.
//!
//! Obstacles are *open* boxes — touching an obstacle face is collision-free
//! (grazing contact has measure zero and keeping it free makes boundary
//! arithmetic exact). The goal region uses *closed* membership. The bounding
//! box itself is closed: points on the outer boundary are valid states.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::Point;

/// Consecutive rejected samples tolerated by [`WorldModel::sample_free`]
/// before concluding the free space has (near) zero measure.
pub const SAMPLE_REJECTION_LIMIT: u64 = 1_000_000;

/// An axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]`, `lo_i < hi_i`.
///
/// Whether the box acts open (obstacles) or closed (bounds, goal) is decided
/// by the query method, not the type.
#[derive(Clone, Debug, PartialEq)]
pub struct Aabb {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl Aabb {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, Error> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidScenario(
                "box corners must share a positive dimension".into(),
            ));
        }
        if !lo.iter().chain(&hi).all(|c| c.is_finite()) {
            return Err(Error::InvalidScenario("box corners must be finite".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::InvalidScenario(
                "box must have positive extent on every axis".into(),
            ));
        }
        Ok(Aabb { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    /// Closed membership: `lo_i <= x_i <= hi_i` on every axis.
    pub fn contains_closed(&self, x: &Point) -> bool {
        x.coords()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (l, h))| *l <= *c && *c <= *h)
    }

    /// Open membership: `lo_i < x_i < hi_i` on every axis.
    pub fn contains_open(&self, x: &Point) -> bool {
        x.coords()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (l, h))| *l < *c && *c < *h)
    }

    /// `true` if `other` lies entirely inside this box (closed containment).
    pub fn contains_box(&self, other: &Aabb) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((sl, sh), (ol, oh))| sl <= ol && oh <= sh)
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    /// Length of the main diagonal.
    pub fn diagonal(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance from `x` to the closed box (0 if inside).
    pub fn distance_to(&self, x: &Point) -> f64 {
        x.coords()
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(c, (l, h))| {
                let gap = (l - c).max(c - h).max(0.0);
                gap * gap
            })
            .sum::<f64>()
            .sqrt()
    }

    /// `true` if the segment `a`-`b` passes through the *open interior* of
    /// the box. Grazing a face, edge or corner does not count.
    ///
    /// Works by clipping the open per-axis conditions to parameter
    /// intervals: the interior is hit iff the intersection of the open
    /// intervals meets `[0, 1]`.
    pub fn segment_hits_interior(&self, a: &Point, b: &Point) -> bool {
        let mut t_enter = f64::NEG_INFINITY;
        let mut t_exit = f64::INFINITY;
        for i in 0..self.dim() {
            let (l, h) = (self.lo[i], self.hi[i]);
            let (ai, bi) = (a[i], b[i]);
            let d = bi - ai;
            if d == 0.0 {
                if ai <= l || ai >= h {
                    return false;
                }
                // Axis satisfied for every t; no interval update.
            } else {
                let t0 = (l - ai) / d;
                let t1 = (h - ai) / d;
                let (t0, t1) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
                t_enter = t_enter.max(t0);
                t_exit = t_exit.min(t1);
                if t_enter >= t_exit {
                    return false;
                }
            }
        }
        // The open interval (t_enter, t_exit) must meet [0, 1].
        t_exit > 0.0 && t_enter < 1.0
    }
}

/// Goal region: a closed box or a closed ball. Membership includes the
/// boundary.
#[derive(Clone, Debug, PartialEq)]
pub enum GoalRegion {
    Box(Aabb),
    Ball { center: Point, radius: f64 },
}

impl GoalRegion {
    pub fn dim(&self) -> usize {
        match self {
            GoalRegion::Box(b) => b.dim(),
            GoalRegion::Ball { center, .. } => center.dim(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            GoalRegion::Box(b) => b.contains_closed(x),
            GoalRegion::Ball { center, radius } => center.distance(x) <= *radius,
        }
    }
}

/// Planning world: closed bounds, open box obstacles, goal region and the
/// initial state. Validated on construction.
#[derive(Clone, Debug)]
pub struct WorldModel {
    bounds: Aabb,
    obstacles: Vec<Aabb>,
    goal: GoalRegion,
    x_init: Point,
}

impl WorldModel {
    pub fn new(
        bounds: Aabb,
        obstacles: Vec<Aabb>,
        goal: GoalRegion,
        x_init: Point,
    ) -> Result<Self, Error> {
        let d = bounds.dim();
        if goal.dim() != d || x_init.dim() != d || obstacles.iter().any(|o| o.dim() != d) {
            return Err(Error::InvalidScenario(format!(
                "all world elements must have dimension {d}"
            )));
        }
        for (i, o) in obstacles.iter().enumerate() {
            if !bounds.contains_box(o) {
                return Err(Error::InvalidScenario(format!(
                    "obstacle {i} is not contained in the bounds"
                )));
            }
        }
        match &goal {
            GoalRegion::Box(b) => {
                if !bounds.contains_box(b) {
                    return Err(Error::InvalidScenario(
                        "goal box is not contained in the bounds".into(),
                    ));
                }
                for (i, o) in obstacles.iter().enumerate() {
                    let overlaps = b
                        .lo()
                        .iter()
                        .zip(b.hi())
                        .zip(o.lo().iter().zip(o.hi()))
                        .all(|((gl, gh), (ol, oh))| gh > ol && gl < oh);
                    if overlaps {
                        return Err(Error::InvalidScenario(format!(
                            "goal box intersects the interior of obstacle {i}"
                        )));
                    }
                }
            }
            GoalRegion::Ball { center, radius } => {
                if !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::InvalidScenario(
                        "goal ball radius must be positive".into(),
                    ));
                }
                let inside = center
                    .coords()
                    .iter()
                    .zip(bounds.lo().iter().zip(bounds.hi()))
                    .all(|(c, (l, h))| c - radius >= *l && c + radius <= *h);
                if !inside {
                    return Err(Error::InvalidScenario(
                        "goal ball is not contained in the bounds".into(),
                    ));
                }
                for (i, o) in obstacles.iter().enumerate() {
                    if o.distance_to(center) < *radius {
                        return Err(Error::InvalidScenario(format!(
                            "goal ball intersects the interior of obstacle {i}"
                        )));
                    }
                }
            }
        }
        let world = WorldModel {
            bounds,
            obstacles,
            goal,
            x_init,
        };
        if !world.obstacle_free_point(world.x_init()) {
            return Err(Error::InvalidScenario(
                "initial state is not in free space".into(),
            ));
        }
        Ok(world)
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Aabb {
        &self.bounds
    }

    pub fn obstacles(&self) -> &[Aabb] {
        &self.obstacles
    }

    pub fn goal(&self) -> &GoalRegion {
        &self.goal
    }

    pub fn x_init(&self) -> &Point {
        &self.x_init
    }

    /// `true` if `x` lies inside the (closed) bounds and outside every
    /// obstacle interior.
    pub fn obstacle_free_point(&self, x: &Point) -> bool {
        self.bounds.contains_closed(x) && !self.obstacles.iter().any(|o| o.contains_open(x))
    }

    /// `true` if the whole segment `a`-`b` is collision-free: both endpoints
    /// free and no obstacle interior crossed. Exact interval clipping — no
    /// stepping, no tolerance.
    pub fn obstacle_free_segment(&self, a: &Point, b: &Point) -> bool {
        self.obstacle_free_point(a)
            && self.obstacle_free_point(b)
            && !self
                .obstacles
                .iter()
                .any(|o| o.segment_hits_interior(a, b))
    }

    /// Closed membership test for the goal region.
    pub fn in_goal(&self, x: &Point) -> bool {
        self.goal.contains(x)
    }

    /// Draws uniform samples over the bounds until one is obstacle-free.
    ///
    /// Fails with [`Error::FreeSpaceExhausted`] after
    /// [`SAMPLE_REJECTION_LIMIT`] consecutive rejections.
    pub fn sample_free(&self, stream: &mut SampleStream) -> Result<Point, Error> {
        for _ in 0..SAMPLE_REJECTION_LIMIT {
            let x = stream.sample_in(&self.bounds);
            if self.obstacle_free_point(&x) {
                return Ok(x);
            }
        }
        Err(Error::FreeSpaceExhausted {
            rejections: SAMPLE_REJECTION_LIMIT,
        })
    }

    /// Exact Lebesgue measure of the free space: volume of the bounds minus
    /// the volume of the obstacle union, by coordinate sweep.
    ///
    /// Obstacle faces induce a grid of at most `(2k+1)^d` cells (`k`
    /// obstacles); every cell is either fully covered or fully free, so the
    /// sum is exact up to rounding. Intended for the small obstacle counts
    /// and dimensions this crate targets.
    pub fn free_space_measure(&self) -> f64 {
        let d = self.dim();
        // Per-axis breakpoints: bounds faces plus every obstacle face,
        // clamped into the bounds, sorted, exact-deduplicated.
        let mut axes: Vec<Vec<f64>> = Vec::with_capacity(d);
        for i in 0..d {
            let (bl, bh) = (self.bounds.lo()[i], self.bounds.hi()[i]);
            let mut cuts = vec![bl, bh];
            for o in &self.obstacles {
                cuts.push(o.lo()[i].clamp(bl, bh));
                cuts.push(o.hi()[i].clamp(bl, bh));
            }
            cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
            cuts.dedup();
            axes.push(cuts);
        }
        let cells_per_axis: Vec<usize> = axes.iter().map(|c| c.len() - 1).collect();
        let mut covered = 0.0;
        let mut idx = vec![0usize; d];
        'cells: loop {
            // Cell center and volume for the current index vector.
            let mut volume = 1.0;
            let mut center = Vec::with_capacity(d);
            for i in 0..d {
                let (a, b) = (axes[i][idx[i]], axes[i][idx[i] + 1]);
                volume *= b - a;
                center.push(0.5 * (a + b));
            }
            let center = Point::new(center);
            if self.obstacles.iter().any(|o| o.contains_open(&center)) {
                covered += volume;
            }
            // Odometer increment.
            for i in 0..d {
                idx[i] += 1;
                if idx[i] < cells_per_axis[i] {
                    continue 'cells;
                }
                idx[i] = 0;
            }
            break;
        }
        self.bounds.volume() - covered
    }
}

const TWO_NEG53: f64 = 1.0 / 9007199254740992.0; // 2^-53

/// Deterministic uniform sampler over a box, backed by ChaCha8.
///
/// Each coordinate consumes one 64-bit draw, mapped to `[0, 1)` by
/// `(x >> 11) * 2^-53`. Streams with equal seeds produce bit-identical
/// sequences on every platform.
#[derive(Clone, Debug)]
pub struct SampleStream {
    rng: ChaCha8Rng,
    seed: u64,
    drawn: u64,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            drawn: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of points drawn so far (including rejected ones).
    pub fn drawn(&self) -> u64 {
        self.drawn
    }

    /// One uniform draw in `[0, 1)`.
    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * TWO_NEG53
    }

    /// Uniform point in `box_` (half-open on the upper faces).
    pub fn sample_in(&mut self, box_: &Aabb) -> Point {
        self.drawn += 1;
        let coords = box_
            .lo()
            .iter()
            .zip(box_.hi())
            .map(|(l, h)| l + self.unit() * (h - l))
            .collect();
        Point::new(coords)
    }
}

/// Serializable goal description used by scenario files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GoalSpec {
    Box { r#box: Vec<[f64; 2]> },
    Ball { center: Vec<f64>, radius: f64 },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    fn square10() -> Aabb {
        Aabb::new(vec![0.0, 0.0], vec![10.0, 10.0]).unwrap()
    }

    fn world_with(obstacles: Vec<Aabb>) -> WorldModel {
        WorldModel::new(
            square10(),
            obstacles,
            GoalRegion::Box(Aabb::new(vec![8.0, 8.0], vec![9.0, 9.0]).unwrap()),
            pt(&[1.0, 1.0]),
        )
        .unwrap()
    }

    fn obstacle(lo: [f64; 2], hi: [f64; 2]) -> Aabb {
        Aabb::new(lo.to_vec(), hi.to_vec()).unwrap()
    }

    #[test]
    fn point_queries_respect_open_obstacles() {
        let w = world_with(vec![obstacle([2.0, 2.0], [4.0, 4.0])]);
        assert!(!w.obstacle_free_point(&pt(&[3.0, 3.0])));
        assert!(w.obstacle_free_point(&pt(&[2.0, 3.0]))); // on the face
        assert!(w.obstacle_free_point(&pt(&[0.0, 0.0]))); // bounds corner
        assert!(!w.obstacle_free_point(&pt(&[-0.1, 5.0]))); // outside bounds
        assert!(!w.obstacle_free_point(&pt(&[10.1, 5.0])));
    }

    #[test]
    fn segment_queries_clip_exactly() {
        let w = world_with(vec![obstacle([2.0, 2.0], [4.0, 4.0])]);
        // Straight through the middle.
        assert!(!w.obstacle_free_segment(&pt(&[1.0, 3.0]), &pt(&[5.0, 3.0])));
        // Slides along the bottom face: grazing only, stays free.
        assert!(w.obstacle_free_segment(&pt(&[1.0, 2.0]), &pt(&[5.0, 2.0])));
        // Touches a single corner.
        assert!(w.obstacle_free_segment(&pt(&[1.0, 5.0]), &pt(&[4.0, 2.0])));
        // Entirely in free space.
        assert!(w.obstacle_free_segment(&pt(&[1.0, 1.0]), &pt(&[9.0, 1.0])));
        // Ends exactly on a face from outside.
        assert!(w.obstacle_free_segment(&pt(&[1.0, 3.0]), &pt(&[2.0, 3.0])));
        // Crosses the box fully along x at interior height.
        assert!(!w.obstacle_free_segment(&pt(&[1.0, 2.5]), &pt(&[9.0, 3.5])));
        // Segment with both endpoints inside the obstacle.
        assert!(!w.obstacle_free_segment(&pt(&[2.5, 2.5]), &pt(&[3.5, 3.5])));
    }

    #[test]
    fn in_goal_is_closed() {
        let w = world_with(vec![]);
        assert!(w.in_goal(&pt(&[8.0, 8.0]))); // corner included
        assert!(w.in_goal(&pt(&[8.5, 8.5])));
        assert!(!w.in_goal(&pt(&[7.999, 8.5])));
        let ball = WorldModel::new(
            square10(),
            vec![],
            GoalRegion::Ball {
                center: pt(&[5.0, 5.0]),
                radius: 1.0,
            },
            pt(&[1.0, 1.0]),
        )
        .unwrap();
        assert!(ball.in_goal(&pt(&[6.0, 5.0]))); // on the sphere
        assert!(!ball.in_goal(&pt(&[6.0 + 1e-9, 5.0])));
    }

    #[test]
    fn validation_rejects_bad_worlds() {
        // Obstacle escaping the bounds.
        assert!(WorldModel::new(
            square10(),
            vec![obstacle([9.0, 9.0], [11.0, 9.5])],
            GoalRegion::Box(obstacle([1.0, 1.0], [2.0, 2.0])),
            pt(&[5.0, 5.0]),
        )
        .is_err());
        // x_init inside an obstacle.
        assert!(WorldModel::new(
            square10(),
            vec![obstacle([4.0, 4.0], [6.0, 6.0])],
            GoalRegion::Box(obstacle([1.0, 1.0], [2.0, 2.0])),
            pt(&[5.0, 5.0]),
        )
        .is_err());
        // Goal overlapping an obstacle interior.
        assert!(WorldModel::new(
            square10(),
            vec![obstacle([4.0, 4.0], [6.0, 6.0])],
            GoalRegion::Box(obstacle([5.0, 5.0], [7.0, 7.0])),
            pt(&[1.0, 1.0]),
        )
        .is_err());
        // Goal box merely touching an obstacle face is fine.
        assert!(WorldModel::new(
            square10(),
            vec![obstacle([4.0, 4.0], [6.0, 6.0])],
            GoalRegion::Box(obstacle([6.0, 4.0], [7.0, 5.0])),
            pt(&[1.0, 1.0]),
        )
        .is_ok());
        // Zero-thickness obstacle.
        assert!(Aabb::new(vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn streams_with_equal_seeds_match_bitwise() {
        let b = square10();
        let mut s1 = SampleStream::new(7);
        let mut s2 = SampleStream::new(7);
        for _ in 0..100 {
            assert_eq!(s1.sample_in(&b), s2.sample_in(&b));
        }
        let mut s3 = SampleStream::new(8);
        assert_ne!(s1.sample_in(&b), s3.sample_in(&b));
    }

    #[test]
    fn sample_free_returns_only_free_points() {
        let w = world_with(vec![
            obstacle([2.0, 2.0], [8.0, 4.0]),
            obstacle([2.0, 6.0], [8.0, 8.0]),
        ]);
        let mut s = SampleStream::new(42);
        for _ in 0..1000 {
            let x = w.sample_free(&mut s).unwrap();
            assert!(w.obstacle_free_point(&x));
        }
        // Rejections happened: more raw draws than accepted samples.
        assert!(s.drawn() > 1000);
    }

    #[test]
    fn sample_free_detects_vanishing_free_space() {
        // The obstacle fills everything but a 1e-12-wide sliver, which the
        // sampler has no realistic chance of hitting: the rejection limit
        // must trip instead of looping forever.
        let w = WorldModel::new(
            Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap(),
            vec![obstacle([1e-12, 0.0], [1.0, 1.0])],
            GoalRegion::Box(Aabb::new(vec![0.0, 0.4], vec![1e-12, 0.6]).unwrap()),
            pt(&[0.0, 0.5]),
        )
        .unwrap();
        let mut s = SampleStream::new(1);
        assert!(matches!(
            w.sample_free(&mut s),
            Err(Error::FreeSpaceExhausted { .. })
        ));
    }

    #[test]
    fn free_space_measure_is_exact() {
        // Single obstacle: 100 - 4 = 96.
        let w = world_with(vec![obstacle([2.0, 2.0], [4.0, 4.0])]);
        assert!((w.free_space_measure() - 96.0).abs() < 1e-12);
        // Disjoint obstacles: 100 - 8 = 92.
        let w = world_with(vec![
            obstacle([2.0, 2.0], [4.0, 4.0]),
            obstacle([6.0, 6.0], [8.0, 8.0]),
        ]);
        assert!((w.free_space_measure() - 92.0).abs() < 1e-12);
        // Overlapping obstacles count their union once: 4 + 4 - 1 = 7.
        let w = world_with(vec![
            obstacle([0.0, 0.0], [2.0, 2.0]),
            obstacle([1.0, 1.0], [3.0, 3.0]),
        ]);
        assert!((w.free_space_measure() - 93.0).abs() < 1e-12);
        // No obstacles.
        let w = world_with(vec![]);
        assert_eq!(w.free_space_measure(), 100.0);
    }

    #[test]
    fn free_space_measure_three_dimensional() {
        let bounds = Aabb::new(vec![0.0; 3], vec![2.0; 3]).unwrap();
        let hole = Aabb::new(vec![0.5; 3], vec![1.5; 3]).unwrap();
        let w = WorldModel::new(
            bounds,
            vec![hole],
            GoalRegion::Ball {
                center: pt(&[1.75, 1.75, 1.75]),
                radius: 0.1,
            },
            pt(&[0.1, 0.1, 0.1]),
        )
        .unwrap();
        assert!((w.free_space_measure() - 7.0).abs() < 1e-12);
    }

    #[test]
    fn measure_agrees_with_monte_carlo() {
        // Dual route: hit-or-miss estimate over a messy overlapping layout.
        let w = world_with(vec![
            obstacle([1.0, 1.0], [4.5, 3.0]),
            obstacle([3.0, 2.0], [6.0, 6.5]),
            obstacle([5.5, 5.0], [9.0, 7.0]),
            obstacle([0.5, 7.5], [3.0, 9.5]),
        ]);
        let exact = w.free_space_measure();
        let mut s = SampleStream::new(1234);
        let n = 1_000_000u32;
        let mut hits = 0u32;
        for _ in 0..n {
            if w.obstacle_free_point(&s.sample_in(w.bounds())) {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let estimate = p * w.bounds().volume();
        let sigma = (p * (1.0 - p) / n as f64).sqrt() * w.bounds().volume();
        assert!(
            (estimate - exact).abs() <= 4.0 * sigma,
            "estimate {estimate} vs exact {exact} (sigma {sigma})"
        );
    }

    #[test]
    fn unit_draws_are_uniform() {
        // 10^5 two-dimensional draws, 10x10 histogram: every bin within
        // 5 sigma of the expected 1000 (sigma = sqrt(n p (1-p)) ~ 31.5).
        let b = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let mut s = SampleStream::new(2024);
        let mut bins = [[0u32; 10]; 10];
        for _ in 0..100_000 {
            let x = s.sample_in(&b);
            let i = ((x[0] * 10.0) as usize).min(9);
            let j = ((x[1] * 10.0) as usize).min(9);
            bins[i][j] += 1;
        }
        for row in &bins {
            for &c in row {
                assert!(
                    (c as f64 - 1000.0).abs() <= 157.3,
                    "bin count {c} departs from uniformity"
                );
            }
        }
    }

    #[test]
    fn segment_query_is_symmetric_and_interior_free() {
        let w = world_with(vec![
            obstacle([2.0, 2.0], [4.0, 7.0]),
            obstacle([6.0, 3.0], [8.0, 9.0]),
        ]);
        let mut s = SampleStream::new(99);
        let mut checked_free = 0;
        for _ in 0..500 {
            let a = s.sample_in(w.bounds());
            let b = s.sample_in(w.bounds());
            let fwd = w.obstacle_free_segment(&a, &b);
            let rev = w.obstacle_free_segment(&b, &a);
            assert_eq!(fwd, rev, "segment test must be symmetric");
            if fwd {
                checked_free += 1;
                for k in 1..=20 {
                    let t = k as f64 / 21.0;
                    let mid = Point::new(
                        a.coords()
                            .iter()
                            .zip(b.coords())
                            .map(|(u, v)| u + t * (v - u))
                            .collect(),
                    );
                    assert!(w.obstacle_free_point(&mid));
                }
            }
        }
        assert!(checked_free > 50, "layout too cluttered for the property");
    }
}
