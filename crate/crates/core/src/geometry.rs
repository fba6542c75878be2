//! Points, segments and polylines in `R^d`, plus the `steer` primitive used
//! by the incremental planners.
//!
//! The dimension `d` is fixed per world; geometric values are plain `f64`
//! with no unit handling. Comparisons against reference values use
//! [`TOL`], an absolute-or-relative tolerance of `1e-12`.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Absolute-or-relative tolerance used for geometric comparisons.
pub const TOL: f64 = 1e-12;

/// `true` if `a` and `b` agree within [`TOL`], absolute or relative.
#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    let scale = 1f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= TOL * scale
}

/// A point in `R^d`.
///
/// Equality is exact (per-coordinate `f64` equality); coordinates are always
/// finite for points produced by this crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()), "non-finite coordinate");
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Point) -> f64 {
        self.squared_distance(other).sqrt()
    }

    /// Squared euclidean distance to `other` (no square root).
    pub fn squared_distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::new(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point::new(v.to_vec())
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A straight segment between two points of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        assert_eq!(a.dim(), b.dim(), "segment endpoints must share a dimension");
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }
}

/// A piecewise-linear path: one or more waypoints, consecutive waypoints
/// distinct. A single-waypoint polyline is *degenerate* and has length 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polyline(Vec<Point>);

impl Polyline {
    /// Builds a polyline, enforcing the invariants: non-empty, all waypoints
    /// of one dimension, no two *consecutive* waypoints exactly equal.
    pub fn from_waypoints(waypoints: Vec<Point>) -> Result<Self, Error> {
        if waypoints.is_empty() {
            return Err(Error::InvalidPolyline("no waypoints".into()));
        }
        let d = waypoints[0].dim();
        if waypoints.iter().any(|w| w.dim() != d) {
            return Err(Error::InvalidPolyline("mixed waypoint dimensions".into()));
        }
        if waypoints.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPolyline(
                "consecutive waypoints coincide".into(),
            ));
        }
        Ok(Polyline(waypoints))
    }

    /// Degenerate polyline consisting of a single waypoint.
    pub fn degenerate(p: Point) -> Self {
        Polyline(vec![p])
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn first(&self) -> &Point {
        &self.0[0]
    }

    pub fn last(&self) -> &Point {
        self.0.last().expect("polyline is never empty")
    }

    /// Iterator over the straight segments between consecutive waypoints.
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.0.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.len() == 1
    }
}

/// Moves from `from` toward `to`, by at most `eta`.
///
/// Returns `to` itself (bit-exact) when it is within `eta` of `from`;
/// otherwise returns the point at distance `eta` from `from` on the segment
/// toward `to`. `eta` must be positive.
pub fn steer(from: &Point, to: &Point, eta: f64) -> Point {
    assert_eq!(from.dim(), to.dim(), "steer endpoints must share a dimension");
    assert!(eta > 0.0, "steer range must be positive");
    let dist = from.distance(to);
    if dist <= eta {
        return to.clone();
    }
    let t = eta / dist;
    let coords = from
        .coords()
        .iter()
        .zip(to.coords())
        .map(|(f, t_c)| f + t * (t_c - f))
        .collect();
    Point::new(coords)
}

/// The straight polyline from `a` to `b`; degenerate if `a == b` exactly.
pub fn line(a: &Point, b: &Point) -> Polyline {
    if a == b {
        Polyline::degenerate(a.clone())
    } else {
        Polyline(vec![a.clone(), b.clone()])
    }
}

/// Joins two polylines end to start.
///
/// The junction (`p1`'s last waypoint and `p2`'s first) must agree within
/// [`TOL`] per coordinate; `p1`'s copy of the junction is kept. Joining a
/// degenerate polyline at the junction returns the other side unchanged.
pub fn concat(p1: &Polyline, p2: &Polyline) -> Result<Polyline, Error> {
    if p1.dim() != p2.dim() {
        return Err(Error::InvalidPolyline("mixed waypoint dimensions".into()));
    }
    let junction_ok = p1
        .last()
        .coords()
        .iter()
        .zip(p2.first().coords())
        .all(|(a, b)| approx_eq(*a, *b));
    if !junction_ok {
        return Err(Error::PolylineJunctionMismatch);
    }
    if p2.is_degenerate() {
        return Ok(p1.clone());
    }
    if p1.is_degenerate() {
        return Ok(p2.clone());
    }
    let mut waypoints = p1.0.clone();
    waypoints.extend_from_slice(&p2.0[1..]);
    Polyline::from_waypoints(waypoints)
}

/// Total euclidean length of a polyline (0 for a degenerate one).
pub fn path_length(p: &Polyline) -> f64 {
    p.segments().map(|(a, b)| a.distance(b)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    #[test]
    fn steer_clips_to_range() {
        let out = steer(&pt(&[0.0, 0.0]), &pt(&[3.0, 4.0]), 1.0);
        assert!(approx_eq(out[0], 0.6), "got {}", out[0]);
        assert!(approx_eq(out[1], 0.8), "got {}", out[1]);
        assert!(approx_eq(pt(&[0.0, 0.0]).distance(&out), 1.0));
    }

    #[test]
    fn steer_within_range_returns_target_exactly() {
        let to = pt(&[0.3, 0.4]);
        assert_eq!(steer(&pt(&[0.0, 0.0]), &to, 1.0), to);
    }

    #[test]
    fn steer_fixed_point() {
        let x = pt(&[2.5, -1.0]);
        assert_eq!(steer(&x, &x, 0.7), x);
    }

    #[test]
    fn line_endpoints_and_length() {
        let l = line(&pt(&[0.0, 0.0]), &pt(&[3.0, 4.0]));
        assert_eq!(l.waypoints().len(), 2);
        assert_eq!(path_length(&l), 5.0);
    }

    #[test]
    fn line_degenerate() {
        let l = line(&pt(&[1.0, 2.0]), &pt(&[1.0, 2.0]));
        assert!(l.is_degenerate());
        assert_eq!(path_length(&l), 0.0);
    }

    #[test]
    fn concat_shares_junction() {
        let p1 = line(&pt(&[0.0, 0.0]), &pt(&[1.0, 0.0]));
        let p2 = line(&pt(&[1.0, 0.0]), &pt(&[1.0, 1.0]));
        let joined = concat(&p1, &p2).unwrap();
        assert_eq!(joined.waypoints().len(), 3);
        assert!(approx_eq(path_length(&joined), 2.0));
    }

    #[test]
    fn concat_rejects_junction_mismatch() {
        let p1 = line(&pt(&[0.0, 0.0]), &pt(&[1.0, 0.0]));
        let p2 = line(&pt(&[1.5, 0.0]), &pt(&[1.0, 1.0]));
        assert!(matches!(
            concat(&p1, &p2),
            Err(Error::PolylineJunctionMismatch)
        ));
    }

    #[test]
    fn concat_degenerate_is_identity() {
        let p1 = line(&pt(&[0.0, 0.0]), &pt(&[1.0, 0.0]));
        let end = Polyline::degenerate(pt(&[1.0, 0.0]));
        assert_eq!(concat(&p1, &end).unwrap(), p1);
        let start = Polyline::degenerate(pt(&[0.0, 0.0]));
        assert_eq!(concat(&start, &p1).unwrap(), p1);
    }

    #[test]
    fn polyline_rejects_consecutive_duplicates() {
        let err = Polyline::from_waypoints(vec![pt(&[0.0]), pt(&[0.0]), pt(&[1.0])]);
        assert!(err.is_err());
    }

    #[test]
    fn path_length_matches_independent_resummation() {
        // 100 waypoints on a unit-step staircase: the length is exactly 99.
        let mut waypoints = Vec::new();
        let (mut x, mut y) = (0.0, 0.0);
        for i in 0..100 {
            waypoints.push(pt(&[x, y]));
            if i % 2 == 0 {
                x += 1.0;
            } else {
                y += 1.0;
            }
        }
        let p = Polyline::from_waypoints(waypoints.clone()).unwrap();
        assert_eq!(path_length(&p), 99.0);
        // Index-based resummation as a second route to the same number.
        let mut total = 0.0;
        for i in 1..waypoints.len() {
            total += waypoints[i - 1].distance(&waypoints[i]);
        }
        assert_eq!(path_length(&p), total);
    }

    fn arb_point(d: usize) -> impl Strategy<Value = Point> {
        prop::collection::vec(-100.0..100.0f64, d).prop_map(Point::new)
    }

    fn arb_polyline(d: usize) -> impl Strategy<Value = Polyline> {
        prop::collection::vec(arb_point(d), 2..12).prop_filter_map("consecutive dupes", |w| {
            Polyline::from_waypoints(w).ok()
        })
    }

    proptest! {
        #[test]
        fn steer_never_moves_past_target(
            a in arb_point(3), b in arb_point(3), eta in 1e-3..50.0f64,
        ) {
            let out = steer(&a, &b, eta);
            prop_assert!(out.distance(&b) <= a.distance(&b) + TOL);
            prop_assert!(a.distance(&out) <= eta * (1.0 + 1e-12));
        }

        #[test]
        fn steer_idempotent(
            a in arb_point(2), b in arb_point(2), eta in 1e-3..50.0f64,
        ) {
            let one = steer(&a, &b, eta);
            let two = steer(&a, &one, eta);
            for (u, v) in one.coords().iter().zip(two.coords()) {
                prop_assert!(approx_eq(*u, *v), "{u} vs {v}");
            }
        }

        #[test]
        fn concat_adds_lengths(p in arb_polyline(2), q in arb_polyline(2)) {
            // Rebase q so it starts bit-exactly where p ends, then join.
            let base = p.last().clone();
            let origin = q.first().clone();
            let rebased: Vec<Point> = q
                .waypoints()
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    if i == 0 {
                        base.clone()
                    } else {
                        Point::new(
                            w.coords()
                                .iter()
                                .zip(origin.coords())
                                .zip(base.coords())
                                .map(|((c, o), b)| b + (c - o))
                                .collect(),
                        )
                    }
                })
                .collect();
            // Rebasing can, in principle, collapse consecutive waypoints.
            let Ok(q2) = Polyline::from_waypoints(rebased) else {
                return Ok(());
            };
            let joined = concat(&p, &q2).unwrap();
            let lhs = path_length(&joined);
            let rhs = path_length(&p) + path_length(&q2);
            let scale = 1f64.max(lhs.abs()).max(rhs.abs());
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
        }
    }
}
