//! Incremental kd-tree over vertex positions, with exact or
//! (1+eps)-approximate nearest-neighbor and radius queries.
//!
//! The tree keeps points in leaf buckets and rebuilds itself whenever the
//! point count doubles, which keeps it balanced under the incremental
//! insertions the planners perform. Query results are a function of the
//! point set alone (ties broken by smallest id), never of insertion order
//! or tree shape — that is what makes planner runs reproducible.

use crate::geometry::Point;

const LEAF_CAPACITY: usize = 16;

#[derive(Clone, Debug)]
enum Node {
    Leaf {
        /// Indices into `KdIndex::entries`.
        items: Vec<u32>,
    },
    Split {
        axis: usize,
        threshold: f64,
        left: Box<Node>,
        right: Box<Node>,
    },
}

/// Spatial index mapping `u32` ids to points in `R^d`.
#[derive(Clone, Debug)]
pub struct KdIndex {
    dim: usize,
    ids: Vec<u32>,
    points: Vec<Point>,
    /// Dense id-presence bitmap for duplicate detection.
    seen: Vec<bool>,
    root: Node,
    /// Inserts since the last rebuild.
    pending: usize,
    /// Size at which the next rebuild triggers.
    rebuild_at: usize,
    visited: std::cell::Cell<u64>,
}

impl KdIndex {
    /// An empty index over `R^dim`.
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        KdIndex {
            dim,
            ids: Vec::new(),
            points: Vec::new(),
            seen: Vec::new(),
            root: Node::Leaf { items: Vec::new() },
            pending: 0,
            rebuild_at: 2 * LEAF_CAPACITY,
            visited: std::cell::Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nodes visited by queries since construction (instrumentation for
    /// scaling checks).
    pub fn nodes_visited(&self) -> u64 {
        self.visited.get()
    }

    /// Inserts a point under a fresh id.
    ///
    /// Duplicate ids are a usage error and panic; duplicate *coordinates*
    /// under distinct ids are fine.
    pub fn insert(&mut self, id: u32, p: Point) {
        assert_eq!(p.dim(), self.dim, "point dimension mismatch");
        let slot = id as usize;
        if slot >= self.seen.len() {
            self.seen.resize(slot + 1, false);
        }
        assert!(!self.seen[slot], "duplicate id {id} inserted into index");
        self.seen[slot] = true;
        let entry = self.ids.len() as u32;
        self.ids.push(id);
        self.points.push(p);
        self.pending += 1;
        if self.ids.len() >= self.rebuild_at {
            self.rebuild();
        } else {
            Self::insert_entry(&mut self.root, &self.points, entry, 0, self.dim);
        }
    }

    fn insert_entry(node: &mut Node, points: &[Point], entry: u32, depth: usize, dim: usize) {
        match node {
            Node::Leaf { items } => items.push(entry),
            Node::Split {
                axis,
                threshold,
                left,
                right,
            } => {
                let c = points[entry as usize][*axis];
                let child = if c < *threshold { left } else { right };
                Self::insert_entry(child, points, entry, depth + 1, dim);
            }
        }
    }

    /// Rebuilds the tree with median splits, cycling the split axis by
    /// depth. Triggered when the size doubles since the last rebuild.
    fn rebuild(&mut self) {
        let mut entries: Vec<u32> = (0..self.points.len() as u32).collect();
        self.root = Self::build(&mut entries, &self.points, 0, self.dim);
        self.pending = 0;
        self.rebuild_at = (2 * self.points.len()).max(2 * LEAF_CAPACITY);
    }

    fn build(entries: &mut [u32], points: &[Point], depth: usize, dim: usize) -> Node {
        if entries.len() <= LEAF_CAPACITY {
            return Node::Leaf {
                items: entries.to_vec(),
            };
        }
        let axis = depth % dim;
        let mid = entries.len() / 2;
        entries.select_nth_unstable_by(mid, |a, b| {
            let ca = points[*a as usize][axis];
            let cb = points[*b as usize][axis];
            ca.partial_cmp(&cb)
                .expect("finite coordinates")
                .then(a.cmp(b))
        });
        let threshold = points[entries[mid] as usize][axis];
        let (lo, hi) = entries.split_at_mut(mid);
        // Points equal to the threshold may sit on either side of the
        // median slot; routing inserts by `< threshold` matches this split
        // because select_nth puts every strictly-smaller key left of mid.
        let left = Self::build(lo, points, depth + 1, dim);
        let right = Self::build(hi, points, depth + 1, dim);
        Node::Split {
            axis,
            threshold,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Exact nearest neighbor: smallest distance, ties by smallest id.
    /// Returns `None` on an empty index.
    pub fn nearest(&self, q: &Point) -> Option<(u32, f64)> {
        self.nearest_approx(q, 0.0)
    }

    /// (1+eps)-approximate nearest neighbor: the returned vertex is within
    /// `(1+eps)` of the true nearest distance. `eps = 0` is exact.
    pub fn nearest_approx(&self, q: &Point, eps: f64) -> Option<(u32, f64)> {
        assert_eq!(q.dim(), self.dim, "query dimension mismatch");
        assert!(eps >= 0.0, "eps must be non-negative");
        if self.is_empty() {
            return None;
        }
        let mut best: Option<(u32, f64)> = None;
        let mut lo = vec![f64::NEG_INFINITY; self.dim];
        let mut hi = vec![f64::INFINITY; self.dim];
        self.nearest_rec(&self.root, q, eps, &mut lo, &mut hi, &mut best);
        best.map(|(id, d2)| (id, d2.sqrt()))
    }

    /// Squared distance from `q` to the axis box `[lo, hi]`.
    fn box_dist2(q: &Point, lo: &[f64], hi: &[f64]) -> f64 {
        q.coords()
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(c, (l, h))| {
                let gap = (l - c).max(c - h).max(0.0);
                gap * gap
            })
            .sum()
    }

    fn consider(&self, entry: u32, q: &Point, best: &mut Option<(u32, f64)>) {
        let id = self.ids[entry as usize];
        let d2 = q.squared_distance(&self.points[entry as usize]);
        match best {
            Some((bid, bd2)) => {
                if d2 < *bd2 || (d2 == *bd2 && id < *bid) {
                    *best = Some((id, d2));
                }
            }
            None => *best = Some((id, d2)),
        }
    }

    fn nearest_rec(
        &self,
        node: &Node,
        q: &Point,
        eps: f64,
        lo: &mut [f64],
        hi: &mut [f64],
        best: &mut Option<(u32, f64)>,
    ) {
        self.visited.set(self.visited.get() + 1);
        // Prune: even the closest point of this cell cannot beat the
        // current best by more than the approximation slack.
        if let Some((_, bd2)) = best {
            let slack = (1.0 + eps) * (1.0 + eps);
            if Self::box_dist2(q, lo, hi) * slack > *bd2 {
                return;
            }
        }
        match node {
            Node::Leaf { items } => {
                for &e in items {
                    self.consider(e, q, best);
                }
            }
            Node::Split {
                axis,
                threshold,
                left,
                right,
            } => {
                let near_left = q[*axis] < *threshold;
                let (first, second) = if near_left {
                    (left.as_ref(), right.as_ref())
                } else {
                    (right.as_ref(), left.as_ref())
                };
                let (save_lo, save_hi) = (lo[*axis], hi[*axis]);
                if near_left {
                    hi[*axis] = *threshold;
                    self.nearest_rec(first, q, eps, lo, hi, best);
                    hi[*axis] = save_hi;
                    lo[*axis] = *threshold;
                    self.nearest_rec(second, q, eps, lo, hi, best);
                    lo[*axis] = save_lo;
                } else {
                    lo[*axis] = *threshold;
                    self.nearest_rec(first, q, eps, lo, hi, best);
                    lo[*axis] = save_lo;
                    hi[*axis] = *threshold;
                    self.nearest_rec(second, q, eps, lo, hi, best);
                    hi[*axis] = save_hi;
                }
            }
        }
    }

    /// All ids within euclidean distance `r` of `q` (closed ball), sorted
    /// ascending by id. Exact.
    pub fn near(&self, q: &Point, r: f64) -> Vec<u32> {
        self.near_approx(q, r, 0.0)
    }

    /// Approximate radius query: returns every id within `r`, and possibly
    /// ids up to `(1+eps) r`. `eps = 0` is exact. Sorted ascending by id.
    pub fn near_approx(&self, q: &Point, r: f64, eps: f64) -> Vec<u32> {
        assert_eq!(q.dim(), self.dim, "query dimension mismatch");
        assert!(r >= 0.0, "radius must be non-negative");
        assert!(eps >= 0.0, "eps must be non-negative");
        let mut out = Vec::new();
        let mut lo = vec![f64::NEG_INFINITY; self.dim];
        let mut hi = vec![f64::INFINITY; self.dim];
        self.near_rec(&self.root, q, r, eps, &mut lo, &mut hi, &mut out);
        out.sort_unstable();
        out
    }

    /// Squared distance from `q` to the farthest point of the finite part
    /// of the cell `[lo, hi]`; infinite for unbounded cells.
    fn box_far_dist2(q: &Point, lo: &[f64], hi: &[f64]) -> f64 {
        q.coords()
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(c, (l, h))| {
                if l.is_infinite() || h.is_infinite() {
                    f64::INFINITY
                } else {
                    let gap = (c - l).abs().max((h - c).abs());
                    gap * gap
                }
            })
            .sum()
    }

    #[allow(clippy::too_many_arguments)]
    fn near_rec(
        &self,
        node: &Node,
        q: &Point,
        r: f64,
        eps: f64,
        lo: &mut [f64],
        hi: &mut [f64],
        out: &mut Vec<u32>,
    ) {
        self.visited.set(self.visited.get() + 1);
        if Self::box_dist2(q, lo, hi) > r * r {
            return;
        }
        // Approximate mode: a cell entirely within (1+eps) r may be taken
        // wholesale without per-point distance checks.
        if eps > 0.0 {
            let reach = (1.0 + eps) * r;
            if Self::box_far_dist2(q, lo, hi) <= reach * reach {
                Self::collect_all(node, &self.ids, out);
                return;
            }
        }
        match node {
            Node::Leaf { items } => {
                for &e in items {
                    if q.squared_distance(&self.points[e as usize]) <= r * r {
                        out.push(self.ids[e as usize]);
                    }
                }
            }
            Node::Split {
                axis,
                threshold,
                left,
                right,
            } => {
                let (save_lo, save_hi) = (lo[*axis], hi[*axis]);
                hi[*axis] = *threshold;
                self.near_rec(left, q, r, eps, lo, hi, out);
                hi[*axis] = save_hi;
                lo[*axis] = *threshold;
                self.near_rec(right, q, r, eps, lo, hi, out);
                lo[*axis] = save_lo;
            }
        }
    }

    fn collect_all(node: &Node, ids: &[u32], out: &mut Vec<u32>) {
        match node {
            Node::Leaf { items } => out.extend(items.iter().map(|&e| ids[e as usize])),
            Node::Split { left, right, .. } => {
                Self::collect_all(left, ids, out);
                Self::collect_all(right, ids, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{Aabb, SampleStream};

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec())
    }

    /// Brute-force oracle mirroring the index contract.
    struct LinearScan {
        entries: Vec<(u32, Point)>,
    }

    impl LinearScan {
        fn nearest(&self, q: &Point) -> Option<(u32, f64)> {
            self.entries
                .iter()
                .map(|(id, p)| (*id, q.distance(p)))
                .min_by(|(ia, da), (ib, db)| {
                    da.partial_cmp(db).unwrap().then(ia.cmp(ib))
                })
        }

        fn near(&self, q: &Point, r: f64) -> Vec<u32> {
            let mut out: Vec<u32> = self
                .entries
                .iter()
                .filter(|(_, p)| q.distance(p) <= r)
                .map(|(id, _)| *id)
                .collect();
            out.sort_unstable();
            out
        }
    }

    fn random_instance(n: usize, seed: u64) -> (KdIndex, LinearScan) {
        let b = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let mut s = SampleStream::new(seed);
        let mut idx = KdIndex::new(2);
        let mut entries = Vec::new();
        for id in 0..n as u32 {
            let p = s.sample_in(&b);
            idx.insert(id, p.clone());
            entries.push((id, p));
        }
        (idx, LinearScan { entries })
    }

    #[test]
    fn empty_and_single() {
        let mut idx = KdIndex::new(2);
        assert!(idx.is_empty());
        assert_eq!(idx.nearest(&pt(&[0.0, 0.0])), None);
        assert!(idx.near(&pt(&[0.0, 0.0]), 1.0).is_empty());
        idx.insert(0, pt(&[0.5, 0.5]));
        assert_eq!(idx.len(), 1);
        let (id, d) = idx.nearest(&pt(&[0.5, 0.0])).unwrap();
        assert_eq!(id, 0);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn thousand_inserts_report_size() {
        let (idx, _) = random_instance(1000, 5);
        assert_eq!(idx.len(), 1000);
    }

    #[test]
    fn duplicate_coordinates_distinct_ids() {
        let mut idx = KdIndex::new(2);
        idx.insert(3, pt(&[0.25, 0.25]));
        idx.insert(9, pt(&[0.25, 0.25]));
        let hits = idx.near(&pt(&[0.25, 0.25]), 1e-9);
        assert_eq!(hits, vec![3, 9]);
        // Nearest tie resolves to the smaller id.
        assert_eq!(idx.nearest(&pt(&[0.25, 0.25])).unwrap().0, 3);
    }

    #[test]
    #[should_panic(expected = "duplicate id")]
    fn duplicate_id_is_a_usage_error() {
        let mut idx = KdIndex::new(2);
        idx.insert(1, pt(&[0.1, 0.1]));
        idx.insert(1, pt(&[0.2, 0.2]));
    }

    #[test]
    fn matches_linear_scan_exactly() {
        let (idx, oracle) = random_instance(2000, 11);
        let b = Aabb::new(vec![-0.2, -0.2], vec![1.2, 1.2]).unwrap();
        let mut s = SampleStream::new(12);
        for _ in 0..500 {
            let q = s.sample_in(&b);
            assert_eq!(idx.nearest(&q), oracle.nearest(&q).map(|(i, d)| (i, d)));
        }
        for k in 0..100 {
            let q = s.sample_in(&b);
            let r = 0.02 + 0.003 * k as f64;
            assert_eq!(idx.near(&q, r), oracle.near(&q, r));
        }
    }

    #[test]
    fn insertion_order_does_not_change_answers() {
        let b = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let mut s = SampleStream::new(77);
        let points: Vec<Point> = (0..500).map(|_| s.sample_in(&b)).collect();
        let mut forward = KdIndex::new(2);
        for (id, p) in points.iter().enumerate() {
            forward.insert(id as u32, p.clone());
        }
        let mut backward = KdIndex::new(2);
        for (id, p) in points.iter().enumerate().rev() {
            backward.insert(id as u32, p.clone());
        }
        for _ in 0..200 {
            let q = s.sample_in(&b);
            assert_eq!(forward.nearest(&q), backward.nearest(&q));
            assert_eq!(forward.near(&q, 0.1), backward.near(&q, 0.1));
        }
    }

    #[test]
    fn approximate_queries_hold_their_bounds() {
        let (idx, oracle) = random_instance(3000, 21);
        let b = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let mut s = SampleStream::new(22);
        let eps = 0.5;
        for _ in 0..300 {
            let q = s.sample_in(&b);
            let exact = oracle.nearest(&q).unwrap().1;
            let approx = idx.nearest_approx(&q, eps).unwrap().1;
            assert!(approx <= exact * (1.0 + eps) + 1e-15);
        }
        for _ in 0..100 {
            let q = s.sample_in(&b);
            let r = 0.05;
            let within_r = oracle.near(&q, r);
            let got = idx.near_approx(&q, r, eps);
            // Everything within r is found...
            for id in &within_r {
                assert!(got.binary_search(id).is_ok());
            }
            // ...and nothing beyond (1+eps) r sneaks in.
            let permitted = oracle.near(&q, r * (1.0 + eps) * (1.0 + 1e-12));
            for id in &got {
                assert!(permitted.binary_search(id).is_ok());
            }
        }
    }

    #[test]
    fn visited_nodes_grow_sublinearly() {
        // Mean nearest-query cost on 10x the points must stay well under
        // 10x the nodes (log-like growth for balanced trees).
        let cost_per_query = |n: usize| -> f64 {
            let (idx, _) = random_instance(n, 31);
            let b = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
            let mut s = SampleStream::new(32);
            let before = idx.nodes_visited();
            for _ in 0..200 {
                idx.nearest(&s.sample_in(&b));
            }
            (idx.nodes_visited() - before) as f64 / 200.0
        };
        let small = cost_per_query(10_000);
        let large = cost_per_query(100_000);
        assert!(
            large < small * 4.0,
            "visited {small:.1} -> {large:.1}: growth is not sublinear"
        );
    }
}
