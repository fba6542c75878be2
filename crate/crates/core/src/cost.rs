//! Path-cost functionals: plain euclidean length, or the line integral of a
//! piecewise-constant positive field given by weighted boxes.
//!
//! Both models are strictly positive on nondegenerate segments, additive
//! over concatenation, and monotone under extension. The line integral is
//! evaluated by exact parametric clipping — no quadrature, no tolerance.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{Point, Polyline};
use crate::world::Aabb;

/// A closed box carrying a constant positive weight.
#[derive(Clone, Debug)]
pub struct WeightedRegion {
    pub region: Aabb,
    pub weight: f64,
}

/// Cost functional over paths.
#[derive(Clone, Debug)]
pub enum CostModel {
    /// `cost = euclidean length`.
    EuclideanLength,
    /// `cost = integral of a piecewise-constant field`: `weight` inside each
    /// region (closed boxes, pairwise interior-disjoint), `default_weight`
    /// elsewhere.
    LineIntegral {
        regions: Vec<WeightedRegion>,
        default_weight: f64,
    },
}

impl CostModel {
    pub fn euclidean() -> Self {
        CostModel::EuclideanLength
    }

    /// Builds a line-integral model, validating positivity and pairwise
    /// interior-disjointness of the regions.
    pub fn line_integral(
        regions: Vec<WeightedRegion>,
        default_weight: f64,
    ) -> Result<Self, Error> {
        if !(default_weight.is_finite() && default_weight > 0.0) {
            return Err(Error::InvalidCostModel(
                "default weight must be positive and finite".into(),
            ));
        }
        for (i, r) in regions.iter().enumerate() {
            if !(r.weight.is_finite() && r.weight > 0.0) {
                return Err(Error::InvalidCostModel(format!(
                    "region {i} weight must be positive and finite"
                )));
            }
        }
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                if boxes_interior_overlap(&regions[i].region, &regions[j].region) {
                    return Err(Error::InvalidCostModel(format!(
                        "regions {i} and {j} overlap; the field weight would be ambiguous"
                    )));
                }
            }
        }
        Ok(CostModel::LineIntegral {
            regions,
            default_weight,
        })
    }

    /// Cost of the straight segment from `a` to `b` (0 when `a == b`).
    pub fn segment_cost(&self, a: &Point, b: &Point) -> f64 {
        match self {
            CostModel::EuclideanLength => a.distance(b),
            CostModel::LineIntegral {
                regions,
                default_weight,
            } => {
                let length = a.distance(b);
                if length == 0.0 {
                    return 0.0;
                }
                // Clip the segment against every region box: the claimed
                // parameter intervals are disjoint up to measure-zero
                // touching (interiors do not overlap). A left-to-right sweep
                // charges each parameter stretch exactly once; where two
                // closed regions share a face the earlier-declared region
                // wins, a measure-zero convention fixed for reproducibility.
                let mut claims: Vec<(f64, f64, f64)> = regions
                    .iter()
                    .filter_map(|r| {
                        clip_param_interval(&r.region, a, b).map(|(t0, t1)| (t0, t1, r.weight))
                    })
                    .collect();
                claims.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite clip bounds"));
                let mut cost = 0.0;
                let mut cursor = 0.0;
                for (t0, t1, w) in claims {
                    let start = t0.max(cursor);
                    if start < t1 {
                        cost += (t1 - start) * w;
                        cursor = t1;
                    }
                }
                cost += (1.0 - cursor).max(0.0) * default_weight;
                cost * length
            }
        }
    }

    /// Sum of segment costs along the polyline; 0 for a degenerate path.
    pub fn path_cost(&self, p: &Polyline) -> f64 {
        p.segments().map(|(a, b)| self.segment_cost(a, b)).sum()
    }

    /// Largest weight the model can assign (used by Lipschitz-style bounds).
    pub fn max_weight(&self) -> f64 {
        match self {
            CostModel::EuclideanLength => 1.0,
            CostModel::LineIntegral {
                regions,
                default_weight,
            } => regions
                .iter()
                .map(|r| r.weight)
                .fold(*default_weight, f64::max),
        }
    }
}

fn boxes_interior_overlap(a: &Aabb, b: &Aabb) -> bool {
    a.lo()
        .iter()
        .zip(a.hi())
        .zip(b.lo().iter().zip(b.hi()))
        .all(|((al, ah), (bl, bh))| ah > bl && al < bh)
}

/// Parameter interval `[t0, t1] ⊆ [0, 1]` of the part of segment `a`-`b`
/// inside the *closed* box, or `None` if the overlap has zero length.
fn clip_param_interval(box_: &Aabb, a: &Point, b: &Point) -> Option<(f64, f64)> {
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for i in 0..box_.dim() {
        let (l, h) = (box_.lo()[i], box_.hi()[i]);
        let (ai, bi) = (a[i], b[i]);
        let d = bi - ai;
        if d == 0.0 {
            if ai < l || ai > h {
                return None;
            }
        } else {
            let u = (l - ai) / d;
            let v = (h - ai) / d;
            let (lo_t, hi_t) = if u < v { (u, v) } else { (v, u) };
            t0 = t0.max(lo_t);
            t1 = t1.min(hi_t);
            if t0 >= t1 {
                return None;
            }
        }
    }
    Some((t0, t1))
}

/// Serializable cost description used by scenario files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CostSpec {
    EuclideanLength,
    LineIntegral {
        regions: Vec<RegionSpec>,
        default_weight: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionSpec {
    /// Per-axis `[lo, hi]` pairs.
    pub r#box: Vec<[f64; 2]>,
    pub weight: f64,
}

impl Default for CostSpec {
    fn default() -> Self {
        CostSpec::EuclideanLength
    }
}

impl CostSpec {
    pub fn build(&self) -> Result<CostModel, Error> {
        match self {
            CostSpec::EuclideanLength => Ok(CostModel::euclidean()),
            CostSpec::LineIntegral {
                regions,
                default_weight,
            } => {
                let regions = regions
                    .iter()
                    .map(|r| {
                        let (lo, hi): (Vec<f64>, Vec<f64>) =
                            r.r#box.iter().map(|[l, h]| (*l, *h)).unzip();
                        Ok(WeightedRegion {
                            region: Aabb::new(lo, hi)?,
                            weight: r.weight,
                        })
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                CostModel::line_integral(regions, *default_weight)
            }
        }
    }
}
