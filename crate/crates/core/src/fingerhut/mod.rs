//! Ellipse-ratio analysis for tree and matching edges.
//!
//! For a point `c` and an edge `(a, b)` the ratio `(|ca| + |cb|) / |ab|` is the
//! smallest `α` for which `c` lies in the ellipse with foci `a`, `b` and
//! string length `α·|ab|`. The function `ρ(c)`, the maximum of these ratios
//! over an edge set, is convex; its value at the enclosing-circle center is
//! at most √2 for maximum spanning trees.

mod matching;
mod search;
mod solver;

use serde::{Deserialize, Serialize};

pub use matching::{max_weight_matching_bruteforce, Matching, MATCHING_LIMIT};
pub use search::{lower_bound_search, LowerBound, SearchOptions, TARGET_RATIO};
pub use solver::{optimal_piercing_ratio, Optimum, SolverOptions};

use crate::enclosing::smallest_enclosing_circle;
use crate::error::{Error, Result};
use crate::geom::{dist, Edge, Point, Tolerance};
use crate::spanning::{max_spanning_tree, Instance};

/// Ellipse `{x : |a x| + |x b| <= alpha · |a b|}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseSpec {
    pub focus_a: Point,
    pub focus_b: Point,
    pub alpha: f64,
}

impl EllipseSpec {
    pub fn new(focus_a: Point, focus_b: Point, alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 1.0 {
            return Err(Error::PreconditionViolated(format!("ellipse ratio {alpha} is below 1")));
        }
        Ok(EllipseSpec { focus_a, focus_b, alpha })
    }

    /// Semi-axes `(major, minor)`.
    pub fn semi_axes(&self) -> (f64, f64) {
        let d = dist(self.focus_a, self.focus_b);
        let major = 0.5 * self.alpha * d;
        let minor = 0.5 * d * (self.alpha * self.alpha - 1.0).max(0.0).sqrt();
        (major, minor)
    }
}

pub fn edge_ratio(c: Point, a: Point, b: Point) -> Result<f64> {
    let ab = dist(a, b);
    if ab <= Tolerance::default().eps_abs {
        return Err(Error::DegenerateEdge { length: ab });
    }
    Ok((dist(c, a) + dist(c, b)) / ab)
}

/// Closed membership with a band of `eps_rel · |ab|`.
pub fn in_ellipse(e: &EllipseSpec, x: Point, tol: &Tolerance) -> bool {
    let ab = dist(e.focus_a, e.focus_b);
    dist(e.focus_a, x) + dist(x, e.focus_b) <= e.alpha * ab + tol.eps_rel * ab
}

/// `ρ(c)`: the largest edge ratio at `c`; 1 for an empty edge list.
pub fn max_ratio(c: Point, points: &[Point], edges: &[Edge]) -> f64 {
    edges
        .iter()
        .map(|e| (dist(c, points[e.i]) + dist(c, points[e.j])) / e.weight)
        .fold(1.0, f64::max)
}

/// `ρ(c*)` over the maximum spanning tree.
pub fn center_ratio_check(inst: &Instance, sec_seed: u64) -> f64 {
    let tree = max_spanning_tree(inst);
    let c = smallest_enclosing_circle(inst, sec_seed).circle.center;
    max_ratio(c, inst.points(), &tree.edges)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRatios {
    pub edge: Edge,
    pub at_center: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_optimum: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub id: Option<String>,
    pub center: Point,
    pub ratio_at_center: f64,
    pub edges: Vec<EdgeRatios>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<Optimum>,
}

/// Ratios of `edges` at the enclosing-circle center and, optionally, at the
/// min-max point.
pub fn ratio_report(
    inst: &Instance,
    edges: &[Edge],
    sec_seed: u64,
    optimal: Option<&SolverOptions>,
) -> Result<RatioReport> {
    let pts = inst.points();
    let center = smallest_enclosing_circle(inst, sec_seed).circle.center;
    let optimum = match optimal {
        Some(opts) if !edges.is_empty() => Some(optimal_piercing_ratio(pts, edges, opts)?),
        _ => None,
    };
    let edge_ratios = edges
        .iter()
        .map(|&edge| {
            let (a, b) = edge.endpoints(pts);
            let ratio_at = |c: Point| (dist(c, a) + dist(c, b)) / edge.weight;
            EdgeRatios {
                edge,
                at_center: ratio_at(center),
                at_optimum: optimum.as_ref().map(|o| ratio_at(o.point)),
            }
        })
        .collect();
    Ok(RatioReport {
        id: inst.id().map(str::to_owned),
        center,
        ratio_at_center: max_ratio(center, pts, edges),
        edges: edge_ratios,
        optimum,
    })
}

/// Edges whose ratio at `c` is within `band` of the maximum.
pub fn binding_edges(c: Point, points: &[Point], edges: &[Edge], band: f64) -> Vec<Edge> {
    let top = max_ratio(c, points, edges);
    edges
        .iter()
        .copied()
        .filter(|e| (dist(c, points[e.i]) + dist(c, points[e.j])) / e.weight >= top - band)
        .collect()
}
