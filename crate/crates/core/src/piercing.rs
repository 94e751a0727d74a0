//! Piercing checks for the diametral disks of a maximum spanning tree.
//!
//! The center `c*` of the smallest enclosing circle lies in every disk whose
//! diameter is a tree edge; equivalently every tree edge subtends an angle of
//! at least π/2 at `c*`. This module measures that claim per edge and checks
//! the quadrant-arc facts it rests on.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enclosing::{smallest_enclosing_circle, Enclosing};
use crate::error::{Error, Result};
use crate::geom::{angle_at, dist, in_diametral_disk, Circle, Disk, Edge, Point, Tolerance};
use crate::spanning::{max_spanning_tree, Instance, Tree};

/// Relative band for "lies on the enclosing circle".
const ON_CIRCLE_EPS: f64 = 1e-9;

pub fn diametral_disks(inst: &Instance, tree: &Tree) -> Vec<Disk> {
    tree.edges.iter().map(|&e| Disk::diametral(inst.points(), e)).collect()
}

/// One tree edge as seen from the enclosing-circle center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub edge: Edge,
    /// `∠p c* q` in radians; π when an endpoint sits on `c*`.
    pub angle: f64,
    /// `(p - c*)·(q - c*)` divided by `|pq|²/4`; non-positive means inside.
    pub dot_slack: f64,
    pub contains_center: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiercingReport {
    pub id: Option<String>,
    pub n: usize,
    pub tree: Tree,
    pub circle: Circle,
    pub support: Vec<usize>,
    pub sec_seed: u64,
    pub edges: Vec<EdgeRecord>,
    /// Minimum per-edge angle; π for an edgeless tree.
    pub min_angle: f64,
    pub verdict: bool,
}

/// Builds the tree and enclosing circle, then checks that the center pierces
/// every diametral disk.
pub fn verify_piercing(inst: &Instance, tol: &Tolerance, sec_seed: u64) -> PiercingReport {
    let tree = max_spanning_tree(inst);
    let enclosing = smallest_enclosing_circle(inst, sec_seed);
    piercing_report(inst, tree, &enclosing, tol)
}

/// Per-edge piercing verdicts for an arbitrary tree against a given circle.
pub fn piercing_report(
    inst: &Instance,
    tree: Tree,
    enclosing: &Enclosing,
    tol: &Tolerance,
) -> PiercingReport {
    let c = enclosing.circle.center;
    let pts = inst.points();
    let edges: Vec<EdgeRecord> = tree
        .edges
        .iter()
        .map(|&edge| {
            let (p, q) = edge.endpoints(pts);
            let half_sq = 0.25 * edge.weight * edge.weight;
            let dot = (p - c).dot(q - c);
            let contains_center = in_diametral_disk(p, q, c, tol).unwrap_or(true);
            let angle = angle_at(c, p, q, tol).unwrap_or(PI);
            let dot_slack = if half_sq > 0.0 { dot / half_sq } else { 0.0 };
            EdgeRecord { edge, angle, dot_slack, contains_center }
        })
        .collect();
    let min_angle = edges.iter().map(|r| r.angle).fold(PI, f64::min);
    let verdict = edges.iter().all(|r| r.contains_center);
    PiercingReport {
        id: inst.id().map(str::to_owned),
        n: inst.len(),
        tree,
        circle: enclosing.circle,
        support: enclosing.support.indices.clone(),
        sec_seed: enclosing.seed,
        edges,
        min_angle,
        verdict,
    }
}

/// Smallest angle any tree edge subtends at the enclosing-circle center.
///
/// Unlike the report, a tree endpoint sitting on the center is an error here.
pub fn min_angle_at_center(inst: &Instance, tol: &Tolerance, sec_seed: u64) -> Result<f64> {
    let tree = max_spanning_tree(inst);
    let c = smallest_enclosing_circle(inst, sec_seed).circle.center;
    let mut min = PI;
    for e in &tree.edges {
        let (p, q) = e.endpoints(inst.points());
        min = min.min(angle_at(c, p, q, tol)?);
    }
    Ok(min)
}

/// Similarity transform onto the unit enclosing circle.
///
/// Applied as: translate, scale, rotate counter-clockwise, then mirror in the
/// x-axis when `reflected`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedFrame {
    pub translation: Point,
    pub rotation: f64,
    pub scale: f64,
    pub reflected: bool,
}

impl NormalizedFrame {
    pub fn apply(&self, p: Point) -> Point {
        let v = ((p + self.translation) * self.scale).rotated(self.rotation);
        if self.reflected {
            Point::new(v.x, -v.y)
        } else {
            v
        }
    }
}

/// Frame with `c*` at the origin, `r* = 1`, the endpoint of `edge` farther from
/// `c*` on the negative x-axis and the other endpoint in the closed lower half
/// plane (inside Q3 whenever the edge subtends at most π/2). Equal distances
/// pick the lower index as the farther endpoint.
pub fn normalize_frame(
    inst: &Instance,
    edge: Edge,
    sec_seed: u64,
) -> Result<(NormalizedFrame, Vec<Point>)> {
    let circle = smallest_enclosing_circle(inst, sec_seed).circle;
    if circle.radius <= Tolerance::default().eps_abs {
        return Err(Error::ZeroRadius);
    }
    let pts = inst.points();
    let c = circle.center;
    let (di, dj) = (dist(c, pts[edge.i]), dist(c, pts[edge.j]));
    let (far, near) = if dj > di * (1.0 + 1e-12) { (edge.j, edge.i) } else { (edge.i, edge.j) };

    let scale = 1.0 / circle.radius;
    let rel = (pts[far] - c) * scale;
    let mut rotation = PI - rel.y.atan2(rel.x);
    if rotation > PI {
        rotation -= 2.0 * PI;
    }
    let mut frame = NormalizedFrame { translation: -c, rotation, scale, reflected: false };
    frame.reflected = frame.apply(pts[near]).y > 0.0;
    let mapped = pts.iter().map(|&p| frame.apply(p)).collect();
    Ok((frame, mapped))
}

/// Points of the enclosing circle falling on each quadrant arc A1..A4.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcOccupancy {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub a3: Vec<usize>,
    pub a4: Vec<usize>,
}

impl ArcOccupancy {
    pub fn opposite_pair_occupied(&self) -> bool {
        (!self.a1.is_empty() && !self.a3.is_empty()) || (!self.a2.is_empty() && !self.a4.is_empty())
    }
}

/// Assigns every point on the circle to a quadrant arc of a frame rotated by
/// `theta`. A point on a dividing axis goes to the lower-indexed arc.
pub fn arc_occupancy(inst: &Instance, circle: &Circle, theta: f64) -> ArcOccupancy {
    let mut occ = ArcOccupancy::default();
    let r = circle.radius;
    for (i, &p) in inst.points().iter().enumerate() {
        if (dist(circle.center, p) - r).abs() > ON_CIRCLE_EPS * r {
            continue;
        }
        let phi = ((p - circle.center).polar_angle() - theta).rem_euclid(2.0 * PI);
        let arc = if phi <= FRAC_PI_2 {
            &mut occ.a1
        } else if phi <= PI {
            &mut occ.a2
        } else if phi <= 3.0 * FRAC_PI_2 {
            &mut occ.a3
        } else {
            &mut occ.a4
        };
        arc.push(i);
    }
    occ
}

/// Both arcs of one opposite pair hold a point of the circle.
pub fn lemma1_check(inst: &Instance, theta: f64, sec_seed: u64) -> bool {
    let circle = smallest_enclosing_circle(inst, sec_seed).circle;
    if circle.radius == 0.0 {
        return true;
    }
    arc_occupancy(inst, &circle, theta).opposite_pair_occupied()
}

/// Sampled margins of the three distance inequalities for a pair `p`, `q`
/// in the normalized frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcInequalityReport {
    /// `min |qt| - |pq|` over `t` on A1 ∪ A2.
    pub near_margin: f64,
    /// `min |pt| - |pq|` over `t` on A1 ∪ A4.
    pub far_margin: f64,
    /// `min |tt'| - |pq|` over `t` on A2, `t'` on A4.
    pub cross_margin: f64,
    pub holds: bool,
}

impl ArcInequalityReport {
    pub fn min_margin(&self) -> f64 {
        self.near_margin.min(self.far_margin).min(self.cross_margin)
    }
}

/// Samples arc points and checks that each is strictly farther from the pair
/// than `|pq|`.
///
/// Requires `p` on the negative x-axis with `|p| <= 1`, `q` in the closed
/// quarter Q3 with `|q| <= |p|`, and `∠p O q < π/2`.
pub fn lemma2_check(p: Point, q: Point, samples: usize, seed: u64) -> Result<ArcInequalityReport> {
    const EPS: f64 = 1e-12;
    let tol = Tolerance::default();
    let fail = |why: &str| Err(Error::PreconditionViolated(why.to_owned()));
    if p.y.abs() > EPS || p.x >= 0.0 {
        return fail("p must lie on the negative x-axis");
    }
    if p.norm() > 1.0 + EPS {
        return fail("p must lie inside the unit circle");
    }
    if q.x > EPS || q.y > EPS {
        return fail("q must lie in quarter Q3");
    }
    if q.norm() > p.norm() * (1.0 + EPS) {
        return fail("q must be no farther from the origin than p");
    }
    match angle_at(Point::ORIGIN, p, q, &tol) {
        Ok(a) if a < FRAC_PI_2 => {}
        Ok(_) => return fail("angle pOq must be below pi/2"),
        Err(_) => return fail("q must differ from the origin"),
    }
    if samples == 0 {
        return fail("at least one sample is required");
    }

    let pq = dist(p, q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let on_arc = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
        let t: f64 = rng.random_range(lo..hi);
        Point::new(t.cos(), t.sin())
    };
    let mut near = f64::INFINITY;
    let mut far = f64::INFINITY;
    let mut cross = f64::INFINITY;
    for _ in 0..samples {
        let t = on_arc(&mut rng, 0.0, PI);
        near = near.min(dist(q, t) - pq);
        let t = on_arc(&mut rng, -FRAC_PI_2, FRAC_PI_2);
        far = far.min(dist(p, t) - pq);
        let t = on_arc(&mut rng, FRAC_PI_2, PI);
        let t2 = on_arc(&mut rng, 3.0 * FRAC_PI_2, 2.0 * PI);
        cross = cross.min(dist(t, t2) - pq);
    }
    Ok(ArcInequalityReport {
        near_margin: near,
        far_margin: far,
        cross_margin: cross,
        holds: near > 0.0 && far > 0.0 && cross > 0.0,
    })
}

/// Whether every three disks (repetition allowed) share a point.
pub fn helly_triples(disks: &[Disk], tol: &Tolerance) -> bool {
    let n = disks.len();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if !triple_intersects(&disks[i], &disks[j], &disks[k], tol) {
                    return false;
                }
            }
        }
    }
    true
}

/// Three closed disks intersect iff their common region contains a disk
/// center or a crossing point of two boundaries.
fn triple_intersects(a: &Disk, b: &Disk, c: &Disk, tol: &Tolerance) -> bool {
    let inside = |x: Point| a.contains(x, tol) && b.contains(x, tol) && c.contains(x, tol);
    if [a.center, b.center, c.center].into_iter().any(inside) {
        return true;
    }
    [(a, b), (a, c), (b, c)]
        .into_iter()
        .flat_map(|(u, v)| boundary_crossings(u, v, tol))
        .any(inside)
}

fn boundary_crossings(u: &Disk, v: &Disk, tol: &Tolerance) -> Vec<Point> {
    let delta = v.center - u.center;
    let d = delta.norm();
    if d <= tol.eps_abs {
        return Vec::new();
    }
    let a = (d * d + u.radius * u.radius - v.radius * v.radius) / (2.0 * d);
    let mut h2 = u.radius * u.radius - a * a;
    let band = tol.eps_rel * 4.0 * u.radius.max(v.radius).powi(2);
    if h2 < -band {
        return Vec::new();
    }
    h2 = h2.max(0.0);
    let dir = delta * (1.0 / d);
    let mid = u.center + dir * a;
    let off = Point::new(-dir.y, dir.x) * h2.sqrt();
    vec![mid + off, mid - off]
}
