//! Smallest enclosing circle.
//!
//! The main routine is the randomized incremental construction with
//! move-to-front (expected linear time). [`sec_bruteforce`] is an independent
//! cubic-time oracle used only for cross-checking.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{circumcircle, dist, Circle, Point, Tolerance};
use crate::spanning::Instance;

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEC_SEED: u64 = 0x5EC0_5EC0;

/// Relative slack on the radius when testing whether a point is already enclosed.
const INSIDE_EPS: f64 = 1e-12;
/// Relative band for deciding that a point lies on the circle.
const BOUNDARY_EPS: f64 = 1e-9;

/// Indices of the 2 or 3 input points that determine the circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enclosing {
    pub circle: Circle,
    pub support: SupportSet,
    /// Shuffle seed the construction used.
    pub seed: u64,
}

pub fn smallest_enclosing_circle(inst: &Instance, seed: u64) -> Enclosing {
    enclosing_circle_of(inst.points(), seed).expect("instances are never empty")
}

/// Smallest enclosing circle of a raw point slice.
pub fn enclosing_circle_of(points: &[Point], seed: u64) -> Result<Enclosing> {
    if points.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut circle = Circle::new(points[order[0]], 0.0);
    let mut support = vec![order[0]];
    for k in 1..order.len() {
        let idx = order[k];
        if encloses(&circle, points[idx]) {
            continue;
        }
        (circle, support) = with_one(points, &order[..k], idx);
        // move-to-front: points that forced a rebuild are tried first next time
        order.copy_within(0..k, 1);
        order[0] = idx;
    }

    let support = minimal_support(points, &circle, support);
    Ok(Enclosing { circle, support: SupportSet { indices: support }, seed })
}

fn encloses(circle: &Circle, p: Point) -> bool {
    dist(circle.center, p) <= circle.radius * (1.0 + INSIDE_EPS)
}

/// Smallest circle through `fixed` enclosing `points[order]`.
fn with_one(points: &[Point], order: &[usize], fixed: usize) -> (Circle, Vec<usize>) {
    let mut circle = Circle::new(points[fixed], 0.0);
    let mut support = vec![fixed];
    for (k, &idx) in order.iter().enumerate() {
        if !encloses(&circle, points[idx]) {
            (circle, support) = with_two(points, &order[..k], fixed, idx);
        }
    }
    (circle, support)
}

/// Smallest circle through `a` and `b` enclosing `points[order]`.
fn with_two(points: &[Point], order: &[usize], a: usize, b: usize) -> (Circle, Vec<usize>) {
    let mut circle = Circle::diametral(points[a], points[b]);
    let mut support = vec![a, b];
    for &idx in order {
        if !encloses(&circle, points[idx]) {
            (circle, support) = through_three(points, a, b, idx);
        }
    }
    (circle, support)
}

fn through_three(points: &[Point], a: usize, b: usize, c: usize) -> (Circle, Vec<usize>) {
    let tol = Tolerance::default();
    match circumcircle(points[a], points[b], points[c], &tol) {
        Ok(circle) => (circle, vec![a, b, c]),
        Err(_) => {
            // Collinear: the farthest pair is the diameter.
            let pairs = [(a, b), (a, c), (b, c)];
            let &(i, j) = pairs
                .iter()
                .max_by(|x, y| {
                    dist(points[x.0], points[x.1]).total_cmp(&dist(points[y.0], points[y.1]))
                })
                .unwrap();
            (Circle::diametral(points[i], points[j]), vec![i, j])
        }
    }
}

/// Reduces the support to 2 antipodal points or 3 points whose triangle holds
/// the center. Cocircular inputs can leave the construction with an obtuse
/// triple whose circumcircle happens to be the answer; those are replaced by
/// a triple chosen by angular sweep over every boundary point.
fn minimal_support(points: &[Point], circle: &Circle, found: Vec<usize>) -> Vec<usize> {
    if circle.radius == 0.0 {
        return sorted(found);
    }
    if determines(points, circle, &found) {
        return sorted(found);
    }
    let c = circle.center;
    let r = circle.radius;
    let mut boundary: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| (dist(c, **p) - r).abs() <= BOUNDARY_EPS * r)
        .map(|(i, p)| ((*p - c).polar_angle(), i))
        .collect();
    boundary.sort_by(|x, y| x.0.total_cmp(&y.0));

    let pi = std::f64::consts::PI;
    for &(ang, i) in &boundary {
        let target = if ang < pi { ang + pi } else { ang - pi };
        let at = boundary.partition_point(|&(a, _)| a < target);
        for k in [at.wrapping_sub(1), at, (at + 1) % boundary.len()] {
            if let Some(&(_, j)) = boundary.get(k) {
                if j != i && determines(points, circle, &[i, j]) {
                    return sorted(vec![i, j]);
                }
            }
        }
    }

    if boundary.len() >= 3 {
        let (a_ang, a) = boundary[0];
        let half = a_ang + pi;
        let split = boundary.partition_point(|&(ang, _)| ang <= half);
        if split >= 2 && split < boundary.len() {
            let triple = vec![a, boundary[split - 1].1, boundary[split].1];
            if determines(points, circle, &triple) {
                return sorted(triple);
            }
        }
    }
    sorted(found)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Whether `idx` are on the circle and force it: a diametral pair, or a triple
/// whose closed triangle contains the center.
fn determines(points: &[Point], circle: &Circle, idx: &[usize]) -> bool {
    let c = circle.center;
    let r = circle.radius;
    let on_circle = idx.iter().all(|&i| (dist(c, points[i]) - r).abs() <= BOUNDARY_EPS * r);
    if !on_circle {
        return false;
    }
    match *idx {
        [i, j] => dist(points[i].midpoint(points[j]), c) <= BOUNDARY_EPS * r,
        [i, j, k] => {
            let (a, b, d) = (points[i] - c, points[j] - c, points[k] - c);
            let area = (b - a).cross(d - a);
            if area == 0.0 {
                return false;
            }
            let s = area.signum();
            let band = -BOUNDARY_EPS * r * r;
            s * a.cross(b) >= band && s * b.cross(d) >= band && s * d.cross(a) >= band
        }
        _ => false,
    }
}

/// Largest instance [`sec_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 64;

/// Smallest enclosing circle by trying every pair and non-collinear triple.
pub fn sec_bruteforce(inst: &Instance) -> Result<Circle> {
    let pts = inst.points();
    let n = pts.len();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { n, max: BRUTEFORCE_LIMIT, what: "brute-force enclosing circle" });
    }
    if n == 1 {
        return Ok(Circle::new(pts[0], 0.0));
    }
    let tol = Tolerance::default();
    let covers = |c: &Circle| pts.iter().all(|&p| encloses(c, p));
    let mut best: Option<Circle> = None;
    let mut consider = |c: Circle| {
        if best.is_none_or(|b| c.radius < b.radius) && covers(&c) {
            best = Some(c);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            consider(Circle::diametral(pts[i], pts[j]));
            for k in j + 1..n {
                if let Ok(c) = circumcircle(pts[i], pts[j], pts[k], &tol) {
                    consider(c);
                }
            }
        }
    }
    Ok(best.expect("the diametral circle of the farthest pair always covers"))
}
