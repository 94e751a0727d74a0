//! Shared helpers for integration tests: random instance generators and
//! independent oracles that do not go through the library's solvers.

#![allow(dead_code)]

use pierce_core::{Edge, Instance, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let pts = (0..n).map(|_| Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    Instance::new(pts).expect("continuous samples do not collide")
}

/// Golden-section minimization of a convex function on `[lo, hi]`.
fn golden(mut lo: f64, mut hi: f64, iters: usize, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..iters {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    if fa <= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

fn rho(c: Point, pts: &[Point], edges: &[Edge]) -> f64 {
    edges
        .iter()
        .map(|e| ((c - pts[e.i]).norm() + (c - pts[e.j]).norm()) / (pts[e.i] - pts[e.j]).norm())
        .fold(1.0, f64::max)
}

/// Min-max ratio by nested golden-section search. Partial minimization of a
/// convex function stays convex, so the outer search is sound.
pub fn minmax_ratio_oracle(pts: &[Point], edges: &[Edge]) -> (Point, f64) {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    let mut span: f64 = 0.0;
    for e in edges {
        for p in [pts[e.i], pts[e.j]] {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        span = span.max((pts[e.i] - pts[e.j]).norm());
    }
    let inner = |x: f64| golden(y0 - span, y1 + span, 90, |y| rho(Point::new(x, y), pts, edges));
    let (x, v) = golden(x0 - span, x1 + span, 90, |x| inner(x).1);
    let (y, _) = inner(x);
    (Point::new(x, y), v)
}
