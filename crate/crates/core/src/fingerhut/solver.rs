//! Min-max point for the edge-ratio function.
//!
//! `ρ(c) = max_e (|c a_e| + |c b_e|) / |a_e b_e|` is convex but not smooth:
//! at the optimum two or three ellipses typically touch. The search runs
//! Nelder-Mead from several starts, then a shrinking grid with pattern moves,
//! and finally certifies the point with a probe grid at the requested
//! resolution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enclosing::enclosing_circle_of;
use crate::error::{Error, Result};
use crate::geom::{Edge, Point};

use super::max_ratio;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Spatial resolution (in units of the enclosing radius) and ratio gap.
    pub tol: f64,
    /// Maximum number of objective evaluations.
    pub budget: usize,
    /// Seeds the orientation of the initial simplices.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-6, budget: 200_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub point: Point,
    pub ratio: f64,
    /// Objective evaluations used.
    pub iterations: usize,
    /// Grid spacing when the search stopped, in absolute units.
    pub final_step: f64,
}

struct Objective<'a> {
    points: &'a [Point],
    edges: &'a [Edge],
    evals: usize,
    budget: usize,
    best: (Point, f64),
}

struct OutOfBudget;

impl Objective<'_> {
    fn eval(&mut self, c: Point) -> std::result::Result<f64, OutOfBudget> {
        if self.evals >= self.budget {
            return Err(OutOfBudget);
        }
        self.evals += 1;
        let f = max_ratio(c, self.points, self.edges);
        if f < self.best.1 {
            self.best = (c, f);
        }
        Ok(f)
    }
}

/// Minimizes `ρ` over the plane for the given edges.
///
/// Fails with [`Error::NonConvergence`] (carrying the best point seen) when
/// the evaluation budget runs out before the final probe certifies that no
/// point within `tol` improves the ratio by more than `tol`.
pub fn optimal_piercing_ratio(points: &[Point], edges: &[Edge], opts: &SolverOptions) -> Result<Optimum> {
    if edges.is_empty() {
        return Err(Error::PreconditionViolated("no edges to pierce".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::PreconditionViolated(format!("tolerance {} must be positive", opts.tol)));
    }
    let sec = enclosing_circle_of(points, 0)?.circle;
    let unit = if sec.radius > 0.0 { sec.radius } else { 1.0 };

    let mut starts = Vec::with_capacity(edges.len() + 2);
    starts.push(sec.center);
    starts.extend(edges.iter().map(|e| points[e.i].midpoint(points[e.j])));
    let n = points.len() as f64;
    let centroid = points.iter().fold(Point::ORIGIN, |acc, &p| acc + p) * (1.0 / n);
    starts.push(centroid);

    let mut obj = Objective { points, edges, evals: 0, budget: opts.budget, best: (sec.center, f64::INFINITY) };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let outcome = (|| -> std::result::Result<f64, OutOfBudget> {
        for &s in &starts {
            nelder_mead(&mut obj, s, 0.2 * unit, 1e-3 * opts.tol * unit, 400, &mut rng)?;
        }
        // Restart from the incumbent until a fresh simplex stops helping.
        loop {
            let before = obj.best.1;
            let from = obj.best.0;
            nelder_mead(&mut obj, from, 0.05 * unit, 1e-3 * opts.tol * unit, 400, &mut rng)?;
            if obj.best.1 >= before - 1e-15 {
                break;
            }
        }
        let mut step = 1e-2 * unit;
        loop {
            step = grid_refine(&mut obj, step, opts.tol * unit)?;
            if certify(&mut obj, opts.tol * unit, opts.tol)? {
                return Ok(step);
            }
            step = 16.0 * opts.tol * unit;
        }
    })();

    let (point, ratio) = obj.best;
    match outcome {
        Ok(final_step) => Ok(Optimum { point, ratio, iterations: obj.evals, final_step }),
        Err(OutOfBudget) => Err(Error::NonConvergence { x: point.x, y: point.y, ratio, iterations: obj.evals }),
    }
}

fn nelder_mead(
    obj: &mut Objective,
    start: Point,
    size: f64,
    xtol: f64,
    max_iter: usize,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), OutOfBudget> {
    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let mut simplex = [start, Point::ORIGIN, Point::ORIGIN];
    for (k, vertex) in simplex.iter_mut().enumerate().skip(1) {
        let a = phase + k as f64 * std::f64::consts::FRAC_PI_2;
        *vertex = start + Point::new(a.cos(), a.sin()) * size;
    }
    let mut values = [0.0; 3];
    for k in 0..3 {
        values[k] = obj.eval(simplex[k])?;
    }
    for _ in 0..max_iter {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let [lo, mid, hi] = idx;
        let spread = (simplex[mid] - simplex[lo]).norm().max((simplex[hi] - simplex[lo]).norm());
        if spread < xtol {
            break;
        }
        let centroid = simplex[lo].midpoint(simplex[mid]);
        let toward = |t: f64| centroid + (simplex[hi] - centroid) * t;

        let xr = toward(-1.0);
        let fr = obj.eval(xr)?;
        if fr < values[lo] {
            let xe = toward(-2.0);
            let fe = obj.eval(xe)?;
            (simplex[hi], values[hi]) = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < values[mid] {
            (simplex[hi], values[hi]) = (xr, fr);
        } else {
            let (xc, fc) = if fr < values[hi] {
                let xc = toward(-0.5);
                (xc, obj.eval(xc)?)
            } else {
                let xc = toward(0.5);
                (xc, obj.eval(xc)?)
            };
            if fc < values[hi].min(fr) {
                (simplex[hi], values[hi]) = (xc, fc);
            } else {
                for k in [mid, hi] {
                    simplex[k] = simplex[lo].midpoint(simplex[k]);
                    values[k] = obj.eval(simplex[k])?;
                }
            }
        }
    }
    Ok(())
}

const GRID_HALF: i32 = 3;

/// Square grid around the incumbent with Hooke-Jeeves style pattern moves;
/// halves the spacing whenever the center is best. Returns the spacing
/// reached once it drops below `resolution`.
fn grid_refine(obj: &mut Objective, mut step: f64, resolution: f64) -> std::result::Result<f64, OutOfBudget> {
    while step >= resolution {
        let (center, f0) = obj.best;
        for a in -GRID_HALF..=GRID_HALF {
            for b in -GRID_HALF..=GRID_HALF {
                if a != 0 || b != 0 {
                    obj.eval(center + Point::new(a as f64, b as f64) * step)?;
                }
            }
        }
        if obj.best.1 < f0 {
            // Keep moving along the improving direction while it pays.
            let mut dir = obj.best.0 - center;
            loop {
                let (from, f) = obj.best;
                obj.eval(from + dir)?;
                if obj.best.1 >= f {
                    break;
                }
                dir = dir * 2.0;
            }
        } else {
            step *= 0.5;
        }
    }
    Ok(step)
}

/// No point of a probe grid at spacing `resolution` beats the incumbent by
/// more than `gap`.
fn certify(obj: &mut Objective, resolution: f64, gap: f64) -> std::result::Result<bool, OutOfBudget> {
    let (center, f0) = obj.best;
    for a in -2..=2 {
        for b in -2..=2 {
            if a != 0 || b != 0 {
                obj.eval(center + Point::new(a as f64, b as f64) * resolution)?;
            }
        }
    }
    Ok(obj.best.1 >= f0 - gap)
}
