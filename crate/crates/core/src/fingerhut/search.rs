//! Simulated annealing over four-point configurations, maximizing the
//! min-max ellipse ratio of their maximum spanning tree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::enclosing::enclosing_circle_of;
use crate::geom::{dist, Edge, Point};
use crate::spanning::{max_spanning_tree, Instance};

use super::{binding_edges, optimal_piercing_ratio, SolverOptions};

/// `(1 + √3) / 2`, the ratio four points are known to force.
pub const TARGET_RATIO: f64 = 1.366_025_403_784_438_6;

const POINTS: usize = 4;
/// Configurations with two points closer than this are rejected.
const MIN_SEPARATION: f64 = 1e-3;
const INITIAL_TEMPERATURE: f64 = 0.02;
const COOLING: f64 = 0.95;
const EPOCHS: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Total objective evaluations, split evenly over the restarts.
    pub budget: usize,
    /// Inner min-max solver settings.
    pub solver: SolverOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            restarts: 32,
            budget: 100_000,
            solver: SolverOptions { tol: 1e-7, budget: 50_000, seed: 0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    /// Best configuration, normalized to the unit enclosing circle at the origin.
    pub instance: Instance,
    pub tree: Vec<Edge>,
    /// Min-max ratio forced by `instance`.
    pub ratio: f64,
    pub optimal_point: Point,
    /// Edges attaining the ratio at `optimal_point`.
    pub binding: Vec<Edge>,
    /// Restart that produced the result.
    pub restart: usize,
    pub evaluations: usize,
}

#[derive(Clone)]
struct Candidate {
    points: [Point; POINTS],
    ratio: f64,
    optimum: Point,
}

/// Runs `restarts` independent annealing chains (in parallel) and keeps the
/// best, preferring the lowest restart index on exact ties.
pub fn lower_bound_search(opts: &SearchOptions) -> LowerBound {
    let restarts = opts.restarts.max(1);
    let per_chain = (opts.budget / restarts).max(1);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(restarts);

    let mut results: Vec<Option<(Candidate, usize)>> = vec![None; restarts];
    std::thread::scope(|scope| {
        for (w, slots) in results.chunks_mut(restarts.div_ceil(workers)).enumerate() {
            let base = w * restarts.div_ceil(workers);
            scope.spawn(move || {
                for (k, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(anneal(opts, base + k, per_chain));
                }
            });
        }
    });

    let mut best: Option<(usize, Candidate)> = None;
    let mut evaluations = 0;
    for (restart, r) in results.into_iter().enumerate() {
        let (cand, evals) = r.expect("every chain reports");
        evaluations += evals;
        if best.as_ref().is_none_or(|(_, b)| cand.ratio > b.ratio) {
            best = Some((restart, cand));
        }
    }
    let (restart, cand) = best.expect("at least one restart");
    let instance = Instance::with_id(cand.points.to_vec(), format!("lower-bound-{}-{}", opts.seed, restart))
        .expect("accepted configurations are separated");
    let tree = max_spanning_tree(&instance).edges;
    let binding = binding_edges(cand.optimum, instance.points(), &tree, 1e-6);
    LowerBound {
        instance,
        tree,
        ratio: cand.ratio,
        optimal_point: cand.optimum,
        binding,
        restart,
        evaluations,
    }
}

/// Min-max ratio forced by a configuration, or `None` when it is degenerate
/// or the inner solver cannot certify its optimum.
pub(crate) fn forced_ratio(points: &[Point], solver: &SolverOptions) -> Option<(f64, Point)> {
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if dist(points[a], points[b]) < MIN_SEPARATION {
                return None;
            }
        }
    }
    let inst = Instance::new(points.to_vec()).ok()?;
    let tree = max_spanning_tree(&inst);
    let opt = optimal_piercing_ratio(inst.points(), &tree.edges, solver).ok()?;
    Some((opt.ratio, opt.point))
}

/// Moves the enclosing circle to the unit circle at the origin.
fn normalize(points: &mut [Point; POINTS]) -> bool {
    let Ok(enc) = enclosing_circle_of(points, 0) else { return false };
    if enc.circle.radius.is_nan() || enc.circle.radius <= 0.0 {
        return false;
    }
    let s = 1.0 / enc.circle.radius;
    for p in points.iter_mut() {
        *p = (*p - enc.circle.center) * s;
    }
    true
}

fn random_config(rng: &mut ChaCha8Rng) -> [Point; POINTS] {
    let mut pts = [Point::ORIGIN; POINTS];
    for p in pts.iter_mut() {
        let r = rng.random::<f64>().sqrt();
        let t = rng.random_range(0.0..std::f64::consts::TAU);
        *p = Point::new(r * t.cos(), r * t.sin());
    }
    pts
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn anneal(opts: &SearchOptions, restart: usize, budget: usize) -> (Candidate, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(restart as u64);
    let solver = SolverOptions { seed: opts.seed ^ restart as u64, ..opts.solver };
    let mut evals = 0;

    let mut current = loop {
        let mut pts = random_config(&mut rng);
        evals += 1;
        if normalize(&mut pts) {
            if let Some((ratio, optimum)) = forced_ratio(&pts, &solver) {
                break Candidate { points: pts, ratio, optimum };
            }
        }
        if evals >= budget {
            // Fall back to the unit square, which always evaluates.
            let mut sq = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
            normalize(&mut sq);
            let (ratio, optimum) = forced_ratio(&sq, &solver).expect("unit square evaluates");
            break Candidate { points: sq, ratio, optimum };
        }
    };
    let mut best = current.clone();

    let epoch_len = (budget / EPOCHS).max(1);
    let mut temperature = INITIAL_TEMPERATURE;
    while evals < budget {
        for _ in 0..epoch_len {
            if evals >= budget {
                break;
            }
            evals += 1;
            let heat = (temperature / INITIAL_TEMPERATURE).sqrt();
            let sigma = (0.25 * heat).max(1e-5);
            let mut next = current.points;
            if rng.random_bool(0.5) {
                let k = rng.random_range(0..POINTS);
                next[k] = next[k] + Point::new(gaussian(&mut rng), gaussian(&mut rng)) * sigma;
            } else {
                for p in next.iter_mut() {
                    *p = *p + Point::new(gaussian(&mut rng), gaussian(&mut rng)) * (0.5 * sigma);
                }
            }
            if !normalize(&mut next) {
                continue;
            }
            let Some((ratio, optimum)) = forced_ratio(&next, &solver) else { continue };
            let accept = ratio >= current.ratio
                || rng.random::<f64>() < ((ratio - current.ratio) / temperature).exp();
            if accept {
                current = Candidate { points: next, ratio, optimum };
                if current.ratio > best.ratio {
                    best = current.clone();
                }
            }
        }
        temperature *= COOLING;
    }
    (best, evals)
}
