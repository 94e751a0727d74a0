//! Seeded random instance streams.
//!
//! Trial `k` of a run draws from its own ChaCha stream, so any single trial
//! can be regenerated (or generated on another thread) without replaying the
//! ones before it.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::spanning::Instance;

/// Radius of the circle used by [`Generator::CircleBoundary`], centered at the origin.
pub const CIRCLE_RADIUS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Uniform in the unit square.
    UniformSquare,
    /// Standard bivariate normal.
    Gaussian,
    /// One to four tight normal clusters around uniform centers.
    Clustered,
    /// Exactly on the circle of radius [`CIRCLE_RADIUS`], spread so that the
    /// circle is the smallest enclosing one.
    CircleBoundary,
}

impl Generator {
    pub const ALL: [Generator; 4] =
        [Generator::UniformSquare, Generator::Gaussian, Generator::Clustered, Generator::CircleBoundary];

    pub fn name(self) -> &'static str {
        match self {
            Generator::UniformSquare => "uniform-square",
            Generator::Gaussian => "gaussian",
            Generator::Clustered => "clustered",
            Generator::CircleBoundary => "circle-boundary",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::PreconditionViolated(format!("unknown generator `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// Inclusive point-count range.
    pub n_range: (usize, usize),
    pub generator: Generator,
    pub tolerance: Tolerance,
}

impl RunConfig {
    pub fn new(seed: u64, trials: usize, n_range: (usize, usize), generator: Generator) -> Result<Self> {
        let cfg = RunConfig { seed, trials, n_range, generator, tolerance: Tolerance::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.n_range;
        if lo < 2 || lo > hi {
            return Err(Error::PreconditionViolated(format!("invalid point-count range [{lo}, {hi}]")));
        }
        if self.trials == 0 {
            return Err(Error::PreconditionViolated("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// The deterministic stream of `config.trials` instances.
pub fn generate(config: &RunConfig) -> impl Iterator<Item = Instance> + '_ {
    (0..config.trials).map(move |k| generate_trial(config, k))
}

/// Instance number `trial` of the stream, independent of the others.
pub fn generate_trial(config: &RunConfig, trial: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let n = rng.random_range(config.n_range.0..=config.n_range.1);
    let id = format!("{}-{}-{}", config.generator, config.seed, trial);
    loop {
        let pts = sample(config.generator, n, &mut rng);
        // Continuous draws essentially never collide; redraw if they do.
        if let Ok(inst) = Instance::with_tolerance(pts, Some(id.clone()), &config.tolerance) {
            return inst;
        }
    }
}

fn sample(generator: Generator, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    match generator {
        Generator::UniformSquare => (0..n).map(|_| Point::new(rng.random(), rng.random())).collect(),
        Generator::Gaussian => {
            (0..n).map(|_| Point::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
        }
        Generator::Clustered => {
            let k = rng.random_range(1..=4);
            let centers: Vec<Point> = (0..k).map(|_| Point::new(rng.random(), rng.random())).collect();
            (0..n)
                .map(|_| {
                    let c = centers[rng.random_range(0..k)];
                    let dx: f64 = rng.sample(StandardNormal);
                    let dy: f64 = rng.sample(StandardNormal);
                    c + Point::new(dx, dy) * 0.05
                })
                .collect()
        }
        Generator::CircleBoundary => circle_points(n, rng),
    }
}

/// Points on the circle with no angular gap above π, so the circle itself is
/// the smallest enclosing one. Small counts get an exactly antipodal pair.
fn circle_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let at = |t: f64| Point::new(CIRCLE_RADIUS * t.cos(), CIRCLE_RADIUS * t.sin());
    let mut pts: Vec<Point> = if n < 4 {
        let first = at(phase);
        let mut v = vec![first, -first];
        v.extend((2..n).map(|_| at(rng.random_range(0.0..std::f64::consts::TAU))));
        v
    } else {
        // One angle per sector of width 2π/n keeps every gap below 4π/n <= π.
        let sector = std::f64::consts::TAU / n as f64;
        (0..n).map(|k| at(phase + sector * (k as f64 + rng.random::<f64>()))).collect()
    };
    pts.shuffle(rng);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enclosing::smallest_enclosing_circle;

    #[test]
    fn stream_is_reproducible() {
        let cfg = RunConfig::new(42, 2, (2, 50), Generator::Gaussian).unwrap();
        let a: Vec<_> = generate(&cfg).collect();
        let b: Vec<_> = generate(&cfg).collect();
        assert_eq!(a, b);
        assert_eq!(a[1], generate_trial(&cfg, 1));
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn fixed_size_range() {
        for g in Generator::ALL {
            let cfg = RunConfig::new(7, 20, (2, 2), g).unwrap();
            assert!(generate(&cfg).all(|i| i.len() == 2));
        }
    }

    #[test]
    fn circle_boundary_fills_its_circle() {
        for n in [2, 3, 4, 5, 8, 64] {
            let cfg = RunConfig::new(9, 30, (n, n), Generator::CircleBoundary).unwrap();
            for inst in generate(&cfg) {
                let e = smallest_enclosing_circle(&inst, 0);
                assert!((e.circle.radius - CIRCLE_RADIUS).abs() < 1e-9, "n={n}: {:?}", e.circle);
                assert!(e.circle.center.norm() < 1e-9);
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::new(0, 1, (1, 5), Generator::Gaussian).is_err());
        assert!(RunConfig::new(0, 1, (6, 5), Generator::Gaussian).is_err());
        assert!(RunConfig::new(0, 0, (2, 5), Generator::Gaussian).is_err());
    }

    #[test]
    fn names_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>().unwrap(), g);
            assert_eq!(serde_json::to_string(&g).unwrap(), format!("\"{}\"", g.name()));
        }
        assert!("triangular".parse::<Generator>().is_err());
    }
}
