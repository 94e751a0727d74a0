//! Maximum-weight perfect matching by exhaustive search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Edge;
use crate::spanning::Instance;

/// Largest point count accepted by [`max_weight_matching_bruteforce`];
/// 11!! = 10395 matchings.
pub const MATCHING_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    /// Pairs in ascending order of their first index.
    pub pairs: Vec<Edge>,
    pub total_weight: f64,
}

/// Enumerates every perfect matching, pairing the lowest unmatched index
/// first. Among matchings of equal weight the lexicographically smallest pair
/// list wins.
pub fn max_weight_matching_bruteforce(inst: &Instance) -> Result<Matching> {
    let n = inst.len();
    if n % 2 == 1 {
        return Err(Error::OddCount { n });
    }
    if n > MATCHING_LIMIT {
        return Err(Error::TooLarge { n, max: MATCHING_LIMIT, what: "brute-force matching" });
    }
    let mut search = Search {
        inst,
        used: vec![false; n],
        current: Vec::with_capacity(n / 2),
        best: None,
    };
    search.run(0.0);
    let (total_weight, pairs) = search.best.expect("an even, non-empty instance has a matching");
    Ok(Matching { pairs, total_weight })
}

struct Search<'a> {
    inst: &'a Instance,
    used: Vec<bool>,
    current: Vec<Edge>,
    best: Option<(f64, Vec<Edge>)>,
}

impl Search<'_> {
    fn run(&mut self, weight: f64) {
        let Some(i) = self.used.iter().position(|&u| !u) else {
            // Enumeration order is lexicographic, so only a strictly heavier
            // matching may replace the incumbent.
            let better = match &self.best {
                None => true,
                Some((w, _)) => weight > *w * (1.0 + 1e-12),
            };
            if better {
                self.best = Some((weight, self.current.clone()));
            }
            return;
        };
        self.used[i] = true;
        for j in i + 1..self.used.len() {
            if self.used[j] {
                continue;
            }
            let e = self.inst.edge(i, j);
            self.used[j] = true;
            self.current.push(e);
            self.run(weight + e.weight);
            self.current.pop();
            self.used[j] = false;
        }
        self.used[i] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use std::collections::HashMap;

    fn inst(coords: &[(f64, f64)]) -> Instance {
        Instance::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    /// Subset DP over bitmasks, memoized; shares nothing with the enumerator.
    fn best_weight_dp(inst: &Instance) -> f64 {
        fn go(mask: u32, n: usize, inst: &Instance, memo: &mut HashMap<u32, f64>) -> f64 {
            if mask == 0 {
                return 0.0;
            }
            if let Some(&v) = memo.get(&mask) {
                return v;
            }
            let i = mask.trailing_zeros() as usize;
            let mut best = f64::NEG_INFINITY;
            for j in i + 1..n {
                if mask & (1 << j) != 0 {
                    let rest = mask & !(1 << i) & !(1 << j);
                    let w = crate::geom::dist(inst.points()[i], inst.points()[j]);
                    best = best.max(w + go(rest, n, inst, memo));
                }
            }
            memo.insert(mask, best);
            best
        }
        let n = inst.len();
        go((1u32 << n) - 1, n, inst, &mut HashMap::new())
    }

    #[test]
    fn two_points() {
        let m = max_weight_matching_bruteforce(&inst(&[(0.0, 0.0), (1.0, 1.0)])).unwrap();
        assert_eq!(m.pairs.len(), 1);
        assert_eq!((m.pairs[0].i, m.pairs[0].j), (0, 1));
    }

    #[test]
    fn square_takes_diagonals() {
        let m = max_weight_matching_bruteforce(&inst(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        let pairs: Vec<_> = m.pairs.iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
        assert!((m.total_weight - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ties_pick_smallest_pair_list() {
        // On a line at 0,1,2,3 both {(0,2),(1,3)} and {(0,3),(1,2)} weigh 4.
        let m = max_weight_matching_bruteforce(&inst(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)])).unwrap();
        let pairs: Vec<_> = m.pairs.iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
        assert_eq!(m.total_weight, 4.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            max_weight_matching_bruteforce(&inst(&[(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)])),
            Err(Error::OddCount { n: 3 })
        ));
        let pts: Vec<(f64, f64)> = (0..14).map(|k| (k as f64, (k * k) as f64)).collect();
        assert!(matches!(max_weight_matching_bruteforce(&inst(&pts)), Err(Error::TooLarge { n: 14, .. })));
    }

    #[test]
    fn agrees_with_subset_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = 2 * (1 + trial % 6);
            let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.random(), rng.random())).collect();
            let i = Instance::new(pts).unwrap();
            let m = max_weight_matching_bruteforce(&i).unwrap();
            let dp = best_weight_dp(&i);
            assert!((m.total_weight - dp).abs() <= 1e-12 * dp, "{} vs {}", m.total_weight, dp);
            let mut seen = vec![false; n];
            for e in &m.pairs {
                assert!(!seen[e.i] && !seen[e.j]);
                seen[e.i] = true;
                seen[e.j] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
