//! Euclidean maximum-weight spanning trees over the complete graph of an
//! instance, a cycle-rule certificate, and an exhaustive enumeration oracle.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Edge, Point, Tolerance};

/// An ordered point set. Construction rejects empty input, non-finite
/// coordinates and coincident points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    points: Vec<Point>,
}

impl Instance {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::with_tolerance(points, None, &Tolerance::default())
    }

    pub fn with_id(points: Vec<Point>, id: impl Into<String>) -> Result<Self> {
        Self::with_tolerance(points, Some(id.into()), &Tolerance::default())
    }

    pub fn with_tolerance(points: Vec<Point>, id: Option<String>, tol: &Tolerance) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (index, p) in points.iter().enumerate() {
            if !p.x.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, field: "x" });
            }
            if !p.y.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, field: "y" });
            }
        }
        if let Some((first, second)) = find_duplicate(&points, tol.eps_abs) {
            return Err(Error::DuplicatePoints { first, second });
        }
        Ok(Instance { id, points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn set_id(&mut self, id: Option<String>) {
        self.id = id;
    }

    pub fn edge(&self, a: usize, b: usize) -> Edge {
        Edge::between(&self.points, a, b)
    }

    /// Every edge of the complete graph, in lexicographic `(i, j)` order.
    pub fn all_edges(&self) -> Vec<Edge> {
        let n = self.len();
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                edges.push(self.edge(i, j));
            }
        }
        edges
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default)]
    id: Option<String>,
    points: Vec<Point>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::with_tolerance(raw.points, raw.id, &Tolerance::default())
    }
}

/// Lowest-index pair of points within `eps` of each other (Chebyshev
/// prefilter, Euclidean check).
fn find_duplicate(points: &[Point], eps: f64) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let mut best: Option<(usize, usize)> = None;
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[k + 1..] {
            if points[b].x - points[a].x > eps {
                break;
            }
            if crate::geom::dist(points[a], points[b]) <= eps {
                let pair = (a.min(b), a.max(b));
                best = Some(best.map_or(pair, |cur| cur.min(pair)));
            }
        }
    }
    best
}

/// A spanning tree over instance indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub edges: Vec<Edge>,
    pub total_weight: f64,
}

impl Tree {
    /// Validates that `edges` span `n` vertices without cycles.
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        check_spanning(n, &edges)?;
        let total_weight = edges.iter().map(|e| e.weight).sum();
        Ok(Tree { edges, total_weight })
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn check_spanning(n: usize, edges: &[Edge]) -> Result<()> {
    if edges.len() + 1 != n.max(1) {
        return Err(Error::NotASpanningTree(format!(
            "{} edges over {} vertices",
            edges.len(),
            n
        )));
    }
    let mut dsu = DisjointSet::new(n);
    for e in edges {
        if e.i >= n || e.j >= n || e.i == e.j {
            return Err(Error::NotASpanningTree(format!("invalid edge ({}, {})", e.i, e.j)));
        }
        if !dsu.union(e.i, e.j) {
            return Err(Error::NotASpanningTree(format!("edge ({}, {}) closes a cycle", e.i, e.j)));
        }
    }
    Ok(())
}

pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the components of `a` and `b`; false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Kruskal over all pairs, heaviest first.
///
/// Equal weights are taken in ascending `(i, j)` order, so the output depends
/// only on the point order of the instance.
pub fn max_spanning_tree(inst: &Instance) -> Tree {
    let n = inst.len();
    let mut edges = inst.all_edges();
    edges.sort_by(|a, b| {
        b.weight.total_cmp(&a.weight).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j))
    });
    let mut dsu = DisjointSet::new(n);
    let mut taken = Vec::with_capacity(n.saturating_sub(1));
    for e in edges {
        if dsu.union(e.i, e.j) {
            taken.push(e);
            if taken.len() + 1 == n {
                break;
            }
        }
    }
    let total_weight = taken.iter().map(|e| e.weight).sum();
    Tree { edges: taken, total_weight }
}

/// Certifies maximality with the cycle rule: every non-tree edge `(u, v)` must
/// be no heavier than each edge on the tree path from `u` to `v`.
pub fn verify_max_tree(inst: &Instance, tree: &Tree, tol: &Tolerance) -> Result<bool> {
    let n = inst.len();
    check_spanning(n, &tree.edges)?;
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in &tree.edges {
        adj[e.i].push((e.j, e.weight));
        adj[e.j].push((e.i, e.weight));
    }
    let pts = inst.points();
    // lightest[v]: minimum edge weight on the tree path root -> v
    let mut lightest = vec![f64::INFINITY; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        lightest.fill(f64::INFINITY);
        seen.fill(false);
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    lightest[v] = lightest[u].min(w);
                    queue.push_back(v);
                }
            }
        }
        for v in root + 1..n {
            let w = crate::geom::dist(pts[root], pts[v]);
            if lightest[v] < w - tol.eps_rel * w {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest number of points [`enumerate_best_tree_weight`] accepts.
pub const ENUMERATION_LIMIT: usize = 8;

/// Maximum spanning-tree weight by exhaustive enumeration of Prüfer sequences.
pub fn enumerate_best_tree_weight(inst: &Instance) -> Result<f64> {
    let n = inst.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n, max: ENUMERATION_LIMIT, what: "tree enumeration" });
    }
    if n < 2 {
        return Ok(0.0);
    }
    let pts = inst.points();
    let weight = |a: usize, b: usize| crate::geom::dist(pts[a], pts[b]);
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut best = f64::NEG_INFINITY;
    let mut degree = vec![0usize; n];
    loop {
        degree.fill(1);
        for &s in &seq {
            degree[s] += 1;
        }
        let mut total = 0.0;
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
            total += weight(leaf, s);
            degree[leaf] = 0;
            degree[s] -= 1;
        }
        let mut rest = (0..n).filter(|&v| degree[v] == 1);
        let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
        total += weight(a, b);
        best = best.max(total);

        // odometer increment over [0, n)^(n-2)
        let mut k = 0;
        while k < len {
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
        if k == len {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn inst(coords: &[(f64, f64)]) -> Instance {
        Instance::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn square() -> Instance {
        inst(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(matches!(Instance::new(vec![]), Err(Error::EmptyInstance)));
        let dup = Instance::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)]);
        assert!(matches!(dup, Err(Error::DuplicatePoints { first: 0, second: 2 })));
        let nan = Instance::new(vec![Point::new(0.0, f64::NAN)]);
        assert!(matches!(nan, Err(Error::NonFiniteCoordinate { index: 0, field: "y" })));
    }

    #[test]
    fn square_tree() {
        let t = max_spanning_tree(&square());
        let pairs: Vec<_> = t.edges.iter().map(|e| (e.i, e.j)).collect();
        // diagonals first, then the lexicographically first side
        assert_eq!(pairs, vec![(0, 2), (1, 3), (0, 1)]);
        assert!((t.total_weight - (1.0 + 2.0 * SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn two_points_and_collinear() {
        let t = max_spanning_tree(&inst(&[(0.0, 0.0), (2.0, 0.0)]));
        assert_eq!(t.edges.len(), 1);
        assert_eq!(t.total_weight, 2.0);

        let t = max_spanning_tree(&inst(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]));
        let pairs: Vec<_> = t.edges.iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 2)]);
        assert_eq!(t.total_weight, 5.0);
    }

    #[test]
    fn single_point_gives_empty_tree() {
        let i = inst(&[(4.0, 2.0)]);
        let t = max_spanning_tree(&i);
        assert!(t.is_empty());
        assert_eq!(t.total_weight, 0.0);
        assert!(verify_max_tree(&i, &t, &Tolerance::default()).unwrap());
    }

    #[test]
    fn verify_examples() {
        let sq = square();
        let tol = Tolerance::default();
        assert!(verify_max_tree(&sq, &max_spanning_tree(&sq), &tol).unwrap());

        let sides = Tree::from_edges(4, vec![sq.edge(0, 1), sq.edge(1, 2), sq.edge(2, 3)]).unwrap();
        assert_eq!(sides.total_weight, 3.0);
        assert!(!verify_max_tree(&sq, &sides, &tol).unwrap());

        let two = inst(&[(0.0, 0.0), (2.0, 0.0)]);
        assert!(verify_max_tree(&two, &max_spanning_tree(&two), &tol).unwrap());
    }

    #[test]
    fn verify_rejects_non_trees() {
        let sq = square();
        let tol = Tolerance::default();
        let short = Tree { edges: vec![sq.edge(0, 1)], total_weight: 1.0 };
        assert!(matches!(verify_max_tree(&sq, &short, &tol), Err(Error::NotASpanningTree(_))));
        let cyc = Tree {
            edges: vec![sq.edge(0, 1), sq.edge(1, 2), sq.edge(0, 2)],
            total_weight: 0.0,
        };
        assert!(matches!(verify_max_tree(&sq, &cyc, &tol), Err(Error::NotASpanningTree(_))));
    }

    #[test]
    fn enumeration_examples() {
        let w = enumerate_best_tree_weight(&square()).unwrap();
        assert!((w - (1.0 + 2.0 * SQRT_2)).abs() < 1e-12);
        assert_eq!(enumerate_best_tree_weight(&inst(&[(0.0, 0.0), (2.0, 0.0)])).unwrap(), 2.0);
        let col = inst(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        assert_eq!(enumerate_best_tree_weight(&col).unwrap(), 5.0);
    }

    #[test]
    fn enumeration_refuses_large_instances() {
        let pts = (0..9).map(|k| Point::new(k as f64, (k * k) as f64)).collect();
        let big = Instance::new(pts).unwrap();
        assert!(matches!(enumerate_best_tree_weight(&big), Err(Error::TooLarge { n: 9, .. })));
    }
}
