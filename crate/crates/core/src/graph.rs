//! Geometric graphs, vertex paths, and the path certificates shared by the
//! recognition, half-θ6 and routing code.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{edge_angle, min_enclosing_wedge, Angle, Point, TAU_ANGLE, TAU_LEN};

/// Points in the plane joined by undirected straight-line edges.
///
/// Vertex ids are indices into the point list. Adjacency lists are kept
/// sorted and symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGraph {
    points: Vec<Point>,
    adj: Vec<Vec<usize>>,
}

/// Rejects non-finite and duplicate points, naming the first offending pair.
pub fn check_points(points: &[Point]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::Degenerate(format!("point {i} is not finite")));
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::Degenerate(format!("duplicate points {i} and {j} at {}", points[i])));
        }
    }
    Ok(())
}

impl GeometricGraph {
    pub fn new(points: Vec<Point>, edges: &[(usize, usize)]) -> Result<Self> {
        check_points(&points)?;
        let n = points.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Degenerate(format!("edge ({i}, {j}) references a missing vertex")));
            }
            if i == j {
                return Err(Error::Degenerate(format!("self-loop at vertex {i}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(GeometricGraph { points, adj })
    }

    pub fn empty(points: Vec<Point>) -> Result<Self> {
        Self::new(points, &[])
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn length(&self, u: usize, v: usize) -> f64 {
        self.points[u].dist(self.points[v])
    }

    /// Copy of this graph with extra edges.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Self> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        Self::new(self.points.clone(), &edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    A,
    B,
}

/// A vertex path `v0 .. vn` with an optional tag per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTrace {
    pub vertices: Vec<usize>,
    pub steps: Vec<Option<StepKind>>,
}

impl PathTrace {
    pub fn new(vertices: Vec<usize>) -> Self {
        let steps = vec![None; vertices.len().saturating_sub(1)];
        PathTrace { vertices, steps }
    }

    pub fn single(v: usize) -> Self {
        PathTrace::new(vec![v])
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn reversed(&self) -> PathTrace {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut steps = self.steps.clone();
        steps.reverse();
        PathTrace { vertices, steps }
    }

    /// Checks adjacency of consecutive vertices and that no vertex repeats.
    pub fn validate(&self, g: &GeometricGraph) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        if self.steps.len() != self.edge_count() {
            return Err(Error::InvalidPath("step annotations do not match edge count".into()));
        }
        let mut seen = HashSet::new();
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(Error::InvalidPath(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidPath(format!("vertex {v} repeats")));
            }
        }
        for w in self.vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidPath(format!("({}, {}) is not an edge", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub(crate) fn edge_points<'a>(&'a self, g: &'a GeometricGraph) -> impl Iterator<Item = (Point, Point)> + 'a {
        self.vertices.windows(2).map(move |w| (g.point(w[0]), g.point(w[1])))
    }
}

pub fn path_length(g: &GeometricGraph, p: &PathTrace) -> Result<f64> {
    p.validate(g)?;
    Ok(p.edge_points(g).map(|(a, b)| a.dist(b)).sum())
}

/// Bisector and width of the narrowest wedge holding every edge direction.
pub fn path_width(g: &GeometricGraph, p: &PathTrace) -> Result<(Angle, f64)> {
    p.validate(g)?;
    if p.edge_count() == 0 {
        return Err(Error::InvalidPath("width of a path without edges".into()));
    }
    let angles = p.edge_points(g).map(|(a, b)| edge_angle(a, b)).collect::<Result<Vec<_>>>()?;
    min_enclosing_wedge(&angles)
}

pub fn is_angle_monotone_path(g: &GeometricGraph, p: &PathTrace, gamma: f64) -> Result<bool> {
    Ok(path_width(g, p)?.1 <= gamma + TAU_ANGLE)
}

/// Self-approaching test. While moving along edge `i`, the distance to a
/// later vertex `r` never grows iff the edge direction has non-negative dot
/// product with `r - a` at both edge endpoints `a`; later points on edges are
/// convex combinations of vertices, so checking vertices suffices.
pub fn is_self_approaching(g: &GeometricGraph, p: &PathTrace) -> Result<bool> {
    p.validate(g)?;
    if p.edge_count() == 0 {
        return Err(Error::InvalidPath("self-approach of a path without edges".into()));
    }
    let pts: Vec<Point> = p.vertices.iter().map(|&v| g.point(v)).collect();
    for i in 0..pts.len() - 1 {
        let (dx, dy) = pts[i + 1].sub(pts[i]);
        let len = dx.hypot(dy);
        for r in &pts[i + 1..] {
            for a in [pts[i], pts[i + 1]] {
                let (rx, ry) = r.sub(a);
                if dx * rx + dy * ry < -TAU_LEN * len {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Calls `f` on every simple path from `s` to `t`, in depth-first order of
/// ascending neighbour ids. Exponential; meant for small gadgets.
pub fn for_each_simple_path(g: &GeometricGraph, s: usize, t: usize, mut f: impl FnMut(&PathTrace)) {
    fn go(g: &GeometricGraph, t: usize, path: &mut PathTrace, on: &mut [bool], f: &mut dyn FnMut(&PathTrace)) {
        let u = *path.vertices.last().expect("path starts at the source");
        if u == t {
            f(path);
            return;
        }
        for &w in g.neighbors(u) {
            if !on[w] {
                on[w] = true;
                path.vertices.push(w);
                path.steps.push(None);
                go(g, t, path, on, f);
                path.vertices.pop();
                path.steps.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[s] = true;
    go(g, t, &mut PathTrace::single(s), &mut on, &mut f);
}

/// Whether every vertex lies in the closed disc whose diameter joins the
/// path's endpoints.
pub fn in_diametral_disc_path(g: &GeometricGraph, p: &PathTrace) -> Result<bool> {
    p.validate(g)?;
    let (u, v) = (g.point(p.source()), g.point(p.target()));
    let c = Point { x: (u.x + v.x) / 2.0, y: (u.y + v.y) / 2.0 };
    let r = u.dist(v) / 2.0;
    Ok(p.vertices.iter().all(|&w| g.point(w).dist(c) <= r + TAU_LEN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn graph(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> GeometricGraph {
        let pts = coords.iter().map(|&(x, y)| Point::new(x, y).unwrap()).collect();
        GeometricGraph::new(pts, edges).unwrap()
    }

    fn chain(coords: &[(f64, f64)]) -> (GeometricGraph, PathTrace) {
        let edges: Vec<_> = (1..coords.len()).map(|i| (i - 1, i)).collect();
        (graph(coords, &edges), PathTrace::new((0..coords.len()).collect()))
    }

    #[test]
    fn construction_rejects_bad_input() {
        let p = |x, y| Point::new(x, y).unwrap();
        assert!(GeometricGraph::new(vec![p(0.0, 0.0), p(0.0, 0.0)], &[]).is_err());
        assert!(GeometricGraph::new(vec![p(0.0, 0.0), p(1.0, 0.0)], &[(0, 0)]).is_err());
        assert!(GeometricGraph::new(vec![p(0.0, 0.0)], &[(0, 3)]).is_err());
    }

    #[test]
    fn lengths() {
        let (g, p) = chain(&[(0.0, 0.0), (3.0, 4.0)]);
        assert_eq!(path_length(&g, &p).unwrap(), 5.0);
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert_eq!(path_length(&g, &p).unwrap(), 2.0);
        assert_eq!(path_length(&g, &PathTrace::single(1)).unwrap(), 0.0);
    }

    #[test]
    fn widths() {
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let (b, w) = path_width(&g, &p).unwrap();
        assert_eq!((b.radians(), w), (0.0, 0.0));

        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        let (b, w) = path_width(&g, &p).unwrap();
        assert!((b.radians() - FRAC_PI_4).abs() < 1e-12 && (w - FRAC_PI_2).abs() < 1e-12);
        let (rb, rw) = path_width(&g, &p.reversed()).unwrap();
        assert!((rw - w).abs() < 1e-12);
        assert!((rb.radians() - (b.radians() + PI)).abs() < 1e-12);

        assert!(path_width(&g, &PathTrace::single(0)).is_err());
    }

    #[test]
    fn angle_monotone_examples() {
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert!(is_angle_monotone_path(&g, &p, FRAC_PI_2).unwrap());
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (0.9, 1.0)]);
        assert!(!is_angle_monotone_path(&g, &p, FRAC_PI_2).unwrap());
        let (g, p) = chain(&[(0.3, 0.1), (-5.0, 2.0)]);
        assert!(is_angle_monotone_path(&g, &p, 0.0).unwrap());
    }

    #[test]
    fn self_approaching_examples() {
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert!(is_self_approaching(&g, &p).unwrap());
        // Moving along the first edge first approaches, then leaves (0, 0.1).
        let (g, p) = chain(&[(0.0, 0.0), (2.0, 0.0), (0.0, 0.1)]);
        assert!(!is_self_approaching(&g, &p).unwrap());
        // Past x = 0.1 the first edge moves away from the last vertex.
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.1, 1.0)]);
        assert!(!is_self_approaching(&g, &p).unwrap());
        // A spiral turning by less than 90 degrees overall stays self-approaching.
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.8, 0.6), (2.0, 1.5)]);
        assert!(is_self_approaching(&g, &p).unwrap());
    }

    #[test]
    fn diametral_disc_paths() {
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(in_diametral_disc_path(&g, &p).unwrap());
        let g = graph(&[(0.0, 0.0), (0.0, 2.0), (1.0, 0.0)], &[(0, 1), (1, 2)]);
        assert!(!in_diametral_disc_path(&g, &PathTrace::new(vec![0, 1, 2])).unwrap());
        let (g, p) = chain(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert!(in_diametral_disc_path(&g, &p).unwrap());
    }

    #[test]
    fn invalid_paths() {
        let (g, _) = chain(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert!(PathTrace::new(vec![0, 2]).validate(&g).is_err());
        assert!(PathTrace::new(vec![0, 1, 0]).validate(&g).is_err());
        assert!(path_length(&g, &PathTrace::new(vec![0, 7])).is_err());
    }

    #[test]
    fn edges_sorted() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.5)], &[(2, 0), (1, 0), (1, 2), (0, 1)]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.edge_count(), 3);
    }
}
