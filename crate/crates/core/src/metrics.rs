//! Spanning, competitive and width-based length ratios.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geom::{TAU_ANGLE, TAU_LEN};
use crate::graph::{path_length, path_width, GeometricGraph, PathTrace};

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graph distances from `s`; unreachable vertices are infinite.
pub fn shortest_paths(g: &GeometricGraph, s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[s] = 0.0;
    let mut heap = BinaryHeap::from([Entry(0.0, s)]);
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &w in g.neighbors(u) {
            let nd = d + g.length(u, w);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Entry(nd, w));
            }
        }
    }
    dist
}

/// `ratios[i][j]` = graph distance over Euclidean distance (1 on the diagonal).
pub fn ratio_matrix(g: &GeometricGraph) -> Result<Vec<Vec<f64>>> {
    (0..g.n())
        .map(|s| {
            let dist = shortest_paths(g, s);
            if let Some(v) = dist.iter().position(|d| d.is_infinite()) {
                return Err(Error::Disconnected(s, v));
            }
            Ok(dist.iter().enumerate().map(|(v, d)| if v == s { 1.0 } else { d / g.length(s, v) }).collect())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpanningRatio {
    pub ratio: f64,
    /// Lexicographically first pair `(i, j)`, `i < j`, attaining the ratio.
    pub pair: (usize, usize),
}

/// Largest ratio of graph distance to Euclidean distance over all pairs.
pub fn spanning_ratio(g: &GeometricGraph) -> Result<SpanningRatio> {
    let mut best = SpanningRatio { ratio: 1.0, pair: (0, 0) };
    let mut first = true;
    for s in 0..g.n() {
        let dist = shortest_paths(g, s);
        for (v, &d) in dist.iter().enumerate().skip(s + 1) {
            if d.is_infinite() {
                return Err(Error::Disconnected(s, v));
            }
            let r = d / g.length(s, v);
            if first || r > best.ratio {
                best = SpanningRatio { ratio: r, pair: (s, v) };
                first = false;
            }
        }
    }
    Ok(best)
}

/// Path length over the shortest graph distance between its endpoints.
pub fn competitive_ratio(g: &GeometricGraph, path: &PathTrace) -> Result<f64> {
    let len = path_length(g, path)?;
    if path.edge_count() == 0 {
        return Ok(1.0);
    }
    let d = shortest_paths(g, path.source())[path.target()];
    Ok(len / d)
}

/// Whether a path of width at most `gamma` is no longer than
/// `|endpoints| / cos(gamma / 2)`.
pub fn check_obs1(g: &GeometricGraph, path: &PathTrace, gamma: f64) -> Result<bool> {
    if path.edge_count() == 0 {
        return Ok(true);
    }
    let (_, width) = path_width(g, path)?;
    if width > gamma + TAU_ANGLE {
        return Err(Error::Parameter(format!("path width {width} exceeds {gamma}")));
    }
    let bound = g.length(path.source(), path.target()) / (gamma / 2.0).cos();
    Ok(path_length(g, path)? <= bound + TAU_LEN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn graph(c: &[(f64, f64)], e: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(c.iter().map(|&(x, y)| Point::new(x, y).unwrap()).collect(), e).unwrap()
    }

    #[test]
    fn complete_graph_ratio_one() {
        let c = [(0.0, 0.0), (1.0, 0.2), (0.3, 0.9), (-0.4, 0.5)];
        let mut e = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                e.push((i, j));
            }
        }
        assert_eq!(spanning_ratio(&graph(&c, &e)).unwrap().ratio, 1.0);
    }

    #[test]
    fn square_cycle() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let r = spanning_ratio(&g).unwrap();
        assert!((r.ratio - SQRT_2).abs() < 1e-12);
        assert_eq!(r.pair, (0, 2));
        let m = ratio_matrix(&g).unwrap();
        assert!((m[1][3] - SQRT_2).abs() < 1e-12 && m[2][2] == 1.0);
    }

    #[test]
    fn disconnected_names_pair() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (5.0, 5.0)], &[(0, 1)]);
        assert!(matches!(spanning_ratio(&g), Err(Error::Disconnected(0, 2))));
    }

    #[test]
    fn competitive_vs_routing() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let direct = PathTrace::new(vec![0, 1, 2]);
        assert!((competitive_ratio(&g, &direct).unwrap() - 1.0).abs() < 1e-15);
        let long = PathTrace::new(vec![0, 3, 2, 1]);
        assert!((competitive_ratio(&g, &long).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn obs1_bounds() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], &[(0, 1), (1, 2)]);
        let p = PathTrace::new(vec![0, 1, 2]);
        // Exactly at the 90-degree bound: length 2 = sqrt 2 * sqrt 2.
        assert!(check_obs1(&g, &p, FRAC_PI_2).unwrap());
        assert!(check_obs1(&g, &p, 2.0 * std::f64::consts::FRAC_PI_3).unwrap());
        assert!(check_obs1(&g, &p, 1.0).is_err());
    }
}
