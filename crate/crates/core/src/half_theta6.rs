//! The half-θ6 graph and its width-120° angle-monotone paths.
//!
//! Cones are 60° sectors around each point labelled clockwise from `C0`,
//! which contains the positive y-axis: `C1` covers directions (0°, 60°),
//! `C0` (60°, 120°), `C5` (120°, 180°), `C4` (180°, 240°), `C3` (240°, 300°)
//! and `C2` (300°, 360°). Each point connects to the nearest point, measured
//! along the cone bisector, in each of its even cones.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::sign_linear_sqrt3;
use crate::geom::Point;
use crate::graph::{check_points, GeometricGraph, PathTrace};
use crate::io::{format_graph, parse_graph_prefix, Lines};

/// Cone label of `v` as seen from `u`, in `0..6`.
///
/// Directions on a cone boundary (multiples of 60°) are a general-position
/// error; the sector test is exact.
pub fn cone_index(u: Point, v: Point) -> Result<usize> {
    if u == v {
        return Err(Error::Degenerate(format!("cone of coincident points {u}")));
    }
    let y = sign_linear_sqrt3(u, v, (0, 0), (1, 0));
    let s60 = sign_linear_sqrt3(u, v, (0, -1), (1, 0));
    let s120 = sign_linear_sqrt3(u, v, (0, 1), (1, 0));
    let label = match (y, s60, s120) {
        (1, -1, 1) => 1,
        (1, 1, 1) => 0,
        (1, 1, -1) => 5,
        (-1, 1, -1) => 4,
        (-1, -1, -1) => 3,
        (-1, -1, 1) => 2,
        _ => return Err(Error::Degenerate(format!("direction {u} -> {v} lies on a cone boundary"))),
    };
    Ok(label)
}

/// Sign of `(b - a)` projected on the bisector of even cone `cone`.
fn bisector_sign(a: Point, b: Point, cone: usize) -> i8 {
    match cone {
        0 => sign_linear_sqrt3(a, b, (0, 0), (1, 0)),
        2 => sign_linear_sqrt3(a, b, (0, 1), (-1, 0)),
        4 => sign_linear_sqrt3(a, b, (0, -1), (-1, 0)),
        _ => unreachable!("bisector of odd cone"),
    }
}

/// A half-θ6 graph with the cone each edge was built for.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfTheta6 {
    graph: GeometricGraph,
    /// `nbr[u][i / 2]` is the neighbour of `u` in even cone `i`.
    nbr: Vec<[Option<usize>; 3]>,
}

impl HalfTheta6 {
    pub fn graph(&self) -> &GeometricGraph {
        &self.graph
    }

    /// Neighbour of `u` in even cone `cone`.
    pub fn cone_neighbor(&self, u: usize, cone: usize) -> Option<usize> {
        assert!(cone.is_multiple_of(2) && cone < 6, "cone {cone} is not an even cone");
        self.nbr[u][cone / 2]
    }

    /// Every edge as `(owner, target, cone)`, sorted.
    pub fn attributions(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .nbr
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().enumerate().filter_map(move |(k, v)| v.map(|v| (u, v, 2 * k))))
            .collect();
        out.sort_unstable();
        out
    }

    /// Maximal path following cone `cone` neighbours from `start`.
    pub fn chain(&self, start: usize, cone: usize) -> PathTrace {
        let mut vertices = vec![start];
        let mut cur = start;
        while let Some(next) = self.cone_neighbor(cur, cone) {
            vertices.push(next);
            cur = next;
        }
        PathTrace::new(vertices)
    }

    pub fn c0_chain(&self, u: usize) -> PathTrace {
        self.chain(u, 0)
    }

    pub fn c4_chain(&self, v: usize) -> PathTrace {
        self.chain(v, 4)
    }

    /// Whether `w` lies in the closed canonical triangle of `u` toward `v`,
    /// where `v` is in even cone `cone` of `u`.
    fn in_canonical_triangle(&self, u: usize, v: usize, w: usize, cone: usize) -> Result<bool> {
        if w == u {
            return Ok(true);
        }
        let p = self.graph.points();
        Ok(cone_index(p[u], p[w])? == cone && bisector_sign(p[w], p[v], cone) >= 0)
    }

    /// A `u`-`v` path of width at most 120°, spliced from two cone chains
    /// that share a vertex.
    pub fn angle_monotone_path_120(&self, u: usize, v: usize) -> Result<PathTrace> {
        if u == v {
            return Err(Error::Parameter(format!("path from vertex {u} to itself")));
        }
        let p = self.graph.points();
        let cone = cone_index(p[u], p[v])?;
        if cone % 2 == 1 {
            return Ok(self.angle_monotone_path_120(v, u)?.reversed());
        }
        let sigma_u = self.chain(u, cone).vertices;
        if let Some(k) = sigma_u.iter().position(|&w| w == v) {
            return Ok(PathTrace::new(sigma_u[..=k].to_vec()));
        }
        let mut last_inside = 0;
        for (k, &w) in sigma_u.iter().enumerate() {
            if !self.in_canonical_triangle(u, v, w, cone)? {
                break;
            }
            last_inside = k;
        }
        let u_prime = sigma_u[last_inside];
        let side = cone_index(p[u_prime], p[v])?;
        let other = if side == (cone + 1) % 6 {
            (cone + 4) % 6
        } else if side == (cone + 5) % 6 {
            (cone + 2) % 6
        } else {
            return Err(Error::Invariant(format!(
                "vertex {v} in cone {side} of {u_prime}, expected a cone beside {cone}"
            )));
        };
        let sigma_v = self.chain(v, other).vertices;
        let on_u: HashMap<usize, usize> = sigma_u.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let (kv, ku) = sigma_v
            .iter()
            .enumerate()
            .find_map(|(k, w)| on_u.get(w).map(|&j| (k, j)))
            .ok_or_else(|| Error::Invariant(format!("chains from {u} and {v} share no vertex")))?;
        let mut vertices = sigma_u[..=ku].to_vec();
        vertices.extend(sigma_v[..kv].iter().rev());
        Ok(PathTrace::new(vertices))
    }
}

/// Builds the half-θ6 graph. Every pair of points is checked for general
/// position (no two points on a line parallel to a cone boundary).
pub fn build_half_theta6(points: &[Point]) -> Result<HalfTheta6> {
    check_points(points)?;
    let n = points.len();
    let mut nbr = vec![[None; 3]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let cone = cone_index(points[u], points[v]).map_err(|e| match e {
                Error::Degenerate(msg) => Error::GeneralPosition(u.min(v), u.max(v), msg),
                e => e,
            })?;
            if cone % 2 == 1 {
                continue;
            }
            let slot = &mut nbr[u][cone / 2];
            match *slot {
                Some(w) if bisector_sign(points[v], points[w], cone) <= 0 => {}
                _ => *slot = Some(v),
            }
        }
    }
    let edges: Vec<(usize, usize)> =
        nbr.iter().enumerate().flat_map(|(u, row)| row.iter().flatten().map(move |&v| (u, v))).collect();
    let graph = GeometricGraph::new(points.to_vec(), &edges)?;
    Ok(HalfTheta6 { graph, nbr })
}

/// Graph file with a trailing `cones` block of `owner target cone` lines.
pub fn format_half_theta6(h: &HalfTheta6) -> String {
    let mut out = format_graph(&h.graph);
    let attr = h.attributions();
    writeln!(out, "cones {}", attr.len()).unwrap();
    for (u, v, c) in attr {
        writeln!(out, "{u} {v} {c}").unwrap();
    }
    out
}

/// Reads a half-θ6 graph file. Without a `cones` block the attribution is
/// recomputed from the points; either way it must match the edge list.
pub fn parse_half_theta6(text: &str) -> Result<HalfTheta6> {
    let mut lines = Lines::new(text);
    let g = parse_graph_prefix(&mut lines)?;
    let rebuilt = build_half_theta6(g.points())?;
    if lines.peek().is_none() {
        if rebuilt.graph != g {
            return Err(Error::Parse { line: lines.line_no(), msg: "edges are not the half-θ6 graph".into() });
        }
        return Ok(rebuilt);
    }
    let k = lines.header("cones")?;
    let mut nbr = vec![[None; 3]; g.n()];
    for _ in 0..k {
        let (no, f) = lines.fields::<usize>(3)?;
        let (u, v, c) = (f[0], f[1], f[2]);
        if u >= g.n() || v >= g.n() || c >= 6 || c % 2 == 1 || !g.has_edge(u, v) {
            return Err(Error::Parse { line: no, msg: format!("invalid cone attribution {u} {v} {c}") });
        }
        nbr[u][c / 2] = Some(v);
    }
    lines.finish()?;
    let h = HalfTheta6 { graph: g, nbr };
    if h != rebuilt {
        return Err(Error::Parse { line: lines.line_no(), msg: "cone block disagrees with the points".into() });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_width;
    use std::f64::consts::FRAC_PI_3;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn cone_labels() {
        let o = p(0.0, 0.0);
        assert_eq!(cone_index(o, p(0.0, 1.0)).unwrap(), 0);
        assert_eq!(cone_index(o, p(1.0, 0.1)).unwrap(), 1);
        assert_eq!(cone_index(o, p(0.0, -1.0)).unwrap(), 3);
        assert_eq!(cone_index(o, p(-1.0, 0.1)).unwrap(), 5);
        assert_eq!(cone_index(o, p(-1.0, -0.1)).unwrap(), 4);
        assert_eq!(cone_index(o, p(1.0, -0.1)).unwrap(), 2);
        for deg in [15.0f64, 75.0, 135.0, 195.0, 255.0, 315.0] {
            let (s, c) = deg.to_radians().sin_cos();
            let want = (7 - (deg / 60.0) as usize) % 6;
            assert_eq!(cone_index(o, p(c, s)).unwrap(), want, "{deg}");
        }
    }

    #[test]
    fn cone_boundaries_rejected() {
        let o = p(0.0, 0.0);
        assert!(cone_index(o, p(1.0, 0.0)).is_err());
        assert!(cone_index(o, p(-2.0, 0.0)).is_err());
        // The float direction of (1, sqrt 3) is not exactly 60 degrees, so
        // the exact test classifies it.
        assert!(cone_index(o, p(1.0, 3f64.sqrt())).is_ok());
    }

    #[test]
    fn even_cone_implies_odd_reverse() {
        let pts = [p(0.3, 0.1), p(-0.2, 0.7), p(0.9, -0.4), p(-0.8, -0.35)];
        for &a in &pts {
            for &b in &pts {
                if a != b {
                    assert_eq!((cone_index(a, b).unwrap() + 3) % 6, cone_index(b, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn two_points_one_edge() {
        let h = build_half_theta6(&[p(0.0, 0.0), p(0.1, 1.0)]).unwrap();
        assert_eq!(h.graph().edges(), vec![(0, 1)]);
        assert_eq!(h.attributions(), vec![(0, 1, 0)]);
    }

    #[test]
    fn vertical_stack_chain() {
        let h = build_half_theta6(&[p(0.0, 0.0), p(0.01, 1.0), p(-0.01, 2.0)]).unwrap();
        assert_eq!(h.c0_chain(0).vertices, vec![0, 1, 2]);
        assert_eq!(h.c0_chain(2).vertices, vec![2]);
        let (_, w) = path_width(h.graph(), &h.c0_chain(0)).unwrap();
        assert!(w <= FRAC_PI_3 + 1e-9);
    }

    #[test]
    fn general_position_violation_names_pair() {
        let err = build_half_theta6(&[p(0.0, 0.0), p(0.3, 0.9), p(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::GeneralPosition(0, 2, _)), "{err}");
    }

    #[test]
    fn adjacent_pair_gives_edge() {
        let h = build_half_theta6(&[p(0.0, 0.0), p(0.1, 1.0), p(2.0, 0.3)]).unwrap();
        for (u, v) in h.graph().edges() {
            assert_eq!(h.angle_monotone_path_120(u, v).unwrap().vertices, vec![u, v]);
            assert_eq!(h.angle_monotone_path_120(v, u).unwrap().vertices, vec![v, u]);
        }
    }

    #[test]
    fn file_round_trip() {
        let h = build_half_theta6(&[p(0.0, 0.0), p(0.1, 1.0), p(2.0, 0.3), p(-0.7, 0.45)]).unwrap();
        let text = format_half_theta6(&h);
        assert!(text.contains("cones"));
        assert_eq!(parse_half_theta6(&text).unwrap(), h);
        let plain = format_graph(h.graph());
        assert_eq!(parse_half_theta6(&plain).unwrap(), h);
    }

    #[test]
    fn random_pairs_have_width_120_paths() {
        use crate::graph::path_length;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let pts: Vec<Point> = (0..25).map(|_| p(rng.gen(), rng.gen())).collect();
            let h = build_half_theta6(&pts).unwrap();
            assert!(h.graph().edge_count() <= 3 * pts.len());
            for u in 0..pts.len() {
                for v in 0..pts.len() {
                    if u == v {
                        continue;
                    }
                    let path = h.angle_monotone_path_120(u, v).unwrap();
                    path.validate(h.graph()).unwrap();
                    assert_eq!((path.source(), path.target()), (u, v));
                    let (_, w) = path_width(h.graph(), &path).unwrap();
                    assert!(w <= 2.0 * FRAC_PI_3 + 1e-9);
                    let len = path_length(h.graph(), &path).unwrap();
                    assert!(len <= 2.0 * pts[u].dist(pts[v]) + 1e-9);
                }
            }
        }
    }
}
