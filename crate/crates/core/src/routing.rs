//! Local angle routing on triangulations.
//!
//! At the current vertex `p`, take the rightmost incident triangle `pab`
//! meeting segment `st`, with `a` on `p`'s side of the line. Step to `a` when
//! it is closer to the line (type A); otherwise step along whichever of `pa`
//! and `pb` makes the smaller angle with the rightward horizontal ray in the
//! frame where `st` is horizontal (type B). For edges pointing right this is
//! the smaller absolute slope. A triangle with `dst` as a vertex is the last
//! one along `st`, so the step goes straight to `dst`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geom::{edge_angle, Point, TAU_LEN};
use crate::graph::{path_length, GeometricGraph, PathTrace, StepKind};
use crate::io::TraceRecord;
use crate::triangulation::Triangulation;

/// Rigid motion taking `s` to the origin and `t` onto the positive x-axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoutingFrame {
    pub s: usize,
    pub t: usize,
    origin: Point,
    /// Counter-clockwise rotation applied after translation, in radians.
    pub rotation: f64,
    cos: f64,
    sin: f64,
}

impl RoutingFrame {
    pub fn new(g: &GeometricGraph, s: usize, t: usize) -> Result<Self> {
        let angle = edge_angle(g.point(s), g.point(t))?.radians();
        let rotation = if angle == 0.0 { 0.0 } else { TAU - angle };
        let (sin, cos) = (-angle).sin_cos();
        Ok(RoutingFrame { s, t, origin: g.point(s), rotation, cos, sin })
    }

    /// Frame coordinates of `p`.
    pub fn apply(&self, p: Point) -> (f64, f64) {
        let (dx, dy) = p.sub(self.origin);
        (dx * self.cos - dy * self.sin, dx * self.sin + dy * self.cos)
    }
}

/// Which tie-break rule fired at a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieFlag {
    /// Two incident triangles reached equally far along `st`.
    Rightmost { step: usize },
    /// `pa` and `pb` make equal angles with the horizontal; the step went to `a`.
    Slope { step: usize },
}

impl std::fmt::Display for TieFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TieFlag::Rightmost { step } => write!(f, "step {step}: rightmost-triangle tie, upper triangle taken"),
            TieFlag::Slope { step } => write!(f, "step {step}: slope tie, same-side vertex taken"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Route {
    pub path: PathTrace,
    pub frame: RoutingFrame,
    pub ties: Vec<TieFlag>,
}

impl Route {
    pub fn record(&self, g: &GeometricGraph) -> Result<TraceRecord> {
        let mut rec = TraceRecord::from_path(g, &self.path)?;
        rec.frame_rotation = Some(self.frame.rotation);
        rec.tie_flags = self.ties.iter().map(ToString::to_string).collect();
        Ok(rec)
    }
}

/// Runs the routing algorithm from `s` to `dst`.
pub fn route(t: &Triangulation, s: usize, dst: usize) -> Result<Route> {
    let g = t.graph();
    if s >= g.n() || dst >= g.n() {
        return Err(Error::Parameter(format!("route endpoints ({s}, {dst}) out of range")));
    }
    if s == dst {
        return Err(Error::Parameter(format!("route from vertex {s} to itself")));
    }
    let frame = RoutingFrame::new(g, s, dst)?;
    let at = |v: usize| frame.apply(g.point(v));
    let budget = 3 * t.triangles().len();
    let mut visited = vec![false; g.n()];
    visited[s] = true;
    let mut path = PathTrace::single(s);
    let mut ties = Vec::new();
    let mut p = s;
    while p != dst {
        let step = path.edge_count();
        if step >= budget {
            return Err(Error::Invariant(format!("route {s} -> {dst} exceeded {budget} steps")));
        }
        let hit = t.rightmost_intersecting_triangle(p, s, dst)?;
        if hit.tie {
            ties.push(TieFlag::Rightmost { step });
        }
        let ((xp, yp), (xa, ya), (xb, yb)) = (at(p), at(hit.a), at(hit.b));
        let (next, kind) = if hit.a == dst || hit.b == dst {
            // The last triangle along st: its exit is dst itself.
            (dst, if yp.abs() > TAU_LEN { StepKind::A } else { StepKind::B })
        } else if ya.abs() < yp.abs() - TAU_LEN {
            (hit.a, StepKind::A)
        } else {
            // Angle to the rightward horizontal ray; equals the |slope|
            // comparison whenever both candidates lie to the right of p.
            let (ua, va, ub, vb) = ((ya - yp).abs(), xa - xp, (yb - yp).abs(), xb - xp);
            let (lhs, rhs) = if va > 0.0 && vb > 0.0 { (ua * vb, ub * va) } else { (ua.atan2(va), ub.atan2(vb)) };
            if lhs == rhs {
                ties.push(TieFlag::Slope { step });
            }
            (if lhs <= rhs { hit.a } else { hit.b }, StepKind::B)
        };
        if visited[next] {
            return Err(Error::Invariant(format!("route {s} -> {dst} revisits vertex {next}")));
        }
        visited[next] = true;
        path.vertices.push(next);
        path.steps.push(Some(kind));
        p = next;
    }
    Ok(Route { path, frame, ties })
}

/// Whether frame x-coordinates increase along the path (within `TAU_LEN`).
pub fn verify_x_increasing(g: &GeometricGraph, path: &PathTrace, frame: &RoutingFrame) -> bool {
    path.vertices.windows(2).all(|w| frame.apply(g.point(w[1])).0 > frame.apply(g.point(w[0])).0 - TAU_LEN)
}

/// Path length over the distance between the path's endpoints.
pub fn routing_ratio(g: &GeometricGraph, path: &PathTrace) -> Result<f64> {
    let len = path_length(g, path)?;
    if path.edge_count() == 0 {
        return Ok(1.0);
    }
    Ok(len / g.length(path.source(), path.target()))
}

/// Worst-case routing ratio on triangulations whose largest angle is `alpha`.
pub fn routing_ratio_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0 * std::f64::consts::FRAC_PI_3) {
        return Err(Error::Parameter(format!("maximum angle {alpha} rad outside (0, 2π/3)")));
    }
    Ok((alpha.sin() + (alpha / 2.0).sin()) / (1.5 * alpha).sin())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepResult {
    pub max_ratio: f64,
    /// Lexicographically first ordered pair attaining the maximum.
    pub pair: (usize, usize),
}

/// Largest routing ratio over all ordered vertex pairs.
pub fn routing_ratio_sweep(t: &Triangulation) -> Result<SweepResult> {
    let g = t.graph();
    let mut best = SweepResult { max_ratio: 1.0, pair: (0, 0) };
    let mut first = true;
    for s in 0..g.n() {
        for d in 0..g.n() {
            if s == d {
                continue;
            }
            let r = routing_ratio(g, &route(t, s, d)?.path)?;
            if first || r > best.max_ratio {
                best = SweepResult { max_ratio: r, pair: (s, d) };
                first = false;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, SQRT_2};

    fn tri(c: &[(f64, f64)], t: Vec<[usize; 3]>) -> Triangulation {
        Triangulation::from_triangles(c.iter().map(|&(x, y)| Point::new(x, y).unwrap()).collect(), t).unwrap()
    }

    #[test]
    fn frame_maps_endpoints() {
        let t = tri(&[(1.0, 1.0), (4.0, 5.0), (0.0, 3.0)], vec![[0, 1, 2]]);
        let f = RoutingFrame::new(t.graph(), 0, 1).unwrap();
        let (x0, y0) = f.apply(t.points()[0]);
        let (x1, y1) = f.apply(t.points()[1]);
        assert_eq!((x0, y0), (0.0, 0.0));
        assert!((x1 - 5.0).abs() < 1e-12 && y1.abs() < 1e-12);
    }

    #[test]
    fn adjacent_target_single_edge() {
        let t = tri(&[(0.0, 0.0), (1.0, 0.05), (0.5, 0.8), (0.5, -0.7)], vec![[0, 1, 2], [0, 3, 1]]);
        let r = route(&t, 0, 1).unwrap();
        assert_eq!(r.path.vertices, vec![0, 1]);
        assert_eq!(routing_ratio(t.graph(), &r.path).unwrap(), 1.0);
        assert!(verify_x_increasing(t.graph(), &r.path, &r.frame));
    }

    #[test]
    fn step_types() {
        // From s the rightmost triangle is (s, a, b) with a above; a is the
        // shallower edge, so a type-B step goes to a. From a, the next
        // triangle (a, t, b) has t on the line: a type-A step.
        let t = tri(&[(0.0, 0.0), (1.0, 0.3), (1.0, -0.6), (2.0, 0.0)], vec![[0, 2, 1], [1, 2, 3]]);
        let r = route(&t, 0, 3).unwrap();
        assert_eq!(r.path.vertices, vec![0, 1, 3]);
        assert_eq!(r.path.steps, vec![Some(StepKind::B), Some(StepKind::A)]);
        assert!(r.ties.is_empty());
    }

    #[test]
    fn slope_tie_goes_to_same_side_vertex() {
        let t = tri(&[(0.0, 0.0), (1.0, 0.5), (1.0, -0.5), (2.0, 0.0)], vec![[0, 2, 1], [1, 2, 3]]);
        let r = route(&t, 0, 3).unwrap();
        assert_eq!(r.path.vertices, vec![0, 1, 3]);
        assert!(r.ties.contains(&TieFlag::Slope { step: 0 }));
        let rec = r.record(t.graph()).unwrap();
        assert_eq!(rec.tie_flags.len(), r.ties.len());
        assert_eq!(rec.frame_rotation, Some(0.0));
    }

    #[test]
    fn bound_values() {
        assert!((routing_ratio_bound(FRAC_PI_2).unwrap() - (1.0 + SQRT_2)).abs() < 1e-15);
        assert!((routing_ratio_bound(FRAC_PI_3).unwrap() - (3f64.sqrt() / 2.0 + 0.5)).abs() < 1e-15);
        assert!(routing_ratio_bound(119.99f64.to_radians()).unwrap() > 100.0);
        assert!(routing_ratio_bound(2.0 * FRAC_PI_3).is_err());
        let b = routing_ratio_bound(110f64.to_radians()).unwrap();
        assert!((b - 6.796).abs() < 1e-3, "{b}");
    }

    #[test]
    fn single_triangle_sweep() {
        let t = tri(&[(0.0, 0.0), (1.0, 0.0), (0.3, 0.9)], vec![[0, 1, 2]]);
        let s = routing_ratio_sweep(&t).unwrap();
        assert_eq!(s.max_ratio, 1.0);
    }

    #[test]
    fn self_route_rejected() {
        let t = tri(&[(0.0, 0.0), (1.0, 0.0), (0.3, 0.9)], vec![[0, 1, 2]]);
        assert!(matches!(route(&t, 1, 1), Err(Error::Parameter(_))));
    }
}
