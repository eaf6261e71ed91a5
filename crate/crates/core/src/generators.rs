//! Point-set and triangulation generators, including the lower-bound gadgets
//! for local routing.
//!
//! Every gadget verifies its defining property before it is returned.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{incircle_sign, orient_sign};
use crate::geom::{Point, TAU_ANGLE};
use crate::graph::{for_each_simple_path, is_self_approaching, GeometricGraph};
use crate::half_theta6::cone_index;
use crate::routing::{route, routing_ratio, routing_ratio_bound};
use crate::triangulation::{delaunay, Triangulation};

/// A triangulation with named vertices.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub triangulation: Triangulation,
    pub marks: BTreeMap<String, usize>,
}

impl Gadget {
    fn new(triangulation: Triangulation, marks: &[(&str, usize)]) -> Self {
        let marks = marks.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Gadget { triangulation, marks }
    }

    /// Vertex id of a named vertex.
    pub fn mark(&self, name: &str) -> usize {
        self.marks[name]
    }

    /// Marked vertices as a JSON object, keys sorted.
    pub fn marks_json(&self) -> String {
        serde_json::to_string_pretty(&self.marks).expect("string keys serialize")
    }

    /// Route ratio of the marked pair `(s, t)`.
    pub fn route_ratio(&self) -> Result<f64> {
        let r = route(&self.triangulation, self.mark("s"), self.mark("t"))?;
        routing_ratio(self.triangulation.graph(), &r.path)
    }
}

fn pt(x: f64, y: f64) -> Point {
    Point { x, y }
}

fn polar(r: f64, a: f64) -> (f64, f64) {
    (r * a.cos(), r * a.sin())
}

fn generator_error(what: impl Into<String>) -> Error {
    Error::Generator(what.into())
}

fn general_position_with(p: Point, pts: &[Point]) -> bool {
    pts.iter().all(|&q| q != p && cone_index(q, p).is_ok())
        && pts.iter().enumerate().all(|(i, &a)| pts[i + 1..].iter().all(|&b| orient_sign(a, b, p) != 0))
}

fn sample_in_position(rng: &mut ChaCha8Rng, pts: &[Point]) -> Point {
    loop {
        let p = pt(rng.gen(), rng.gen());
        if general_position_with(p, pts) {
            return p;
        }
    }
}

/// `n` points uniform in the unit square in general position: distinct, no
/// three collinear, no pair on a 60° cone boundary, and no cocircular
/// quadruple that makes the Delaunay triangulation ambiguous. Offending
/// points are resampled from the same ChaCha8 stream.
pub fn gen_random(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    for _ in 0..n {
        let p = sample_in_position(&mut rng, &pts);
        pts.push(p);
    }
    if n < 3 {
        return pts;
    }
    while let Err(Error::Cocircular(ids)) = delaunay(&pts) {
        let v = ids[3];
        let rest: Vec<Point> = pts.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, &p)| p).collect();
        pts[v] = sample_in_position(&mut rng, &rest);
    }
    pts
}

/// The `(m+1) x (m+1)` integer grid with every cell split along its
/// ascending diagonal.
pub fn gen_grid_gabriel(m: usize) -> Result<Triangulation> {
    if m == 0 {
        return Err(Error::Parameter("grid needs at least one cell".into()));
    }
    let id = |i: usize, j: usize| j * (m + 1) + i;
    let points = (0..=m).flat_map(|j| (0..=m).map(move |i| pt(i as f64, j as f64))).collect();
    let mut tris = Vec::with_capacity(2 * m * m);
    for j in 0..m {
        for i in 0..m {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    let t = Triangulation::from_triangles(points, tris)?;
    if !t.is_gabriel() {
        return Err(generator_error("grid triangulation is not Gabriel"));
    }
    Ok(t)
}

/// Regular `n`-gon on the unit circle, rotated by a small seeded phase.
#[derive(Clone, Debug)]
pub struct RegularPolygon {
    pub points: Vec<Point>,
    /// Set whenever four or more points are cocircular, which is always the
    /// case for `n >= 4`: such sets have no unique Delaunay triangulation.
    pub warning: Option<String>,
}

pub fn gen_regular_ngon(n: usize, seed: u64) -> Result<RegularPolygon> {
    if n < 3 {
        return Err(Error::Parameter(format!("polygon needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase = rng.gen::<f64>() * 1e-3 * TAU / n as f64;
    let points = (0..n)
        .map(|i| {
            let (x, y) = polar(1.0, TAU * i as f64 / n as f64 + phase);
            pt(x, y)
        })
        .collect();
    let warning = (n >= 4).then(|| format!("all {n} vertices are cocircular; delaunay() will reject this set"));
    Ok(RegularPolygon { points, warning })
}

/// A Gabriel triangulation on which the route from `s = (0, 0)` to
/// `t = (1, 0)` climbs at 45° to near `(1, 1)` and drops back to `t`.
///
/// Five points: `s`, `p` near `(1, 1)`, `q` just below `s`, `a` just above
/// `t`, and `t`. The route is `s, p, a, t` with one type-B and two type-A
/// steps.
pub fn gen_gabriel_worstcase(eps: f64) -> Result<Gadget> {
    if !(eps > 0.0 && eps < 0.1) {
        return Err(Error::Parameter(format!("eps {eps} outside (0, 0.1)")));
    }
    let e = eps / 10.0;
    let kappa = 1.5 * e * e / (1.0 + 2.0 * e);
    let scale = 1.0 / (1.0 + 3.0 * e + kappa);
    let raw = [(0.0, 0.0), (1.0, 1.0 - e), (e, -e), (1.0 + 3.0 * e, e), (1.0 + 3.0 * e + kappa, 0.0)];
    let mut points: Vec<Point> = raw.iter().map(|&(x, y)| pt(x * scale, y * scale)).collect();
    points[4] = pt(1.0, 0.0);
    let t = Triangulation::from_triangles(points, vec![[0, 2, 1], [2, 3, 1], [2, 4, 3]])?;
    if !t.is_gabriel() {
        return Err(generator_error(format!("Gabriel worst case for eps {eps} is not Gabriel")));
    }
    let g = Gadget::new(t, &[("s", 0), ("p", 1), ("q", 2), ("a", 3), ("t", 4)]);
    let ratio = g.route_ratio()?;
    if ratio < (1.0 + SQRT_2) * (1.0 - eps) {
        return Err(generator_error(format!("Gabriel worst case ratio {ratio} too small for eps {eps}")));
    }
    Ok(g)
}

/// A triangulation with largest angle at most `alpha` whose route from
/// `s = (0, 0)` to `t = (1, 0)` follows the triangle with angles `alpha / 2`
/// at `s` and `alpha` at `t`: up at angle `alpha / 2`, then down at angle
/// `-alpha` back to `t`. At `alpha = 90°` this is the Gabriel worst case.
pub fn gen_general_worstcase(alpha: f64, eps: f64) -> Result<Gadget> {
    if !(FRAC_PI_2..2.0 * PI / 3.0).contains(&alpha) {
        return Err(Error::Parameter(format!("alpha {alpha} rad outside [π/2, 2π/3)")));
    }
    if !(eps > 0.0 && eps < 0.1) {
        return Err(Error::Parameter(format!("eps {eps} outside (0, 0.1)")));
    }
    if alpha == FRAC_PI_2 {
        return gen_gabriel_worstcase(eps);
    }
    let target = (1.0 - eps) * routing_ratio_bound(alpha)?;
    // The angle at q in triangle (s, q, p) is about π - alpha + 3e.
    let mut e = (eps / 10.0).min((2.0 * alpha - PI) / 12.0);
    for _ in 0..40 {
        let g = general_worstcase_shape(alpha, e)?;
        if g.triangulation.max_angle() > alpha + TAU_ANGLE {
            return Err(generator_error(format!("max angle {} exceeds alpha {alpha}", g.triangulation.max_angle())));
        }
        if g.route_ratio()? >= target {
            return Ok(g);
        }
        e /= 2.0;
    }
    Err(generator_error(format!("worst case for alpha {alpha} never reaches ratio {target}")))
}

fn general_worstcase_shape(alpha: f64, e: f64) -> Result<Gadget> {
    let (ax, ay) = polar(e, PI - alpha + e);
    let a = (1.0 + ax, ay);
    let q = polar(e, -alpha / 2.0 + e);
    // p: ray from s at alpha/2 - 2e meets the ray from a at π - alpha + 3e.
    let (ux, uy) = polar(1.0, alpha / 2.0 - 2.0 * e);
    let (wx, wy) = polar(1.0, PI - alpha + 3.0 * e);
    let lambda = (a.0 * wy - a.1 * wx) / (ux * wy - uy * wx);
    let p = (lambda * ux, lambda * uy);
    let points = [(0.0, 0.0), p, q, a, (1.0, 0.0)].iter().map(|&(x, y)| pt(x, y)).collect();
    let t = Triangulation::from_triangles(points, vec![[0, 2, 1], [2, 3, 1], [2, 4, 3]])?;
    Ok(Gadget::new(t, &[("s", 0), ("p", 1), ("q", 2), ("a", 3), ("t", 4)]))
}

const FAN_HEIGHT: f64 = 1e-4;
const FILL_Y: f64 = 2.0;
const FILL_CORNER: (f64, f64) = (0.1, 1.85);

/// Shared construction of the fan gadgets. The left part is `s = (0, 0)`,
/// the isosceles right triangle `(s, l0, u0)` with `u0 = (1, 1)`, and
/// `2k - 2` right triangles of width `FAN_HEIGHT` with horizontal sides,
/// alternating up and down, ending at `q` (top) and `q'` (bottom). The right
/// part is the triangles `q q' B`, `q B A` and `A B t`, given for `A` above the
/// axis; with `mirrored` it is reflected across the x-axis. A strip of
/// rectangles over the fan on `A`'s side plus one corner vertex closes the
/// hull with right triangles.
fn fan_gadget(k: usize, right: impl Fn(Point, Point) -> [Point; 3], mirrored: bool) -> Result<Gadget> {
    if k == 0 {
        return Err(Error::Parameter("fan gadgets need k >= 1".into()));
    }
    let mut points = vec![pt(0.0, 0.0)];
    let (mut upper, mut lower) = (Vec::with_capacity(k), Vec::with_capacity(k));
    for i in 0..k {
        let x = 1.0 + i as f64 * FAN_HEIGHT;
        upper.push(points.len());
        points.push(pt(x, 1.0));
        lower.push(points.len());
        points.push(pt(x, -1.0));
    }
    let mut tris = vec![[0, lower[0], upper[0]]];
    for i in 0..k - 1 {
        tris.push([upper[i], lower[i], upper[i + 1]]);
        tris.push([lower[i], lower[i + 1], upper[i + 1]]);
    }
    let sign = if mirrored { -1.0 } else { 1.0 };
    let flip = |p: Point| pt(p.x, sign * p.y);
    let (near, far) = if mirrored { (&lower, &upper) } else { (&upper, &lower) };
    let (q, qp) = (upper[k - 1], lower[k - 1]);
    let [b, a, t] = right(points[q], points[qp]).map(flip);
    let (bi, ai, ti) = (points.len(), points.len() + 1, points.len() + 2);
    points.extend([b, a, t]);
    let (qn, qf) = (near[k - 1], far[k - 1]);
    tris.extend([[qn, qf, bi], [qn, bi, ai], [ai, bi, ti]]);
    let fill: Vec<usize> = (0..k).map(|i| points.len() + i).collect();
    for &u in near.iter() {
        points.push(flip(pt(points[u].x, FILL_Y)));
    }
    for i in 0..k - 1 {
        tris.push([near[i], near[i + 1], fill[i + 1]]);
        tris.push([near[i], fill[i + 1], fill[i]]);
    }
    tris.push([qn, ai, fill[k - 1]]);
    let corner = points.len();
    points.push(flip(pt(FILL_CORNER.0, FILL_CORNER.1)));
    tris.extend([[near[0], fill[0], corner], [0, near[0], corner]]);
    for tri in &mut tris {
        if orient_sign(points[tri[0]], points[tri[1]], points[tri[2]]) < 0 {
            tri.swap(1, 2);
        }
    }
    let tri = Triangulation::from_triangles(points, tris)?;
    if !tri.is_gabriel() {
        return Err(generator_error(format!("fan gadget with k = {k} is not Gabriel")));
    }
    Ok(Gadget::new(tri, &[("s", 0), ("t", ti), ("q", q), ("q'", qp), ("A", ai), ("B", bi)]))
}

/// The two mirrored fan gadgets on which every deterministic `k`-local
/// algorithm is deceived.
#[derive(Clone, Debug)]
pub struct FanLowerBound {
    pub first: Gadget,
    pub mirrored: Gadget,
    /// Horizontal extent of the thin fan.
    pub fan_width: f64,
}

impl FanLowerBound {
    /// A marked vertex of the first instance with the fan contracted to the
    /// segment `u0 l0`.
    fn contracted(&self, name: &str) -> Point {
        let p = self.first.triangulation.points()[self.first.mark(name)];
        if name == "s" {
            p
        } else {
            pt(p.x - self.fan_width, p.y)
        }
    }

    fn dist(&self, a: &str, b: &str) -> f64 {
        self.contracted(a).dist(self.contracted(b))
    }

    /// Length of the route through `q` over `|st|`, in the thin-fan limit.
    pub fn deception_ratio(&self) -> f64 {
        (self.dist("s", "q") + self.dist("q", "B") + self.dist("B", "t")) / self.dist("s", "t")
    }

    /// Length of the route through `q` over the shortest path through `q'`,
    /// in the thin-fan limit.
    pub fn competitive_constant(&self) -> f64 {
        (self.dist("s", "q") + self.dist("q", "B") + self.dist("B", "t"))
            / (self.dist("s", "q'") + self.dist("q'", "B") + self.dist("B", "t"))
    }
}

/// Fan gadget with `angle q' q B = 22.5°`, `|qq'| = 2`, `t` on line `q'B`
/// and the axis, and the square `q B t A`.
pub fn gen_fan_lowerbound(k: usize) -> Result<FanLowerBound> {
    let a = 22.5f64.to_radians();
    let side = 2.0 * a.cos();
    let right = |q: Point, qp: Point| {
        let (bx, by) = polar(side, a - FRAC_PI_2);
        let b = pt(q.x + bx, q.y + by);
        let (ax, ay) = polar(side, a);
        let apex = pt(q.x + ax, q.y + ay);
        let lambda = -qp.y / (b.y - qp.y);
        let mut t = pt(qp.x + lambda * (b.x - qp.x), 0.0);
        // Keep B a convex hull vertex despite rounding.
        while orient_sign(qp, b, t) <= 0 {
            t.x -= t.x * f64::EPSILON;
        }
        [b, apex, t]
    };
    let first = fan_gadget(k, right, false)?;
    let mirrored = fan_gadget(k, right, true)?;
    Ok(FanLowerBound { first, mirrored, fan_width: (k - 1) as f64 * FAN_HEIGHT })
}

/// Counts self-approaching simple `s`-`t` paths through `q` and avoiding it.
pub fn self_approaching_census(g: &GeometricGraph, s: usize, t: usize, q: usize) -> Result<(usize, usize)> {
    let (mut through, mut avoiding) = (0, 0);
    let mut err = None;
    for_each_simple_path(g, s, t, |p| match is_self_approaching(g, p) {
        Ok(true) if p.vertices.contains(&q) => through += 1,
        Ok(true) => avoiding += 1,
        Ok(false) => {}
        Err(e) => err = Some(e),
    });
    err.map_or(Ok((through, avoiding)), Err)
}

/// Largest vertex count of the no-self-approaching gadget, which keeps the
/// exhaustive path enumeration instantaneous.
pub const NO_SELF_APPROACHING_MAX_N: usize = 14;

/// A Gabriel fan gadget on which no self-approaching `s`-`t` path passes
/// through `q`, while one through `q'` exists. Moving along `sq` recedes
/// from `B`, and moving along `qA` recedes from `t`.
pub fn gen_no_self_approaching(k: usize) -> Result<Gadget> {
    let n = 3 * k + 5;
    if n > NO_SELF_APPROACHING_MAX_N {
        return Err(Error::SizeLimit { n, max: NO_SELF_APPROACHING_MAX_N });
    }
    let right = |q: Point, _: Point| [pt(q.x + 1.1, q.y - 1.45), pt(q.x + 0.9, q.y + 0.6), pt(q.x + 1.9, 0.0)];
    let g = fan_gadget(k, right, false)?;
    let (through, avoiding) = self_approaching_census(g.triangulation.graph(), g.mark("s"), g.mark("t"), g.mark("q"))?;
    if through > 0 || avoiding == 0 {
        return Err(generator_error(format!("self-approaching paths: {through} through q, {avoiding} avoiding q")));
    }
    Ok(g)
}

/// Default number of vertices on the dense arc of the Delaunay gadget.
pub const DELAUNAY_ARC_DEFAULT: usize = 64;

/// Largest supported arc vertex count.
pub const DELAUNAY_ARC_MAX: usize = 1024;

/// The two-circle Delaunay gadget with `|sp1| = delta |st|` approximately.
///
/// `C0` has diameter `[s, (1, 0)]`; `p1` and `q1` lie on it next to `s`, with
/// `sp1` slightly flatter than `sq1`. `q2` sits just below the x-axis at the
/// far end of `C0`. `C1` passes through `p1` and touches the horizontal line
/// through `q2` at `q2`; `t` is its right x-axis crossing. The route runs
/// `s, p1, p2` and then down the dense arc of `C1` to `t`.
pub fn gen_delaunay_lowerbound(delta: f64, arc: usize) -> Result<Gadget> {
    if !(delta > 0.0 && delta <= 0.1) {
        return Err(Error::Parameter(format!("delta {delta} outside (0, 0.1]")));
    }
    if !(1..=DELAUNAY_ARC_MAX).contains(&arc) {
        return Err(Error::Parameter(format!("arc vertex count {arc} outside 1..={DELAUNAY_ARC_MAX}")));
    }
    let eta = delta / 10.0;
    // Deep enough for q2 to dominate rounding on the arc, shallow enough to
    // keep t close to (1, 0).
    let depth = 1e-7 * delta * delta * (arc as f64 / 64.0).max(1.0).powi(2);
    let tp = delta.acos();
    let p1 = pt(delta * tp.cos(), delta * tp.sin());
    let tq = (tp.tan() + eta).atan();
    let q1 = pt(tq.cos() * tq.cos(), -tq.cos() * tq.sin());
    let s = pt(0.0, 0.0);
    let mut q2 = pt(1.0, -depth);
    while incircle_sign(s, q1, p1, q2) >= 0 {
        q2.x += 1e-15;
    }
    // C1 points as q2 + r (sin θ, 2 sin²(θ/2)), θ measured from the tangent point.
    let (dx, dy) = (p1.x - q2.x, p1.y - q2.y);
    let r = (dx * dx + dy * dy) / (2.0 * dy);
    let on_c1 = |th: f64| pt(q2.x + r * th.sin(), q2.y + 2.0 * r * (th / 2.0).sin().powi(2));
    let th1 = dx.atan2(r - dy);
    let th2 = -th1 * (2.0 - 1e-6);
    let tht = 2.0 * (depth / (2.0 * r)).sqrt().asin();
    let p2 = on_c1(th2);
    let mut pts = vec![s, p1, q1, q2, p2];
    for i in (1..=arc).rev() {
        pts.push(on_c1(tht + (th2 - tht) * i as f64 / (arc + 1) as f64));
    }
    let mut t = on_c1(tht);
    t.y = 0.0;
    pts.push(t);
    pts[3].y += depth / 2.0;
    let tid = pts.len() - 1;
    let tri = delaunay(&pts)?;
    if !tri.is_delaunay() {
        return Err(generator_error("Delaunay gadget fails the empty-circumdisc check"));
    }
    let g = Gadget::new(tri, &[("s", 0), ("p1", 1), ("q1", 2), ("q2", 3), ("p2", 4), ("t", tid)]);
    let path = route(&g.triangulation, 0, tid)?.path.vertices;
    let expected: Vec<usize> = [0, 1].into_iter().chain(4..=tid).collect();
    if path != expected {
        return Err(generator_error(format!("Delaunay gadget routes along {path:?}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::verify_x_increasing;

    #[test]
    fn random_is_deterministic_and_in_general_position() {
        let a = gen_random(40, 7);
        assert_eq!(a, gen_random(40, 7));
        assert_ne!(a, gen_random(40, 8));
        for (i, &p) in a.iter().enumerate() {
            let others: Vec<Point> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
            assert!(general_position_with(p, &others));
        }
        assert!(delaunay(&a).is_ok());
    }

    #[test]
    fn grid_cells_are_right_triangles() {
        let t = gen_grid_gabriel(2).unwrap();
        assert_eq!((t.n(), t.triangles().len()), (9, 8));
        assert!((t.max_angle() - FRAC_PI_2).abs() < 1e-12);
        assert!(gen_grid_gabriel(0).is_err());
    }

    #[test]
    fn ngon_distances_match_chords() {
        let n = 23;
        let g = gen_regular_ngon(n, 1).unwrap();
        assert_eq!(g.points.len(), n);
        for i in 0..n {
            for j in i + 1..n {
                let chord = 2.0 * (PI * (j - i) as f64 / n as f64).sin();
                assert!((g.points[i].dist(g.points[j]) - chord).abs() < 1e-12);
            }
        }
        assert!(gen_regular_ngon(4, 0).unwrap().warning.is_some());
        assert!(gen_regular_ngon(3, 0).unwrap().warning.is_none());
        assert!(gen_regular_ngon(2, 0).is_err());
    }

    #[test]
    fn gabriel_worstcase_approaches_bound_from_below() {
        let bound = 1.0 + SQRT_2;
        let mut last = 0.0;
        for eps in [0.09, 0.03, 0.01, 1e-3] {
            let g = gen_gabriel_worstcase(eps).unwrap();
            let tri = &g.triangulation;
            assert!(tri.is_gabriel());
            let r = route(tri, g.mark("s"), g.mark("t")).unwrap();
            assert!(verify_x_increasing(tri.graph(), &r.path, &r.frame));
            let ratio = routing_ratio(tri.graph(), &r.path).unwrap();
            assert!(ratio > last && ratio <= bound && ratio >= bound * (1.0 - eps), "{eps}: {ratio}");
            last = ratio;
        }
    }

    #[test]
    fn general_worstcase_within_bound() {
        for deg in [90.0f64, 100.0, 110.0, 118.0] {
            let alpha = deg.to_radians();
            let g = gen_general_worstcase(alpha, 1e-3).unwrap();
            let bound = routing_ratio_bound(alpha).unwrap();
            let ratio = g.route_ratio().unwrap();
            assert!(g.triangulation.max_angle() <= alpha + TAU_ANGLE);
            assert!(ratio <= bound && ratio >= bound * (1.0 - 1e-3), "{deg}: {ratio} vs {bound}");
        }
        assert!(gen_general_worstcase(80f64.to_radians(), 1e-3).is_err());
        assert!(gen_general_worstcase(120f64.to_radians(), 1e-3).is_err());
    }

    /// Thin-fan limit points: `q = (1, 1)`, `q' = (1, -1)`, the right angle at
    /// `B = (1 + √2/2, -√2/2)`, and `t = (2 + √2, 0)`.
    fn fan_limit() -> (f64, f64) {
        let h = SQRT_2 / 2.0;
        let (q, qp, b, t) = (pt(1.0, 1.0), pt(1.0, -1.0), pt(1.0 + h, -h), pt(2.0 + SQRT_2, 0.0));
        let s = pt(0.0, 0.0);
        let deceived = s.dist(q) + q.dist(b) + b.dist(t);
        (deceived / s.dist(t), deceived / (s.dist(qp) + qp.dist(b) + b.dist(t)))
    }

    #[test]
    fn fan_constants_match_limit_geometry() {
        let (deception, competitive) = fan_limit();
        for k in 1..=4 {
            let f = gen_fan_lowerbound(k).unwrap();
            assert!((f.deception_ratio() - deception).abs() < 1e-12, "{k}");
            assert!((f.competitive_constant() - competitive).abs() < 1e-12, "{k}");
            let g = &f.first;
            let (s, t) = (g.triangulation.points()[g.mark("s")], g.triangulation.points()[g.mark("t")]);
            let expected = 1.0 + 1.0 / 22.5f64.to_radians().tan() + f.fan_width;
            assert!((s.dist(t) - expected).abs() < 1e-12);
            assert!(f.mirrored.triangulation.is_gabriel());
        }
    }

    #[test]
    fn mirrored_fans_agree_on_the_fan() {
        let f = gen_fan_lowerbound(3).unwrap();
        let (a, b) = (f.first.triangulation.points(), f.mirrored.triangulation.points());
        for name in ["s", "q", "q'"] {
            assert_eq!(a[f.first.mark(name)], b[f.mirrored.mark(name)]);
        }
        assert_eq!(a[f.first.mark("B")].y, -b[f.mirrored.mark("B")].y);
    }

    #[test]
    fn no_self_approaching_census() {
        for k in 1..=3 {
            let g = gen_no_self_approaching(k).unwrap();
            assert_eq!(g.triangulation.n(), 3 * k + 5);
            let c = self_approaching_census(g.triangulation.graph(), g.mark("s"), g.mark("t"), g.mark("q")).unwrap();
            assert_eq!(c.0, 0);
            assert!(c.1 >= 1);
        }
        assert!(matches!(gen_no_self_approaching(4), Err(Error::SizeLimit { n: 17, max: 14 })));
    }

    #[test]
    fn delaunay_gadget_route_shape() {
        let g = gen_delaunay_lowerbound(0.02, 16).unwrap();
        let tri = &g.triangulation;
        assert!(tri.is_delaunay());
        assert_eq!(tri.n(), 16 + 6);
        let r = route(tri, g.mark("s"), g.mark("t")).unwrap();
        assert_eq!(&r.path.vertices[..3], &[g.mark("s"), g.mark("p1"), g.mark("p2")]);
        let ratio = routing_ratio(tri.graph(), &r.path).unwrap();
        assert!(ratio > 5.0 && ratio < 5.05, "{ratio}");
        assert!(gen_delaunay_lowerbound(0.0, 16).is_err());
        assert!(gen_delaunay_lowerbound(0.02, 0).is_err());
    }

    #[test]
    fn marks_json_sorted() {
        let g = gen_gabriel_worstcase(0.01).unwrap();
        let v: BTreeMap<String, usize> = serde_json::from_str(&g.marks_json()).unwrap();
        assert_eq!(v, g.marks);
        assert_eq!(v.keys().cloned().collect::<Vec<_>>(), ["a", "p", "q", "s", "t"]);
    }
}
