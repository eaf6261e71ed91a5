//! Triangulations: Delaunay construction, Gabriel tests, and the incident
//! triangle queries local routing needs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{diametral_dot_sign, incircle_sign, orient_sign};
use crate::geom::{Point, TAU_ANGLE};
use crate::graph::{check_points, GeometricGraph};
use crate::io::{format_graph, parse_graph_prefix, Lines};

/// Marks a triangle side on the convex hull.
pub const BOUNDARY: usize = usize::MAX;

/// A triangulation of a point set's convex hull.
///
/// `neighbors[t][k]` is the triangle across the side opposite corner `k` of
/// triangle `t`. Rings list each vertex's incident triangles in clockwise
/// order; for hull vertices the ring starts at the most counter-clockwise
/// triangle.
#[derive(Clone, Debug)]
pub struct Triangulation {
    graph: GeometricGraph,
    triangles: Vec<[usize; 3]>,
    neighbors: Vec<[usize; 3]>,
    rings: Vec<Vec<usize>>,
}

/// Result of [`Triangulation::rightmost_intersecting_triangle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightmostTriangle {
    pub triangle: usize,
    /// Corner on the current vertex's side of the line (above when on it).
    /// When the triangle touches the line only at a corner, that corner.
    pub a: usize,
    pub b: usize,
    /// Set when two triangles reached equally far and the tie rule decided.
    pub tie: bool,
}

impl Triangulation {
    /// Builds and validates a triangulation from explicit triangles.
    pub fn from_triangles(points: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        check_points(&points)?;
        let n = points.len();
        let mut owner: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= n) {
                return Err(Error::Invariant(format!("triangle {t} references a missing vertex")));
            }
            if orient_sign(points[tri[0]], points[tri[1]], points[tri[2]]) <= 0 {
                return Err(Error::Invariant(format!("triangle {t} {tri:?} is not counter-clockwise")));
            }
            for k in 0..3 {
                if owner.insert((tri[k], tri[(k + 1) % 3]), t).is_some() {
                    return Err(Error::Invariant(format!(
                        "directed edge ({}, {}) used twice",
                        tri[k],
                        tri[(k + 1) % 3]
                    )));
                }
            }
        }
        let mut used = vec![false; n];
        triangles.iter().flatten().for_each(|&v| used[v] = true);
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::Invariant(format!("vertex {v} is in no triangle")));
        }
        let mut hull_area2 = 0.0;
        for &(a, b) in owner.keys() {
            if owner.contains_key(&(b, a)) {
                continue;
            }
            if let Some(x) = (0..n).find(|&x| orient_sign(points[a], points[b], points[x]) < 0) {
                return Err(Error::Invariant(format!("boundary edge ({a}, {b}) has vertex {x} outside")));
            }
            hull_area2 += points[a].x * points[b].y - points[b].x * points[a].y;
        }
        let tri_area2: f64 = triangles
            .iter()
            .map(|t| {
                let (a, b, c) = (points[t[0]], points[t[1]], points[t[2]]);
                (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
            })
            .sum();
        if (tri_area2 - hull_area2).abs() > 1e-9 * hull_area2.abs().max(1e-300) {
            return Err(Error::Invariant("triangles do not tile the convex hull".into()));
        }
        let edges = owner.len() - owner.keys().filter(|&&(a, b)| owner.contains_key(&(b, a))).count() / 2;
        if n + triangles.len() != edges + 1 {
            return Err(Error::Invariant("triangles do not form a disc".into()));
        }
        Self::assemble(points, triangles, &owner)
    }

    fn assemble(
        points: Vec<Point>,
        triangles: Vec<[usize; 3]>,
        owner: &HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n = points.len();
        let neighbors: Vec<[usize; 3]> = triangles
            .iter()
            .map(|t| {
                std::array::from_fn(|k| {
                    let (u, v) = (t[(k + 1) % 3], t[(k + 2) % 3]);
                    owner.get(&(v, u)).copied().unwrap_or(BOUNDARY)
                })
            })
            .collect();
        let mut incident = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(owner.len());
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                incident[tri[k]].push(t);
                let (u, v) = (tri[k], tri[(k + 1) % 3]);
                if u < v || !owner.contains_key(&(v, u)) {
                    edges.push((u, v));
                }
            }
        }
        let graph = GeometricGraph::new(points, &edges)?;
        let corner = |t: usize, v: usize| triangles[t].iter().position(|&w| w == v).expect("incident");
        let mut rings = Vec::with_capacity(n);
        for (v, inc) in incident.iter().enumerate() {
            // Most counter-clockwise triangle: nothing across its side (v, b).
            let start = inc
                .iter()
                .copied()
                .find(|&t| neighbors[t][(corner(t, v) + 1) % 3] == BOUNDARY)
                .unwrap_or_else(|| *inc.iter().min().expect("every vertex is used"));
            let mut ring = vec![start];
            let mut t = start;
            loop {
                let next = neighbors[t][(corner(t, v) + 2) % 3];
                if next == BOUNDARY || next == start {
                    break;
                }
                ring.push(next);
                t = next;
                if ring.len() > inc.len() {
                    return Err(Error::Invariant(format!("ring of vertex {v} does not close")));
                }
            }
            if ring.len() != inc.len() {
                return Err(Error::Invariant(format!("triangles around vertex {v} are not a single fan")));
            }
            rings.push(ring);
        }
        Ok(Triangulation { graph, triangles, neighbors, rings })
    }

    pub fn graph(&self) -> &GeometricGraph {
        &self.graph
    }

    pub fn points(&self) -> &[Point] {
        self.graph.points()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn neighbors(&self, t: usize) -> [usize; 3] {
        self.neighbors[t]
    }

    /// Incident triangles of `v` in clockwise order.
    pub fn ring(&self, v: usize) -> &[usize] {
        &self.rings[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Largest interior angle over all triangles, in radians.
    pub fn max_angle(&self) -> f64 {
        self.triangles.iter().flat_map(|t| triangle_angles(self.points(), *t)).fold(0.0, f64::max)
    }

    /// Gabriel iff no triangle is obtuse.
    pub fn is_gabriel(&self) -> bool {
        self.max_angle() <= std::f64::consts::FRAC_PI_2 + TAU_ANGLE
    }

    /// Whether no vertex lies strictly inside any triangle's circumcircle,
    /// by brute force over all triangle-vertex pairs.
    pub fn is_delaunay(&self) -> bool {
        let pts = self.points();
        self.triangles.iter().all(|&[a, b, c]| {
            (0..pts.len()).all(|v| v == a || v == b || v == c || incircle_sign(pts[a], pts[b], pts[c], pts[v]) <= 0)
        })
    }

    /// Among triangles incident to `p` whose closed region meets the closed
    /// segment `s dst` in more than the point `p`, the one whose intersection
    /// reaches farthest toward `dst`.
    pub fn rightmost_intersecting_triangle(&self, p: usize, s: usize, dst: usize) -> Result<RightmostTriangle> {
        let pts = self.points();
        let (ps, pd) = (pts[s], pts[dst]);
        let side = |v: usize| orient_sign(ps, pd, pts[v]);
        let sp = side(p);
        let (dx, dy) = (pd.x - ps.x, pd.y - ps.y);
        let along = |v: usize| ((pts[v].x - ps.x) * dx + (pts[v].y - ps.y) * dy) / (dx * dx + dy * dy);
        let mut best: Option<(f64, usize, bool)> = None;
        let mut tie = false;
        for &t in self.ring(p) {
            let tri = self.triangles[t];
            let k = tri.iter().position(|&w| w == p).expect("incident");
            let (x, y) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
            let (sx, sy) = (side(x), side(y));
            if sp == 0 && sx == sy && sx != 0 {
                continue;
            }
            let Some((lo, hi)) = clip_segment(pts, tri, ps, pd) else {
                continue;
            };
            if sp == 0 {
                let lp = along(p);
                if hi <= lp + 1e-12 && lo >= lp - 1e-12 {
                    continue;
                }
            }
            let above = sx > 0 || sy > 0 || sp > 0;
            match best {
                None => best = Some((hi, t, above)),
                Some((bh, _, babove)) => {
                    if (hi - bh).abs() <= 1e-12 {
                        tie = true;
                        if above && !babove {
                            best = Some((hi, t, above));
                        }
                    } else if hi > bh {
                        best = Some((hi, t, above));
                        tie = false;
                    }
                }
            }
        }
        let (_, t, _) =
            best.ok_or_else(|| Error::Invariant(format!("no triangle at vertex {p} meets segment ({s}, {dst})")))?;
        let tri = self.triangles[t];
        let k = tri.iter().position(|&w| w == p).expect("incident");
        let (x, y) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
        let sigma = if sp == 0 { 1 } else { sp };
        let (a, b) = match (side(x), side(y)) {
            (0, sy) if sp != 0 && sy == sigma => (x, y),
            (sx, 0) if sp != 0 && sx == sigma => (y, x),
            (sx, _) if sx == sigma => (x, y),
            (_, sy) if sy == sigma => (y, x),
            (0, 0) => {
                if along(x) >= along(y) {
                    (x, y)
                } else {
                    (y, x)
                }
            }
            (0, _) => (x, y),
            (_, 0) => (y, x),
            _ => (x, y),
        };
        Ok(RightmostTriangle { triangle: t, a, b, tie })
    }
}

/// Parameter range `[lo, hi]` of the closed segment `s d` inside the closed
/// counter-clockwise triangle, or `None` when they are disjoint. Endpoint
/// signs are exact; crossing parameters are floating point.
fn clip_segment(pts: &[Point], tri: [usize; 3], s: Point, d: Point) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for k in 0..3 {
        let (u, v) = (pts[tri[k]], pts[tri[(k + 1) % 3]]);
        let (ss, sd) = (orient_sign(u, v, s), orient_sign(u, v, d));
        let f = |q: Point| (v.x - u.x) * (q.y - u.y) - (v.y - u.y) * (q.x - u.x);
        let cross = || {
            let (fs, fd) = (f(s), f(d));
            if fs == fd {
                0.0
            } else {
                (fs / (fs - fd)).clamp(0.0, 1.0)
            }
        };
        match (ss >= 0, sd >= 0) {
            (true, true) => {}
            (false, false) => return None,
            (true, false) => hi = hi.min(if ss == 0 { 0.0 } else { cross() }),
            (false, true) => lo = lo.max(if sd == 0 { 1.0 } else { cross() }),
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn triangle_angles(pts: &[Point], t: [usize; 3]) -> [f64; 3] {
    std::array::from_fn(|k| {
        let o = pts[t[k]];
        let (ux, uy) = pts[t[(k + 1) % 3]].sub(o);
        let (vx, vy) = pts[t[(k + 2) % 3]].sub(o);
        (ux * vy - uy * vx).abs().atan2(ux * vx + uy * vy)
    })
}

/// Delaunay triangulation by lexicographic sweep with Lawson flips.
///
/// Fails on fewer than three points, all-collinear input, and on any four
/// cocircular points that make the triangulation ambiguous.
pub fn delaunay(points: &[Point]) -> Result<Triangulation> {
    check_points(points)?;
    let n = points.len();
    if n < 3 {
        return Err(Error::Degenerate(format!("need at least 3 points, got {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)));
    let p = |i: usize| points[i];
    let k = (2..n).find(|&k| orient_sign(p(order[0]), p(order[1]), p(order[k])) != 0).ok_or(Error::Collinear)?;

    let mut tris: Vec<[usize; 3]> = Vec::with_capacity(2 * n);
    let mut owner: HashMap<(usize, usize), usize> = HashMap::with_capacity(6 * n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let add = |tris: &mut Vec<[usize; 3]>, owner: &mut HashMap<(usize, usize), usize>, t: [usize; 3]| {
        let id = tris.len();
        tris.push(t);
        for j in 0..3 {
            owner.insert((t[j], t[(j + 1) % 3]), id);
        }
    };

    let apex = order[k];
    let up = orient_sign(p(order[0]), p(order[1]), p(apex)) > 0;
    for i in 0..k - 1 {
        let (a, b) = (order[i], order[i + 1]);
        add(&mut tris, &mut owner, if up { [a, b, apex] } else { [b, a, apex] });
    }
    let mut hull: Vec<usize> = if up {
        order[..k].iter().copied().chain([apex]).collect()
    } else {
        [order[0], apex].into_iter().chain(order[1..k].iter().rev().copied()).collect()
    };

    for &q in &order[k + 1..] {
        let h = hull.len();
        let vis: Vec<bool> = (0..h).map(|i| orient_sign(p(hull[i]), p(hull[(i + 1) % h]), p(q)) < 0).collect();
        let first = (0..h)
            .find(|&i| vis[i] && !vis[(i + h - 1) % h])
            .ok_or_else(|| Error::Invariant("sweep point sees no hull edge".into()))?;
        let mut last = first;
        while vis[(last + 1) % h] {
            last = (last + 1) % h;
        }
        let mut i = first;
        loop {
            let (a, b) = (hull[i], hull[(i + 1) % h]);
            add(&mut tris, &mut owner, [b, a, q]);
            stack.extend([(a, b), (b, q), (q, a)]);
            if i == last {
                break;
            }
            i = (i + 1) % h;
        }
        // Replace hull[first+1 ..= last] by q.
        let count = (last + h - first) % h;
        let mut next = Vec::with_capacity(h + 1 - count);
        let mut j = (last + 1) % h;
        loop {
            next.push(hull[j]);
            if j == first {
                break;
            }
            j = (j + 1) % h;
        }
        next.push(q);
        hull = next;
        legalize(points, &mut tris, &mut owner, &mut stack);
    }

    for tri in &tris {
        for j in 0..3 {
            let (u, v) = (tri[j], tri[(j + 1) % 3]);
            if u > v {
                continue;
            }
            if let Some(&o) = owner.get(&(v, u)) {
                let d = apex_of(&tris[o], v, u);
                if incircle_sign(p(tri[0]), p(tri[1]), p(tri[2]), p(d)) == 0 {
                    let mut ids = [tri[0], tri[1], tri[2], d];
                    ids.sort_unstable();
                    return Err(Error::Cocircular(ids));
                }
            }
        }
    }
    Triangulation::assemble(points.to_vec(), tris, &owner)
}

/// Vertex of `tri` opposite its directed edge `(u, v)`.
fn apex_of(tri: &[usize; 3], u: usize, v: usize) -> usize {
    *tri.iter().find(|&&w| w != u && w != v).expect("triangle has three corners")
}

fn legalize(
    points: &[Point],
    tris: &mut [[usize; 3]],
    owner: &mut HashMap<(usize, usize), usize>,
    stack: &mut Vec<(usize, usize)>,
) {
    while let Some((u, v)) = stack.pop() {
        let (Some(&t1), Some(&t2)) = (owner.get(&(u, v)), owner.get(&(v, u))) else {
            continue;
        };
        let c = apex_of(&tris[t1], u, v);
        let d = apex_of(&tris[t2], v, u);
        if incircle_sign(points[u], points[v], points[c], points[d]) <= 0 {
            continue;
        }
        owner.remove(&(u, v));
        owner.remove(&(v, u));
        tris[t1] = [u, d, c];
        tris[t2] = [d, v, c];
        for (t, tri) in [(t1, tris[t1]), (t2, tris[t2])] {
            for j in 0..3 {
                owner.insert((tri[j], tri[(j + 1) % 3]), t);
            }
        }
        stack.extend([(u, d), (d, v), (v, c), (c, u)]);
    }
}

/// Gabriel graph: `uv` is an edge iff no other point lies strictly inside
/// the disc with diameter `uv`.
pub fn gabriel_graph(points: &[Point]) -> Result<GeometricGraph> {
    check_points(points)?;
    let edges = match delaunay(points) {
        // Gabriel edges are Delaunay edges, and a Delaunay edge's disc is
        // empty iff the opposite corners of its two triangles lie outside it.
        Ok(t) => {
            let mut blocked = std::collections::HashSet::new();
            for tri in t.triangles() {
                for k in 0..3 {
                    let (i, j) = (tri[(k + 1) % 3], tri[(k + 2) % 3]);
                    if diametral_dot_sign(points[i], points[j], points[tri[k]]) < 0 {
                        blocked.insert((i.min(j), i.max(j)));
                    }
                }
            }
            t.graph().edges().into_iter().filter(|e| !blocked.contains(e)).collect()
        }
        Err(_) => gabriel_brute_force(points),
    };
    GeometricGraph::new(points.to_vec(), &edges)
}

fn gabriel_brute_force(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (0..n).all(|k| k == i || k == j || diametral_dot_sign(points[i], points[j], points[k]) >= 0) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn format_triangulation(t: &Triangulation) -> String {
    let mut out = format_graph(t.graph());
    writeln!(out, "triangles {}", t.triangles.len()).unwrap();
    for [a, b, c] in &t.triangles {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation> {
    let mut lines = Lines::new(text);
    let g = parse_graph_prefix(&mut lines)?;
    let k = lines.header("triangles")?;
    let mut tris = Vec::with_capacity(k);
    for _ in 0..k {
        let (_, v) = lines.fields::<usize>(3)?;
        tris.push([v[0], v[1], v[2]]);
    }
    let end = lines.line_no();
    lines.finish()?;
    let t = Triangulation::from_triangles(g.points().to_vec(), tris)
        .map_err(|e| Error::Parse { line: end, msg: e.to_string() })?;
    if t.graph().edges() != g.edges() {
        return Err(Error::Parse { line: end, msg: "edge list does not match the triangles".into() });
    }
    Ok(t)
}

pub fn load_triangulation(path: impl AsRef<Path>) -> Result<Triangulation> {
    parse_triangulation(&fs::read_to_string(path)?)
}

pub fn save_triangulation(path: impl AsRef<Path>, t: &Triangulation) -> Result<()> {
    Ok(fs::write(path, format_triangulation(t))?)
}
