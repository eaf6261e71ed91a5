//! Planar primitives: points, angles modulo a full turn, wedges, and the
//! sign predicates everything else is built on.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;

/// Closed-comparison slack for every angle and width test, in radians.
pub const TAU_ANGLE: f64 = 1e-9;
/// Absolute slack for length and containment comparisons, in input units.
pub const TAU_LEN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Degenerate(format!("non-finite coordinate ({x}, {y})")));
        }
        Ok(Point { x, y })
    }

    pub fn dist(self, other: Point) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    pub(crate) fn sub(self, other: Point) -> (f64, f64) {
        (self.x - other.x, self.y - other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An angle normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        let mut v = radians.rem_euclid(TAU);
        if v >= TAU {
            v = 0.0;
        }
        Angle(v)
    }

    pub fn from_degrees(deg: f64) -> Self {
        Angle::new(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn opposite(self) -> Angle {
        Angle::new(self.0 + PI)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Cw,
    Collinear,
    Ccw,
}

/// Exact orientation of the triple `abc`.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    match exact::orient_sign(a, b, c) {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

/// Whether `p` lies in the disc with diameter `uv`, open or closed.
pub fn in_diametral_disc(u: Point, v: Point, p: Point, closed: bool) -> Result<bool> {
    if u == v {
        return Err(Error::Degenerate(format!("diametral disc of coincident points {u}")));
    }
    let s = exact::diametral_dot_sign(u, v, p);
    Ok(if closed { s <= 0 } else { s < 0 })
}

/// Direction of `v - u`, counter-clockwise from the positive x-axis.
pub fn edge_angle(u: Point, v: Point) -> Result<Angle> {
    if u == v {
        return Err(Error::Degenerate(format!("edge angle of coincident points {u}")));
    }
    Ok(Angle::new((v.y - u.y).atan2(v.x - u.x)))
}

/// Counter-clockwise distance from `a` to `b`, in `[0, 2π)`.
pub fn ccw_span(a: Angle, b: Angle) -> f64 {
    Angle::new(b.0 - a.0).0
}

/// A set of directions spanning less than a half turn, given by its most
/// clockwise (`min`) and most counter-clockwise (`max`) member.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wedge {
    pub min: Angle,
    pub max: Angle,
}

impl Wedge {
    pub fn point(a: Angle) -> Self {
        Wedge { min: a, max: a }
    }

    pub fn span(&self) -> f64 {
        ccw_span(self.min, self.max)
    }

    /// Whether `a` lies in the closed wedge (with angular slack).
    pub fn contains_angle(&self, a: Angle) -> bool {
        let off = ccw_span(self.min, a);
        off <= self.span() + TAU_ANGLE || off >= TAU - TAU_ANGLE
    }

    /// Whether `other` is a sub-wedge of `self`.
    pub fn contains(&self, other: &Wedge) -> bool {
        let lo = ccw_span(self.min, other.min);
        let lo = if lo >= TAU - TAU_ANGLE { 0.0 } else { lo };
        lo + other.span() <= self.span() + TAU_ANGLE
    }
}

/// Adds direction `a` to wedge `w`; `None` when the result would be wider
/// than `gamma` (closed comparison).
pub fn wedge_extend(w: Wedge, a: Angle, gamma: f64) -> Option<Wedge> {
    let span = w.span();
    let off = ccw_span(w.min, a);
    if off <= span {
        return Some(w);
    }
    // `a` lies outside: either it becomes the new minimum or the new maximum,
    // whichever keeps the wedge narrower.
    let as_min = ccw_span(a, w.max);
    let as_max = off;
    let (cand, width) =
        if as_min <= as_max { (Wedge { min: a, max: w.max }, as_min) } else { (Wedge { min: w.min, max: a }, as_max) };
    (width <= gamma + TAU_ANGLE).then_some(cand)
}

/// Smallest closed wedge containing every angle: returns its bisector and
/// width. Computed as a full turn minus the largest circular gap.
pub fn min_enclosing_wedge(angles: &[Angle]) -> Result<(Angle, f64)> {
    if angles.is_empty() {
        return Err(Error::Parameter("enclosing wedge of an empty angle set".into()));
    }
    let mut sorted: Vec<f64> = angles.iter().map(|a| a.0).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    // Gap following sorted[i], wrapping around.
    let mut best_gap = -1.0;
    let mut start = 0;
    for i in 0..n {
        let gap = if i + 1 < n { sorted[i + 1] - sorted[i] } else { sorted[0] + TAU - sorted[i] };
        if gap > best_gap {
            best_gap = gap;
            start = (i + 1) % n;
        }
    }
    let width = (TAU - best_gap).max(0.0);
    Ok((Angle::new(sorted[start] + width / 2.0), width))
}
