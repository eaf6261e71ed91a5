//! Filtered exact sign predicates.
//!
//! Every predicate first evaluates its polynomial in `f64` together with a
//! forward error bound. When the bound cannot certify the sign the same
//! polynomial is re-evaluated over arbitrary-precision rationals, which is
//! exact because every finite `f64` is a dyadic rational.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geom::Point;

// Relative error bounds for the float stage. Looser than the tight
// Shewchuk constants; the exact stage absorbs the slack.
const ORIENT_BOUND: f64 = 1e-15;
const DOT_BOUND: f64 = 1e-15;
const INCIRCLE_BOUND: f64 = 1e-14;
const SQRT3_BOUND: f64 = 1e-14;

pub(crate) fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn filtered(value: f64, bound: f64) -> Option<i8> {
    if value > bound {
        Some(1)
    } else if value < -bound {
        Some(-1)
    } else {
        None
    }
}

/// Sign of the doubled signed area of `abc`: positive when counter-clockwise.
pub fn orient_sign(a: Point, b: Point, c: Point) -> i8 {
    let l = (b.x - a.x) * (c.y - a.y);
    let r = (b.y - a.y) * (c.x - a.x);
    if let Some(s) = filtered(l - r, ORIENT_BOUND * (l.abs() + r.abs())) {
        return s;
    }
    let (ax, ay) = (rat(a.x), rat(a.y));
    let det = (rat(b.x) - &ax) * (rat(c.y) - &ay) - (rat(b.y) - &ay) * (rat(c.x) - &ax);
    sign_of(&det)
}

/// Sign of `(u - p) . (v - p)`; negative iff `p` is strictly inside the disc
/// with diameter `uv`.
pub fn diametral_dot_sign(u: Point, v: Point, p: Point) -> i8 {
    let l = (u.x - p.x) * (v.x - p.x);
    let r = (u.y - p.y) * (v.y - p.y);
    if let Some(s) = filtered(l + r, DOT_BOUND * (l.abs() + r.abs())) {
        return s;
    }
    let (px, py) = (rat(p.x), rat(p.y));
    let dot = (rat(u.x) - &px) * (rat(v.x) - &px) + (rat(u.y) - &py) * (rat(v.y) - &py);
    sign_of(&dot)
}

/// Positive iff `d` lies strictly inside the circumcircle of the
/// counter-clockwise triangle `abc`.
pub fn incircle_sign(a: Point, b: Point, c: Point, d: Point) -> i8 {
    let (adx, ady) = (a.x - d.x, a.y - d.y);
    let (bdx, bdy) = (b.x - d.x, b.y - d.y);
    let (cdx, cdy) = (c.x - d.x, c.y - d.y);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    let bc = bdx * cdy - cdx * bdy;
    let ca = cdx * ady - adx * cdy;
    let ab = adx * bdy - bdx * ady;
    let det = alift * bc + blift * ca + clift * ab;
    let permanent = alift * ((bdx * cdy).abs() + (cdx * bdy).abs())
        + blift * ((cdx * ady).abs() + (adx * cdy).abs())
        + clift * ((adx * bdy).abs() + (bdx * ady).abs());
    if let Some(s) = filtered(det, INCIRCLE_BOUND * permanent) {
        return s;
    }
    let (dx, dy) = (rat(d.x), rat(d.y));
    let (adx, ady) = (rat(a.x) - &dx, rat(a.y) - &dy);
    let (bdx, bdy) = (rat(b.x) - &dx, rat(b.y) - &dy);
    let (cdx, cdy) = (rat(c.x) - &dx, rat(c.y) - &dy);
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det =
        alift * (&bdx * &cdy - &cdx * &bdy) + blift * (&cdx * &ady - &adx * &cdy) + clift * (&adx * &bdy - &bdx * &ady);
    sign_of(&det)
}

/// Exact sign of `a + b * sqrt(3)` for rationals `a`, `b`.
pub(crate) fn sign_a_plus_b_sqrt3(a: &BigRational, b: &BigRational) -> i8 {
    let (sa, sb) = (sign_of(a), sign_of(b));
    if sa == 0 {
        return sb;
    }
    if sb == 0 || sa == sb {
        return sa;
    }
    // Opposite signs: compare a^2 with 3 b^2.
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(BigInt::from(3));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Sign of `x_coef * dx + y_coef * dy` where each coefficient is
/// `p + q * sqrt(3)` with small integer `p`, `q`, and `dx = b.x - a.x`,
/// `dy = b.y - a.y`.
pub(crate) fn sign_linear_sqrt3(a: Point, b: Point, x_coef: (i32, i32), y_coef: (i32, i32)) -> i8 {
    let s3 = 3f64.sqrt();
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let cx = f64::from(x_coef.0) + f64::from(x_coef.1) * s3;
    let cy = f64::from(y_coef.0) + f64::from(y_coef.1) * s3;
    let v = cx * dx + cy * dy;
    let mag = cx.abs() * dx.abs() + cy.abs() * dy.abs();
    if let Some(s) = filtered(v, SQRT3_BOUND * mag) {
        return s;
    }
    let dx = rat(b.x) - rat(a.x);
    let dy = rat(b.y) - rat(a.y);
    let int = |k: i32| BigRational::from_integer(BigInt::from(k));
    let rational = &dx * int(x_coef.0) + &dy * int(y_coef.0);
    let irrational = &dx * int(x_coef.1) + &dy * int(y_coef.1);
    sign_a_plus_b_sqrt3(&rational, &irrational)
}
