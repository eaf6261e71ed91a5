use amono::generators::gen_random;
use amono::geom::{Point, TAU_ANGLE, TAU_LEN};
use amono::graph::{path_length, path_width};
use amono::half_theta6::{build_half_theta6, format_half_theta6, parse_half_theta6, HalfTheta6};
use amono::metrics::shortest_paths;

/// Exact-enough orientation for well-separated random points.
fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0.0 && orient(c, d, a) * orient(c, d, b) < 0.0
}

fn instances() -> Vec<HalfTheta6> {
    (0..12).map(|s| build_half_theta6(&gen_random(20 + 7 * s as usize, 100 + s)).unwrap()).collect()
}

#[test]
fn plane_and_sparse() {
    for h in instances() {
        let g = h.graph();
        let e = g.edges();
        assert!(e.len() <= 3 * g.n());
        for (i, &(a, b)) in e.iter().enumerate() {
            for &(c, d) in &e[i + 1..] {
                let (pa, pb, pc, pd) = (g.point(a), g.point(b), g.point(c), g.point(d));
                assert!(!properly_cross(pa, pb, pc, pd), "edges ({a},{b}) and ({c},{d}) cross");
            }
        }
    }
}

/// Nearest point along the bisector of each even cone, by brute force with
/// floating-point angles.
#[test]
fn cone_neighbours_match_brute_force() {
    for h in instances() {
        let g = h.graph();
        for u in 0..g.n() {
            for (cone, bisector) in [(0, 90.0f64), (2, 330.0), (4, 210.0)] {
                let b = bisector.to_radians();
                let expect = (0..g.n())
                    .filter(|&v| v != u)
                    .filter(|&v| {
                        let (dx, dy) = (g.point(v).x - g.point(u).x, g.point(v).y - g.point(u).y);
                        let off = (dy.atan2(dx) - b + 3.0 * std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                            - std::f64::consts::PI;
                        off.abs() < std::f64::consts::FRAC_PI_6
                    })
                    .min_by(|&v, &w| {
                        let proj = |x: usize| {
                            (g.point(x).x - g.point(u).x) * b.cos() + (g.point(x).y - g.point(u).y) * b.sin()
                        };
                        proj(v).total_cmp(&proj(w)).then(v.cmp(&w))
                    });
                assert_eq!(h.cone_neighbor(u, cone), expect, "vertex {u} cone {cone}");
            }
        }
    }
}

#[test]
fn width_120_paths_for_all_pairs() {
    for h in instances() {
        let g = h.graph();
        for u in 0..g.n() {
            let dist = shortest_paths(g, u);
            for (v, &dv) in dist.iter().enumerate() {
                if u == v {
                    continue;
                }
                let path = h.angle_monotone_path_120(u, v).unwrap();
                path.validate(g).unwrap();
                assert_eq!((path.source(), path.target()), (u, v));
                let (_, width) = path_width(g, &path).unwrap();
                assert!(width <= 2.0 * std::f64::consts::FRAC_PI_3 + TAU_ANGLE, "{u} -> {v}: {width}");
                let len = path_length(g, &path).unwrap();
                assert!(len <= 2.0 * g.length(u, v) + TAU_LEN, "{u} -> {v}");
                assert!(dv <= len + TAU_LEN);
                let back = h.angle_monotone_path_120(v, u).unwrap();
                let (_, bw) = path_width(g, &back).unwrap();
                assert!(bw <= 2.0 * std::f64::consts::FRAC_PI_3 + TAU_ANGLE);
            }
        }
    }
}

#[test]
fn format_parse_identity() {
    for h in instances() {
        let text = format_half_theta6(&h);
        let back = parse_half_theta6(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(format_half_theta6(&back), text);
    }
}
