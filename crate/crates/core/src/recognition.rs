//! Deciding whether a geometric graph is angle-monotone.
//!
//! From each source `s` every vertex collects wedge pairs: the extreme edge
//! directions of some angle-monotone path from `s`. A pair whose wedge
//! contains another stored pair's wedge at the same vertex is dropped, since
//! any continuation of the wider pair also continues the narrower one.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geom::{edge_angle, min_enclosing_wedge, wedge_extend, Angle, Wedge, TAU_ANGLE};
use crate::graph::{GeometricGraph, PathTrace};

/// Largest graph the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug)]
struct Node {
    vertex: usize,
    wedge: Wedge,
    /// Node at the previous vertex; `None` for an edge leaving the source.
    pred: Option<usize>,
}

/// Stored wedge pairs of one exploration, with predecessor links.
#[derive(Clone, Debug)]
pub struct WedgePairTable {
    source: usize,
    gamma: f64,
    prune: bool,
    nodes: Vec<Node>,
    live: Vec<Vec<usize>>,
}

impl WedgePairTable {
    fn new(n: usize, source: usize, gamma: f64, prune: bool) -> Self {
        WedgePairTable { source, gamma, prune, nodes: Vec::new(), live: vec![Vec::new(); n] }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Stored `(min, max)` pairs at `v`.
    pub fn pairs(&self, v: usize) -> Vec<Wedge> {
        self.live[v].iter().map(|&id| self.nodes[id].wedge).collect()
    }

    pub fn pair_count(&self, v: usize) -> usize {
        self.live[v].len()
    }

    pub fn reached(&self, v: usize) -> bool {
        v == self.source || !self.live[v].is_empty()
    }

    /// Adds a pair at `v` unless a stored pair makes it redundant; returns
    /// whether the table changed.
    fn insert(&mut self, v: usize, wedge: Wedge, pred: Option<usize>) -> bool {
        let nodes = &self.nodes;
        let slot = &mut self.live[v];
        if self.prune {
            if slot.iter().any(|&id| wedge.contains(&nodes[id].wedge)) {
                return false;
            }
            slot.retain(|&id| !nodes[id].wedge.contains(&wedge));
        } else if slot.iter().any(|&id| nodes[id].wedge == wedge) {
            return false;
        }
        let id = self.nodes.len();
        self.nodes.push(Node { vertex: v, wedge, pred });
        self.live[v].push(id);
        true
    }

    fn path_of(&self, id: usize) -> PathTrace {
        let mut vertices = Vec::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            vertices.push(self.nodes[c].vertex);
            cur = self.nodes[c].pred;
        }
        vertices.push(self.source);
        vertices.reverse();
        PathTrace::new(vertices)
    }
}

/// Edge directions, indexed like the adjacency lists.
fn edge_angles(g: &GeometricGraph) -> Result<Vec<Vec<Angle>>> {
    (0..g.n()).map(|u| g.neighbors(u).iter().map(|&w| edge_angle(g.point(u), g.point(w))).collect()).collect()
}

fn seed(g: &GeometricGraph, angles: &[Vec<Angle>], table: &mut WedgePairTable) {
    let s = table.source;
    for (k, &u) in g.neighbors(s).iter().enumerate() {
        table.insert(u, Wedge::point(angles[s][k]), None);
    }
}

/// Width-90° exploration from `s`, visiting vertices in order of distance
/// from `s` (ties by id) and extending only toward unexplored vertices.
pub fn explore_from_source(g: &GeometricGraph, s: usize) -> Result<WedgePairTable> {
    explore_from_source_with(g, s, true)
}

/// [`explore_from_source`] with domination pruning switchable.
pub fn explore_from_source_with(g: &GeometricGraph, s: usize, prune: bool) -> Result<WedgePairTable> {
    let angles = edge_angles(g)?;
    Ok(explore_distance_order(g, &angles, s, prune))
}

fn explore_distance_order(g: &GeometricGraph, angles: &[Vec<Angle>], s: usize, prune: bool) -> WedgePairTable {
    let n = g.n();
    let mut table = WedgePairTable::new(n, s, FRAC_PI_2, prune);
    seed(g, angles, &mut table);
    let origin = g.point(s);
    let dist: Vec<f64> = g.points().iter().map(|p| origin.dist(*p)).collect();
    let mut order: Vec<usize> = (0..n).filter(|&v| v != s).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    let mut explored = vec![false; n];
    explored[s] = true;
    for u in order {
        explored[u] = true;
        let here: Vec<usize> = table.live[u].clone();
        for (k, &w) in g.neighbors(u).iter().enumerate() {
            if explored[w] {
                continue;
            }
            for &id in &here {
                if let Some(ext) = wedge_extend(table.nodes[id].wedge, angles[u][k], FRAC_PI_2) {
                    table.insert(w, ext, Some(id));
                }
            }
        }
    }
    table
}

/// Width-`gamma` exploration in phases: phase `i` extends every pair stored
/// after phase `i - 1` across every directed edge. Stops at the first phase
/// that changes nothing, after at most `n - 1` phases.
pub fn explore_phases(g: &GeometricGraph, s: usize, gamma: f64, prune: bool) -> Result<WedgePairTable> {
    check_gamma(gamma)?;
    let angles = edge_angles(g)?;
    Ok(explore_phases_inner(g, &angles, s, gamma, prune))
}

fn explore_phases_inner(
    g: &GeometricGraph,
    angles: &[Vec<Angle>],
    s: usize,
    gamma: f64,
    prune: bool,
) -> WedgePairTable {
    let n = g.n();
    let mut table = WedgePairTable::new(n, s, gamma, prune);
    seed(g, angles, &mut table);
    let mut fresh: Vec<Vec<usize>> = table.live.clone();
    for _ in 1..n.max(1) {
        let mut changed = false;
        let snapshot = fresh;
        fresh = vec![Vec::new(); n];
        for u in 0..n {
            // Pairs already pruned away since the snapshot need no extension.
            let here: Vec<usize> = snapshot[u].iter().copied().filter(|id| table.live[u].contains(id)).collect();
            for (k, &w) in g.neighbors(u).iter().enumerate() {
                if w == s {
                    continue;
                }
                for &id in &here {
                    if let Some(ext) = wedge_extend(table.nodes[id].wedge, angles[u][k], gamma) {
                        if table.insert(w, ext, Some(id)) {
                            fresh[w].push(table.nodes.len() - 1);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    table
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < PI) {
        return Err(Error::Parameter(format!("width {gamma} rad outside (0, π)")));
    }
    Ok(())
}

/// Outcome of a recognition run. On failure `witness` is the
/// lexicographically smallest ordered pair `(s, v)` with no path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

fn decide(g: &GeometricGraph, mut explore: impl FnMut(usize) -> WedgePairTable) -> Decision {
    for s in 0..g.n() {
        let table = explore(s);
        if let Some(v) = (0..g.n()).find(|&v| !table.reached(v)) {
            return Decision { holds: false, witness: Some((s, v)) };
        }
    }
    Decision { holds: true, witness: None }
}

/// Whether every ordered pair is joined by a path of width at most 90°.
pub fn is_angle_monotone(g: &GeometricGraph) -> Result<Decision> {
    is_angle_monotone_with(g, true)
}

pub fn is_angle_monotone_with(g: &GeometricGraph, prune: bool) -> Result<Decision> {
    let angles = edge_angles(g)?;
    Ok(decide(g, |s| explore_distance_order(g, &angles, s, prune)))
}

/// Whether every ordered pair is joined by a path of width at most `gamma`.
pub fn is_angle_monotone_width(g: &GeometricGraph, gamma: f64) -> Result<Decision> {
    is_angle_monotone_width_with(g, gamma, true)
}

pub fn is_angle_monotone_width_with(g: &GeometricGraph, gamma: f64, prune: bool) -> Result<Decision> {
    check_gamma(gamma)?;
    let angles = edge_angles(g)?;
    Ok(decide(g, |s| explore_phases_inner(g, &angles, s, gamma, prune)))
}

/// A path realizing one of the pairs stored at `v`.
pub fn certificate_path(table: &WedgePairTable, v: usize) -> Result<PathTrace> {
    if v == table.source {
        return Ok(PathTrace::single(v));
    }
    let id = *table.live.get(v).and_then(|l| l.first()).ok_or(Error::NoCertificate(v))?;
    Ok(table.path_of(id))
}

/// Exhaustive check over simple paths, pruned once a partial path is wider
/// than `gamma`. Limited to small graphs.
pub fn brute_force_width(g: &GeometricGraph, gamma: f64) -> Result<bool> {
    if g.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::SizeLimit { n: g.n(), max: BRUTE_FORCE_MAX_N });
    }
    check_gamma(gamma)?;
    let angles = edge_angles(g)?;
    for s in 0..g.n() {
        let mut reached = vec![false; g.n()];
        reached[s] = true;
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        let mut dirs = Vec::new();
        dfs(g, &angles, s, gamma, &mut on_path, &mut dirs, &mut reached)?;
        if reached.iter().any(|r| !r) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dfs(
    g: &GeometricGraph,
    angles: &[Vec<Angle>],
    u: usize,
    gamma: f64,
    on_path: &mut [bool],
    dirs: &mut Vec<Angle>,
    reached: &mut [bool],
) -> Result<()> {
    for (k, &w) in g.neighbors(u).iter().enumerate() {
        if on_path[w] {
            continue;
        }
        dirs.push(angles[u][k]);
        if min_enclosing_wedge(dirs)?.1 <= gamma + TAU_ANGLE {
            reached[w] = true;
            on_path[w] = true;
            dfs(g, angles, w, gamma, on_path, dirs, reached)?;
            on_path[w] = false;
        }
        dirs.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::graph::is_angle_monotone_path;

    fn graph(c: &[(f64, f64)], e: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(c.iter().map(|&(x, y)| Point::new(x, y).unwrap()).collect(), e).unwrap()
    }

    #[test]
    fn star_seeds_degenerate_pairs() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, -0.5)], &[(0, 1), (0, 2), (0, 3)]);
        let t = explore_from_source(&g, 0).unwrap();
        for v in 1..4 {
            let pairs = t.pairs(v);
            assert_eq!(pairs.len(), 1);
            assert_eq!(pairs[0].min, pairs[0].max);
            assert_eq!(certificate_path(&t, v).unwrap().vertices, vec![0, v]);
        }
    }

    #[test]
    fn closed_ninety_degree_propagation() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], &[(0, 1), (1, 2)]);
        let t = explore_from_source(&g, 0).unwrap();
        let w = t.pairs(2);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].min.radians(), 0.0);
        assert!((w[0].max.radians() - FRAC_PI_2).abs() < 1e-15);

        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0 - 100f64.to_radians().cos().abs(), 1.0)], &[(0, 1), (1, 2)]);
        assert!(explore_from_source(&g, 0).unwrap().pairs(2).is_empty());
    }

    #[test]
    fn decisions() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        assert!(is_angle_monotone(&g).unwrap().holds);
        let sq = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(is_angle_monotone(&sq).unwrap().holds);
        let bent = graph(&[(0.0, 0.0), (1.0, 0.0), (0.9, 1.0)], &[(0, 1), (1, 2)]);
        let d = is_angle_monotone(&bent).unwrap();
        assert_eq!(d, Decision { holds: false, witness: Some((0, 2)) });
        let apart = graph(&[(0.0, 0.0), (1.0, 0.0)], &[]);
        assert_eq!(is_angle_monotone(&apart).unwrap().witness, Some((0, 1)));
    }

    #[test]
    fn width_variant() {
        let turn = 140f64.to_radians();
        let g = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0 + turn.cos(), turn.sin())], &[(0, 1), (1, 2)]);
        assert!(!is_angle_monotone_width(&g, 130f64.to_radians()).unwrap().holds);
        assert!(is_angle_monotone_width(&g, 150f64.to_radians()).unwrap().holds);
        assert!(is_angle_monotone_width(&g, PI).is_err());
        assert!(!brute_force_width(&g, 130f64.to_radians()).unwrap());
        assert!(brute_force_width(&g, 150f64.to_radians()).unwrap());
    }

    #[test]
    fn brute_force_basics() {
        let g = graph(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        assert!(brute_force_width(&g, FRAC_PI_2).unwrap());
        let g = graph(&[(0.0, 0.0), (1.0, 0.0)], &[]);
        assert!(!brute_force_width(&g, FRAC_PI_2).unwrap());
        let many: Vec<(f64, f64)> = (0..13).map(|i| (i as f64, (i * i) as f64)).collect();
        assert!(matches!(brute_force_width(&graph(&many, &[]), FRAC_PI_2), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn certificates_are_monotone() {
        let sq = graph(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        for s in 0..4 {
            let t = explore_from_source(&sq, s).unwrap();
            for v in 0..4 {
                let p = certificate_path(&t, v).unwrap();
                assert_eq!((p.source(), p.target()), (s, v));
                if s != v {
                    assert!(is_angle_monotone_path(&sq, &p, FRAC_PI_2).unwrap());
                }
            }
        }
        let apart = graph(&[(0.0, 0.0), (1.0, 0.0)], &[]);
        let t = explore_from_source(&apart, 0).unwrap();
        assert!(matches!(certificate_path(&t, 1), Err(Error::NoCertificate(1))));
    }
}
