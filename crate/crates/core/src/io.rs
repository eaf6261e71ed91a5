//! Plain-text point, graph and triangulation files, and JSON path traces.
//!
//! Points file: a line with `n`, then `n` lines `x y`. A graph file appends
//! `edges m` and `m` lines `i j` (`i < j`, sorted, no repeats). Triangulation
//! files append `triangles k` with `k` counter-clockwise triples; half-θ6
//! files may append `cones k` with `owner target cone` lines. Coordinates are
//! written in shortest round-trip form, so save then load is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::graph::{check_points, GeometricGraph, PathTrace, StepKind};

/// Line cursor that reports 1-based line numbers in errors.
pub(crate) struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        Lines { lines, pos: 0 }
    }

    fn err(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn line_no(&self) -> usize {
        self.lines.get(self.pos).map_or_else(|| self.lines.last().map_or(1, |l| l.0 + 1), |l| l.0)
    }

    pub(crate) fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    /// Next line split into exactly `k` whitespace-separated fields.
    pub(crate) fn fields<T: FromStr>(&mut self, k: usize) -> Result<(usize, Vec<T>)> {
        let Some(&(no, line)) = self.lines.get(self.pos) else {
            return Err(Self::err(self.line_no(), "unexpected end of file"));
        };
        self.pos += 1;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != k {
            return Err(Self::err(no, format!("expected {k} fields, found {}", parts.len())));
        }
        let vals = parts
            .iter()
            .map(|s| s.parse::<T>().map_err(|_| Self::err(no, format!("cannot parse {s:?}"))))
            .collect::<Result<Vec<T>>>()?;
        Ok((no, vals))
    }

    /// Next line of the form `keyword count`.
    pub(crate) fn header(&mut self, keyword: &str) -> Result<usize> {
        let no = self.line_no();
        let line = self.peek().ok_or_else(|| Self::err(no, format!("missing \"{keyword}\" header")))?;
        let mut it = line.split_whitespace();
        if it.next() != Some(keyword) {
            return Err(Self::err(no, format!("expected \"{keyword} <count>\"")));
        }
        let count = it
            .next()
            .and_then(|c| c.parse().ok())
            .filter(|_| it.next().is_none())
            .ok_or_else(|| Self::err(no, format!("malformed \"{keyword}\" header")))?;
        self.pos += 1;
        Ok(count)
    }

    pub(crate) fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some(&(no, _)) => Err(Self::err(no, "trailing content")),
        }
    }
}

fn parse_points_block(lines: &mut Lines<'_>) -> Result<Vec<Point>> {
    let (_, n) = lines.fields::<usize>(1)?;
    let mut pts = Vec::with_capacity(n[0]);
    let mut line_of = Vec::with_capacity(n[0]);
    for _ in 0..n[0] {
        let (no, xy) = lines.fields::<f64>(2)?;
        let p = Point::new(xy[0], xy[1]).map_err(|e| Lines::err(no, e.to_string()))?;
        pts.push(p);
        line_of.push(no);
    }
    if let Err(Error::Degenerate(msg)) = check_points(&pts) {
        // Point ids map back to the lines they came from.
        let dup = pts
            .iter()
            .enumerate()
            .find(|(i, p)| pts[..*i].contains(p))
            .map_or(line_of.first().copied().unwrap_or(1), |(i, _)| line_of[i]);
        return Err(Lines::err(dup, msg));
    }
    Ok(pts)
}

fn parse_edges_block(lines: &mut Lines<'_>, n: usize) -> Result<Vec<(usize, usize)>> {
    let m = lines.header("edges")?;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, ij) = lines.fields::<usize>(2)?;
        let (i, j) = (ij[0], ij[1]);
        if i == j {
            return Err(Lines::err(no, format!("self-loop at vertex {i}")));
        }
        if i > j {
            return Err(Lines::err(no, format!("edge ({i}, {j}) not written with i < j")));
        }
        if j >= n {
            return Err(Lines::err(no, format!("vertex {j} out of range")));
        }
        if let Some(&last) = edges.last() {
            if last >= (i, j) {
                return Err(Lines::err(no, format!("edge ({i}, {j}) repeated or out of order")));
            }
        }
        edges.push((i, j));
    }
    Ok(edges)
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut lines = Lines::new(text);
    let pts = parse_points_block(&mut lines)?;
    lines.finish()?;
    Ok(pts)
}

pub(crate) fn parse_graph_prefix(lines: &mut Lines<'_>) -> Result<GeometricGraph> {
    let pts = parse_points_block(lines)?;
    let edges = parse_edges_block(lines, pts.len())?;
    GeometricGraph::new(pts, &edges)
}

pub fn parse_graph(text: &str) -> Result<GeometricGraph> {
    let mut lines = Lines::new(text);
    let g = parse_graph_prefix(&mut lines)?;
    lines.finish()?;
    Ok(g)
}

/// Reads the graph part of a graph, triangulation or half-θ6 file. A
/// trailing `triangles` or `cones` block is still checked by its own parser.
pub fn parse_any_graph(text: &str) -> Result<GeometricGraph> {
    let mut lines = Lines::new(text);
    let g = parse_graph_prefix(&mut lines)?;
    match lines.peek().and_then(|l| l.split_whitespace().next()) {
        Some("triangles") => Ok(crate::triangulation::parse_triangulation(text)?.graph().clone()),
        Some("cones") => Ok(crate::half_theta6::parse_half_theta6(text)?.graph().clone()),
        _ => {
            lines.finish()?;
            Ok(g)
        }
    }
}

pub fn load_any_graph(path: impl AsRef<Path>) -> Result<GeometricGraph> {
    parse_any_graph(&fs::read_to_string(path)?)
}

pub fn format_points(points: &[Point]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", points.len()).unwrap();
    for p in points {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn format_graph(g: &GeometricGraph) -> String {
    let mut out = format_points(g.points());
    let edges = g.edges();
    writeln!(out, "edges {}", edges.len()).unwrap();
    for (i, j) in edges {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<Point>> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn save_points(path: impl AsRef<Path>, points: &[Point]) -> Result<()> {
    Ok(fs::write(path, format_points(points))?)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<GeometricGraph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn save_graph(path: impl AsRef<Path>, g: &GeometricGraph) -> Result<()> {
    Ok(fs::write(path, format_graph(g))?)
}

/// JSON form of a path with its measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub source: usize,
    pub target: usize,
    pub vertices: Vec<usize>,
    pub steps: Vec<Option<StepKind>>,
    pub length: f64,
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame_rotation: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tie_flags: Vec<String>,
}

impl TraceRecord {
    pub fn from_path(g: &GeometricGraph, p: &PathTrace) -> Result<Self> {
        let length = crate::graph::path_length(g, p)?;
        let direct = g.length(p.source(), p.target());
        Ok(TraceRecord {
            source: p.source(),
            target: p.target(),
            vertices: p.vertices.clone(),
            steps: p.steps.clone(),
            length,
            ratio: if direct > 0.0 { length / direct } else { 1.0 },
            frame_rotation: None,
            tie_flags: Vec::new(),
        })
    }

    pub fn to_path(&self) -> PathTrace {
        PathTrace { vertices: self.vertices.clone(), steps: self.steps.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
