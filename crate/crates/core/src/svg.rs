//! SVG drawings of graphs with highlighted paths and labelled vertices.
//!
//! The y-axis is flipped so drawings match the usual mathematical
//! orientation. Output depends only on the inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{GeometricGraph, PathTrace};

const PALETTE: [&str; 4] = ["#1f4fd1", "#d1371f", "#1c9a3c", "#9a1c8c"];

/// A path drawn over the graph.
#[derive(Clone, Debug)]
pub struct Overlay {
    pub path: PathTrace,
    pub label: String,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Renders edges as `line` elements in light grey, each overlay as a heavy
/// coloured `polyline`, and each marked vertex as a dot with its name. The
/// viewBox is the bounding box grown by 5% on every side.
pub fn render_svg(g: &GeometricGraph, overlays: &[Overlay], marks: &BTreeMap<String, usize>) -> Result<String> {
    if g.n() == 0 {
        return Err(Error::Parameter("cannot render an empty graph".into()));
    }
    for o in overlays {
        o.path.validate(g)?;
    }
    if let Some((name, &v)) = marks.iter().find(|(_, &v)| v >= g.n()) {
        return Err(Error::Parameter(format!("mark {name} names missing vertex {v}")));
    }
    let pts = g.points();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        (x0, x1, y0, y1) = (x0.min(p.x), x1.max(p.x), y0.min(-p.y), y1.max(-p.y));
    }
    let size = (x1 - x0).max(y1 - y0);
    let size = if size > 0.0 { size } else { 1.0 };
    let (w, h) = (if x1 > x0 { x1 - x0 } else { size }, if y1 > y0 { y1 - y0 } else { size });
    let (mx, my) = (0.05 * w, 0.05 * h);
    let (thin, heavy, dot, font) = (size * 0.002, size * 0.006, size * 0.008, size * 0.03);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - mx,
        y0 - my,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let _ = writeln!(s, r##"<g stroke="#b0b0b0" stroke-width="{thin}">"##);
    for (u, v) in g.edges() {
        let (a, b) = (pts[u], pts[v]);
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.x, -a.y, b.x, -b.y);
    }
    s.push_str("</g>\n");
    for (i, o) in overlays.iter().enumerate() {
        let coords: Vec<String> = o.path.vertices.iter().map(|&v| format!("{},{}", pts[v].x, -pts[v].y)).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="{heavy}" points="{}"><title>{}</title></polyline>"#,
            PALETTE[i % PALETTE.len()],
            coords.join(" "),
            escape(&o.label)
        );
    }
    for (name, &v) in marks {
        let p = pts[v];
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{dot}"/>"#, p.x, -p.y);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="{font}">{}</text>"#, p.x + dot, -p.y - dot, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
