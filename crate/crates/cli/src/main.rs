//! `amono`: command-line front end for angle-monotone graphs, Gabriel and
//! Delaunay triangulations, local routing and the lower-bound gadgets.
//!
//! Exit status: 0 on success, 1 on a negative decision, 2 on input errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amono::generators::{
    gen_delaunay_lowerbound, gen_fan_lowerbound, gen_gabriel_worstcase, gen_general_worstcase, gen_grid_gabriel,
    gen_no_self_approaching, gen_random, gen_regular_ngon, self_approaching_census, Gadget, DELAUNAY_ARC_DEFAULT,
};
use amono::half_theta6::{build_half_theta6, format_half_theta6};
use amono::io::{load_any_graph, load_points, save_points, TraceRecord};
use amono::metrics::{ratio_matrix, spanning_ratio};
use amono::recognition::{brute_force_width, certificate_path, explore_phases, is_angle_monotone_width};
use amono::routing::{route, routing_ratio, routing_ratio_sweep};
use amono::svg::{render_svg, Overlay};
use amono::triangulation::{delaunay, gabriel_graph, load_triangulation, save_triangulation, Triangulation};
use amono::{Error, GeometricGraph};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "amono", version, about = "Angle-monotone graphs and local routing on triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Delaunay,
    Gabriel,
    HalfTheta6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Random,
    Grid,
    GabrielWorst,
    GeneralWorst,
    DelaunayLb,
    FanLb,
    NoSa,
    Ngon,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    SpanningRatio,
    RoutingRatio,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Delaunay triangulation, Gabriel graph or half-θ6 graph.
    Triangulate {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "delaunay")]
        kind: Kind,
    },
    /// Generate a point set, triangulation or lower-bound gadget.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        out: PathBuf,
        /// Marked-vertex sidecar; defaults to `<out>.marks.json`.
        #[arg(long)]
        marks: Option<PathBuf>,
        /// Second (mirrored) fan instance for `fan-lb`.
        #[arg(long)]
        mirrored: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Maximum angle in degrees.
        #[arg(long, default_value_t = 100.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = DELAUNAY_ARC_DEFAULT)]
        arc: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Decide whether a graph is angle-monotone of the given width.
    Check {
        #[arg(long)]
        graph: PathBuf,
        /// Width in degrees.
        #[arg(long, default_value_t = 90.0)]
        width: f64,
        /// Certify a single ordered pair instead of the whole graph.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        certify: Option<Vec<usize>>,
        /// Where to write the certificate trace.
        #[arg(long, requires = "certify")]
        trace: Option<PathBuf>,
        /// Use exhaustive path enumeration (small graphs only).
        #[arg(long, conflicts_with = "certify")]
        oracle: bool,
    },
    /// Route between two vertices of a triangulation.
    Route {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Worst pair of a spanning or routing ratio.
    Metrics {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "spanning-ratio")]
        metric: Metric,
        /// Full matrix of spanning ratios as CSV.
        #[arg(long)]
        all_pairs_csv: Option<PathBuf>,
    },
    /// Draw a graph with overlaid traces as SVG.
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        marks: Option<PathBuf>,
        /// Trace JSON files to overlay; repeatable.
        #[arg(long)]
        trace: Vec<PathBuf>,
    },
}

/// Result line and exit status of a successful run.
struct Outcome {
    line: String,
    positive: bool,
}

fn yes(line: impl Into<String>) -> Outcome {
    Outcome { line: line.into(), positive: true }
}

fn degrees(deg: f64) -> Result<f64, Error> {
    if deg.is_finite() {
        Ok(deg.to_radians())
    } else {
        Err(Error::Parameter(format!("angle {deg} is not finite")))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    Ok(fs::write(path, text)?)
}

fn sidecar(out: &Path, marks: Option<PathBuf>) -> PathBuf {
    marks.unwrap_or_else(|| {
        let mut s = out.as_os_str().to_owned();
        s.push(".marks.json");
        PathBuf::from(s)
    })
}

fn save_gadget(g: &Gadget, out: &Path, marks: &Path) -> Result<(), Error> {
    save_triangulation(out, &g.triangulation)?;
    write_file(marks, &(g.marks_json() + "\n"))
}

fn triangulate(points: &Path, out: &Path, kind: Kind) -> Result<Outcome, Error> {
    let pts = load_points(points)?;
    match kind {
        Kind::Delaunay => {
            let t = delaunay(&pts)?;
            save_triangulation(out, &t)?;
            Ok(yes(format!("n={} triangles={} max_angle={}", t.n(), t.triangles().len(), t.max_angle().to_degrees())))
        }
        Kind::Gabriel => {
            let g = gabriel_graph(&pts)?;
            amono::io::save_graph(out, &g)?;
            Ok(yes(format!("n={} edges={}", g.n(), g.edge_count())))
        }
        Kind::HalfTheta6 => {
            let h = build_half_theta6(&pts)?;
            write_file(out, &format_half_theta6(&h))?;
            Ok(yes(format!("n={} edges={}", h.graph().n(), h.graph().edge_count())))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    out: &Path,
    marks: Option<PathBuf>,
    mirrored: Option<PathBuf>,
    n: usize,
    seed: u64,
    m: usize,
    eps: f64,
    alpha: f64,
    delta: f64,
    arc: usize,
    k: usize,
) -> Result<Outcome, Error> {
    let marks = sidecar(out, marks);
    let gadget = |g: Gadget| -> Result<Outcome, Error> {
        save_gadget(&g, out, &marks)?;
        Ok(yes(format!("n={} ratio={}", g.triangulation.n(), g.route_ratio()?)))
    };
    match family {
        Family::Random => {
            save_points(out, &gen_random(n, seed))?;
            Ok(yes(format!("n={n}")))
        }
        Family::Ngon => {
            let p = gen_regular_ngon(n, seed)?;
            if let Some(w) = &p.warning {
                eprintln!("warning: {w}");
            }
            save_points(out, &p.points)?;
            Ok(yes(format!("n={n}")))
        }
        Family::Grid => {
            let t = gen_grid_gabriel(m)?;
            save_triangulation(out, &t)?;
            Ok(yes(format!("n={} triangles={}", t.n(), t.triangles().len())))
        }
        Family::GabrielWorst => gadget(gen_gabriel_worstcase(eps)?),
        Family::GeneralWorst => gadget(gen_general_worstcase(degrees(alpha)?, eps)?),
        Family::DelaunayLb => gadget(gen_delaunay_lowerbound(delta, arc)?),
        Family::NoSa => {
            let g = gen_no_self_approaching(k)?;
            save_gadget(&g, out, &marks)?;
            let (through, avoiding) =
                self_approaching_census(g.triangulation.graph(), g.mark("s"), g.mark("t"), g.mark("q"))?;
            Ok(yes(format!("n={} through_q={through} avoiding_q={avoiding}", g.triangulation.n())))
        }
        Family::FanLb => {
            let f = gen_fan_lowerbound(k)?;
            save_gadget(&f.first, out, &marks)?;
            if let Some(path) = mirrored {
                let mirrored_marks = sidecar(&path, None);
                save_gadget(&f.mirrored, &path, &mirrored_marks)?;
            }
            Ok(yes(format!(
                "n={} deception={} competitive={}",
                f.first.triangulation.n(),
                f.deception_ratio(),
                f.competitive_constant()
            )))
        }
    }
}

fn save_trace(path: &Path, rec: &TraceRecord) -> Result<(), Error> {
    write_file(path, &(rec.to_json() + "\n"))
}

fn check(
    graph: &Path,
    width: f64,
    certify: Option<Vec<usize>>,
    trace: Option<PathBuf>,
    oracle: bool,
) -> Result<Outcome, Error> {
    let g = load_any_graph(graph)?;
    let gamma = degrees(width)?;
    if let Some(pair) = certify {
        let (i, j) = (pair[0], pair[1]);
        if i >= g.n() || j >= g.n() {
            return Err(Error::Parameter(format!("pair ({i}, {j}) out of range")));
        }
        let table = explore_phases(&g, i, gamma, true)?;
        return match certificate_path(&table, j) {
            Ok(path) => {
                if let Some(t) = trace {
                    save_trace(&t, &TraceRecord::from_path(&g, &path)?)?;
                }
                Ok(yes("yes"))
            }
            Err(Error::NoCertificate(_)) => Ok(Outcome { line: format!("no {i} {j}"), positive: false }),
            Err(e) => Err(e),
        };
    }
    if oracle {
        let holds = brute_force_width(&g, gamma)?;
        return Ok(Outcome { line: if holds { "yes" } else { "no" }.into(), positive: holds });
    }
    let d = is_angle_monotone_width(&g, gamma)?;
    Ok(match d.witness {
        None => yes("yes"),
        Some((s, v)) => Outcome { line: format!("no {s} {v}"), positive: false },
    })
}

fn route_cmd(graph: &Path, from: usize, to: usize, trace: Option<PathBuf>) -> Result<Outcome, Error> {
    let t = load_triangulation(graph)?;
    let r = route(&t, from, to)?;
    if let Some(path) = trace {
        save_trace(&path, &r.record(t.graph())?)?;
    }
    let ratio = routing_ratio(t.graph(), &r.path)?;
    let vs: Vec<String> = r.path.vertices.iter().map(ToString::to_string).collect();
    Ok(yes(format!("ratio={ratio} path={}", vs.join(","))))
}

fn matrix_csv(g: &GeometricGraph) -> Result<String, Error> {
    let mut out = String::new();
    for row in ratio_matrix(g)? {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    Ok(out)
}

fn metrics_cmd(graph: &Path, metric: Metric, csv: Option<PathBuf>) -> Result<Outcome, Error> {
    let line = match metric {
        Metric::SpanningRatio => {
            let g = load_any_graph(graph)?;
            if let Some(path) = csv {
                write_file(&path, &matrix_csv(&g)?)?;
            }
            let r = spanning_ratio(&g)?;
            format!("{} {} {}", r.ratio, r.pair.0, r.pair.1)
        }
        Metric::RoutingRatio => {
            let t: Triangulation = load_triangulation(graph)?;
            if let Some(path) = csv {
                write_file(&path, &matrix_csv(t.graph())?)?;
            }
            let r = routing_ratio_sweep(&t)?;
            format!("{} {} {}", r.max_ratio, r.pair.0, r.pair.1)
        }
    };
    Ok(yes(line))
}

fn render(graph: &Path, out: &Path, marks: Option<PathBuf>, traces: &[PathBuf]) -> Result<Outcome, Error> {
    let g = load_any_graph(graph)?;
    let marks: BTreeMap<String, usize> = match marks {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
        None => BTreeMap::new(),
    };
    let overlays = traces
        .iter()
        .map(|p| {
            let rec = TraceRecord::from_json(&fs::read_to_string(p)?)?;
            let label = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            Ok(Overlay { path: rec.to_path(), label })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    write_file(out, &render_svg(&g, &overlays, &marks)?)?;
    Ok(yes(format!("edges={} overlays={}", g.edge_count(), overlays.len())))
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Triangulate { points, out, kind } => triangulate(&points, &out, kind),
        Command::Generate { family, out, marks, mirrored, n, seed, m, eps, alpha, delta, arc, k } => {
            generate(family, &out, marks, mirrored, n, seed, m, eps, alpha, delta, arc, k)
        }
        Command::Check { graph, width, certify, trace, oracle } => check(&graph, width, certify, trace, oracle),
        Command::Route { graph, from, to, trace } => route_cmd(&graph, from, to, trace),
        Command::Metrics { graph, metric, all_pairs_csv } => metrics_cmd(&graph, metric, all_pairs_csv),
        Command::Render { graph, out, marks, trace } => render(&graph, &out, marks, &trace),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            println!("{}", o.line);
            ExitCode::from(if o.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
