//! Angle-monotone paths in geometric graphs: recognition, half-θ6 path
//! construction, triangulation routing, and gadget generators.

pub mod error;
pub mod exact;
pub mod generators;
pub mod geom;
pub mod graph;
pub mod half_theta6;
pub mod io;
pub mod metrics;
pub mod recognition;
pub mod routing;
pub mod svg;
pub mod triangulation;

pub use error::{Error, Result};
pub use geom::{Angle, Orientation, Point, Wedge, TAU_ANGLE, TAU_LEN};
pub use graph::{GeometricGraph, PathTrace, StepKind};
