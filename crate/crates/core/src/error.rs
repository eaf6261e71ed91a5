use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Coincident points, zero-length edges, non-finite coordinates.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("all input points are collinear")]
    Collinear,

    #[error("cocircular points {0:?}: Delaunay triangulation is not unique")]
    Cocircular([usize; 4]),

    /// A pair of points lies on a line parallel to a cone boundary.
    #[error("points {0} and {1} violate general position: {2}")]
    GeneralPosition(usize, usize, String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("graph is disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),

    #[error("no certificate stored for vertex {0}")]
    NoCertificate(usize),

    #[error("instance too large for brute force: n = {n} > {max}")]
    SizeLimit { n: usize, max: usize },

    /// Internal consistency check failed; always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A generator produced an instance failing its own verification.
    #[error("generator bug: {0}")]
    Generator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
