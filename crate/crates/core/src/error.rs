use thiserror::Error;

/// Errors produced by the geometry, verification and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("angle is undefined: a ray from the apex has length {norm:e}")]
    DegenerateAngle { norm: f64 },

    #[error("edge endpoints coincide (length {length:e})")]
    DegenerateEdge { length: f64 },

    #[error("points are collinear (doubled signed area {area:e})")]
    CollinearPoints { area: f64 },

    #[error("points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },

    #[error("instance has no points")]
    EmptyInstance,

    #[error("instance of {n} points exceeds the limit of {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },

    #[error("odd point count {n}: no perfect matching exists")]
    OddCount { n: usize },

    #[error("not a spanning tree: {0}")]
    NotASpanningTree(String),

    #[error("enclosing circle has zero radius")]
    ZeroRadius,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error(
        "solver did not certify its optimum within {iterations} iterations \
         (best ratio {ratio} at ({x}, {y}))"
    )]
    NonConvergence { x: f64, y: f64, ratio: f64, iterations: usize },

    #[error("point {index}: coordinate {field} is not finite")]
    NonFiniteCoordinate { index: usize, field: &'static str },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
