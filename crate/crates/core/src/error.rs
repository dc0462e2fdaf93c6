use thiserror::Error;

use crate::ellipse::Ellipse;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("vertices are not in convex position")]
    NotConvex,

    #[error("intersection is empty or has zero area")]
    EmptyIntersection,

    #[error("degenerate triangle parameters: {0}")]
    DegenerateTriangle(String),

    #[error("invalid ellipse axes a={a}, b={b} (need a >= b > 0)")]
    InvalidAxes { a: f64, b: f64 },

    #[error("no convergence after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Box<Ellipse>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape generation exhausted after {attempts} attempts ({kind})")]
    GenerationExhausted { kind: String, attempts: usize },

    #[error(transparent)]
    Io(#[from] std::sync::Arc<std::io::Error>),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(std::sync::Arc::new(e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
