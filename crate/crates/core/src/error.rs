use thiserror::Error;

use crate::diagram::DiagramError;
use crate::exactmath::ExactMathError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve is not generic: {0}")]
    NotGeneric(String),
    #[error("curve has an imaginary node")]
    ImaginaryNodePresent,
    #[error("node positions are not rational")]
    IrrationalNodes,
    #[error("node positions are collinear")]
    DegenerateNodes,
    #[error("curves belong to different classes: {0} vs {1}")]
    DifferentClass(String, String),
    #[error("could not schedule a collision-free path: {0}")]
    PathObstruction(String),
    #[error("parametrization does not divide out: {0}")]
    DivisionFailure(String),
    #[error("implicitization failed: {0}")]
    ImplicitizationFailure(String),
    #[error("raster component count changed between resolutions {0} and {1}")]
    UnstableResolution(usize, usize),
    #[error("raster resolution {0} is below the minimum of 64")]
    InvalidResolution(usize),
    #[error("invalid plot settings: {0}")]
    InvalidPlot(String),
    #[error("perturbed curve is still singular")]
    StillSingular,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
