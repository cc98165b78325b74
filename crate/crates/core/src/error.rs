use thiserror::Error;

/// Failures raised by the solvers, mesh builders and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spacelike condition violated at sample {index}: |Du| = {grad}")]
    SpacelikeViolation { index: usize, grad: f64 },

    #[error("positivity violated at sample {index}: u = {value}")]
    PositivityViolation { index: usize, value: f64 },

    #[error("vertex {vertex} has only {neighbors} distinct neighbours in its fitting star")]
    DegenerateStar { vertex: usize, neighbors: usize },

    #[error("<p, a> vanishes at vertex {vertex}")]
    DenominatorZero { vertex: usize },

    #[error("invalid initial data: {0}")]
    InvalidInitial(String),

    #[error("step size collapsed to {step:e} at r = {r} before an endpoint event")]
    StepCollapse { r: f64, step: f64 },

    #[error("Picard iteration is not contracting (delta = {delta}, last ratio = {ratio})")]
    NoContraction { delta: f64, ratio: f64 },

    #[error("classification mismatch: {0}")]
    ClassificationMismatch(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("surface is not spacelike: {0}")]
    NotSpacelike(String),

    #[error("parameter domain is empty: {0}")]
    DomainEmpty(String),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("profile has vanishing curvature")]
    ZeroCurvature,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("Newton iteration diverged after {iterations} iterations (residual {residual:e})")]
    NewtonDiverged { iterations: usize, residual: f64 },

    #[error("Newton iterate pinned at the gradient safeguard (max |Du| = {max_grad})")]
    SpacelikeBreach { max_grad: f64 },

    #[error("continuation stalled at t = {t} (step {step:e})")]
    ContinuationStalled { t: f64, step: f64 },

    #[error("iterate lost positivity at t = {t}: min u = {min_u}")]
    PositivityBreach { t: f64, min_u: f64 },

    #[error("no intersection between the radial profile and the boundary line")]
    NoIntersection,

    #[error("singular linear system at pivot {0}")]
    SingularMatrix(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
