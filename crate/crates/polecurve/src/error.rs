//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by geometry, curve, energy, and solver operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("u = {u} outside the valid range (0, {u_max}) for this space")]
    InvalidU { u: f64, u_max: f64 },

    #[error("degenerate curve state: |gamma'| = {speed:e} below 1e-14")]
    DegenerateState { speed: f64 },

    #[error("state is not unit speed: u'^2 + w(u)^2 v'^2 = {speed_sq} (|1 - .| > 1e-6)")]
    NotUnitSpeed { speed_sq: f64 },

    #[error("curve touches the pole guard: sample u = {u}")]
    PoleTouching { u: f64 },

    #[error("invalid radial range: need 0 < a1 < a2, got a1 = {a1}, a2 = {a2}")]
    InvalidRange { a1: f64, a2: f64 },

    #[error("south-pole geodesic requires alpha > 0 and a + b >= pi; got alpha = {alpha}, a + b = {sum}")]
    ConstraintViolated { alpha: f64, sum: f64 },

    #[error("too few samples: got {got}, need at least {need}")]
    TooFewSamples { got: usize, need: usize },

    #[error("sample spacing is not uniform (max deviation {dev:e}); resample first")]
    NonUniformSpacing { dev: f64 },

    #[error(
        "initial data inconsistent: u^alpha w(u) sin(sigma) = {got:e} but params require c = {expected:e}"
    )]
    InconsistentInitialData { got: f64, expected: f64 },

    #[error("integration step too large: first-integral drift {drift:e} in one step even after halving")]
    StepTooLarge { drift: f64 },

    #[error("u = {u} outside the admissible domain for these parameters")]
    OutsideDomain { u: f64 },

    #[error("radicand u^(2 alpha) w(u)^2 - c^2 is non-positive at u = {u}")]
    RadicandNonpositive { u: f64 },

    #[error("quadrature interval endpoint u = {u} is a radicand root; shrink the interval or use the turning-point rule")]
    SingularEndpoint { u: f64 },

    #[error("level set <p,a> = {tau} is empty in this space")]
    EmptyLevelSet { tau: f64 },

    #[error("invalid circle radius r = {r}; need 0 < r < {u_max}")]
    InvalidRadius { r: f64, u_max: f64 },

    #[error("operation not defined for the Euclidean plane")]
    UnsupportedSpace,

    #[error("endpoints are antipodal; the minimizing geodesic is not unique")]
    AntipodalEndpoints,

    #[error("curve is not closed: endpoint gap {gap:e} exceeds {tol:e}")]
    NotClosed { gap: f64, tol: f64 },

    #[error("curve is not stationary: max |EL residual| = {max_residual:e} exceeds {tol:e}")]
    NotStationary { max_residual: f64, tol: f64 },

    #[error("scenario hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("descent did not converge within {iters} iterations (gradient norm {grad_norm:e})")]
    MaxItersExceeded { iters: usize, grad_norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed CSV at line {line}: {msg}")]
    MalformedCsv { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Maps an error to the CLI exit code scheme:
    /// 1 tolerance/convergence failure, 2 usage error, 3 mathematical domain error.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NotStationary { .. } | MaxItersExceeded { .. } => 1,
            InvalidParameter(_) | MalformedCsv { .. } | Io(_) | HypothesisViolated(_) => 2,
            _ => 3,
        }
    }
}
