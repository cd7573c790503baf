//! Curves that are critical points of the pole-weighted length energy
//! `E_alpha = int d^alpha ds`, where `d` is the geodesic distance to a fixed
//! pole, on the hyperbolic plane, the unit sphere, and the Euclidean plane.
//!
//! The three geometries share one code path through the warp function
//! `w(u)` of geodesic polar coordinates (`sinh u`, `sin u`, `u`). A curve is
//! stationary exactly when its geodesic curvature satisfies
//! `kappa = alpha <n, xi> / d` with `xi` the unit ray tangent from the pole;
//! the crate constructs such curves by ODE integration and by quadrature,
//! validates arbitrary sampled curves against that characterization,
//! classifies the constant-curvature families, and minimizes the energy
//! between fixed endpoints.
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --release --example trace_hyperbolic
//! cargo run --release --example trace_sphere
//! cargo run --release --example circle_stationarity
//! cargo run --release --example admissible_domains
//! cargo run --release --example classify_families
//! cargo run --release --example energy_quadrature
//! cargo run --release --example minimize_ray
//! cargo run --release --example minimize_through_pole
//! cargo run --release --example south_pole_exploration
//! ```
//!
//! The same functionality is scriptable through the thin `polecurve` binary
//! (`trace`, `validate`, `classify`, `energy`, `minimize`, `plot`).

pub mod classify;
pub mod commands;
pub mod csvio;
pub mod curves;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod minimize;
pub mod numerics;
pub mod stationary;
pub mod svg;

pub use classify::{
    circle_alpha, classify_constant_curvature, invert_circle_alpha,
    is_stationary_constant_curvature, ConstCurvCurve, CurveType,
};
pub use curves::{
    curvature, resample_arclength, sigma_of_state, unit_normal, weighted_curvature, CurveSamples,
    CurveState,
};
pub use energy::{energy, energy_ray_segment, energy_south_pole_geodesic, EnergyReport};
pub use error::{Error, Result};
pub use geometry::{
    distance_to_pole, embed, metric_dot, pairwise_distance, poincare_project, ray_tangent,
    AmbientVec, PolarPoint, SpaceKind,
};
pub use minimize::{
    dp_grid_min, geodesic_between, minimize_polyline, verify_minimizer_theorems, MinimizeProblem,
    MinimizeResult, Scenario,
};
pub use stationary::{
    admissible_domain, check_closed_curve_constraints, el_residual, first_integral,
    integrate_stationary, quadrature_parametrization, radial_acceleration, AdmissibleDomain,
    Sign, StationaryParams,
};
