//! Library-side implementations of the CLI commands. The binary only parses
//! flags and forwards here, so everything is reachable programmatically.

use std::path::PathBuf;

use serde::Serialize;

use crate::classify::{self, ConstCurvCurve};
use crate::csvio;
use crate::curves::{reparametrize_by_chords, resample_arclength, CurveSamples};
use crate::energy::{energy, EnergyReport};
use crate::error::{Error, Result};
use crate::geometry::{PolarPoint, SpaceKind};
use crate::minimize::{
    dp_grid_min, explore_south_pole, geodesic_between, minimize_polyline, perturbed_init,
    MinimizeProblem, SouthPoleExploration,
};
use crate::stationary::{
    check_closed_curve_constraints, first_integral, integrate_stationary, ClosedCheckOptions,
    ClosedCurveReport, Sign, StationaryParams,
};
use crate::svg;

/// First-integral constant: explicit, or derived from the seed
/// (`auto-circle` on the command line).
#[derive(Clone, Copy, Debug)]
pub enum CChoice {
    Explicit(f64),
    FromSeed,
}

#[derive(Clone, Debug)]
pub struct TraceConfig {
    pub space: SpaceKind,
    pub alpha: f64,
    pub c: CChoice,
    pub u0: f64,
    pub v0: f64,
    pub sigma0: f64,
    pub step: f64,
    pub length: f64,
    pub branch_t: Sign,
    pub branch_v: Sign,
    pub out_csv: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct TraceSummary {
    pub space: SpaceKind,
    pub alpha: f64,
    pub c: f64,
    pub samples: usize,
    pub arc_length: f64,
    pub u_range: (f64, f64),
    pub max_c_drift: f64,
    pub endpoint_gap: f64,
}

/// Traces one stationary curve and writes the requested artifacts.
pub fn cmd_trace(cfg: &TraceConfig) -> Result<(TraceSummary, CurveSamples)> {
    let c = match cfg.c {
        CChoice::Explicit(c) => c,
        CChoice::FromSeed => first_integral(cfg.space, cfg.alpha, cfg.u0, cfg.sigma0),
    };
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "derived or given c = {c} must be positive; seed sigma0 must have sin(sigma0) > 0"
        )));
    }
    let params = StationaryParams::new(cfg.space, cfg.alpha, c)?
        .with_branches(cfg.branch_t, cfg.branch_v);
    let curve = integrate_stationary(&params, cfg.u0, cfg.v0, cfg.sigma0, cfg.step, cfg.length)?;
    if let Some(path) = &cfg.out_csv {
        csvio::write_curve(path, &curve)?;
    }
    if let Some(path) = &cfg.out_svg {
        svg::write_svg(path, &svg::plot_curves(cfg.space, &[&curve])?)?;
    }
    let u_min = curve.u.iter().cloned().fold(f64::INFINITY, f64::min);
    let u_max = curve.u.iter().cloned().fold(0.0, f64::max);
    let max_drift = curve
        .c_drift
        .as_ref()
        .map(|d| d.iter().fold(0.0f64, |m, &x| m.max(x.abs())))
        .unwrap_or(0.0);
    Ok((
        TraceSummary {
            space: cfg.space,
            alpha: cfg.alpha,
            c,
            samples: curve.len(),
            arc_length: curve.total_length(),
            u_range: (u_min, u_max),
            max_c_drift: max_drift,
            endpoint_gap: curve.endpoint_gap(),
        },
        curve,
    ))
}

#[derive(Clone, Debug)]
pub struct ValidateConfig {
    pub space: SpaceKind,
    pub alpha: f64,
    pub c: Option<f64>,
    pub tol_residual: f64,
    pub tol_drift: f64,
    pub check_closed: bool,
}

impl ValidateConfig {
    pub fn new(space: SpaceKind, alpha: f64) -> Self {
        Self {
            space,
            alpha,
            c: None,
            tol_residual: 1e-6,
            tol_drift: 1e-6,
            check_closed: false,
        }
    }
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub space: SpaceKind,
    pub alpha: f64,
    pub n_samples: usize,
    pub resampled: bool,
    pub unit_speed_deviation: f64,
    pub max_el_residual: f64,
    pub first_integral_c: f64,
    pub first_integral_drift: f64,
    pub closed: bool,
    pub closed_constraints: Option<ClosedCurveReport>,
    pub tol_residual: f64,
    pub tol_drift: f64,
    pub passed: bool,
}

/// Validates a sampled curve against the stationarity characterization.
pub fn cmd_validate(cfg: &ValidateConfig, input: &CurveSamples) -> Result<ValidateReport> {
    let mut resampled = false;
    let mut work = input.clone();
    let deviation = work.unit_speed_deviation();
    if deviation > 1e-6 || !work.spacing_uniform() {
        work = reparametrize_by_chords(&work)?;
        work = resample_arclength(&work, work.len().max(512))?;
        resampled = true;
    }

    let closed = work.is_closed(1e-6);
    let states = if closed {
        work.states_from_fd_periodic()?
    } else {
        work.states_from_fd()?
    };
    let margin = if closed { 0 } else { 2.min(states.len() / 2) };
    let interior = &states[margin..states.len() - margin];

    let max_el_residual = interior
        .iter()
        .map(|s| {
            crate::stationary::el_residual(cfg.space, cfg.alpha, s)
                .map(f64::abs)
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max);

    let cs: Vec<f64> = interior
        .iter()
        .map(|s| {
            let w = cfg.space.warp(s.u);
            let speed = s.speed_sq(cfg.space).sqrt();
            s.u.powf(cfg.alpha) * w * (w * s.dv / speed)
        })
        .collect();
    let c_ref = cfg.c.unwrap_or_else(|| {
        let mut sorted = cs.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted[sorted.len() / 2]
    });
    let first_integral_drift = cs
        .iter()
        .map(|&x| (x - c_ref).abs())
        .fold(0.0, f64::max)
        / c_ref.abs().max(1e-300);

    let closed_constraints = if closed && cfg.check_closed {
        let opts = ClosedCheckOptions {
            residual_tol: cfg.tol_residual,
            ..Default::default()
        };
        match check_closed_curve_constraints(cfg.space, cfg.alpha, &work, &opts) {
            Ok(rep) => Some(rep),
            Err(Error::NotStationary { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let mut passed = max_el_residual <= cfg.tol_residual && first_integral_drift <= cfg.tol_drift;
    if cfg.check_closed && closed {
        passed &= closed_constraints.as_ref().map(|r| r.passed).unwrap_or(false);
    }

    Ok(ValidateReport {
        space: cfg.space,
        alpha: cfg.alpha,
        n_samples: input.len(),
        resampled,
        unit_speed_deviation: deviation,
        max_el_residual,
        first_integral_c: c_ref,
        first_integral_drift,
        closed,
        closed_constraints,
        tol_residual: cfg.tol_residual,
        tol_drift: cfg.tol_drift,
        passed,
    })
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub curve: ConstCurvCurve,
    pub pole_circle_radius: Option<f64>,
    pub passes_through_pole: bool,
    pub stationary_for_alpha: Option<(f64, bool)>,
    /// Radius solving `circle_alpha(r) = alpha`, when the queried alpha
    /// admits a stationary circle.
    pub stationary_circle_radius: Option<f64>,
}

pub fn cmd_classify(
    space: SpaceKind,
    a: crate::geometry::AmbientVec,
    tau: f64,
    alpha: Option<f64>,
) -> Result<ClassifyReport> {
    let curve = classify::classify_constant_curvature(space, a, tau)?;
    let stationary_for_alpha =
        alpha.map(|al| (al, classify::is_stationary_constant_curvature(&curve, al)));
    let stationary_circle_radius = alpha.and_then(|al| classify::invert_circle_alpha(space, al));
    Ok(ClassifyReport {
        curve,
        pole_circle_radius: curve.pole_circle_radius(),
        passes_through_pole: curve.passes_through_pole(),
        stationary_for_alpha,
        stationary_circle_radius,
    })
}

#[derive(Serialize)]
pub struct EnergyOutput {
    pub space: SpaceKind,
    pub alpha: f64,
    pub report: EnergyReport,
}

pub fn cmd_energy(space: SpaceKind, alpha: f64, input: &CurveSamples) -> Result<EnergyOutput> {
    Ok(EnergyOutput {
        space,
        alpha,
        report: energy(space, alpha, input)?,
    })
}

#[derive(Clone, Debug)]
pub struct MinimizeConfig {
    pub space: SpaceKind,
    pub alpha: f64,
    pub p1: PolarPoint,
    pub p2: PolarPoint,
    pub n_vertices: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub starts: usize,
    pub seed: u64,
    pub jobs: usize,
    pub dp_grid: Option<(usize, usize)>,
    pub out_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndpointScenario {
    SameRay,
    ThroughPole,
    SouthPoleExploratory,
    General,
}

/// Classifies the endpoint pair relative to the pole.
pub fn detect_scenario(space: SpaceKind, p1: PolarPoint, p2: PolarPoint) -> EndpointScenario {
    let tau = 2.0 * std::f64::consts::PI;
    let dv = (p2.v - p1.v).rem_euclid(tau);
    if dv < 1e-9 || tau - dv < 1e-9 {
        EndpointScenario::SameRay
    } else if (dv - std::f64::consts::PI).abs() < 1e-9 {
        if space == SpaceKind::Spherical && p1.u + p2.u > std::f64::consts::PI {
            EndpointScenario::SouthPoleExploratory
        } else {
            EndpointScenario::ThroughPole
        }
    } else {
        EndpointScenario::General
    }
}

#[derive(Serialize)]
pub struct MinimizeReport {
    pub space: SpaceKind,
    pub alpha: f64,
    pub scenario: EndpointScenario,
    pub seed: u64,
    pub exploratory: bool,
    pub note: Option<String>,
    pub geodesic_reference_energy: f64,
    pub best_energy: f64,
    pub energies: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub dp_energy: Option<f64>,
    pub south_pole: Option<SouthPoleExploration>,
}

/// Multi-start descent between two endpoints with scenario-aware reporting.
pub fn cmd_minimize(cfg: &MinimizeConfig) -> Result<MinimizeReport> {
    let scenario = detect_scenario(cfg.space, cfg.p1, cfg.p2);
    if scenario == EndpointScenario::ThroughPole && cfg.alpha <= 0.0 {
        return Err(Error::HypothesisViolated(format!(
            "through-pole minimization assumes alpha > 0 (got alpha = {}); \
             the statement is unproven otherwise",
            cfg.alpha
        )));
    }
    let (exploratory, note) = match scenario {
        EndpointScenario::SouthPoleExploratory => (
            true,
            Some(
                "no theorem covers opposite rays with u1 + u2 > pi; energies are exploratory data"
                    .to_string(),
            ),
        ),
        _ => (false, None),
    };

    let geo = geodesic_between(cfg.space, cfg.p1, cfg.p2, (2 * cfg.n_vertices).max(513))?;
    let reference = energy(cfg.space, cfg.alpha, &geo)?.value;

    let prob = MinimizeProblem::new(cfg.space, cfg.alpha, cfg.p1, cfg.p2)?
        .with_vertices(cfg.n_vertices)
        .with_iterations(cfg.max_iters, cfg.grad_tol);
    let mut best: Option<crate::minimize::MinimizeResult> = None;
    let mut energies = Vec::new();
    for k in 0..cfg.starts {
        let init = perturbed_init(cfg.space, &geo, cfg.seed.wrapping_add(k as u64), 0.05, 0.15);
        let res = minimize_polyline(&prob, &init)?;
        energies.push(res.energy);
        let better = best.as_ref().map(|b| res.energy < b.energy).unwrap_or(true);
        if better {
            best = Some(res);
        }
    }
    let best = best.expect("at least one start");

    let dp_energy = match cfg.dp_grid {
        Some(grid) => Some(dp_grid_min(cfg.space, cfg.alpha, cfg.p1, cfg.p2, grid)?),
        None => None,
    };
    let south_pole = if scenario == EndpointScenario::SouthPoleExploratory {
        Some(explore_south_pole(
            cfg.alpha, cfg.p1.u, cfg.p2.u, 2, cfg.seed,
        )?)
    } else {
        None
    };

    if let Some(path) = &cfg.out_csv {
        csvio::write_curve(path, &best.curve)?;
    }

    Ok(MinimizeReport {
        space: cfg.space,
        alpha: cfg.alpha,
        scenario,
        seed: cfg.seed,
        exploratory,
        note,
        geodesic_reference_energy: reference,
        best_energy: best.energy,
        energies,
        converged: best.converged,
        iterations: best.iterations,
        gradient_norm: best.gradient_norm,
        dp_energy,
        south_pole,
    })
}

pub fn cmd_plot(input: &CurveSamples) -> Result<String> {
    svg::plot_curves(input.space, &[input])
}
