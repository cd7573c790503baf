//! Discrete curves and their differential quantities.
//!
//! Curves live intrinsically in polar coordinates `(u, v)` about the pole;
//! ambient vectors are derived views. The normal convention is fixed once
//! for the whole crate: `n = gamma' x_eps gamma / |gamma'|` on the
//! hyperboloid and the sphere (in coordinates the z-component carries the
//! factor `-eps v' w^2`), and the clockwise-rotated tangent on the plane.
//! With this convention `<n, xi> = w(u) v' / |gamma'|` in every space, and
//! all signed quantities inherit the orientation consistently.

use crate::error::{Error, Result};
use crate::geometry::{pairwise_distance, AmbientVec, PolarPoint, SpaceKind};
use crate::numerics;

const DEGENERATE_SPEED: f64 = 1e-14;
const UNIT_SPEED_TOL: f64 = 1e-6;

/// One 2-jet of a curve in polar coordinates.
#[derive(Clone, Copy, Debug)]
pub struct CurveState {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub d2u: f64,
    pub d2v: f64,
}

impl CurveState {
    pub fn new(u: f64, v: f64, du: f64, dv: f64, d2u: f64, d2v: f64) -> Self {
        Self {
            u,
            v,
            du,
            dv,
            d2u,
            d2v,
        }
    }

    /// Squared coordinate speed `u'^2 + w(u)^2 v'^2`.
    pub fn speed_sq(&self, space: SpaceKind) -> f64 {
        let w = space.warp(self.u);
        self.du * self.du + w * w * self.dv * self.dv
    }
}

/// A sampled curve: arc length `t`, coordinates `u`, `v`, optional turning
/// angle `sigma` (`u' = cos sigma`, `w(u) v' = sin sigma`), and optional
/// per-sample diagnostics.
#[derive(Clone, Debug)]
pub struct CurveSamples {
    pub space: SpaceKind,
    pub t: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub sigma: Option<Vec<f64>>,
    pub el_residual: Option<Vec<f64>>,
    pub c_drift: Option<Vec<f64>>,
}

impl CurveSamples {
    pub fn new(space: SpaceKind, t: Vec<f64>, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::TooFewSamples {
                got: t.len(),
                need: 2,
            });
        }
        if t.len() != u.len() || t.len() != v.len() {
            return Err(Error::InvalidParameter(format!(
                "array lengths differ: t={}, u={}, v={}",
                t.len(),
                u.len(),
                v.len()
            )));
        }
        for w in t.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidParameter(
                    "t must be strictly increasing".into(),
                ));
            }
        }
        for &ui in &u {
            space.check_u(ui)?;
        }
        Ok(Self {
            space,
            t,
            u,
            v,
            sigma: None,
            el_residual: None,
            c_drift: None,
        })
    }

    pub fn with_sigma(mut self, sigma: Vec<f64>) -> Self {
        debug_assert_eq!(sigma.len(), self.t.len());
        self.sigma = Some(sigma);
        self
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn point(&self, i: usize) -> PolarPoint {
        PolarPoint::new(self.u[i], self.v[i])
    }

    pub fn total_length(&self) -> f64 {
        self.t[self.t.len() - 1] - self.t[0]
    }

    /// Intrinsic gap between the first and last sample.
    pub fn endpoint_gap(&self) -> f64 {
        pairwise_distance(self.space, self.point(0), self.point(self.len() - 1))
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.endpoint_gap() <= tol
    }

    /// Sum of intrinsic chord lengths of the sample polyline.
    pub fn chord_length(&self) -> f64 {
        (0..self.len() - 1)
            .map(|i| pairwise_distance(self.space, self.point(i), self.point(i + 1)))
            .sum()
    }

    /// True when `t` spacing is uniform within `1e-9` relative.
    pub fn spacing_uniform(&self) -> bool {
        let h = (self.t[self.len() - 1] - self.t[0]) / (self.len() - 1) as f64;
        self.t
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(1e-300))
    }

    /// Max deviation of `u'^2 + w(u)^2 v'^2` from 1 over interior samples,
    /// by finite differences. Large values mean `t` is not arc length.
    pub fn unit_speed_deviation(&self) -> f64 {
        let states = match self.states_from_fd() {
            Ok(s) => s,
            Err(_) => return f64::INFINITY,
        };
        let n = states.len();
        let interior = &states[2.min(n - 1)..n.saturating_sub(2).max(1)];
        interior
            .iter()
            .map(|s| (s.speed_sq(self.space) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Differentiates the samples with 4th-order stencils (2nd-order at open
    /// ends). Requires uniform spacing. For closed curves use
    /// [`CurveSamples::states_from_fd_periodic`].
    pub fn states_from_fd(&self) -> Result<Vec<CurveState>> {
        if self.len() < 3 {
            return Err(Error::TooFewSamples {
                got: self.len(),
                need: 3,
            });
        }
        let h = (self.t[self.len() - 1] - self.t[0]) / (self.len() - 1) as f64;
        let dev = self
            .t
            .windows(2)
            .map(|w| ((w[1] - w[0]) - h).abs())
            .fold(0.0, f64::max);
        if dev > 1e-9 * h {
            return Err(Error::NonUniformSpacing { dev });
        }
        let du = numerics::derivative_uniform(&self.u, h);
        let dv = numerics::derivative_uniform(&self.v, h);
        let d2u = numerics::second_derivative_uniform(&self.u, h);
        let d2v = numerics::second_derivative_uniform(&self.v, h);
        Ok((0..self.len())
            .map(|i| CurveState::new(self.u[i], self.v[i], du[i], dv[i], d2u[i], d2v[i]))
            .collect())
    }

    /// Periodic differentiation for closed curves. The final sample is
    /// treated as the duplicate of the first; `v` may accumulate a full turn,
    /// which is removed before wrapping. Returns one state per sample except
    /// the duplicated closer.
    pub fn states_from_fd_periodic(&self) -> Result<Vec<CurveState>> {
        if self.len() < 6 {
            return Err(Error::TooFewSamples {
                got: self.len(),
                need: 6,
            });
        }
        let n = self.len() - 1;
        let h = (self.t[self.len() - 1] - self.t[0]) / n as f64;
        let u: Vec<f64> = self.u[..n].to_vec();
        let turn = self.v[self.len() - 1] - self.v[0];
        // remove the accumulated winding so v is periodic on the reduced grid
        let v: Vec<f64> = (0..n)
            .map(|i| self.v[i] - turn * (i as f64) / (n as f64))
            .collect();
        let du = numerics::derivative_periodic(&u, h);
        let mut dv = numerics::derivative_periodic(&v, h);
        let d2u = numerics::second_derivative_periodic(&u, h);
        let d2v = numerics::second_derivative_periodic(&v, h);
        for d in dv.iter_mut() {
            *d += turn / (n as f64 * h);
        }
        Ok((0..n)
            .map(|i| CurveState::new(self.u[i], self.v[i], du[i], dv[i], d2u[i], d2v[i]))
            .collect())
    }
}

fn speed(space: SpaceKind, s: &CurveState) -> Result<f64> {
    let sp = s.speed_sq(space).sqrt();
    if sp < DEGENERATE_SPEED {
        Err(Error::DegenerateState { speed: sp })
    } else {
        Ok(sp)
    }
}

/// Unit normal of the curve at a jet point, in ambient coordinates.
///
/// On the hyperboloid and the sphere this is `gamma' x_eps gamma / |gamma'|`;
/// on the plane the tangent rotated clockwise. Unit for the space metric and
/// orthogonal to both the tangent and the position vector.
pub fn unit_normal(space: SpaceKind, s: &CurveState) -> Result<AmbientVec> {
    let sp = speed(space, s)?;
    let (sv, cv) = s.v.sin_cos();
    let w = space.warp(s.u);
    match space {
        SpaceKind::Euclidean => {
            // gamma' = (u' cos v - u v' sin v, u' sin v + u v' cos v)
            let gx = s.du * cv - s.u * s.dv * sv;
            let gy = s.du * sv + s.u * s.dv * cv;
            Ok(AmbientVec::new(gy / sp, -gx / sp, 0.0))
        }
        _ => {
            let wp = space.warp_prime(s.u);
            let eps = space.epsilon();
            Ok(AmbientVec::new(
                (s.du * sv + s.dv * w * wp * cv) / sp,
                (s.dv * w * wp * sv - s.du * cv) / sp,
                -eps * s.dv * w * w / sp,
            ))
        }
    }
}

/// Geodesic curvature `kappa = <gamma'', n>_eps / |gamma'|^2` in the crate's
/// orientation. One coordinate expression covers all three spaces:
///
/// `kappa = -(v' w'(u) (2u'^2 + v'^2 w^2) + w (u'v'' - u''v')) / |gamma'|^3`.
pub fn curvature(space: SpaceKind, s: &CurveState) -> Result<f64> {
    let sp = speed(space, s)?;
    let w = space.warp(s.u);
    let wp = space.warp_prime(s.u);
    let num = s.dv * wp * (2.0 * s.du * s.du + s.dv * s.dv * w * w)
        + w * (s.du * s.d2v - s.d2u * s.dv);
    Ok(-num / (sp * sp * sp))
}

/// `<n, xi>` where `xi` is the unit ray tangent: equals `w(u) v' / |gamma'|`
/// in every space under the crate's normal convention.
pub fn normal_ray_dot(space: SpaceKind, s: &CurveState) -> Result<f64> {
    let sp = speed(space, s)?;
    Ok(space.warp(s.u) * s.dv / sp)
}

/// Weighted curvature `kappa - alpha <n, xi> / u` for the density exponent
/// `alpha log d`. Vanishes exactly on stationary curves.
pub fn weighted_curvature(space: SpaceKind, alpha: f64, s: &CurveState) -> Result<f64> {
    space.check_u(s.u)?;
    Ok(curvature(space, s)? - alpha * normal_ray_dot(space, s)? / s.u)
}

/// Turning angle of a unit-speed state: `sigma = atan2(w(u) v', u')`.
pub fn sigma_of_state(space: SpaceKind, s: &CurveState) -> Result<f64> {
    let sq = s.speed_sq(space);
    if (sq - 1.0).abs() > UNIT_SPEED_TOL {
        return Err(Error::NotUnitSpeed { speed_sq: sq });
    }
    Ok((space.warp(s.u) * s.dv).atan2(s.du))
}

/// Resamples to `n` nodes equally spaced in the stored arc-length parameter,
/// interpolating `u` and `v` linearly. The turning angle, if present, is
/// recomputed by finite differences afterwards.
pub fn resample_arclength(c: &CurveSamples, n: usize) -> Result<CurveSamples> {
    if n < 2 {
        return Err(Error::TooFewSamples { got: n, need: 2 });
    }
    if c.len() < 2 {
        return Err(Error::TooFewSamples {
            got: c.len(),
            need: 2,
        });
    }
    let t0 = c.t[0];
    let t1 = c.t[c.len() - 1];
    let t: Vec<f64> = (0..n)
        .map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64)
        .collect();
    let u: Vec<f64> = t.iter().map(|&x| numerics::interp_linear(&c.t, &c.u, x)).collect();
    let v: Vec<f64> = t.iter().map(|&x| numerics::interp_linear(&c.t, &c.v, x)).collect();
    let mut out = CurveSamples::new(c.space, t, u, v)?;
    if c.sigma.is_some() {
        if let Ok(states) = out.states_from_fd() {
            let sigma = states
                .iter()
                .map(|s| (out.space.warp(s.u) * s.dv).atan2(s.du))
                .collect();
            out.sigma = Some(sigma);
        }
    }
    Ok(out)
}

/// Rebuilds the arc-length column from cumulative intrinsic chord lengths,
/// for inputs whose `t` is not trustworthy (non-unit-speed CSVs).
pub fn reparametrize_by_chords(c: &CurveSamples) -> Result<CurveSamples> {
    let mut t = Vec::with_capacity(c.len());
    t.push(0.0);
    for i in 0..c.len() - 1 {
        let d = pairwise_distance(c.space, c.point(i), c.point(i + 1));
        if d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "coincident samples {i} and {} cannot be reparametrized",
                i + 1
            )));
        }
        t.push(t[i] + d);
    }
    CurveSamples::new(c.space, t, c.u.clone(), c.v.clone())
}

/// Samples the circle `u = r` with `m` nodes over a full turn, unit speed,
/// counterclockwise. The closing sample duplicates the first.
pub fn circle_samples(space: SpaceKind, r: f64, m: usize) -> Result<CurveSamples> {
    space.check_u(r)?;
    let w = space.warp(r);
    let total = 2.0 * std::f64::consts::PI * w;
    let t: Vec<f64> = (0..=m).map(|i| total * i as f64 / m as f64).collect();
    let u = vec![r; m + 1];
    let v: Vec<f64> = (0..=m)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / m as f64)
        .collect();
    let sigma = vec![std::f64::consts::FRAC_PI_2; m + 1];
    Ok(CurveSamples::new(space, t, u, v)?.with_sigma(sigma))
}

/// Exact unit-speed jet of the circle `u = r` at angle `v`.
pub fn circle_state(space: SpaceKind, r: f64, v: f64) -> CurveState {
    let w = space.warp(r);
    CurveState::new(r, v, 0.0, 1.0 / w, 0.0, 0.0)
}

/// Exact unit-speed jet of the radial geodesic `v = v0` at distance `u`.
pub fn radial_state(u: f64, v0: f64) -> CurveState {
    CurveState::new(u, v0, 1.0, 0.0, 0.0, 0.0)
}
