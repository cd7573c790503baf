//! Construction and validation of stationary curves of the pole-weighted
//! energy.
//!
//! A curve is stationary exactly when `kappa = alpha <n, xi> / u`, which in
//! the turning-angle frame (`u' = cos sigma`, `w(u) v' = sin sigma`) reduces
//! to the first-order system
//!
//! ```text
//! u'     = cos(sigma)
//! v'     = sin(sigma) / w(u)
//! sigma' = -sin(sigma) (w'(u)/w(u) + alpha/u)
//! ```
//!
//! whose first integral is `c = u^alpha w(u) sin(sigma)`. The same curves
//! admit quadrature parametrizations `t(u)`, `v(u)` with radicand
//! `u^(2 alpha) w(u)^2 - c^2`, positive exactly on the admissible domain
//! `{f > c}` for `f(u) = u^alpha w(u)`.

use serde::Serialize;

use crate::curves::{self, CurveSamples, CurveState};
use crate::error::{Error, Result};
use crate::geometry::SpaceKind;
use crate::numerics::{adaptive_simpson, bisect};

/// Pole / antipode proximity guard for trajectory truncation.
pub const POLE_GUARD: f64 = 1e-6;

/// Max relative first-integral drift tolerated in a single step before the
/// step is subdivided.
const STEP_DRIFT_LIMIT: f64 = 1e-6;

/// Integration branch sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Parameters of one stationary-curve trajectory.
#[derive(Clone, Copy, Debug)]
pub struct StationaryParams {
    pub space: SpaceKind,
    pub alpha: f64,
    /// First-integral constant, strictly positive.
    pub c: f64,
    pub branch_t: Sign,
    pub branch_v: Sign,
}

impl StationaryParams {
    pub fn new(space: SpaceKind, alpha: f64, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
        }
        if alpha == 0.0 {
            return Err(Error::InvalidParameter(
                "alpha = 0 is the length functional; its critical points are plain geodesics".into(),
            ));
        }
        Ok(Self {
            space,
            alpha,
            c,
            branch_t: Sign::Plus,
            branch_v: Sign::Plus,
        })
    }

    pub fn with_branches(mut self, branch_t: Sign, branch_v: Sign) -> Self {
        self.branch_t = branch_t;
        self.branch_v = branch_v;
        self
    }
}

/// `f(u) = u^alpha w(u)`, the profile whose super-level set `{f > c}` is the
/// admissible domain.
#[inline]
pub fn profile(space: SpaceKind, alpha: f64, u: f64) -> f64 {
    u.powf(alpha) * space.warp(u)
}

/// `f'(u) = u^(alpha-1) (alpha w(u) + u w'(u))`.
#[inline]
pub fn profile_prime(space: SpaceKind, alpha: f64, u: f64) -> f64 {
    u.powf(alpha - 1.0) * (alpha * space.warp(u) + u * space.warp_prime(u))
}

/// Pointwise Euler-Lagrange residual `kappa - alpha <n, xi> / u`; zero (up to
/// orientation) exactly on stationary jets.
pub fn el_residual(space: SpaceKind, alpha: f64, s: &CurveState) -> Result<f64> {
    space.check_u(s.u)?;
    curves::weighted_curvature(space, alpha, s)
}

/// First integral `u^alpha w(u) sin(sigma)`, conserved along stationary
/// trajectories.
#[inline]
pub fn first_integral(space: SpaceKind, alpha: f64, u: f64, sigma: f64) -> f64 {
    profile(space, alpha, u) * sigma.sin()
}

/// Right-hand side of the second-order radial ODE along a trajectory with
/// first integral `c`:
///
/// `u'' = c^2 f'(u) / f(u)^3`
///
/// equivalently `c^2 (alpha + u w'/w) / (u^(2 alpha + 1) w^2)`. The sign of
/// `u''` is the sign of `f'`, so turning points on a decreasing stretch of
/// `f` are maxima of `u` and vice versa.
pub fn radial_acceleration(space: SpaceKind, alpha: f64, c: f64, u: f64) -> Result<f64> {
    space.check_u(u)?;
    let f = profile(space, alpha, u);
    if f * f < c * c * (1.0 - 1e-12) {
        return Err(Error::OutsideDomain { u });
    }
    Ok(c * c * profile_prime(space, alpha, u) / (f * f * f))
}

#[derive(Clone, Copy)]
struct OdeState {
    u: f64,
    v: f64,
    sigma: f64,
}

fn rhs(space: SpaceKind, alpha: f64, y: &OdeState) -> (f64, f64, f64) {
    let (ss, cs) = y.sigma.sin_cos();
    let w = space.warp(y.u);
    let wp = space.warp_prime(y.u);
    (cs, ss / w, -ss * (wp / w + alpha / y.u))
}

fn rk4_step(space: SpaceKind, alpha: f64, y: &OdeState, h: f64) -> OdeState {
    let k1 = rhs(space, alpha, y);
    let y2 = OdeState {
        u: y.u + 0.5 * h * k1.0,
        v: y.v + 0.5 * h * k1.1,
        sigma: y.sigma + 0.5 * h * k1.2,
    };
    let k2 = rhs(space, alpha, &y2);
    let y3 = OdeState {
        u: y.u + 0.5 * h * k2.0,
        v: y.v + 0.5 * h * k2.1,
        sigma: y.sigma + 0.5 * h * k2.2,
    };
    let k3 = rhs(space, alpha, &y3);
    let y4 = OdeState {
        u: y.u + h * k3.0,
        v: y.v + h * k3.1,
        sigma: y.sigma + h * k3.2,
    };
    let k4 = rhs(space, alpha, &y4);
    OdeState {
        u: y.u + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        v: y.v + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        sigma: y.sigma + h / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2),
    }
}

/// Advances one nominal step, subdividing when the per-step first-integral
/// drift exceeds the limit. Returns `None` when the trajectory crosses the
/// pole or antipode guard mid-step.
fn guarded_step(
    space: SpaceKind,
    alpha: f64,
    c: f64,
    y: &OdeState,
    h: f64,
) -> Result<Option<OdeState>> {
    let guard_hi = space.u_max() - POLE_GUARD;
    let mut substeps = 1usize;
    for _ in 0..=24 {
        let hs = h / substeps as f64;
        let mut cur = *y;
        let mut ok = true;
        for _ in 0..substeps {
            let fi_before = first_integral(space, alpha, cur.u, cur.sigma);
            let next = rk4_step(space, alpha, &cur, hs);
            if !(next.u > POLE_GUARD && next.u < guard_hi) {
                return Ok(None);
            }
            let fi_after = first_integral(space, alpha, next.u, next.sigma);
            if ((fi_after - fi_before) / c).abs() > STEP_DRIFT_LIMIT {
                ok = false;
                break;
            }
            cur = next;
        }
        if ok {
            return Ok(Some(cur));
        }
        substeps *= 2;
    }
    Err(Error::StepTooLarge {
        drift: STEP_DRIFT_LIMIT,
    })
}

/// Jet of the trajectory at an ODE state, used for per-sample residual
/// diagnostics.
fn jet_of(space: SpaceKind, alpha: f64, y: &OdeState) -> CurveState {
    let (ss, cs) = y.sigma.sin_cos();
    let w = space.warp(y.u);
    let wp = space.warp_prime(y.u);
    let dsigma = -ss * (wp / w + alpha / y.u);
    let d2u = -dsigma * ss;
    let d2v = cs * (dsigma * w - wp * ss) / (w * w);
    CurveState::new(y.u, y.v, cs, ss / w, d2u, d2v)
}

/// Integrates the stationary system with classical fixed-step RK4 from the
/// seed `(u0, v0, sigma0)` over the given arc length.
///
/// `branch_t = Minus` starts on parity-reversed radial direction
/// (`sigma0 -> pi - sigma0`); `branch_v = Minus` emits the mirror image
/// `v -> 2 v0 - v`. Per-sample diagnostics carry the EL residual of the
/// emitted jet and the relative first-integral drift. Trajectories are
/// truncated (never continued) at the pole/antipode guards.
pub fn integrate_stationary(
    p: &StationaryParams,
    u0: f64,
    v0: f64,
    sigma0: f64,
    step: f64,
    total_length: f64,
) -> Result<CurveSamples> {
    let space = p.space;
    space.check_u(u0)?;
    if !(step > 0.0 && total_length > step) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < step < total_length, got step = {step}, total_length = {total_length}"
        )));
    }
    let fi0 = first_integral(space, p.alpha, u0, sigma0);
    if (fi0 - p.c).abs() > 1e-9 * p.c.max(1.0) {
        return Err(Error::InconsistentInitialData {
            got: fi0,
            expected: p.c,
        });
    }
    if profile(space, p.alpha, u0) < p.c * (1.0 - 1e-9) {
        return Err(Error::OutsideDomain { u: u0 });
    }

    let sigma_start = match p.branch_t {
        Sign::Plus => sigma0,
        Sign::Minus => std::f64::consts::PI - sigma0,
    };
    let bv = p.branch_v.factor();

    // uniform spacing at most the requested step
    let n_steps = (total_length / step).ceil() as usize;
    let h = total_length / n_steps as f64;
    let mut t = Vec::with_capacity(n_steps + 1);
    let mut us = Vec::with_capacity(n_steps + 1);
    let mut vs = Vec::with_capacity(n_steps + 1);
    let mut sigmas = Vec::with_capacity(n_steps + 1);
    let mut residuals = Vec::with_capacity(n_steps + 1);
    let mut drifts = Vec::with_capacity(n_steps + 1);

    let mut y = OdeState {
        u: u0,
        v: v0,
        sigma: sigma_start,
    };
    let mut push = |ti: f64, y: &OdeState| {
        t.push(ti);
        us.push(y.u);
        vs.push(v0 + bv * (y.v - v0));
        sigmas.push((bv * y.sigma.sin()).atan2(y.sigma.cos()));
        let jet = jet_of(space, p.alpha, y);
        residuals.push(el_residual(space, p.alpha, &jet).unwrap_or(f64::NAN));
        drifts.push((first_integral(space, p.alpha, y.u, y.sigma) - p.c) / p.c);
    };
    push(0.0, &y);

    for i in 1..=n_steps {
        match guarded_step(space, p.alpha, p.c, &y, h)? {
            Some(next) => {
                y = next;
                push(i as f64 * h, &y);
            }
            None => break,
        }
    }

    if t.len() < 2 {
        return Err(Error::PoleTouching { u: y.u });
    }
    let mut out = CurveSamples::new(space, t, us, vs)?.with_sigma(sigmas);
    out.el_residual = Some(residuals);
    out.c_drift = Some(drifts);
    Ok(out)
}

/// One open interval of the admissible domain with the set of distinguished
/// radii that generated the case split.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleDomain {
    /// Open intervals on which `f(u) > c`, disjoint and sorted.
    pub intervals: Vec<(f64, f64)>,
    /// Roots of `f'` and of `f(u) = c`, sorted.
    pub critical_points: Vec<f64>,
}

impl AdmissibleDomain {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, u: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo < u && u < hi)
    }
}

const ROOT_XTOL: f64 = 1e-12;

/// Solves `f(u) = c` on a bracket where `f` is monotone.
fn root_on(space: SpaceKind, alpha: f64, c: f64, lo: f64, hi: f64) -> f64 {
    bisect(|u| profile(space, alpha, u) - c, lo, hi, ROOT_XTOL)
}

/// Expands `hi` by doubling until `f(hi) - c` has the requested sign.
fn expand_until(space: SpaceKind, alpha: f64, c: f64, mut hi: f64, want_above: bool) -> f64 {
    for _ in 0..200 {
        let above = profile(space, alpha, hi) > c;
        if above == want_above {
            return hi;
        }
        hi *= 2.0;
    }
    hi
}

fn shrink_until(space: SpaceKind, alpha: f64, c: f64, mut lo: f64, want_above: bool) -> f64 {
    for _ in 0..2000 {
        let above = profile(space, alpha, lo) > c;
        if above == want_above {
            return lo;
        }
        lo *= 0.5;
    }
    lo
}

/// Computes the admissible domain `{u : u^alpha w(u) > c}` following the
/// monotonicity structure of `f`: the interior critical point, when present,
/// solves `alpha w(u) + u w'(u) = 0`.
pub fn admissible_domain(space: SpaceKind, alpha: f64, c: f64) -> Result<AdmissibleDomain> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let mut intervals = Vec::new();
    let mut criticals = Vec::new();
    let inf = f64::INFINITY;
    let near_minus_one = (alpha + 1.0).abs() < 1e-12;

    match space {
        SpaceKind::Hyperbolic => {
            if near_minus_one {
                // f = sinh(u)/u increasing with limit 1 at 0
                if c <= 1.0 {
                    intervals.push((0.0, inf));
                } else {
                    let hi = expand_until(space, alpha, c, 1.0, true);
                    let u0 = root_on(space, alpha, c, 1e-8, hi);
                    criticals.push(u0);
                    intervals.push((u0, inf));
                }
            } else if alpha > -1.0 {
                // f increasing from 0
                let hi = expand_until(space, alpha, c, 1.0, true);
                let lo = shrink_until(space, alpha, c, hi.min(1.0), false);
                let u0 = root_on(space, alpha, c, lo, hi);
                criticals.push(u0);
                intervals.push((u0, inf));
            } else {
                // unimodal from infinity; interior minimum at u coth(u) = -alpha
                let hi = {
                    let mut h = 1.0_f64;
                    while h * h.tanh().recip() < -alpha {
                        h *= 2.0;
                    }
                    h
                };
                let umin = bisect(|u| u / u.tanh() + alpha, 1e-12, hi, ROOT_XTOL);
                criticals.push(umin);
                let fmin = profile(space, alpha, umin);
                if c < fmin {
                    intervals.push((0.0, inf));
                } else if c == fmin {
                    intervals.push((0.0, umin));
                    intervals.push((umin, inf));
                } else {
                    let a = root_on(space, alpha, c, shrink_until(space, alpha, c, umin, true), umin);
                    let b = root_on(space, alpha, c, umin, expand_until(space, alpha, c, umin, true));
                    criticals.push(a);
                    criticals.push(b);
                    intervals.push((0.0, a));
                    intervals.push((b, inf));
                }
            }
        }
        SpaceKind::Spherical => {
            let pi = std::f64::consts::PI;
            if near_minus_one {
                // f = sin(u)/u decreasing from 1 to 0
                if c < 1.0 {
                    let u0 = root_on(space, alpha, c, 1e-12, pi - 1e-12);
                    criticals.push(u0);
                    intervals.push((0.0, u0));
                }
            } else if alpha > -1.0 {
                // unimodal with maximum at alpha + u cot(u) = 0
                let ubar = bisect(|u| alpha + u / u.tan(), 1e-9, pi - 1e-9, ROOT_XTOL);
                criticals.push(ubar);
                let fmax = profile(space, alpha, ubar);
                if c < fmax {
                    let a = root_on(space, alpha, c, 1e-12, ubar);
                    let b = root_on(space, alpha, c, ubar, pi - 1e-12);
                    criticals.push(a);
                    criticals.push(b);
                    intervals.push((a, b));
                }
            } else {
                // f decreasing from infinity to 0
                let u0 = root_on(space, alpha, c, 1e-12, pi - 1e-12);
                criticals.push(u0);
                intervals.push((0.0, u0));
            }
        }
        SpaceKind::Euclidean => {
            // f = u^(alpha + 1)
            if near_minus_one {
                if c < 1.0 {
                    intervals.push((0.0, inf));
                }
            } else {
                let u0 = c.powf(1.0 / (alpha + 1.0));
                criticals.push(u0);
                if alpha > -1.0 {
                    intervals.push((u0, inf));
                } else {
                    intervals.push((0.0, u0));
                }
            }
        }
    }

    criticals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(AdmissibleDomain {
        intervals,
        critical_points: criticals,
    })
}

/// Collar below which a panel endpoint counts as a radicand root and the
/// square-root substitution takes over.
const SINGULAR_REL: f64 = 1e-9;

fn radicand(space: SpaceKind, alpha: f64, c: f64, u: f64) -> f64 {
    let f = profile(space, alpha, u);
    (f - c) * (f + c)
}

/// Integrates `A(s)/sqrt(R(s))` over `[a, b]` where `R` vanishes linearly at
/// the endpoint `root` (one of `a` or `b`): substituting `s = root -+ tau^2`
/// removes the singularity and a small analytic collar covers the root
/// itself.
fn integrate_singular_panel<F: Fn(f64) -> f64>(
    space: SpaceKind,
    alpha: f64,
    c: f64,
    a_fun: &F,
    root: f64,
    other: f64,
    tol: f64,
) -> f64 {
    let dir = if other > root { 1.0 } else { -1.0 };
    let span = (other - root).abs();
    let collar = (span * 1e-9).max(1e-13);
    // dR/ds at the root, oriented towards the admissible side
    let rp = 2.0 * profile(space, alpha, root) * profile_prime(space, alpha, root) * dir;
    let head = if rp > 0.0 {
        2.0 * a_fun(root + dir * collar) * (collar / rp).sqrt()
    } else {
        0.0
    };
    let tau_lo = collar.sqrt();
    let tau_hi = span.sqrt();
    let body = adaptive_simpson(
        |tau| {
            let s = root + dir * tau * tau;
            let r = radicand(space, alpha, c, s).max(rp.abs() * tau * tau * 1e-2);
            2.0 * tau * a_fun(s) / r.sqrt()
        },
        tau_lo,
        tau_hi,
        tol,
    );
    head + body
}

/// Builds a stationary curve from the quadrature parametrizations
/// `t(u) = +- int f/sqrt(f^2 - c^2)` and `v(u) = +- int c/(w sqrt(f^2 - c^2))`
/// on `n` nodes over one monotone radial branch. The interval must lie in
/// one admissible interval; an endpoint may sit at a turning point, where an
/// integrable square-root singularity is handled by substitution.
pub fn quadrature_parametrization(
    p: &StationaryParams,
    interval: (f64, f64),
    n: usize,
) -> Result<CurveSamples> {
    let space = p.space;
    let (ua, ub) = interval;
    if n < 2 {
        return Err(Error::TooFewSamples { got: n, need: 2 });
    }
    space.check_u(ua)?;
    space.check_u(ub)?;
    if !(ua < ub) {
        return Err(Error::InvalidParameter(format!(
            "need interval.0 < interval.1, got ({ua}, {ub})"
        )));
    }

    let nodes: Vec<f64> = (0..n)
        .map(|i| ua + (ub - ua) * i as f64 / (n - 1) as f64)
        .collect();
    let singular_left = (profile(space, p.alpha, ua) - p.c).abs() <= SINGULAR_REL * p.c;
    let singular_right = (profile(space, p.alpha, ub) - p.c).abs() <= SINGULAR_REL * p.c;
    for (i, &x) in nodes.iter().enumerate() {
        let interior = (i > 0 || !singular_left) && (i + 1 < n || !singular_right);
        let r = radicand(space, p.alpha, p.c, x);
        if interior && r <= 0.0 {
            return if (profile(space, p.alpha, x) - p.c).abs() <= SINGULAR_REL * p.c {
                Err(Error::SingularEndpoint { u: x })
            } else {
                Err(Error::RadicandNonpositive { u: x })
            };
        }
    }

    let t_integrand = |s: f64| profile(space, p.alpha, s);
    let v_integrand = |s: f64| p.c / space.warp(s);
    let tol = 1e-12;

    let mut t_cum = vec![0.0; n];
    let mut v_cum = vec![0.0; n];
    for i in 0..n - 1 {
        let (lo, hi) = (nodes[i], nodes[i + 1]);
        let (dt, dv) = if i == 0 && singular_left {
            (
                integrate_singular_panel(space, p.alpha, p.c, &t_integrand, lo, hi, tol),
                integrate_singular_panel(space, p.alpha, p.c, &v_integrand, lo, hi, tol),
            )
        } else if i + 2 == n && singular_right {
            (
                integrate_singular_panel(space, p.alpha, p.c, &t_integrand, hi, lo, tol),
                integrate_singular_panel(space, p.alpha, p.c, &v_integrand, hi, lo, tol),
            )
        } else {
            let quad = |f: &dyn Fn(f64) -> f64| {
                adaptive_simpson(
                    |s| f(s) / radicand(space, p.alpha, p.c, s).sqrt(),
                    lo,
                    hi,
                    tol,
                )
            };
            (quad(&t_integrand), quad(&v_integrand))
        };
        t_cum[i + 1] = t_cum[i] + dt;
        v_cum[i + 1] = v_cum[i] + dv;
    }

    let bt = p.branch_t.factor();
    let bv = p.branch_v.factor();
    let sigma_at = |x: f64| -> f64 {
        let f = profile(space, p.alpha, x);
        let r = radicand(space, p.alpha, p.c, x).max(0.0);
        (bt * bv * p.c / f).atan2(bt * r.sqrt() / f)
    };

    let mut t: Vec<f64> = t_cum.iter().map(|&x| bt * x).collect();
    let mut u = nodes.clone();
    let mut v: Vec<f64> = v_cum.iter().map(|&x| bv * x).collect();
    let mut sigma: Vec<f64> = nodes.iter().map(|&x| sigma_at(x)).collect();
    if p.branch_t == Sign::Minus {
        t.reverse();
        u.reverse();
        v.reverse();
        sigma.reverse();
        let t0 = t[0];
        for x in t.iter_mut() {
            *x -= t0;
        }
    }

    let drift: Vec<f64> = u
        .iter()
        .zip(&sigma)
        .map(|(&ui, &si)| (first_integral(space, p.alpha, ui, si) - bt * bv * p.c) / p.c)
        .collect();
    let residual: Vec<f64> = u
        .iter()
        .zip(&sigma)
        .map(|(&ui, &si)| {
            let y = OdeState {
                u: ui,
                v: 0.0,
                sigma: si,
            };
            let jet = jet_of(space, p.alpha, &y);
            el_residual(space, p.alpha, &jet).unwrap_or(f64::NAN)
        })
        .collect();

    let mut out = CurveSamples::new(space, t, u, v)?.with_sigma(sigma);
    out.c_drift = Some(drift);
    out.el_residual = Some(residual);
    Ok(out)
}

/// Which open hemisphere a spherical curve occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hemisphere {
    Upper,
    Lower,
    Straddling,
}

/// Tolerances for [`check_closed_curve_constraints`].
#[derive(Clone, Copy, Debug)]
pub struct ClosedCheckOptions {
    pub closure_tol: f64,
    pub residual_tol: f64,
    pub circle_tol: f64,
    pub alpha_tol: f64,
}

impl Default for ClosedCheckOptions {
    fn default() -> Self {
        Self {
            closure_tol: 1e-6,
            residual_tol: 1e-6,
            circle_tol: 1e-6,
            alpha_tol: 1e-6,
        }
    }
}

/// Outcome of the closed-curve constraint checks.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedCurveReport {
    pub closed_gap: f64,
    pub max_el_residual: f64,
    pub alpha: f64,
    /// Mean radius when the curve is a pole-centered circle.
    pub radius: Option<f64>,
    /// `-r coth r` / `-r cot r` at that radius.
    pub expected_alpha: Option<f64>,
    pub hemisphere: Option<Hemisphere>,
    pub passed: bool,
    pub notes: Vec<String>,
}

/// Checks the structural constraints on closed stationary curves: in the
/// hyperbolic plane they must be pole-centered circles with
/// `alpha = -r coth r`; on the sphere a curve inside the open upper
/// hemisphere forces `alpha < 0` and inside the lower one `alpha > 0`.
pub fn check_closed_curve_constraints(
    space: SpaceKind,
    alpha: f64,
    c: &CurveSamples,
    opts: &ClosedCheckOptions,
) -> Result<ClosedCurveReport> {
    let gap = c.endpoint_gap();
    if gap > opts.closure_tol {
        return Err(Error::NotClosed {
            gap,
            tol: opts.closure_tol,
        });
    }
    let work;
    let samples = if c.spacing_uniform() {
        c
    } else {
        work = curves::resample_arclength(c, c.len().max(512))?;
        &work
    };
    let states = samples.states_from_fd_periodic()?;
    let max_residual = states
        .iter()
        .map(|s| el_residual(space, alpha, s).map(f64::abs).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    if max_residual > opts.residual_tol {
        return Err(Error::NotStationary {
            max_residual,
            tol: opts.residual_tol,
        });
    }

    let u_min = samples.u.iter().cloned().fold(f64::INFINITY, f64::min);
    let u_max = samples.u.iter().cloned().fold(0.0, f64::max);
    let is_circle = u_max - u_min <= opts.circle_tol;
    let mut notes = Vec::new();
    let mut radius = None;
    let mut expected_alpha = None;
    let mut hemisphere = None;

    let passed = match space {
        SpaceKind::Hyperbolic => {
            if !is_circle {
                notes.push(format!(
                    "closed stationary curve is not a pole-centered circle: u spread {:e}",
                    u_max - u_min
                ));
                false
            } else {
                let r = samples.u.iter().sum::<f64>() / samples.len() as f64;
                let expect = -r / r.tanh();
                radius = Some(r);
                expected_alpha = Some(expect);
                if (alpha - expect).abs() <= opts.alpha_tol {
                    true
                } else {
                    notes.push(format!(
                        "alpha {alpha} differs from -r coth r = {expect} by {:e}",
                        (alpha - expect).abs()
                    ));
                    false
                }
            }
        }
        SpaceKind::Spherical => {
            let half = std::f64::consts::FRAC_PI_2;
            if is_circle {
                let r = samples.u.iter().sum::<f64>() / samples.len() as f64;
                radius = Some(r);
                expected_alpha = Some(-r / r.tan());
            }
            if u_max < half {
                hemisphere = Some(Hemisphere::Upper);
                if alpha < 0.0 {
                    true
                } else {
                    notes.push(format!(
                        "closed curve in the open upper hemisphere requires alpha < 0, got {alpha}"
                    ));
                    false
                }
            } else if u_min > half {
                hemisphere = Some(Hemisphere::Lower);
                if alpha > 0.0 {
                    true
                } else {
                    notes.push(format!(
                        "closed curve in the open lower hemisphere requires alpha > 0, got {alpha}"
                    ));
                    false
                }
            } else {
                hemisphere = Some(Hemisphere::Straddling);
                notes.push("curve straddles the equator; no hemisphere bound applies".into());
                true
            }
        }
        SpaceKind::Euclidean => {
            if is_circle {
                let r = samples.u.iter().sum::<f64>() / samples.len() as f64;
                radius = Some(r);
                expected_alpha = Some(-1.0);
                if (alpha + 1.0).abs() <= opts.alpha_tol {
                    true
                } else {
                    notes.push(format!("planar circles are stationary only for alpha = -1, got {alpha}"));
                    false
                }
            } else {
                notes.push("closed planar stationary curves are origin-centered circles".into());
                false
            }
        }
    };

    Ok(ClosedCurveReport {
        closed_gap: gap,
        max_el_residual: max_residual,
        alpha,
        radius,
        expected_alpha,
        hemisphere,
        passed,
        notes,
    })
}
