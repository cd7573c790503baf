//! Two-point energy minimization: discrete polyline descent with exact
//! gradients, a Dijkstra grid oracle, and verification of the minimizer
//! statements for endpoints collinear with the pole.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::{resample_arclength, CurveSamples};
use crate::energy::{energy, energy_ray_segment, energy_south_pole_geodesic};
use crate::error::{Error, Result};
use crate::geometry::{embed, metric_dot, pairwise_distance, PolarPoint, SpaceKind};

/// Guard radius around the pole (and antipode) for discrete minimizers.
/// Minimizing curves through the pole are approximated by curves passing at
/// this distance; for `alpha > 0` the excised energy is `O(guard^(alpha+1))`.
pub const MIN_GUARD: f64 = 1e-4;

/// A two-point minimization problem.
#[derive(Clone, Copy, Debug)]
pub struct MinimizeProblem {
    pub space: SpaceKind,
    pub alpha: f64,
    pub p1: PolarPoint,
    pub p2: PolarPoint,
    pub n_vertices: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
}

impl MinimizeProblem {
    pub fn new(space: SpaceKind, alpha: f64, p1: PolarPoint, p2: PolarPoint) -> Result<Self> {
        space.check_u(p1.u)?;
        space.check_u(p2.u)?;
        if pairwise_distance(space, p1, p2) < 1e-12 {
            return Err(Error::InvalidParameter("endpoints coincide".into()));
        }
        Ok(Self {
            space,
            alpha,
            p1,
            p2,
            n_vertices: 64,
            max_iters: 60_000,
            grad_tol: 1e-8,
        })
    }

    pub fn with_vertices(mut self, n: usize) -> Self {
        self.n_vertices = n;
        self
    }

    pub fn with_iterations(mut self, max_iters: usize, grad_tol: f64) -> Self {
        self.max_iters = max_iters;
        self.grad_tol = grad_tol;
        self
    }
}

/// Result of a polyline descent run.
#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub curve: CurveSamples,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Norm of the gradient projected onto the feasible set (guard-pinned
    /// coordinates excluded).
    pub gradient_norm: f64,
}

/// Minimizing geodesic between two points, sampled at `n` nodes. Endpoints
/// collinear with the pole use the piecewise radial parametrization with the
/// pole (or, on the sphere when `u1 + u2 > pi`, the antipode) excised at the
/// guard radius; all other pairs are joined by constant-speed interpolation
/// in the ambient space.
pub fn geodesic_between(
    space: SpaceKind,
    p1: PolarPoint,
    p2: PolarPoint,
    n: usize,
) -> Result<CurveSamples> {
    space.check_u(p1.u)?;
    space.check_u(p2.u)?;
    if n < 4 {
        return Err(Error::TooFewSamples { got: n, need: 4 });
    }
    let tau = 2.0 * std::f64::consts::PI;
    let dv = (p2.v - p1.v).rem_euclid(tau);
    let same_ray = dv < 1e-9 || tau - dv < 1e-9;
    let opposite_ray = (dv - std::f64::consts::PI).abs() < 1e-9;

    if space == SpaceKind::Spherical {
        let a = embed(space, p1)?;
        let b = embed(space, p2)?;
        if metric_dot(space, a, b) <= -1.0 + 1e-12 {
            return Err(Error::AntipodalEndpoints);
        }
    }

    if same_ray {
        if (p1.u - p2.u).abs() < 1e-12 {
            return Err(Error::InvalidParameter("endpoints coincide".into()));
        }
        let t: Vec<f64> = (0..n)
            .map(|i| (p2.u - p1.u).abs() * i as f64 / (n - 1) as f64)
            .collect();
        let u: Vec<f64> = (0..n)
            .map(|i| p1.u + (p2.u - p1.u) * i as f64 / (n - 1) as f64)
            .collect();
        let v = vec![p1.v; n];
        return CurveSamples::new(space, t, u, v);
    }

    if opposite_ray {
        let through_pole = space != SpaceKind::Spherical
            || p1.u + p2.u < std::f64::consts::PI;
        return if through_pole {
            piecewise_radial(space, p1, p2, MIN_GUARD, n, true)
        } else {
            piecewise_radial(space, p1, p2, MIN_GUARD, n, false)
        };
    }

    ambient_interpolation(space, p1, p2, n)
}

/// Radial leg to the pole (or antipode) and back out on the opposite ray.
fn piecewise_radial(
    space: SpaceKind,
    p1: PolarPoint,
    p2: PolarPoint,
    guard: f64,
    n: usize,
    through_pole: bool,
) -> Result<CurveSamples> {
    let apex = if through_pole {
        guard
    } else {
        std::f64::consts::PI - guard
    };
    let leg1 = (p1.u - apex).abs();
    let leg2 = (p2.u - apex).abs();
    let junction = 2.0 * guard;
    let total = leg1 + junction + leg2;
    let n1 = ((n as f64 * leg1 / total).round() as usize).clamp(2, n - 2);
    let n2 = n - n1;

    let mut t = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for i in 0..n1 {
        let s = i as f64 / n1 as f64;
        t.push(leg1 * s);
        u.push(p1.u + (apex - p1.u) * s);
        v.push(p1.v);
    }
    for i in 0..n2 {
        let s = i as f64 / (n2 - 1) as f64;
        t.push(leg1 + junction + leg2 * s);
        u.push(apex + (p2.u - apex) * s);
        v.push(p2.v);
    }
    CurveSamples::new(space, t, u, v)
}

fn ambient_interpolation(
    space: SpaceKind,
    p1: PolarPoint,
    p2: PolarPoint,
    n: usize,
) -> Result<CurveSamples> {
    let a = embed(space, p1)?;
    let b = embed(space, p2)?;
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    let total;
    match space {
        SpaceKind::Hyperbolic => {
            let ch = -metric_dot(space, a, b);
            let theta = ch.max(1.0).acosh();
            total = theta;
            for i in 0..n {
                let s = i as f64 / (n - 1) as f64;
                let (wa, wb) = if theta < 1e-12 {
                    (1.0 - s, s)
                } else {
                    (
                        ((1.0 - s) * theta).sinh() / theta.sinh(),
                        (s * theta).sinh() / theta.sinh(),
                    )
                };
                let p = a.scale(wa).add(b.scale(wb));
                u.push(p.z.max(1.0).acosh());
                v.push(p.y.atan2(p.x));
            }
        }
        SpaceKind::Spherical => {
            let ct = metric_dot(space, a, b).clamp(-1.0, 1.0);
            let theta = ct.acos();
            total = theta;
            for i in 0..n {
                let s = i as f64 / (n - 1) as f64;
                let (wa, wb) = (
                    ((1.0 - s) * theta).sin() / theta.sin(),
                    (s * theta).sin() / theta.sin(),
                );
                let p = a.scale(wa).add(b.scale(wb));
                u.push(p.z.clamp(-1.0, 1.0).acos());
                v.push(p.y.atan2(p.x));
            }
        }
        SpaceKind::Euclidean => {
            let dx = b.x - a.x;
            let dy = b.y - a.y;
            total = (dx * dx + dy * dy).sqrt();
            for i in 0..n {
                let s = i as f64 / (n - 1) as f64;
                let x = a.x + dx * s;
                let y = a.y + dy * s;
                u.push((x * x + y * y).sqrt());
                v.push(y.atan2(x));
            }
        }
    }
    // unwrap v so the array is continuous
    for i in 1..n {
        let mut d = v[i] - v[i - 1];
        while d > std::f64::consts::PI {
            v[i] -= 2.0 * std::f64::consts::PI;
            d = v[i] - v[i - 1];
        }
        while d < -std::f64::consts::PI {
            v[i] += 2.0 * std::f64::consts::PI;
            d = v[i] - v[i - 1];
        }
    }
    let t: Vec<f64> = (0..n).map(|i| total * i as f64 / (n - 1) as f64).collect();
    CurveSamples::new(space, t, u, v)
}

/// Intrinsic segment length together with its four partial derivatives
/// `(L, dL/du_a, dL/dv_a, dL/du_b, dL/dv_b)`.
fn segment_with_grad(
    space: SpaceKind,
    ua: f64,
    va: f64,
    ub: f64,
    vb: f64,
) -> (f64, f64, f64, f64, f64) {
    let dv = vb - va;
    let len = pairwise_distance(space, PolarPoint::new(ua, va), PolarPoint::new(ub, vb));
    if len < 1e-12 {
        return (len, 0.0, 0.0, 0.0, 0.0);
    }
    match space {
        SpaceKind::Hyperbolic => {
            let (sa, ca) = (ua.sinh(), ua.cosh());
            let (sb, cb) = (ub.sinh(), ub.cosh());
            let sinh_len = len.sinh();
            let q_ua = sa * cb - ca * sb * dv.cos();
            let q_ub = ca * sb - sa * cb * dv.cos();
            let q_va = -sa * sb * dv.sin();
            let q_vb = sa * sb * dv.sin();
            (
                len,
                q_ua / sinh_len,
                q_va / sinh_len,
                q_ub / sinh_len,
                q_vb / sinh_len,
            )
        }
        SpaceKind::Spherical => {
            let (sa, ca) = (ua.sin(), ua.cos());
            let (sb, cb) = (ub.sin(), ub.cos());
            let sin_len = len.sin();
            let q_ua = -sa * cb + ca * sb * dv.cos();
            let q_ub = -ca * sb + sa * cb * dv.cos();
            let q_va = sa * sb * dv.sin();
            let q_vb = -sa * sb * dv.sin();
            (
                len,
                -q_ua / sin_len,
                -q_va / sin_len,
                -q_ub / sin_len,
                -q_vb / sin_len,
            )
        }
        SpaceKind::Euclidean => {
            let l_ua = (ua - ub * dv.cos()) / len;
            let l_ub = (ub - ua * dv.cos()) / len;
            let l_va = -ua * ub * dv.sin() / len;
            let l_vb = ua * ub * dv.sin() / len;
            (len, l_ua, l_va, l_ub, l_vb)
        }
    }
}

/// Discrete energy of a vertex chain: `sum mid_i^alpha * len_i` with the
/// midpoint radial weight `mid = (u_i + u_{i+1})/2`.
pub fn polyline_energy(space: SpaceKind, alpha: f64, pts: &[(f64, f64)]) -> f64 {
    (0..pts.len() - 1)
        .map(|i| {
            let (ua, va) = pts[i];
            let (ub, vb) = pts[i + 1];
            let mid = 0.5 * (ua + ub);
            let len = pairwise_distance(space, PolarPoint::new(ua, va), PolarPoint::new(ub, vb));
            mid.powf(alpha) * len
        })
        .sum()
}

/// Exact gradient of [`polyline_energy`] with respect to every vertex.
pub fn polyline_gradient(space: SpaceKind, alpha: f64, pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let m = pts.len();
    let mut g = vec![(0.0, 0.0); m];
    for i in 0..m - 1 {
        let (ua, va) = pts[i];
        let (ub, vb) = pts[i + 1];
        let mid = 0.5 * (ua + ub);
        let wa = mid.powf(alpha);
        let dw = 0.5 * alpha * mid.powf(alpha - 1.0);
        let (len, l_ua, l_va, l_ub, l_vb) = segment_with_grad(space, ua, va, ub, vb);
        g[i].0 += dw * len + wa * l_ua;
        g[i].1 += wa * l_va;
        g[i + 1].0 += dw * len + wa * l_ub;
        g[i + 1].1 += wa * l_vb;
    }
    g
}

fn curve_from_points(space: SpaceKind, pts: &[(f64, f64)]) -> Result<CurveSamples> {
    let mut t = vec![0.0];
    for i in 0..pts.len() - 1 {
        let d = pairwise_distance(
            space,
            PolarPoint::new(pts[i].0, pts[i].1),
            PolarPoint::new(pts[i + 1].0, pts[i + 1].1),
        );
        t.push(t[i] + d.max(1e-15));
    }
    CurveSamples::new(
        space,
        t,
        pts.iter().map(|p| p.0).collect(),
        pts.iter().map(|p| p.1).collect(),
    )
}

/// Gradient descent with backtracking line search on the interior vertices
/// of the discrete energy; endpoints stay fixed. Steps that would cross the
/// pole guard are rejected and retried with half the step size. Convergence
/// means the projected gradient norm fell below `grad_tol`.
pub fn minimize_polyline(prob: &MinimizeProblem, init: &CurveSamples) -> Result<MinimizeResult> {
    let space = prob.space;
    let guard_hi = space.u_max() - MIN_GUARD;
    let end_tol = 1e-7;
    if pairwise_distance(space, init.point(0), prob.p1) > end_tol
        || pairwise_distance(space, init.point(init.len() - 1), prob.p2) > end_tol
    {
        return Err(Error::InvalidParameter(
            "init curve does not join the problem endpoints".into(),
        ));
    }
    let init = resample_arclength(init, prob.n_vertices)?;
    let mut pts: Vec<(f64, f64)> = init.u.iter().cloned().zip(init.v.iter().cloned()).collect();
    let m = pts.len();
    for p in &pts[1..m - 1] {
        if p.0 < MIN_GUARD || p.0 > guard_hi {
            return Err(Error::InvalidParameter(format!(
                "init vertex u = {} violates the pole guard",
                p.0
            )));
        }
    }

    let projected = |pts: &[(f64, f64)], g: &[(f64, f64)]| -> (Vec<(f64, f64)>, f64) {
        let mut pg = vec![(0.0, 0.0); m];
        let mut norm_sq = 0.0;
        for k in 1..m - 1 {
            let mut gu = g[k].0;
            // pinned at the guard: drop the component pushing outwards
            if pts[k].0 <= MIN_GUARD * 1.0001 && gu > 0.0 {
                gu = 0.0;
            }
            if pts[k].0 >= guard_hi * 0.9999 && gu < 0.0 {
                gu = 0.0;
            }
            pg[k] = (gu, g[k].1);
            norm_sq += gu * gu + g[k].1 * g[k].1;
        }
        (pg, norm_sq.sqrt())
    };

    let mut e = polyline_energy(space, prob.alpha, &pts);
    let mut step = 0.1;
    let mut converged = false;
    let mut grad_norm = f64::INFINITY;
    let mut iterations = 0;

    for it in 0..prob.max_iters {
        iterations = it + 1;
        let g = polyline_gradient(space, prob.alpha, &pts);
        let (pg, norm) = projected(&pts, &g);
        grad_norm = norm;
        if norm < prob.grad_tol {
            converged = true;
            break;
        }
        let mut accepted = false;
        while step > 1e-18 {
            let cand: Vec<(f64, f64)> = pts
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| (u - step * pg[k].0, v - step * pg[k].1))
                .collect();
            let feasible = cand[1..m - 1]
                .iter()
                .all(|&(u, _)| u > MIN_GUARD && u < guard_hi);
            if feasible {
                let ec = polyline_energy(space, prob.alpha, &cand);
                if ec <= e - 1e-4 * step * norm * norm {
                    pts = cand;
                    e = ec;
                    accepted = true;
                    step *= 1.6;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            // line search exhausted; report whatever the gradient says
            converged = norm < prob.grad_tol;
            break;
        }
    }

    Ok(MinimizeResult {
        curve: curve_from_points(space, &pts)?,
        energy: e,
        iterations,
        converged,
        gradient_norm: grad_norm,
    })
}

/// Node grid for the Dijkstra oracle. Levels are sorted and include the
/// problem endpoints exactly; the pole and antipode rows are excluded by
/// construction.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub u_levels: Vec<f64>,
    pub v_levels: Vec<f64>,
}

impl GridSpec {
    /// Builds a grid covering a band that contains both endpoints.
    pub fn covering(
        space: SpaceKind,
        p1: PolarPoint,
        p2: PolarPoint,
        nu: usize,
        nv: usize,
    ) -> Self {
        let u_hi_raw = 1.25 * p1.u.max(p2.u);
        let u_hi = match space {
            SpaceKind::Spherical => u_hi_raw.min(std::f64::consts::PI - MIN_GUARD),
            _ => u_hi_raw,
        };
        let mut u_levels: Vec<f64> = (0..nu)
            .map(|i| MIN_GUARD + (u_hi - MIN_GUARD) * i as f64 / (nu - 1) as f64)
            .collect();
        u_levels.push(p1.u);
        u_levels.push(p2.u);
        u_levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        u_levels.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

        let (vlo, vhi) = if (p1.v - p2.v).abs() < 1e-12 {
            (p1.v - 0.6, p1.v + 0.6)
        } else {
            (p1.v.min(p2.v), p1.v.max(p2.v))
        };
        let mut v_levels: Vec<f64> = (0..nv)
            .map(|j| vlo + (vhi - vlo) * j as f64 / (nv - 1) as f64)
            .collect();
        v_levels.push(p1.v);
        v_levels.push(p2.v);
        v_levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v_levels.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

        Self { u_levels, v_levels }
    }

    fn index_of(&self, p: PolarPoint) -> Result<usize> {
        let iu = self
            .u_levels
            .iter()
            .position(|&x| (x - p.u).abs() < 1e-9)
            .ok_or_else(|| Error::InvalidParameter(format!("u = {} is not a grid level", p.u)))?;
        let iv = self
            .v_levels
            .iter()
            .position(|&x| (x - p.v).abs() < 1e-9)
            .ok_or_else(|| Error::InvalidParameter(format!("v = {} is not a grid level", p.v)))?;
        Ok(iu * self.v_levels.len() + iv)
    }
}

/// Shortest-path energy over the 8-connected grid graph with edge weight
/// `mid^alpha * edge length`. An upper bound for the true minimum (up to the
/// midpoint-rule discretization of each edge) that decreases under grid
/// refinement.
pub fn dp_grid_min(
    space: SpaceKind,
    alpha: f64,
    p1: PolarPoint,
    p2: PolarPoint,
    grid: (usize, usize),
) -> Result<f64> {
    let spec = GridSpec::covering(space, p1, p2, grid.0, grid.1);
    dp_grid_min_on(space, alpha, p1, p2, &spec)
}

/// [`dp_grid_min`] on an explicit grid (endpoints must be grid nodes).
pub fn dp_grid_min_on(
    space: SpaceKind,
    alpha: f64,
    p1: PolarPoint,
    p2: PolarPoint,
    spec: &GridSpec,
) -> Result<f64> {
    use std::cmp::Ordering;
    use std::collections::BinaryHeap;

    #[derive(PartialEq)]
    struct Entry {
        cost: f64,
        node: usize,
    }
    impl Eq for Entry {}
    impl Ord for Entry {
        fn cmp(&self, other: &Self) -> Ordering {
            other.cost.partial_cmp(&self.cost).unwrap_or(Ordering::Equal)
        }
    }
    impl PartialOrd for Entry {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }

    let nu = spec.u_levels.len();
    let nv = spec.v_levels.len();
    let start = spec.index_of(p1)?;
    let goal = spec.index_of(p2)?;
    let mut dist = vec![f64::INFINITY; nu * nv];
    let mut heap = BinaryHeap::new();
    dist[start] = 0.0;
    heap.push(Entry {
        cost: 0.0,
        node: start,
    });

    while let Some(Entry { cost, node }) = heap.pop() {
        if node == goal {
            return Ok(cost);
        }
        if cost > dist[node] {
            continue;
        }
        let (iu, iv) = (node / nv, node % nv);
        for du in -1i64..=1 {
            for dv in -1i64..=1 {
                if du == 0 && dv == 0 {
                    continue;
                }
                let ju = iu as i64 + du;
                let jv = iv as i64 + dv;
                if ju < 0 || jv < 0 || ju >= nu as i64 || jv >= nv as i64 {
                    continue;
                }
                let (ju, jv) = (ju as usize, jv as usize);
                let next = ju * nv + jv;
                let ua = spec.u_levels[iu];
                let ub = spec.u_levels[ju];
                let len = pairwise_distance(
                    space,
                    PolarPoint::new(ua, spec.v_levels[iv]),
                    PolarPoint::new(ub, spec.v_levels[jv]),
                );
                let w = (0.5 * (ua + ub)).powf(alpha) * len;
                let nc = cost + w;
                if nc < dist[next] {
                    dist[next] = nc;
                    heap.push(Entry {
                        cost: nc,
                        node: next,
                    });
                }
            }
        }
    }
    Err(Error::InvalidParameter("grid is disconnected".into()))
}

/// Scenario of the minimizer statements for endpoints collinear with the
/// pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scenario {
    SameRay,
    ThroughPole,
}

/// Configuration for [`verify_minimizer_theorems`].
#[derive(Clone, Copy, Debug)]
pub struct TheoremCheckConfig {
    pub starts: usize,
    pub seed: u64,
    pub jobs: usize,
    pub n_vertices: usize,
    pub dp_grid: Option<(usize, usize)>,
    pub tolerance: f64,
}

impl Default for TheoremCheckConfig {
    fn default() -> Self {
        Self {
            starts: 5,
            seed: 0,
            jobs: 1,
            n_vertices: 64,
            dp_grid: Some((200, 400)),
            tolerance: 1e-3,
        }
    }
}

/// Report of one theorem-verification run.
#[derive(Clone, Debug, Serialize)]
pub struct MinimizerTheoremReport {
    pub space: SpaceKind,
    pub alpha: f64,
    pub scenario: Scenario,
    pub seed: u64,
    pub p1: PolarPoint,
    pub p2: PolarPoint,
    /// Quadrature energy of the reference geodesic / ray.
    pub reference_energy: f64,
    /// Closed-form reference where one exists.
    pub closed_form: Option<f64>,
    /// Final energies of the randomized descent runs.
    pub optimized_energies: Vec<f64>,
    pub dp_energy: Option<f64>,
    pub all_above_reference: bool,
    pub converged_runs: usize,
}

/// Canonical endpoints used by the scenario checks.
pub fn scenario_endpoints(space: SpaceKind, scenario: Scenario) -> (PolarPoint, PolarPoint) {
    match scenario {
        Scenario::SameRay => (PolarPoint::new(0.5, 0.0), PolarPoint::new(1.5, 0.0)),
        Scenario::ThroughPole => match space {
            SpaceKind::Spherical => (
                PolarPoint::new(1.0, 0.0),
                PolarPoint::new(1.0, std::f64::consts::PI),
            ),
            _ => (
                PolarPoint::new(0.7, 0.0),
                PolarPoint::new(0.7, std::f64::consts::PI),
            ),
        },
    }
}

/// Perturbs the interior of a geodesic init with seeded noise, respecting
/// the guards.
pub fn perturbed_init(
    space: SpaceKind,
    base: &CurveSamples,
    seed: u64,
    amp_u: f64,
    amp_v: f64,
) -> CurveSamples {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let guard_hi = space.u_max() - 2.0 * MIN_GUARD;
    let n = base.len();
    let mut u = base.u.clone();
    let mut v = base.v.clone();
    for i in 1..n - 1 {
        let bump = (std::f64::consts::PI * i as f64 / (n - 1) as f64).sin();
        u[i] = (u[i] + amp_u * bump * rng.gen_range(-1.0..1.0)).clamp(2.0 * MIN_GUARD, guard_hi);
        v[i] += amp_v * bump * rng.gen_range(-1.0..1.0);
    }
    let mut c = CurveSamples::new(space, base.t.clone(), u, v).expect("perturbed init is valid");
    c = crate::curves::reparametrize_by_chords(&c).expect("chord lengths are positive");
    c
}

/// Runs the minimizer from randomized inits plus the grid oracle and checks
/// every outcome against the reference energy of the collinear geodesic.
/// `ThroughPole` demands `alpha > 0`; the hypothesis is refused, not
/// asserted, otherwise.
pub fn verify_minimizer_theorems(
    space: SpaceKind,
    alpha: f64,
    scenario: Scenario,
    config: &TheoremCheckConfig,
) -> Result<MinimizerTheoremReport> {
    if scenario == Scenario::ThroughPole && alpha <= 0.0 {
        return Err(Error::HypothesisViolated(format!(
            "the through-pole minimizer statement assumes alpha > 0, got {alpha}"
        )));
    }
    let (p1, p2) = scenario_endpoints(space, scenario);
    let geo = geodesic_between(space, p1, p2, 2001)?;
    let reference_energy = energy(space, alpha, &geo)?.value;
    let closed_form = match scenario {
        Scenario::SameRay => Some(energy_ray_segment(alpha, p1.u, p2.u)?),
        Scenario::ThroughPole => {
            let p = alpha + 1.0;
            Some((p1.u.powf(p) + p2.u.powf(p)) / p)
        }
    };

    let prob = MinimizeProblem::new(space, alpha, p1, p2)?.with_vertices(config.n_vertices);
    let runs: Vec<Result<MinimizeResult>> = run_parallel(config.jobs, config.starts, |k| {
        let init = perturbed_init(space, &geo, config.seed.wrapping_add(k as u64), 0.05, 0.15);
        minimize_polyline(&prob, &init)
    });
    let mut optimized = Vec::new();
    let mut converged_runs = 0;
    for r in runs {
        let r = r?;
        if r.converged {
            converged_runs += 1;
        }
        optimized.push(r.energy);
    }

    let dp_energy = match config.dp_grid {
        Some(grid) => Some(dp_grid_min(space, alpha, p1, p2, grid)?),
        None => None,
    };

    let all_above = optimized
        .iter()
        .chain(dp_energy.iter())
        .all(|&e| e >= reference_energy - config.tolerance);

    Ok(MinimizerTheoremReport {
        space,
        alpha,
        scenario,
        seed: config.seed,
        p1,
        p2,
        reference_energy,
        closed_form,
        optimized_energies: optimized,
        dp_energy,
        all_above_reference: all_above,
        converged_runs,
    })
}

/// South-pole exploratory computation: the minimizing geodesic between
/// opposite-ray endpoints with `u1 + u2 > pi` on the sphere, its closed-form
/// energy, and descent results. No theorem covers this case; results are
/// reported as data.
#[derive(Clone, Debug, Serialize)]
pub struct SouthPoleExploration {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub geodesic_energy_closed_form: f64,
    pub geodesic_energy_quadrature: f64,
    pub optimized_energies: Vec<f64>,
}

pub fn explore_south_pole(
    alpha: f64,
    a: f64,
    b: f64,
    starts: usize,
    seed: u64,
) -> Result<SouthPoleExploration> {
    let space = SpaceKind::Spherical;
    let p1 = PolarPoint::new(a, 0.0);
    let p2 = PolarPoint::new(b, std::f64::consts::PI);
    let closed = energy_south_pole_geodesic(alpha, a, b)?;
    let geo = geodesic_between(space, p1, p2, 2001)?;
    let quad = energy(space, alpha, &geo)?.value;
    let prob = MinimizeProblem::new(space, alpha, p1, p2)?;
    let mut optimized = Vec::new();
    for k in 0..starts {
        let init = perturbed_init(space, &geo, seed.wrapping_add(k as u64), 0.05, 0.1);
        optimized.push(minimize_polyline(&prob, &init)?.energy);
    }
    Ok(SouthPoleExploration {
        alpha,
        a,
        b,
        geodesic_energy_closed_form: closed,
        geodesic_energy_quadrature: quad,
        optimized_energies: optimized,
    })
}

/// Runs `count` independent tasks on up to `jobs` threads, returning results
/// in task order.
fn run_parallel<T, F>(jobs: usize, count: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if jobs <= 1 || count <= 1 {
        return (0..count).map(task).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: std::sync::Mutex<Vec<Option<T>>> =
        std::sync::Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(count) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= count {
                    break;
                }
                let value = task(k);
                results.lock().unwrap()[k] = Some(value);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|x| x.unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    const H2: SpaceKind = SpaceKind::Hyperbolic;
    const S2: SpaceKind = SpaceKind::Spherical;
    const E2: SpaceKind = SpaceKind::Euclidean;

    #[test]
    fn geodesic_same_ray_interpolates_linearly() {
        let c = geodesic_between(H2, PolarPoint::new(0.5, 1.0), PolarPoint::new(1.5, 1.0), 11)
            .unwrap();
        assert!(c.v.iter().all(|&v| v == 1.0));
        assert!((c.u[5] - 1.0).abs() < 1e-12);
        assert!((c.total_length() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geodesic_through_pole_is_piecewise_radial() {
        let c = geodesic_between(H2, PolarPoint::new(0.7, 0.0), PolarPoint::new(0.9, PI), 64)
            .unwrap();
        assert!((c.total_length() - 1.6).abs() < 1e-9);
        let min_u = c.u.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((min_u - MIN_GUARD).abs() < 1e-12);
        // length of beta equals u1 + u2
        assert!((c.chord_length() - 1.6).abs() < 1e-3);
    }

    #[test]
    fn geodesic_spherical_through_pole_length() {
        let c = geodesic_between(
            S2,
            PolarPoint::new(FRAC_PI_4, 0.0),
            PolarPoint::new(FRAC_PI_4, PI),
            64,
        )
        .unwrap();
        // spherical law of cosines oracle: the angle between the endpoints
        let a = embed(S2, PolarPoint::new(FRAC_PI_4, 0.0)).unwrap();
        let b = embed(S2, PolarPoint::new(FRAC_PI_4, PI)).unwrap();
        let oracle = metric_dot(S2, a, b).clamp(-1.0, 1.0).acos();
        assert!((oracle - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((c.total_length() - oracle).abs() < 1e-3);
    }

    #[test]
    fn geodesic_south_pole_when_sum_exceeds_pi() {
        let c = geodesic_between(S2, PolarPoint::new(2.0, 0.0), PolarPoint::new(1.5, PI), 64)
            .unwrap();
        let max_u = c.u.iter().cloned().fold(0.0, f64::max);
        assert!((max_u - (PI - MIN_GUARD)).abs() < 1e-12);
        assert!((c.total_length() - (2.0 * PI - 3.5)).abs() < 1e-9);
    }

    #[test]
    fn geodesic_rejects_antipodes() {
        assert!(matches!(
            geodesic_between(S2, PolarPoint::new(1.0, 0.0), PolarPoint::new(PI - 1.0, PI), 16),
            Err(Error::AntipodalEndpoints)
        ));
    }

    #[test]
    fn geodesic_general_position_matches_distance() {
        for space in [H2, S2, E2] {
            let p1 = PolarPoint::new(0.8, 0.3);
            let p2 = PolarPoint::new(1.1, 1.4);
            let c = geodesic_between(space, p1, p2, 400).unwrap();
            let d = pairwise_distance(space, p1, p2);
            assert!((c.total_length() - d).abs() < 1e-9, "{space:?}");
            assert!((c.chord_length() - d).abs() < 1e-5, "{space:?}");
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for space in [H2, S2, E2] {
            for _ in 0..40 {
                let m = 6;
                let pts: Vec<(f64, f64)> = (0..m)
                    .map(|i| {
                        (
                            0.4 + 0.15 * i as f64 + 0.05 * rng.gen_range(-1.0..1.0),
                            0.1 * i as f64 + 0.05 * rng.gen_range(-1.0..1.0),
                        )
                    })
                    .collect();
                let alpha = rng.gen_range(-2.0..2.5);
                let g = polyline_gradient(space, alpha, &pts);
                let h = 1e-6;
                for k in 0..m {
                    for coord in 0..2 {
                        let mut plus = pts.clone();
                        let mut minus = pts.clone();
                        if coord == 0 {
                            plus[k].0 += h;
                            minus[k].0 -= h;
                        } else {
                            plus[k].1 += h;
                            minus[k].1 -= h;
                        }
                        let fd = (polyline_energy(space, alpha, &plus)
                            - polyline_energy(space, alpha, &minus))
                            / (2.0 * h);
                        let an = if coord == 0 { g[k].0 } else { g[k].1 };
                        let denom = an.abs().max(1.0);
                        assert!(
                            ((an - fd) / denom).abs() < 1e-6,
                            "{space:?} alpha={alpha} k={k} coord={coord}: {an} vs {fd}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn same_ray_descent_reaches_the_ray() {
        let p1 = PolarPoint::new(0.5, 0.0);
        let p2 = PolarPoint::new(1.5, 0.0);
        let prob = MinimizeProblem::new(H2, 2.0, p1, p2).unwrap().with_vertices(32);
        let geo = geodesic_between(H2, p1, p2, 32).unwrap();
        let init = perturbed_init(H2, &geo, 3, 0.03, 0.1);
        let res = minimize_polyline(&prob, &init).unwrap();
        assert!(res.converged, "gradient norm {}", res.gradient_norm);
        let exact = energy_ray_segment(2.0, 0.5, 1.5).unwrap();
        assert!((res.energy - exact).abs() / exact < 1e-3);
        for &v in &res.curve.v {
            assert!(v.abs() < 1e-4, "vertex v = {v}");
        }
    }

    #[test]
    fn alpha_zero_descent_recovers_geodesic_length() {
        let p1 = PolarPoint::new(0.8, 0.3);
        let p2 = PolarPoint::new(1.1, 1.4);
        let prob = MinimizeProblem::new(S2, 0.0, p1, p2).unwrap().with_vertices(32);
        let geo = geodesic_between(S2, p1, p2, 32).unwrap();
        let init = perturbed_init(S2, &geo, 11, 0.05, 0.1);
        let res = minimize_polyline(&prob, &init).unwrap();
        let d = pairwise_distance(S2, p1, p2);
        assert!((res.energy - d).abs() / d < 1e-3, "{} vs {d}", res.energy);
    }

    #[test]
    fn descent_never_increases_energy() {
        // monitored indirectly: final energy below the init energy
        let p1 = PolarPoint::new(0.5, 0.0);
        let p2 = PolarPoint::new(1.5, 0.0);
        let prob = MinimizeProblem::new(E2, 2.0, p1, p2).unwrap().with_vertices(24);
        let geo = geodesic_between(E2, p1, p2, 24).unwrap();
        let init = perturbed_init(E2, &geo, 5, 0.05, 0.2);
        let e0 = polyline_energy(
            E2,
            2.0,
            &init.u.iter().cloned().zip(init.v.iter().cloned()).collect::<Vec<_>>(),
        );
        let res = minimize_polyline(&prob, &init).unwrap();
        assert!(res.energy <= e0);
    }

    #[test]
    fn dp_oracle_same_ray_close_to_closed_form() {
        let exact = energy_ray_segment(2.0, 0.5, 1.5).unwrap();
        let dp = dp_grid_min(
            E2,
            2.0,
            PolarPoint::new(0.5, 0.0),
            PolarPoint::new(1.5, 0.0),
            (120, 80),
        )
        .unwrap();
        assert!(dp >= exact - 1e-4, "dp {dp} vs {exact}");
        assert!((dp - exact).abs() / exact < 0.02);
    }

    #[test]
    fn dp_refinement_non_increasing_on_nested_grids() {
        let p1 = PolarPoint::new(0.7, 0.0);
        let p2 = PolarPoint::new(0.7, PI);
        let coarse = dp_grid_min(H2, 1.0, p1, p2, (101, 101)).unwrap();
        let fine = dp_grid_min(H2, 1.0, p1, p2, (201, 201)).unwrap();
        assert!(fine <= coarse + 1e-12, "{fine} vs {coarse}");
    }

    #[test]
    fn theorem_check_same_ray_h2() {
        let cfg = TheoremCheckConfig {
            starts: 3,
            dp_grid: Some((100, 60)),
            n_vertices: 32,
            ..Default::default()
        };
        let rep = verify_minimizer_theorems(H2, 2.0, Scenario::SameRay, &cfg).unwrap();
        assert!(rep.all_above_reference);
        assert!(rep.converged_runs > 0);
    }

    #[test]
    fn theorem_check_refuses_nonpositive_alpha_through_pole() {
        let cfg = TheoremCheckConfig::default();
        assert!(matches!(
            verify_minimizer_theorems(H2, -1.0, Scenario::ThroughPole, &cfg),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn rotation_equivariance_of_descent() {
        let p1 = PolarPoint::new(0.5, 0.0);
        let p2 = PolarPoint::new(1.5, 0.0);
        let rot = 1.3;
        let prob = MinimizeProblem::new(H2, 2.0, p1, p2).unwrap().with_vertices(24);
        let geo = geodesic_between(H2, p1, p2, 24).unwrap();
        let init = perturbed_init(H2, &geo, 9, 0.03, 0.1);
        let res = minimize_polyline(&prob, &init).unwrap();

        let q1 = PolarPoint::new(0.5, rot);
        let q2 = PolarPoint::new(1.5, rot);
        let prob_r = MinimizeProblem::new(H2, 2.0, q1, q2).unwrap().with_vertices(24);
        let mut init_r = init.clone();
        for v in init_r.v.iter_mut() {
            *v += rot;
        }
        let res_r = minimize_polyline(&prob_r, &init_r).unwrap();
        assert!((res.energy - res_r.energy).abs() < 1e-10);
    }

    #[test]
    fn south_pole_exploration_runs() {
        let rep = explore_south_pole(1.0, 2.0, 1.5, 2, 0).unwrap();
        assert!((rep.geodesic_energy_closed_form
            - energy_south_pole_geodesic(1.0, 2.0, 1.5).unwrap())
        .abs()
            < 1e-15);
        // guard excision error is O(guard), well inside 1e-2
        assert!(
            (rep.geodesic_energy_quadrature - rep.geodesic_energy_closed_form).abs() < 1e-2
        );
    }

    #[test]
    fn parallel_runner_preserves_order() {
        let out = run_parallel(4, 9, |k| k * k);
        assert_eq!(out, vec![0, 1, 4, 9, 16, 25, 36, 49, 64]);
    }
}
