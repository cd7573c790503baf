//! Constant-curvature curve families as level sets `<p, a> = tau` and the
//! classification of which of them are stationary: only geodesics through
//! the pole (any `alpha`) and pole-centered circles of radius `r` with
//! `alpha = -r coth(r)` (hyperbolic) or `alpha = -r cot(r)` (sphere).

use serde::Serialize;

use crate::curves::CurveState;
use crate::error::{Error, Result};
use crate::geometry::{metric_dot, AmbientVec, SpaceKind};
use crate::numerics::{bisect, derivative_uniform, second_derivative_uniform};

/// Type of a constant-curvature curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveType {
    Geodesic,
    Equidistant,
    Horocycle,
    Circle,
    GreatCircle,
    SmallCircle,
}

/// A classified level-set curve `C_{a,tau} = {p : <p, a>_eps = tau}` with its
/// normalized data. `delta = <a, a>_eps` after normalization (`-1`, `0`, or
/// `1` in the hyperbolic plane, `1` on the sphere).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConstCurvCurve {
    pub space: SpaceKind,
    pub a: AmbientVec,
    pub tau: f64,
    pub delta: f64,
    pub lambda: f64,
    pub kappa: f64,
    pub curve_type: CurveType,
}

const AXIS_TOL: f64 = 1e-12;

/// Classifies the level set `<p, a>_eps = tau`. The pair `(a, tau)` is
/// rescaled so that `|<a, a>_eps| = 1` when non-null (hyperbolic) or
/// `|a| = 1` (sphere); emptiness of the level set is detected exactly from
/// the range of `<Psi(u, v), a>_eps`.
pub fn classify_constant_curvature(
    space: SpaceKind,
    a: AmbientVec,
    tau: f64,
) -> Result<ConstCurvCurve> {
    match space {
        SpaceKind::Euclidean => Err(Error::UnsupportedSpace),
        SpaceKind::Spherical => {
            let norm = a.norm_euclidean();
            if norm < AXIS_TOL {
                return Err(Error::InvalidParameter("axis vector a must be nonzero".into()));
            }
            let a = a.scale(1.0 / norm);
            let tau = tau / norm;
            if tau.abs() >= 1.0 - AXIS_TOL {
                return Err(Error::EmptyLevelSet { tau });
            }
            let lambda = 1.0 / (1.0 - tau * tau).sqrt();
            let kappa = lambda * tau;
            let curve_type = if tau.abs() < AXIS_TOL {
                CurveType::GreatCircle
            } else {
                CurveType::SmallCircle
            };
            Ok(ConstCurvCurve {
                space,
                a,
                tau,
                delta: 1.0,
                lambda,
                kappa,
                curve_type,
            })
        }
        SpaceKind::Hyperbolic => {
            let delta_raw = metric_dot(space, a, a);
            let rho = (a.x * a.x + a.y * a.y).sqrt();
            if rho < AXIS_TOL && a.z.abs() < AXIS_TOL {
                return Err(Error::InvalidParameter("axis vector a must be nonzero".into()));
            }
            if delta_raw.abs() > AXIS_TOL {
                let s = delta_raw.abs().sqrt();
                let a = a.scale(1.0 / s);
                let tau = tau / s;
                let delta = delta_raw.signum();
                if delta > 0.0 {
                    // spacelike axis: the level set is nonempty for every tau
                    let lambda = 1.0 / (tau * tau + 1.0).sqrt();
                    let kappa = lambda * tau;
                    let curve_type = if tau.abs() < AXIS_TOL {
                        CurveType::Geodesic
                    } else {
                        CurveType::Equidistant
                    };
                    Ok(ConstCurvCurve {
                        space,
                        a,
                        tau,
                        delta: 1.0,
                        lambda,
                        kappa,
                        curve_type,
                    })
                } else {
                    // timelike axis: range of <p, a> is one-sided; circles
                    // need |tau| > 1 with sign opposite to a_z
                    if tau * a.z >= -1.0 + AXIS_TOL {
                        return Err(Error::EmptyLevelSet { tau });
                    }
                    let lambda = 1.0 / (tau * tau - 1.0).sqrt();
                    let kappa = lambda * tau;
                    Ok(ConstCurvCurve {
                        space,
                        a,
                        tau,
                        delta: -1.0,
                        lambda,
                        kappa,
                        curve_type: CurveType::Circle,
                    })
                }
            } else {
                // lightlike axis: horocycles; nonempty exactly when tau and
                // a_z have opposite signs
                let s = a.norm_euclidean();
                let a = a.scale(1.0 / s);
                let tau = tau / s;
                if tau.abs() < AXIS_TOL || tau * a.z > 0.0 {
                    return Err(Error::EmptyLevelSet { tau });
                }
                let lambda = 1.0 / tau.abs();
                let kappa = tau.signum();
                Ok(ConstCurvCurve {
                    space,
                    a,
                    tau,
                    delta: 0.0,
                    lambda,
                    kappa,
                    curve_type: CurveType::Horocycle,
                })
            }
        }
    }
}

impl ConstCurvCurve {
    /// Unit normal field along the curve: `-lambda (tau p + a)` in the
    /// hyperbolic plane, `lambda (a - tau p)` on the sphere.
    pub fn normal_at(&self, p: AmbientVec) -> AmbientVec {
        match self.space {
            SpaceKind::Hyperbolic => p.scale(self.tau).add(self.a).scale(-self.lambda),
            _ => self.a.add(p.scale(-self.tau)).scale(self.lambda),
        }
    }

    /// True for geodesics through the pole (the only stationary curves of
    /// zero curvature).
    pub fn passes_through_pole(&self) -> bool {
        match self.curve_type {
            CurveType::Geodesic | CurveType::GreatCircle => self.a.z.abs() < 1e-10,
            _ => false,
        }
    }

    /// Radius of a pole-centered circle, when this curve is one.
    pub fn pole_circle_radius(&self) -> Option<f64> {
        let axial = (self.a.x * self.a.x + self.a.y * self.a.y).sqrt() < 1e-10;
        match (self.space, self.curve_type) {
            (SpaceKind::Hyperbolic, CurveType::Circle) if axial => Some(self.tau.abs().acosh()),
            (SpaceKind::Spherical, CurveType::SmallCircle) if axial => {
                Some((self.tau * self.a.z.signum()).acos())
            }
            _ => None,
        }
    }

    /// `<Psi(u, v), a>_eps - tau`, the level function in polar coordinates.
    fn level(&self, u: f64, v: f64) -> f64 {
        let q = self.a.x * v.cos() + self.a.y * v.sin();
        match self.space {
            SpaceKind::Hyperbolic => q * u.sinh() - self.a.z * u.cosh() - self.tau,
            _ => q * u.sin() + self.a.z * u.cos() - self.tau,
        }
    }

    /// Samples one branch of the curve as `u(v)` on a uniform `v`-grid by
    /// per-direction bisection, returning `(v, u)` pairs over the longest
    /// contiguous admissible window. Geodesics through the pole are sampled
    /// as one radial ray instead.
    pub fn sample_polar(&self, m: usize) -> Result<Vec<(f64, f64)>> {
        use std::f64::consts::PI;
        if self.passes_through_pole() {
            let v0 = self.a.y.atan2(self.a.x) + std::f64::consts::FRAC_PI_2;
            return Ok((0..m)
                .map(|i| (v0, 0.1 + 2.0 * i as f64 / (m - 1) as f64))
                .collect());
        }
        let u_hi = match self.space {
            SpaceKind::Spherical => PI - 1e-9,
            _ => 20.0,
        };
        let scan = 600;
        let root_at = |v: f64| -> Option<f64> {
            let mut prev_u = 1e-9;
            let mut prev_g = self.level(prev_u, v);
            for k in 1..=scan {
                let u = 1e-9 + (u_hi - 1e-9) * k as f64 / scan as f64;
                let g = self.level(u, v);
                if prev_g == 0.0 {
                    return Some(prev_u);
                }
                if prev_g * g < 0.0 {
                    return Some(bisect(|x| self.level(x, v), prev_u, u, 1e-14));
                }
                prev_u = u;
                prev_g = g;
            }
            None
        };
        let grid = 4 * m;
        let hits: Vec<Option<f64>> = (0..grid)
            .map(|i| root_at(2.0 * PI * i as f64 / grid as f64))
            .collect();
        // longest circularly-contiguous run of successes
        let mut best = (0usize, 0usize);
        let mut start = None;
        for i in 0..2 * grid {
            let idx = i % grid;
            if hits[idx].is_some() {
                if start.is_none() {
                    start = Some(i);
                }
                let s = start.unwrap();
                if i - s + 1 > best.1 {
                    best = (s, i - s + 1);
                }
            } else {
                start = None;
            }
        }
        if best.1 == 0 {
            return Err(Error::EmptyLevelSet { tau: self.tau });
        }
        let run_len = best.1.min(grid);
        // trim the run edges where the branch meets a fold (du/dv blows up)
        let margin = if run_len == grid { 0 } else { (run_len / 20).max(1) };
        let usable = run_len.saturating_sub(2 * margin).max(2);
        let stride = (usable / m).max(1);
        let mut out = Vec::new();
        for j in (0..usable).step_by(stride) {
            let i = (best.0 + margin + j) % grid;
            let v = 2.0 * PI * i as f64 / grid as f64;
            if let Some(u) = hits[i] {
                out.push((v, u));
            }
        }
        if out.len() < 8 {
            return Err(Error::TooFewSamples {
                got: out.len(),
                need: 8,
            });
        }
        Ok(out)
    }

    /// Jets `(u(v), v)` with derivatives in the `v`-parametrization, for
    /// residual and curvature checks on the sampled branch.
    pub fn sample_states(&self, m: usize) -> Result<Vec<CurveState>> {
        let pairs = self.sample_polar(m)?;
        if self.passes_through_pole() {
            return Ok(pairs
                .iter()
                .map(|&(v, u)| CurveState::new(u, v, 1.0, 0.0, 0.0, 0.0))
                .collect());
        }
        let h = pairs[1].0 - pairs[0].0;
        let us: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let du = derivative_uniform(&us, h);
        let d2u = second_derivative_uniform(&us, h);
        Ok(pairs
            .iter()
            .enumerate()
            .map(|(i, &(v, u))| CurveState::new(u, v, du[i], 1.0, d2u[i], 0.0))
            .collect())
    }
}

/// True exactly when the classified curve is stationary for this `alpha`:
/// geodesics through the pole (any `alpha`) or pole-centered circles with
/// `alpha = -r coth(r)` / `-r cot(r)` within `1e-10`. Horocycles,
/// equidistant lines, and off-center circles are never stationary.
pub fn is_stationary_constant_curvature(c: &ConstCurvCurve, alpha: f64) -> bool {
    if c.passes_through_pole() {
        return true;
    }
    match c.pole_circle_radius() {
        Some(r) => match circle_alpha(c.space, r) {
            Ok(expect) => (alpha - expect).abs() <= 1e-10,
            Err(_) => false,
        },
        None => false,
    }
}

/// The stationarity exponent of the pole-centered circle of radius `r`:
/// `-r coth(r)`, `-r cot(r)`, or the constant `-1` in the plane.
pub fn circle_alpha(space: SpaceKind, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < space.u_max()) {
        return Err(Error::InvalidRadius {
            r,
            u_max: space.u_max(),
        });
    }
    Ok(match space {
        SpaceKind::Hyperbolic => -r / r.tanh(),
        SpaceKind::Spherical => -r / r.tan(),
        SpaceKind::Euclidean => -1.0,
    })
}

/// Inverse of [`circle_alpha`] where it is injective: the hyperbolic range
/// is `alpha < -1`, the spherical range `(-1, 0) u (0, inf)` (the preimage
/// of 0 is the equatorial geodesic, excluded). Euclidean circles all share
/// `alpha = -1`, so no unique inverse exists.
pub fn invert_circle_alpha(space: SpaceKind, alpha: f64) -> Option<f64> {
    use std::f64::consts::PI;
    match space {
        SpaceKind::Hyperbolic => {
            if !(alpha < -1.0) {
                return None;
            }
            let mut hi = 1.0_f64;
            while -hi / hi.tanh() > alpha {
                hi *= 2.0;
                if hi > 1e6 {
                    return None;
                }
            }
            Some(bisect(|r| -r / r.tanh() - alpha, 1e-300, hi, 1e-12))
        }
        SpaceKind::Spherical => {
            if !(alpha > -1.0) || alpha == 0.0 {
                return None;
            }
            Some(bisect(|r| -r / r.tan() - alpha, 1e-12, PI - 1e-12, 1e-12))
        }
        SpaceKind::Euclidean => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::curvature;
    use crate::stationary::el_residual;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    const H2: SpaceKind = SpaceKind::Hyperbolic;
    const S2: SpaceKind = SpaceKind::Spherical;

    #[test]
    fn classify_the_four_hyperbolic_types() {
        let g = classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 0.0), 0.0).unwrap();
        assert_eq!(g.curve_type, CurveType::Geodesic);
        assert_eq!(g.kappa, 0.0);
        assert!(g.passes_through_pole());

        let e = classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 0.0), 0.7).unwrap();
        assert_eq!(e.curve_type, CurveType::Equidistant);
        assert!(e.kappa.abs() > 0.0 && e.kappa.abs() < 1.0);

        let h = classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 1.0), -0.9).unwrap();
        assert_eq!(h.curve_type, CurveType::Horocycle);
        assert!((h.kappa.abs() - 1.0).abs() < 1e-15);

        let r: f64 = 1.3;
        let c =
            classify_constant_curvature(H2, AmbientVec::new(0.0, 0.0, -1.0), r.cosh()).unwrap();
        assert_eq!(c.curve_type, CurveType::Circle);
        assert!((c.kappa - r.cosh() / r.sinh()).abs() < 1e-12);
        assert!((c.pole_circle_radius().unwrap() - r).abs() < 1e-12);
    }

    #[test]
    fn classify_rejects_empty_level_sets() {
        // circle data with tau on the wrong side
        assert!(matches!(
            classify_constant_curvature(H2, AmbientVec::new(0.0, 0.0, 1.0), 2.0),
            Err(Error::EmptyLevelSet { .. })
        ));
        // |tau| <= 1 with timelike axis is a point or empty
        assert!(classify_constant_curvature(H2, AmbientVec::new(0.0, 0.0, -1.0), 0.5).is_err());
        // horocycle with tau of the same sign as a_z
        assert!(classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 1.0), 0.5).is_err());
        // sphere: |tau| >= |a|
        assert!(classify_constant_curvature(S2, AmbientVec::pole(), 1.2).is_err());
    }

    #[test]
    fn classify_sphere_circles() {
        let r = FRAC_PI_3;
        let c = classify_constant_curvature(S2, AmbientVec::pole(), r.cos()).unwrap();
        assert_eq!(c.curve_type, CurveType::SmallCircle);
        assert!((c.kappa - r.cos() / r.sin()).abs() < 1e-13);
        assert!((c.pole_circle_radius().unwrap() - r).abs() < 1e-13);

        let g = classify_constant_curvature(S2, AmbientVec::new(0.3, -0.4, 0.0), 0.0).unwrap();
        assert_eq!(g.curve_type, CurveType::GreatCircle);
        assert!(g.passes_through_pole());

        // normalization: scaling (a, tau) together changes nothing
        let c2 = classify_constant_curvature(S2, AmbientVec::pole().scale(3.0), 3.0 * r.cos())
            .unwrap();
        assert!((c2.kappa - c.kappa).abs() < 1e-13);
    }

    #[test]
    fn stationarity_of_constant_curvature_curves() {
        let g = classify_constant_curvature(H2, AmbientVec::new(0.0, 1.0, 0.0), 0.0).unwrap();
        assert!(is_stationary_constant_curvature(&g, 7.3));
        assert!(is_stationary_constant_curvature(&g, -0.2));

        let r: f64 = 1.0;
        let c =
            classify_constant_curvature(H2, AmbientVec::new(0.0, 0.0, -1.0), r.cosh()).unwrap();
        assert!(is_stationary_constant_curvature(&c, -r / r.tanh()));
        assert!(!is_stationary_constant_curvature(&c, -2.0));

        // horocycles are never stationary
        let h = classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 1.0), -1.3).unwrap();
        for alpha in [-3.0, -1.0, 0.5, 2.0] {
            assert!(!is_stationary_constant_curvature(&h, alpha));
        }

        // the equator is a geodesic not through the pole: stationary only
        // for alpha = 0
        let eq = classify_constant_curvature(S2, AmbientVec::pole(), FRAC_PI_2.cos()).unwrap();
        assert!(is_stationary_constant_curvature(&eq, 0.0));
        assert!(!is_stationary_constant_curvature(&eq, 2.0));
        assert!(!is_stationary_constant_curvature(&eq, -0.5));
    }

    #[test]
    fn circle_alpha_values_and_limits() {
        assert!((circle_alpha(H2, 1.0).unwrap() + 1.3130352854993312).abs() < 1e-13);
        // r -> 0 limit is -1 from below
        let a = circle_alpha(H2, 1e-6).unwrap();
        assert!(a < -1.0 && (a + 1.0).abs() < 1e-11);
        assert!(circle_alpha(S2, FRAC_PI_2).unwrap().abs() < 1e-15);
        assert_eq!(circle_alpha(SpaceKind::Euclidean, 5.0).unwrap(), -1.0);
        assert!(circle_alpha(S2, PI).is_err());
        assert!(circle_alpha(H2, 0.0).is_err());
    }

    #[test]
    fn circle_alpha_monotone_and_range() {
        let mut prev = f64::INFINITY;
        for i in 1..10_000 {
            let r = 8.0 * i as f64 / 10_000.0;
            let a = circle_alpha(H2, r).unwrap();
            assert!(a < prev);
            assert!(a < -1.0);
            prev = a;
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 1..10_000 {
            let r = PI * i as f64 / 10_000.0;
            let a = circle_alpha(S2, r).unwrap();
            assert!(a > prev);
            assert!(a > -1.0);
            prev = a;
        }
    }

    #[test]
    fn invert_circle_alpha_round_trips() {
        let r = invert_circle_alpha(H2, -1.3130352854993312).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        assert!(invert_circle_alpha(H2, -0.5).is_none());
        assert!(invert_circle_alpha(H2, -1.0).is_none());
        assert!(invert_circle_alpha(S2, -2.0).is_none());
        assert!(invert_circle_alpha(S2, 0.0).is_none());
        for alpha in [-5.0, -2.0, -1.01] {
            let r = invert_circle_alpha(H2, alpha).unwrap();
            assert!((circle_alpha(H2, r).unwrap() - alpha).abs() < 1e-10);
        }
        for alpha in [-0.9, -0.3, 0.5, 4.0] {
            let r = invert_circle_alpha(S2, alpha).unwrap();
            assert!((circle_alpha(S2, r).unwrap() - alpha).abs() < 1e-10);
        }
        assert!(invert_circle_alpha(SpaceKind::Euclidean, -1.0).is_none());
    }

    #[test]
    fn sampled_branches_have_constant_curvature() {
        let cases = [
            classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 0.0), 0.7).unwrap(),
            classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 1.0), -0.9).unwrap(),
            classify_constant_curvature(H2, AmbientVec::new(0.0, 0.0, -1.0), 1.4f64.cosh())
                .unwrap(),
            classify_constant_curvature(S2, AmbientVec::pole(), FRAC_PI_3.cos()).unwrap(),
            // off-center circle
            classify_constant_curvature(S2, AmbientVec::new(0.6, 0.0, 0.8), 0.5).unwrap(),
        ];
        for c in cases {
            let states = c.sample_states(4000).unwrap();
            let n = states.len();
            for s in &states[4..n - 4] {
                let k = curvature(c.space, s).unwrap();
                assert!(
                    (k.abs() - c.kappa.abs()).abs() < 1e-5,
                    "{:?}: kappa {k} vs {}",
                    c.curve_type,
                    c.kappa
                );
            }
        }
    }

    #[test]
    fn non_stationary_families_have_residual_bounded_away_from_zero() {
        // numeric witness of the exclusivity theorem: anything that is not a
        // pole geodesic or pole circle keeps |residual| > 1e-3
        let cases = [
            classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 0.0), 0.7).unwrap(),
            classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 1.0), -0.9).unwrap(),
            classify_constant_curvature(S2, AmbientVec::new(0.6, 0.0, 0.8), 0.5).unwrap(),
        ];
        for c in cases {
            let states = c.sample_states(1500).unwrap();
            for alpha in [-3.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
                let max_res = states[3..states.len() - 3]
                    .iter()
                    .map(|s| el_residual(c.space, alpha, s).unwrap().abs())
                    .fold(0.0f64, f64::max);
                assert!(
                    max_res > 1e-3,
                    "{:?} alpha={alpha}: residual {max_res}",
                    c.curve_type
                );
            }
        }
    }

    #[test]
    fn normal_field_is_unit_and_orthogonal_to_position() {
        let c = classify_constant_curvature(H2, AmbientVec::new(1.0, 0.0, 0.0), 0.7).unwrap();
        for &(v, u) in c.sample_polar(64).unwrap().iter() {
            let p = crate::geometry::embed(H2, crate::geometry::PolarPoint::new(u, v)).unwrap();
            let n = c.normal_at(p);
            assert!((metric_dot(H2, n, n) - 1.0).abs() < 1e-9);
            assert!(metric_dot(H2, n, p).abs() < 1e-9);
        }
    }
}
