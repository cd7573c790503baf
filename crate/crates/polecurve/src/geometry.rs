//! Ambient-space primitives for the three space forms.
//!
//! The hyperbolic plane (hyperboloid model in Lorentz-Minkowski space), the
//! unit sphere, and the Euclidean plane are handled by one code path through
//! the warp function `w(u)` of geodesic polar coordinates about the pole
//! `N = (0,0,1)`: `sinh u`, `sin u`, and `u` respectively. The metric on the
//! ambient coordinates is `dx^2 + dy^2 + eps dz^2` with `eps = -1` only for
//! the hyperbolic case.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Selects the ambient geometry and with it the warp function and metric sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    Hyperbolic,
    Spherical,
    Euclidean,
}

impl SpaceKind {
    /// Metric signature of the z-coordinate: -1 for hyperbolic, +1 otherwise.
    #[inline]
    pub fn epsilon(self) -> f64 {
        match self {
            SpaceKind::Hyperbolic => -1.0,
            _ => 1.0,
        }
    }

    /// Warp function `w(u)`: metric coefficient of the angular direction.
    #[inline]
    pub fn warp(self, u: f64) -> f64 {
        match self {
            SpaceKind::Hyperbolic => u.sinh(),
            SpaceKind::Spherical => u.sin(),
            SpaceKind::Euclidean => u,
        }
    }

    /// Derivative `w'(u)`.
    #[inline]
    pub fn warp_prime(self, u: f64) -> f64 {
        match self {
            SpaceKind::Hyperbolic => u.cosh(),
            SpaceKind::Spherical => u.cos(),
            SpaceKind::Euclidean => 1.0,
        }
    }

    /// Upper bound of the valid radial coordinate (exclusive).
    #[inline]
    pub fn u_max(self) -> f64 {
        match self {
            SpaceKind::Spherical => std::f64::consts::PI,
            _ => f64::INFINITY,
        }
    }

    /// Checks `0 < u < u_max`. On the sphere the antipode `u = pi` is
    /// rejected like the pole: rays from `N` are not unique there.
    pub fn check_u(self, u: f64) -> Result<()> {
        if u.is_finite() && u > 0.0 && u < self.u_max() {
            Ok(())
        } else {
            Err(Error::InvalidU {
                u,
                u_max: self.u_max(),
            })
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpaceKind::Hyperbolic => "h2",
            SpaceKind::Spherical => "s2",
            SpaceKind::Euclidean => "e2",
        }
    }
}

/// Intrinsic polar coordinates: `u` is the geodesic distance to the pole `N`,
/// `v` the angle about the z-axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub u: f64,
    pub v: f64,
}

impl PolarPoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    /// Validates `0 < u < u_max` for the given space.
    pub fn checked(space: SpaceKind, u: f64, v: f64) -> Result<Self> {
        space.check_u(u)?;
        Ok(Self { u, v })
    }
}

/// A point or vector in the ambient coordinates `(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AmbientVec {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// The pole `N = (0, 0, 1)`.
    pub const fn pole() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    /// Euclidean norm of the coordinate triple.
    pub fn norm_euclidean(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Signed ambient metric: `a.x b.x + a.y b.y + eps a.z b.z`.
#[inline]
pub fn metric_dot(space: SpaceKind, a: AmbientVec, b: AmbientVec) -> f64 {
    a.x * b.x + a.y * b.y + space.epsilon() * a.z * b.z
}

/// Embeds a polar point: `Psi(u, v) = (w(u) cos v, w(u) sin v, z(u))` with
/// `z = cosh u`, `cos u`, `0` for the three spaces.
pub fn embed(space: SpaceKind, p: PolarPoint) -> Result<AmbientVec> {
    space.check_u(p.u)?;
    let w = space.warp(p.u);
    let z = match space {
        SpaceKind::Hyperbolic => p.u.cosh(),
        SpaceKind::Spherical => p.u.cos(),
        SpaceKind::Euclidean => 0.0,
    };
    Ok(AmbientVec::new(w * p.v.cos(), w * p.v.sin(), z))
}

/// Geodesic distance from the point to the pole `N`: exactly `u`.
#[inline]
pub fn distance_to_pole(_space: SpaceKind, p: PolarPoint) -> f64 {
    p.u
}

/// Unit tangent `xi = Psi_u` of the ray from `N` through the point.
pub fn ray_tangent(space: SpaceKind, p: PolarPoint) -> AmbientVec {
    let wp = space.warp_prime(p.u);
    let dz = match space {
        SpaceKind::Hyperbolic => p.u.sinh(),
        SpaceKind::Spherical => -p.u.sin(),
        SpaceKind::Euclidean => 0.0,
    };
    AmbientVec::new(wp * p.v.cos(), wp * p.v.sin(), dz)
}

/// Projects a hyperboloid point to the Poincare disk: `(x, y) / (1 + z)`.
/// The pole maps to the origin and the image lies in the open unit disk.
pub fn poincare_project(p: AmbientVec) -> (f64, f64) {
    let d = 1.0 + p.z;
    (p.x / d, p.y / d)
}

/// Orthographic projection of a sphere point along the z-axis: `(x, y)`.
pub fn orthographic_project(p: AmbientVec) -> (f64, f64) {
    (p.x, p.y)
}

/// Intrinsic distance between two points, by the law of cosines from the
/// pole, in forms stable for nearly coincident points.
pub fn pairwise_distance(space: SpaceKind, p: PolarPoint, q: PolarPoint) -> f64 {
    let dv = q.v - p.v;
    match space {
        SpaceKind::Hyperbolic => {
            // cosh d - 1 = 2 sinh^2(du/2) + 2 sinh(u1) sinh(u2) sin^2(dv/2)
            let s = ((q.u - p.u) / 2.0).sinh();
            let h = (dv / 2.0).sin();
            let e = 2.0 * s * s + 2.0 * p.u.sinh() * q.u.sinh() * h * h;
            (e + (e * (e + 2.0)).sqrt()).ln_1p()
        }
        SpaceKind::Spherical => {
            // sin^2(d/2) = sin^2(du/2) + sin(u1) sin(u2) sin^2(dv/2)
            let s = ((q.u - p.u) / 2.0).sin();
            let h = (dv / 2.0).sin();
            let e = (s * s + p.u.sin() * q.u.sin() * h * h).max(0.0);
            2.0 * e.sqrt().min(1.0).asin()
        }
        SpaceKind::Euclidean => {
            let du = q.u - p.u;
            let h = (dv / 2.0).sin();
            (du * du + 4.0 * p.u * q.u * h * h).sqrt()
        }
    }
}
