//! Space registry: the six Jacobi-related manifolds plus the comparison
//! corpus, with their chart dimensions, parameter sectors and group lifts.

use crate::error::{Error, Result};
use crate::group::Chart;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpaceId {
    /// Heisenberg group, coordinates (lambda, mu, kappa).
    H1,
    /// SL(2,R) in Iwasawa coordinates (x, y, theta).
    Sl2r,
    /// Siegel upper half-plane (x, y).
    X1,
    /// Siegel-Jacobi upper half-plane (x, y, p, q).
    Xj1,
    /// Extended Siegel-Jacobi upper half-plane (x, y, p, q, kappa).
    ExtXj1,
    /// The Jacobi group itself in S-coordinates (x, y, theta, p, q, kappa).
    Gj1,
    /// Round two-sphere (theta, phi).
    Sphere2,
    /// Siegel disk (xi, eta), |.| < 1.
    Disk1,
    /// Euclidean plane.
    Plane2,
    /// Three-dimensional two-parameter homogeneous family (x, y, z).
    Bcv { kappa: f64, tau: f64 },
    /// Half-space x1 > 0 with the hyperbolic metric, dimension 3.
    PoincareHp,
}

impl SpaceId {
    pub fn dim(&self) -> usize {
        match self {
            SpaceId::H1 | SpaceId::Sl2r | SpaceId::Bcv { .. } | SpaceId::PoincareHp => 3,
            SpaceId::X1 | SpaceId::Sphere2 | SpaceId::Disk1 | SpaceId::Plane2 => 2,
            SpaceId::Xj1 => 4,
            SpaceId::ExtXj1 => 5,
            SpaceId::Gj1 => 6,
        }
    }

    /// The six spaces carrying invariant coframes from the Jacobi group.
    pub fn jacobi_family() -> [SpaceId; 6] {
        [SpaceId::H1, SpaceId::Sl2r, SpaceId::X1, SpaceId::Xj1, SpaceId::ExtXj1, SpaceId::Gj1]
    }

    pub fn is_jacobi(&self) -> bool {
        matches!(
            self,
            SpaceId::H1 | SpaceId::Sl2r | SpaceId::X1 | SpaceId::Xj1 | SpaceId::ExtXj1
                | SpaceId::Gj1
        )
    }

    /// The group whose coframe induces this space's frame data, with the
    /// index sets of the retained coframe rows and coordinate columns.
    pub fn frame_lift(&self) -> Option<(SpaceId, Vec<usize>)> {
        match self {
            SpaceId::X1 => Some((SpaceId::Sl2r, vec![0, 1])),
            SpaceId::Xj1 => Some((SpaceId::Gj1, vec![0, 1, 3, 4])),
            SpaceId::ExtXj1 => Some((SpaceId::Gj1, vec![0, 1, 3, 4, 5])),
            _ => None,
        }
    }

    /// Lift a point of a quotient space to its group's chart (theta = 0, and
    /// kappa = 0 where the quotient forgets it).
    pub fn lift_coords(&self, c: &[f64]) -> Option<Vec<f64>> {
        match self {
            SpaceId::X1 => Some(vec![c[0], c[1], 0.0]),
            SpaceId::Xj1 => Some(vec![c[0], c[1], 0.0, c[2], c[3], 0.0]),
            SpaceId::ExtXj1 => Some(vec![c[0], c[1], 0.0, c[2], c[3], c[4]]),
            _ => None,
        }
    }

    pub fn group_chart(&self) -> Option<Chart> {
        match self {
            SpaceId::H1 => Some(Chart::Ez),
            SpaceId::Sl2r => Some(Chart::Iwasawa),
            SpaceId::Gj1 => Some(Chart::S),
            _ => None,
        }
    }

    /// Chart of the homogeneous space the group acts on.
    pub fn action_chart(&self) -> Option<Chart> {
        match self {
            SpaceId::Sl2r => Some(Chart::Iwasawa),
            SpaceId::X1 => Some(Chart::HalfPlane),
            SpaceId::Xj1 => Some(Chart::SjPlane),
            SpaceId::ExtXj1 => Some(Chart::ExtSjPlane),
            _ => None,
        }
    }

    /// Chart-domain test for a coordinate vector.
    pub fn in_domain(&self, x: &[f64]) -> bool {
        match self {
            SpaceId::Sl2r | SpaceId::X1 | SpaceId::Xj1 | SpaceId::ExtXj1 | SpaceId::Gj1 => {
                x[1] > 0.0
            }
            SpaceId::Disk1 => x[0] * x[0] + x[1] * x[1] < 1.0,
            SpaceId::Sphere2 => x[0] > 0.0 && x[0] < std::f64::consts::PI,
            SpaceId::Bcv { kappa, .. } => 1.0 + kappa / 4.0 * (x[0] * x[0] + x[1] * x[1]) > 0.0,
            SpaceId::PoincareHp => x[0] > 0.0,
            _ => true,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SpaceId::H1 => "h1".into(),
            SpaceId::Sl2r => "sl2r".into(),
            SpaceId::X1 => "x1".into(),
            SpaceId::Xj1 => "xj1".into(),
            SpaceId::ExtXj1 => "ext-xj1".into(),
            SpaceId::Gj1 => "gj1".into(),
            SpaceId::Sphere2 => "sphere2".into(),
            SpaceId::Disk1 => "disk1".into(),
            SpaceId::Plane2 => "plane2".into(),
            SpaceId::Bcv { kappa, tau } => format!("bcv({},{})", kappa, tau),
            SpaceId::PoincareHp => "poincare-hp".into(),
        }
    }
}

/// The four metric parameters. Aliases are always recomputed, never stored.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MetricParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams { alpha: 1.0, beta: 1.0, gamma: 1.0, delta: 1.0 }
    }
}

impl MetricParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        MetricParams { alpha, beta, gamma, delta }
    }

    pub fn c1(&self) -> f64 {
        4.0 * self.alpha
    }

    pub fn c2(&self) -> f64 {
        self.gamma
    }

    pub fn k(&self) -> f64 {
        2.0 * self.c1()
    }

    pub fn mu(&self) -> f64 {
        self.c2() / 2.0
    }

    /// Parameter names meaningful for a space.
    pub fn active_names(space: SpaceId) -> &'static [&'static str] {
        match space {
            SpaceId::X1 => &["alpha"],
            SpaceId::Sl2r => &["alpha", "beta"],
            SpaceId::Xj1 => &["alpha", "gamma"],
            SpaceId::ExtXj1 => &["alpha", "gamma", "delta"],
            SpaceId::Gj1 => &["alpha", "beta", "gamma", "delta"],
            _ => &[],
        }
    }

    /// Require the active parameters of `space` to be strictly positive.
    pub fn validate_for(&self, space: SpaceId) -> Result<()> {
        for name in Self::active_names(space) {
            let v = match *name {
                "alpha" => self.alpha,
                "beta" => self.beta,
                "gamma" => self.gamma,
                "delta" => self.delta,
                _ => unreachable!(),
            };
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!(
                    "parameter {} must be positive for {}",
                    name,
                    space.label()
                )));
            }
        }
        Ok(())
    }
}
