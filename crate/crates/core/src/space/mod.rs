//! Points, distances, geodesics, isometries and model charts of the
//! constant-curvature spaces S^d, R^d and H^d (d = 2, and d = 3 for balls).
//!
//! Curved spaces are stored in ambient coordinates: the unit sphere in
//! R^{d+1} and the upper sheet of the hyperboloid `<x,x> = -1` in Minkowski
//! space R^{d,1} (signature `- + ... +`). Coordinate 0 is the distinguished
//! axis in both cases, so the base point is `e0` and charts are projections
//! along it. Flat space keeps plain Cartesian coordinates.

mod chart;
mod geodesic;
mod isometry;
mod point;

pub use chart::ModelChart;
pub use geodesic::{common_perpendicular, distance, geodesic_point, Geodesic, GeodesicSegment};
pub use isometry::Isometry;
pub use point::Point;

use nalgebra::{DVector, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Sign of the sectional curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curvature {
    Positive,
    Zero,
    Negative,
}

impl Curvature {
    pub fn sign(self) -> f64 {
        match self {
            Curvature::Positive => 1.0,
            Curvature::Zero => 0.0,
            Curvature::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SpaceKind {
    curvature: Curvature,
    dimension: usize,
}

impl SpaceKind {
    pub const S2: SpaceKind = SpaceKind { curvature: Curvature::Positive, dimension: 2 };
    pub const E2: SpaceKind = SpaceKind { curvature: Curvature::Zero, dimension: 2 };
    pub const H2: SpaceKind = SpaceKind { curvature: Curvature::Negative, dimension: 2 };
    pub const S3: SpaceKind = SpaceKind { curvature: Curvature::Positive, dimension: 3 };
    pub const E3: SpaceKind = SpaceKind { curvature: Curvature::Zero, dimension: 3 };
    pub const H3: SpaceKind = SpaceKind { curvature: Curvature::Negative, dimension: 3 };

    pub fn new(curvature: Curvature, dimension: usize) -> Result<Self> {
        if !(2..=3).contains(&dimension) {
            return Err(GeomError::Unsupported(format!("dimension {dimension}")));
        }
        Ok(Self { curvature, dimension })
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_curved(&self) -> bool {
        self.curvature != Curvature::Zero
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.curvature == Curvature::Negative
    }

    pub fn is_spherical(&self) -> bool {
        self.curvature == Curvature::Positive
    }

    pub fn is_flat(&self) -> bool {
        self.curvature == Curvature::Zero
    }

    /// Length of the stored coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        if self.is_curved() {
            self.dimension + 1
        } else {
            self.dimension
        }
    }

    /// The ambient bilinear form: Euclidean for S^d and R^d, Minkowski for H^d.
    pub fn form(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        let mut s = a.dot(b);
        if self.is_hyperbolic() {
            s -= 2.0 * a[0] * b[0];
        }
        s
    }

    /// Apply the Gram matrix `J` of the form to a vector.
    pub(crate) fn gram(&self, v: &DVector<f64>) -> DVector<f64> {
        let mut w = v.clone();
        if self.is_hyperbolic() {
            w[0] = -w[0];
        }
        w
    }

    /// The distinguished origin: `e0` for curved spaces, `0` for flat space.
    pub fn base_point(&self) -> Point {
        let mut v = DVector::zeros(self.ambient_dim());
        if self.is_curved() {
            v[0] = 1.0;
        }
        Point::from_raw(*self, v)
    }

    /// `sn_k(x)`: sin, identity or sinh according to the curvature.
    pub fn sn(&self, x: f64) -> f64 {
        match self.curvature {
            Curvature::Positive => x.sin(),
            Curvature::Zero => x,
            Curvature::Negative => x.sinh(),
        }
    }

    pub fn label(&self) -> String {
        let letter = match self.curvature {
            Curvature::Positive => "S",
            Curvature::Zero => "E",
            Curvature::Negative => "H",
        };
        format!("{letter}{}", self.dimension)
    }

    pub(crate) fn require_dim2(&self, what: &str) -> Result<()> {
        if self.dimension != 2 {
            return Err(GeomError::Unsupported(format!("{what} in dimension {}", self.dimension)));
        }
        Ok(())
    }
}

impl std::fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let curvature = match chars.next() {
            Some('S') => Curvature::Positive,
            Some('E') => Curvature::Zero,
            Some('H') => Curvature::Negative,
            _ => return Err(GeomError::Invalid(format!("unknown space `{s}`"))),
        };
        let dimension = match chars.as_str() {
            "2" => 2,
            "3" => 3,
            _ => return Err(GeomError::Invalid(format!("unknown space `{s}`"))),
        };
        SpaceKind::new(curvature, dimension)
    }
}

impl TryFrom<String> for SpaceKind {
    type Error = GeomError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SpaceKind> for String {
    fn from(s: SpaceKind) -> String {
        s.label()
    }
}

/// Euclidean cross product of two ambient 3-vectors.
pub(crate) fn cross3(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    let u = Vector3::new(a[0], a[1], a[2]);
    let v = Vector3::new(b[0], b[1], b[2]);
    let w = u.cross(&v);
    DVector::from_column_slice(w.as_slice())
}

/// The vector spanning the form-orthogonal complement of `a` and `b` in a
/// 3-dimensional ambient space.
pub(crate) fn form_cross(space: SpaceKind, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    space.gram(&cross3(a, b))
}

/// Null vector of the ideal point at angle `theta` on the boundary circle.
pub(crate) fn ideal_vector(theta: f64) -> DVector<f64> {
    DVector::from_vec(vec![1.0, theta.cos(), theta.sin()])
}

/// Reduce an angle to `[0, 2pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(std::f64::consts::TAU - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_outside_two_and_three_are_rejected() {
        assert!(SpaceKind::new(Curvature::Negative, 4).is_err());
        assert!(SpaceKind::new(Curvature::Negative, 1).is_err());
        assert_eq!(SpaceKind::new(Curvature::Zero, 3).unwrap(), SpaceKind::E3);
    }

    #[test]
    fn minkowski_form_of_base_point() {
        let o = SpaceKind::H2.base_point();
        assert_eq!(SpaceKind::H2.form(o.coords(), o.coords()), -1.0);
    }

    #[test]
    fn angle_helpers() {
        assert!((normalize_angle(-0.5) - (std::f64::consts::TAU - 0.5)).abs() < 1e-15);
        assert!((angle_gap(0.1, std::f64::consts::TAU - 0.1) - 0.2).abs() < 1e-12);
    }
}
