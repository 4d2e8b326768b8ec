use nalgebra::DVector;

use super::SpaceKind;
use crate::error::{invalid, Result};

/// A location in S^d, R^d or H^d, stored in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    space: SpaceKind,
    coords: DVector<f64>,
}

impl Point {
    /// Validate and renormalize ambient coordinates.
    ///
    /// Coordinates within `1e-8` (relative) of the constraint surface are
    /// accepted and projected back onto it.
    pub fn new(space: SpaceKind, coords: DVector<f64>) -> Result<Self> {
        if coords.len() != space.ambient_dim() {
            return invalid(format!(
                "{space} point needs {} coordinates, got {}",
                space.ambient_dim(),
                coords.len()
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return invalid("non-finite coordinate");
        }
        if space.is_curved() {
            let q = space.form(&coords, &coords);
            let target = if space.is_hyperbolic() { -1.0 } else { 1.0 };
            let scale = coords.norm_squared().max(1.0);
            if (q - target).abs() > 1e-8 * scale {
                return invalid(format!("coordinates off the {space} model surface (form {q})"));
            }
            if space.is_hyperbolic() && coords[0] <= 0.0 {
                return invalid("hyperboloid point on the lower sheet");
            }
        }
        Ok(Self::from_raw(space, coords))
    }

    /// Project arbitrary coordinates onto the model surface without checks.
    pub(crate) fn from_raw(space: SpaceKind, mut coords: DVector<f64>) -> Self {
        if space.is_spherical() {
            let n = coords.norm();
            coords /= n;
        } else if space.is_hyperbolic() {
            let spatial: f64 = coords.iter().skip(1).map(|c| c * c).sum();
            coords[0] = (1.0 + spatial).sqrt();
        }
        Self { space, coords }
    }

    /// Point at geodesic distance `r` from the base point in direction
    /// `theta` (measured in the coordinate plane of axes 1 and 2).
    pub fn from_polar(space: SpaceKind, r: f64, theta: f64) -> Self {
        let mut v = DVector::zeros(space.ambient_dim());
        let (s, c) = theta.sin_cos();
        if space.is_curved() {
            let (radial, axial) = if space.is_hyperbolic() {
                (r.sinh(), r.cosh())
            } else {
                (r.sin(), r.cos())
            };
            v[0] = axial;
            v[1] = radial * c;
            v[2] = radial * s;
        } else {
            v[0] = r * c;
            v[1] = r * s;
        }
        Self::from_raw(space, v)
    }

    /// Point in direction given by a unit vector in the tangent space at the base point.
    pub fn from_direction(space: SpaceKind, r: f64, dir: &[f64]) -> Result<Self> {
        if dir.len() != space.dimension() {
            return invalid("direction has the wrong length");
        }
        let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return invalid("zero direction");
        }
        let mut v = DVector::zeros(space.ambient_dim());
        let offset = if space.is_curved() { 1 } else { 0 };
        let radial = match space.curvature() {
            super::Curvature::Positive => r.sin(),
            super::Curvature::Zero => r,
            super::Curvature::Negative => r.sinh(),
        };
        for (i, d) in dir.iter().enumerate() {
            v[i + offset] = radial * d / norm;
        }
        if space.is_curved() {
            v[0] = if space.is_hyperbolic() { r.cosh() } else { r.cos() };
        }
        Ok(Self::from_raw(space, v))
    }

    /// Geodesic polar coordinates `(r, theta)` about the base point (2D).
    pub fn to_polar(&self) -> (f64, f64) {
        let base = self.space.base_point();
        let r = super::distance(&base, self);
        let (x, y) = if self.space.is_curved() {
            (self.coords[1], self.coords[2])
        } else {
            (self.coords[0], self.coords[1])
        };
        let theta = if r == 0.0 { 0.0 } else { y.atan2(x) };
        (r, theta)
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    /// The antipodal point (spheres only; returns `self` otherwise).
    pub fn antipode(&self) -> Point {
        if self.space.is_spherical() {
            Self { space: self.space, coords: -&self.coords }
        } else {
            self.clone()
        }
    }

    /// Residual of the model-surface constraint.
    pub fn constraint_residual(&self) -> f64 {
        match self.space.curvature() {
            super::Curvature::Positive => (self.coords.norm_squared() - 1.0).abs(),
            super::Curvature::Negative => (self.space.form(&self.coords, &self.coords) + 1.0).abs(),
            super::Curvature::Zero => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_round_trip() {
        for space in [SpaceKind::H2, SpaceKind::S2, SpaceKind::E2] {
            let p = Point::from_polar(space, 0.7, 2.1);
            let (r, t) = p.to_polar();
            assert!((r - 0.7).abs() < 1e-12, "{space}");
            assert!((t - 2.1).abs() < 1e-12, "{space}");
        }
    }

    #[test]
    fn rejects_off_surface_coordinates() {
        let v = DVector::from_vec(vec![2.0, 0.0, 0.0]);
        assert!(Point::new(SpaceKind::H2, v.clone()).is_err());
        assert!(Point::new(SpaceKind::S2, v).is_err());
        let lower = DVector::from_vec(vec![-1.0, 0.0, 0.0]);
        assert!(Point::new(SpaceKind::H2, lower).is_err());
    }

    #[test]
    fn renormalizes_small_drift() {
        let v = DVector::from_vec(vec![1.0 + 1e-10, 0.0, 0.0]);
        let p = Point::new(SpaceKind::S2, v).unwrap();
        assert!(p.constraint_residual() < 1e-15);
    }
}
