use nalgebra::{DVector, Vector2};
use serde::{Deserialize, Serialize};

use super::{Point, SpaceKind};
use crate::error::{GeomError, Result};

/// Planar views of the two-dimensional spaces.
///
/// `Poincare` and `Stereographic` are conformal; `Klein` and `Gnomonic`
/// send geodesics to straight lines. Spherical charts look at the sphere
/// from the base point `e0` (the chart centre); stereographic projection
/// is from `-e0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelChart {
    Klein,
    Poincare,
    Gnomonic,
    Stereographic,
    Identity,
}

impl ModelChart {
    pub fn conformal(space: SpaceKind) -> Self {
        match space.curvature() {
            super::Curvature::Negative => ModelChart::Poincare,
            super::Curvature::Positive => ModelChart::Stereographic,
            super::Curvature::Zero => ModelChart::Identity,
        }
    }

    pub fn collinear(space: SpaceKind) -> Self {
        match space.curvature() {
            super::Curvature::Negative => ModelChart::Klein,
            super::Curvature::Positive => ModelChart::Gnomonic,
            super::Curvature::Zero => ModelChart::Identity,
        }
    }

    pub fn space_fits(&self, space: SpaceKind) -> bool {
        space.dimension() == 2
            && match self {
                ModelChart::Klein | ModelChart::Poincare => space.is_hyperbolic(),
                ModelChart::Gnomonic | ModelChart::Stereographic => space.is_spherical(),
                ModelChart::Identity => space.is_flat(),
            }
    }

    pub fn to_chart(&self, p: &Point) -> Result<Vector2<f64>> {
        if !self.space_fits(p.space()) {
            return Err(GeomError::SpaceMismatch);
        }
        let x = p.coords();
        let v = match self {
            ModelChart::Identity => Vector2::new(x[0], x[1]),
            ModelChart::Klein => Vector2::new(x[1], x[2]) / x[0],
            ModelChart::Poincare => Vector2::new(x[1], x[2]) / (1.0 + x[0]),
            ModelChart::Gnomonic => {
                if x[0] <= 1e-12 {
                    return Err(GeomError::OutOfChartDomain);
                }
                Vector2::new(x[1], x[2]) / x[0]
            }
            ModelChart::Stereographic => {
                if 1.0 + x[0] <= 1e-14 {
                    return Err(GeomError::OutOfChartDomain);
                }
                Vector2::new(x[1], x[2]) / (1.0 + x[0])
            }
        };
        Ok(v)
    }

    pub fn from_chart(&self, space: SpaceKind, v: Vector2<f64>) -> Result<Point> {
        if !self.space_fits(space) {
            return Err(GeomError::SpaceMismatch);
        }
        if !(v[0].is_finite() && v[1].is_finite()) {
            return Err(GeomError::OutOfChartDomain);
        }
        let q = v.norm_squared();
        let coords = match self {
            ModelChart::Identity => vec![v[0], v[1]],
            ModelChart::Klein => {
                if q >= 1.0 {
                    return Err(GeomError::OutOfChartDomain);
                }
                let s = 1.0 / (1.0 - q).sqrt();
                vec![s, s * v[0], s * v[1]]
            }
            ModelChart::Poincare => {
                if q >= 1.0 {
                    return Err(GeomError::OutOfChartDomain);
                }
                let den = 1.0 - q;
                vec![(1.0 + q) / den, 2.0 * v[0] / den, 2.0 * v[1] / den]
            }
            ModelChart::Gnomonic => {
                let s = 1.0 / (1.0 + q).sqrt();
                vec![s, s * v[0], s * v[1]]
            }
            ModelChart::Stereographic => {
                let den = 1.0 + q;
                vec![(1.0 - q) / den, 2.0 * v[0] / den, 2.0 * v[1] / den]
            }
        };
        Ok(Point::from_raw(space, DVector::from_vec(coords)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apex_is_chart_origin() {
        let o = SpaceKind::H2.base_point();
        for chart in [ModelChart::Klein, ModelChart::Poincare] {
            assert_eq!(chart.to_chart(&o).unwrap(), Vector2::zeros());
        }
        let p = ModelChart::Poincare.from_chart(SpaceKind::H2, Vector2::zeros()).unwrap();
        assert_eq!(p.coords().as_slice(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn domains_are_enforced() {
        assert_eq!(
            ModelChart::Klein.from_chart(SpaceKind::H2, Vector2::new(1.0, 0.0)).unwrap_err(),
            GeomError::OutOfChartDomain
        );
        let north = SpaceKind::S2.base_point().antipode();
        assert!(ModelChart::Stereographic.to_chart(&north).is_err());
        let equator = Point::from_polar(SpaceKind::S2, std::f64::consts::FRAC_PI_2, 0.0);
        assert!(ModelChart::Gnomonic.to_chart(&equator).is_err());
        assert!(ModelChart::Klein.to_chart(&equator).is_err());
    }
}
