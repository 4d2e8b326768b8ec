use nalgebra::{DVector, Matrix3};

use super::Cycle;
use crate::error::{GeomError, Result};
use crate::space::{Curvature, Point, SpaceKind};

/// Tangent vector at `b` pointing along the geodesic towards `a`, built from
/// the coordinate difference to avoid cancellation.
fn log_direction(space: SpaceKind, b: &Point, a: &Point) -> DVector<f64> {
    let d = a.coords() - b.coords();
    if space.is_flat() {
        return d;
    }
    let bb = b.coords();
    d.clone() - bb * (space.form(&d, bb) / space.form(bb, bb))
}

/// Signed turning angle at `b` of the broken geodesic `a -> b -> c`,
/// positive for left turns. This is the supplement of the triangle angle at
/// `b` given by the law of cosines; it is evaluated in the tangent plane at
/// `b` so that tiny triangles keep full precision.
fn turning_angle(space: SpaceKind, a: &Point, b: &Point, c: &Point) -> f64 {
    let back = log_direction(space, b, a);
    let fwd = log_direction(space, b, c);
    let u = -back;
    let dot = space.form(&u, &fwd);
    let cross = if space.is_flat() {
        u[0] * fwd[1] - u[1] * fwd[0]
    } else {
        let bb = b.coords();
        let m = Matrix3::new(bb[0], u[0], fwd[0], bb[1], u[1], fwd[1], bb[2], u[2], fwd[2]);
        let scale = match space.curvature() {
            Curvature::Negative => (-space.form(bb, bb)).sqrt(),
            _ => bb.norm(),
        };
        m.determinant() / scale
    };
    cross.atan2(dot)
}

/// Geodesic curvature estimated from three consecutive points spaced by
/// arclength `step`.
pub fn turning_curvature(space: SpaceKind, a: &Point, b: &Point, c: &Point, step: f64) -> f64 {
    turning_angle(space, a, b, c) / step
}

/// Finite-difference estimate of the geodesic curvature of `c`, using the
/// points at arclength `-step`, `0` and `step`.
pub fn finite_difference_curvature(c: &Cycle, step: f64) -> Result<f64> {
    check_step(step)?;
    let a = c.point_at(-step);
    let b = c.point_at(0.0);
    let d = c.point_at(step);
    Ok(turning_curvature(c.space(), &a, &b, &d, step))
}

pub(crate) fn check_step(step: f64) -> Result<()> {
    if !(step > 1e-6 && step < 1e-2) {
        return Err(GeomError::StepOutOfRange(step));
    }
    Ok(())
}
