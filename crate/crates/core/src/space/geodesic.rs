use nalgebra::DVector;

use super::{cross3, form_cross, ideal_vector, normalize_angle, Curvature, Isometry, Point, SpaceKind};
use crate::error::{invalid, GeomError, Result};

/// Geodesic distance between two points of the same space.
pub fn distance(p: &Point, q: &Point) -> f64 {
    let space = p.space();
    let diff = p.coords() - q.coords();
    match space.curvature() {
        Curvature::Zero => diff.norm(),
        Curvature::Positive => 2.0 * (diff.norm() / 2.0).min(1.0).asin(),
        Curvature::Negative => {
            let chord = space.form(&diff, &diff).max(0.0).sqrt();
            2.0 * (chord / 2.0).asinh()
        }
    }
}

/// The point at fraction `t` of the way from `p` to `q` along the
/// connecting geodesic (extrapolating for `t` outside `[0, 1]`).
pub fn geodesic_point(p: &Point, q: &Point, t: f64) -> Result<Point> {
    let space = p.space();
    if q.space() != space {
        return Err(GeomError::SpaceMismatch);
    }
    if space.is_spherical() && (p.coords() + q.coords()).norm() < 1e-12 {
        return Err(GeomError::AntipodalPair);
    }
    let d = distance(p, q);
    if d < 1e-300 {
        return Ok(p.clone());
    }
    let (a, b) = match space.curvature() {
        Curvature::Zero => (1.0 - t, t),
        Curvature::Positive => {
            let s = d.sin();
            (((1.0 - t) * d).sin() / s, (t * d).sin() / s)
        }
        Curvature::Negative => {
            let s = d.sinh();
            (((1.0 - t) * d).sinh() / s, (t * d).sinh() / s)
        }
    };
    Ok(Point::from_raw(space, p.coords() * a + q.coords() * b))
}

/// An oriented geodesic of a two-dimensional space.
///
/// Stored as a unit normal `n` (form-unit and spacelike on H^2, the pole on
/// S^2) plus an offset for R^2. The left side of the direction of travel is
/// where `<x, n>` (minus the offset) is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic {
    space: SpaceKind,
    normal: DVector<f64>,
    offset: f64,
}

impl Geodesic {
    /// Normalize and wrap a normal vector.
    pub fn from_normal(space: SpaceKind, normal: DVector<f64>, offset: f64) -> Result<Self> {
        space.require_dim2("geodesic")?;
        let len = if space.is_curved() { 3 } else { 2 };
        if normal.len() != len {
            return invalid("normal has the wrong length");
        }
        let q = space.form(&normal, &normal);
        if !(q > 1e-24) || !q.is_finite() {
            return invalid("normal is not spacelike");
        }
        let s = q.sqrt();
        let offset = if space.is_flat() { offset / s } else { 0.0 };
        Ok(Self { space, normal: normal / s, offset })
    }

    /// The horizontal line through the base point, traversed along the
    /// first axis.
    pub fn standard(space: SpaceKind) -> Self {
        let len = if space.is_curved() { 3 } else { 2 };
        let mut n = DVector::zeros(len);
        n[len - 1] = 1.0;
        Self { space, normal: n, offset: 0.0 }
    }

    /// H^2 geodesic running from the ideal point at angle `from` to the one at `to`.
    pub fn from_ideal(from: f64, to: f64) -> Result<Self> {
        if super::angle_gap(from, to) < 1e-12 {
            return invalid("ideal endpoints coincide");
        }
        let n = form_cross(SpaceKind::H2, &ideal_vector(from), &ideal_vector(to));
        Self::from_normal(SpaceKind::H2, n, 0.0)
    }

    /// The great circle with the given pole; its left side is the hemisphere of the pole.
    pub fn from_pole(pole: &Point) -> Result<Self> {
        if !pole.space().is_spherical() {
            return Err(GeomError::SpaceMismatch);
        }
        Self::from_normal(pole.space(), pole.coords().clone(), 0.0)
    }

    /// Flat line `{x : <(cos a, sin a), x> = offset}` with the normal on the left.
    pub fn flat(normal_angle: f64, offset: f64) -> Self {
        let (s, c) = normal_angle.sin_cos();
        Self { space: SpaceKind::E2, normal: DVector::from_vec(vec![c, s]), offset }
    }

    /// The geodesic through `p` and `q`, oriented from `p` to `q`.
    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        let space = p.space();
        if q.space() != space {
            return Err(GeomError::SpaceMismatch);
        }
        space.require_dim2("geodesic")?;
        if distance(p, q) < 1e-14 {
            return invalid("points coincide");
        }
        match space.curvature() {
            Curvature::Zero => {
                let d = q.coords() - p.coords();
                let n = DVector::from_vec(vec![-d[1], d[0]]);
                let n = n.normalize();
                let off = n.dot(p.coords());
                Ok(Self { space, normal: n, offset: off })
            }
            Curvature::Positive => {
                if (p.coords() + q.coords()).norm() < 1e-12 {
                    return Err(GeomError::AntipodalPair);
                }
                Self::from_normal(space, cross3(p.coords(), q.coords()), 0.0)
            }
            Curvature::Negative => Self::from_normal(space, form_cross(space, p.coords(), q.coords()), 0.0),
        }
    }

    /// The geodesic through `p` with unit tangent `t` (ambient vector).
    pub fn through_direction(p: &Point, t: &DVector<f64>) -> Result<Self> {
        let space = p.space();
        match space.curvature() {
            Curvature::Zero => {
                let n = DVector::from_vec(vec![-t[1], t[0]]).normalize();
                let off = n.dot(p.coords());
                Ok(Self { space, normal: n, offset: off })
            }
            _ => Self::from_normal(space, form_cross(space, p.coords(), t), 0.0),
        }
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Ideal endpoints `(from, to)` of an H^2 geodesic, each in `[0, 2pi)`.
    /// The left side meets the boundary in the arc running counterclockwise
    /// from `to` to `from`.
    pub fn ideal_points(&self) -> Option<(f64, f64)> {
        if !self.space.is_hyperbolic() {
            return None;
        }
        let n = &self.normal;
        let rho = n[1].hypot(n[2]);
        let phi = n[2].atan2(n[1]);
        let delta = (n[0] / rho).clamp(-1.0, 1.0).acos();
        Some((normalize_angle(phi + delta), normalize_angle(phi - delta)))
    }

    /// Signed distance from `p`, positive on the left.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        let v = self.space.form(p.coords(), &self.normal);
        match self.space.curvature() {
            Curvature::Zero => v - self.offset,
            Curvature::Positive => v.clamp(-1.0, 1.0).asin(),
            Curvature::Negative => v.asinh(),
        }
    }

    /// Nearest point of the geodesic to `p`.
    pub fn project(&self, p: &Point) -> Point {
        let v = self.space.form(p.coords(), &self.normal);
        let x = p.coords();
        match self.space.curvature() {
            Curvature::Zero => Point::from_raw(self.space, x - &self.normal * (v - self.offset)),
            Curvature::Negative => Point::from_raw(self.space, (x - &self.normal * v) / (1.0 + v * v).sqrt()),
            Curvature::Positive => {
                let y = x - &self.normal * v;
                if y.norm() < 1e-14 {
                    return self.any_point();
                }
                Point::from_raw(self.space, y)
            }
        }
    }

    fn any_point(&self) -> Point {
        let n = &self.normal;
        let k = (0..3)
            .min_by(|&i, &j| n[i].abs().partial_cmp(&n[j].abs()).unwrap())
            .unwrap();
        let mut e = DVector::zeros(3);
        e[k] = 1.0;
        Point::from_raw(self.space, &e - n * n.dot(&e))
    }

    /// The foot of the perpendicular from the base point.
    pub fn foot(&self) -> Point {
        self.project(&self.space.base_point())
    }

    /// Unit tangent of the direction of travel at a point `p` of the geodesic.
    pub fn direction_at(&self, p: &Point) -> DVector<f64> {
        match self.space.curvature() {
            Curvature::Zero => DVector::from_vec(vec![self.normal[1], -self.normal[0]]),
            _ => {
                let t = form_cross(self.space, &self.normal, p.coords());
                let q = self.space.form(&t, &t).max(1e-300).sqrt();
                t / q
            }
        }
    }

    /// The point at signed arclength `s` from the foot, in the direction of travel.
    pub fn point_at(&self, s: f64) -> Point {
        let o = self.foot();
        let t = self.direction_at(&o);
        let x = o.coords();
        let y = match self.space.curvature() {
            Curvature::Zero => x + t * s,
            Curvature::Positive => x * s.cos() + t * s.sin(),
            Curvature::Negative => x * s.cosh() + t * s.sinh(),
        };
        Point::from_raw(self.space, y)
    }

    /// Arclength coordinate of the projection of `p`, measured from the foot.
    pub fn arclength_of(&self, p: &Point) -> f64 {
        let o = self.foot();
        let t = self.direction_at(&o);
        let q = self.project(p);
        let along = self.space.form(q.coords(), &t);
        match self.space.curvature() {
            Curvature::Zero => along - t.dot(o.coords()),
            Curvature::Positive => along.atan2(q.coords().dot(o.coords())),
            Curvature::Negative => along.asinh(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self { space: self.space, normal: -&self.normal, offset: -self.offset }
    }

    pub fn transformed(&self, iso: &Isometry) -> Self {
        let n = iso.apply_vector(&self.normal);
        let offset = if self.space.is_flat() {
            self.offset + n.dot(&iso.translation_part())
        } else {
            0.0
        };
        let q = self.space.form(&n, &n).sqrt();
        Self { space: self.space, normal: n / q, offset: offset / q }
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.signed_distance(p).abs() <= tol
    }

    /// Whether the two geodesics are the same set (orientation ignored).
    pub fn same_line(&self, other: &Geodesic, tol: f64) -> bool {
        let d = (&self.normal - &other.normal).amax() + (self.offset - other.offset).abs();
        let e = (&self.normal + &other.normal).amax() + (self.offset + other.offset).abs();
        d.min(e) < tol
    }

    /// The crossing point of two geodesics; `None` for disjoint (H^2, R^2)
    /// or coincident lines. On S^2 one of the two antipodal crossings is
    /// returned, the one closer to the base point.
    pub fn crossing(&self, other: &Geodesic) -> Option<Point> {
        match self.space.curvature() {
            Curvature::Zero => {
                let (a, b) = (&self.normal, &other.normal);
                let det = a[0] * b[1] - a[1] * b[0];
                if det.abs() < 1e-15 {
                    return None;
                }
                let x = (self.offset * b[1] - other.offset * a[1]) / det;
                let y = (a[0] * other.offset - b[0] * self.offset) / det;
                Some(Point::from_raw(self.space, DVector::from_vec(vec![x, y])))
            }
            Curvature::Positive => {
                let v = cross3(&self.normal, &other.normal);
                if v.norm() < 1e-15 {
                    return None;
                }
                let v = if v[0] < 0.0 { -v } else { v };
                Some(Point::from_raw(self.space, v))
            }
            Curvature::Negative => {
                let v = form_cross(self.space, &self.normal, &other.normal);
                let q = self.space.form(&v, &v);
                if q >= -1e-12 * v.norm_squared() {
                    return None;
                }
                let v = if v[0] < 0.0 { -v } else { v };
                Some(Point::from_raw(self.space, v / (-q).sqrt()))
            }
        }
    }

    /// Angle between the directions of travel of two crossing geodesics.
    pub fn angle_with(&self, other: &Geodesic) -> f64 {
        self.space.form(&self.normal, &other.normal).clamp(-1.0, 1.0).acos()
    }
}

/// A geodesic segment with its cached length.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSegment {
    pub a: Point,
    pub b: Point,
    pub length: f64,
}

impl GeodesicSegment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a.space() != b.space() {
            return Err(GeomError::SpaceMismatch);
        }
        if a.space().is_spherical() && (a.coords() + b.coords()).norm() < 1e-12 {
            return Err(GeomError::AntipodalPair);
        }
        let length = distance(&a, &b);
        Ok(Self { a, b, length })
    }

    pub fn point_at(&self, t: f64) -> Point {
        geodesic_point(&self.a, &self.b, t).expect("segment endpoints are not antipodal")
    }

    pub fn midpoint(&self) -> Point {
        self.point_at(0.5)
    }
}

/// The segment realizing the distance of two ultraparallel H^2 geodesics,
/// running from `g1` to `g2`.
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic) -> Result<GeodesicSegment> {
    let space = g1.space();
    if !space.is_hyperbolic() || g2.space() != space {
        return Err(GeomError::Unsupported("common perpendicular outside H2".into()));
    }
    let c = space.form(g1.normal(), g2.normal());
    if (c.abs() - 1.0).abs() < 1e-9 {
        return Err(GeomError::LinesAsymptotic);
    }
    if c.abs() < 1.0 {
        return Err(GeomError::LinesIntersect);
    }
    let m = form_cross(space, g1.normal(), g2.normal());
    let foot = |g: &Geodesic| {
        let v = form_cross(space, g.normal(), &m);
        let q = space.form(&v, &v);
        let v = if v[0] < 0.0 { -v } else { v };
        Point::from_raw(space, v / (-q).sqrt())
    };
    GeodesicSegment::new(foot(g1), foot(g2))
}
