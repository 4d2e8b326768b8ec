//! Complete curves of constant geodesic curvature: circles, paracycles,
//! hypercycles and geodesics.
//!
//! Every cycle carries an orientation with its convex side on the left, so
//! curvatures are nonnegative for all cycles the constructors accept.

mod curvature;
mod footprint;

pub use curvature::{finite_difference_curvature, turning_curvature};
pub use footprint::{intersect_cycles, Clip, ConformalFootprint, ConformalFrame, Footprint, FootprintShape};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, GeomError, Result};
use crate::space::{distance, ideal_vector, normalize_angle, Curvature, Geodesic, Isometry, Point, SpaceKind};

/// Which side of its base line a hypercycle runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CycleKind {
    Circle { center: Point, radius: f64 },
    /// Horocycle tangent to the boundary at angle `ideal`, crossing the
    /// diameter towards that point at Poincaré-chart position `offset`.
    Paracycle { ideal: f64, offset: f64 },
    Hypercycle { base: Geodesic, distance: f64, side: Side },
    Geodesic(Geodesic),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    space: SpaceKind,
    kind: CycleKind,
}

impl Cycle {
    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        let space = center.space();
        space.require_dim2("cycle")?;
        if !(radius > 0.0) || !radius.is_finite() {
            return invalid("circle radius must be positive");
        }
        if space.is_spherical() && radius > std::f64::consts::FRAC_PI_2 + 1e-12 {
            return invalid("spherical circle radius exceeds pi/2");
        }
        if space.is_spherical() && (radius - std::f64::consts::FRAC_PI_2).abs() <= 1e-12 {
            // a great circle bounding the hemisphere around `center`
            return Ok(Self::geodesic(Geodesic::from_pole(&center)?));
        }
        Ok(Self { space, kind: CycleKind::Circle { center, radius } })
    }

    pub fn paracycle(ideal: f64, offset: f64) -> Result<Self> {
        if !(offset > -1.0 && offset < 1.0) {
            return invalid("paracycle offset must lie in (-1, 1)");
        }
        Ok(Self { space: SpaceKind::H2, kind: CycleKind::Paracycle { ideal: normalize_angle(ideal), offset } })
    }

    pub fn hypercycle(base: Geodesic, distance: f64, side: Side) -> Result<Self> {
        if !base.space().is_hyperbolic() {
            return Err(GeomError::Unsupported("hypercycles outside H2".into()));
        }
        if !(distance > 0.0) || !distance.is_finite() {
            return invalid("hypercycle distance must be positive");
        }
        Ok(Self { space: SpaceKind::H2, kind: CycleKind::Hypercycle { base, distance, side } })
    }

    /// A geodesic viewed as a cycle; its convex side is the left side.
    pub fn geodesic(g: Geodesic) -> Self {
        Self { space: g.space(), kind: CycleKind::Geodesic(g) }
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn kind(&self) -> &CycleKind {
        &self.kind
    }

    /// Geodesic curvature towards the convex side.
    pub fn curvature(&self) -> f64 {
        match &self.kind {
            CycleKind::Circle { radius, .. } => match self.space.curvature() {
                Curvature::Negative => 1.0 / radius.tanh(),
                Curvature::Positive => 1.0 / radius.tan(),
                Curvature::Zero => 1.0 / radius,
            },
            CycleKind::Paracycle { .. } => 1.0,
            CycleKind::Hypercycle { distance, .. } => distance.tanh(),
            CycleKind::Geodesic(_) => 0.0,
        }
    }

    /// Boundary angles of the cycle's points at infinity (H^2 only).
    pub fn ideal_points(&self) -> Vec<f64> {
        if !self.space.is_hyperbolic() {
            return Vec::new();
        }
        match &self.kind {
            CycleKind::Circle { .. } => Vec::new(),
            CycleKind::Paracycle { ideal, .. } => vec![*ideal],
            CycleKind::Hypercycle { base: g, .. } | CycleKind::Geodesic(g) => {
                let (a, b) = g.ideal_points().expect("hyperbolic geodesic");
                vec![a, b]
            }
        }
    }

    /// First and last ideal points met when traversing the cycle in its
    /// positive direction (hypercycles and geodesics of H^2).
    pub fn ideal_ends(&self) -> Option<(f64, f64)> {
        if !self.space.is_hyperbolic() {
            return None;
        }
        match &self.kind {
            CycleKind::Hypercycle { base, side: Side::Right, .. } | CycleKind::Geodesic(base) => base.ideal_points(),
            CycleKind::Hypercycle { base, side: Side::Left, .. } => base.ideal_points().map(|(a, b)| (b, a)),
            _ => None,
        }
    }

    /// The base line of a hypercycle or the geodesic itself.
    pub fn base_line(&self) -> Option<&Geodesic> {
        match &self.kind {
            CycleKind::Hypercycle { base, .. } => Some(base),
            CycleKind::Geodesic(g) => Some(g),
            _ => None,
        }
    }

    /// Convex side as `{x : <x, w> <= k}` in ambient coordinates (curved spaces).
    pub fn halfspace(&self) -> Option<(DVector<f64>, f64)> {
        if self.space.is_flat() {
            return None;
        }
        let hs = match &self.kind {
            CycleKind::Circle { center, radius } => {
                let k = if self.space.is_hyperbolic() { radius.cosh() } else { -radius.cos() };
                (-center.coords(), k)
            }
            CycleKind::Paracycle { ideal, offset } => (-ideal_vector(*ideal), horo_level(*offset)),
            CycleKind::Hypercycle { base, distance, side } => (base.normal() * side.sign(), distance.sinh()),
            CycleKind::Geodesic(g) => (-g.normal(), 0.0),
        };
        Some(hs)
    }

    /// Signed distance to the cycle, negative on the convex side.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        match &self.kind {
            CycleKind::Circle { center, radius } => distance(p, center) - radius,
            CycleKind::Paracycle { ideal, offset } => {
                let v = -self.space.form(p.coords(), &ideal_vector(*ideal));
                v.ln() - horo_level(*offset).ln()
            }
            CycleKind::Hypercycle { base, distance, side } => side.sign() * base.signed_distance(p) - distance,
            CycleKind::Geodesic(g) => -g.signed_distance(p),
        }
    }

    /// Total length, `None` for unbounded cycles.
    pub fn length(&self) -> Option<f64> {
        match &self.kind {
            CycleKind::Circle { radius, .. } => Some(std::f64::consts::TAU * self.space.sn(*radius)),
            CycleKind::Geodesic(_) if self.space.is_spherical() => Some(std::f64::consts::TAU),
            _ => None,
        }
    }

    /// Arclength parametrization, positively oriented (convex side on the left).
    pub fn point_at(&self, s: f64) -> Point {
        let space = self.space;
        match &self.kind {
            CycleKind::Circle { center, radius } => {
                let q = if space.is_flat() {
                    let phi = s / radius;
                    let (sn, cs) = phi.sin_cos();
                    let c = center.coords();
                    return Point::from_raw(space, DVector::from_vec(vec![c[0] + radius * cs, c[1] + radius * sn]));
                } else {
                    Point::from_polar(space, *radius, s / space.sn(*radius))
                };
                Isometry::translation_to(center).apply(&q)
            }
            CycleKind::Paracycle { ideal, offset } => {
                let x = -s;
                let a = x * x + 1.0;
                let v = DVector::from_vec(vec![(a + 1.0) / 2.0, (a - 1.0) / 2.0, x]);
                let std = Point::from_raw(space, v);
                paracycle_frame(*ideal, *offset).apply(&std)
            }
            CycleKind::Hypercycle { base, distance, side } => {
                let (sh, ch) = (distance.sinh(), distance.cosh());
                let t = -side.sign() * s / ch;
                let v = DVector::from_vec(vec![ch * t.cosh(), ch * t.sinh(), side.sign() * sh]);
                Isometry::frame_of_geodesic(base).apply(&Point::from_raw(space, v))
            }
            CycleKind::Geodesic(g) => g.point_at(s),
        }
    }

    pub fn transformed(&self, iso: &Isometry) -> Cycle {
        let kind = match &self.kind {
            CycleKind::Circle { center, radius } => CycleKind::Circle { center: iso.apply(center), radius: *radius },
            CycleKind::Paracycle { ideal, offset } => {
                let u = iso.apply_vector(&ideal_vector(*ideal));
                let lam = u[0];
                let h = horo_level(*offset) / lam;
                CycleKind::Paracycle { ideal: normalize_angle(u[2].atan2(u[1])), offset: (1.0 - h) / (1.0 + h) }
            }
            CycleKind::Hypercycle { base, distance, side } => {
                CycleKind::Hypercycle { base: base.transformed(iso), distance: *distance, side: *side }
            }
            CycleKind::Geodesic(g) => CycleKind::Geodesic(g.transformed(iso)),
        };
        Cycle { space: self.space, kind }
    }

    /// Whether some congruence maps one cycle onto the other.
    pub fn congruent(&self, other: &Cycle, tol: f64) -> bool {
        if self.space != other.space {
            return false;
        }
        match (&self.kind, &other.kind) {
            (CycleKind::Circle { radius: a, .. }, CycleKind::Circle { radius: b, .. }) => (a - b).abs() <= tol,
            (CycleKind::Paracycle { .. }, CycleKind::Paracycle { .. }) => true,
            (CycleKind::Hypercycle { distance: a, .. }, CycleKind::Hypercycle { distance: b, .. }) => {
                (a - b).abs() <= tol
            }
            (CycleKind::Geodesic(_), CycleKind::Geodesic(_)) => true,
            _ => false,
        }
    }

    /// Whether both cycles bound the same convex side.
    pub fn same_as(&self, other: &Cycle, tol: f64) -> bool {
        self.mismatch(other) <= tol
    }

    /// Discrepancy between two cycles as oriented curves: zero exactly when
    /// they coincide with the same convex side.
    pub fn mismatch(&self, other: &Cycle) -> f64 {
        if self.space != other.space {
            return f64::INFINITY;
        }
        if self.space.is_flat() {
            return match (&self.kind, &other.kind) {
                (CycleKind::Circle { center: a, radius: r }, CycleKind::Circle { center: b, radius: q }) => {
                    distance(a, b).max((r - q).abs())
                }
                (CycleKind::Geodesic(g), CycleKind::Geodesic(h)) => {
                    (g.normal() - h.normal()).norm().max((g.offset() - h.offset()).abs())
                }
                _ => f64::INFINITY,
            };
        }
        let unit = |c: &Cycle| {
            let (w, k) = c.halfspace().expect("curved");
            let v = DVector::from_iterator(w.len() + 1, w.iter().copied().chain(std::iter::once(k)));
            let n = v.norm();
            v / n
        };
        (unit(self) - unit(other)).norm()
    }

    /// Short human-readable description.
    pub fn label(&self) -> String {
        match &self.kind {
            CycleKind::Circle { radius, .. } => format!("circle(r={radius})"),
            CycleKind::Paracycle { ideal, .. } => format!("paracycle(ideal={ideal})"),
            CycleKind::Hypercycle { distance, .. } => format!("hypercycle(l={distance})"),
            CycleKind::Geodesic(_) => "geodesic".to_string(),
        }
    }
}

/// `-<x, u>` on a horocycle with the given chart offset.
pub(crate) fn horo_level(offset: f64) -> f64 {
    (1.0 - offset) / (1.0 + offset)
}

/// Maps the horocycle at angle 0 through the base point onto the
/// paracycle with the given data.
fn paracycle_frame(ideal: f64, offset: f64) -> Isometry {
    let push = Isometry::translation_x(SpaceKind::H2, 2.0 * offset.atanh());
    Isometry::rotation(SpaceKind::H2, ideal).compose(&push)
}
