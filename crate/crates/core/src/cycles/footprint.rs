use nalgebra::Vector2;

use super::{Cycle, CycleKind};
use crate::error::{invalid, GeomError, Result};
use crate::space::{Curvature, Isometry, ModelChart, Point, SpaceKind};

/// A generalized circle `a|p|^2 + 2 b.p + c = 0` in a conformal chart,
/// with the convex side `G(p) <= 0`. Coefficients are scaled so that
/// `|b|^2 - a c = 1`, which makes the representation unique.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprint {
    a: f64,
    b: Vector2<f64>,
    c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FootprintShape {
    Circle { center: Vector2<f64>, radius: f64 },
    Line { point: Vector2<f64>, direction: Vector2<f64> },
}

const LINE_EPS: f64 = 1e-12;

impl Footprint {
    pub fn new(a: f64, b: Vector2<f64>, c: f64) -> Result<Self> {
        let disc = b.norm_squared() - a * c;
        if !(disc > 0.0) || !disc.is_finite() {
            return invalid("degenerate generalized circle");
        }
        let s = disc.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s })
    }

    /// Circle with the disk (`inside_is_disk`) or its complement as convex side.
    pub fn from_circle(center: Vector2<f64>, radius: f64, inside_is_disk: bool) -> Result<Self> {
        let f = Self::new(1.0, -center, center.norm_squared() - radius * radius)?;
        Ok(if inside_is_disk { f } else { f.flipped() })
    }

    /// Line through `point` along `direction`; its left side is the convex side.
    pub fn from_line(point: Vector2<f64>, direction: Vector2<f64>) -> Result<Self> {
        let n = Vector2::new(-direction[1], direction[0]);
        // left side: n.(p - point) >= 0  <=>  -n.p + n.point <= 0
        Self::new(0.0, -n / 2.0, n.dot(&point))
    }

    pub fn coefficients(&self) -> (f64, Vector2<f64>, f64) {
        (self.a, self.b, self.c)
    }

    pub fn flipped(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c }
    }

    pub fn eval(&self, p: &Vector2<f64>) -> f64 {
        self.a * p.norm_squared() + 2.0 * self.b.dot(p) + self.c
    }

    pub fn is_line(&self) -> bool {
        self.a.abs() < LINE_EPS
    }

    /// `+1` when the parametrization runs counterclockwise around the centre.
    pub fn orientation(&self) -> f64 {
        if self.a >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn shape(&self) -> FootprintShape {
        if self.is_line() {
            let bn = self.b.norm_squared();
            FootprintShape::Line {
                point: -self.b * (self.c / (2.0 * bn)),
                direction: Vector2::new(-self.b[1], self.b[0]) / bn.sqrt(),
            }
        } else {
            FootprintShape::Circle { center: -self.b / self.a, radius: 1.0 / self.a.abs() }
        }
    }

    /// Point at parameter `t`: angle (circles) or arclength from the foot (lines),
    /// increasing in the positive direction.
    pub fn point(&self, t: f64) -> Vector2<f64> {
        match self.shape() {
            FootprintShape::Circle { center, radius } => {
                let phi = self.orientation() * t;
                center + Vector2::new(phi.cos(), phi.sin()) * radius
            }
            FootprintShape::Line { point, direction } => point + direction * t,
        }
    }

    /// Parameter of (the projection of) `p`; for circles in `(-pi, pi]`.
    pub fn param(&self, p: &Vector2<f64>) -> f64 {
        match self.shape() {
            FootprintShape::Circle { center, .. } => {
                let d = p - center;
                self.orientation() * d[1].atan2(d[0])
            }
            FootprintShape::Line { point, direction } => (p - point).dot(&direction),
        }
    }

    /// Unit tangent in the direction of increasing parameter.
    pub fn tangent(&self, t: f64) -> Vector2<f64> {
        match self.shape() {
            FootprintShape::Circle { .. } => {
                let s = self.orientation();
                let phi = s * t;
                Vector2::new(-phi.sin(), phi.cos()) * s
            }
            FootprintShape::Line { direction, .. } => direction,
        }
    }

    /// `Some(true)` for the same oriented curve, `Some(false)` for the same
    /// curve with opposite convex side, `None` otherwise.
    pub fn same_as(&self, other: &Footprint, tol: f64) -> Option<bool> {
        let d = |s: f64| {
            (self.a - s * other.a).abs() + (self.b - other.b * s).amax() + (self.c - s * other.c).abs()
        };
        if d(1.0) < tol {
            Some(true)
        } else if d(-1.0) < tol {
            Some(false)
        } else {
            None
        }
    }

    /// Crossing points of two footprints with a tangency flag.
    pub fn intersect(&self, other: &Footprint, tangency: f64) -> Result<Vec<(Vector2<f64>, bool)>> {
        if self.same_as(other, 1e-12).is_some() {
            return Err(GeomError::CoincidentCycles);
        }
        let (l, circ) = match (self.is_line(), other.is_line()) {
            (true, true) => return Ok(line_line(self, other).into_iter().map(|p| (p, false)).collect()),
            (true, false) => (*self, *other),
            (false, true) => (*other, *self),
            (false, false) => {
                let radical = Footprint {
                    a: 0.0,
                    b: self.b * other.a - other.b * self.a,
                    c: other.a * self.c - self.a * other.c,
                };
                if radical.b.norm() < 1e-14 {
                    return Ok(Vec::new());
                }
                let circ = if self.a.abs() >= other.a.abs() { *self } else { *other };
                (radical, circ)
            }
        };
        Ok(line_circle(&l, &circ, tangency))
    }
}

fn line_line(f: &Footprint, g: &Footprint) -> Option<Vector2<f64>> {
    let det = f.b[0] * g.b[1] - f.b[1] * g.b[0];
    if det.abs() < 1e-15 {
        return None;
    }
    // 2 b.p = -c for both
    let (r1, r2) = (-f.c / 2.0, -g.c / 2.0);
    Some(Vector2::new((r1 * g.b[1] - r2 * f.b[1]) / det, (f.b[0] * r2 - g.b[0] * r1) / det))
}

fn line_circle(l: &Footprint, circ: &Footprint, tangency: f64) -> Vec<(Vector2<f64>, bool)> {
    let FootprintShape::Circle { center, radius } = circ.shape() else {
        return Vec::new();
    };
    let bn = l.b.norm();
    let n = l.b / bn;
    let rho = -l.c / (2.0 * bn);
    let delta = n.dot(&center) - rho;
    let h2 = radius * radius - delta * delta;
    let scale = (radius * radius).max(1.0);
    let foot = center - n * delta;
    if h2 < -tangency * scale {
        Vec::new()
    } else if h2 <= tangency * scale {
        vec![(foot, true)]
    } else {
        let h = h2.sqrt();
        let perp = Vector2::new(-n[1], n[0]);
        vec![(foot + perp * h, false), (foot - perp * h, false)]
    }
}

/// The part of a footprint that represents the cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Clip {
    /// The whole closed curve.
    Full,
    /// The whole circle except the parameter where it touches the model boundary.
    Punctured(f64),
    /// Parameters strictly between `start < end`; the ends are ideal points
    /// or lie at infinity.
    Between(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalFootprint {
    pub footprint: Footprint,
    pub clip: Clip,
}

impl ConformalFootprint {
    /// Whether parameter `t` lies on the clipped part.
    pub fn covers(&self, t: f64) -> bool {
        match self.clip {
            Clip::Full => true,
            Clip::Punctured(p) => crate::space::angle_gap(t, p) > 1e-12,
            Clip::Between(a, b) => {
                if self.footprint.is_line() {
                    t > a && t < b
                } else {
                    let u = a + (t - a).rem_euclid(std::f64::consts::TAU);
                    u > a && u < b
                }
            }
        }
    }
}

/// A conformal chart together with a congruence placing the chart's
/// centre. On S^2 the frame is chosen so that the projection pole stays
/// away from the cycles of interest; elsewhere it is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalFrame {
    space: SpaceKind,
    chart: ModelChart,
    to_world: Isometry,
    to_std: Isometry,
}

impl ConformalFrame {
    pub fn standard(space: SpaceKind) -> Self {
        Self {
            space,
            chart: ModelChart::conformal(space),
            to_world: Isometry::identity(space),
            to_std: Isometry::identity(space),
        }
    }

    /// A frame whose projection pole is as far as possible from all `cycles`.
    pub fn avoiding(space: SpaceKind, cycles: &[&Cycle]) -> Self {
        if !space.is_spherical() {
            return Self::standard(space);
        }
        let mut best: Option<(f64, Point)> = None;
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut v = nalgebra::DVector::zeros(3);
                v[axis] = sign;
                let centre = Point::new(space, v).expect("unit axis");
                let pole = centre.antipode();
                let clearance = cycles.iter().map(|c| c.signed_distance(&pole).abs()).fold(f64::INFINITY, f64::min);
                if best.as_ref().is_none_or(|(b, _)| clearance > *b + 1e-12) {
                    best = Some((clearance, centre));
                }
            }
        }
        let centre = best.expect("six candidates").1;
        let to_world = Isometry::translation_to(&centre);
        let to_std = to_world.inverse();
        Self { space, chart: ModelChart::Stereographic, to_world, to_std }
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn chart(&self) -> ModelChart {
        self.chart
    }

    /// Whether the chart image is the open unit disk.
    pub fn is_disk_model(&self) -> bool {
        self.space.is_hyperbolic()
    }

    pub fn to_chart(&self, p: &Point) -> Result<Vector2<f64>> {
        self.chart.to_chart(&self.to_std.apply(p))
    }

    pub fn from_chart(&self, v: Vector2<f64>) -> Result<Point> {
        Ok(self.to_world.apply(&self.chart.from_chart(self.space, v)?))
    }

    pub fn footprint(&self, cycle: &Cycle) -> Result<ConformalFootprint> {
        if cycle.space() != self.space {
            return Err(GeomError::SpaceMismatch);
        }
        let c = cycle.transformed(&self.to_std);
        let footprint = match self.space.curvature() {
            Curvature::Zero => match c.kind() {
                CycleKind::Circle { center, radius } => {
                    let x = center.coords();
                    Footprint::from_circle(Vector2::new(x[0], x[1]), *radius, true)?
                }
                CycleKind::Geodesic(g) => {
                    let n = g.normal();
                    let point = Vector2::new(n[0], n[1]) * g.offset();
                    Footprint::from_line(point, Vector2::new(n[1], -n[0]))?
                }
                _ => return Err(GeomError::Unsupported("cycle kind in E2".into())),
            },
            Curvature::Negative => {
                let (w, k) = c.halfspace().expect("curved");
                Footprint::new(k - w[0], Vector2::new(w[1], w[2]), -(w[0] + k))?
            }
            Curvature::Positive => {
                let (w, k) = c.halfspace().expect("curved");
                Footprint::new(-w[0] - k, Vector2::new(w[1], w[2]), w[0] - k)?
            }
        };
        let clip = match (self.space.curvature(), c.kind()) {
            (Curvature::Zero, CycleKind::Geodesic(_)) => Clip::Between(f64::NEG_INFINITY, f64::INFINITY),
            (Curvature::Negative, CycleKind::Paracycle { ideal, .. }) => {
                Clip::Punctured(footprint.param(&Vector2::new(ideal.cos(), ideal.sin())))
            }
            (Curvature::Negative, CycleKind::Hypercycle { .. } | CycleKind::Geodesic(_)) => {
                let ends = c.ideal_points();
                let t: Vec<f64> = ends.iter().map(|a| footprint.param(&Vector2::new(a.cos(), a.sin()))).collect();
                between_inside_disk(&footprint, t[0], t[1])
            }
            _ => Clip::Full,
        };
        Ok(ConformalFootprint { footprint, clip })
    }
}

fn between_inside_disk(f: &Footprint, t0: f64, t1: f64) -> Clip {
    if f.is_line() {
        return Clip::Between(t0.min(t1), t0.max(t1));
    }
    let tau = std::f64::consts::TAU;
    let span = (t1 - t0).rem_euclid(tau);
    let mid = f.point(t0 + span / 2.0);
    if mid.norm() < 1.0 {
        Clip::Between(t0, t0 + span)
    } else {
        Clip::Between(t1, t1 + (tau - span))
    }
}

/// Intersection points of two cycles of the same space.
pub fn intersect_cycles(c1: &Cycle, c2: &Cycle) -> Result<Vec<Point>> {
    if c1.space() != c2.space() {
        return Err(GeomError::SpaceMismatch);
    }
    let frame = ConformalFrame::avoiding(c1.space(), &[c1, c2]);
    let f1 = frame.footprint(c1)?;
    let f2 = frame.footprint(c2)?;
    let hits = f1.footprint.intersect(&f2.footprint, crate::Tolerances::default().tangency)?;
    let mut out = Vec::new();
    for (v, _) in hits {
        if frame.is_disk_model() && v.norm() >= 1.0 - 1e-12 {
            continue;
        }
        if let Ok(p) = frame.from_chart(v) {
            out.push(p);
        }
    }
    Ok(out)
}
