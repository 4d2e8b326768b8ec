use nalgebra::{DVector, Matrix2, Vector2};
use std::f64::consts::{PI, TAU};

use super::{in_closed_left_arc, CoreSet, Region, RegionKind};
use crate::error::{invalid, GeomError, Result};
use crate::space::{cross3, distance, Curvature, Geodesic, GeodesicSegment, Isometry, Point, SpaceKind};

/// Padded region over the core between two lines of H^2 whose ideal points
/// `k11, k12` and `k21, k22` lie pairwise opposite, so that the diagonals
/// `k11 k21` and `k12 k22` meet at the origin under angle `alpha`. The pose
/// moves the whole configuration.
pub fn construct_two_component_region(alpha: f64, lambda: f64, pose: &Isometry) -> Result<Region> {
    if !(alpha > 0.0 && alpha < PI) {
        return invalid("alpha must lie in (0, pi)");
    }
    if pose.space() != SpaceKind::H2 {
        return Err(GeomError::SpaceMismatch);
    }
    let g1 = Geodesic::from_ideal(-0.5 * alpha, 0.5 * alpha)?;
    let g2 = Geodesic::from_ideal(PI - 0.5 * alpha, PI + 0.5 * alpha)?;
    let core = CoreSet::new(vec![g1, g2])?;
    Ok(Region::padded(core, lambda)?.transformed(pose))
}

fn base_lines(r: &Region) -> Result<(&CoreSet, f64)> {
    match r.kind() {
        RegionKind::Padded { core, lambda } => Ok((core, *lambda)),
        _ => invalid("reduction needs padded regions"),
    }
}

fn right_arc_holds(own: &Geodesic, other: &Geodesic) -> bool {
    let (a, b) = other.ideal_points().expect("hyperbolic");
    let rev = own.reversed();
    in_closed_left_arc(&rev, a) && in_closed_left_arc(&rev, b)
}

/// Replace two padded regions by the parallel domains of the half-planes of
/// the chosen boundary components, which have the same intersection under
/// the stated hypotheses.
pub fn lemma12_reduce(a: &Region, b: &Region, comp_a: usize, comp_b: usize) -> Result<(Region, Region)> {
    let (core_a, lam_a) = base_lines(a)?;
    let (core_b, lam_b) = base_lines(b)?;
    let ga = core_a.lines().get(comp_a).ok_or_else(|| GeomError::Invalid("component index out of range".into()))?;
    let gb = core_b.lines().get(comp_b).ok_or_else(|| GeomError::Invalid("component index out of range".into()))?;

    let (fa, ta) = ga.ideal_points().expect("hyperbolic");
    let (fb, tb) = gb.ideal_points().expect("hyperbolic");
    let shared = [fb, tb]
        .iter()
        .filter(|&&x| crate::space::angle_gap(x, fa) < 1e-9 || crate::space::angle_gap(x, ta) < 1e-9)
        .count();
    let inside = |x: f64| {
        let span = (fa - ta).rem_euclid(TAU);
        let d = (x - ta).rem_euclid(TAU);
        d > 1e-9 && d < span - 1e-9
    };
    let crossing = shared == 0 && inside(fb) != inside(tb);
    if crossing || shared > 1 {
        return Err(GeomError::HypothesisViolated {
            clause: 1,
            reason: "base lines share a finite point or both ideal points".into(),
        });
    }
    for (own, other, core) in [(ga, gb, core_a), (gb, ga, core_b)] {
        if !right_arc_holds(own, other) {
            let (clause, reason) = if core.has_interior() {
                (2, "core lies on the side of its line facing the other line")
            } else {
                (3, "chosen boundary component faces the other region")
            };
            return Err(GeomError::HypothesisViolated { clause, reason: reason.into() });
        }
    }
    Ok((
        Region::padded(CoreSet::half_plane(ga.clone())?, lam_a)?,
        Region::padded(CoreSet::half_plane(gb.clone())?, lam_b)?,
    ))
}

/// A circular arc of the hull boundary, counterclockwise about its centre.
#[derive(Debug, Clone, PartialEq)]
pub struct HullArc {
    pub center: Point,
    pub radius: f64,
    /// Start angle in the polar frame carried to the centre.
    pub start: f64,
    pub sweep: f64,
}

impl HullArc {
    pub fn point_at(&self, u: f64) -> Point {
        let frame = Isometry::translation_to(&self.center);
        frame.apply(&Point::from_polar(self.center.space(), self.radius, self.start + u * self.sweep))
    }

    fn local_angle(&self, p: &Point) -> f64 {
        let q = Isometry::translation_to(&self.center).inverse().apply(p);
        q.to_polar().1
    }

    pub fn distance(&self, p: &Point) -> f64 {
        let ends = distance(p, &self.point_at(0.0)).min(distance(p, &self.point_at(1.0)));
        if distance(p, &self.center) < 1e-14 {
            return self.radius;
        }
        let d = (self.local_angle(p) - self.start).rem_euclid(TAU);
        if d <= self.sweep {
            (distance(p, &self.center) - self.radius).abs().min(ends)
        } else {
            ends
        }
    }
}

/// Boundary of the convex hull of two disks: circle arcs joined by the two
/// outer bitangent segments, traversed counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct HullOfDisks {
    pub arcs: Vec<HullArc>,
    pub segments: Vec<GeodesicSegment>,
}

impl HullOfDisks {
    pub fn space(&self) -> SpaceKind {
        self.arcs[0].center.space()
    }

    pub fn boundary_distance(&self, p: &Point) -> f64 {
        let arcs = self.arcs.iter().map(|a| a.distance(p));
        let segs = self.segments.iter().map(|s| segment_distance(s, p));
        arcs.chain(segs).fold(f64::INFINITY, f64::min)
    }

    /// `per_piece` points on every arc and segment.
    pub fn samples(&self, per_piece: usize) -> Vec<Point> {
        let mut out = Vec::new();
        for k in 0..per_piece {
            let u = k as f64 / per_piece as f64;
            out.extend(self.arcs.iter().map(|a| a.point_at(u)));
            out.extend(self.segments.iter().map(|s| s.point_at(u)));
        }
        out
    }
}

/// Distance from `p` to a geodesic segment.
pub fn segment_distance(s: &GeodesicSegment, p: &Point) -> f64 {
    let ends = distance(p, &s.a).min(distance(p, &s.b));
    let Ok(g) = Geodesic::through(&s.a, &s.b) else {
        return ends;
    };
    let (t0, t1, t) = (g.arclength_of(&s.a), g.arclength_of(&s.b), g.arclength_of(p));
    if t >= t0.min(t1) && t <= t0.max(t1) {
        g.signed_distance(p).abs().min(ends)
    } else {
        ends
    }
}

fn disk_data(r: &Region) -> Result<(Point, f64)> {
    match r.kind() {
        RegionKind::Disk { center, radius } => Ok((center.clone(), *radius)),
        _ => invalid("hull construction needs disks"),
    }
}

/// Outer bitangent lines, with both disks on their left.
fn bitangents(c1: &Point, r1: f64, c2: &Point, r2: f64) -> Result<[Geodesic; 2]> {
    let space = c1.space();
    match space.curvature() {
        Curvature::Zero => {
            let d = c2.coords() - c1.coords();
            let len = d.norm();
            let k = (r2 - r1) / len;
            if !(k.abs() < 1.0) {
                return Err(GeomError::NestedDisks);
            }
            let u = Vector2::new(d[0], d[1]) / len;
            let perp = Vector2::new(-u[1], u[0]);
            let h = (1.0 - k * k).sqrt();
            Ok([h, -h].map(|s| {
                let n = u * k + perp * s;
                let off = n.dot(&Vector2::new(c1.coords()[0], c1.coords()[1])) - r1;
                Geodesic::from_normal(space, DVector::from_column_slice(n.as_slice()), off).expect("unit normal")
            }))
        }
        _ => {
            let (x1, x2) = (c1.coords(), c2.coords());
            let gram = Matrix2::new(
                space.form(x1, x1),
                space.form(x1, x2),
                space.form(x2, x1),
                space.form(x2, x2),
            );
            let rhs = Vector2::new(space.sn(r1), space.sn(r2));
            let ab = gram.try_inverse().ok_or(GeomError::NestedDisks)? * rhs;
            let base = x1 * ab[0] + x2 * ab[1];
            let m = space.gram(&cross3(x1, x2));
            let qm = space.form(&m, &m);
            let rest = (1.0 - space.form(&base, &base)) / qm;
            if !(rest > 0.0) {
                return Err(GeomError::NestedDisks);
            }
            let t = rest.sqrt();
            let mut out = Vec::with_capacity(2);
            for s in [t, -t] {
                out.push(Geodesic::from_normal(space, &base + &m * s, 0.0)?);
            }
            Ok([out[0].clone(), out[1].clone()])
        }
    }
}

/// Boundary of the convex hull of the union of two disks.
pub fn hull_union_disks(d1: &Region, d2: &Region) -> Result<HullOfDisks> {
    let (c1, r1) = disk_data(d1)?;
    let (c2, r2) = disk_data(d2)?;
    if c1.space() != c2.space() {
        return Err(GeomError::SpaceMismatch);
    }
    c1.space().require_dim2("disk hull")?;
    let d = distance(&c1, &c2);
    if d < 1e-12 && (r1 - r2).abs() < 1e-12 {
        return Ok(HullOfDisks {
            arcs: vec![HullArc { center: c1, radius: r1, start: 0.0, sweep: TAU }],
            segments: Vec::new(),
        });
    }
    if d + r1.min(r2) <= r1.max(r2) {
        return Err(GeomError::NestedDisks);
    }
    let lines = bitangents(&c1, r1, &c2, r2)?;
    let centers = [(&c1, r1), (&c2, r2)];
    // tangent points: touch[line][disk]
    let touch: Vec<Vec<Point>> =
        lines.iter().map(|g| centers.iter().map(|(c, _)| g.project(c)).collect()).collect();
    let mut segments = Vec::new();
    // which disk each segment ends on
    let mut ends_on = [0usize; 2];
    for (li, g) in lines.iter().enumerate() {
        let (s0, s1) = (g.arclength_of(&touch[li][0]), g.arclength_of(&touch[li][1]));
        let (a, b, last) = if s0 <= s1 { (0, 1, 1) } else { (1, 0, 0) };
        segments.push(GeodesicSegment::new(touch[li][a].clone(), touch[li][b].clone())?);
        ends_on[li] = last;
    }
    let mut arcs = Vec::new();
    for li in 0..2 {
        let disk = ends_on[li];
        let (c, r) = centers[disk];
        let mut arc = HullArc { center: c.clone(), radius: r, start: 0.0, sweep: 0.0 };
        let a0 = arc.local_angle(&touch[li][disk]);
        let a1 = arc.local_angle(&touch[1 - li][disk]);
        arc.start = a0;
        arc.sweep = (a1 - a0).rem_euclid(TAU);
        arcs.push(arc);
    }
    // boundary order: segment 0, arc at its end, segment 1, arc at its end
    Ok(HullOfDisks { arcs, segments })
}
