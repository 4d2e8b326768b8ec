//! Closed convex regions bounded by congruent cycles: disks, paraballs,
//! parallel domains of half-plane intersections, and half-planes.
mod construct;
mod ideal;
mod polygon;

pub use construct::{
    construct_two_component_region, hull_union_disks, lemma12_reduce, segment_distance, HullArc, HullOfDisks,
};
pub use ideal::IdealSet;
pub use polygon::{intersect_regions, ArcPolygon, IntersectionResult, Owner, PolygonArc};

use crate::cycles::{Cycle, Side};
use crate::error::{invalid, GeomError, Result};
use crate::space::{Geodesic, Isometry, Point, SpaceKind};

const ARC_EPS: f64 = 1e-9;

/// Pointwise classification against a closed region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// Intersection of the closed left sides of finitely many H^2 geodesics,
/// none of which crosses another.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreSet {
    lines: Vec<Geodesic>,
}

impl CoreSet {
    pub fn new(lines: Vec<Geodesic>) -> Result<Self> {
        if lines.is_empty() {
            return invalid("core needs at least one line");
        }
        for g in &lines {
            if !g.space().is_hyperbolic() {
                return Err(GeomError::Unsupported("cores outside H2".into()));
            }
        }
        for (i, g) in lines.iter().enumerate() {
            let left = left_arc(g);
            for (j, h) in lines.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (a, b) = h.ideal_points().expect("hyperbolic");
                if !(left.contains(a) && left.contains(b)) {
                    return invalid(format!("line {j} leaves the left side of line {i}"));
                }
                if i < j && (g.normal() - h.normal()).amax() < 1e-12 {
                    return invalid(format!("lines {i} and {j} coincide"));
                }
            }
        }
        Ok(Self { lines })
    }

    /// The core of a strip: one line taken with both orientations.
    pub fn line(g: Geodesic) -> Result<Self> {
        let r = g.reversed();
        Self::new(vec![g, r])
    }

    pub fn half_plane(g: Geodesic) -> Result<Self> {
        Self::new(vec![g])
    }

    pub fn lines(&self) -> &[Geodesic] {
        &self.lines
    }

    pub fn has_interior(&self) -> bool {
        !self.lines.iter().enumerate().any(|(i, g)| {
            self.lines[i + 1..].iter().any(|h| g.same_line(h, 1e-12))
        })
    }

    /// Distance from `p` to the core (zero inside).
    pub fn distance(&self, p: &Point) -> f64 {
        self.lines.iter().map(|g| -g.signed_distance(p)).fold(0.0, f64::max)
    }

    pub fn transformed(&self, iso: &Isometry) -> CoreSet {
        CoreSet { lines: self.lines.iter().map(|g| g.transformed(iso)).collect() }
    }
}

/// Closed arc of the boundary on the left of an H^2 geodesic.
pub(crate) fn left_arc(g: &Geodesic) -> IdealSet {
    let (from, to) = g.ideal_points().expect("hyperbolic");
    IdealSet::arc(to, from)
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegionKind {
    Disk { center: Point, radius: f64 },
    Paraball { ideal: f64, offset: f64 },
    /// Points within `lambda` of the core.
    Padded { core: CoreSet, lambda: f64 },
    /// Closed left side of a geodesic.
    HalfPlane(Geodesic),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    space: SpaceKind,
    kind: RegionKind,
}

impl Region {
    pub fn disk(center: Point, radius: f64) -> Result<Self> {
        // validates the radius range
        Cycle::circle(center.clone(), radius)?;
        Ok(Self { space: center.space(), kind: RegionKind::Disk { center, radius } })
    }

    pub fn paraball(ideal: f64, offset: f64) -> Result<Self> {
        Cycle::paracycle(ideal, offset)?;
        Ok(Self { space: SpaceKind::H2, kind: RegionKind::Paraball { ideal, offset } })
    }

    pub fn padded(core: CoreSet, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return invalid("padding distance must be positive");
        }
        Ok(Self { space: SpaceKind::H2, kind: RegionKind::Padded { core, lambda } })
    }

    pub fn half_plane(g: Geodesic) -> Self {
        Self { space: g.space(), kind: RegionKind::HalfPlane(g) }
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    /// Boundary components, each oriented with the region on its left.
    pub fn boundary_components(&self) -> Vec<Cycle> {
        match &self.kind {
            RegionKind::Disk { center, radius } => {
                vec![Cycle::circle(center.clone(), *radius).expect("validated")]
            }
            RegionKind::Paraball { ideal, offset } => vec![Cycle::paracycle(*ideal, *offset).expect("validated")],
            RegionKind::Padded { core, lambda } => core
                .lines()
                .iter()
                .map(|g| Cycle::hypercycle(g.clone(), *lambda, Side::Right).expect("validated"))
                .collect(),
            RegionKind::HalfPlane(g) => vec![Cycle::geodesic(g.clone())],
        }
    }

    /// Largest signed distance to a boundary component; negative inside.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.boundary_components().iter().map(|c| c.signed_distance(p)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn classify(&self, p: &Point, band: f64) -> Membership {
        let v = self.signed_distance(p);
        if v.abs() <= band {
            Membership::Boundary
        } else if v < 0.0 {
            Membership::Interior
        } else {
            Membership::Outside
        }
    }

    /// Classification with the default boundary band.
    pub fn contains(&self, p: &Point) -> Membership {
        self.classify(p, crate::Tolerances::default().boundary_band)
    }

    /// Points at infinity of the region (H^2); empty elsewhere.
    pub fn ideal_set(&self) -> IdealSet {
        if !self.space.is_hyperbolic() {
            return IdealSet::empty();
        }
        match &self.kind {
            RegionKind::Disk { .. } => IdealSet::empty(),
            RegionKind::Paraball { ideal, .. } => IdealSet::point(*ideal),
            RegionKind::Padded { core, .. } => {
                core.lines().iter().fold(IdealSet::full(), |acc, g| acc.intersect(&left_arc(g)))
            }
            RegionKind::HalfPlane(g) => left_arc(g),
        }
    }

    pub fn transformed(&self, iso: &Isometry) -> Region {
        let kind = match &self.kind {
            RegionKind::Disk { center, radius } => RegionKind::Disk { center: iso.apply(center), radius: *radius },
            RegionKind::Paraball { .. } => {
                let c = self.boundary_components().remove(0).transformed(iso);
                match c.kind() {
                    crate::cycles::CycleKind::Paracycle { ideal, offset } => {
                        RegionKind::Paraball { ideal: *ideal, offset: *offset }
                    }
                    _ => unreachable!("congruences keep paracycles"),
                }
            }
            RegionKind::Padded { core, lambda } => RegionKind::Padded { core: core.transformed(iso), lambda: *lambda },
            RegionKind::HalfPlane(g) => RegionKind::HalfPlane(g.transformed(iso)),
        };
        Region { space: self.space, kind }
    }

    /// Whether the region is bounded.
    pub fn is_bounded(&self) -> bool {
        match &self.kind {
            RegionKind::Disk { .. } => true,
            RegionKind::HalfPlane(_) => self.space.is_spherical(),
            _ => false,
        }
    }

    pub fn label(&self) -> &'static str {
        match &self.kind {
            RegionKind::Disk { .. } => "disk",
            RegionKind::Paraball { .. } => "paraball",
            RegionKind::Padded { .. } => "padded",
            RegionKind::HalfPlane(_) => "halfplane",
        }
    }
}

/// Whether `theta` lies in the closed ideal arc on the left of `g`.
pub(crate) fn in_closed_left_arc(g: &Geodesic, theta: f64) -> bool {
    let (from, to) = g.ideal_points().expect("hyperbolic");
    let len = (from - to).rem_euclid(std::f64::consts::TAU);
    let d = (theta - to).rem_euclid(std::f64::consts::TAU);
    d <= len + ARC_EPS || d >= std::f64::consts::TAU - ARC_EPS
}
