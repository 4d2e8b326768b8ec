//! JSON schemas for region, cycle and scene files.
//!
//! Points are given in polar form about the base point of the space
//! (`r` = distance, `theta` = direction), ideal points and directions as
//! angles in radians. Lengths are in units of the curvature-±1 space.

use ccgeom::cycles::{Cycle, CycleKind, Side};
use ccgeom::regions::{CoreSet, Region, RegionKind};
use ccgeom::{Geodesic, Point, SpaceKind};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polar {
    pub r: f64,
    pub theta: f64,
}

impl Polar {
    pub fn of(p: &Point) -> Self {
        let (r, theta) = p.to_polar();
        if r < 1e-12 {
            return Self { r: 0.0, theta: 0.0 };
        }
        Self { r, theta }
    }

    pub fn point(&self, space: SpaceKind) -> Point {
        Point::from_polar(space, self.r, self.theta)
    }
}

/// A line of the core: the geodesic from ideal point `from` to `to`, with
/// the core on its left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealLine {
    pub from: f64,
    pub to: f64,
}

impl IdealLine {
    fn of(g: &Geodesic) -> Result<Self, CliError> {
        let (from, to) = g.ideal_points().ok_or_else(|| CliError::Parse("line has no ideal points".into()))?;
        Ok(Self { from, to })
    }

    fn geodesic(&self) -> Result<Geodesic, CliError> {
        Ok(Geodesic::from_ideal(self.from, self.to)?)
    }
}

/// Oriented geodesic in any plane. H2 uses `from`/`to`, S2 a `pole` (the
/// left side is the hemisphere around it), E2 a unit normal angle and an
/// offset along it.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole: Option<Polar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<f64>,
}

impl LineSpec {
    fn geodesic(&self, space: SpaceKind) -> Result<Geodesic, CliError> {
        let missing = |what: &str| CliError::Parse(format!("{space} line needs {what}"));
        match space {
            SpaceKind::H2 => {
                let (Some(from), Some(to)) = (self.from, self.to) else { return Err(missing("`from` and `to`")) };
                Ok(Geodesic::from_ideal(from, to)?)
            }
            SpaceKind::S2 => Ok(Geodesic::from_pole(&self.pole.ok_or_else(|| missing("`pole`"))?.point(space))?),
            SpaceKind::E2 => {
                let angle = self.normal_angle.ok_or_else(|| missing("`normal_angle`"))?;
                Ok(Geodesic::flat(angle, self.offset.unwrap_or(0.0)))
            }
            other => Err(CliError::Space(format!("{other} is not a plane"))),
        }
    }

    fn of(g: &Geodesic) -> Result<Self, CliError> {
        Ok(match g.space() {
            SpaceKind::H2 => {
                let l = IdealLine::of(g)?;
                Self { from: Some(l.from), to: Some(l.to), ..Self::default() }
            }
            SpaceKind::S2 => Self { pole: Some(Polar::of(&Point::new(SpaceKind::S2, g.normal().clone())?)), ..Self::default() },
            SpaceKind::E2 => {
                let n = g.normal();
                Self { normal_angle: Some(n[1].atan2(n[0])), offset: Some(g.offset()), ..Self::default() }
            }
            other => return Err(CliError::Space(format!("{other} is not a plane"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RegionShape {
    Disk {
        center: Polar,
        radius: f64,
    },
    /// `distance` is the signed distance from the base point to the
    /// horocycle, negative when the base point lies inside.
    Paraball {
        ideal: f64,
        distance: f64,
    },
    Padded {
        lambda: f64,
        core: Vec<IdealLine>,
    },
    Halfplane {
        #[serde(flatten)]
        line: LineSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionFile {
    pub space: SpaceKind,
    #[serde(flatten)]
    pub shape: RegionShape,
}

fn plane(space: SpaceKind) -> Result<SpaceKind, CliError> {
    if space.dimension() == 2 {
        Ok(space)
    } else {
        Err(CliError::Space(format!("{space} is not supported in region files")))
    }
}

fn hyperbolic(space: SpaceKind, what: &str) -> Result<(), CliError> {
    if space.is_hyperbolic() {
        Ok(())
    } else {
        Err(CliError::Space(format!("{what} regions exist only in H2, not {space}")))
    }
}

impl RegionFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn region(&self) -> Result<Region, CliError> {
        let space = plane(self.space)?;
        Ok(match &self.shape {
            RegionShape::Disk { center, radius } => Region::disk(center.point(space), *radius)?,
            RegionShape::Paraball { ideal, distance } => {
                hyperbolic(space, "paraball")?;
                Region::paraball(*ideal, (0.5 * distance).tanh())?
            }
            RegionShape::Padded { lambda, core } => {
                hyperbolic(space, "padded")?;
                let lines = core.iter().map(IdealLine::geodesic).collect::<Result<Vec<_>, _>>()?;
                Region::padded(CoreSet::new(lines)?, *lambda)?
            }
            RegionShape::Halfplane { line } => Region::half_plane(line.geodesic(space)?),
        })
    }

    pub fn of(region: &Region) -> Result<Self, CliError> {
        let space = plane(region.space())?;
        let shape = match region.kind() {
            RegionKind::Disk { center, radius } => RegionShape::Disk { center: Polar::of(center), radius: *radius },
            RegionKind::Paraball { ideal, offset } => RegionShape::Paraball { ideal: *ideal, distance: 2.0 * offset.atanh() },
            RegionKind::Padded { core, lambda } => RegionShape::Padded {
                lambda: *lambda,
                core: core.lines().iter().map(IdealLine::of).collect::<Result<_, _>>()?,
            },
            RegionKind::HalfPlane(g) => RegionShape::Halfplane { line: LineSpec::of(g)? },
        };
        Ok(Self { space, shape })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CycleShape {
    Circle {
        center: Polar,
        radius: f64,
    },
    Paracycle {
        ideal: f64,
        distance: f64,
    },
    Hypercycle {
        from: f64,
        to: f64,
        distance: f64,
        side: SideSpec,
    },
    Geodesic {
        #[serde(flatten)]
        line: LineSpec,
    },
}

impl CycleShape {
    pub fn cycle(&self, space: SpaceKind) -> Result<Cycle, CliError> {
        let space = plane(space)?;
        Ok(match self {
            CycleShape::Circle { center, radius } => Cycle::circle(center.point(space), *radius)?,
            CycleShape::Paracycle { ideal, distance } => {
                hyperbolic(space, "paracycle")?;
                Cycle::paracycle(*ideal, (0.5 * distance).tanh())?
            }
            CycleShape::Hypercycle { from, to, distance, side } => {
                hyperbolic(space, "hypercycle")?;
                let side = match side {
                    SideSpec::Left => Side::Left,
                    SideSpec::Right => Side::Right,
                };
                Cycle::hypercycle(Geodesic::from_ideal(*from, *to)?, *distance, side)?
            }
            CycleShape::Geodesic { line } => Cycle::geodesic(line.geodesic(space)?),
        })
    }

    pub fn of(c: &Cycle) -> Result<Self, CliError> {
        Ok(match c.kind() {
            CycleKind::Circle { center, radius } => CycleShape::Circle { center: Polar::of(center), radius: *radius },
            CycleKind::Paracycle { ideal, offset } => CycleShape::Paracycle { ideal: *ideal, distance: 2.0 * offset.atanh() },
            CycleKind::Hypercycle { base, distance, side } => {
                let l = IdealLine::of(base)?;
                let side = if *side == Side::Left { SideSpec::Left } else { SideSpec::Right };
                CycleShape::Hypercycle { from: l.from, to: l.to, distance: *distance, side }
            }
            CycleKind::Geodesic(g) => CycleShape::Geodesic { line: LineSpec::of(g)? },
        })
    }
}
