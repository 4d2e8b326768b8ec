//! Scenes drawn in the conformal chart of their space.
//!
//! The unit circle of the chart is drawn with radius 500, the y axis points
//! up, and every coordinate is printed with three decimals, so identical
//! scenes give identical bytes.

use std::fmt::Write as _;

use ccgeom::cycles::{Clip, ConformalFrame, Cycle, FootprintShape};
use ccgeom::regions::{intersect_regions, ArcPolygon, IntersectionResult};
use ccgeom::symmetry::is_centrally_symmetric_polygon;
use ccgeom::{ModelChart, Point, SpaceKind, Tolerances};
use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::files::{CycleShape, Polar, RegionFile, RegionShape};
use crate::CliError;

const SCALE: f64 = 500.0;
const HALF_VIEW: f64 = 600.0;
// lines are cut to this chart distance from their point nearest the origin
const LINE_REACH: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Element {
    Region {
        region: RegionShape,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        style: Option<String>,
    },
    Cycle {
        cycle: CycleShape,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        style: Option<String>,
    },
    Point {
        at: Polar,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        style: Option<String>,
    },
    /// The intersection of two regions, filled, with its centre of symmetry
    /// marked when there is one.
    Intersection {
        a: RegionShape,
        b: RegionShape,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        style: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub space: SpaceKind,
    /// Must be the conformal chart of the space when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ModelChart>,
    #[serde(default)]
    pub elements: Vec<Element>,
}

impl Scene {
    pub fn new(space: SpaceKind) -> Self {
        Self { space, chart: None, elements: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if scene.space.dimension() != 2 {
            return Err(CliError::Space(format!("{} scenes cannot be drawn", scene.space)));
        }
        if let Some(chart) = scene.chart {
            if chart != ModelChart::conformal(scene.space) {
                return Err(CliError::Parse(format!("{chart:?} is not the conformal chart of {}", scene.space)));
            }
        }
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn render(&self) -> Result<String, CliError> {
        let mut body = String::new();
        let frame = ConformalFrame::standard(self.space);
        for el in &self.elements {
            match el {
                Element::Region { region, style } => {
                    let r = RegionFile { space: self.space, shape: region.clone() }.region()?;
                    for c in r.boundary_components() {
                        let d = cycle_path(&frame, &c)?;
                        let _ = writeln!(body, r#"<path class="{}" d="{d}"/>"#, style.as_deref().unwrap_or("region"));
                    }
                }
                Element::Cycle { cycle, style } => {
                    let c = cycle.cycle(self.space)?;
                    let d = cycle_path(&frame, &c)?;
                    let _ = writeln!(body, r#"<path class="{}" d="{d}"/>"#, style.as_deref().unwrap_or("cycle"));
                }
                Element::Point { at, style } => {
                    let v = chart_point(&frame, &at.point(self.space))?;
                    let _ = writeln!(
                        body,
                        r#"<circle class="{}" cx="{}" cy="{}" r="5.000"/>"#,
                        style.as_deref().unwrap_or("point"),
                        num(SCALE * v.x),
                        num(-SCALE * v.y)
                    );
                }
                Element::Intersection { a, b, style } => {
                    let ra = RegionFile { space: self.space, shape: a.clone() }.region()?;
                    let rb = RegionFile { space: self.space, shape: b.clone() }.region()?;
                    if let Ok(IntersectionResult::Compact(poly)) = intersect_regions(&ra, &rb) {
                        let d = polygon_path(&frame, &poly)?;
                        let _ = writeln!(body, r#"<path class="{}" d="{d}"/>"#, style.as_deref().unwrap_or("polygon"));
                        let rep = is_centrally_symmetric_polygon(&poly, Tolerances::default().symmetry);
                        if let (true, Some(c)) = (rep.symmetric, rep.center.as_ref()) {
                            let v = chart_point(&frame, c)?;
                            let (x, y) = (SCALE * v.x, -SCALE * v.y);
                            let _ = writeln!(
                                body,
                                r#"<path class="center" d="M {} {} L {} {} M {} {} L {} {}"/>"#,
                                num(x - 8.0),
                                num(y),
                                num(x + 8.0),
                                num(y),
                                num(x),
                                num(y - 8.0),
                                num(x),
                                num(y + 8.0)
                            );
                        }
                    }
                }
            }
        }
        let mut out = String::new();
        let side = num(2.0 * HALF_VIEW);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {side} {side}" width="{side}" height="{side}">"#,
            num(-HALF_VIEW),
            num(-HALF_VIEW),
        );
        out.push_str(concat!(
            "<style>path,circle{fill:none;stroke:#222;stroke-width:2}",
            ".model{stroke:#888}.a{stroke:#1f6fb4}.b{stroke:#c0392b}",
            ".polygon{fill:#f3c64f;fill-opacity:0.5}.point{fill:#222}.center{stroke:#000;stroke-width:3}</style>\n"
        ));
        let _ = writeln!(out, r#"<circle class="model" cx="0.000" cy="0.000" r="{}"/>"#, num(SCALE));
        out.push_str(&body);
        out.push_str("</svg>\n");
        Ok(out)
    }
}

/// Fixed three-decimal formatting without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn chart_point(frame: &ConformalFrame, p: &Point) -> Result<Vector2<f64>, CliError> {
    frame.to_chart(p).map_err(|e| CliError::Geometry(e.to_string()))
}

fn xy(v: Vector2<f64>) -> String {
    format!("{} {}", num(SCALE * v.x), num(-SCALE * v.y))
}

/// Circular arc from `a` to `b` through `m` on the circle `(c, r)`.
fn arc_to(c: Vector2<f64>, r: f64, a: Vector2<f64>, m: Vector2<f64>, b: Vector2<f64>) -> String {
    let ang = |v: Vector2<f64>| (v.y - c.y).atan2(v.x - c.x);
    let tau = std::f64::consts::TAU;
    let span = (ang(b) - ang(a)).rem_euclid(tau);
    let ccw = (ang(m) - ang(a)).rem_euclid(tau) < span;
    let sweep = if ccw { span } else { tau - span };
    // the y flip turns counterclockwise into SVG's positive direction
    format!(
        "A {} {} 0 {} {} {}",
        num(SCALE * r),
        num(SCALE * r),
        u8::from(sweep > std::f64::consts::PI),
        u8::from(ccw),
        xy(b)
    )
}

fn full_circle(c: Vector2<f64>, r: f64) -> String {
    let e = Vector2::new(r, 0.0);
    let (p, q) = (c + e, c - e);
    let rr = num(SCALE * r);
    format!("M {} A {rr} {rr} 0 1 1 {} A {rr} {rr} 0 1 1 {} Z", xy(p), xy(q), xy(p))
}

fn cycle_path(frame: &ConformalFrame, c: &Cycle) -> Result<String, CliError> {
    let fp = frame.footprint(c).map_err(|e| CliError::Geometry(e.to_string()))?;
    let f = fp.footprint;
    Ok(match (f.shape(), fp.clip) {
        (FootprintShape::Circle { center, radius }, Clip::Full | Clip::Punctured(_)) => full_circle(center, radius),
        (FootprintShape::Circle { center, radius }, Clip::Between(t0, t1)) => {
            let (a, m, b) = (f.point(t0), f.point(0.5 * (t0 + t1)), f.point(t1));
            format!("M {} {}", xy(a), arc_to(center, radius, a, m, b))
        }
        (FootprintShape::Line { point, direction }, clip) => {
            let near = -point.dot(&direction) / direction.norm_squared();
            let reach = LINE_REACH / direction.norm();
            let (mut t0, mut t1) = (near - reach, near + reach);
            if let Clip::Between(a, b) = clip {
                t0 = t0.max(a);
                t1 = t1.min(b);
            }
            format!("M {} L {}", xy(f.point(t0)), xy(f.point(t1)))
        }
    })
}

fn polygon_path(frame: &ConformalFrame, poly: &ArcPolygon) -> Result<String, CliError> {
    if poly.len() == 1 {
        return cycle_path(frame, &poly.arcs()[0].cycle);
    }
    let mut d = String::new();
    for (i, arc) in poly.arcs().iter().enumerate() {
        let a = chart_point(frame, &arc.start)?;
        let b = chart_point(frame, &arc.end)?;
        if i == 0 {
            d.push_str(&format!("M {}", xy(a)));
        }
        let fp = frame.footprint(&arc.cycle).map_err(|e| CliError::Geometry(e.to_string()))?;
        match fp.footprint.shape() {
            FootprintShape::Circle { center, radius } => {
                let m = chart_point(frame, &poly.arc_point(i, 0.5))?;
                d.push(' ');
                d.push_str(&arc_to(center, radius, a, m, b));
            }
            FootprintShape::Line { .. } => d.push_str(&format!(" L {}", xy(b))),
        }
    }
    d.push_str(" Z");
    Ok(d)
}
