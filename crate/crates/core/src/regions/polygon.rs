use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::{IdealSet, Region};
use crate::cycles::{Clip, ConformalFootprint, ConformalFrame, Cycle, Footprint};
use crate::error::{invalid, GeomError, Result};
use crate::space::{distance, Isometry, Point, SpaceKind};
use crate::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Owner {
    A,
    B,
}

/// One side of an arc-polygon: a positively oriented piece of a boundary
/// cycle of one of the two regions.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonArc {
    pub owner: Owner,
    /// Index of the cycle among the owner's boundary components.
    pub component: usize,
    pub cycle: Cycle,
    pub start: Point,
    pub end: Point,
    /// Footprint parameters of the ends in the polygon's frame, `t0 < t1`.
    pub t0: f64,
    pub t1: f64,
    pub footprint: Footprint,
}

/// A compact region bounded by finitely many cycle arcs, listed in
/// positive order. Vertex `i` is the start of arc `i`. A single arc whose
/// ends coincide is a closed curve without vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    frame: ConformalFrame,
    arcs: Vec<PolygonArc>,
}

/// Outcome of intersecting two regions.
#[derive(Debug, Clone, PartialEq)]
pub enum IntersectionResult {
    Empty,
    EmptyInterior,
    Compact(ArcPolygon),
    Noncompact { ideal: IdealSet },
}

impl IntersectionResult {
    pub fn label(&self) -> String {
        match self {
            IntersectionResult::Empty => "Empty".into(),
            IntersectionResult::EmptyInterior => "EmptyInterior".into(),
            IntersectionResult::Compact(p) => format!("Compact({})", p.len()),
            IntersectionResult::Noncompact { .. } => "Noncompact".into(),
        }
    }

    pub fn polygon(&self) -> Option<&ArcPolygon> {
        match self {
            IntersectionResult::Compact(p) => Some(p),
            _ => None,
        }
    }
}

impl ArcPolygon {
    /// Assemble a polygon from oriented arcs `(owner, component, cycle, start, end)`.
    /// An arc with `start == end` is read as a full closed cycle.
    pub fn from_parts(space: SpaceKind, parts: Vec<(Owner, usize, Cycle, Point, Point)>) -> Result<Self> {
        if parts.is_empty() {
            return invalid("polygon needs at least one arc");
        }
        let cycles: Vec<&Cycle> = parts.iter().map(|p| &p.2).collect();
        let frame = ConformalFrame::avoiding(space, &cycles);
        let mut arcs = Vec::with_capacity(parts.len());
        let single = parts.len() == 1;
        for (owner, component, cycle, start, end) in parts {
            let cf = frame.footprint(&cycle)?;
            let fp = cf.footprint;
            let t0 = fp.param(&frame.to_chart(&start)?);
            let t1 = if fp.is_line() {
                fp.param(&frame.to_chart(&end)?)
            } else if single || distance(&start, &end) < 1e-12 {
                t0 + TAU
            } else {
                let t = fp.param(&frame.to_chart(&end)?);
                t0 + (t - t0).rem_euclid(TAU)
            };
            if !(t1 > t0) {
                return invalid("arc has non-positive span");
            }
            arcs.push(PolygonArc { owner, component, cycle, start, end, t0, t1, footprint: fp });
        }
        Ok(Self { frame, arcs })
    }

    pub fn space(&self) -> SpaceKind {
        self.frame.space()
    }

    pub fn frame(&self) -> &ConformalFrame {
        &self.frame
    }

    pub fn arcs(&self) -> &[PolygonArc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Vertices in boundary order; empty for a closed single-cycle boundary.
    pub fn vertices(&self) -> Vec<Point> {
        if self.arcs.len() == 1 {
            return Vec::new();
        }
        self.arcs.iter().map(|a| a.start.clone()).collect()
    }

    /// Point at fraction `u` of the footprint parameter span of arc `i`.
    pub fn arc_point(&self, i: usize, u: f64) -> Point {
        let a = &self.arcs[i];
        let v = a.footprint.point(a.t0 + u * (a.t1 - a.t0));
        self.frame.from_chart(v).expect("arc lies in the chart")
    }

    /// `per_arc` points on each arc, excluding the arc's end.
    pub fn samples(&self, per_arc: usize) -> Vec<Point> {
        let mut out = Vec::with_capacity(per_arc * self.arcs.len());
        for i in 0..self.arcs.len() {
            for k in 0..per_arc {
                out.push(self.arc_point(i, k as f64 / per_arc as f64));
            }
        }
        out
    }

    pub fn owners_alternate(&self) -> bool {
        let n = self.arcs.len();
        n == 1 || (n % 2 == 0 && (0..n).all(|i| self.arcs[i].owner != self.arcs[(i + 1) % n].owner))
    }

    /// Number of distinct ideal points of the cycles carrying the arcs.
    pub fn ideal_point_count(&self) -> usize {
        let mut pts: Vec<f64> = Vec::new();
        for a in &self.arcs {
            for t in a.cycle.ideal_points() {
                if !pts.iter().any(|&q| crate::space::angle_gap(q, t) < 1e-9) {
                    pts.push(t);
                }
            }
        }
        pts.len()
    }

    /// Distance from `p` to arc `i`, exact when `p` projects into the arc.
    pub fn distance_to_arc(&self, i: usize, p: &Point) -> f64 {
        let a = &self.arcs[i];
        let ends = distance(p, &a.start).min(distance(p, &a.end));
        let Ok(v) = self.frame.to_chart(p) else {
            return ends;
        };
        let t = a.footprint.param(&v);
        let inside = if a.footprint.is_line() {
            t >= a.t0 && t <= a.t1
        } else {
            a.t0 + (t - a.t0).rem_euclid(TAU) <= a.t1
        };
        if inside {
            a.cycle.signed_distance(p).abs().min(ends)
        } else {
            ends
        }
    }

    /// Distance from `p` to the boundary curve.
    pub fn boundary_distance(&self, p: &Point) -> f64 {
        (0..self.arcs.len()).map(|i| self.distance_to_arc(i, p)).fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` lies strictly inside, that is on the convex side of every
    /// cycle carrying an arc.
    pub fn contains(&self, p: &Point) -> bool {
        self.arcs.iter().all(|a| a.cycle.signed_distance(p) < 0.0)
    }

    /// Winding number of the boundary around `p`, computed exactly on the
    /// chart footprints.
    pub fn winding_number(&self, p: &Point) -> i32 {
        let Ok(q) = self.frame.to_chart(p) else {
            return 0;
        };
        let mut total = 0.0;
        for a in &self.arcs {
            let pieces = (((a.t1 - a.t0) / 0.25).ceil() as usize).max(1);
            for k in 0..pieces {
                let s0 = a.t0 + (a.t1 - a.t0) * k as f64 / pieces as f64;
                let s1 = a.t0 + (a.t1 - a.t0) * (k + 1) as f64 / pieces as f64;
                total += sub_arc_winding(&a.footprint, s0, s1, &q);
            }
        }
        (total / TAU).round() as i32
    }

    /// Interleaving of ideal points: for every pair of consecutive arcs on
    /// hypercycles, the four ideal points are distinct and appear in the
    /// counterclockwise order `h11, h21, h12, h22`.
    pub fn interleaving_holds(&self) -> bool {
        let n = self.arcs.len();
        (0..n).all(|i| {
            let (Some((h11, h12)), Some((h21, h22))) =
                (self.arcs[i].cycle.ideal_ends(), self.arcs[(i + 1) % n].cycle.ideal_ends())
            else {
                return false;
            };
            let d = |x: f64| (x - h11).rem_euclid(TAU);
            let (a, b, c) = (d(h21), d(h12), d(h22));
            a > 1e-9 && b > a + 1e-9 && c > b + 1e-9 && c < TAU - 1e-9
        })
    }

    pub fn transformed(&self, iso: &Isometry) -> Result<ArcPolygon> {
        let single = self.arcs.len() == 1;
        let parts = self
            .arcs
            .iter()
            .map(|a| {
                let s = iso.apply(&a.start);
                let e = if single { s.clone() } else { iso.apply(&a.end) };
                (a.owner, a.component, a.cycle.transformed(iso), s, e)
            })
            .collect();
        ArcPolygon::from_parts(self.space(), parts)
    }
}

/// Angle swept around `q` by the footprint between parameters `s0 < s1`
/// (span below pi).
fn sub_arc_winding(f: &Footprint, s0: f64, s1: f64, q: &Vector2<f64>) -> f64 {
    let p0 = f.point(s0) - q;
    let p1 = f.point(s1) - q;
    let chord = (p0[0] * p1[1] - p0[1] * p1[0]).atan2(p0.dot(&p1));
    if f.is_line() {
        return chord;
    }
    // correction when q sits between the chord and the arc
    let a = f.point(s0);
    let b = f.point(s1);
    let mid = f.point(0.5 * (s0 + s1));
    let dir = b - a;
    let side = |x: Vector2<f64>| dir[0] * (x[1] - a[1]) - dir[1] * (x[0] - a[0]);
    let bulge = side(mid);
    let sq = side(*q);
    if bulge * sq <= 0.0 {
        return chord;
    }
    let crate::cycles::FootprintShape::Circle { center, radius } = f.shape() else {
        return chord;
    };
    if (q - center).norm() >= radius {
        return chord;
    }
    // bulge to the right of a->b makes the arc+chord loop counterclockwise
    if bulge < 0.0 {
        chord + TAU
    } else {
        chord - TAU
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum End {
    Vertex(usize),
    Open,
}

struct Comp {
    owner: Owner,
    index: usize,
    cycle: Cycle,
    fp: ConformalFootprint,
    dup_of: Option<usize>,
}

struct Vertex {
    pos: Vector2<f64>,
    comps: [usize; 2],
}

struct Piece {
    comp: usize,
    t0: f64,
    t1: f64,
    start: End,
    end: End,
}

fn unwrap_param(fp: &Footprint, base: f64, t: f64) -> f64 {
    if fp.is_line() {
        t
    } else {
        base + (t - base).rem_euclid(TAU)
    }
}

/// Pick a parameter in `(lo, hi)` far from the tangency parameters.
fn probe_param(lo: f64, hi: f64, tangents: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = vec![lo];
    cuts.extend(tangents.iter().copied().filter(|&t| t > lo && t < hi));
    cuts.push(hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = (f64::NEG_INFINITY, 0.0);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (width, mid) = match (a.is_finite(), b.is_finite()) {
            (true, true) => (b - a, 0.5 * (a + b)),
            (false, true) => (f64::INFINITY, b - 1.0),
            (true, false) => (f64::INFINITY, a + 1.0),
            (false, false) => (f64::INFINITY, 0.0),
        };
        if width > best.0 {
            best = (width, mid);
        }
    }
    best.1
}

/// Intersection of two regions of the same two-dimensional space, with the
/// compact case traced as an arc-polygon.
pub fn intersect_regions(a: &Region, b: &Region) -> Result<IntersectionResult> {
    let space = a.space();
    if b.space() != space {
        return Err(GeomError::SpaceMismatch);
    }
    space.require_dim2("region intersection")?;
    let tol = Tolerances::default();

    let mut cycles: Vec<(Owner, usize, Cycle)> = Vec::new();
    for (owner, r) in [(Owner::A, a), (Owner::B, b)] {
        for (i, c) in r.boundary_components().into_iter().enumerate() {
            cycles.push((owner, i, c));
        }
    }
    let refs: Vec<&Cycle> = cycles.iter().map(|c| &c.2).collect();
    let frame = ConformalFrame::avoiding(space, &refs);
    let mut comps = Vec::with_capacity(cycles.len());
    for (owner, index, cycle) in cycles {
        let fp = frame.footprint(&cycle)?;
        comps.push(Comp { owner, index, cycle, fp, dup_of: None });
    }

    // coincident boundary components
    for j in 0..comps.len() {
        if comps[j].owner != Owner::B {
            continue;
        }
        for i in 0..comps.len() {
            if comps[i].owner != Owner::A {
                continue;
            }
            match comps[i].fp.footprint.same_as(&comps[j].fp.footprint, 1e-9) {
                Some(true) => comps[j].dup_of = Some(i),
                Some(false) => return Ok(IntersectionResult::EmptyInterior),
                None => {}
            }
        }
    }
    let is_dup_pair = |i: usize, j: usize| comps[j].dup_of == Some(i) || comps[i].dup_of == Some(j);

    // vertices
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut tangents: Vec<Vec<f64>> = vec![Vec::new(); comps.len()];
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            if comps[i].owner != Owner::A || comps[j].owner != Owner::B || is_dup_pair(i, j) {
                continue;
            }
            let hits = comps[i].fp.footprint.intersect(&comps[j].fp.footprint, tol.tangency)?;
            for (v, tangent) in hits {
                if frame.is_disk_model() && v.norm() >= 1.0 - 1e-12 {
                    continue;
                }
                let ti = comps[i].fp.footprint.param(&v);
                let tj = comps[j].fp.footprint.param(&v);
                if !comps[i].fp.covers(ti) || !comps[j].fp.covers(tj) {
                    continue;
                }
                if tangent {
                    tangents[i].push(ti);
                    tangents[j].push(tj);
                    continue;
                }
                let p = frame.from_chart(v)?;
                for (k, c) in comps.iter().enumerate() {
                    if k == i || k == j || c.dup_of.is_some() {
                        continue;
                    }
                    if c.cycle.signed_distance(&p).abs() < tol.geometry {
                        return Err(GeomError::DegenerateTangency);
                    }
                }
                vertices.push(Vertex { pos: v, comps: [i, j] });
            }
        }
    }
    let any_tangent = tangents.iter().any(|t| !t.is_empty());

    // split components into pieces
    let mut pieces: Vec<Piece> = Vec::new();
    for (ci, c) in comps.iter().enumerate() {
        if c.dup_of.is_some() {
            continue;
        }
        let fp = &c.fp.footprint;
        let (lo, hi, closed) = match c.fp.clip {
            Clip::Full => (None, None, true),
            Clip::Punctured(p) => (Some(p), Some(p + TAU), false),
            Clip::Between(s, e) => (Some(s), Some(e), false),
        };
        let mut marks: Vec<(f64, usize)> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.comps.contains(&ci))
            .map(|(vi, v)| {
                let t = fp.param(&v.pos);
                (lo.map_or(t, |l| unwrap_param(fp, l, t)), vi)
            })
            .collect();
        marks.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if closed {
            if marks.is_empty() {
                let t0 = fp.param(&fp.point(0.0));
                pieces.push(Piece { comp: ci, t0, t1: t0 + TAU, start: End::Open, end: End::Open });
                continue;
            }
            for k in 0..marks.len() {
                let (t0, v0) = marks[k];
                let (mut t1, v1) = marks[(k + 1) % marks.len()];
                if k + 1 == marks.len() {
                    t1 += TAU;
                }
                pieces.push(Piece { comp: ci, t0, t1, start: End::Vertex(v0), end: End::Vertex(v1) });
            }
        } else {
            let (lo, hi) = (lo.unwrap(), hi.unwrap());
            let mut prev = (lo, End::Open);
            for &(t, vi) in &marks {
                pieces.push(Piece { comp: ci, t0: prev.0, t1: t, start: prev.1, end: End::Vertex(vi) });
                prev = (t, End::Vertex(vi));
            }
            pieces.push(Piece { comp: ci, t0: prev.0, t1: hi, start: prev.1, end: End::Open });
        }
    }

    // keep the pieces interior to the other region
    let mut kept: Vec<Piece> = Vec::new();
    for piece in pieces {
        let c = &comps[piece.comp];
        let fp = &c.fp.footprint;
        let tl: Vec<f64> = tangents[piece.comp]
            .iter()
            .map(|&t| if fp.is_line() { t } else { piece.t0 + (t - piece.t0).rem_euclid(TAU) })
            .collect();
        let probe = probe_param(piece.t0, piece.t1, &tl);
        let m = frame.from_chart(fp.point(probe))?;
        let other = comps
            .iter()
            .enumerate()
            .filter(|(k, o)| o.owner != c.owner && !is_dup_pair(piece.comp, *k))
            .map(|(_, o)| o.cycle.signed_distance(&m))
            .fold(f64::NEG_INFINITY, f64::max);
        if other < 0.0 {
            kept.push(piece);
        }
    }

    if kept.is_empty() {
        return if any_tangent { Err(GeomError::DegenerateContact) } else { Ok(IntersectionResult::Empty) };
    }
    let ideal = a.ideal_set().intersect(&b.ideal_set());
    if !ideal.is_empty() || kept.iter().any(|p| p.start == End::Open && p.end == End::Open && !closed_piece(p, &comps))
        || kept.iter().any(|p| (p.start == End::Open) != (p.end == End::Open))
    {
        return Ok(IntersectionResult::Noncompact { ideal });
    }

    // stitch
    let parts = if kept.len() == 1 && kept[0].start == End::Open {
        let p = &kept[0];
        let c = &comps[p.comp];
        let s = frame.from_chart(c.fp.footprint.point(p.t0))?;
        vec![(c.owner, c.index, c.cycle.clone(), s.clone(), s)]
    } else {
        if kept.iter().any(|p| p.start == End::Open) {
            return invalid("intersection boundary is not a single closed curve");
        }
        let start_of = |v: usize| kept.iter().position(|p| p.start == End::Vertex(v));
        let key = |p: &Piece| {
            let End::Vertex(v) = p.start else { unreachable!() };
            (vertices[v].pos[0], vertices[v].pos[1], comps[p.comp].owner)
        };
        let first = (0..kept.len())
            .min_by(|&x, &y| key(&kept[x]).partial_cmp(&key(&kept[y])).unwrap())
            .expect("nonempty");
        let mut order = vec![first];
        loop {
            let End::Vertex(v) = kept[*order.last().unwrap()].end else { unreachable!() };
            let next = start_of(v).ok_or_else(|| GeomError::Invalid("open intersection boundary".into()))?;
            if next == first {
                break;
            }
            if order.contains(&next) || order.len() > kept.len() {
                return invalid("intersection boundary does not close up");
            }
            order.push(next);
        }
        if order.len() != kept.len() {
            return invalid("intersection boundary has several loops");
        }
        let mut parts = Vec::with_capacity(order.len());
        for &k in &order {
            let p = &kept[k];
            let c = &comps[p.comp];
            let (End::Vertex(v0), End::Vertex(v1)) = (p.start, p.end) else { unreachable!() };
            parts.push((
                c.owner,
                c.index,
                c.cycle.clone(),
                frame.from_chart(vertices[v0].pos)?,
                frame.from_chart(vertices[v1].pos)?,
            ));
        }
        parts
    };
    Ok(IntersectionResult::Compact(ArcPolygon::from_parts(space, parts)?))
}

fn closed_piece(p: &Piece, comps: &[Comp]) -> bool {
    matches!(comps[p.comp].fp.clip, Clip::Full)
}
