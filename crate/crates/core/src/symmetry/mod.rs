//! Central symmetry of regions, arc-polygons and disk hulls, decided from a
//! finite list of candidate centres.

mod meb;

pub use meb::min_enclosing_ball;

use serde::{Deserialize, Serialize};

use crate::cycles::{intersect_cycles, Cycle, CycleKind};
use crate::error::{invalid, GeomError, Result};
use crate::regions::{ArcPolygon, HullOfDisks, IdealSet, IntersectionResult, Region, RegionKind};
use crate::space::{angle_gap, common_perpendicular, distance, geodesic_point, Geodesic, Isometry, Point};

/// Candidate centres of symmetry exchanging two cycles.
#[derive(Debug, Clone, PartialEq)]
pub enum CandidateCenter {
    UniquePoint(Point),
    LineLocus(Geodesic),
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Symmetric,
    NotSymmetric,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    DiskMidpoint,
    ArcPairing,
    MEBCrossCheck,
}

/// Evidence backing a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    OddIdealCount(usize),
    OneIdealPoint,
    NoCandidate,
    ResidualExceedsBand(f64),
    LineLocus(Geodesic),
}

impl Certificate {
    pub fn describe(&self) -> String {
        match self {
            Certificate::OddIdealCount(n) => format!("odd ideal point count ({n})"),
            Certificate::OneIdealPoint => "one ideal point".into(),
            Certificate::NoCandidate => "no candidate centre".into(),
            Certificate::ResidualExceedsBand(r) => format!("residual {r:.3e} exceeds band"),
            Certificate::LineLocus(_) => "centres fill a line".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub verdict: Verdict,
    pub symmetric: bool,
    pub center: Option<Point>,
    pub residual: f64,
    /// Cyclic shift `k` sending arc `i` to arc `i + k`.
    pub pairing: Option<usize>,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

impl SymmetryReport {
    fn new(verdict: Verdict, center: Option<Point>, residual: f64, method: Method) -> Self {
        Self { verdict, symmetric: verdict == Verdict::Symmetric, center, residual, pairing: None, method, certificate: None }
    }

    fn graded(residual: f64, tol: f64, center: Option<Point>, method: Method) -> Self {
        let verdict = grade(residual, tol);
        let mut r = Self::new(verdict, center, residual, method);
        if verdict == Verdict::NotSymmetric {
            r.certificate = Some(if residual.is_finite() {
                Certificate::ResidualExceedsBand(residual)
            } else {
                Certificate::NoCandidate
            });
        }
        if verdict != Verdict::Symmetric && !residual.is_finite() {
            r.center = None;
        }
        r
    }
}

/// Symmetric below `tol`, not symmetric above `10 tol`, undecided between.
pub fn grade(residual: f64, tol: f64) -> Verdict {
    if residual < tol {
        Verdict::Symmetric
    } else if residual > 10.0 * tol {
        Verdict::NotSymmetric
    } else {
        Verdict::Indeterminate
    }
}

fn distinct_ideal_points(cycles: &[&Cycle]) -> usize {
    let mut pts: Vec<f64> = Vec::new();
    for c in cycles {
        for t in c.ideal_points() {
            if !pts.iter().any(|&q| angle_gap(q, t) < 1e-9) {
                pts.push(t);
            }
        }
    }
    pts.len()
}

fn exchanges(center: &Point, c1: &Cycle, c2: &Cycle) -> bool {
    c1.transformed(&Isometry::point_reflection(center)).same_as(c2, 1e-7)
}

/// Centres of symmetry exchanging two congruent hypercycles without common
/// finite points, classified by their number of distinct ideal points.
pub fn candidate_center_two_hypercycles(h1: &Cycle, h2: &Cycle) -> Result<CandidateCenter> {
    let (
        CycleKind::Hypercycle { base: g1, distance: l1, .. },
        CycleKind::Hypercycle { base: g2, distance: l2, .. },
    ) = (h1.kind(), h2.kind())
    else {
        return invalid("expected two hypercycles");
    };
    if (l1 - l2).abs() > 1e-9 {
        return Err(GeomError::NotCongruent);
    }
    if h1.same_as(h2, 1e-9) {
        return Ok(CandidateCenter::None);
    }
    if !intersect_cycles(h1, h2)?.is_empty() {
        return Err(GeomError::CommonFinitePoint);
    }
    Ok(match distinct_ideal_points(&[h1, h2]) {
        2 => CandidateCenter::LineLocus(g1.clone()),
        4 => match common_perpendicular(g1, g2) {
            Ok(seg) => {
                let o = seg.midpoint();
                if exchanges(&o, h1, h2) {
                    CandidateCenter::UniquePoint(o)
                } else {
                    CandidateCenter::None
                }
            }
            Err(_) => CandidateCenter::None,
        },
        _ => CandidateCenter::None,
    })
}

/// Candidate centres for a point reflection mapping `c1` onto `c2`.
pub fn candidate_center(c1: &Cycle, c2: &Cycle) -> CandidateCenter {
    let space = c1.space();
    if c2.space() != space {
        return CandidateCenter::None;
    }
    let unique = |o: Point| if exchanges(&o, c1, c2) { CandidateCenter::UniquePoint(o) } else { CandidateCenter::None };
    match (c1.kind(), c2.kind()) {
        (CycleKind::Circle { center: a, radius: r }, CycleKind::Circle { center: b, radius: q }) => {
            if (r - q).abs() > 1e-9 {
                return CandidateCenter::None;
            }
            match geodesic_point(a, b, 0.5) {
                Ok(m) => unique(m),
                Err(_) => CandidateCenter::None,
            }
        }
        (CycleKind::Paracycle { ideal: k, .. }, CycleKind::Paracycle { ideal: l, .. }) => {
            if angle_gap(*k, *l) < 1e-9 {
                return CandidateCenter::None;
            }
            let Ok(g) = Geodesic::from_ideal(*k, *l) else {
                return CandidateCenter::None;
            };
            let o = g.foot();
            let s_k = -c1.signed_distance(&o);
            let s_l = c2.signed_distance(&o);
            unique(g.point_at(0.5 * (s_k + s_l)))
        }
        (
            CycleKind::Hypercycle { base: g1, distance: l1, side: s1 },
            CycleKind::Hypercycle { base: g2, distance: l2, side: s2 },
        ) => {
            // crossing hypercycles are allowed here, unlike boundary
            // components of a single region
            if (l1 - l2).abs() > 1e-9 || c1.same_as(c2, 1e-9) {
                return CandidateCenter::None;
            }
            match distinct_ideal_points(&[c1, c2]) {
                2 if g1.same_line(g2, 1e-9) && (s1 != s2) == (g1.normal().dot(g2.normal()) > 0.0) => {
                    CandidateCenter::LineLocus(g1.clone())
                }
                4 => match common_perpendicular(g1, g2) {
                    Ok(seg) => unique(seg.midpoint()),
                    Err(_) => CandidateCenter::None,
                },
                _ => CandidateCenter::None,
            }
        }
        (CycleKind::Geodesic(g1), CycleKind::Geodesic(g2)) => {
            if space.is_spherical() {
                let v = g1.normal() + g2.normal();
                if v.norm() < 1e-12 {
                    return CandidateCenter::None;
                }
                match Point::new(space, &v / v.norm()) {
                    Ok(o) => unique(o),
                    Err(_) => CandidateCenter::None,
                }
            } else if space.is_flat() {
                if (g1.normal() + g2.normal()).norm() > 1e-9 {
                    return CandidateCenter::None;
                }
                let off = 0.5 * (g1.offset() - g2.offset());
                match Geodesic::from_normal(space, g1.normal().clone(), off) {
                    Ok(mid) => CandidateCenter::LineLocus(mid),
                    Err(_) => CandidateCenter::None,
                }
            } else {
                match common_perpendicular(g1, g2) {
                    Ok(seg) => unique(seg.midpoint()),
                    Err(_) => CandidateCenter::None,
                }
            }
        }
        _ => CandidateCenter::None,
    }
}

/// Result of testing one cyclic pairing of a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingOutcome {
    pub shift: usize,
    pub center: Option<Point>,
    pub residual: f64,
}

fn locate_center(p: &ArcPolygon, shift: usize) -> Option<Point> {
    let n = p.len();
    let mut lines: Vec<Geodesic> = Vec::new();
    for i in 0..n {
        match candidate_center(&p.arcs()[i].cycle, &p.arcs()[(i + shift) % n].cycle) {
            CandidateCenter::UniquePoint(o) => return Some(o),
            CandidateCenter::LineLocus(g) => lines.push(g),
            CandidateCenter::None => {}
        }
    }
    for (i, g) in lines.iter().enumerate() {
        for h in &lines[i + 1..] {
            if let Some(x) = g.crossing(h) {
                return Some(x);
            }
        }
    }
    let g = lines.first()?;
    let (c, _) = min_enclosing_ball(&p.samples(8)).ok()?;
    Some(g.project(&c))
}

/// Largest mismatch between the reflected polygon and itself when arc `i`
/// is sent to arc `i + shift`.
pub fn reflection_residual(p: &ArcPolygon, center: &Point, shift: usize) -> f64 {
    let n = p.len();
    let sigma = Isometry::point_reflection(center);
    let mut worst: f64 = 0.0;
    let verts = p.vertices();
    for (i, v) in verts.iter().enumerate() {
        worst = worst.max(distance(&sigma.apply(v), &verts[(i + shift) % n]));
    }
    for i in 0..n {
        for j in 0..8 {
            let x = sigma.apply(&p.arc_point(i, (j as f64 + 0.5) / 8.0));
            worst = worst.max(p.distance_to_arc((i + shift) % n, &x));
        }
    }
    worst
}

fn canonical_center(p: &ArcPolygon, c: Point) -> Point {
    if !p.space().is_spherical() {
        return c;
    }
    // a centre of a convex set lies in the set
    if p.contains(&c) {
        return c;
    }
    if p.contains(&c.antipode()) {
        return c.antipode();
    }
    let sum = p.samples(4).iter().fold(nalgebra::DVector::zeros(3), |acc, q| acc + q.coords());
    if c.coords().dot(&sum) < 0.0 {
        c.antipode()
    } else {
        c
    }
}

/// Every cyclic pairing with its candidate centre and residual.
pub fn pairing_outcomes(p: &ArcPolygon) -> Vec<PairingOutcome> {
    (0..p.len())
        .map(|shift| {
            let center = locate_center(p, shift).map(|c| canonical_center(p, c));
            let residual = center.as_ref().map_or(f64::INFINITY, |c| reflection_residual(p, c, shift));
            PairingOutcome { shift, center, residual }
        })
        .collect()
}

/// Decide whether an arc-polygon is centrally symmetric.
pub fn is_centrally_symmetric_polygon(p: &ArcPolygon, tol: f64) -> SymmetryReport {
    let outcomes = pairing_outcomes(p);
    let parity = if p.space().is_hyperbolic() { p.ideal_point_count() } else { 0 };
    let chosen = outcomes
        .iter()
        .find(|o| o.residual < tol)
        .or_else(|| outcomes.iter().min_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap()))
        .cloned();
    let Some(best) = chosen else {
        return SymmetryReport::graded(f64::INFINITY, tol, None, Method::ArcPairing);
    };
    let mut report = SymmetryReport::graded(best.residual, tol, best.center, Method::ArcPairing);
    report.pairing = Some(best.shift);
    if parity % 2 == 1 {
        report.verdict = Verdict::NotSymmetric;
        report.symmetric = false;
        report.certificate = Some(Certificate::OddIdealCount(parity));
    }
    report
}

/// Certificate of asymmetry read off an ideal set: a point reflection acts on
/// the ideal circle without fixed points, so isolated ideal points pair up.
pub fn ideal_set_certificate(ideal: &IdealSet) -> Option<Certificate> {
    let isolated = ideal.points().len();
    match isolated {
        1 if ideal.arcs().len() == 1 => Some(Certificate::OneIdealPoint),
        n if n % 2 == 1 => Some(Certificate::OddIdealCount(n)),
        _ => None,
    }
}

/// Symmetry verdict for an intersection. Unbounded intersections are only
/// decided when their ideal set certifies asymmetry.
pub fn is_centrally_symmetric_result(res: &IntersectionResult, tol: f64) -> SymmetryReport {
    match res {
        IntersectionResult::Compact(p) => is_centrally_symmetric_polygon(p, tol),
        IntersectionResult::Noncompact { ideal } => match ideal_set_certificate(ideal) {
            Some(cert) => {
                let mut rep = SymmetryReport::new(Verdict::NotSymmetric, None, f64::INFINITY, Method::ArcPairing);
                rep.certificate = Some(cert);
                rep
            }
            None => SymmetryReport::new(Verdict::Indeterminate, None, f64::INFINITY, Method::ArcPairing),
        },
        _ => SymmetryReport::new(Verdict::Indeterminate, None, f64::INFINITY, Method::ArcPairing),
    }
}

/// Decide whether a region is centrally symmetric.
pub fn is_centrally_symmetric_region(r: &Region, tol: f64) -> Result<SymmetryReport> {
    let space = r.space();
    Ok(match r.kind() {
        RegionKind::Disk { center, .. } => SymmetryReport::new(Verdict::Symmetric, Some(center.clone()), 0.0, Method::DiskMidpoint),
        RegionKind::Paraball { .. } => {
            let mut rep = SymmetryReport::new(Verdict::NotSymmetric, None, f64::INFINITY, Method::ArcPairing);
            rep.certificate = Some(Certificate::OneIdealPoint);
            rep
        }
        RegionKind::HalfPlane(g) if space.is_spherical() => {
            let pole = Point::new(space, g.normal().clone())?;
            SymmetryReport::new(Verdict::Symmetric, Some(pole), 0.0, Method::ArcPairing)
        }
        RegionKind::HalfPlane(_) => no_candidate(),
        RegionKind::Padded { .. } => {
            let comps = r.boundary_components();
            match comps.len() {
                1 => no_candidate(),
                2 => padded_pair(&comps[0], &comps[1], tol)?,
                _ => {
                    return Err(GeomError::Unsupported("padded regions with more than two components".into()));
                }
            }
        }
    })
}

fn no_candidate() -> SymmetryReport {
    let mut rep = SymmetryReport::new(Verdict::NotSymmetric, None, f64::INFINITY, Method::ArcPairing);
    rep.certificate = Some(Certificate::NoCandidate);
    rep
}

fn pair_mismatch(o: &Point, c1: &Cycle, c2: &Cycle) -> f64 {
    let sigma = Isometry::point_reflection(o);
    c1.transformed(&sigma).mismatch(c2).max(c2.transformed(&sigma).mismatch(c1))
}

fn padded_pair(c1: &Cycle, c2: &Cycle, tol: f64) -> Result<SymmetryReport> {
    Ok(match candidate_center_two_hypercycles(c1, c2)? {
        CandidateCenter::UniquePoint(o) => {
            let res = pair_mismatch(&o, c1, c2);
            SymmetryReport::graded(res, tol, Some(o), Method::ArcPairing)
        }
        CandidateCenter::LineLocus(g) => {
            let o = g.foot();
            let res = pair_mismatch(&o, c1, c2);
            let mut rep = SymmetryReport::graded(res, tol, Some(o), Method::ArcPairing);
            rep.certificate = Some(Certificate::LineLocus(g));
            rep
        }
        CandidateCenter::None => {
            let mut rep = no_candidate();
            let n = distinct_ideal_points(&[c1, c2]);
            if n % 2 == 1 {
                rep.certificate = Some(Certificate::OddIdealCount(n));
            }
            rep
        }
    })
}

/// Point of arc `i` equidistant from the arc's ends.
fn arc_midpoint(p: &ArcPolygon, i: usize) -> Point {
    let a = &p.arcs()[i];
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let x = p.arc_point(i, mid);
        if distance(&x, &a.start) < distance(&x, &a.end) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    p.arc_point(i, 0.5 * (lo + hi))
}

/// Centre of the smallest ball around the polygon's vertices and arc
/// midpoints; it must agree with any centre of symmetry.
pub fn meb_center(p: &ArcPolygon) -> Result<Point> {
    let pts = if p.len() == 1 {
        (0..16).map(|k| p.arc_point(0, k as f64 / 16.0)).collect()
    } else {
        let mut pts = p.vertices();
        pts.extend((0..p.len()).map(|i| arc_midpoint(p, i)));
        pts
    };
    Ok(min_enclosing_ball(&pts)?.0)
}

/// Whether the enclosing-ball centre matches the reported centre within 1e-6.
pub fn meb_cross_check(p: &ArcPolygon, report: &SymmetryReport) -> bool {
    let (true, Some(c)) = (report.symmetric, report.center.as_ref()) else {
        return false;
    };
    meb_center(p).map_or(false, |m| distance(&m, c) < 1e-6)
}

/// Symmetry of the convex hull of two disks, testing the midpoint of the
/// centres and the centres themselves.
pub fn hull_symmetry(h: &HullOfDisks, tol: f64) -> SymmetryReport {
    let mut candidates: Vec<Point> = Vec::new();
    if h.arcs.len() == 2 {
        if let Ok(m) = geodesic_point(&h.arcs[0].center, &h.arcs[1].center, 0.5) {
            candidates.push(m);
        }
    }
    candidates.extend(h.arcs.iter().map(|a| a.center.clone()));
    let samples = h.samples(16);
    let scored = candidates.into_iter().map(|c| {
        let sigma = Isometry::point_reflection(&c);
        let res = samples.iter().map(|x| h.boundary_distance(&sigma.apply(x))).fold(0.0, f64::max);
        (c, res)
    });
    let mut best: Option<(Point, f64)> = None;
    for (c, res) in scored {
        if res < tol {
            best = Some((c, res));
            break;
        }
        if best.as_ref().map_or(true, |b| res < b.1) {
            best = Some((c, res));
        }
    }
    match best {
        Some((c, res)) => SymmetryReport::graded(res, tol, Some(c), Method::DiskMidpoint),
        None => no_candidate(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::Side;
    use crate::regions::{intersect_regions, CoreSet};
    use crate::space::SpaceKind;
    use std::f64::consts::PI;

    #[test]
    fn reflected_hypercycle_pair() {
        let h1 = Cycle::hypercycle(Geodesic::from_ideal(0.2, 1.4).unwrap(), 0.3, Side::Right).unwrap();
        let o = Point::from_polar(SpaceKind::H2, 0.4, 2.5);
        let h2 = h1.transformed(&Isometry::point_reflection(&o));
        match candidate_center_two_hypercycles(&h1, &h2).unwrap() {
            CandidateCenter::UniquePoint(c) => assert!(distance(&c, &o) < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hypercycle_trichotomy() {
        let g = Geodesic::from_ideal(0.0, PI).unwrap();
        let a = Cycle::hypercycle(g.clone(), 0.3, Side::Right).unwrap();
        let b = Cycle::hypercycle(g, 0.3, Side::Left).unwrap();
        assert!(matches!(candidate_center_two_hypercycles(&a, &b).unwrap(), CandidateCenter::LineLocus(_)));
        let c = Cycle::hypercycle(Geodesic::from_ideal(PI, 2.0).unwrap(), 0.3, Side::Left).unwrap();
        let d = Cycle::hypercycle(Geodesic::from_ideal(0.0, PI).unwrap(), 0.3, Side::Left).unwrap();
        match candidate_center_two_hypercycles(&c, &d) {
            Ok(CandidateCenter::None) | Err(GeomError::CommonFinitePoint) => {}
            other => panic!("{other:?}"),
        }
        let e = Cycle::hypercycle(Geodesic::from_ideal(0.0, 1.0).unwrap(), 0.4, Side::Left).unwrap();
        assert_eq!(candidate_center_two_hypercycles(&a, &e).unwrap_err(), GeomError::NotCongruent);
    }

    #[test]
    fn lens_symmetric_about_midpoint() {
        for space in [SpaceKind::H2, SpaceKind::S2, SpaceKind::E2] {
            let c1 = Point::from_polar(space, 0.3, 0.7);
            let c2 = Point::from_polar(space, 0.6, 2.0);
            let a = Region::disk(c1.clone(), 0.6).unwrap();
            let b = Region::disk(c2.clone(), 0.6).unwrap();
            let poly = intersect_regions(&a, &b).unwrap();
            let poly = poly.polygon().unwrap();
            let rep = is_centrally_symmetric_polygon(poly, 1e-8);
            assert!(rep.symmetric, "{space}: {rep:?}");
            let m = geodesic_point(&c1, &c2, 0.5).unwrap();
            assert!(distance(rep.center.as_ref().unwrap(), &m) < 1e-8);
            assert!(meb_cross_check(poly, &rep));
        }
    }

    #[test]
    fn strip_region_certificates() {
        let strip = Region::padded(CoreSet::line(Geodesic::from_ideal(0.0, PI).unwrap()).unwrap(), 0.4).unwrap();
        let rep = is_centrally_symmetric_region(&strip, 1e-8).unwrap();
        assert!(rep.symmetric);
        assert!(matches!(rep.certificate, Some(Certificate::LineLocus(_))));
        let para = Region::paraball(1.0, 0.2).unwrap();
        let rep = is_centrally_symmetric_region(&para, 1e-8).unwrap();
        assert_eq!(rep.certificate, Some(Certificate::OneIdealPoint));
    }

    #[test]
    fn crossing_strips_symmetric() {
        let lam = 0.4;
        let a = Region::padded(CoreSet::line(Geodesic::from_ideal(PI, 0.0).unwrap()).unwrap(), lam).unwrap();
        let b = Region::padded(CoreSet::line(Geodesic::from_ideal(1.8 * PI, 0.8 * PI).unwrap()).unwrap(), lam)
            .unwrap();
        let res = intersect_regions(&a, &b).unwrap();
        let poly = res.polygon().unwrap();
        let rep = is_centrally_symmetric_polygon(poly, 1e-8);
        assert!(rep.symmetric, "{rep:?}");
        let o = SpaceKind::H2.base_point();
        assert!(distance(rep.center.as_ref().unwrap(), &o) < 1e-8);
        assert!(meb_cross_check(poly, &rep));
    }
}
