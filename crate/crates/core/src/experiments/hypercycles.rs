use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Vector2;
use rand::Rng;

use super::{finite_or, ExperimentConfig, ExperimentReport, Recorder};
use crate::cycles::{ConformalFrame, FootprintShape};
use crate::error::Result;
use crate::regions::{in_closed_left_arc, intersect_regions, lemma12_reduce, CoreSet, IntersectionResult, Region};
use crate::space::{angle_gap, common_perpendicular, distance, Geodesic, Isometry, ModelChart, Point, SpaceKind};
use crate::symmetry::{is_centrally_symmetric_polygon, is_centrally_symmetric_result, Verdict};

/// Two padded regions placed so that the chosen boundary components face
/// each other across their base lines.
#[derive(Debug, Clone)]
pub struct SmallConfig {
    pub a: Region,
    pub b: Region,
    pub comp_a: usize,
    pub comp_b: usize,
    pub line_a: Geodesic,
    pub line_b: Geodesic,
    /// Distance of the base lines; zero for asymptotic lines.
    pub gap: f64,
}

fn translation_y(t: f64) -> Isometry {
    let h = SpaceKind::H2;
    Isometry::rotation(h, FRAC_PI_2).compose(&Isometry::translation_x(h, t)).compose(&Isometry::rotation(h, -FRAC_PI_2))
}

/// Orient `g` so that `other` lies in its closed right side.
fn facing(g: Geodesic, other: &Geodesic) -> Geodesic {
    let (a, b) = other.ideal_points().expect("hyperbolic");
    let rev = g.reversed();
    if in_closed_left_arc(&rev, a) && in_closed_left_arc(&rev, b) {
        g
    } else {
        rev
    }
}

/// A core with 2 to 4 disjoint caps cut off, or occasionally a single line.
fn random_core<R: Rng>(rng: &mut R) -> CoreSet {
    if rng.gen_bool(0.2) {
        let a = rng.gen_range(0.0..TAU);
        return CoreSet::line(Geodesic::from_ideal(a, a + rng.gen_range(1.0..PI)).expect("distinct")).expect("line");
    }
    let n = rng.gen_range(2..=4);
    let spacing = TAU / n as f64;
    let start = rng.gen_range(0.0..TAU);
    let lines = (0..n)
        .map(|i| {
            let c = start + spacing * (i as f64 + rng.gen_range(-0.1..0.1));
            let w = spacing * rng.gen_range(0.2..0.7);
            Geodesic::from_ideal(c - 0.5 * w, c + 0.5 * w).expect("distinct")
        })
        .collect();
    CoreSet::new(lines).expect("disjoint caps")
}

fn place(core: &CoreSet, lambda: f64, target: &Geodesic, shift: f64) -> Result<Region> {
    let g = &core.lines()[0];
    let iso = Isometry::frame_of_geodesic(target)
        .compose(&Isometry::translation_x(SpaceKind::H2, shift))
        .compose(&Isometry::frame_of_geodesic(g).inverse());
    Region::padded(core.transformed(&iso), lambda)
}

/// Random configuration: base lines at distance `gap` (ultraparallel) or,
/// with `gap == 0`, sharing one ideal point.
pub fn small_intersection_config<R: Rng>(rng: &mut R, lambda: f64, gap: f64) -> Result<SmallConfig> {
    let (ta, tb) = if gap > 0.0 {
        let std = Geodesic::standard(SpaceKind::H2);
        (std.reversed().transformed(&translation_y(-0.5 * gap)), std.transformed(&translation_y(0.5 * gap)))
    } else {
        let u0 = -FRAC_PI_2;
        let ga = Geodesic::from_ideal(u0, PI - rng.gen_range(0.2..1.2))?;
        let gb = Geodesic::from_ideal(u0, rng.gen_range(0.2..1.2))?;
        (facing(ga.clone(), &gb), facing(gb, &ga))
    };
    let (ca, cb) = (random_core(rng), random_core(rng));
    let a = place(&ca, lambda, &ta, rng.gen_range(-1.0..1.0))?;
    let b = place(&cb, lambda, &tb, rng.gen_range(-1.0..1.0))?;
    let pose = Isometry::random_with(SpaceKind::H2, rng, 1.0);
    Ok(SmallConfig {
        a: a.transformed(&pose),
        b: b.transformed(&pose),
        comp_a: 0,
        comp_b: 0,
        line_a: ta.transformed(&pose),
        line_b: tb.transformed(&pose),
        gap,
    })
}

fn sample_points<R: Rng>(rng: &mut R, centre: &Point, local_radius: f64, n: usize) -> Vec<Point> {
    let h = SpaceKind::H2;
    let to_centre = Isometry::translation_to(centre);
    let rho = (0.5 * local_radius).tanh();
    (0..n)
        .map(|i| {
            let (limit, iso) = if i % 2 == 0 { (rho, Some(&to_centre)) } else { (0.98, None) };
            let v = loop {
                let v = Vector2::new(rng.gen_range(-limit..limit), rng.gen_range(-limit..limit));
                if v.norm() < limit {
                    break v;
                }
            };
            let p = ModelChart::Poincare.from_chart(h, v).expect("inside the disk");
            iso.map_or(p.clone(), |m| m.apply(&p))
        })
        .collect()
}

pub(crate) fn run_small(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("small-intersections", cfg);
    let band = cfg.band();
    let lambda = cfg.lambda;
    let trials = cfg.trials_or(50);
    let samples = 10_000;
    let (mut disagreements, mut symmetric_checked, mut skipped) = (0usize, 0usize, 0usize);
    let mut worst_res: f64 = 0.0;
    for t in 0..trials {
        let mut rng = rec.rng(t);
        let gap = if t % 5 == 4 { 0.0 } else { lambda * rng.gen_range(1.5..1.98) };
        let conf = match small_intersection_config(&mut rng, lambda, gap) {
            Ok(c) => c,
            Err(e) => {
                rec.fail(t, format!("configuration failed: {e}"), &[("gap", gap)]);
                continue;
            }
        };
        rec.ran();
        let (a1, b1) = match lemma12_reduce(&conf.a, &conf.b, conf.comp_a, conf.comp_b) {
            Ok(r) => r,
            Err(e) => {
                rec.fail(t, format!("reduction refused: {e}"), &[("gap", gap)]);
                continue;
            }
        };
        let centre = match common_perpendicular(&conf.line_a, &conf.line_b) {
            Ok(seg) => seg.midpoint(),
            Err(_) => conf.line_a.foot(),
        };
        let mut bad = 0usize;
        for p in sample_points(&mut rng, &centre, 2.0 * lambda + 1.0, samples) {
            let sd = [&conf.a, &conf.b, &a1, &b1].map(|r| r.signed_distance(&p));
            if sd.iter().any(|v| v.abs() <= band) {
                continue;
            }
            if (sd[0] < 0.0 && sd[1] < 0.0) != (sd[2] < 0.0 && sd[3] < 0.0) {
                bad += 1;
            }
        }
        disagreements += bad;
        rec.check(t, bad == 0, "reduced intersection differs from the original", &[
            ("gap", gap),
            ("disagreements", bad as f64),
        ]);

        if gap == 0.0 {
            continue;
        }
        let poly = match intersect_regions(&conf.a, &conf.b) {
            Ok(IntersectionResult::Compact(p)) => p,
            other => {
                rec.fail(t, format!("facing hypercycles did not give a compact lens: {other:?}"), &[("gap", gap)]);
                continue;
            }
        };
        let pts = poly.samples(16);
        let diam = pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| distance(p, q)))
            .fold(0.0, f64::max);
        if diam >= 2.0 * lambda {
            skipped += 1;
            continue;
        }
        symmetric_checked += 1;
        let rep = is_centrally_symmetric_polygon(&poly, band);
        let err = rep.center.as_ref().map_or(f64::INFINITY, |c| distance(c, &centre));
        worst_res = worst_res.max(rep.residual);
        rec.check(t, rep.symmetric && err < band, "small intersection not symmetric about the perpendicular midpoint", &[
            ("gap", gap),
            ("diameter", diam),
            ("residual", finite_or(rep.residual, -1.0)),
            ("centre_error", finite_or(err, -1.0)),
        ]);
    }
    rec.metric("disagreements", disagreements as f64);
    rec.metric("symmetry_checked", symmetric_checked as f64);
    rec.metric("skipped_large_diameter", skipped as f64);
    rec.metric("max_residual", worst_res);
    rec.note("trials filtered by intersection diameter < 2*lambda, the separation of boundary components");
    rec.finish()
}

/// Two single-component parallel domains whose base lines share the ideal
/// point `-pi/2` and are mirror images in the vertical axis.
pub fn lemma21_pair(gamma: f64, lambda: f64) -> Result<(Region, Region, f64)> {
    let u0 = -FRAC_PI_2;
    let gk = Geodesic::from_ideal(u0, PI + gamma)?;
    let gl = Geodesic::from_ideal(-gamma, u0)?;
    Ok((
        Region::padded(CoreSet::half_plane(gk)?, lambda)?,
        Region::padded(CoreSet::half_plane(gl)?, lambda)?,
        u0,
    ))
}

fn circle_of(frame: &ConformalFrame, r: &Region) -> Option<(Vector2<f64>, f64)> {
    let c = r.boundary_components().remove(0);
    match frame.footprint(&c).ok()?.footprint.shape() {
        FootprintShape::Circle { center, radius } => Some((center, radius)),
        _ => None,
    }
}

pub(crate) fn run_lemma21(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("lemma21", cfg);
    let trials = cfg.trials_or(20);
    let frame = ConformalFrame::standard(SpaceKind::H2);
    let mut worst_radius: f64 = 0.0;
    let mut worst_outside = f64::NEG_INFINITY;
    for t in 0..trials {
        let mut rng = rec.rng(t);
        let gamma = if t == 0 { 0.6 } else { rng.gen_range(0.15..1.4) };
        let lambda = if t == 0 { cfg.lambda } else { rng.gen_range(0.2..1.2) };
        rec.ran();
        let Ok((k, l, u0)) = lemma21_pair(gamma, lambda) else {
            rec.fail(t, "configuration failed", &[("gamma", gamma)]);
            continue;
        };
        let (Some((ck, rk)), Some((cl, rl))) = (circle_of(&frame, &k), circle_of(&frame, &l)) else {
            rec.fail(t, "footprints are not circles", &[("gamma", gamma)]);
            continue;
        };
        let u = Vector2::new(u0.cos(), u0.sin());
        let dr = (rk - rl).abs();
        worst_radius = worst_radius.max(dr);
        let on_k = ((u - ck).norm() - rk).abs();
        let on_l = ((u - cl).norm() - rl).abs();
        rec.check(t, dr < 1e-10, "footprint radii differ", &[("gamma", gamma), ("difference", dr)]);
        rec.check(t, on_k < 1e-9 && on_l < 1e-9, "u0 not on both footprints", &[("k", on_k), ("l", on_l)]);

        // boundary of the Euclidean lens of the two balls
        let mut outside = f64::NEG_INFINITY;
        for (c, r, oc, or) in [(ck, rk, cl, rl), (cl, rl, ck, rk)] {
            for j in 0..4000 {
                let th = TAU * j as f64 / 4000.0;
                let x = c + Vector2::new(th.cos(), th.sin()) * r;
                if (x - oc).norm() <= or + 1e-12 && (x - u).norm() > 1e-9 {
                    outside = outside.max(x.norm() - 1.0);
                }
            }
        }
        worst_outside = worst_outside.max(outside);
        rec.check(t, outside < 1e-9, "footprint lens leaves the open disk", &[("gamma", gamma), ("excess", outside)]);

        match intersect_regions(&k, &l) {
            Ok(res @ IntersectionResult::Noncompact { .. }) => {
                let IntersectionResult::Noncompact { ideal } = &res else { unreachable!() };
                let pts = ideal.points();
                let single = ideal.arcs().len() == 1 && pts.len() == 1 && angle_gap(pts[0], u0) < 1e-9;
                let rep = is_centrally_symmetric_result(&res, cfg.band());
                rec.check(t, single && rep.verdict == Verdict::NotSymmetric, "intersection should have only u0 at infinity", &[
                    ("gamma", gamma),
                    ("arcs", ideal.arcs().len() as f64),
                ]);
            }
            other => rec.fail(t, format!("intersection should be unbounded: {other:?}"), &[("gamma", gamma)]),
        }
    }
    rec.metric("max_radius_difference", worst_radius);
    rec.metric("max_lens_excess", worst_outside);
    rec.finish()
}
