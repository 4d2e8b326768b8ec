use std::f64::consts::{FRAC_PI_3, TAU};

use rand::Rng;

use super::{finite_or, ExperimentConfig, ExperimentReport, Recorder};
use crate::regions::{intersect_regions, ArcPolygon, CoreSet, IntersectionResult, Region};
use crate::space::{distance, Geodesic, Isometry, Point, SpaceKind};
use crate::symmetry::{is_centrally_symmetric_polygon, meb_cross_check, pairing_outcomes, Verdict};

const PERTURBATION: f64 = 1e-2;

/// Region with three random caps removed, roughly a third of a turn apart.
pub(crate) fn random_three_cap<R: Rng>(rng: &mut R, lambda: f64) -> Region {
    let start = rng.gen_range(0.0..TAU);
    let lines = (0..3)
        .map(|i| {
            let c = start + 2.0 * FRAC_PI_3 * i as f64 + rng.gen_range(-0.15..0.15);
            let w = rng.gen_range(FRAC_PI_3 + 0.2..2.0 * FRAC_PI_3 - 0.35);
            Geodesic::from_ideal(c - 0.5 * w, c + 0.5 * w).expect("distinct")
        })
        .collect();
    Region::padded(CoreSet::new(lines).expect("disjoint caps"), lambda).expect("positive lambda")
}

fn compact(a: &Region, b: &Region) -> Option<ArcPolygon> {
    match intersect_regions(a, b) {
        Ok(IntersectionResult::Compact(p)) if p.len() >= 2 => Some(p),
        _ => None,
    }
}

/// A polygon symmetric about a known centre, built by reflecting a region.
fn symmetric_case<R: Rng>(rng: &mut R, trial: usize, lambda: f64) -> Option<(ArcPolygon, Point)> {
    for _ in 0..50 {
        let (a, o) = if trial % 4 == 0 {
            let space = [SpaceKind::H2, SpaceKind::S2, SpaceKind::E2][(trial / 4) % 3];
            let c = Isometry::random_with(space, rng, 1.0).apply(&space.base_point());
            let r = rng.gen_range(0.3..1.2);
            let o = Isometry::translation_to(&c)
                .apply(&Point::from_polar(space, rng.gen_range(0.05..0.9) * r, rng.gen_range(0.0..TAU)));
            (Region::disk(c, r).ok()?, o)
        } else {
            let o = Point::from_polar(SpaceKind::H2, rng.gen_range(0.0..0.25), rng.gen_range(0.0..TAU));
            (random_three_cap(rng, lambda), o)
        };
        let b = a.transformed(&Isometry::point_reflection(&o));
        if let Some(p) = compact(&a, &b) {
            return Some((p, o));
        }
    }
    None
}

fn perturbed_case<R: Rng>(rng: &mut R, lambda: f64) -> Option<ArcPolygon> {
    for _ in 0..50 {
        let o = Point::from_polar(SpaceKind::H2, rng.gen_range(0.0..0.25), rng.gen_range(0.0..TAU));
        let a = random_three_cap(rng, lambda);
        let kick = Isometry::perturbation(SpaceKind::H2, rng, PERTURBATION);
        let b = a.transformed(&kick.compose(&Isometry::point_reflection(&o)));
        if let Some(p) = compact(&a, &b) {
            return Some(p);
        }
    }
    None
}

pub(crate) fn run(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("symmetry-soundness", cfg);
    let band = cfg.band();
    let trials = cfg.trials_or(100);
    let mut worst_centre: f64 = 0.0;
    let mut worst_meb: f64 = 0.0;
    for t in 0..trials {
        let mut rng = rec.rng(t);
        rec.ran();
        let Some((poly, o)) = symmetric_case(&mut rng, t, cfg.lambda) else {
            rec.fail(t, "no compact symmetric configuration found", &[]);
            continue;
        };
        let rep = is_centrally_symmetric_polygon(&poly, band);
        let err = rep.center.as_ref().map_or(f64::INFINITY, |c| distance(c, &o));
        worst_centre = worst_centre.max(err);
        rec.check(t, rep.symmetric && err < band, "reflected configuration not detected", &[
            ("arcs", poly.len() as f64),
            ("residual", finite_or(rep.residual, -1.0)),
            ("centre_error", finite_or(err, -1.0)),
        ]);
        if rep.symmetric {
            let meb = crate::symmetry::meb_center(&poly).map_or(f64::INFINITY, |m| distance(&m, &o));
            worst_meb = worst_meb.max(meb);
            rec.check(t, meb_cross_check(&poly, &rep), "enclosing-ball centre disagrees", &[("distance", meb)]);
            let centres: Vec<Point> = pairing_outcomes(&poly)
                .into_iter()
                .filter(|x| x.residual < band)
                .filter_map(|x| x.center)
                .collect();
            let spread = centres.iter().map(|c| distance(c, &centres[0])).fold(0.0, f64::max);
            rec.check(t, spread < 1e-8, "two pairings give different centres", &[("spread", spread)]);
        }
    }

    let mut rejected = 0usize;
    let mut tested = 0usize;
    let mut least: f64 = f64::INFINITY;
    for t in 0..trials {
        let id = trials + t;
        let mut rng = rec.rng(id);
        rec.ran();
        let Some(poly) = perturbed_case(&mut rng, cfg.lambda) else {
            rec.fail(id, "no compact perturbed configuration found", &[]);
            continue;
        };
        tested += 1;
        let rep = is_centrally_symmetric_polygon(&poly, band);
        least = least.min(rep.residual);
        if rep.verdict == Verdict::NotSymmetric {
            rejected += 1;
        } else {
            rec.note(format!("perturbed trial {t} not rejected (residual {:.3e})", rep.residual));
        }
    }
    let needed = (tested * 99).div_ceil(100);
    rec.check(2 * trials, rejected >= needed, "too few perturbed polygons rejected", &[
        ("rejected", rejected as f64),
        ("tested", tested as f64),
    ]);
    rec.metric("max_centre_error", worst_centre);
    rec.metric("max_meb_distance", worst_meb);
    rec.metric("perturbed_rejected", rejected as f64);
    rec.metric("perturbed_tested", tested as f64);
    rec.metric("min_perturbed_residual", finite_or(least, -1.0));
    rec.finish()
}
