use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;

use super::{finite_or, ExperimentConfig, ExperimentReport, Recorder};
use crate::regions::{hull_union_disks, intersect_regions, IntersectionResult, Region};
use crate::space::{distance, geodesic_point, Isometry, Point, SpaceKind};
use crate::symmetry::{hull_symmetry, is_centrally_symmetric_polygon, meb_cross_check, Verdict};

/// A random point at distance `d` from `c`.
fn point_at_distance<R: Rng>(c: &Point, d: f64, rng: &mut R) -> Point {
    let theta = rng.gen_range(0.0..TAU);
    Isometry::translation_to(c).apply(&Point::from_polar(c.space(), d, theta))
}

fn radius_for<R: Rng>(space: SpaceKind, cfg: &ExperimentConfig, trial: usize, rng: &mut R) -> f64 {
    if space.is_spherical() {
        if trial % 10 == 0 {
            FRAC_PI_2
        } else {
            rng.gen_range(0.2..FRAC_PI_2)
        }
    } else {
        cfg.radius
    }
}

pub(crate) fn run_balls(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("balls", cfg);
    let band = cfg.band();
    let trials = cfg.trials_or(200);
    let mut worst_res: f64 = 0.0;
    let mut worst_centre: f64 = 0.0;
    let mut meb_fail = 0usize;
    let mut meb_skipped = 0usize;
    for (si, space) in cfg.spaces().into_iter().enumerate() {
        for t in 0..trials {
            let id = si * trials + t;
            let mut rng = rec.rng(id);
            let r = radius_for(space, cfg, t, &mut rng);
            let c1 = Isometry::random_with(space, &mut rng, 1.5).apply(&space.base_point());
            let reach = if space.is_spherical() { (2.0 * r).min(3.0) } else { 2.0 * r };
            // the first trial places both disks identically
            let d = if t == 0 { 0.0 } else { rng.gen_range(0.02..0.98) * reach };
            let c2 = point_at_distance(&c1, d, &mut rng);
            rec.ran();
            let (Ok(a), Ok(b)) = (Region::disk(c1.clone(), r), Region::disk(c2.clone(), r)) else {
                rec.fail(id, format!("{space}: invalid disk"), &[("r", r)]);
                continue;
            };
            let poly = match intersect_regions(&a, &b) {
                Ok(IntersectionResult::Compact(p)) => p,
                other => {
                    rec.fail(id, format!("{space}: intersection not compact: {other:?}"), &[("r", r), ("d", d)]);
                    continue;
                }
            };
            let rep = is_centrally_symmetric_polygon(&poly, band);
            let mid = geodesic_point(&c1, &c2, 0.5).expect("overlapping disks");
            let err = rep.center.as_ref().map_or(f64::INFINITY, |c| distance(c, &mid));
            worst_res = worst_res.max(rep.residual);
            worst_centre = worst_centre.max(err);
            rec.check(id, rep.verdict == Verdict::Symmetric && err < band, &format!("{space}: lens not symmetric"), &[
                ("r", r),
                ("d", d),
                ("residual", finite_or(rep.residual, -1.0)),
                ("centre_error", finite_or(err, -1.0)),
            ]);
            // hemispheres meet in lunes with antipodal vertices, which lie in no open hemisphere
            if space.is_spherical() && r >= FRAC_PI_2 - 1e-12 {
                meb_skipped += 1;
            } else if rep.symmetric && !meb_cross_check(&poly, &rep) {
                meb_fail += 1;
                rec.fail(id, format!("{space}: enclosing-ball centre disagrees"), &[("r", r), ("d", d)]);
            }
        }
    }
    rec.metric("max_residual", worst_res);
    rec.metric("max_centre_error", worst_centre);
    rec.metric("meb_disagreements", meb_fail as f64);
    rec.metric("meb_not_applicable", meb_skipped as f64);
    rec.finish()
}

pub(crate) fn run_theorem4(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("theorem4", cfg);
    let band = cfg.band();
    let trials = cfg.trials_or(20);
    let mut worst: f64 = 0.0;
    let mut best_asym = f64::INFINITY;
    for (si, space) in cfg.spaces().into_iter().enumerate() {
        for t in 0..trials {
            let id = si * trials + t;
            let mut rng = rec.rng(id);
            let pose = Isometry::random_with(space, &mut rng, 1.0);
            let c1 = pose.apply(&space.base_point());
            let r = if space.is_spherical() { rng.gen_range(0.2..1.2) } else { rng.gen_range(0.2..1.5) };
            // on the sphere the union must sit inside an open hemisphere
            let d_max = if space.is_spherical() { 1.5f64.min(2.0 * (FRAC_PI_2 - 0.1 - r)) } else { 1.5 };
            let d = if t == 0 { 0.0 } else { rng.gen_range(0.05..d_max.max(0.06)) };
            let c2 = point_at_distance(&c1, d, &mut rng);
            rec.ran();
            let hull = Region::disk(c1.clone(), r)
                .and_then(|a| Region::disk(c2.clone(), r).and_then(|b| hull_union_disks(&a, &b)));
            match hull {
                Ok(h) => {
                    let rep = hull_symmetry(&h, band);
                    let mid = geodesic_point(&c1, &c2, 0.5).expect("close centres");
                    let err = rep.center.as_ref().map_or(f64::INFINITY, |c| distance(c, &mid));
                    worst = worst.max(rep.residual);
                    rec.check(id, rep.symmetric && err < band, &format!("{space}: congruent hull not symmetric"), &[
                        ("r", r),
                        ("d", d),
                        ("residual", finite_or(rep.residual, -1.0)),
                    ]);
                }
                Err(e) => rec.fail(id, format!("{space}: hull failed: {e}"), &[("r", r), ("d", d)]),
            }

            // incongruent control
            rec.ran();
            let d = rng.gen_range(0.4..1.5);
            let c2 = point_at_distance(&c1, d, &mut rng);
            let hull = Region::disk(c1.clone(), 0.4)
                .and_then(|a| Region::disk(c2.clone(), 0.7).and_then(|b| hull_union_disks(&a, &b)));
            match hull {
                Ok(h) => {
                    let rep = hull_symmetry(&h, band);
                    best_asym = best_asym.min(rep.residual);
                    rec.check(id, rep.verdict == Verdict::NotSymmetric, &format!("{space}: radii 0.4/0.7 hull not rejected"), &[
                        ("d", d),
                        ("residual", finite_or(rep.residual, -1.0)),
                    ]);
                }
                Err(e) => rec.fail(id, format!("{space}: hull failed: {e}"), &[("d", d)]),
            }
        }
    }
    rec.metric("max_symmetric_residual", worst);
    rec.metric("min_asymmetric_residual", best_asym);
    rec.finish()
}
