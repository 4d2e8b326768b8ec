use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::{finite_or, ExperimentConfig, ExperimentReport, Recorder};
use crate::cycles::horo_level;
use crate::regions::{intersect_regions, IntersectionResult, Region};
use crate::space::{distance, geodesic_point, ideal_vector, Geodesic, Point, SpaceKind};
use crate::symmetry::{is_centrally_symmetric_polygon, is_centrally_symmetric_region, Certificate, Verdict};

/// Paraball with ideal point `theta` whose boundary passes through `p`.
pub(crate) fn paraball_through(theta: f64, p: &Point) -> Region {
    let h = -SpaceKind::H2.form(p.coords(), &ideal_vector(theta));
    let offset = (1.0 - h) / (1.0 + h);
    debug_assert!((horo_level(offset) - h).abs() < 1e-9 * h.max(1.0));
    Region::paraball(theta, offset).expect("offset in range")
}

pub(crate) fn run(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("paraballs", cfg);
    let band = cfg.band();
    let trials = cfg.trials_or(50);
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let mut rng = rec.rng(t);
        let k = rng.gen_range(0.0..TAU);
        let l = if t == 0 { k + PI } else { k + rng.gen_range(0.3..TAU - 0.3) };
        let g = Geodesic::from_ideal(k, l).expect("distinct ideal points");
        // k' and l' on the line from k to l, with l' before k'
        let s_k: f64 = rng.gen_range(-1.5..1.5);
        let s_l = s_k - rng.gen_range(0.05..2.0);
        let (kp, lp) = (g.point_at(s_k), g.point_at(s_l));
        let (a, b) = (paraball_through(k, &kp), paraball_through(l, &lp));
        rec.ran();
        let poly = match intersect_regions(&a, &b) {
            Ok(IntersectionResult::Compact(p)) => p,
            other => {
                rec.fail(t, format!("paraball pair not compact: {other:?}"), &[("k", k), ("l", l)]);
                continue;
            }
        };
        let rep = is_centrally_symmetric_polygon(&poly, band);
        let mid = geodesic_point(&kp, &lp, 0.5).expect("hyperbolic");
        let err = rep.center.as_ref().map_or(f64::INFINITY, |c| distance(c, &mid));
        worst = worst.max(rep.residual);
        rec.check(t, rep.symmetric && err < band, "paraball pair not symmetric about the midpoint of k'l'", &[
            ("k", k),
            ("l", l),
            ("residual", finite_or(rep.residual, -1.0)),
            ("centre_error", finite_or(err, -1.0)),
        ]);

        // a paraball against itself
        rec.ran();
        let self_cut = intersect_regions(&a, &a);
        let one_point = matches!(&self_cut, Ok(IntersectionResult::Noncompact { ideal }) if ideal.points().len() == 1);
        let verdict = is_centrally_symmetric_region(&a, band);
        let certified = matches!(
            &verdict,
            Ok(r) if r.verdict == Verdict::NotSymmetric && r.certificate == Some(Certificate::OneIdealPoint)
        );
        rec.check(t, one_point && certified, "self-intersection of a paraball misclassified", &[("k", k)]);

        // a shared ideal point
        rec.ran();
        let c = paraball_through(k, &g.point_at(s_k + 0.5));
        let shared = matches!(intersect_regions(&a, &c), Ok(IntersectionResult::Noncompact { .. }));
        rec.check(t, shared, "shared ideal point should give a noncompact intersection", &[("k", k)]);
    }
    rec.metric("max_residual", worst);
    rec.finish()
}
