use std::f64::consts::FRAC_PI_2;

use super::{ExperimentConfig, ExperimentReport, Recorder};
use crate::cycles::{finite_difference_curvature, turning_curvature, Cycle, Side};
use crate::space::{Geodesic, Point, SpaceKind};

pub(crate) const GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 3.0];
const STEP: f64 = 1e-4;
const TOL: f64 = 1e-5;

/// Curvature of the circle of radius `r` about the base point of S^2,
/// traversed counterclockwise; valid for every `r` in `(0, pi)`.
pub(crate) fn sphere_circle_curvature(r: f64, step: f64) -> f64 {
    let s = SpaceKind::S2;
    let ang = step / r.sin();
    let pts: Vec<Point> = [-ang, 0.0, ang].iter().map(|&t| Point::from_polar(s, r, t)).collect();
    turning_curvature(s, &pts[0], &pts[1], &pts[2], step)
}

pub(crate) fn run(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("curvature", cfg);
    let h = SpaceKind::H2;
    let mut worst: f64 = 0.0;
    for (i, &v) in GRID.iter().enumerate() {
        let centre = Point::from_polar(h, 0.3 * i as f64, 0.7 * i as f64);
        let base = Geodesic::from_ideal(0.2 * i as f64, 0.2 * i as f64 + 2.0).expect("distinct ends");
        let cases: Vec<(String, Cycle, f64)> = vec![
            (format!("H2 circle r={v}"), Cycle::circle(centre, v).expect("valid"), 1.0 / v.tanh()),
            (format!("H2 paracycle #{i}"), Cycle::paracycle(0.5 * i as f64, (0.2 * v).tanh()).expect("valid"), 1.0),
            (format!("H2 hypercycle l={v}"), Cycle::hypercycle(base.clone(), v, Side::Left).expect("valid"), v.tanh()),
            (format!("H2 geodesic #{i}"), Cycle::geodesic(base), 0.0),
        ];
        for (label, c, want) in cases {
            rec.ran();
            let got = finite_difference_curvature(&c, STEP).unwrap_or(f64::NAN);
            let err = (got - want).abs();
            worst = worst.max(err);
            rec.check(i, err < TOL, &label, &[("measured", got), ("expected", want)]);
        }
        rec.ran();
        let want = 1.0 / v.tan();
        let got = if v <= FRAC_PI_2 {
            let c = Cycle::circle(Point::from_polar(SpaceKind::S2, 0.4, 1.0 + i as f64), v).expect("valid");
            finite_difference_curvature(&c, STEP).unwrap_or(f64::NAN)
        } else {
            sphere_circle_curvature(v, STEP)
        };
        let err = (got - want).abs();
        worst = worst.max(err);
        rec.check(i, err < TOL, &format!("S2 circle r={v}"), &[("measured", got), ("expected", want)]);
    }
    rec.metric("max_abs_error", worst);
    rec.metric("step", STEP);
    rec.finish()
}
