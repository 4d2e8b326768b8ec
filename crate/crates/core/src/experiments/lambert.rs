use rand::Rng;

use super::{ExperimentConfig, ExperimentReport, Recorder};
use crate::error::{invalid, Result};
use crate::space::{distance, Geodesic, Isometry, Point, SpaceKind};

/// Quadrangle with right angles at `a`, `b` and `c`.
#[derive(Debug, Clone)]
pub struct LambertQuadrangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
}

impl LambertQuadrangle {
    pub fn ab(&self) -> f64 {
        distance(&self.a, &self.b)
    }

    pub fn cd(&self) -> f64 {
        distance(&self.c, &self.d)
    }

    /// Largest deviation of the angles at `a`, `b`, `c` from a right angle.
    pub fn right_angle_error(&self) -> Result<f64> {
        let ab = Geodesic::through(&self.a, &self.b)?;
        let bc = Geodesic::through(&self.b, &self.c)?;
        let cd = Geodesic::through(&self.c, &self.d)?;
        let da = Geodesic::through(&self.d, &self.a)?;
        let half = std::f64::consts::FRAC_PI_2;
        Ok([ab.angle_with(&bc), bc.angle_with(&cd), da.angle_with(&ab)]
            .iter()
            .map(|t| (t - half).abs())
            .fold(0.0, f64::max))
    }
}

/// Lambert quadrangle with `|AB| = p`, `|BC| = q`, `A` at the base point and
/// `B` on the first axis. In H^2 it exists when `sinh p sinh q < 1`.
pub fn lambert_quadrangle(space: SpaceKind, p: f64, q: f64) -> Result<LambertQuadrangle> {
    if space.is_spherical() || !(p > 0.0 && q > 0.0) {
        return invalid("Lambert quadrangles need E2 or H2 and positive sides");
    }
    let a = space.base_point();
    let shift = Isometry::translation_x(space, p);
    let b = shift.apply(&a);
    let c = shift.apply(&Point::from_polar(space, q, std::f64::consts::FRAC_PI_2));
    let perp_a = Geodesic::through(&a, &Point::from_polar(space, 1.0, std::f64::consts::FRAC_PI_2))?;
    let bc = Geodesic::through(&b, &c)?;
    let perp_c = Geodesic::through_direction(&c, bc.normal())?;
    let d = perp_a.crossing(&perp_c).ok_or_else(|| crate::GeomError::Invalid("perpendiculars do not meet".into()))?;
    Ok(LambertQuadrangle { a, b, c, d })
}

pub(crate) fn run(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("lambert", cfg);
    let trials = cfg.trials_or(1000);
    let mut min_margin = f64::INFINITY;
    for t in 0..trials {
        let mut rng = rec.rng(t);
        let p: f64 = rng.gen_range(1e-3..2.0);
        let qmax = (1.0 / p.sinh()).asinh();
        let q: f64 = rng.gen_range(1e-3..(0.95 * qmax).max(2e-3));
        rec.ran();
        match lambert_quadrangle(SpaceKind::H2, p, q) {
            Ok(l) => {
                let margin = l.cd() - l.ab();
                min_margin = min_margin.min(margin);
                let angles = l.right_angle_error().unwrap_or(f64::INFINITY);
                rec.check(t, margin > 1e-10 && angles < 1e-9, "|AB| < |CD| fails", &[
                    ("p", p),
                    ("q", q),
                    ("margin", margin),
                    ("angle_error", angles),
                ]);
            }
            Err(e) => rec.fail(t, format!("construction failed: {e}"), &[("p", p), ("q", q)]),
        }
    }
    rec.metric("min_margin", min_margin);

    // flat control
    let mut flat_dev: f64 = 0.0;
    for k in 0..10 {
        let (p, q) = (0.3 + 0.2 * k as f64, 0.9 - 0.05 * k as f64);
        match lambert_quadrangle(SpaceKind::E2, p, q) {
            Ok(l) => flat_dev = flat_dev.max((l.cd() - l.ab()).abs()),
            Err(_) => flat_dev = f64::INFINITY,
        }
    }
    rec.check(trials, flat_dev < 1e-12, "flat control is not a rectangle", &[("deviation", flat_dev)]);
    rec.metric("flat_max_deviation", flat_dev);

    // collapsing height
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for k in 1..12 {
        let q = 0.5f64.powi(k);
        let gap = lambert_quadrangle(SpaceKind::H2, 0.8, q).map_or(f64::NAN, |l| l.cd() - l.ab());
        monotone &= gap < prev && gap >= 0.0;
        prev = gap;
    }
    rec.check(trials + 1, monotone && prev < 1e-6, "gap does not shrink with the height", &[("last_gap", prev)]);
    rec.finish()
}
