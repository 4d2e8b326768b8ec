use std::f64::consts::{FRAC_PI_3, PI};

use super::{finite_or, ExperimentConfig, ExperimentReport, Recorder};
use crate::error::{invalid, GeomError, Result};
use crate::regions::{
    construct_two_component_region, intersect_regions, ArcPolygon, CoreSet, IntersectionResult, Region, RegionKind,
};
use crate::space::{distance, Geodesic, Isometry, SpaceKind};
use crate::symmetry::{is_centrally_symmetric_polygon, SymmetryReport, Verdict};

/// The pair of two-component regions with diagonal angles `alpha_k` and
/// `alpha_l`, the second turned by a right angle, so that their four
/// excluded caps cover the ideal circle.
pub fn construction_c_pair(alpha_k: f64, alpha_l: f64, lambda: f64) -> Result<(Region, Region)> {
    if alpha_k + alpha_l <= PI {
        return Err(GeomError::AnglesTooSmall(alpha_k + alpha_l));
    }
    let h = SpaceKind::H2;
    let k = construct_two_component_region(alpha_k, lambda, &Isometry::identity(h))?;
    let l = construct_two_component_region(alpha_l, lambda, &Isometry::rotation(h, 0.5 * PI))?;
    Ok((k, l))
}

/// Region with caps of width `alpha` removed at angles 0, 2pi/3, 4pi/3,
/// paired with its half-turn. Their intersection is a six-sided polygon
/// whose opposite sides belong to different regions.
pub fn six_arc_pair(alpha: f64, lambda: f64) -> Result<(Region, Region)> {
    if !(alpha > FRAC_PI_3 && alpha < 2.0 * FRAC_PI_3) {
        return invalid("cap width must lie in (pi/3, 2pi/3)");
    }
    let lines = (0..3)
        .map(|i| {
            let c = 2.0 * FRAC_PI_3 * i as f64;
            Geodesic::from_ideal(c - 0.5 * alpha, c + 0.5 * alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    let k = Region::padded(CoreSet::new(lines)?, lambda)?;
    let l = k.transformed(&Isometry::rotation(SpaceKind::H2, PI));
    Ok((k, l))
}

/// Interior angle at the crossing of two half-planes given by their lines.
pub fn inner_angle(g1: &Geodesic, g2: &Geodesic) -> f64 {
    let c = -g1.space().form(g1.normal(), g2.normal());
    c.clamp(-1.0, 1.0).acos()
}

fn lines(r: &Region) -> &[Geodesic] {
    match r.kind() {
        RegionKind::Padded { core, .. } => core.lines(),
        _ => &[],
    }
}

#[derive(Debug, Clone)]
pub struct PerturbationOutcome {
    pub angle_before: f64,
    pub angle_after: f64,
    pub polygon: ArcPolygon,
    pub report: SymmetryReport,
}

/// Translate the second region of the six-arc pair by `s` along the base
/// line of the first region's side at angle 0 (positive `s` runs against the
/// positive direction of that side) and measure the angle between the
/// second region's line at angle pi and the first region's line at 4pi/3.
pub fn perturb_six_arc(alpha: f64, lambda: f64, s: f64, band: f64) -> Result<PerturbationOutcome> {
    let (k, l) = six_arc_pair(alpha, lambda)?;
    let base = lines(&k)[0].clone();
    let moved = l.transformed(&Isometry::translation_along_geodesic(&base, -s));
    let angle_before = inner_angle(&lines(&l)[0], &lines(&k)[2]);
    let angle_after = inner_angle(&lines(&moved)[0], &lines(&k)[2]);
    let polygon = match intersect_regions(&k, &moved)? {
        IntersectionResult::Compact(p) => p,
        other => return invalid(format!("perturbed intersection is {}", other.label())),
    };
    let report = is_centrally_symmetric_polygon(&polygon, band);
    Ok(PerturbationOutcome { angle_before, angle_after, polygon, report })
}

pub(crate) fn run_construction(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("construction-c", cfg);
    let grid: Vec<f64> = (1..=9).map(|i| PI * i as f64 / 10.0).collect();
    let mut pairs: Vec<(f64, f64)> = grid.iter().flat_map(|&a| grid.iter().map(move |&b| (a, b))).collect();
    pairs.push((cfg.alpha_k, cfg.alpha_l));
    if let Some(n) = cfg.trials {
        pairs.truncate(n.max(1));
    }
    let (mut compact, mut refused) = (0usize, 0usize);
    for (t, &(ak, al)) in pairs.iter().enumerate() {
        rec.ran();
        let wit = [("alpha_k", ak), ("alpha_l", al)];
        let built = construction_c_pair(ak, al, cfg.lambda);
        if ak + al <= PI + 1e-12 {
            let ok = matches!(built, Err(GeomError::AnglesTooSmall(_)));
            refused += ok as usize;
            rec.check(t, ok, "constructor accepted angles with sum <= pi", &wit);
            continue;
        }
        let (k, l) = match built {
            Ok(p) => p,
            Err(e) => {
                rec.fail(t, format!("construction failed: {e}"), &wit);
                continue;
            }
        };
        match intersect_regions(&k, &l) {
            Ok(IntersectionResult::Compact(p)) => {
                compact += 1;
                let ok = p.len() == 4 && p.owners_alternate() && p.interleaving_holds();
                rec.check(t, ok, "expected four alternating, interleaved arcs", &[
                    ("alpha_k", ak),
                    ("alpha_l", al),
                    ("arcs", p.len() as f64),
                ]);
            }
            other => rec.fail(t, format!("intersection not compact: {other:?}"), &wit),
        }
    }
    rec.metric("compact", compact as f64);
    rec.metric("refused", refused as f64);
    rec.note("grid of diagonal angles k*pi/10, k = 1..9, plus the configured pair");
    rec.finish()
}

pub(crate) const SIX_ARC_ALPHA: f64 = 0.5 * PI;

pub(crate) fn run_perturbation(cfg: &ExperimentConfig) -> ExperimentReport {
    let mut rec = Recorder::new("perturbation", cfg);
    let band = cfg.band();
    let (alpha, lambda) = (SIX_ARC_ALPHA, cfg.lambda);
    let step = if cfg.step == 0.0 { 1e-2 } else { cfg.step.abs() };

    rec.ran();
    match perturb_six_arc(alpha, lambda, 0.0, band) {
        Ok(o) => {
            let centre_err = o
                .report
                .center
                .as_ref()
                .map_or(f64::INFINITY, |c| distance(c, &SpaceKind::H2.base_point()));
            rec.check(0, o.polygon.len() == 6 && o.polygon.owners_alternate(), "unperturbed polygon is not a hexagon", &[
                ("arcs", o.polygon.len() as f64),
            ]);
            rec.check(0, o.report.symmetric && centre_err < band, "unperturbed polygon not symmetric about the origin", &[
                ("residual", finite_or(o.report.residual, -1.0)),
            ]);
            rec.check(0, (o.angle_after - o.angle_before).abs() == 0.0, "zero step changed the angle", &[]);
        }
        Err(e) => rec.fail(0, format!("unperturbed configuration failed: {e}"), &[]),
    }

    let mut steps: Vec<f64> = vec![step, -step];
    steps.extend([1e-4, 1e-3, 3e-2, 9e-2].iter().filter(|&&s| s != step));
    for (i, &s) in steps.iter().enumerate() {
        let t = i + 1;
        rec.ran();
        match perturb_six_arc(alpha, lambda, s, band) {
            Ok(o) => {
                let delta = o.angle_after - o.angle_before;
                if s == step {
                    rec.metric("angle_increase", delta);
                    rec.metric("residual", finite_or(o.report.residual, -1.0));
                }
                let ok = if s > 0.0 { delta > 0.0 && (s < step || delta > 1e-8) } else { delta < 0.0 };
                rec.check(t, ok, "inner angle moved the wrong way", &[("s", s), ("delta", delta)]);
                rec.check(t, o.report.verdict == Verdict::NotSymmetric, "perturbed polygon not rejected", &[
                    ("s", s),
                    ("residual", finite_or(o.report.residual, -1.0)),
                ]);
            }
            Err(e) => rec.fail(t, format!("perturbed configuration failed: {e}"), &[("s", s)]),
        }
    }
    rec.note("six-sided configuration: caps of width pi/2 at 0, 2pi/3, 4pi/3 and the half-turned copy");
    rec.finish()
}
