use std::f64::consts::{FRAC_PI_3, PI, TAU};

use ccgeom::cycles::{Cycle, Side};
use ccgeom::experiments::construction_c_pair;
use ccgeom::regions::{intersect_regions, ArcPolygon, CoreSet, IntersectionResult, Region};
use ccgeom::symmetry::{
    candidate_center_two_hypercycles, is_centrally_symmetric_polygon, is_centrally_symmetric_region, meb_cross_check,
    min_enclosing_ball, pairing_outcomes, CandidateCenter, Certificate, Verdict,
};
use ccgeom::{distance, Geodesic, GeomError, Isometry, ModelChart, Point, SpaceKind};
use nalgebra::Vector2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: SpaceKind = SpaceKind::H2;
const TOL: f64 = 1e-6;

fn three_cap(rng: &mut ChaCha8Rng, lambda: f64) -> Region {
    let start = rng.gen_range(0.0..TAU);
    let lines = (0..3)
        .map(|i| {
            let c = start + 2.0 * FRAC_PI_3 * i as f64 + rng.gen_range(-0.15..0.15);
            let w = rng.gen_range(FRAC_PI_3 + 0.2..2.0 * FRAC_PI_3 - 0.35);
            Geodesic::from_ideal(c - 0.5 * w, c + 0.5 * w).unwrap()
        })
        .collect();
    Region::padded(CoreSet::new(lines).unwrap(), lambda).unwrap()
}

fn compact(a: &Region, b: &Region) -> Option<ArcPolygon> {
    match intersect_regions(a, b) {
        Ok(IntersectionResult::Compact(p)) => Some(p),
        _ => None,
    }
}

// a region intersected with its own reflection through o
fn reflected_polygon(rng: &mut ChaCha8Rng) -> (ArcPolygon, Point) {
    loop {
        let o = Point::from_polar(H, rng.gen_range(0.0..0.25), rng.gen_range(0.0..TAU));
        let a = three_cap(rng, 0.5);
        let b = a.transformed(&Isometry::point_reflection(&o));
        if let Some(p) = compact(&a, &b) {
            return (p, o);
        }
    }
}

// nested grid search for the centre minimizing the largest distance
fn grid_meb(points: &[Point]) -> f64 {
    let space = points[0].space();
    let chart = ModelChart::collinear(space);
    let imgs: Vec<Vector2<f64>> = points.iter().map(|p| chart.to_chart(p).unwrap()).collect();
    let mut centre = imgs.iter().sum::<Vector2<f64>>() / imgs.len() as f64;
    let mut half = imgs.iter().map(|v| (v - centre).amax()).fold(0.0, f64::max);
    let radius_at = |v: Vector2<f64>| -> f64 {
        match chart.from_chart(space, v) {
            Ok(c) => points.iter().map(|p| distance(&c, p)).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    };
    let mut best = radius_at(centre);
    for _ in 0..60 {
        let mut next = centre;
        for i in -20..=20 {
            for j in -20..=20 {
                let v = centre + Vector2::new(i as f64, j as f64) * (half / 20.0);
                let r = radius_at(v);
                if r < best {
                    best = r;
                    next = v;
                }
            }
        }
        centre = next;
        half *= 0.6;
    }
    best
}

#[test]
fn enclosing_ball_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for space in [SpaceKind::H2, SpaceKind::E2, SpaceKind::S2] {
        for _ in 0..3 {
            let c = Isometry::random_with(space, &mut rng, 0.5);
            let pts: Vec<Point> = (0..20)
                .map(|_| c.apply(&Point::from_polar(space, rng.gen_range(0.0..1.0), rng.gen_range(0.0..TAU))))
                .collect();
            let (centre, radius) = min_enclosing_ball(&pts).unwrap();
            for p in &pts {
                assert!(distance(&centre, p) <= radius + 1e-9);
            }
            let support = pts.iter().filter(|p| (distance(&centre, p) - radius).abs() < 1e-8).count();
            assert!(support >= 2);
            assert!((radius - grid_meb(&pts)).abs() < 1e-6, "{space}");
        }
    }
}

#[test]
fn enclosing_ball_trivial_cases() {
    let p = Point::from_polar(H, 0.7, 1.0);
    let (c, r) = min_enclosing_ball(std::slice::from_ref(&p)).unwrap();
    assert!(distance(&c, &p) < 1e-12 && r == 0.0);
    let q = Point::from_polar(H, 1.2, 2.5);
    let (c, r) = min_enclosing_ball(&[p.clone(), q.clone()]).unwrap();
    assert!((r - 0.5 * distance(&p, &q)).abs() < 1e-12);
    assert!((distance(&c, &p) - distance(&c, &q)).abs() < 1e-12);
    let s = Point::from_polar(SpaceKind::S2, 0.5, 0.0);
    assert_eq!(min_enclosing_ball(&[s.clone(), s.antipode()]).unwrap_err(), GeomError::HemisphereViolation);
}

#[test]
fn hypercycle_candidate_trichotomy() {
    let g = Geodesic::from_ideal(0.3, 2.0).unwrap();
    let left = Cycle::hypercycle(g.clone(), 0.4, Side::Left).unwrap();
    let right = Cycle::hypercycle(g.clone(), 0.4, Side::Right).unwrap();
    match candidate_center_two_hypercycles(&left, &right).unwrap() {
        CandidateCenter::LineLocus(l) => assert!(l.same_line(&g, 1e-9)),
        other => panic!("{other:?}"),
    }
    // one shared ideal point
    let h = Cycle::hypercycle(Geodesic::from_ideal(4.0, 0.3).unwrap(), 0.4, Side::Right).unwrap();
    assert_eq!(candidate_center_two_hypercycles(&right, &h).unwrap(), CandidateCenter::None);
    let thin = Cycle::hypercycle(g, 0.2, Side::Right).unwrap();
    assert_eq!(candidate_center_two_hypercycles(&left, &thin).unwrap_err(), GeomError::NotCongruent);
}

#[test]
fn region_reports() {
    let c = Point::from_polar(H, 0.4, 1.0);
    let disk = is_centrally_symmetric_region(&Region::disk(c.clone(), 0.7).unwrap(), TOL).unwrap();
    assert!(disk.symmetric && distance(disk.center.as_ref().unwrap(), &c) < 1e-12);
    let para = is_centrally_symmetric_region(&Region::paraball(1.0, 0.1).unwrap(), TOL).unwrap();
    assert_eq!(para.verdict, Verdict::NotSymmetric);
    assert_eq!(para.certificate, Some(Certificate::OneIdealPoint));
    let strip = Region::padded(CoreSet::line(Geodesic::from_ideal(0.5, 3.0).unwrap()).unwrap(), 0.3).unwrap();
    let rep = is_centrally_symmetric_region(&strip, TOL).unwrap();
    assert!(rep.symmetric);
    assert!(matches!(rep.certificate, Some(Certificate::LineLocus(_))));
    let three = three_cap(&mut ChaCha8Rng::seed_from_u64(1), 0.3);
    assert!(matches!(is_centrally_symmetric_region(&three, TOL), Err(GeomError::Unsupported(_))));
}

#[test]
fn lens_is_symmetric_about_the_midpoint() {
    for space in [SpaceKind::S2, SpaceKind::E2, SpaceKind::H2] {
        let c1 = Point::from_polar(space, 0.6, 0.5);
        let c2 = Point::from_polar(space, 0.3, 2.5);
        let a = Region::disk(c1.clone(), 0.9).unwrap();
        let b = Region::disk(c2.clone(), 0.9).unwrap();
        let poly = compact(&a, &b).unwrap();
        let rep = is_centrally_symmetric_polygon(&poly, TOL);
        assert!(rep.symmetric);
        let m = ccgeom::geodesic_point(&c1, &c2, 0.5).unwrap();
        assert!(distance(rep.center.as_ref().unwrap(), &m) < 1e-8);
        assert!(meb_cross_check(&poly, &rep));
    }
}

// sampled Hausdorff distance between a polygon and its reflection
fn hausdorff_to_reflection(p: &ArcPolygon, o: &Point) -> f64 {
    let sigma = Isometry::point_reflection(o);
    let dense = p.samples(400);
    let coarse = p.samples(40);
    coarse
        .iter()
        .map(|x| {
            let y = sigma.apply(x);
            dense.iter().map(|z| distance(&y, z)).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[test]
fn reflected_polygons_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..30 {
        let (poly, o) = reflected_polygon(&mut rng);
        let rep = is_centrally_symmetric_polygon(&poly, TOL);
        assert!(rep.symmetric);
        let c = rep.center.clone().unwrap();
        assert!(distance(&c, &o) < 1e-8);
        assert!(rep.residual < 1e-9);
        assert!(meb_cross_check(&poly, &rep));
        // the sampled mismatch is bounded by the sample spacing
        let spacing = poly.samples(400).windows(2).map(|w| distance(&w[0], &w[1])).fold(0.0, f64::max);
        assert!(hausdorff_to_reflection(&poly, &c) <= spacing);
        // every pairing that verifies names the same centre
        let verified: Vec<Point> =
            pairing_outcomes(&poly).into_iter().filter(|o| o.residual < TOL).filter_map(|o| o.center).collect();
        assert!(!verified.is_empty());
        for v in &verified {
            assert!(distance(v, &c) < 1e-8);
        }
    }
}

#[test]
fn verdicts_respect_the_separation_band() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut rejected = 0;
    for _ in 0..40 {
        let o = Point::from_polar(H, rng.gen_range(0.0..0.25), rng.gen_range(0.0..TAU));
        let a = three_cap(&mut rng, 0.5);
        let kick = Isometry::perturbation(H, &mut rng, 1e-2);
        let b = a.transformed(&kick.compose(&Isometry::point_reflection(&o)));
        let Some(poly) = compact(&a, &b) else { continue };
        let rep = is_centrally_symmetric_polygon(&poly, TOL);
        let best = pairing_outcomes(&poly).iter().map(|o| o.residual).fold(f64::INFINITY, f64::min);
        match rep.verdict {
            Verdict::NotSymmetric => {
                rejected += 1;
                assert!(best > 10.0 * TOL || matches!(rep.certificate, Some(Certificate::OddIdealCount(_))));
            }
            Verdict::Indeterminate => assert!(best >= TOL && best <= 10.0 * TOL),
            Verdict::Symmetric => assert!(best < TOL),
        }
    }
    assert!(rejected > 30);
}

#[test]
fn reports_are_isometry_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..20 {
        let (poly, _) = reflected_polygon(&mut rng);
        let phi = Isometry::random_with(H, &mut rng, 1.5);
        let moved = poly.transformed(&phi).unwrap();
        let (r1, r2) = (is_centrally_symmetric_polygon(&poly, TOL), is_centrally_symmetric_polygon(&moved, TOL));
        assert!(r1.symmetric && r2.symmetric);
        let c1 = phi.apply(r1.center.as_ref().unwrap());
        assert!(distance(&c1, r2.center.as_ref().unwrap()) < 1e-8);
    }
    for space in [SpaceKind::S2, SpaceKind::E2] {
        let a = Region::disk(Point::from_polar(space, 0.5, 0.1), 0.8).unwrap();
        let b = Region::disk(Point::from_polar(space, 0.4, 2.9), 0.8).unwrap();
        let poly = compact(&a, &b).unwrap();
        let phi = Isometry::random_with(space, &mut rng, 1.0);
        let r1 = is_centrally_symmetric_polygon(&poly, TOL);
        let r2 = is_centrally_symmetric_polygon(&poly.transformed(&phi).unwrap(), TOL);
        assert!(distance(&phi.apply(r1.center.as_ref().unwrap()), r2.center.as_ref().unwrap()) < 1e-8);
    }
}

#[test]
fn odd_ideal_count_is_never_symmetric() {
    // paraball against a disk: one ideal point among the arcs' cycles
    let para = Region::paraball(0.0, -0.2).unwrap();
    let disk = Region::disk(H.base_point(), 0.5).unwrap();
    let poly = compact(&para, &disk).unwrap();
    assert_eq!(poly.ideal_point_count(), 1);
    let rep = is_centrally_symmetric_polygon(&poly, TOL);
    assert_eq!(rep.verdict, Verdict::NotSymmetric);
    assert_eq!(rep.certificate, Some(Certificate::OddIdealCount(1)));
    // two paraballs with distinct ideal points pair up
    let other = Region::paraball(PI, -0.2).unwrap();
    let poly = compact(&para, &other).unwrap();
    assert_eq!(poly.ideal_point_count(), 2);
    assert!(is_centrally_symmetric_polygon(&poly, TOL).symmetric);
}

#[test]
fn perturbed_construction_is_not_symmetric() {
    let (k, l) = construction_c_pair(2.0, 2.0, 0.5).unwrap();
    let poly = compact(&k, &l).unwrap();
    assert_eq!(poly.len(), 4);
    let rep = is_centrally_symmetric_polygon(&poly, TOL);
    assert!(rep.symmetric);
    assert!(meb_cross_check(&poly, &rep));
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut rejected = 0;
    for _ in 0..20 {
        let kick = Isometry::perturbation(H, &mut rng, 1e-2);
        let Some(p) = compact(&k, &l.transformed(&kick)) else { continue };
        if is_centrally_symmetric_polygon(&p, TOL).verdict == Verdict::NotSymmetric {
            rejected += 1;
        }
    }
    assert!(rejected >= 19);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn reflected_hypercycles_give_their_centre(a in 0.0..TAU, gap in 0.4..(TAU - 0.4), l in 0.05..1.0f64, r in 0.0..1.5f64, t in 0.0..TAU) {
        let g = Geodesic::from_ideal(a, a + gap).unwrap();
        let o = Point::from_polar(H, r, t);
        prop_assume!(g.signed_distance(&o).abs() > 0.05);
        let h1 = Cycle::hypercycle(g, l, Side::Right).unwrap();
        let h2 = h1.transformed(&Isometry::point_reflection(&o));
        prop_assume!(h1.signed_distance(&o) > 0.01 || h1.signed_distance(&o) < -0.01);
        match candidate_center_two_hypercycles(&h1, &h2) {
            Ok(CandidateCenter::UniquePoint(c)) => prop_assert!(distance(&c, &o) < 1e-8),
            Err(GeomError::CommonFinitePoint) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
