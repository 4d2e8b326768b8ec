use std::f64::consts::{FRAC_PI_2, PI};

use ccgeom::{common_perpendicular, distance, geodesic_point, Geodesic, GeomError, Isometry, ModelChart, Point, SpaceKind};
use nalgebra::{DVector, Vector2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PLANES: [SpaceKind; 3] = [SpaceKind::S2, SpaceKind::E2, SpaceKind::H2];
const ALL: [SpaceKind; 6] = [SpaceKind::S2, SpaceKind::E2, SpaceKind::H2, SpaceKind::S3, SpaceKind::E3, SpaceKind::H3];

fn random_point(space: SpaceKind, rng: &mut ChaCha8Rng, rmax: f64) -> Point {
    let r = rng.gen_range(0.0..rmax);
    let dir: Vec<f64> = loop {
        let v: Vec<f64> = (0..space.dimension()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break v.iter().map(|x| x / n).collect();
        }
    };
    Point::from_direction(space, r, &dir).unwrap()
}

fn simpson(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

// Klein chords are geodesics, so the Klein line element integrated along the
// straight chord gives the distance.
fn klein_length(a: Vector2<f64>, b: Vector2<f64>) -> f64 {
    let d = b - a;
    simpson(
        |t| {
            let x = a + d * t;
            let w = 1.0 - x.norm_squared();
            ((d.norm_squared() * w + x.dot(&d).powi(2)) / (w * w)).sqrt()
        },
        2000,
    )
}

#[test]
fn poincare_diameter_quadrature_gives_ln3() {
    let chart = ModelChart::Poincare;
    let o = chart.from_chart(SpaceKind::H2, Vector2::new(0.0, 0.0)).unwrap();
    let p = chart.from_chart(SpaceKind::H2, Vector2::new(0.5, 0.0)).unwrap();
    let quad = simpson(|t| 2.0 * 0.5 / (1.0 - (0.5 * t) * (0.5 * t)), 1000);
    assert!((quad - 3f64.ln()).abs() < 1e-10);
    assert!((distance(&o, &p) - quad).abs() < 1e-9);
}

#[test]
fn line_element_matches_ambient_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let p = random_point(SpaceKind::H2, &mut rng, 2.5);
        let q = random_point(SpaceKind::H2, &mut rng, 2.5);
        let a = ModelChart::Klein.to_chart(&p).unwrap();
        let b = ModelChart::Klein.to_chart(&q).unwrap();
        assert!((klein_length(a, b) - distance(&p, &q)).abs() < 1e-6);
    }
}

#[test]
fn trivial_distances() {
    let p = Point::from_polar(SpaceKind::H2, 0.8, 1.0);
    assert_eq!(distance(&p, &p), 0.0);
    let e1 = Point::new(SpaceKind::S3, DVector::from_vec(vec![0.0, 1.0, 0.0, 0.0])).unwrap();
    let e3 = Point::new(SpaceKind::S3, DVector::from_vec(vec![0.0, 0.0, 0.0, 1.0])).unwrap();
    assert!((distance(&e1, &e3) - FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn isometries_preserve_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for space in ALL {
        for _ in 0..1000 {
            let iso = Isometry::random_with(space, &mut rng, 2.0);
            let p = random_point(space, &mut rng, 1.5);
            let q = random_point(space, &mut rng, 1.5);
            let err = (distance(&iso.apply(&p), &iso.apply(&q)) - distance(&p, &q)).abs();
            assert!(err < 1e-10, "{space}: {err}");
        }
    }
}

#[test]
fn random_isometries_are_form_preserving_and_bounded() {
    for space in ALL {
        for seed in 0..1000 {
            let iso = Isometry::random(space, seed, 0.7);
            assert!(iso.is_form_preserving(1e-10));
            assert!((iso.determinant() - 1.0).abs() < 1e-9);
            let o = space.base_point();
            assert!(distance(&o, &iso.apply(&o)) <= 0.7 + 1e-12);
        }
        let a = Isometry::random(space, 5, 1.0);
        assert_eq!(a, Isometry::random(space, 5, 1.0));
        let fixed = Isometry::random(space, 5, 0.0);
        assert!(distance(&space.base_point(), &fixed.apply(&space.base_point())) < 1e-12);
    }
}

#[test]
fn group_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for space in ALL {
        for _ in 0..200 {
            let g = Isometry::random_with(space, &mut rng, 1.5);
            let h = Isometry::random_with(space, &mut rng, 1.5);
            let p = random_point(space, &mut rng, 1.0);
            let lhs = g.compose(&h).apply(&p);
            let rhs = g.apply(&h.apply(&p));
            assert!(distance(&lhs, &rhs) < 1e-10);
            assert!(distance(&g.inverse().apply(&g.apply(&p)), &p) < 1e-10);
            assert!(distance(&Isometry::identity(space).apply(&p), &p) < 1e-15);
        }
    }
}

#[test]
fn chart_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cases = [
        (SpaceKind::H2, ModelChart::Klein, 2.5),
        (SpaceKind::H2, ModelChart::Poincare, 2.5),
        (SpaceKind::S2, ModelChart::Gnomonic, 1.5),
        (SpaceKind::S2, ModelChart::Stereographic, 3.0),
        (SpaceKind::E2, ModelChart::Identity, 10.0),
    ];
    for (space, chart, rmax) in cases {
        for _ in 0..1000 {
            let p = random_point(space, &mut rng, rmax);
            let back = chart.from_chart(space, chart.to_chart(&p).unwrap()).unwrap();
            let scale = p.coords().amax().max(1.0);
            assert!((back.coords() - p.coords()).amax() < 1e-12 * scale, "{chart:?}");
            // and the other way round, starting from chart coordinates
            let v = chart.to_chart(&p).unwrap();
            let w = chart.to_chart(&chart.from_chart(space, v).unwrap()).unwrap();
            assert!((w - v).amax() < 1e-12 * v.amax().max(1.0), "{chart:?}");
        }
    }
}

#[test]
fn collinear_charts_send_geodesics_to_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (space, chart) in [(SpaceKind::H2, ModelChart::Klein), (SpaceKind::S2, ModelChart::Gnomonic)] {
        for _ in 0..300 {
            let p = random_point(space, &mut rng, 1.2);
            let q = random_point(space, &mut rng, 1.2);
            if distance(&p, &q) < 0.05 {
                continue;
            }
            let pts: Vec<Vector2<f64>> = [0.0, 0.3, 0.7, 1.0]
                .iter()
                .map(|&t| chart.to_chart(&geodesic_point(&p, &q, t).unwrap()).unwrap())
                .collect();
            let d = pts[3] - pts[0];
            for x in &pts[1..3] {
                let e = x - pts[0];
                assert!((d.perp(&e)).abs() / d.norm() < 1e-10);
            }
        }
    }
}

#[test]
fn geodesic_point_divides_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for space in PLANES {
        for _ in 0..300 {
            let p = random_point(space, &mut rng, 1.4);
            let q = random_point(space, &mut rng, 1.4);
            let d = distance(&p, &q);
            let t = rng.gen_range(0.0..1.0);
            let m = geodesic_point(&p, &q, t).unwrap();
            assert!((distance(&p, &m) - t * d).abs() < 1e-10);
            assert!((distance(&m, &q) - (1.0 - t) * d).abs() < 1e-10);
        }
    }
    let p = Point::from_polar(SpaceKind::S2, 0.4, 0.3);
    assert_eq!(geodesic_point(&p, &p.antipode(), 0.5), Err(GeomError::AntipodalPair));
}

#[test]
fn point_reflection_is_an_involution_with_isolated_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for space in ALL {
        for _ in 0..100 {
            let c = random_point(space, &mut rng, 1.2);
            let s = Isometry::point_reflection(&c);
            assert!(distance(&s.apply(&c), &c) < 1e-12);
            assert!(s.compose(&s).max_difference(&Isometry::identity(space)) < 1e-10);
            let x = random_point(space, &mut rng, 1.2);
            let moved = distance(&s.apply(&x), &x);
            let near = if space.is_spherical() { distance(&x, &c).min(distance(&x, &c.antipode())) } else { distance(&x, &c) };
            if near > 1e-3 {
                assert!(moved > 1e-4);
            }
        }
    }
    let c = Point::from_polar(SpaceKind::S2, 1.1, 2.0);
    let a = Isometry::point_reflection(&c);
    let b = Isometry::point_reflection(&c.antipode());
    assert!(a.max_difference(&b) < 1e-10);
}

#[test]
fn translations_slide_along_their_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for space in PLANES {
        for _ in 0..200 {
            let p = random_point(space, &mut rng, 1.0);
            let q = random_point(space, &mut rng, 1.0);
            let Ok(g) = Geodesic::through(&p, &q) else { continue };
            let s = rng.gen_range(-1.0..1.0);
            let t = Isometry::translation_along_geodesic(&g, s);
            assert!(Isometry::translation_along_geodesic(&g, 0.0).max_difference(&Isometry::identity(space)) < 1e-12);
            let on = g.point_at(0.3);
            let moved = t.apply(&on);
            assert!(g.contains(&moved, 1e-10));
            assert!((distance(&on, &moved) - s.abs()).abs() < 1e-10);
            // the line is invariant as an oriented set
            assert!(g.transformed(&t).same_line(&g, 1e-9));
            let x = random_point(space, &mut rng, 1.0);
            let d0 = g.signed_distance(&x);
            for k in 1..5 {
                let y = Isometry::translation_along_geodesic(&g, s * k as f64).apply(&x);
                assert!((g.signed_distance(&y) - d0).abs() < 1e-10);
            }
        }
    }
}

fn brute_line_distance(g1: &Geodesic, g2: &Geodesic) -> f64 {
    // coarse grid then nested refinement on both arclength parameters
    let (mut c1, mut c2, mut h) = (0.0, 0.0, 4.0);
    let mut best = f64::INFINITY;
    for _ in 0..40 {
        let (mut b1, mut b2) = (c1, c2);
        for i in -10..=10 {
            for j in -10..=10 {
                let s1 = c1 + h * i as f64 / 10.0;
                let s2 = c2 + h * j as f64 / 10.0;
                let d = distance(&g1.point_at(s1), &g2.point_at(s2));
                if d < best {
                    best = d;
                    b1 = s1;
                    b2 = s2;
                }
            }
        }
        c1 = b1;
        c2 = b2;
        h *= 0.3;
    }
    best
}

#[test]
fn common_perpendicular_realizes_line_distance() {
    let k = |x: f64, y: f64| ModelChart::Klein.from_chart(SpaceKind::H2, Vector2::new(x, y)).unwrap();
    let g1 = Geodesic::through(&k(-0.5, -0.3), &k(-0.5, 0.4)).unwrap();
    let g2 = Geodesic::through(&k(0.5, 0.6), &k(0.5, -0.1)).unwrap();
    let seg = common_perpendicular(&g1, &g2).unwrap();
    let (a, b) = (ModelChart::Klein.to_chart(&seg.a).unwrap(), ModelChart::Klein.to_chart(&seg.b).unwrap());
    assert!(a[1].abs() < 1e-9 && b[1].abs() < 1e-9);
    assert!((seg.length - brute_line_distance(&g1, &g2)).abs() < 1e-8);

    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut checked = 0;
    while checked < 30 {
        let u: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        let (Ok(g1), Ok(g2)) = (Geodesic::from_ideal(u[0], u[1]), Geodesic::from_ideal(u[2], u[3])) else { continue };
        let Ok(seg) = common_perpendicular(&g1, &g2) else { continue };
        assert!((seg.length - brute_line_distance(&g1, &g2)).abs() < 1e-7);
        let perp = Geodesic::through(&seg.a, &seg.b).unwrap();
        assert!((perp.angle_with(&g1) - FRAC_PI_2).abs() < 1e-8);
        assert!((perp.angle_with(&g2) - FRAC_PI_2).abs() < 1e-8);
        checked += 1;
    }
    let g1 = Geodesic::from_ideal(0.0, 2.0).unwrap();
    let g2 = Geodesic::from_ideal(2.0, 4.0).unwrap();
    assert_eq!(common_perpendicular(&g1, &g2).unwrap_err(), GeomError::LinesAsymptotic);
    let g3 = Geodesic::from_ideal(1.0, 3.0).unwrap();
    assert_eq!(common_perpendicular(&g1, &g3).unwrap_err(), GeomError::LinesIntersect);
}

fn polar_strategy() -> impl Strategy<Value = (usize, f64, f64, f64, f64, f64, f64)> {
    (0usize..3, 0.0..1.5f64, 0.0..6.3f64, 0.0..1.5f64, 0.0..6.3f64, 0.0..1.5f64, 0.0..6.3f64)
}

proptest! {
    #[test]
    fn distance_is_a_metric((k, r1, t1, r2, t2, r3, t3) in polar_strategy()) {
        let space = PLANES[k];
        let p = Point::from_polar(space, r1, t1);
        let q = Point::from_polar(space, r2, t2);
        let x = Point::from_polar(space, r3, t3);
        let (pq, qp) = (distance(&p, &q), distance(&q, &p));
        prop_assert!((pq - qp).abs() < 1e-12);
        prop_assert!(pq >= 0.0);
        prop_assert!(pq <= distance(&p, &x) + distance(&x, &q) + 1e-10);
        if space.is_spherical() {
            prop_assert!(pq <= PI + 1e-12);
        }
    }

    #[test]
    fn polar_coordinates_measure_distance_from_base((k, r, t, _, _, _, _) in polar_strategy()) {
        let space = PLANES[k];
        let p = Point::from_polar(space, r, t);
        prop_assert!((distance(&space.base_point(), &p) - r).abs() < 1e-10);
        prop_assert!(p.constraint_residual() < 1e-12);
    }
}
