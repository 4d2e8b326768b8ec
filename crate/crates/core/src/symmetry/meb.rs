use nalgebra::DVector;
use std::f64::consts::FRAC_PI_2;

use crate::error::{invalid, GeomError, Result};
use crate::space::{cross3, distance, geodesic_point, Point};

const SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    fn holds(&self, p: &Point) -> bool {
        distance(&self.center, p) <= self.radius + SLACK * (1.0 + self.radius)
    }
}

fn ball2(p: &Point, q: &Point) -> Ball {
    let center = geodesic_point(p, q, 0.5).expect("points within a hemisphere");
    Ball { radius: 0.5 * distance(p, q), center }
}

fn circumball(p: &Point, q: &Point, r: &Point) -> Option<Ball> {
    let space = p.space();
    let center = if space.is_flat() {
        let (a, b, c) = (p.coords(), q.coords(), r.coords());
        let (bx, by) = (b[0] - a[0], b[1] - a[1]);
        let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
        let d = 2.0 * (bx * cy - by * cx);
        if d.abs() < 1e-300 {
            return None;
        }
        let (b2, c2) = (bx * bx + by * by, cx * cx + cy * cy);
        let ux = (cy * b2 - by * c2) / d;
        let uy = (bx * c2 - cx * b2) / d;
        Point::new(space, DVector::from_vec(vec![a[0] + ux, a[1] + uy])).ok()?
    } else {
        let u = p.coords() - q.coords();
        let v = p.coords() - r.coords();
        let mut c = space.gram(&cross3(&u, &v));
        if space.is_hyperbolic() {
            let q = -space.form(&c, &c);
            if !(q > 0.0) {
                return None;
            }
            if c[0] < 0.0 {
                c = -c;
            }
            c /= q.sqrt();
        } else {
            let n = c.norm();
            if !(n > 0.0) {
                return None;
            }
            if c.dot(&(p.coords() + q.coords() + r.coords())) < 0.0 {
                c = -c;
            }
            c /= n;
        }
        Point::new(space, c).ok()?
    };
    let radius = distance(&center, p).max(distance(&center, q)).max(distance(&center, r));
    Some(Ball { center, radius })
}

/// Smallest ball with `p` and `q` on its boundary containing `r`, falling
/// back to the smallest ball holding all three.
fn ball3(p: &Point, q: &Point, r: &Point) -> Ball {
    if let Some(b) = circumball(p, q, r) {
        return b;
    }
    [ball2(p, q), ball2(p, r), ball2(q, r)]
        .into_iter()
        .max_by(|a, b| a.radius.partial_cmp(&b.radius).unwrap())
        .unwrap()
}

/// Smallest closed ball containing the points (H^2, E^2, or S^2 inside an
/// open hemisphere).
pub fn min_enclosing_ball(points: &[Point]) -> Result<(Point, f64)> {
    let Some(first) = points.first() else {
        return invalid("no points");
    };
    let space = first.space();
    if points.iter().any(|p| p.space() != space) {
        return Err(GeomError::SpaceMismatch);
    }
    space.require_dim2("enclosing ball")?;
    if space.is_spherical() {
        let sum: DVector<f64> = points.iter().fold(DVector::zeros(3), |acc, p| acc + p.coords());
        if sum.norm() < 1e-12 {
            return Err(GeomError::HemisphereViolation);
        }
        for p in points.iter().skip(1) {
            if (p.coords() + first.coords()).norm() < 1e-12 {
                return Err(GeomError::HemisphereViolation);
            }
        }
    }
    let mut ball = Ball { center: first.clone(), radius: 0.0 };
    for i in 1..points.len() {
        if ball.holds(&points[i]) {
            continue;
        }
        ball = Ball { center: points[i].clone(), radius: 0.0 };
        for j in 0..i {
            if ball.holds(&points[j]) {
                continue;
            }
            ball = ball2(&points[i], &points[j]);
            for k in 0..j {
                if !ball.holds(&points[k]) {
                    ball = ball3(&points[i], &points[j], &points[k]);
                }
            }
        }
    }
    if space.is_spherical() && ball.radius >= FRAC_PI_2 {
        return Err(GeomError::HemisphereViolation);
    }
    Ok((ball.center, ball.radius))
}
