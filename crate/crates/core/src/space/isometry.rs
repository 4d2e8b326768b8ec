use nalgebra::{DMatrix, DVector, Rotation3, Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Geodesic, Point, SpaceKind};
use crate::error::{invalid, Result};

/// A congruence of a constant-curvature space.
///
/// Curved spaces use a linear map of the ambient space preserving the form.
/// Flat spaces use a homogeneous `(d+1) x (d+1)` affine matrix whose last
/// row is `(0, .., 0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    space: SpaceKind,
    matrix: DMatrix<f64>,
}

impl Isometry {
    fn size(space: SpaceKind) -> usize {
        space.dimension() + 1
    }

    pub fn identity(space: SpaceKind) -> Self {
        let n = Self::size(space);
        Self { space, matrix: DMatrix::identity(n, n) }
    }

    /// Wrap a matrix after checking that it preserves the space's form.
    pub fn from_matrix(space: SpaceKind, matrix: DMatrix<f64>) -> Result<Self> {
        let n = Self::size(space);
        if matrix.nrows() != n || matrix.ncols() != n {
            return invalid(format!("{space} isometry needs a {n}x{n} matrix"));
        }
        let iso = Self { space, matrix };
        if !iso.is_form_preserving(1e-10) {
            return invalid("matrix does not preserve the form");
        }
        Ok(iso)
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        debug_assert_eq!(self.space, other.space);
        Isometry { space: self.space, matrix: &self.matrix * &other.matrix }
    }

    pub fn inverse(&self) -> Isometry {
        let d = self.space.dimension();
        let matrix = if self.space.is_flat() {
            let rot = self.matrix.view((0, 0), (d, d)).transpose();
            let t = self.matrix.view((0, d), (d, 1)).into_owned();
            let nt = -(&rot * t);
            let mut m = DMatrix::identity(d + 1, d + 1);
            m.view_mut((0, 0), (d, d)).copy_from(&rot);
            m.view_mut((0, d), (d, 1)).copy_from(&nt);
            m
        } else {
            let mut m = self.matrix.transpose();
            if self.space.is_hyperbolic() {
                // J M^T J
                for i in 1..=d {
                    m[(0, i)] = -m[(0, i)];
                    m[(i, 0)] = -m[(i, 0)];
                }
            }
            m
        };
        Isometry { space: self.space, matrix }
    }

    pub fn apply(&self, p: &Point) -> Point {
        debug_assert_eq!(self.space, p.space());
        let x = p.coords();
        if self.space.is_flat() {
            let d = self.space.dimension();
            let y = self.matrix.view((0, 0), (d, d)) * x + self.matrix.view((0, d), (d, 1));
            Point::from_raw(self.space, y.column(0).into_owned())
        } else {
            Point::from_raw(self.space, &self.matrix * x)
        }
    }

    /// Action on ambient vectors (normals, tangents). Flat spaces use the
    /// linear part only.
    pub fn apply_vector(&self, v: &DVector<f64>) -> DVector<f64> {
        if self.space.is_flat() {
            let d = self.space.dimension();
            self.matrix.view((0, 0), (d, d)) * v
        } else {
            &self.matrix * v
        }
    }

    /// Translation part of a flat isometry.
    pub fn translation_part(&self) -> DVector<f64> {
        let d = self.space.dimension();
        if self.space.is_flat() {
            self.matrix.view((0, d), (d, 1)).column(0).into_owned()
        } else {
            DVector::zeros(d)
        }
    }

    /// Rotation by `angle` about the base point, in the plane of the first
    /// two tangent directions.
    pub fn rotation(space: SpaceKind, angle: f64) -> Self {
        let mut iso = Self::identity(space);
        let (s, c) = angle.sin_cos();
        let (i, j) = if space.is_curved() { (1, 2) } else { (0, 1) };
        iso.matrix[(i, i)] = c;
        iso.matrix[(i, j)] = -s;
        iso.matrix[(j, i)] = s;
        iso.matrix[(j, j)] = c;
        iso
    }

    /// Translation by `s` along the geodesic through the base point in the
    /// direction of the first tangent axis.
    pub fn translation_x(space: SpaceKind, s: f64) -> Self {
        let mut iso = Self::identity(space);
        let m = &mut iso.matrix;
        match space.curvature() {
            super::Curvature::Negative => {
                let (sh, ch) = (s.sinh(), s.cosh());
                m[(0, 0)] = ch;
                m[(0, 1)] = sh;
                m[(1, 0)] = sh;
                m[(1, 1)] = ch;
            }
            super::Curvature::Positive => {
                let (sn, cs) = s.sin_cos();
                m[(0, 0)] = cs;
                m[(0, 1)] = -sn;
                m[(1, 0)] = sn;
                m[(1, 1)] = cs;
            }
            super::Curvature::Zero => {
                m[(0, space.dimension())] = s;
            }
        }
        iso
    }

    /// The transvection along the geodesic from the base point to `c`,
    /// mapping the base point onto `c`.
    pub fn translation_to(c: &Point) -> Self {
        let space = c.space();
        let n = Self::size(space);
        let x = c.coords();
        if space.is_flat() {
            let mut m = DMatrix::identity(n, n);
            for i in 0..space.dimension() {
                m[(i, n - 1)] = x[i];
            }
            return Self { space, matrix: m };
        }
        let c0 = x[0];
        let v = x.rows(1, n - 1).into_owned();
        let mut m = DMatrix::zeros(n, n);
        m[(0, 0)] = c0;
        let sign = if space.is_hyperbolic() { 1.0 } else { -1.0 };
        for i in 1..n {
            m[(i, 0)] = v[i - 1];
            m[(0, i)] = sign * v[i - 1];
        }
        // For the antipode of the base point on S^d any half-turn will do.
        if space.is_spherical() && 1.0 + c0 < 1e-14 {
            let mut m = DMatrix::identity(n, n);
            m[(0, 0)] = -1.0;
            m[(1, 1)] = -1.0;
            return Self { space, matrix: m };
        }
        let block = DMatrix::identity(n - 1, n - 1) + sign * (&v * v.transpose()) / (1.0 + c0);
        m.view_mut((1, 1), (n - 1, n - 1)).copy_from(&block);
        Self { space, matrix: m }
    }

    /// The central symmetry through `c`.
    ///
    /// In dimension 3 this map reverses orientation.
    pub fn point_reflection(c: &Point) -> Self {
        let space = c.space();
        let n = Self::size(space);
        let x = c.coords();
        if space.is_flat() {
            let mut m = -DMatrix::identity(n, n);
            m[(n - 1, n - 1)] = 1.0;
            for i in 0..space.dimension() {
                m[(i, n - 1)] = 2.0 * x[i];
            }
            return Self { space, matrix: m };
        }
        let jx = space.gram(x);
        let q = space.form(x, x);
        let m = -DMatrix::identity(n, n) + (x * jx.transpose()) * (2.0 / q);
        Self { space, matrix: m }
    }

    /// Maps the standard geodesic (through the base point along the first
    /// axis, left normal along the second axis) onto `g`, sending the base
    /// point to the foot of the base point on `g`.
    pub fn frame_of_geodesic(g: &Geodesic) -> Self {
        let space = g.space();
        let o = g.foot();
        let t = g.direction_at(&o);
        if space.is_flat() {
            let mut m = DMatrix::identity(3, 3);
            m[(0, 0)] = t[0];
            m[(1, 0)] = t[1];
            m[(0, 1)] = -t[1];
            m[(1, 1)] = t[0];
            m[(0, 2)] = o.coords()[0];
            m[(1, 2)] = o.coords()[1];
            return Self { space, matrix: m };
        }
        let mut m = DMatrix::zeros(3, 3);
        m.set_column(0, o.coords());
        m.set_column(1, &t);
        m.set_column(2, g.normal());
        Self { space, matrix: m }
    }

    /// Translation by arclength `s` along `g` in its direction of travel.
    /// On S^2 this is the rotation about the poles of the great circle.
    pub fn translation_along_geodesic(g: &Geodesic, s: f64) -> Self {
        let f = Self::frame_of_geodesic(g);
        f.compose(&Self::translation_x(g.space(), s)).compose(&f.inverse())
    }

    /// Reflection across the geodesic `g` (orientation reversing).
    pub fn line_reflection(g: &Geodesic) -> Self {
        let f = Self::frame_of_geodesic(g);
        let mut flip = Self::identity(g.space());
        let k = if g.space().is_curved() { 2 } else { 1 };
        flip.matrix[(k, k)] = -1.0;
        f.compose(&flip).compose(&f.inverse())
    }

    /// A seeded random congruence moving the base point at most `radius_bound`.
    pub fn random(space: SpaceKind, seed: u64, radius_bound: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(space, &mut rng, radius_bound)
    }

    pub fn random_with<R: Rng + ?Sized>(space: SpaceKind, rng: &mut R, radius_bound: f64) -> Self {
        let r = if radius_bound > 0.0 { rng.gen_range(0.0..=radius_bound) } else { 0.0 };
        let rot = random_rotation(space, rng, std::f64::consts::PI);
        let dir = random_direction(space.dimension(), rng);
        let c = Point::from_direction(space, r, &dir).expect("unit direction");
        Self::translation_to(&c).compose(&rot)
    }

    /// A congruence within `magnitude` of the identity: base point displaced
    /// by at most `magnitude` and rotation angle at most `magnitude`.
    pub fn perturbation<R: Rng + ?Sized>(space: SpaceKind, rng: &mut R, magnitude: f64) -> Self {
        let rot = random_rotation(space, rng, magnitude);
        let r = rng.gen_range(0.0..=magnitude);
        let dir = random_direction(space.dimension(), rng);
        let c = Point::from_direction(space, r, &dir).expect("unit direction");
        Self::translation_to(&c).compose(&rot)
    }

    /// Max entry of `M^T J M - J` (curved) or of `R^T R - I` (flat).
    pub fn form_residual(&self) -> f64 {
        let d = self.space.dimension();
        if self.space.is_flat() {
            let r = self.matrix.view((0, 0), (d, d));
            let e = r.transpose() * r - DMatrix::identity(d, d);
            let tail = (0..d).map(|i| self.matrix[(d, i)].abs()).fold(0.0, f64::max);
            return e.amax().max(tail).max((self.matrix[(d, d)] - 1.0).abs());
        }
        let mut j = DMatrix::identity(d + 1, d + 1);
        if self.space.is_hyperbolic() {
            j[(0, 0)] = -1.0;
        }
        (self.matrix.transpose() * &j * &self.matrix - j).amax()
    }

    pub fn is_form_preserving(&self, tol: f64) -> bool {
        let ok = self.form_residual() < tol;
        // time orientation: the upper sheet must map to itself
        ok && (!self.space.is_hyperbolic() || self.matrix[(0, 0)] > 0.0)
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    /// Largest entrywise difference of the two matrices.
    pub fn max_difference(&self, other: &Isometry) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

fn random_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    if dim == 2 {
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        return vec![t.cos(), t.sin()];
    }
    // uniform on S^2 by the Archimedes projection
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    vec![rho * t.cos(), rho * t.sin(), z]
}

fn random_rotation<R: Rng + ?Sized>(space: SpaceKind, rng: &mut R, max_angle: f64) -> Isometry {
    let angle = if max_angle > 0.0 { rng.gen_range(-max_angle..=max_angle) } else { 0.0 };
    if space.dimension() == 2 {
        return Isometry::rotation(space, angle);
    }
    let a = random_direction(3, rng);
    let axis = Unit::new_normalize(Vector3::new(a[0], a[1], a[2]));
    let r = Rotation3::from_axis_angle(&axis, angle);
    let mut iso = Isometry::identity(space);
    let off = if space.is_curved() { 1 } else { 0 };
    for i in 0..3 {
        for j in 0..3 {
            iso.matrix[(i + off, j + off)] = r[(i, j)];
        }
    }
    iso
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::distance;

    const SPACES: [SpaceKind; 6] =
        [SpaceKind::H2, SpaceKind::S2, SpaceKind::E2, SpaceKind::H3, SpaceKind::S3, SpaceKind::E3];

    #[test]
    fn translation_to_hits_target() {
        for space in SPACES {
            let c = Point::from_direction(space, 0.9, &vec![0.3; space.dimension()]).unwrap();
            let t = Isometry::translation_to(&c);
            let img = t.apply(&space.base_point());
            assert!(distance(&img, &c) < 1e-12, "{space}");
            assert!(t.is_form_preserving(1e-12), "{space}");
            assert!((t.determinant() - 1.0).abs() < 1e-10, "{space}");
        }
    }

    #[test]
    fn inverse_undoes() {
        for space in SPACES {
            let g = Isometry::random(space, 7, 2.0);
            let p = Point::from_direction(space, 0.4, &vec![1.0; space.dimension()]).unwrap();
            let q = g.inverse().apply(&g.apply(&p));
            assert!(distance(&p, &q) < 1e-10, "{space}");
        }
    }

    #[test]
    fn point_reflection_fixes_center() {
        for space in SPACES {
            let c = Point::from_direction(space, 1.1, &vec![-0.2; space.dimension()]).unwrap();
            let s = Isometry::point_reflection(&c);
            assert!(distance(&s.apply(&c), &c) < 1e-12);
            assert!(s.compose(&s).max_difference(&Isometry::identity(space)) < 1e-10);
        }
    }

    #[test]
    fn sphere_reflections_through_antipodes_agree() {
        let c = Point::from_polar(SpaceKind::S2, 0.8, 0.3);
        let a = Isometry::point_reflection(&c);
        let b = Isometry::point_reflection(&c.antipode());
        assert!(a.max_difference(&b) < 1e-12);
    }

    #[test]
    fn random_is_deterministic() {
        let a = Isometry::random(SpaceKind::H2, 99, 1.0);
        let b = Isometry::random(SpaceKind::H2, 99, 1.0);
        assert_eq!(a, b);
        let r = Isometry::random(SpaceKind::H2, 3, 0.0);
        assert!(distance(&r.apply(&SpaceKind::H2.base_point()), &SpaceKind::H2.base_point()) < 1e-14);
    }

    #[test]
    fn from_matrix_rejects_shear() {
        let mut m = DMatrix::identity(3, 3);
        m[(1, 2)] = 0.5;
        assert!(Isometry::from_matrix(SpaceKind::H2, m).is_err());
    }
}
