use serde::{Deserialize, Serialize};

/// Every numerical threshold used by the library, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Bilinear-form preservation of isometry matrices.
    pub form: f64,
    /// Generic geometric agreement (angles, incidences).
    pub geometry: f64,
    /// Maximum reflection residual accepted as central symmetry.
    pub symmetry: f64,
    /// Half-width of the band treated as "on the boundary" by membership tests.
    pub boundary_band: f64,
    /// Squared-discriminant threshold below which two cycles are tangent.
    pub tangency: f64,
    /// Allowed drift off the constraint surface before renormalizing.
    pub drift: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            form: 1e-10,
            geometry: 1e-8,
            symmetry: 1e-6,
            boundary_band: 1e-9,
            tangency: 1e-12,
            drift: 1e-12,
        }
    }
}

impl Tolerances {
    /// Same record with a different symmetry threshold.
    pub fn with_symmetry(mut self, tol: f64) -> Self {
        self.symmetry = tol;
        self
    }
}
