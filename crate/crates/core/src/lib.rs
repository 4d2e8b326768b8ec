//! Cycles, hypercycle-bounded convex regions and central-symmetry detection
//! in the sphere, the Euclidean plane and the hyperbolic plane.

pub mod cycles;
pub mod error;
pub mod experiments;
pub mod regions;
pub mod symmetry;
pub mod space;
pub mod tolerance;

pub use error::{GeomError, Result};
pub use space::{
    common_perpendicular, distance, geodesic_point, Curvature, Geodesic, GeodesicSegment, Isometry, ModelChart,
    Point, SpaceKind,
};
pub use tolerance::Tolerances;
