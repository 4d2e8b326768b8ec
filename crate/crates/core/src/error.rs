use thiserror::Error;

/// Errors raised by geometric constructions and queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("antipodal points have no unique connecting geodesic")]
    AntipodalPair,
    #[error("point lies outside the chart domain")]
    OutOfChartDomain,
    #[error("the lines intersect")]
    LinesIntersect,
    #[error("the lines are asymptotic (one common ideal point)")]
    LinesAsymptotic,
    #[error("finite-difference step {0} outside (1e-6, 1e-2)")]
    StepOutOfRange(f64),
    #[error("the cycles coincide")]
    CoincidentCycles,
    #[error("the regions touch but their interiors are disjoint")]
    DegenerateContact,
    #[error("an intersection vertex lies on a third boundary component")]
    DegenerateTangency,
    #[error("hypothesis ({clause}) violated: {reason}")]
    HypothesisViolated { clause: u8, reason: String },
    #[error("one disk contains the other")]
    NestedDisks,
    #[error("the hypercycles are not congruent")]
    NotCongruent,
    #[error("the hypercycles share a finite point")]
    CommonFinitePoint,
    #[error("points are not contained in an open hemisphere")]
    HemisphereViolation,
    #[error("alpha_K + alpha_L = {0} does not exceed pi")]
    AnglesTooSmall(f64),
    #[error("operands live in different spaces")]
    SpaceMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(GeomError::Invalid(msg.into()))
}
