//! Library error types.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("interval endpoints out of order")]
    BadInterval,
    #[error("degenerate degree for this operation")]
    DegenerateDegree,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SystemError {
    #[error("vector field is identically zero")]
    ZeroField,
    #[error("equilibria are not isolated (a resultant vanishes identically)")]
    NonIsolatedEquilibria,
    #[error("equilibrium validation failed at maximum refinement depth near ({0}, {1})")]
    ValidationFailed(f64, f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("tolerance {0} outside supported range [1e-14, 1e-3]")]
    ToleranceRange(f64),
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("state became non-finite at t = {0}")]
    NonFiniteState(f64),
    #[error("no section return within horizon {0}")]
    NoReturn(f64),
    #[error("flow is tangent to the section at the start point")]
    Tangency,
    #[error("start point parameter {0} outside the section range")]
    OffSection(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("displacement map has no sign change over the bracket [{0}, {1}]")]
    NoSignChange(f64, f64),
    #[error("cycle is numerically non-hyperbolic (|kappa T| = {0:.3e})")]
    NonHyperbolic(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BandError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("offset epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("weight constant K must be nonzero")]
    ZeroK,
    #[error("cycle sample has near-zero velocity (corrupt cycle data)")]
    ZeroVelocity,
    #[error("band weight failed the periodicity check (relative mismatch {0:.3e})")]
    NotPeriodic(f64),
    #[error("sample count must be odd and >= 3, got {0}")]
    BadSampleCount(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrigError {
    #[error("trigonometric interpolation needs an odd number of points, got {0}")]
    EvenPointCount(usize),
    #[error("input point is not finite")]
    NonFinitePoint,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("curve must have rational (certified) coefficients")]
    NotRational,
    #[error("no nonvanishing proof is available for this contact function")]
    NoProof,
    #[error("curve has zero signed area (degenerate)")]
    DegenerateCurve,
    #[error("certified grid refinement hit its cap; result inconclusive")]
    GridCap,
    #[error("annulus curves cross the flow the same way; no trapping or repelling region")]
    DirectionMismatch,
    #[error("could not certify that the inner curve lies strictly inside the outer curve")]
    ContainmentUnproved,
    #[error("equilibrium box could not be excluded from the annulus")]
    EquilibriumInAnnulus,
    #[error("winding number computation was inconclusive")]
    WindingInconclusive,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LienardError {
    #[error("Cherkas certificates require even n")]
    OddN,
    #[error("n must be at least 2")]
    SmallN,
    #[error("negativity test failed: R is not negative for all x")]
    NotNegative,
    #[error("invalid bisection bracket: need failure at the low end and success at the high end")]
    BadBracket,
}
