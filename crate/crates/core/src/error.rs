use core::fmt;

/// Errors produced by the model, solver and analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A state or parameter was NaN or infinite.
    NonFinite(&'static str),
    /// A parameter set violates a model constraint.
    InvalidParameter(&'static str),
    /// A requested equilibrium does not exist for these parameters.
    AbsentEquilibrium(&'static str),
    /// A closed form degenerates (division by a vanishing quantity).
    Degenerate(&'static str),
    /// The supplied point is not an equilibrium; carries the field residual.
    NotAnEquilibrium { residual: f64 },
    /// An operation precondition does not hold.
    Precondition(&'static str),
    /// A point lies outside the domain where the operation is defined.
    Domain(&'static str),
    /// Newton iteration failed to converge.
    NoConvergence { iterations: usize, residual: f64 },
    /// Newton converged to a root that fails an a-posteriori check.
    SpuriousRoot(&'static str),
    /// Adaptive step size fell below the minimum.
    StepSizeUnderflow { t: f64, h: f64 },
    /// The integrator exceeded its step budget.
    TooManySteps { t: f64 },
    /// A trajectory left the invariant region by more than the tolerance.
    InvarianceBreach { t: f64, violation: f64 },
    /// Not enough samples to classify a trajectory.
    InsufficientData { samples: usize, required: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "non-finite input: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::AbsentEquilibrium(what) => write!(f, "equilibrium absent: {what}"),
            Error::Degenerate(what) => write!(f, "degenerate formula: {what}"),
            Error::NotAnEquilibrium { residual } => {
                write!(f, "not an equilibrium (field residual {residual:e})")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::Domain(what) => write!(f, "outside domain: {what}"),
            Error::NoConvergence { iterations, residual } => write!(
                f,
                "Newton did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::SpuriousRoot(what) => write!(f, "spurious root: {what}"),
            Error::StepSizeUnderflow { t, h } => {
                write!(f, "step size underflow at t = {t} (h = {h:e}); system may be stiff")
            }
            Error::TooManySteps { t } => write!(f, "step budget exhausted at t = {t}"),
            Error::InvarianceBreach { t, violation } => write!(
                f,
                "trajectory left the invariant region at t = {t} (violation {violation:e})"
            ),
            Error::InsufficientData { samples, required } => write!(
                f,
                "tail window holds {samples} samples, at least {required} required"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
