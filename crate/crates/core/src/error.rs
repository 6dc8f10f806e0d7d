use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate radii: need 0 < r < R, got r = {r}, R = {big_r}")]
    DegenerateRadii { r: f64, big_r: f64 },

    #[error("no spacelike annulus spans the rings: |a - b| / (R - r) = {slope_bound} >= 1")]
    NotSpacelikeSolvable { slope_bound: f64 },

    #[error("radius must be positive, got t = {0}")]
    NonPositiveRadius(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("adaptive quadrature on [{a}, {b}] stopped at error estimate {error:e} after {intervals} intervals")]
    QuadratureFailure { a: f64, b: f64, error: f64, intervals: usize },

    #[error("spacelike condition violated: {0}")]
    SpacelikeViolation(String),

    #[error("orientation error: expected b >= a, got a = {a}, b = {b} (reflect heights first)")]
    OrientationError { a: f64, b: f64 },

    #[error("no sign change of the shooting map for |c| up to {limit:e}")]
    RootBracketFailure { limit: f64 },

    #[error("shooting residual {residual:e} exceeds tolerance {tol:e}")]
    RootToleranceNotReached { residual: f64, tol: f64 },

    #[error("profile is not monotone on [{t1}, {t2}]")]
    NotMonotone { t1: f64, t2: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
