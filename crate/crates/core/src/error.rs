//! Error type shared across the crate.

use num_complex::Complex64;

/// Errors produced by mesh construction, assembly, and the eigenvalue search.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Model parameters violate an invariant (non-positive frequency, ...).
    #[error("invalid dielectric model: {0}")]
    InvalidModel(String),

    /// Run parameters violate an invariant (odd quadrature count, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A frequency was evaluated too close to a pole of the permittivity.
    #[error("frequency {omega} is within guard distance {guard} of pole {pole}")]
    PoleProximity {
        omega: Complex64,
        pole: Complex64,
        guard: f64,
    },

    /// Mesh geometry is unusable (bad radius, negative area, vertex out of cell).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// Opposite-boundary vertex sets cannot be paired for periodic identification.
    #[error("non-matching periodic boundary: {0}")]
    NonMatchingBoundary(String),

    /// Malformed mesh file.
    #[error("parse error: {0}")]
    ParseError(String),

    /// The linear system was detected as numerically singular.
    #[error("singular system at omega = {omega}")]
    SingularSystem { omega: Complex64 },

    /// The search region violates the pole guard of the operator function.
    #[error("search region (center {center}, half side {half_side}) is not admissible")]
    RegionNotAdmissible { center: Complex64, half_side: f64 },

    /// Subdivision hit the level cap with indicators still above threshold.
    #[error("subdivision budget exceeded at level {level} with {live} live squares")]
    BudgetExceeded { level: u32, live: usize },

    /// Eigenvalue tracking across refinement levels found no unique partner.
    #[error("ambiguous eigenvalue tracking: {0}")]
    AmbiguousTracking(String),
}

pub type Result<T> = std::result::Result<T, Error>;
