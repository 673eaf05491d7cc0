use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("imaginary part is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("integer matrix is not symplectic")]
    NotSymplectic,

    #[error("polarization type must satisfy d_i | d_(i+1) with d_i > 0")]
    InvalidPolarization,

    #[error("c*tau + d is numerically singular")]
    SingularMatrix,

    #[error("characteristic entries must be 0 or 1")]
    InvalidCharacteristic,

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("lattice sum needs radius {required}, above the cap {max_radius}")]
    RadiusOverflow { required: u32, max_radius: u32 },

    #[error("scalar t of a theta-group element must be nonzero")]
    ZeroScalar,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not divisible")]
    NotDivisible,

    #[error("malformed polynomial text at line {line}: {reason}")]
    PolyParse { line: usize, reason: String },

    #[error("projective point has all coordinates zero")]
    ZeroVector,

    #[error("fiber coordinate x must be nonzero")]
    ZeroFiberCoordinate,

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
