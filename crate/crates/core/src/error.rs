use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation at z = 0 of a Laurent polynomial with negative powers")]
    ZeroAtNegativePower,

    #[error("determinant is numerically zero at every sample point (degenerate matrix function)")]
    DegeneratePolynomial,

    #[error("eigensolver did not converge after {iterations} QR iterations")]
    EigensolverFailure { iterations: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("vector is not an eigenvector for the given eigenvalue (relative residual {residual:.3e})")]
    NotAnEigenpair { residual: f64 },

    #[error("shifting lambda = 0 is undefined for series with negative powers")]
    ZeroLambdaWithNegativePowers,

    #[error("double shift requires distinct eigenvalues, got lambda1 = lambda2")]
    CoincidentEigenvalues,

    #[error("(U, Lambda) is not an invariant pair (relative residual {residual:.3e})")]
    NotInvariant { residual: f64 },

    #[error("Lambda is singular but negative powers are present")]
    SingularLambda,

    #[error("vector is not in the kernel of the leading coefficient (relative residual {residual:.3e})")]
    NotInKernel { residual: f64 },

    #[error("target eigenvalue mu must be nonzero")]
    ZeroMu,

    #[error("eigenvalue lambda must be nonzero")]
    ZeroLambda,

    #[error("matrix polynomial is not *-palindromic (deviation {deviation:.3e})")]
    NotPalindromic { deviation: f64 },

    #[error("selected eigenvectors are numerically dependent (smallest singular value {sigma_min:.3e})")]
    DependentEigenvectors { sigma_min: f64 },

    #[error("selected eigenvalues must be finite and pairwise distinct")]
    DistinctnessViolated,

    #[error("singular pivot block in cyclic reduction at step {step}")]
    SingularPivot { step: usize },

    #[error("cyclic reduction did not converge in {maxit} iterations")]
    NoConvergence { maxit: usize },

    #[error("H0 is numerically singular (reciprocal condition {rcond:.3e})")]
    SingularH0 { rcond: f64 },

    #[error("shift requires |lambda| < 1 and |mu| < 1")]
    ShiftOutsideDisk,

    #[error("degenerate shift: (lambda - mu) v* G_- u = {value} is too close to 1")]
    DegenerateShift { value: num_complex::Complex64 },

    #[error("shifted matrix W~ is numerically singular")]
    SingularWtilde,

    #[error("double shift factorization requires |lambda1|, |mu1| < 1 and |lambda2|, |mu2| > 1")]
    ModulusConstraintViolated,

    #[error("G is not a solvent of minimal spectral radius (relative residual {residual:.3e}, spectral radius {radius:.6})")]
    NotASolvent { residual: f64, radius: f64 },

    #[error("no eigenvalue splitting: {0}")]
    SplittingFailure(String),

    #[error("eigenvector basis is ill conditioned (reciprocal condition {rcond:.3e})")]
    IllConditionedEigenbasis { rcond: f64 },

    #[error("no eigenvalues on one side of the unit circle")]
    NoSplitting,

    #[error("factorization is not canonical: spectral radius of {which} is {radius:.12}")]
    NotCanonical { which: &'static str, radius: f64 },

    #[error("{what} check failed: relative residual {residual:.3e} exceeds {tolerance:.1e}")]
    ResidualCheck {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("unsupported use of an infinite eigenvalue: {0}")]
    UnsupportedInfinity(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
