//! Error type shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Leading coefficient of a polynomial input is zero (or not finite).
    #[error("leading coefficient must be nonzero and finite")]
    BadLeadingCoefficient,

    /// A coefficient or root input contains a NaN or infinity.
    #[error("input value at position {index} is not finite")]
    NonFiniteInput { index: usize },

    /// An operation needed a higher degree (or more roots) than supplied.
    #[error("need degree (or root count) at least {min}, got {got}")]
    DegreeTooSmall { got: usize, min: usize },

    /// The iterative root finder exhausted its iteration budget.
    ///
    /// Carries the best iterate so callers can inspect how close it got.
    #[error("root finder did not converge in {iterations} iterations (worst residual {worst_residual:.3e})")]
    NonConvergence {
        iterations: usize,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
        worst_residual: f64,
    },

    /// A root set failed the separability certificate where one was required.
    #[error("root set is not certified separable (min pairwise distance {min_distance:.3e})")]
    NotSeparable { min_distance: f64 },

    /// An operation requiring exact integer coefficients got a float-backed polynomial.
    #[error("operation requires a polynomial with exact integer backing")]
    ExactBackingRequired,

    /// The roots could not be matched into conjugate pairs within tolerance,
    /// so no real signature exists.
    #[error("root multiset is not closed under conjugation; no signature")]
    ConjugationPairingFailed,

    /// A signature (t, s) was supplied that does not satisfy t + 2s = n.
    #[error("signature ({t},{s}) inconsistent with degree {n}")]
    SignatureMismatch { t: usize, s: usize, n: usize },

    /// A scalar parameter lies outside its documented range.
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    /// A family constructor could not realize its documented root count.
    #[error("family construction failed: {0}")]
    FamilyConstruction(String),

    /// Malformed textual input (JSON polynomial, root list, ...).
    #[error("parse error: {0}")]
    Parse(String),
}
