//! Root separation and Mahler measure toolkit.
//!
//! Given a polynomial (by coefficients or by exact roots), this crate
//! computes the minimal root distance `sep`, the Mahler measure, and the
//! discriminant, then checks the measured values against a family of
//! separation bounds:
//!
//! * a discriminant-based lower bound on sep,
//! * the trivial upper bound 2M,
//! * a discriminant upper bound n^{1/(n-1)} M^{2/n},
//! * the sqrt(n) upper bound min(2, 34/sqrt(n)) M^e with the exponent
//!   depending on whether a minimal-modulus root is nonreal,
//! * signature-specific sharper upper bounds for low degrees and
//!   totally real polynomials.
//!
//! Supporting machinery includes a disk-packing count inequality, the
//! Gauss circle sandwich, factorial and central-binomial estimates, and
//! the extremal families that show how tight each bound is.
//!
//! Roots are found with an Aberth-Ehrlich solver whose residuals feed a
//! certification step: bounds are only evaluated on root sets whose
//! pairwise distances exceed the numerical uncertainty. Integer
//! polynomials additionally get an exact discriminant through a
//! subresultant remainder sequence over big integers, giving a second,
//! independently computed route to the discriminant-based bounds.

pub mod bounds;
mod dd;
pub mod error;
pub mod families;
pub mod measures;
pub mod poly;
pub mod rootfind;

pub use error::{Error, Result};
pub use poly::{Polynomial, RootSet};
