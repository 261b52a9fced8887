//! Exact arithmetic for Cayley-Dickson algebras of dimension `2^n` and their
//! split variants.
//!
//! * [`twist`] computes the sign exponent of basis products, by closed form and
//!   by the doubling recursion.
//! * [`algebra`] multiplies dense rational elements with either engine and
//!   provides conjugation, trace and norm.
//! * [`analysis`] builds multiplication tables, runs the verification suites,
//!   searches for zero divisors and times the sign engines.

pub mod algebra;
pub mod analysis;
mod error;
pub mod twist;

pub use algebra::{basis_from_generators, basis_mul, AlgebraSignature, Element, Engine, Scalar, SignedIndex};
pub use error::{Error, Result};
pub use twist::{
    deg, ell, phi, sigma_closed, sigma_recursive, sigma_split_closed, sigma_split_recursive, BasisIndex, Bit,
    RecursiveTwist, Sign, TwistValue,
};
