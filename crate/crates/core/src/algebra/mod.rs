//! Element arithmetic in standard, split and general-gamma Cayley-Dickson
//! algebras over the rationals.
//!
//! Two independent multiplication engines are provided. [`Element::mul_twist`]
//! expands the product over basis pairs using the closed-form twist, and
//! [`Element::mul_doubling`] follows the doubling construction
//! `(a, b)(c, d) = (ac + gamma conj(d) b, da + b conj(c))` down to the reals.
//! The doubling engine works for every `+-1` gamma vector; the twist engine only
//! for standard and split signatures.

mod element;
mod product;
mod signature;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use element::{basis_from_generators, Element, Engine, MAX_ELEMENT_LEVEL};
pub use product::{basis_mul, SignedIndex};
pub use signature::{AlgebraSignature, Gamma, SignatureKind};

pub(crate) use product::twist_parity_fn;

/// Exact rational coefficient.
pub type Scalar = Ratio<BigInt>;
