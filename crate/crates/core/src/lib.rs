//! Exact computer algebra for the operator calculus of co-Kähler structures
//! on finite CDGA models.
//!
//! The core types are generic over an exact coefficient field
//! ([`scalar::Scalar`]); the aliases at the crate root fix it to arbitrary
//! precision rationals.

pub mod cdga;
pub mod contact;
pub mod error;
pub mod exterior;
pub mod formality;
pub mod linalg;
pub mod scalar;
pub mod verbitsky;

pub use error::{Error, Result};

/// Default coefficient field.
pub type Q = num_rational::BigRational;

pub type Element = exterior::Element<Q>;
pub type Matrix = linalg::Matrix<Q>;
pub type Derivation = cdga::Derivation<Q>;
pub type Dga = cdga::Dga<Q>;
pub type Subcomplex = cdga::Subcomplex<Q>;
pub type CohomologyRing = cdga::CohomologyRing<Q>;
pub type LieModel = contact::LieModel<Q>;
pub use exterior::{Generator, GradedAlgebra, Monomial};
