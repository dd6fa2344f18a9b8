//! Free graded-commutative algebras with exact coefficients.

mod algebra;
mod element;

pub use algebra::{Generator, GradedAlgebra, Monomial, Sign};
pub(crate) use element::same_algebra;
pub use element::Element;
