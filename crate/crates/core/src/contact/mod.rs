//! Left-invariant metric geometry on Lie algebras: almost-contact structures,
//! the Levi-Civita connection, Nijenhuis torsion and the co-Kähler
//! classification.

mod geometry;
mod model;
mod structure;

pub use geometry::{
    format_covector, format_vector, is_killing, is_parallel, killing_check, levi_civita, nijenhuis, normality_check,
    parallel_check, Check, Connection, Tensor, Witness,
};
pub use model::LieModel;
pub use structure::{classify, d_eta, fundamental_form, validate_almost_contact, working_omega, StructureVerdict};
