//! Formality obstructions and bounded-degree Sullivan models.

mod massey;
mod minimal;
mod split;

pub use massey::{degree_one_massey, triple_massey, Class, FormalityVerdict, MasseyTriple, MasseyWitness};
pub use minimal::{minimal_model, SullivanModel};
pub use split::{model_tensor_split_check, split_models, TensorSplitReport};
