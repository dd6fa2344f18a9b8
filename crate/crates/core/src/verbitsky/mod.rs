//! The operator `d_η`, the kernel subcomplex `Ω_η`, the splitting
//! `Ω_η = Ω₁ ⊕ Ω₂`, basic forms, the Lefschetz map and mapping-torus models.

mod eta;
mod identities;
mod lefschetz;
mod splitting;
mod theorem;
mod torus;

pub use eta::{build_d_eta, eta_operator, verify_lemma_d_eta, DEtaComparison, EtaOperator};
pub use identities::{operator_identities, IdentityReport};
pub use lefschetz::{lefschetz_map, verify_lefschetz_iso, LefschetzDegree, LefschetzMap, LefschetzReport};
pub use splitting::{
    basic_complex, kernel_subcomplex, omega_eta, omega_splitting, split, splitting_check, verify_lemma1,
    OmegaSplitting, SplitPair, SplittingReport,
};
pub use theorem::{verify_verbitsky, InducedDegree, VerbitskyReport, VerbitskyStatus};
pub use torus::{mapping_torus_model, MappingTorus, CIRCLE_GENERATOR};
