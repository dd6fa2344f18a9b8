//! Differential graded algebras: derivations, supercommutators, cohomology,
//! chain maps, tensor products and invariant subalgebras.

mod complex;
mod dga;
mod operator;

pub use complex::{invariant_subalgebra, ChainMap, CohomologyRing, InducedMap, PivotOrder, Subcomplex};
pub use dga::{tensor_product, AlgebraMap, Dga};
pub use operator::{
    check_leibniz, compose, first_difference, is_zero_operator, joint_kernel, operators_equal, supercommutator,
    supercommutator_matrices, Derivation, GradedOperator, LeibnizFailure, MatrixOperator,
};

/// Betti vector of `a ⊗ b` predicted by the Künneth formula.
pub fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
