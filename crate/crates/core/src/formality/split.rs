use super::minimal::{minimal_model, SullivanModel};
use crate::cdga::{tensor_product, CohomologyRing, Dga, Subcomplex};
use crate::contact::LieModel;
use crate::error::{Error, Result};
use crate::linalg::{same_span, span_rank};
use crate::scalar::Scalar;
use crate::verbitsky::{omega_eta, omega_splitting, CIRCLE_GENERATOR};

/// Comparison of the minimal models of `Ω_η` and `Ω₁` through degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSplitReport {
    pub max_degree: usize,
    pub eta_generators: Vec<usize>,
    pub one_generators: Vec<usize>,
    /// Generator counts of `ℳ(Ω₁) ⊗ ∧(η)` agree with those of `ℳ(Ω_η)`.
    pub counts_match: bool,
    pub eta_betti: Vec<usize>,
    pub tensor_betti: Vec<usize>,
    pub betti_match: bool,
    pub both_minimal: bool,
    /// `dη = 0` and `Ω^p_η = Ω^p_1 ⊕ η∧Ω^{p−1}_1` as subspaces in every degree.
    pub cochain_iso: bool,
}

impl TensorSplitReport {
    pub fn holds(&self) -> bool {
        self.counts_match && self.betti_match && self.both_minimal && self.cochain_iso
    }
}

/// Builds minimal models of `Ω_η` and `Ω₁` through degree `n` and compares
/// `ℳ(Ω₁) ⊗ ∧(η)` with `ℳ(Ω_η)` by generator counts and Betti numbers; also
/// checks the decomposition `Ω_η = Ω₁ ⊗ ∧(η)` directly on cochains.
pub fn model_tensor_split_check<F: Scalar>(m: &LieModel<F>, n: usize) -> Result<TensorSplitReport> {
    let oe = omega_eta(m)?;
    let splitting = omega_splitting(m, &oe)?;
    let eta = m.one_form(m.eta().ok_or(Error::MissingTensor("eta"))?);

    let model_eta = minimal_model(&oe, n)?;
    let model_one = minimal_model(&splitting.omega_one, n)?;
    let eta_generators = model_eta.generator_counts();
    let one_generators = model_one.generator_counts();
    let counts_match = (0..=n).all(|k| eta_generators[k] == one_generators[k] + usize::from(k == 1));

    let tensor = tensor_product(model_one.dga(), &Dga::exterior_line(CIRCLE_GENERATOR)?, Some(n + 2))?;
    let tensor_h = CohomologyRing::compute_through(&Subcomplex::full(&tensor), n);
    let tensor_betti: Vec<usize> = (0..=n).map(|p| tensor_h.dim(p)).collect();
    let eta_betti = model_eta.betti();
    let betti_match = tensor_betti == eta_betti;

    let mut cochain_iso = m.dga().differential(&eta)?.is_zero();
    let alg = m.algebra();
    for p in 0..=alg.max_degree() {
        let mut parts = splitting.omega_one.basis_matrix(p).columns();
        if p > 0 {
            for x in splitting.omega_one.basis_elements(p - 1) {
                parts.push(eta.wedge(&x)?.to_vector());
            }
        }
        let dim = alg.dim(p);
        cochain_iso &= span_rank(dim, &parts) == parts.len() && same_span(dim, &parts, &oe.basis_matrix(p).columns());
    }

    Ok(TensorSplitReport {
        max_degree: n,
        eta_generators,
        one_generators,
        counts_match,
        eta_betti,
        tensor_betti,
        betti_match,
        both_minimal: model_eta.is_minimal() && model_one.is_minimal(),
        cochain_iso,
    })
}

/// Minimal models of `Ω_η` and `Ω₁`, in that order.
pub fn split_models<F: Scalar>(m: &LieModel<F>, n: usize) -> Result<(SullivanModel<F>, SullivanModel<F>)> {
    let oe = omega_eta(m)?;
    let splitting = omega_splitting(m, &oe)?;
    Ok((minimal_model(&oe, n)?, minimal_model(&splitting.omega_one, n)?))
}
