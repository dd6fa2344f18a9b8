use super::eta::eta_operator;
use super::splitting::kernel_subcomplex;
use crate::cdga::{ChainMap, Subcomplex};
use crate::contact::{levi_civita, parallel_check, LieModel, Tensor, Witness};
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerbitskyStatus {
    /// `η` is parallel and the inclusion is a quasi-isomorphism.
    Confirmed,
    /// `η` is parallel but the inclusion is not a quasi-isomorphism.
    Violated,
    /// `η` is not parallel; the conclusion is reported only.
    HypothesisFails { conclusion_holds: bool },
}

impl VerbitskyStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Confirmed => "confirmed",
            Self::Violated => "violated",
            Self::HypothesisFails { conclusion_holds: true } => "hypothesis fails, conclusion holds",
            Self::HypothesisFails { conclusion_holds: false } => "hypothesis fails, conclusion fails",
        }
    }
}

/// `H^p(ker d_η) → H^p(Ω)` in one degree.
#[derive(Clone, Debug)]
pub struct InducedDegree<F: Scalar> {
    pub p: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Cocycles of `ker d_η` whose classes die in `H^p(Ω)`.
    pub kernel: Vec<Element<F>>,
}

#[derive(Clone, Debug)]
pub struct VerbitskyReport<F: Scalar> {
    pub eta_parallel: bool,
    pub parallel_witness: Option<Witness>,
    pub kernel_betti: Vec<usize>,
    pub full_betti: Vec<usize>,
    pub degrees: Vec<InducedDegree<F>>,
    pub status: VerbitskyStatus,
}

impl<F: Scalar> VerbitskyReport<F> {
    pub fn quasi_isomorphism(&self) -> bool {
        self.degrees.iter().all(|d| d.injective && d.surjective)
    }
}

/// Tests whether `ker(d_η) ↪ Ω` is a quasi-isomorphism, gated on `η` being
/// parallel.
pub fn verify_verbitsky<F: Scalar>(m: &LieModel<F>) -> Result<VerbitskyReport<F>> {
    let eta = m.eta().ok_or(Error::MissingTensor("eta"))?;
    let conn = levi_civita(m)?;
    let parallel = parallel_check(m, &conn, Tensor::Covector(eta));
    let op = eta_operator(m)?;
    let kernel = kernel_subcomplex(m, op.d_eta())?;
    let full = Subcomplex::full(m.dga());
    let inclusion = ChainMap::inclusion(&kernel, &full)?;
    let hk = kernel.cohomology();
    let hf = full.cohomology();
    let degrees: Vec<InducedDegree<F>> = (0..=m.algebra().max_degree())
        .map(|p| {
            let induced = inclusion.induced(p, &hk, &hf);
            InducedDegree {
                p,
                rank: induced.rank,
                injective: induced.injective,
                surjective: induced.surjective,
                kernel: induced.kernel.iter().map(|v| hk.class_element(p, v)).collect(),
            }
        })
        .collect();
    let quasi_iso = degrees.iter().all(|d| d.injective && d.surjective);
    let status = match (parallel.is_ok(), quasi_iso) {
        (true, true) => VerbitskyStatus::Confirmed,
        (true, false) => VerbitskyStatus::Violated,
        (false, holds) => VerbitskyStatus::HypothesisFails { conclusion_holds: holds },
    };
    Ok(VerbitskyReport {
        eta_parallel: parallel.is_ok(),
        parallel_witness: parallel.err(),
        kernel_betti: hk.betti(),
        full_betti: hf.betti(),
        degrees,
        status,
    })
}
