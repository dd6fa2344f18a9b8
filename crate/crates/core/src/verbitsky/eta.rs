use crate::cdga::{
    first_difference, is_zero_operator, supercommutator, supercommutator_matrices, Derivation, GradedOperator,
};
use crate::contact::LieModel;
use crate::error::{Error, Result};
use crate::exterior::{same_algebra, Element};
use crate::scalar::Scalar;

/// The operators attached to a form `η` of degree `k`: the contraction
/// `η̄(ν) = ι_{ν♯}η` on 1-forms, its derivation extension `ρ_η` of degree
/// `k − 2`, and `d_η = {d, ρ_η}` of degree `k − 1`.
#[derive(Clone, Debug)]
pub struct EtaOperator<F: Scalar> {
    form: Element<F>,
    bar: Vec<Element<F>>,
    rho: Derivation<F>,
    d_eta: Derivation<F>,
}

impl<F: Scalar> EtaOperator<F> {
    pub fn form(&self) -> &Element<F> {
        &self.form
    }

    /// `η̄(e^a)` for each dual basis vector.
    pub fn bar(&self) -> &[Element<F>] {
        &self.bar
    }

    pub fn rho(&self) -> &Derivation<F> {
        &self.rho
    }

    pub fn d_eta(&self) -> &Derivation<F> {
        &self.d_eta
    }
}

/// Builds `d_η` for a homogeneous form and checks `{d, d_η} = 0` on matrices.
pub fn build_d_eta<F: Scalar>(m: &LieModel<F>, form: &Element<F>) -> Result<EtaOperator<F>> {
    let alg = m.algebra();
    if !same_algebra(form.algebra(), alg) {
        return Err(Error::MismatchedAlgebras);
    }
    let k = form.degree() as i64;
    let mut bar = Vec::with_capacity(m.dim());
    let mut images = Vec::new();
    for a in 0..m.dim() {
        let sharp = m.sharp(&m.basis_vector(a));
        let image = m.contract(&sharp, form)?;
        if !image.is_zero() {
            images.push((a, image.clone()));
        }
        bar.push(image);
    }
    let rho = Derivation::extend(alg, k - 2, images)?;
    let d_eta = supercommutator(m.dga().d(), &rho)?;
    if d_eta.degree() != k - 1 {
        return Err(Error::DegreeMismatch { expected: k - 1, found: d_eta.degree() });
    }
    let check = supercommutator_matrices(m.dga().d(), &d_eta)?;
    if !is_zero_operator(&check) {
        return Err(Error::InvalidModel("{d, d_η} ≠ 0".into()));
    }
    Ok(EtaOperator { form: form.clone(), bar, rho, d_eta })
}

/// `d_η` for the model's 1-form `η`.
pub fn eta_operator<F: Scalar>(m: &LieModel<F>) -> Result<EtaOperator<F>> {
    let eta = m.eta().ok_or(Error::MissingTensor("eta"))?;
    build_d_eta(m, &m.one_form(eta))
}

/// Degreewise comparison of `d_η` with `L_ξ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DEtaComparison {
    pub degree0: bool,
    pub degree1: bool,
    /// First degree where the matrices differ, if any.
    pub first_difference: Option<usize>,
}

impl DEtaComparison {
    pub fn equal(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Compares `d_η = {d, ρ_η}` with `L_ξ = d ι_ξ + ι_ξ d` built from composed
/// matrices. Requires `η = g(ξ, ·)`.
pub fn verify_lemma_d_eta<F: Scalar>(m: &LieModel<F>) -> Result<DEtaComparison> {
    let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
    let eta = m.eta().ok_or(Error::MissingTensor("eta"))?;
    if m.flat(xi) != eta {
        return Err(Error::Refused("η is not the metric dual of ξ".into()));
    }
    let op = eta_operator(m)?;
    let lie = supercommutator_matrices(m.dga().d(), &m.contraction(xi))?;
    let agree = |p: usize| op.d_eta().matrix(p) == lie.matrix(p);
    Ok(DEtaComparison { degree0: agree(0), degree1: agree(1), first_difference: first_difference(op.d_eta(), &lie) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::check_leibniz;
    use crate::linalg::Matrix;
    use num_rational::Rational64;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn e(d: usize, i: usize) -> Vec<Q> {
        (0..d).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    fn heisenberg() -> LieModel<Q> {
        LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap().with_xi(e(3, 0)).unwrap().with_eta(e(3, 0)).unwrap()
    }

    #[test]
    fn flat_torus_has_zero_d_eta() {
        let m = LieModel::<Q>::abelian(3).unwrap().with_xi(e(3, 0)).unwrap().with_eta(e(3, 0)).unwrap();
        let op = eta_operator(&m).unwrap();
        assert!(is_zero_operator(op.d_eta()));
        assert_eq!(op.d_eta().degree(), 0);
        assert!(verify_lemma_d_eta(&m).unwrap().equal());
    }

    #[test]
    fn heisenberg_d_eta() {
        let m = heisenberg();
        let op = eta_operator(&m).unwrap();
        let alg = m.algebra();
        let e3 = Element::named(alg, "e3").unwrap();
        assert_eq!(op.d_eta().apply(&e3).unwrap(), Element::parse(alg, "-e2").unwrap());
        let cmp = verify_lemma_d_eta(&m).unwrap();
        assert!(cmp.degree0 && cmp.degree1 && cmp.equal());
        assert!(check_leibniz(op.d_eta()).is_ok());
    }

    #[test]
    fn higher_degree_forms() {
        let m = LieModel::<Q>::new(4, &[(0, 1, 2, q(1)), (0, 2, 3, q(1))]).unwrap();
        let alg = m.algebra();
        for text in ["e1*e2", "e2*e3 - e1*e4", "e1*e2*e3"] {
            let form = Element::parse(alg, text).unwrap();
            let op = build_d_eta(&m, &form).unwrap();
            assert_eq!(op.d_eta().degree(), form.degree() as i64 - 1);
            assert_eq!(op.rho().degree(), form.degree() as i64 - 2);
            assert!(check_leibniz(op.d_eta()).is_ok());
        }
    }

    #[test]
    fn nonstandard_metric_sharp() {
        // g = diag(2, 1, 1): (e1)♯ = X1 / 2, so η̄(e1) = 1/2 for η = e1.
        let mut g = Matrix::identity(3);
        g[(0, 0)] = q(2);
        let m = LieModel::<Q>::abelian(3).unwrap().with_metric(g).unwrap();
        let op = build_d_eta(&m, &m.one_form(&e(3, 0))).unwrap();
        assert_eq!(op.bar()[0], Element::scalar(m.algebra(), Q::new(1, 2)));
    }

    #[test]
    fn d_eta_comparison_requires_dual_pair() {
        let m = LieModel::<Q>::abelian(3).unwrap().with_xi(e(3, 0)).unwrap().with_eta(e(3, 1)).unwrap();
        assert!(matches!(verify_lemma_d_eta(&m), Err(Error::Refused(_))));
    }
}
