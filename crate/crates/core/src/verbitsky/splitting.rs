use crate::cdga::{compose, joint_kernel, GradedOperator, InducedMap, MatrixOperator, Subcomplex};
use crate::contact::LieModel;
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::linalg::{same_span, span_rank, Matrix};
use crate::scalar::Scalar;

/// Kernel of a graded operator as a subcomplex of the Chevalley–Eilenberg
/// complex; fails if the kernel is not closed under `d`.
pub fn kernel_subcomplex<F: Scalar>(m: &LieModel<F>, op: &dyn GradedOperator<F>) -> Result<Subcomplex<F>> {
    Subcomplex::kernel_of(m.dga(), op)
}

/// `Ω_η = ker L_ξ`.
pub fn omega_eta<F: Scalar>(m: &LieModel<F>) -> Result<Subcomplex<F>> {
    let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
    kernel_subcomplex(m, &m.lie_derivative(xi))
}

/// The decomposition `Ω_η = Ω₁ ⊕ Ω₂` with `Ω₁ = {ι_ξ α = 0}` and
/// `Ω₂ = {η∧α = 0}`, both inside `Ω_η`.
#[derive(Clone, Debug)]
pub struct OmegaSplitting<F: Scalar> {
    pub omega_eta: Subcomplex<F>,
    pub omega_one: Subcomplex<F>,
    pub omega_two: Subcomplex<F>,
}

/// Computes both summands inside `omega_eta` and verifies that they are
/// subcomplexes, that the sum is direct and exhausts `Ω^p_η` for `p > 0`, and
/// that `Ω^p_2 = η∧Ω^{p−1}_1`.
pub fn omega_splitting<F: Scalar>(m: &LieModel<F>, omega_eta: &Subcomplex<F>) -> Result<OmegaSplitting<F>> {
    let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
    let eta = m.one_form(m.eta().ok_or(Error::MissingTensor("eta"))?);
    let iota = m.contraction(xi);
    let wedge = MatrixOperator::left_multiplication(&eta);
    let alg = m.algebra();
    let top = alg.max_degree();

    let restricted_kernel = |op: &dyn GradedOperator<F>, p: usize| -> Vec<Vec<F>> {
        let basis = omega_eta.basis_matrix(p);
        let mat = op.matrix(p);
        let coords =
            if mat.rows() == 0 { Matrix::<F>::identity(basis.cols()).columns() } else { mat.mul(basis).kernel() };
        coords.iter().map(|c| basis.mul_vec(c)).collect()
    };
    let ones: Vec<Vec<Vec<F>>> = (0..=top).map(|p| restricted_kernel(&iota, p)).collect();
    let twos: Vec<Vec<Vec<F>>> = (0..=top).map(|p| restricted_kernel(&wedge, p)).collect();

    let closed = |what: &str, vectors: Vec<Vec<Vec<F>>>| {
        Subcomplex::new(m.dga(), vectors).map_err(|e| match e {
            Error::NotClosed { degree } => {
                Error::SplittingFailed(format!("{what} is not closed under d in degree {degree}"))
            }
            other => other,
        })
    };
    let omega_one = closed("Ω₁", ones.clone())?;
    let omega_two = closed("Ω₂", twos.clone())?;

    for p in 1..=top {
        let dim = alg.dim(p);
        let mut all = ones[p].clone();
        all.extend(twos[p].iter().cloned());
        let (a, b) = (omega_one.dim(p), omega_two.dim(p));
        if span_rank(dim, &all) != a + b {
            return Err(Error::SplittingFailed(format!("Ω₁ ∩ Ω₂ ≠ 0 in degree {p}")));
        }
        if a + b != omega_eta.dim(p) {
            return Err(Error::SplittingFailed(format!(
                "dim Ω₁ + dim Ω₂ = {} ≠ dim Ω_η = {} in degree {p}",
                a + b,
                omega_eta.dim(p)
            )));
        }
        let lifted: Vec<Vec<F>> = omega_one
            .basis_elements(p - 1)
            .iter()
            .map(|x| eta.wedge(x).map(|y| y.to_vector()))
            .collect::<Result<_>>()?;
        if !same_span(dim, &lifted, &twos[p]) {
            return Err(Error::SplittingFailed(format!("Ω₂ ≠ η∧Ω₁ in degree {p}")));
        }
    }
    Ok(OmegaSplitting { omega_eta: omega_eta.clone(), omega_one, omega_two })
}

/// The tautological decomposition `α = (α − η∧ι_ξα) + η∧ι_ξα`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPair<F: Scalar> {
    pub first: Element<F>,
    pub second: Element<F>,
}

pub fn split<F: Scalar>(m: &LieModel<F>, alpha: &Element<F>) -> Result<SplitPair<F>> {
    let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
    let eta = m.one_form(m.eta().ok_or(Error::MissingTensor("eta"))?);
    let second = eta.wedge(&m.contract(xi, alpha)?)?;
    let second = if second.is_zero() { Element::zero(m.algebra(), alpha.degree()) } else { second };
    let first = alpha.sub(&second)?;
    Ok(SplitPair { first, second })
}

/// Basic forms of the foliation spanned by `xi`: `ι_ξ α = 0 = ι_ξ dα`.
pub fn basic_complex<F: Scalar>(m: &LieModel<F>, xi: &[F]) -> Result<Subcomplex<F>> {
    let iota = m.contraction(xi);
    let iota_d = compose(&iota, m.dga().d())?;
    let vectors = (0..=m.algebra().max_degree()).map(|p| joint_kernel(&[&iota, &iota_d], p)).collect();
    Subcomplex::new(m.dga(), vectors)
}

/// Whether `Ω₁` coincides with the basic complex degreewise.
pub fn verify_lemma1<F: Scalar>(m: &LieModel<F>, splitting: &OmegaSplitting<F>) -> Result<bool> {
    let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
    Ok(splitting.omega_one.same_span(&basic_complex(m, xi)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub betti_eta: Vec<usize>,
    pub betti_one: Vec<usize>,
    /// `dim H^p_η = dim H^p_1 + dim H^{p−1}_1` for every `p`.
    pub dims_add: bool,
    /// Whether `(x, y) ↦ x + [η]∧y` is an isomorphism in each degree.
    pub map_iso: Vec<bool>,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.dims_add && self.map_iso.iter().all(|&b| b)
    }
}

/// Checks `H^p_η = H^p_1 ⊕ [η]∧H^{p−1}_1` through dimensions and the explicit
/// map on representatives.
pub fn splitting_check<F: Scalar>(m: &LieModel<F>, splitting: &OmegaSplitting<F>) -> Result<SplittingReport> {
    let eta = m.one_form(m.eta().ok_or(Error::MissingTensor("eta"))?);
    let h_eta = splitting.omega_eta.cohomology();
    let h_one = splitting.omega_one.cohomology();
    let top = m.algebra().max_degree();
    let betti_eta = h_eta.betti();
    let betti_one = h_one.betti();
    let dims_add = (0..=top).all(|p| betti_eta[p] == betti_one[p] + if p == 0 { 0 } else { betti_one[p - 1] });
    let mut map_iso = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut cols = Vec::new();
        for x in h_one.representatives(p) {
            cols.push(h_eta.class_of(&x)?);
        }
        if p > 0 {
            for y in h_one.representatives(p - 1) {
                cols.push(h_eta.class_of(&eta.wedge(&y)?)?);
            }
        }
        map_iso.push(InducedMap::new(Matrix::from_columns(h_eta.dim(p), &cols)).is_isomorphism());
    }
    Ok(SplittingReport { betti_eta, betti_one, dims_add, map_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn e(d: usize, i: usize) -> Vec<Q> {
        (0..d).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    fn with_reeb(m: LieModel<Q>) -> LieModel<Q> {
        let d = m.dim();
        m.with_xi(e(d, 0)).unwrap().with_eta(e(d, 0)).unwrap()
    }

    fn elements(m: &LieModel<Q>, texts: &[&str]) -> Vec<Vec<Q>> {
        texts.iter().map(|t| Element::parse(m.algebra(), t).unwrap().to_vector()).collect()
    }

    #[test]
    fn torus_splitting() {
        let m = with_reeb(LieModel::abelian(3).unwrap());
        let oe = omega_eta(&m).unwrap();
        assert_eq!(oe.dims(), vec![1, 3, 3, 1]);
        let s = omega_splitting(&m, &oe).unwrap();
        assert!(same_span(3, &s.omega_one.basis_matrix(1).columns(), &elements(&m, &["e2", "e3"])));
        assert!(same_span(3, &s.omega_two.basis_matrix(1).columns(), &elements(&m, &["e1"])));
        assert_eq!(s.omega_one.dims(), vec![1, 2, 1, 0]);
        assert_eq!(s.omega_two.dims(), vec![0, 1, 2, 1]);
        let r = splitting_check(&m, &s).unwrap();
        assert_eq!(r.betti_one, vec![1, 2, 1, 0]);
        assert!(r.holds());
        assert!(verify_lemma1(&m, &s).unwrap());
    }

    #[test]
    fn split_examples() {
        let m = with_reeb(LieModel::abelian(3).unwrap());
        let alg = m.algebra();
        let pair = split(&m, &Element::parse(alg, "e1 + e2").unwrap()).unwrap();
        assert_eq!(pair.first, Element::parse(alg, "e2").unwrap());
        assert_eq!(pair.second, Element::parse(alg, "e1").unwrap());
        let m5 = with_reeb(LieModel::abelian(5).unwrap());
        let w = Element::parse(m5.algebra(), "e2*e3").unwrap();
        let pair = split(&m5, &w).unwrap();
        assert_eq!(pair.first, w);
        assert!(pair.second.is_zero());
    }

    #[test]
    fn heisenberg_kernel_and_basic_forms() {
        let m = with_reeb(LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap());
        let oe = omega_eta(&m).unwrap();
        // Oracle: kernels of the explicit L_{X1} matrices.
        let l = m.lie_derivative(&e(3, 0));
        for p in 0..=3 {
            assert_eq!(oe.dim(p), l.matrix(p).kernel().len());
        }
        assert!(same_span(3, &oe.basis_matrix(1).columns(), &elements(&m, &["e1", "e2"])));
        assert!(same_span(3, &oe.basis_matrix(2).columns(), &elements(&m, &["e1*e2", "e2*e3"])));
        let basic = basic_complex(&m, &e(3, 0)).unwrap();
        assert!(same_span(3, &basic.basis_matrix(1).columns(), &elements(&m, &["e2"])));
        assert_eq!(basic.dim(3), 0);
    }

    #[test]
    fn torus_basic_complex() {
        let m = LieModel::<Q>::abelian(3).unwrap();
        let basic = basic_complex(&m, &e(3, 0)).unwrap();
        assert_eq!(basic.dims(), vec![1, 2, 1, 0]);
    }

    #[test]
    fn kernel_of_d_is_cocycles() {
        let m = LieModel::<Q>::new(3, &[(0, 1, 2, q(1))]).unwrap();
        let z = kernel_subcomplex(&m, m.dga().d()).unwrap();
        assert_eq!(z.dims(), vec![1, 2, 3, 1]);
    }
}
