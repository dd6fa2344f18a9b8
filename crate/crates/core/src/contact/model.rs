use std::sync::Arc;

use crate::cdga::{Derivation, Dga};
use crate::error::{Error, Result};
use crate::exterior::{same_algebra, Element, GradedAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A real Lie algebra with a left-invariant metric and, optionally, the
/// tensors of an almost-contact structure.
///
/// Vectors are coordinate columns in the basis `X1..Xd`; covectors are rows in
/// the dual basis `e1..ed`. `j` acts on columns, so `J X_i` is column `i`.
#[derive(Clone, Debug)]
pub struct LieModel<F: Scalar> {
    dim: usize,
    // c[(i * dim + j) * dim + k] = c^k_{ij}
    constants: Vec<F>,
    metric: Matrix<F>,
    metric_inverse: Matrix<F>,
    j: Option<Matrix<F>>,
    xi: Option<Vec<F>>,
    eta: Option<Vec<F>>,
    omega: Option<Element<F>>,
    ce: Dga<F>,
}

impl<F: Scalar> LieModel<F> {
    /// Builds the model from sparse structure constants `(i, j, k, c)` meaning
    /// `[X_i, X_j] ∋ c X_k` (zero-based). Entries for `(j, i)` are filled in by
    /// antisymmetry; contradictory entries, `i == j` with a nonzero value and a
    /// failing Jacobi identity are rejected. The metric starts as the identity.
    pub fn new(dim: usize, entries: &[(usize, usize, usize, F)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("dimension must be positive".into()));
        }
        let mut constants = vec![F::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        let slot = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidModel(format!(
                    "structure constant index ({}, {}, {}) out of range 1..={dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InvalidModel(format!("[X{0}, X{0}] must vanish", i + 1)));
                }
                continue;
            }
            for (a, b, v) in [(i, j, c.clone()), (j, i, -c.clone())] {
                let s = slot(a, b, k);
                if set[s] && constants[s] != v {
                    return Err(Error::InvalidModel(format!(
                        "conflicting values for c^{}_({},{})",
                        k + 1,
                        a + 1,
                        b + 1
                    )));
                }
                constants[s] = v;
                set[s] = true;
            }
        }
        let ce = chevalley_eilenberg(dim, &constants)?;
        Ok(Self {
            dim,
            constants,
            metric: Matrix::identity(dim),
            metric_inverse: Matrix::identity(dim),
            j: None,
            xi: None,
            eta: None,
            omega: None,
            ce,
        })
    }

    /// The abelian Lie algebra of the given dimension.
    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, &[])
    }

    /// Replaces the metric; it must be symmetric with positive leading
    /// principal minors.
    pub fn with_metric(mut self, g: Matrix<F>) -> Result<Self> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(Error::Dimension(format!("metric must be {0}×{0}", self.dim)));
        }
        if !g.is_symmetric() {
            return Err(Error::InvalidModel("metric is not symmetric".into()));
        }
        if let Some(k) = (1..=self.dim).find(|&k| g.leading_block(k).determinant() <= F::zero()) {
            return Err(Error::InvalidModel(format!("metric is not positive definite (leading minor {k})")));
        }
        self.metric_inverse = g.inverse().expect("positive definite");
        self.metric = g;
        Ok(self)
    }

    pub fn with_j(mut self, j: Matrix<F>) -> Result<Self> {
        if j.rows() != self.dim || j.cols() != self.dim {
            return Err(Error::Dimension(format!("J must be {0}×{0}", self.dim)));
        }
        self.j = Some(j);
        Ok(self)
    }

    pub fn with_xi(mut self, xi: Vec<F>) -> Result<Self> {
        self.check_len("ξ", &xi)?;
        self.xi = Some(xi);
        Ok(self)
    }

    pub fn with_eta(mut self, eta: Vec<F>) -> Result<Self> {
        self.check_len("η", &eta)?;
        self.eta = Some(eta);
        Ok(self)
    }

    pub fn with_structure(self, j: Matrix<F>, xi: Vec<F>, eta: Vec<F>) -> Result<Self> {
        self.with_j(j)?.with_xi(xi)?.with_eta(eta)
    }

    /// A user-supplied fundamental form, cross-checked against `g(J·, ·)`
    /// during classification.
    pub fn with_omega(mut self, omega: Element<F>) -> Result<Self> {
        if !same_algebra(omega.algebra(), self.algebra()) {
            return Err(Error::MismatchedAlgebras);
        }
        if !omega.is_zero() && omega.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: omega.degree() as i64 });
        }
        self.omega = Some(omega);
        Ok(self)
    }

    fn check_len(&self, what: &str, v: &[F]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("{what} has {} entries, expected {}", v.len(), self.dim)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `c^k_{ij}` with `i < j`, in lexicographic order.
    pub fn sparse_constants(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(F::is_zero)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        (0..self.dim).map(|k| if k == i { F::one() } else { F::zero() }).collect()
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn metric(&self) -> &Matrix<F> {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &Matrix<F> {
        &self.metric_inverse
    }

    /// `g(x, y)`.
    pub fn inner(&self, x: &[F], y: &[F]) -> F {
        dot(x, &self.metric.mul_vec(y))
    }

    pub fn j(&self) -> Option<&Matrix<F>> {
        self.j.as_ref()
    }

    pub fn xi(&self) -> Option<&[F]> {
        self.xi.as_deref()
    }

    pub fn eta(&self) -> Option<&[F]> {
        self.eta.as_deref()
    }

    pub fn omega_override(&self) -> Option<&Element<F>> {
        self.omega.as_ref()
    }

    pub(crate) fn require_j(&self) -> Result<&Matrix<F>> {
        self.j.as_ref().ok_or(Error::MissingTensor("J"))
    }

    pub(crate) fn require_xi(&self) -> Result<&[F]> {
        self.xi.as_deref().ok_or(Error::MissingTensor("xi"))
    }

    pub(crate) fn require_eta(&self) -> Result<&[F]> {
        self.eta.as_deref().ok_or(Error::MissingTensor("eta"))
    }

    /// The Chevalley–Eilenberg complex on `e1..ed`.
    pub fn dga(&self) -> &Dga<F> {
        &self.ce
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.ce.algebra()
    }

    /// The 1-form with the given dual-basis coordinates.
    pub fn one_form(&self, nu: &[F]) -> Element<F> {
        Element::from_vector(self.algebra(), 1, nu)
    }

    /// Coordinates of a 1-form.
    pub fn covector(&self, form: &Element<F>) -> Result<Vec<F>> {
        if !same_algebra(form.algebra(), self.algebra()) {
            return Err(Error::MismatchedAlgebras);
        }
        if form.is_zero() {
            return Ok(vec![F::zero(); self.dim]);
        }
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: form.degree() as i64 });
        }
        Ok(form.to_vector())
    }

    /// The 2-form `Σ_{i<j} a_ij e^i∧e^j` of an antisymmetric matrix.
    pub fn two_form(&self, a: &Matrix<F>) -> Element<F> {
        let alg = self.algebra();
        let mut out = Element::zero(alg, 2);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !a[(i, j)].is_zero() {
                    let t = Element::product_of(alg, &[i, j], a[(i, j)].clone()).expect("valid indices");
                    out = out.add(&t).expect("same degree");
                }
            }
        }
        out
    }

    /// `α(X_i, X_j)` for a 2-form `α`, with `e^i∧e^j (X_i, X_j) = 1`.
    pub fn evaluate_two_form(&self, form: &Element<F>, i: usize, j: usize) -> F {
        if i == j || form.is_zero() {
            return F::zero();
        }
        let (a, b, s) = if i < j { (i, j, F::one()) } else { (j, i, -F::one()) };
        let (m, _) = self.algebra().canonicalize(&[a, b]).expect("valid indices");
        form.coefficient(&m) * s
    }

    /// The musical isomorphism `ν ↦ ν^♯ = g⁻¹ν`.
    pub fn sharp(&self, nu: &[F]) -> Vec<F> {
        self.metric_inverse.mul_vec(nu)
    }

    /// `v ↦ v^♭ = g(v, ·)`.
    pub fn flat(&self, v: &[F]) -> Vec<F> {
        self.metric.mul_vec(v)
    }

    /// Interior product `ι_X`, the degree −1 derivation with `e^k ↦ X^k`.
    pub fn contraction(&self, x: &[F]) -> Derivation<F> {
        let alg = self.algebra();
        let images = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Element::scalar(alg, c.clone())))
            .collect();
        Derivation::extend(alg, -1, images).expect("scalar images have degree 0")
    }

    /// Lie derivative `L_X = {d, ι_X}`.
    pub fn lie_derivative(&self, x: &[F]) -> Derivation<F> {
        crate::cdga::supercommutator(self.ce.d(), &self.contraction(x)).expect("same algebra")
    }

    pub fn contract(&self, x: &[F], form: &Element<F>) -> Result<Element<F>> {
        self.contraction(x).apply(form)
    }

    pub fn lie(&self, x: &[F], form: &Element<F>) -> Result<Element<F>> {
        self.lie_derivative(x).apply(form)
    }
}

fn chevalley_eilenberg<F: Scalar>(dim: usize, constants: &[F]) -> Result<Dga<F>> {
    let names: Vec<String> = (1..=dim).map(|i| format!("e{i}")).collect();
    let alg = GradedAlgebra::exterior(&names)?;
    let mut images = Vec::new();
    for k in 0..dim {
        let mut dek = Element::zero(&alg, 2);
        for i in 0..dim {
            for j in i + 1..dim {
                let c = &constants[(i * dim + j) * dim + k];
                if !c.is_zero() {
                    dek = dek.add(&Element::product_of(&alg, &[i, j], -c.clone())?)?;
                }
            }
        }
        if !dek.is_zero() {
            images.push((k, dek));
        }
    }
    let d = Derivation::extend(&alg, 1, images)?;
    Dga::new(d).map_err(|e| match e {
        Error::NotDifferential { degree } => {
            Error::InvalidModel(format!("Jacobi identity fails (d∘d ≠ 0 on degree {degree})"))
        }
        other => other,
    })
}

pub(crate) fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::{check_leibniz, compose, is_zero_operator, operators_equal, GradedOperator, MatrixOperator};
    use num_rational::Rational64;
    use num_traits::Zero;
    use proptest::prelude::*;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn heisenberg() -> LieModel<Q> {
        LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap()
    }

    fn jacobi_holds(m: &LieModel<Q>) -> bool {
        let n = m.dim();
        let e = |i| m.basis_vector(i);
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let t1 = m.bracket(&e(a), &m.bracket(&e(b), &e(c)));
                    let t2 = m.bracket(&e(b), &m.bracket(&e(c), &e(a)));
                    let t3 = m.bracket(&e(c), &m.bracket(&e(a), &e(b)));
                    (0..n).all(|k| (t1[k] + t2[k] + t3[k]).is_zero())
                })
            })
        })
    }

    #[test]
    fn heisenberg_differential() {
        let m = heisenberg();
        let alg = m.algebra();
        let e3 = Element::named(alg, "e3").unwrap();
        assert_eq!(m.dga().differential(&e3).unwrap(), Element::parse(alg, "-e1*e2").unwrap());
        assert_eq!(m.structure_constant(1, 0, 2), &q(-1));
        assert!(jacobi_holds(&m));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LieModel::<Q>::new(3, &[(0, 1, 3, q(1))]).is_err());
        assert!(LieModel::<Q>::new(3, &[(0, 0, 1, q(1))]).is_err());
        assert!(LieModel::<Q>::new(3, &[(0, 1, 2, q(1)), (1, 0, 2, q(1))]).is_err());
        assert!(LieModel::<Q>::new(3, &[(0, 1, 2, q(1)), (1, 0, 2, q(-1))]).is_ok());
        let bad = LieModel::<Q>::new(3, &[(0, 1, 1, q(1)), (1, 2, 0, q(1))]);
        assert!(matches!(bad, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn metric_validation() {
        let m = LieModel::<Q>::abelian(2).unwrap();
        let not_sym = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(0), q(1)]]);
        assert!(m.clone().with_metric(not_sym).is_err());
        let indefinite = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(1)]]);
        assert!(m.clone().with_metric(indefinite).is_err());
        let g = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        let m = m.with_metric(g).unwrap();
        assert_eq!(m.sharp(&m.flat(&[q(3), q(-5)])), vec![q(3), q(-5)]);
    }

    #[test]
    fn contraction_examples() {
        let m = LieModel::<Q>::abelian(3).unwrap();
        let alg = m.algebra();
        let vol = Element::parse(alg, "e1*e2*e3").unwrap();
        assert_eq!(m.contract(&m.basis_vector(0), &vol).unwrap(), Element::parse(alg, "e2*e3").unwrap());
        assert_eq!(m.contract(&m.basis_vector(1), &vol).unwrap(), Element::parse(alg, "-e1*e3").unwrap());
        assert_eq!(m.sharp(&[q(1), q(0), q(0)]), m.basis_vector(0));
    }

    #[test]
    fn heisenberg_lie_derivative() {
        let m = heisenberg();
        let alg = m.algebra();
        let e3 = Element::named(alg, "e3").unwrap();
        let x1 = m.basis_vector(0);
        assert_eq!(m.lie(&x1, &e3).unwrap(), Element::parse(alg, "-e2").unwrap());
        // Oracle: (L_X ν)(Y) = −ν([X, Y]) on left-invariant 1-forms.
        for x in 0..3 {
            let lx = m.lie_derivative(&m.basis_vector(x)).matrix(1);
            for nu in 0..3 {
                for y in 0..3 {
                    let br = m.bracket(&m.basis_vector(x), &m.basis_vector(y));
                    assert_eq!(lx[(y, nu)], -br[nu]);
                }
            }
        }
    }

    #[test]
    fn cartan_identities_on_heisenberg() {
        let m = heisenberg();
        for i in 0..3 {
            let x = m.basis_vector(i);
            let iota = m.contraction(&x);
            assert!(is_zero_operator(&compose(&iota, &iota).unwrap()));
            let l = m.lie_derivative(&x);
            let a = compose(m.dga().d(), &iota).unwrap();
            let b = compose(&iota, m.dga().d()).unwrap();
            let sum =
                MatrixOperator::new(m.algebra(), 0, (0..=3).map(|p| a.matrix(p).add(&b.matrix(p))).collect()).unwrap();
            assert!(operators_equal(&l, &sum));
            assert!(check_leibniz(&iota).is_ok());
            assert!(check_leibniz(&l).is_ok());
        }
    }

    #[test]
    fn two_form_round_trip() {
        let m = LieModel::<Q>::abelian(4).unwrap();
        let w = Element::parse(m.algebra(), "2 e1*e3 - e2*e4").unwrap();
        assert_eq!(m.evaluate_two_form(&w, 0, 2), q(2));
        assert_eq!(m.evaluate_two_form(&w, 2, 0), q(-2));
        assert_eq!(m.evaluate_two_form(&w, 3, 1), q(1));
        let a = Matrix::from_fn(4, 4, |i, j| m.evaluate_two_form(&w, i, j));
        assert_eq!(m.two_form(&a), w);
    }

    proptest! {
        #[test]
        fn jacobi_matches_d_squared(cs in proptest::collection::vec(-1i64..2, 9)) {
            // Brackets [X1,X2], [X1,X3], [X2,X3] with arbitrary small coefficients.
            let mut entries = Vec::new();
            for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                for k in 0..3 {
                    entries.push((i, j, k, q(cs[p * 3 + k])));
                }
            }
            let mut constants = vec![q(0); 27];
            for (i, j, k, c) in &entries {
                constants[(i * 3 + j) * 3 + k] = *c;
                constants[(j * 3 + i) * 3 + k] = -*c;
            }
            let built = LieModel::new(3, &entries);
            let raw = LieModel { dim: 3, constants, ..LieModel::abelian(3).unwrap() };
            prop_assert_eq!(built.is_ok(), jacobi_holds(&raw));
        }

        #[test]
        fn contraction_squares_to_zero(x in proptest::collection::vec(-3i64..4, 4)) {
            let m = LieModel::<Q>::new(4, &[(0, 1, 2, q(1)), (0, 2, 3, q(1))]).unwrap();
            let x: Vec<Q> = x.into_iter().map(q).collect();
            let iota = m.contraction(&x);
            prop_assert!(is_zero_operator(&compose(&iota, &iota).unwrap()));
            let l = m.lie_derivative(&x);
            let dl = compose(m.dga().d(), &l).unwrap();
            let ld = compose(&l, m.dga().d()).unwrap();
            prop_assert!(operators_equal(&dl, &ld));
        }
    }
}
