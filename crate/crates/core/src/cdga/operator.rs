use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exterior::{same_algebra, Element, GradedAlgebra, Monomial};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A homogeneous linear endomorphism of a graded algebra, presented by its
/// matrix in each degree.
pub trait GradedOperator<F: Scalar> {
    fn algebra(&self) -> &Arc<GradedAlgebra>;

    fn degree(&self) -> i64;

    /// Matrix from degree `p` to degree `p + degree()`, in monomial bases.
    /// Has zero rows when the target degree is out of range.
    fn matrix(&self, p: usize) -> Matrix<F>;

    fn target_degree(&self, p: usize) -> Option<usize> {
        let t = p as i64 + self.degree();
        (t >= 0 && t as usize <= self.algebra().max_degree()).then_some(t as usize)
    }

    /// Applies the operator through its matrices. Out-of-range results are
    /// reported as the zero scalar.
    fn apply_via_matrix(&self, x: &Element<F>) -> Element<F> {
        let alg = self.algebra();
        match self.target_degree(x.degree()) {
            Some(t) if x.degree() <= alg.max_degree() => {
                Element::from_vector(alg, t, &self.matrix(x.degree()).mul_vec(&x.to_vector()))
            }
            _ => Element::zero(alg, 0),
        }
    }
}

pub(crate) fn target_dim(alg: &GradedAlgebra, p: usize, degree: i64) -> usize {
    let t = p as i64 + degree;
    if t < 0 || t as usize > alg.max_degree() {
        0
    } else {
        alg.dim(t as usize)
    }
}

/// A graded derivation: determined by its values on generators and extended
/// to products by the graded Leibniz rule
/// `f(ab) = f(a) b + (-1)^{|a||f|} a f(b)`, vanishing on scalars.
pub struct Derivation<F: Scalar> {
    algebra: Arc<GradedAlgebra>,
    degree: i64,
    images: Vec<Option<Element<F>>>,
    cache: Vec<OnceLock<Matrix<F>>>,
}

impl<F: Scalar> Clone for Derivation<F> {
    fn clone(&self) -> Self {
        Self::build(Arc::clone(&self.algebra), self.degree, self.images.clone())
    }
}

impl<F: Scalar> std::fmt::Debug for Derivation<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Derivation(degree {}", self.degree)?;
        for (g, img) in self.algebra.generators().iter().zip(&self.images) {
            if let Some(e) = img {
                if !e.is_zero() {
                    write!(f, ", {} ↦ {}", g.name, e)?;
                }
            }
        }
        write!(f, ")")
    }
}

impl<F: Scalar> Derivation<F> {
    fn build(algebra: Arc<GradedAlgebra>, degree: i64, images: Vec<Option<Element<F>>>) -> Self {
        let cache = (0..=algebra.max_degree()).map(|_| OnceLock::new()).collect();
        Self { algebra, degree, images, cache }
    }

    /// Extends generator images to the unique derivation of the given degree.
    /// Generators without an entry map to zero.
    pub fn extend(algebra: &Arc<GradedAlgebra>, degree: i64, images: Vec<(usize, Element<F>)>) -> Result<Self> {
        let mut slots: Vec<Option<Element<F>>> = vec![None; algebra.num_generators()];
        for (g, img) in images {
            let gen = algebra.generators().get(g).ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
            if !same_algebra(img.algebra(), algebra) {
                return Err(Error::MismatchedAlgebras);
            }
            let expected = gen.degree as i64 + degree;
            if img.is_zero() {
                continue;
            }
            if img.degree() as i64 != expected {
                return Err(Error::DegreeMismatch { expected, found: img.degree() as i64 });
            }
            slots[g] = Some(img);
        }
        Ok(Self::build(Arc::clone(algebra), degree, slots))
    }

    pub fn extend_named(algebra: &Arc<GradedAlgebra>, degree: i64, images: &[(&str, Element<F>)]) -> Result<Self> {
        let idx =
            images.iter().map(|(n, e)| Ok((algebra.generator_index(n)?, e.clone()))).collect::<Result<Vec<_>>>()?;
        Self::extend(algebra, degree, idx)
    }

    pub fn zero(algebra: &Arc<GradedAlgebra>, degree: i64) -> Self {
        Self::build(Arc::clone(algebra), degree, vec![None; algebra.num_generators()])
    }

    /// Image of generator `g`; zero when none was given.
    pub fn image(&self, g: usize) -> Option<&Element<F>> {
        self.images.get(g).and_then(Option::as_ref)
    }

    fn output_zero(&self, p: usize) -> Element<F> {
        let t = (p as i64 + self.degree).max(0) as usize;
        Element::zero(&self.algebra, t)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element<F> {
        let p = self.algebra.monomial_degree(m);
        let mut out = self.output_zero(p);
        if self.target_degree_of(p).is_none() {
            return out;
        }
        let gens: Vec<usize> = m.generators().iter().map(|&g| g as usize).collect();
        let mut prefix_degree = 0usize;
        for i in 0..gens.len() {
            let g = gens[i];
            let gdeg = self.algebra.generators()[g].degree;
            if let Some(img) = self.image(g) {
                let negative = self.degree.rem_euclid(2) == 1 && prefix_degree % 2 == 1;
                let prefix = Element::product_of(&self.algebra, &gens[..i], F::sign(negative)).expect("valid indices");
                let suffix = Element::product_of(&self.algebra, &gens[i + 1..], F::one()).expect("valid indices");
                let term = prefix.wedge(img).and_then(|t| t.wedge(&suffix)).expect("same algebra");
                if !term.is_zero() {
                    out = out.add(&term).expect("homogeneous output");
                }
            }
            prefix_degree += gdeg;
        }
        out
    }

    fn target_degree_of(&self, p: usize) -> Option<usize> {
        let t = p as i64 + self.degree;
        (t >= 0 && t as usize <= self.algebra.max_degree()).then_some(t as usize)
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        if !same_algebra(x.algebra(), &self.algebra) {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = self.output_zero(x.degree());
        for (m, c) in x.terms() {
            let y = self.apply_monomial(m).scale(c);
            if !y.is_zero() {
                out = out.add(&y)?;
            }
        }
        Ok(out)
    }
}

impl<F: Scalar> GradedOperator<F> for Derivation<F> {
    fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    fn degree(&self) -> i64 {
        self.degree
    }

    fn matrix(&self, p: usize) -> Matrix<F> {
        if p > self.algebra.max_degree() {
            return Matrix::zeros(0, 0);
        }
        self.cache[p]
            .get_or_init(|| {
                let rows = target_dim(&self.algebra, p, self.degree);
                let cols: Vec<Vec<F>> = self
                    .algebra
                    .basis(p)
                    .iter()
                    .map(|m| if rows == 0 { Vec::new() } else { self.apply_monomial(m).to_vector() })
                    .collect();
                Matrix::from_columns(rows, &cols)
            })
            .clone()
    }
}

/// An operator given directly by its matrices.
#[derive(Clone, Debug)]
pub struct MatrixOperator<F: Scalar> {
    algebra: Arc<GradedAlgebra>,
    degree: i64,
    matrices: Vec<Matrix<F>>,
}

impl<F: Scalar> MatrixOperator<F> {
    pub fn new(algebra: &Arc<GradedAlgebra>, degree: i64, matrices: Vec<Matrix<F>>) -> Result<Self> {
        if matrices.len() != algebra.max_degree() + 1 {
            return Err(Error::Dimension(format!(
                "expected {} matrices, got {}",
                algebra.max_degree() + 1,
                matrices.len()
            )));
        }
        for (p, m) in matrices.iter().enumerate() {
            let shape = (target_dim(algebra, p, degree), algebra.dim(p));
            if (m.rows(), m.cols()) != shape {
                return Err(Error::Dimension(format!(
                    "degree {p}: expected {shape:?}, got {:?}",
                    (m.rows(), m.cols())
                )));
            }
        }
        Ok(Self { algebra: Arc::clone(algebra), degree, matrices })
    }

    pub fn from_operator(op: &dyn GradedOperator<F>) -> Self {
        let matrices = (0..=op.algebra().max_degree()).map(|p| op.matrix(p)).collect();
        Self { algebra: Arc::clone(op.algebra()), degree: op.degree(), matrices }
    }

    /// `y ↦ x ∧ y`.
    pub fn left_multiplication(x: &Element<F>) -> Self {
        let alg = x.algebra();
        let degree = x.degree() as i64;
        let matrices = (0..=alg.max_degree())
            .map(|p| {
                let rows = target_dim(alg, p, degree);
                let cols: Vec<Vec<F>> = alg
                    .basis(p)
                    .iter()
                    .map(|m| {
                        if rows == 0 {
                            return Vec::new();
                        }
                        let y = Element::from_monomial(alg, m.clone(), F::one());
                        let xy = x.wedge(&y).expect("same algebra");
                        if xy.is_zero() {
                            vec![F::zero(); rows]
                        } else {
                            xy.to_vector()
                        }
                    })
                    .collect();
                Matrix::from_columns(rows, &cols)
            })
            .collect();
        Self { algebra: Arc::clone(alg), degree, matrices }
    }
}

impl<F: Scalar> GradedOperator<F> for MatrixOperator<F> {
    fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    fn degree(&self) -> i64 {
        self.degree
    }

    fn matrix(&self, p: usize) -> Matrix<F> {
        self.matrices.get(p).cloned().unwrap_or_else(|| Matrix::zeros(0, 0))
    }
}

/// Basis of the common kernel of several operators in degree `p`.
pub fn joint_kernel<F: Scalar>(ops: &[&dyn GradedOperator<F>], p: usize) -> Vec<Vec<F>> {
    let dim = ops.first().map_or(0, |o| o.algebra().dim(p));
    let mut stacked = Matrix::zeros(0, dim);
    for op in ops {
        let m = op.matrix(p);
        if m.rows() > 0 {
            stacked = stacked.vstack(&m);
        }
    }
    if stacked.rows() == 0 {
        Matrix::<F>::identity(dim).columns()
    } else {
        stacked.kernel()
    }
}

/// `f ∘ g` as matrices.
pub fn compose<F: Scalar>(f: &dyn GradedOperator<F>, g: &dyn GradedOperator<F>) -> Result<MatrixOperator<F>> {
    if !same_algebra(f.algebra(), g.algebra()) {
        return Err(Error::MismatchedAlgebras);
    }
    let alg = f.algebra();
    let degree = f.degree() + g.degree();
    let matrices = (0..=alg.max_degree())
        .map(|p| match g.target_degree(p) {
            Some(mid) => f.matrix(mid).mul(&g.matrix(p)),
            None => Matrix::zeros(target_dim(alg, p, degree), alg.dim(p)),
        })
        .collect();
    MatrixOperator::new(alg, degree, matrices)
}

fn commutator_sign<F: Scalar>(f: i64, g: i64) -> F {
    F::sign((f * g).rem_euclid(2) == 1)
}

/// `{f, g} = f∘g − (−1)^{|f||g|} g∘f`, computed from composed matrices.
pub fn supercommutator_matrices<F: Scalar>(
    f: &dyn GradedOperator<F>,
    g: &dyn GradedOperator<F>,
) -> Result<MatrixOperator<F>> {
    let fg = compose(f, g)?;
    let gf = compose(g, f)?;
    let s: F = commutator_sign(f.degree(), g.degree());
    let matrices = fg.matrices.iter().zip(&gf.matrices).map(|(a, b)| a.sub(&b.scale(&s))).collect();
    MatrixOperator::new(f.algebra(), fg.degree, matrices)
}

/// The supercommutator of two derivations, which is again a derivation; it
/// is built from its values on generators.
pub fn supercommutator<F: Scalar>(f: &Derivation<F>, g: &Derivation<F>) -> Result<Derivation<F>> {
    if !same_algebra(&f.algebra, &g.algebra) {
        return Err(Error::MismatchedAlgebras);
    }
    let alg = &f.algebra;
    let degree = f.degree + g.degree;
    let s: F = commutator_sign(f.degree, g.degree);
    let mut images = Vec::new();
    for (i, gen) in alg.generators().iter().enumerate() {
        let t = gen.degree as i64 + degree;
        if t < 0 || t as usize > alg.max_degree() {
            continue;
        }
        let x = Element::generator(alg, i);
        let fg = f.apply(&g.apply(&x)?)?;
        let gf = g.apply(&f.apply(&x)?)?.scale(&s);
        let v = fg.sub(&gf)?;
        if !v.is_zero() {
            images.push((i, v));
        }
    }
    Derivation::extend(alg, degree, images)
}

/// First degree in which two operators differ, if any.
pub fn first_difference<F: Scalar>(a: &dyn GradedOperator<F>, b: &dyn GradedOperator<F>) -> Option<usize> {
    if a.degree() != b.degree() || !same_algebra(a.algebra(), b.algebra()) {
        return Some(0);
    }
    (0..=a.algebra().max_degree()).find(|&p| a.matrix(p) != b.matrix(p))
}

pub fn operators_equal<F: Scalar>(a: &dyn GradedOperator<F>, b: &dyn GradedOperator<F>) -> bool {
    first_difference(a, b).is_none()
}

pub fn is_zero_operator<F: Scalar>(a: &dyn GradedOperator<F>) -> bool {
    (0..=a.algebra().max_degree()).all(|p| a.matrix(p).is_zero())
}

/// A pair of basis monomials on which the Leibniz identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizFailure {
    pub left: String,
    pub right: String,
}

/// Checks the graded Leibniz rule on every product of basis monomials,
/// using only the operator's matrices.
pub fn check_leibniz<F: Scalar>(op: &dyn GradedOperator<F>) -> std::result::Result<(), LeibnizFailure> {
    let alg = op.algebra();
    let top = alg.max_degree();
    let odd_op = op.degree().rem_euclid(2) == 1;
    for p in 0..=top {
        for a in alg.basis(p) {
            let ea = Element::from_monomial(alg, a.clone(), F::one());
            let fa = op.apply_via_matrix(&ea);
            for q in 0..=top - p {
                for b in alg.basis(q) {
                    let eb = Element::from_monomial(alg, b.clone(), F::one());
                    let lhs = op.apply_via_matrix(&ea.wedge(&eb).expect("same algebra"));
                    let fb = op.apply_via_matrix(&eb);
                    let t1 = fa.wedge(&eb).expect("same algebra");
                    let t2 = ea.wedge(&fb).expect("same algebra").scale(&F::sign(odd_op && p % 2 == 1));
                    let rhs = add_loose(&t1, &t2);
                    if !equal_loose(&lhs, &rhs) {
                        return Err(LeibnizFailure { left: alg.format_monomial(a), right: alg.format_monomial(b) });
                    }
                }
            }
        }
    }
    Ok(())
}

// Zero elements produced for out-of-range degrees may carry a placeholder
// degree, so sums here tolerate a zero summand of any degree.
fn add_loose<F: Scalar>(a: &Element<F>, b: &Element<F>) -> Element<F> {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.add(b).expect("homogeneous sum")
    }
}

fn equal_loose<F: Scalar>(a: &Element<F>, b: &Element<F>) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}
