use std::sync::Arc;

use super::operator::{Derivation, GradedOperator};
use crate::error::{Error, Result};
use crate::exterior::{same_algebra, Element, Generator, GradedAlgebra, Monomial};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A free graded-commutative algebra with a degree +1 derivation squaring to
/// zero.
#[derive(Clone, Debug)]
pub struct Dga<F: Scalar> {
    algebra: Arc<GradedAlgebra>,
    d: Derivation<F>,
}

impl<F: Scalar> Dga<F> {
    /// Validates `d∘d = 0` in every degree.
    pub fn new(d: Derivation<F>) -> Result<Self> {
        let dga = Self::new_unchecked(d)?;
        if let Some(degree) = dga.first_d_squared_failure() {
            return Err(Error::NotDifferential { degree });
        }
        Ok(dga)
    }

    /// Only checks that `d` has degree one.
    pub fn new_unchecked(d: Derivation<F>) -> Result<Self> {
        if d.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: d.degree() });
        }
        Ok(Self { algebra: Arc::clone(d.algebra()), d })
    }

    /// The algebra with zero differential.
    pub fn trivial_differential(algebra: &Arc<GradedAlgebra>) -> Self {
        Self { algebra: Arc::clone(algebra), d: Derivation::zero(algebra, 1) }
    }

    /// `∧(name)` on one degree-1 generator with `d = 0`.
    pub fn exterior_line(name: &str) -> Result<Self> {
        Ok(Self::trivial_differential(&GradedAlgebra::exterior(&[name])?))
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn d(&self) -> &Derivation<F> {
        &self.d
    }

    pub fn differential(&self, x: &Element<F>) -> Result<Element<F>> {
        self.d.apply(x)
    }

    pub fn first_d_squared_failure(&self) -> Option<usize> {
        (0..self.algebra.max_degree()).find(|&p| {
            let d0 = self.d.matrix(p);
            let d1 = self.d.matrix(p + 1);
            d1.rows() > 0 && !d1.mul(&d0).is_zero()
        })
    }

    pub fn d_squared_vanishes(&self) -> bool {
        self.first_d_squared_failure().is_none()
    }

    /// `d` maps every generator into products of two or more generators.
    pub fn is_minimal(&self) -> bool {
        (0..self.algebra.num_generators())
            .all(|g| self.d.image(g).is_none_or(|img| img.terms().all(|(m, _)| m.len() >= 2)))
    }
}

/// Graded algebra homomorphism determined by degree-preserving generator
/// images.
#[derive(Clone, Debug)]
pub struct AlgebraMap<F: Scalar> {
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    images: Vec<Element<F>>,
}

impl<F: Scalar> AlgebraMap<F> {
    pub fn new(source: &Arc<GradedAlgebra>, target: &Arc<GradedAlgebra>, images: Vec<Element<F>>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Dimension(format!(
                "{} generator images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if !same_algebra(img.algebra(), target) {
                return Err(Error::MismatchedAlgebras);
            }
            if !img.is_zero() && img.degree() != g.degree {
                return Err(Error::DegreeMismatch { expected: g.degree as i64, found: img.degree() as i64 });
            }
        }
        let images = images
            .into_iter()
            .zip(source.generators())
            .map(|(img, g)| if img.is_zero() { Element::zero(target, g.degree) } else { img })
            .collect();
        Ok(Self { source: Arc::clone(source), target: Arc::clone(target), images })
    }

    pub fn identity(algebra: &Arc<GradedAlgebra>) -> Self {
        let images = (0..algebra.num_generators()).map(|g| Element::generator(algebra, g)).collect();
        Self { source: Arc::clone(algebra), target: Arc::clone(algebra), images }
    }

    /// Includes an algebra into one with extra generators, keeping names.
    pub fn by_name(source: &Arc<GradedAlgebra>, target: &Arc<GradedAlgebra>) -> Result<Self> {
        let images = source.generators().iter().map(|g| Element::named(target, &g.name)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Element<F>] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element<F> {
        let mut acc = Element::one(&self.target);
        for &g in m.generators() {
            acc = acc.wedge(&self.images[g as usize]).expect("same target");
        }
        if acc.is_zero() {
            Element::zero(&self.target, self.source.monomial_degree(m))
        } else {
            acc
        }
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        if !same_algebra(x.algebra(), &self.source) {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = Element::zero(&self.target, x.degree());
        for (m, c) in x.terms() {
            out = out.add(&self.apply_monomial(m).scale(c))?;
        }
        Ok(out)
    }

    /// Matrix from source degree `p` to target degree `p`.
    pub fn matrix(&self, p: usize) -> Matrix<F> {
        let rows = if p <= self.target.max_degree() { self.target.dim(p) } else { 0 };
        let cols: Vec<Vec<F>> = self
            .source
            .basis(p)
            .iter()
            .map(|m| if rows == 0 { Vec::new() } else { self.apply_monomial(m).to_vector() })
            .collect();
        Matrix::from_columns(rows, &cols)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap<F>) -> Result<Self> {
        if !same_algebra(&other.target, &self.source) {
            return Err(Error::MismatchedAlgebras);
        }
        let images = other.images.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        Self::new(&other.source, &self.target, images)
    }

    /// Whether `self ∘ d_source = d_target ∘ self` on every degree.
    pub fn commutes_with(&self, source: &Dga<F>, target: &Dga<F>) -> Option<usize> {
        (0..=self.source.max_degree().min(self.target.max_degree())).find(|&p| {
            if p + 1 > self.target.max_degree() || p + 1 > self.source.max_degree() {
                return false;
            }
            let lhs = self.matrix(p + 1).mul(&source.d().matrix(p));
            let rhs = target.d().matrix(p).mul(&self.matrix(p));
            lhs != rhs
        })
    }
}

/// Tensor product of two DGAs on the disjoint union of their generators.
/// The differential is `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`, which is what the
/// Leibniz extension produces. The degree cap defaults to the sum of the
/// factors' caps.
pub fn tensor_product<F: Scalar>(a: &Dga<F>, b: &Dga<F>, max_degree: Option<usize>) -> Result<Dga<F>> {
    let mut gens: Vec<Generator> = a.algebra().generators().to_vec();
    for g in b.algebra().generators() {
        if gens.iter().any(|x| x.name == g.name) {
            return Err(Error::DuplicateGenerator(g.name.clone()));
        }
        gens.push(g.clone());
    }
    let cap = max_degree.unwrap_or(a.algebra().max_degree() + b.algebra().max_degree());
    let alg = GradedAlgebra::new(gens, Some(cap))?;
    let ia = AlgebraMap::by_name(a.algebra(), &alg)?;
    let ib = AlgebraMap::by_name(b.algebra(), &alg)?;
    let mut images = Vec::new();
    for (map, dga) in [(&ia, a), (&ib, b)] {
        for (g, gen) in dga.algebra().generators().iter().enumerate() {
            if let Some(img) = dga.d().image(g) {
                images.push((alg.generator_index(&gen.name)?, map.apply(img)?));
            }
        }
    }
    Dga::new(Derivation::extend(&alg, 1, images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type E = Element<Rational64>;

    fn ce(names: &[&str], d: &[(&str, &str)]) -> Dga<Rational64> {
        let a = GradedAlgebra::exterior(names).unwrap();
        let images: Vec<(&str, E)> = d.iter().map(|(g, x)| (*g, E::parse(&a, x).unwrap())).collect();
        Dga::new_unchecked(Derivation::extend_named(&a, 1, &images).unwrap()).unwrap()
    }

    #[test]
    fn d_squared_examples() {
        assert!(ce(&["e1", "e2", "e3"], &[]).d_squared_vanishes());
        assert!(ce(&["e1", "e2", "e3"], &[("e3", "-e1*e2")]).d_squared_vanishes());
        // [X1,X2] = X3 and [X1,X3] = X2 is a Lie algebra (X1 acts on an abelian ideal).
        assert!(ce(&["e1", "e2", "e3"], &[("e3", "-e1*e2"), ("e2", "-e1*e3")]).d_squared_vanishes());
        // [X1,X2] = X2, [X2,X3] = X1 violates Jacobi.
        let bad = ce(&["e1", "e2", "e3"], &[("e2", "-e1*e2"), ("e1", "-e2*e3")]);
        assert_eq!(bad.first_d_squared_failure(), Some(1));
        assert!(matches!(Dga::new(bad.d().clone()), Err(Error::NotDifferential { degree: 1 })));
    }

    #[test]
    fn minimality_predicate() {
        assert!(ce(&["e1", "e2", "e3"], &[("e3", "-e1*e2")]).is_minimal());
        let a = GradedAlgebra::new(vec![Generator::new("x", 1), Generator::new("y", 2)], Some(4)).unwrap();
        let d = Derivation::extend_named(&a, 1, &[("x", E::parse(&a, "y").unwrap())]).unwrap();
        assert!(!Dga::new(d).unwrap().is_minimal());
    }

    #[test]
    fn tensor_with_trivial_is_unit() {
        let eta = Dga::<Rational64>::exterior_line("eta").unwrap();
        let unit = Dga::trivial_differential(&GradedAlgebra::new(vec![], Some(0)).unwrap());
        let t = tensor_product(&eta, &unit, None).unwrap();
        assert_eq!(t.algebra().generators(), eta.algebra().generators());
        assert_eq!(t.algebra().max_degree(), 1);
    }

    #[test]
    fn tensor_name_collision() {
        let a = Dga::<Rational64>::exterior_line("eta").unwrap();
        assert!(matches!(tensor_product(&a, &a, None), Err(Error::DuplicateGenerator(_))));
    }

    #[test]
    fn tensor_differential_sign() {
        let h = ce(&["e1", "e2", "e3"], &[("e3", "-e1*e2")]);
        let b = ce(&["f1", "f2"], &[("f2", "f1*f1")]); // zero: f1 odd
        let t = tensor_product(&h, &b, None).unwrap();
        let x = E::parse(t.algebra(), "e3*f2").unwrap();
        assert_eq!(t.differential(&x).unwrap(), E::parse(t.algebra(), "-e1*e2*f2").unwrap());
    }

    #[test]
    fn algebra_map_multiplicative() {
        let a = GradedAlgebra::exterior(&["e1", "e2"]).unwrap();
        let rot = AlgebraMap::new(&a, &a, vec![E::parse(&a, "e2").unwrap(), E::parse(&a, "-e1").unwrap()]).unwrap();
        assert_eq!(rot.apply(&E::parse(&a, "e1*e2").unwrap()).unwrap(), E::parse(&a, "e1*e2").unwrap());
        let sq = rot.compose(&rot).unwrap();
        assert_eq!(sq.apply(&E::parse(&a, "e1").unwrap()).unwrap(), E::parse(&a, "-e1").unwrap());
        assert_eq!(rot.matrix(1).pow(4), Matrix::identity(2));
    }
}
