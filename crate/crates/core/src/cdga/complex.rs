use std::sync::Arc;

use super::dga::{AlgebraMap, Dga};
use super::operator::GradedOperator;
use crate::error::{Error, Result};
use crate::exterior::{same_algebra, Element, GradedAlgebra};
use crate::linalg::{independent_subset, is_zero_vec, Matrix};
use crate::scalar::Scalar;

/// A degreewise subspace of a DGA that is closed under `d`, stored through
/// explicit bases. Cloning is cheap.
#[derive(Clone)]
pub struct Subcomplex<F: Scalar> {
    inner: Arc<Inner<F>>,
}

struct Inner<F: Scalar> {
    dga: Dga<F>,
    // Columns are basis vectors in monomial coordinates of the ambient algebra.
    bases: Vec<Matrix<F>>,
    // Restricted differential in subcomplex coordinates: k_{p+1} × k_p.
    diffs: Vec<Matrix<F>>,
}

impl<F: Scalar> std::fmt::Debug for Subcomplex<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subcomplex(dims {:?})", self.dims())
    }
}

impl<F: Scalar> Subcomplex<F> {
    /// `vectors[p]` spans the subspace in degree `p`; dependent vectors are
    /// dropped. Missing trailing degrees are zero.
    pub fn new(dga: &Dga<F>, vectors: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let alg = dga.algebra();
        let top = alg.max_degree();
        if vectors.len() > top + 1 {
            return Err(Error::Dimension(format!(
                "{} degrees given for an algebra of top degree {top}",
                vectors.len()
            )));
        }
        let mut bases = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let dim = alg.dim(p);
            let vs = vectors.get(p).cloned().unwrap_or_default();
            if let Some(bad) = vs.iter().find(|v| v.len() != dim) {
                return Err(Error::Dimension(format!(
                    "degree {p}: vector of length {} in space of dim {dim}",
                    bad.len()
                )));
            }
            let keep = independent_subset(dim, &vs);
            let cols: Vec<Vec<F>> = keep.into_iter().map(|i| vs[i].clone()).collect();
            bases.push(Matrix::from_columns(dim, &cols));
        }
        let mut diffs = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let k = bases[p].cols();
            if p == top {
                diffs.push(Matrix::zeros(0, k));
                continue;
            }
            let d = dga.d().matrix(p);
            let images = d.mul(&bases[p]);
            let target = &bases[p + 1];
            let mut cols = Vec::with_capacity(k);
            for c in 0..k {
                let img = images.column(c);
                let x = if is_zero_vec(&img) {
                    vec![F::zero(); target.cols()]
                } else {
                    target.solve(&img).ok_or(Error::NotClosed { degree: p })?
                };
                cols.push(x);
            }
            diffs.push(Matrix::from_columns(target.cols(), &cols));
        }
        Ok(Self { inner: Arc::new(Inner { dga: dga.clone(), bases, diffs }) })
    }

    pub fn from_elements(dga: &Dga<F>, elements: Vec<Vec<Element<F>>>) -> Result<Self> {
        let mut vectors = Vec::with_capacity(elements.len());
        for (p, es) in elements.into_iter().enumerate() {
            let mut vs = Vec::with_capacity(es.len());
            for e in es {
                if !same_algebra(e.algebra(), dga.algebra()) {
                    return Err(Error::MismatchedAlgebras);
                }
                if e.is_zero() {
                    continue;
                }
                if e.degree() != p {
                    return Err(Error::DegreeMismatch { expected: p as i64, found: e.degree() as i64 });
                }
                vs.push(e.to_vector());
            }
            vectors.push(vs);
        }
        Self::new(dga, vectors)
    }

    /// The whole DGA as a subcomplex of itself.
    pub fn full(dga: &Dga<F>) -> Self {
        let alg = dga.algebra();
        let top = alg.max_degree();
        let bases = (0..=top).map(|p| Matrix::identity(alg.dim(p))).collect();
        let diffs = (0..=top)
            .map(|p| if p == top { Matrix::zeros(0, alg.dim(p)) } else { dga.d().matrix(p).clone() })
            .collect();
        Self { inner: Arc::new(Inner { dga: dga.clone(), bases, diffs }) }
    }

    pub fn dga(&self) -> &Dga<F> {
        &self.inner.dga
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.inner.dga.algebra()
    }

    pub fn top_degree(&self) -> usize {
        self.algebra().max_degree()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.inner.bases.get(p).map_or(0, Matrix::cols)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|p| self.dim(p)).collect()
    }

    /// Basis of degree `p` as columns in ambient monomial coordinates.
    pub fn basis_matrix(&self, p: usize) -> &Matrix<F> {
        &self.inner.bases[p]
    }

    pub fn basis_elements(&self, p: usize) -> Vec<Element<F>> {
        self.inner.bases[p].columns().iter().map(|v| Element::from_vector(self.algebra(), p, v)).collect()
    }

    /// Restricted differential from degree `p` to `p + 1`.
    pub fn differential(&self, p: usize) -> &Matrix<F> {
        &self.inner.diffs[p]
    }

    /// Coordinates of an ambient vector in this subspace, if it lies in it.
    pub fn coords(&self, p: usize, v: &[F]) -> Option<Vec<F>> {
        let b = self.inner.bases.get(p)?;
        if is_zero_vec(v) {
            return Some(vec![F::zero(); b.cols()]);
        }
        b.solve(v)
    }

    pub fn element_coords(&self, x: &Element<F>) -> Option<Vec<F>> {
        if !same_algebra(x.algebra(), self.algebra()) {
            return None;
        }
        if x.is_zero() {
            return Some(vec![F::zero(); self.dim(x.degree().min(self.top_degree()))]);
        }
        self.coords(x.degree(), &x.to_vector())
    }

    pub fn contains(&self, x: &Element<F>) -> bool {
        x.is_zero() || (x.degree() <= self.top_degree() && self.element_coords(x).is_some())
    }

    pub fn element(&self, p: usize, coords: &[F]) -> Element<F> {
        Element::from_vector(self.algebra(), p, &self.inner.bases[p].mul_vec(coords))
    }

    /// Degreewise equality of spans with another subcomplex of the same DGA.
    pub fn same_span(&self, other: &Subcomplex<F>) -> bool {
        same_algebra(self.algebra(), other.algebra())
            && (0..=self.top_degree()).all(|p| {
                let a = self.inner.bases[p].columns();
                let b = other.inner.bases[p].columns();
                crate::linalg::same_span(self.algebra().dim(p), &a, &b)
            })
    }

    /// Whether products of elements stay inside.
    pub fn is_subalgebra(&self) -> Result<()> {
        let top = self.top_degree();
        for p in 0..=top {
            for q in p..=top - p {
                for x in self.basis_elements(p) {
                    for y in self.basis_elements(q) {
                        if !self.contains(&x.wedge(&y)?) {
                            return Err(Error::NotSubalgebra(p, q));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Kernel of a graded operator, degreewise. Fails if the kernel is not
    /// closed under `d`.
    pub fn kernel_of(dga: &Dga<F>, op: &dyn GradedOperator<F>) -> Result<Self> {
        if !same_algebra(dga.algebra(), op.algebra()) {
            return Err(Error::MismatchedAlgebras);
        }
        let alg = dga.algebra();
        let vectors = (0..=alg.max_degree())
            .map(|p| {
                let m = op.matrix(p);
                if m.rows() == 0 {
                    Matrix::<F>::identity(alg.dim(p)).columns()
                } else {
                    m.kernel()
                }
            })
            .collect();
        Self::new(dga, vectors)
    }

    pub fn cohomology(&self) -> CohomologyRing<F> {
        CohomologyRing::compute(self)
    }
}

/// Cohomology of a subcomplex, with deterministic representatives chosen by
/// echelon pivots: boundaries first, then cocycles in basis order.
#[derive(Clone, Debug)]
pub struct CohomologyRing<F: Scalar> {
    complex: Subcomplex<F>,
    degrees: Vec<CohomologyDegree<F>>,
}

#[derive(Clone, Debug)]
struct CohomologyDegree<F: Scalar> {
    cocycle_dim: usize,
    boundary_dim: usize,
    // [boundary basis | representatives] in subcomplex coordinates.
    quotient: Matrix<F>,
    reps: Vec<Vec<F>>,
}

impl<F: Scalar> CohomologyRing<F> {
    pub fn compute(complex: &Subcomplex<F>) -> Self {
        Self::compute_through(complex, complex.top_degree())
    }

    /// Cohomology in degrees `0..=max` only; higher degrees are left out.
    pub(crate) fn compute_through(complex: &Subcomplex<F>, max: usize) -> Self {
        let degrees = (0..=complex.top_degree().min(max)).map(|p| Self::degree_data(complex, p)).collect();
        Self { complex: complex.clone(), degrees }
    }

    fn degree_data(c: &Subcomplex<F>, p: usize) -> CohomologyDegree<F> {
        let k = c.dim(p);
        let z = c.differential(p).kernel();
        let b: Vec<Vec<F>> = if p == 0 { Vec::new() } else { c.differential(p - 1).columns() };
        let nb = b.len();
        let mut all = b.clone();
        all.extend(z.iter().cloned());
        let pivots = if all.is_empty() { Vec::new() } else { Matrix::from_columns(k, &all).echelon().pivots };
        let boundary: Vec<Vec<F>> = pivots.iter().filter(|&&i| i < nb).map(|&i| all[i].clone()).collect();
        let reps: Vec<Vec<F>> = pivots.iter().filter(|&&i| i >= nb).map(|&i| all[i].clone()).collect();
        let mut cols = boundary.clone();
        cols.extend(reps.iter().cloned());
        CohomologyDegree {
            cocycle_dim: z.len(),
            boundary_dim: boundary.len(),
            quotient: Matrix::from_columns(k, &cols),
            reps,
        }
    }

    pub fn complex(&self) -> &Subcomplex<F> {
        &self.complex
    }

    pub fn dim(&self, p: usize) -> usize {
        self.degrees.get(p).map_or(0, |d| d.reps.len())
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn cocycle_dim(&self, p: usize) -> usize {
        self.degrees[p].cocycle_dim
    }

    pub fn boundary_dim(&self, p: usize) -> usize {
        self.degrees[p].boundary_dim
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    /// Representative cocycles in subcomplex coordinates.
    pub fn representative_coords(&self, p: usize) -> &[Vec<F>] {
        &self.degrees[p].reps
    }

    pub fn representatives(&self, p: usize) -> Vec<Element<F>> {
        self.degrees[p].reps.iter().map(|r| self.complex.element(p, r)).collect()
    }

    /// Element representing the class with the given coordinates.
    pub fn class_element(&self, p: usize, class: &[F]) -> Element<F> {
        let reps = &self.degrees[p].reps;
        let mut v = vec![F::zero(); self.complex.dim(p)];
        for (r, c) in reps.iter().zip(class) {
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi = vi.clone() + ri.clone() * c.clone();
            }
        }
        self.complex.element(p, &v)
    }

    /// Class coordinates of a cocycle given in subcomplex coordinates;
    /// `None` if it is not a cocycle.
    pub fn class_of_coords(&self, p: usize, z: &[F]) -> Option<Vec<F>> {
        let dz = self.complex.differential(p).mul_vec(z);
        if !is_zero_vec(&dz) {
            return None;
        }
        let deg = &self.degrees[p];
        if is_zero_vec(z) {
            return Some(vec![F::zero(); deg.reps.len()]);
        }
        let x = deg.quotient.solve(z).expect("cocycles lie in boundaries + representatives");
        Some(x[deg.boundary_dim..].to_vec())
    }

    /// Class coordinates of a closed element of the subcomplex.
    pub fn class_of(&self, x: &Element<F>) -> Result<Vec<F>> {
        let p = x.degree();
        if x.is_zero() {
            return Ok(vec![F::zero(); self.dim(p)]);
        }
        let z = self.complex.element_coords(x).ok_or(Error::NotContained { degree: p })?;
        self.class_of_coords(p, &z).ok_or(Error::Refused(format!("{x} is not closed")))
    }

    pub fn is_exact(&self, x: &Element<F>) -> Result<bool> {
        Ok(is_zero_vec(&self.class_of(x)?))
    }

    /// `x·y` for classes `x ∈ H^p`, `y ∈ H^q`.
    pub fn cup_product(&self, p: usize, x: &[F], q: usize, y: &[F]) -> Result<Vec<F>> {
        if p + q > self.top_degree() {
            return Ok(Vec::new());
        }
        let prod = self.class_element(p, x).wedge(&self.class_element(q, y))?;
        if prod.is_zero() {
            return Ok(vec![F::zero(); self.dim(p + q)]);
        }
        let z = self.complex.element_coords(&prod).ok_or(Error::NotSubalgebra(p, q))?;
        Ok(self.class_of_coords(p + q, &z).expect("product of cocycles is a cocycle"))
    }

    /// Some `u` in the subcomplex with `du = w`, visiting basis columns in
    /// `order` when choosing pivots. `None` if `w` is not exact.
    pub fn bounding_cochain(&self, w: &Element<F>, order: PivotOrder) -> Result<Option<Element<F>>> {
        let p = w.degree();
        if p == 0 {
            return Ok(if w.is_zero() { Some(Element::zero(self.complex.algebra(), 0)) } else { None });
        }
        let wc = self.complex.element_coords(w).ok_or(Error::NotContained { degree: p })?;
        let d = self.complex.differential(p - 1);
        let cols: Vec<usize> = match order {
            PivotOrder::Forward => (0..d.cols()).collect(),
            PivotOrder::Reverse => (0..d.cols()).rev().collect(),
        };
        Ok(d.solve_with_order(&wc, &cols).map(|u| self.complex.element(p - 1, &u)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

/// A chain map between subcomplexes, as degreewise matrices in subcomplex
/// coordinates.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Scalar> {
    source: Subcomplex<F>,
    target: Subcomplex<F>,
    matrices: Vec<Matrix<F>>,
}

impl<F: Scalar> ChainMap<F> {
    pub fn new(source: &Subcomplex<F>, target: &Subcomplex<F>, matrices: Vec<Matrix<F>>) -> Result<Self> {
        let top = source.top_degree().min(target.top_degree());
        for p in 0..top {
            let lhs = target.differential(p).mul(&matrices[p]);
            let rhs = matrices[p + 1].mul(source.differential(p));
            if lhs != rhs {
                return Err(Error::NotChainMap { degree: p });
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), matrices })
    }

    /// Inclusion of one subcomplex into another of the same DGA.
    pub fn inclusion(sub: &Subcomplex<F>, parent: &Subcomplex<F>) -> Result<Self> {
        if !same_algebra(sub.algebra(), parent.algebra()) {
            return Err(Error::MismatchedAlgebras);
        }
        let matrices = (0..=sub.top_degree())
            .map(|p| {
                let cols = sub
                    .basis_matrix(p)
                    .columns()
                    .iter()
                    .map(|v| parent.coords(p, v).ok_or(Error::NotContained { degree: p }))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(parent.dim(p), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sub, parent, matrices)
    }

    /// The chain map induced by an algebra map between the ambient algebras.
    pub fn from_algebra_map(source: &Subcomplex<F>, map: &AlgebraMap<F>, target: &Subcomplex<F>) -> Result<Self> {
        if !same_algebra(map.source(), source.algebra()) || !same_algebra(map.target(), target.algebra()) {
            return Err(Error::MismatchedAlgebras);
        }
        let top = source.top_degree().min(target.top_degree());
        let matrices = (0..=top)
            .map(|p| {
                let images = map.matrix(p).mul(source.basis_matrix(p));
                let cols = images
                    .columns()
                    .iter()
                    .map(|v| target.coords(p, v).ok_or(Error::NotContained { degree: p }))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(target.dim(p), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, matrices)
    }

    pub fn source(&self) -> &Subcomplex<F> {
        &self.source
    }

    pub fn target(&self) -> &Subcomplex<F> {
        &self.target
    }

    pub fn matrix(&self, p: usize) -> &Matrix<F> {
        &self.matrices[p]
    }

    pub fn top_degree(&self) -> usize {
        self.matrices.len().saturating_sub(1)
    }

    /// Induced map `H^p(source) → H^p(target)` in representative bases.
    pub fn induced(&self, p: usize, hs: &CohomologyRing<F>, ht: &CohomologyRing<F>) -> InducedMap<F> {
        let cols: Vec<Vec<F>> = hs
            .representative_coords(p)
            .iter()
            .map(|r| {
                let img = self.matrices[p].mul_vec(r);
                ht.class_of_coords(p, &img).expect("chain maps send cocycles to cocycles")
            })
            .collect();
        InducedMap::new(Matrix::from_columns(ht.dim(p), &cols))
    }
}

/// A linear map between cohomology groups with its rank data.
#[derive(Clone, Debug)]
pub struct InducedMap<F: Scalar> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Basis of the kernel in source class coordinates.
    pub kernel: Vec<Vec<F>>,
}

impl<F: Scalar> InducedMap<F> {
    pub fn new(matrix: Matrix<F>) -> Self {
        let rank = matrix.rank();
        let kernel = matrix.kernel();
        Self { injective: rank == matrix.cols(), surjective: rank == matrix.rows(), rank, kernel, matrix }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Fixed subcomplex of a finite-order DGA automorphism.
pub fn invariant_subalgebra<F: Scalar>(dga: &Dga<F>, phi: &AlgebraMap<F>, order: u32) -> Result<Subcomplex<F>> {
    if !same_algebra(phi.source(), dga.algebra()) || !same_algebra(phi.target(), dga.algebra()) {
        return Err(Error::MismatchedAlgebras);
    }
    if order == 0 {
        return Err(Error::InvalidAutomorphism("order must be positive".into()));
    }
    let alg = dga.algebra();
    let mut vectors = Vec::with_capacity(alg.max_degree() + 1);
    for p in 0..=alg.max_degree() {
        let m = phi.matrix(p);
        if m.determinant().is_zero() {
            return Err(Error::InvalidAutomorphism(format!("not invertible in degree {p}")));
        }
        let id = Matrix::identity(alg.dim(p));
        if m.pow(order) != id {
            return Err(Error::InvalidAutomorphism(format!("φ^{order} ≠ id in degree {p}")));
        }
        vectors.push(m.sub(&id).kernel());
    }
    if let Some(p) = phi.commutes_with(dga, dga) {
        return Err(Error::InvalidAutomorphism(format!("does not commute with d in degree {p}")));
    }
    Subcomplex::new(dga, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::operator::Derivation;
    use num_rational::Rational64;

    type E = Element<Rational64>;
    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn ce(names: &[&str], d: &[(&str, &str)]) -> Dga<Q> {
        let a = GradedAlgebra::exterior(names).unwrap();
        let images: Vec<(&str, E)> = d.iter().map(|(g, x)| (*g, E::parse(&a, x).unwrap())).collect();
        Dga::new(Derivation::extend_named(&a, 1, &images).unwrap()).unwrap()
    }

    fn heisenberg() -> Dga<Q> {
        ce(&["e1", "e2", "e3"], &[("e3", "-e1*e2")])
    }

    /// Betti numbers from rank–nullity on the raw differential matrices.
    fn betti_oracle(dga: &Dga<Q>) -> Vec<usize> {
        let top = dga.algebra().max_degree();
        let rank = |p: usize| if p >= top { 0 } else { dga.d().matrix(p).rank() };
        (0..=top).map(|p| dga.algebra().dim(p) - rank(p) - if p == 0 { 0 } else { rank(p - 1) }).collect()
    }

    #[test]
    fn betti_numbers() {
        let t3 = ce(&["e1", "e2", "e3"], &[]);
        assert_eq!(Subcomplex::full(&t3).cohomology().betti(), vec![1, 3, 3, 1]);
        let h = heisenberg();
        assert_eq!(betti_oracle(&h), vec![1, 2, 2, 1]);
        assert_eq!(Subcomplex::full(&h).cohomology().betti(), vec![1, 2, 2, 1]);
        let t5 = ce(&["e1", "e2", "e3", "e4", "e5"], &[]);
        assert_eq!(Subcomplex::full(&t5).cohomology().betti(), vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn representatives_are_cocycles_and_deterministic() {
        let h = heisenberg();
        let hr = Subcomplex::full(&h).cohomology();
        for p in 0..=3 {
            for r in hr.representatives(p) {
                assert!(h.differential(&r).unwrap().is_zero());
            }
        }
        let names: Vec<String> = hr.representatives(2).iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["e1*e3", "e2*e3"]);
    }

    #[test]
    fn cup_products() {
        let t3 = ce(&["e1", "e2", "e3"], &[]);
        let r = Subcomplex::full(&t3).cohomology();
        let e1 = r.class_of(&E::parse(t3.algebra(), "e1").unwrap()).unwrap();
        let e2 = r.class_of(&E::parse(t3.algebra(), "e2").unwrap()).unwrap();
        let e12 = r.class_of(&E::parse(t3.algebra(), "e1*e2").unwrap()).unwrap();
        assert_eq!(r.cup_product(1, &e1, 1, &e2).unwrap(), e12);
        assert!(is_zero_vec(&r.cup_product(1, &e1, 1, &e1).unwrap()));

        let h = heisenberg();
        let r = Subcomplex::full(&h).cohomology();
        let e1 = r.class_of(&E::parse(h.algebra(), "e1").unwrap()).unwrap();
        let e2 = r.class_of(&E::parse(h.algebra(), "e2").unwrap()).unwrap();
        assert!(is_zero_vec(&r.cup_product(1, &e1, 1, &e2).unwrap()));
        // membership oracle: e1 e2 = d(-e3)
        assert_eq!(
            h.differential(&E::parse(h.algebra(), "-e3").unwrap()).unwrap(),
            E::parse(h.algebra(), "e1*e2").unwrap()
        );
    }

    #[test]
    fn identity_inclusion_is_identity() {
        let h = heisenberg();
        let full = Subcomplex::full(&h);
        let hr = full.cohomology();
        let inc = ChainMap::inclusion(&full, &full).unwrap();
        for p in 0..=3 {
            let m = inc.induced(p, &hr, &hr);
            assert_eq!(m.matrix, Matrix::identity(hr.dim(p)));
        }
    }

    #[test]
    fn non_closed_subspace_is_rejected() {
        let h = heisenberg();
        let e3 = E::parse(h.algebra(), "e3").unwrap();
        let r = Subcomplex::from_elements(&h, vec![vec![E::one(h.algebra())], vec![e3]]);
        assert!(matches!(r, Err(Error::NotClosed { degree: 1 })));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let h = heisenberg();
        let full = Subcomplex::full(&h);
        // Projection killing e3 in degree 1 but nothing in degree 2.
        let mut mats: Vec<Matrix<Q>> = (0..=3).map(|p| Matrix::identity(h.algebra().dim(p))).collect();
        mats[1][(2, 2)] = q(0);
        assert!(matches!(ChainMap::new(&full, &full, mats), Err(Error::NotChainMap { degree: 1 })));
    }

    fn t2() -> Dga<Q> {
        ce(&["e1", "e2"], &[])
    }

    #[test]
    fn rotation_invariants() {
        let k = t2();
        let a = k.algebra();
        let rot = AlgebraMap::new(a, a, vec![E::parse(a, "e2").unwrap(), E::parse(a, "-e1").unwrap()]).unwrap();
        let inv = invariant_subalgebra(&k, &rot, 4).unwrap();
        assert_eq!(inv.dims(), vec![1, 0, 1]);
        assert_eq!(inv.basis_elements(2)[0].to_string(), "e1*e2");
        let negid = AlgebraMap::new(a, a, vec![E::parse(a, "-e1").unwrap(), E::parse(a, "-e2").unwrap()]).unwrap();
        assert_eq!(invariant_subalgebra(&k, &negid, 2).unwrap().dims(), vec![1, 0, 1]);
        assert_eq!(invariant_subalgebra(&k, &AlgebraMap::identity(a), 1).unwrap().dims(), vec![1, 2, 1]);
        // oracle: kernel of (φ - id) per degree
        for p in 0..=2 {
            let m = rot.matrix(p).sub(&Matrix::identity(a.dim(p)));
            assert_eq!(m.kernel().len(), inv.dim(p));
        }
    }

    #[test]
    fn invalid_automorphisms() {
        let k = t2();
        let a = k.algebra();
        let rot = AlgebraMap::new(a, a, vec![E::parse(a, "e2").unwrap(), E::parse(a, "-e1").unwrap()]).unwrap();
        assert!(matches!(invariant_subalgebra(&k, &rot, 2), Err(Error::InvalidAutomorphism(_))));
        let sing = AlgebraMap::new(a, a, vec![E::parse(a, "e1").unwrap(), E::parse(a, "e1").unwrap()]).unwrap();
        assert!(matches!(invariant_subalgebra(&k, &sing, 1), Err(Error::InvalidAutomorphism(_))));
        let h = heisenberg();
        let b = h.algebra();
        // swapping e1 and e2 sends d e3 = -e1 e2 to e1 e2 ≠ d φ(e3)
        let swap = AlgebraMap::new(
            b,
            b,
            vec![E::parse(b, "e2").unwrap(), E::parse(b, "e1").unwrap(), E::parse(b, "e3").unwrap()],
        )
        .unwrap();
        assert!(matches!(invariant_subalgebra(&h, &swap, 2), Err(Error::InvalidAutomorphism(_))));
    }
}
