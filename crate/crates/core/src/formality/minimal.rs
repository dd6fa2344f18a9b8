use std::sync::Arc;

use crate::cdga::{AlgebraMap, CohomologyRing, Derivation, Dga, InducedMap, PivotOrder, Subcomplex};
use crate::error::{Error, Result};
use crate::exterior::{Element, Generator, GradedAlgebra};
use crate::linalg::{independent_subset, Matrix};
use crate::scalar::Scalar;

/// Upper bound on the number of generators below the cap.
const MAX_GENERATORS: usize = 32;

/// Upper bound on the total dimension of the truncated model algebra.
const MAX_ALGEBRA_DIM: usize = 256;

/// A Sullivan model `(∧V, d) → A` constructed degree by degree up to a cap.
#[derive(Clone, Debug)]
pub struct SullivanModel<F: Scalar> {
    max_degree: usize,
    dga: Dga<F>,
    phi: AlgebraMap<F>,
    degrees: Vec<InducedMap<F>>,
}

impl<F: Scalar> SullivanModel<F> {
    /// The cap `N` up to which `H^p` is an isomorphism.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dga(&self) -> &Dga<F> {
        &self.dga
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.dga.algebra()
    }

    /// The comparison map into the target's ambient algebra.
    pub fn phi(&self) -> &AlgebraMap<F> {
        &self.phi
    }

    /// Number of generators in each degree `0..=N`.
    pub fn generator_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_degree + 1];
        for g in self.algebra().generators() {
            if g.degree <= self.max_degree {
                counts[g.degree] += 1;
            }
        }
        counts
    }

    /// Every generator differential has no linear part.
    pub fn is_minimal(&self) -> bool {
        self.dga.is_minimal()
    }

    /// Induced maps on `H^p` for `p ≤ N + 1`.
    pub fn induced(&self) -> &[InducedMap<F>] {
        &self.degrees
    }

    pub fn quasi_isomorphic_through_cap(&self) -> bool {
        let n = self.max_degree;
        self.degrees[..=n].iter().all(InducedMap::is_isomorphism) && self.degrees[n + 1].injective
    }

    pub fn betti(&self) -> Vec<usize> {
        let h = CohomologyRing::compute_through(&Subcomplex::full(&self.dga), self.max_degree);
        (0..=self.max_degree).map(|p| h.dim(p)).collect()
    }

    /// `name ↦ d(name)` for each generator, in order of construction.
    pub fn differentials(&self) -> Vec<(String, Element<F>)> {
        let alg = self.algebra();
        alg.generators()
            .iter()
            .enumerate()
            .map(|(g, gen)| {
                let img = self.dga.d().image(g).cloned().unwrap_or_else(|| Element::zero(alg, gen.degree + 1));
                (gen.name.clone(), img)
            })
            .collect()
    }
}

fn generator_name(degree: usize, index: usize) -> String {
    let letter = (b'a' + (degree - 1).min(25) as u8) as char;
    format!("{letter}{index}")
}

/// Generators and images accumulated during the construction.
struct Builder<'a, F: Scalar> {
    target: &'a Subcomplex<F>,
    target_h: CohomologyRing<F>,
    cap: usize,
    generators: Vec<Generator>,
    differentials: Vec<Element<F>>,
    images: Vec<Element<F>>,
    dga: Dga<F>,
    phi: AlgebraMap<F>,
}

impl<'a, F: Scalar> Builder<'a, F> {
    fn new(target: &'a Subcomplex<F>, cap: usize) -> Result<Self> {
        let alg = GradedAlgebra::new(Vec::new(), Some(cap))?;
        let dga = Dga::trivial_differential(&alg);
        let phi = AlgebraMap::new(&alg, target.algebra(), Vec::new())?;
        Ok(Self {
            target,
            target_h: target.cohomology(),
            cap,
            generators: Vec::new(),
            differentials: Vec::new(),
            images: Vec::new(),
            dga,
            phi,
        })
    }

    fn count(&self, degree: usize) -> usize {
        self.generators.iter().filter(|g| g.degree == degree).count()
    }

    /// Appends generators `(degree, d, φ)`; differentials are given in the
    /// current model algebra.
    fn extend(&mut self, additions: Vec<(usize, Element<F>, Element<F>)>) -> Result<()> {
        if additions.is_empty() {
            return Ok(());
        }
        for (degree, dx, image) in additions {
            let name = generator_name(degree, self.count(degree) + 1);
            self.generators.push(Generator::new(name, degree));
            self.differentials.push(dx);
            self.images.push(image);
        }
        if self.generators.len() > MAX_GENERATORS {
            return Err(Error::Refused(format!("more than {MAX_GENERATORS} generators needed below the cap")));
        }
        let alg = GradedAlgebra::new(self.generators.clone(), Some(self.cap))?;
        let size: usize = (0..=self.cap).map(|p| alg.dim(p)).sum();
        if size > MAX_ALGEBRA_DIM {
            return Err(Error::Refused(format!(
                "model algebra reaches dimension {size} below degree {}; the minimal model is too large to build",
                self.cap
            )));
        }
        let ds = self
            .differentials
            .iter()
            .enumerate()
            .map(|(g, dx)| Ok((g, dx.rebase(&alg)?)))
            .collect::<Result<Vec<_>>>()?;
        self.differentials = ds.iter().map(|(_, dx)| dx.clone()).collect();
        self.dga = Dga::new(Derivation::extend(&alg, 1, ds)?)?;
        self.phi = AlgebraMap::new(&alg, self.target.algebra(), self.images.clone())?;
        Ok(())
    }

    /// `H^p(model) → H^p(target)` together with the model's cohomology.
    fn induced(&self, p: usize, h: &CohomologyRing<F>) -> Result<InducedMap<F>> {
        let target_dim = if p <= self.target.top_degree() { self.target_h.dim(p) } else { 0 };
        let mut cols = Vec::with_capacity(h.dim(p));
        for rep in h.representatives(p) {
            let image = self.phi.apply(&rep)?;
            if target_dim == 0 {
                cols.push(Vec::new());
            } else {
                cols.push(self.target_h.class_of(&image)?);
            }
        }
        Ok(InducedMap::new(Matrix::from_columns(target_dim, &cols)))
    }

    /// Adds closed generators hitting a complement of the image of `H^k`.
    fn fill_cokernel(&mut self, k: usize) -> Result<()> {
        if k > self.target.top_degree() {
            return Ok(());
        }
        let h = CohomologyRing::compute_through(&Subcomplex::full(&self.dga), k);
        let map = self.induced(k, &h)?;
        let dim = map.matrix.rows();
        let mut candidates = map.matrix.columns();
        let image_rank = map.rank;
        candidates.extend(Matrix::<F>::identity(dim).columns());
        let chosen = independent_subset(dim, &candidates);
        let alg = self.dga.algebra().clone();
        let additions = chosen
            .into_iter()
            .filter(|&i| i >= candidates.len() - dim)
            .map(|i| {
                let class = &candidates[i];
                (k, Element::zero(&alg, k + 1), self.target_h.class_element(k, class))
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(additions.len(), dim - image_rank);
        self.extend(additions)
    }

    /// Adds degree-`k` generators killing the kernel of `H^{k+1}` until the
    /// map is injective.
    fn kill_kernel(&mut self, k: usize) -> Result<()> {
        loop {
            let h = CohomologyRing::compute_through(&Subcomplex::full(&self.dga), k + 1);
            let map = self.induced(k + 1, &h)?;
            if map.injective {
                return Ok(());
            }
            let target_alg = self.target.algebra().clone();
            let mut additions = Vec::with_capacity(map.kernel.len());
            for class in &map.kernel {
                let z = h.class_element(k + 1, class);
                let image = self.phi.apply(&z)?;
                let a = if image.is_zero() {
                    Element::zero(&target_alg, k)
                } else {
                    self.target_h
                        .bounding_cochain(&image, PivotOrder::Forward)?
                        .ok_or_else(|| Error::InvalidModel(format!("image of {z} is not exact in the target")))?
                };
                additions.push((k, z, a));
            }
            self.extend(additions)?;
        }
    }
}

/// Builds a minimal Sullivan model of `target` through degree `n`: the
/// induced map is an isomorphism on `H^p` for `p ≤ n` and injective on
/// `H^{n+1}`. Degree-one generators are added in stages, so non-simply-
/// connected targets such as nilpotent Lie algebra models are handled.
pub fn minimal_model<F: Scalar>(target: &Subcomplex<F>, n: usize) -> Result<SullivanModel<F>> {
    if n < 1 {
        return Err(Error::Refused("degree cap must be at least 1".into()));
    }
    target.is_subalgebra()?;
    let h0 = target.cohomology().dim(0);
    if h0 != 1 {
        return Err(Error::Refused(format!("H⁰ has dimension {h0}, not 1")));
    }
    let mut builder = Builder::new(target, n + 2)?;
    for k in 1..=n {
        builder.fill_cokernel(k)?;
        builder.kill_kernel(k)?;
    }
    let h = CohomologyRing::compute_through(&Subcomplex::full(&builder.dga), n + 1);
    let degrees = (0..=n + 1).map(|p| builder.induced(p, &h)).collect::<Result<Vec<_>>>()?;
    let model = SullivanModel { max_degree: n, dga: builder.dga, phi: builder.phi, degrees };
    if !model.is_minimal() {
        return Err(Error::InvalidModel("constructed differential has a linear part".into()));
    }
    if !model.quasi_isomorphic_through_cap() {
        return Err(Error::InvalidModel("constructed model is not a quasi-isomorphism through the cap".into()));
    }
    if let Some(p) = model.phi.commutes_with(&model.dga, target.dga()) {
        return Err(Error::NotChainMap { degree: p });
    }
    Ok(model)
}
