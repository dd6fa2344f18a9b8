use crate::cdga::{invariant_subalgebra, kunneth, tensor_product, AlgebraMap, Dga, Subcomplex};
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::scalar::Scalar;

/// Name of the circle generator adjoined by [`mapping_torus_model`].
pub const CIRCLE_GENERATOR: &str = "eta";

/// Model of the mapping torus of a finite-order automorphism `φ` of a fibre
/// model `K`: the `φ ⊗ id`-invariants of `K ⊗ ∧(η)`, `dη = 0`.
#[derive(Clone, Debug)]
pub struct MappingTorus<F: Scalar> {
    pub fibre_invariants: Subcomplex<F>,
    pub model: Subcomplex<F>,
}

impl<F: Scalar> MappingTorus<F> {
    pub fn betti(&self) -> Vec<usize> {
        self.model.cohomology().betti()
    }

    pub fn fibre_invariant_betti(&self) -> Vec<usize> {
        self.fibre_invariants.cohomology().betti()
    }

    /// Whether the model's Betti vector is the invariant Betti vector
    /// convolved with that of a circle.
    pub fn kunneth_holds(&self) -> bool {
        let mut expected = kunneth(&self.fibre_invariant_betti(), &[1, 1]);
        let mut actual = self.betti();
        trim_zeros(&mut expected);
        trim_zeros(&mut actual);
        expected == actual
    }
}

fn trim_zeros(v: &mut Vec<usize>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn mapping_torus_model<F: Scalar>(fibre: &Dga<F>, phi: &AlgebraMap<F>, order: u32) -> Result<MappingTorus<F>> {
    let circle = Dga::exterior_line(CIRCLE_GENERATOR)?;
    let total = tensor_product(fibre, &circle, None)?;
    let alg = total.algebra();
    let include = AlgebraMap::by_name(fibre.algebra(), alg)?;
    let mut images = phi.images().iter().map(|x| include.apply(x)).collect::<Result<Vec<_>>>()?;
    images.push(Element::named(alg, CIRCLE_GENERATOR)?);
    let lifted = AlgebraMap::new(alg, alg, images)?;
    let fibre_invariants = invariant_subalgebra(fibre, phi, order)?;
    let model = invariant_subalgebra(&total, &lifted, order)?;
    model.is_subalgebra().map_err(|_| Error::InvalidAutomorphism("invariants are not a subalgebra".into()))?;
    Ok(MappingTorus { fibre_invariants, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::GradedAlgebra;
    use num_rational::Rational64;

    type Q = Rational64;

    fn torus2() -> Dga<Q> {
        Dga::trivial_differential(&GradedAlgebra::exterior(&["e1", "e2"]).unwrap())
    }

    fn linear(k: &Dga<Q>, a: [[i64; 2]; 2]) -> AlgebraMap<Q> {
        let alg = k.algebra();
        let images = (0..2)
            .map(|c| {
                let v: Vec<Q> = (0..2).map(|r| Q::from_integer(a[r][c])).collect();
                Element::from_vector(alg, 1, &v)
            })
            .collect();
        AlgebraMap::new(alg, alg, images).unwrap()
    }

    #[test]
    fn identity_gives_three_torus() {
        let k = torus2();
        let t = mapping_torus_model(&k, &AlgebraMap::identity(k.algebra()), 1).unwrap();
        assert_eq!(t.betti(), vec![1, 3, 3, 1]);
        assert!(t.kunneth_holds());
    }

    #[test]
    fn rotation_and_negation() {
        let k = torus2();
        for (a, order) in [([[0, -1], [1, 0]], 4), ([[-1, 0], [0, -1]], 2)] {
            let t = mapping_torus_model(&k, &linear(&k, a), order).unwrap();
            assert_eq!(t.fibre_invariants.dims(), vec![1, 0, 1]);
            assert_eq!(t.betti(), vec![1, 1, 1, 1]);
            assert!(t.kunneth_holds());
        }
    }

    #[test]
    fn wrong_order_is_rejected() {
        let k = torus2();
        assert!(mapping_torus_model(&k, &linear(&k, [[0, -1], [1, 0]]), 2).is_err());
    }
}
