use crate::cdga::{CohomologyRing, PivotOrder};
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::linalg::{is_zero_vec, span_rank};
use crate::scalar::Scalar;

/// A cohomology class given by its degree and its coordinates in the ring's
/// representative basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Class<F: Scalar> {
    pub degree: usize,
    pub coords: Vec<F>,
}

impl<F: Scalar> Class<F> {
    pub fn new(degree: usize, coords: Vec<F>) -> Self {
        Self { degree, coords }
    }

    /// The `i`-th representative class of `H^degree`.
    pub fn basis(ring: &CohomologyRing<F>, degree: usize, i: usize) -> Self {
        let coords = (0..ring.dim(degree)).map(|k| if k == i { F::one() } else { F::zero() }).collect();
        Self { degree, coords }
    }
}

/// `⟨x, y, z⟩` with `du = x·y`, `dv = y·z` and value `u·z − (−1)^{|x|} x·v`.
#[derive(Clone, Debug)]
pub struct MasseyTriple<F: Scalar> {
    pub u: Element<F>,
    pub v: Element<F>,
    pub value: Element<F>,
    pub degree: usize,
    pub value_class: Vec<F>,
    /// Spanning set of `x·H + H·z` in class coordinates.
    pub indeterminacy: Vec<Vec<F>>,
    pub vanishes: bool,
}

impl<F: Scalar> MasseyTriple<F> {
    pub fn indeterminacy_dim(&self) -> usize {
        span_rank(self.value_class.len(), &self.indeterminacy)
    }
}

/// Computes the triple product; refused unless `x·y = 0 = y·z`.
/// Bounding cochains are chosen by an echelon solve in the given pivot order.
pub fn triple_massey<F: Scalar>(
    ring: &CohomologyRing<F>,
    x: &Class<F>,
    y: &Class<F>,
    z: &Class<F>,
    order: PivotOrder,
) -> Result<MasseyTriple<F>> {
    let top = ring.top_degree();
    let degree = x.degree + y.degree + z.degree - 1;
    if degree > top {
        return Err(Error::Refused(format!("triple product lands in degree {degree} above {top}")));
    }
    let a = ring.class_element(x.degree, &x.coords);
    let b = ring.class_element(y.degree, &y.coords);
    let c = ring.class_element(z.degree, &z.coords);
    let ab = a.wedge(&b)?;
    let bc = b.wedge(&c)?;
    let u = ring.bounding_cochain(&ab, order)?.ok_or_else(|| Error::Refused("x·y is not zero in cohomology".into()))?;
    let v = ring.bounding_cochain(&bc, order)?.ok_or_else(|| Error::Refused("y·z is not zero in cohomology".into()))?;
    let first = u.wedge(&c)?;
    let second = a.wedge(&v)?.scale(&F::sign(x.degree % 2 == 1));
    let value = first.sub(&second)?;
    let value = if value.is_zero() { Element::zero(ring.complex().algebra(), degree) } else { value };
    let value_class = ring.class_of(&value)?;

    let mut indeterminacy = Vec::new();
    let left = y.degree + z.degree - 1;
    for i in 0..ring.dim(left) {
        let h = Class::basis(ring, left, i);
        indeterminacy.push(ring.cup_product(x.degree, &x.coords, left, &h.coords)?);
    }
    let right = x.degree + y.degree - 1;
    for i in 0..ring.dim(right) {
        let h = Class::basis(ring, right, i);
        indeterminacy.push(ring.cup_product(right, &h.coords, z.degree, &z.coords)?);
    }
    indeterminacy.retain(|v| !is_zero_vec(v));

    let dim = value_class.len();
    let vanishes = is_zero_vec(&value_class) || {
        let mut with = indeterminacy.clone();
        with.push(value_class.clone());
        span_rank(dim, &with) == span_rank(dim, &indeterminacy)
    };
    Ok(MasseyTriple { u, v, value, degree, value_class, indeterminacy, vanishes })
}

/// A nonvanishing triple product among basis classes of `H^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyWitness {
    pub indices: (usize, usize, usize),
    pub value: String,
}

/// Three-valued formality report; vanishing of every tested obstruction is
/// necessary for formality but not sufficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalityVerdict {
    Obstructed(MasseyWitness),
    ConsistentWithFormal { tested: usize },
}

impl FormalityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Obstructed(_) => "obstructed",
            Self::ConsistentWithFormal { .. } => "consistent-with-formal",
        }
    }
}

/// Tests every defined triple product of basis classes of `H^1`, with both
/// pivot orders; the two verdicts must agree.
pub fn degree_one_massey<F: Scalar>(ring: &CohomologyRing<F>) -> Result<FormalityVerdict> {
    let n = ring.dim(1);
    if ring.top_degree() < 2 {
        return Ok(FormalityVerdict::ConsistentWithFormal { tested: 0 });
    }
    let zero_product = |i: usize, j: usize| -> Result<bool> {
        let x = Class::basis(ring, 1, i);
        let y = Class::basis(ring, 1, j);
        Ok(is_zero_vec(&ring.cup_product(1, &x.coords, 1, &y.coords)?))
    };
    let mut tested = 0;
    for i in 0..n {
        for j in 0..n {
            if !zero_product(i, j)? {
                continue;
            }
            for k in 0..n {
                if !zero_product(j, k)? {
                    continue;
                }
                let (x, y, z) = (Class::basis(ring, 1, i), Class::basis(ring, 1, j), Class::basis(ring, 1, k));
                let forward = triple_massey(ring, &x, &y, &z, PivotOrder::Forward)?;
                let reverse = triple_massey(ring, &x, &y, &z, PivotOrder::Reverse)?;
                if forward.vanishes != reverse.vanishes {
                    return Err(Error::InvalidModel(format!(
                        "Massey verdict for ({}, {}, {}) depends on the bounding cochains",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                tested += 1;
                if !forward.vanishes {
                    return Ok(FormalityVerdict::Obstructed(MasseyWitness {
                        indices: (i, j, k),
                        value: forward.value.to_string(),
                    }));
                }
            }
        }
    }
    Ok(FormalityVerdict::ConsistentWithFormal { tested })
}
