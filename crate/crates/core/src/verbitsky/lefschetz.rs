use super::splitting::{omega_eta, omega_splitting, split, OmegaSplitting};
use crate::cdga::{Derivation, InducedMap, Subcomplex};
use crate::contact::{working_omega, LieModel};
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `α ↦ ω^{n−p+1}∧ι_ξα + ω^{n−p}∧η∧α` on `Ω^p_η`, for a model of dimension
/// `2n + 1`.
#[derive(Clone, Debug)]
pub struct LefschetzMap<F: Scalar> {
    n: usize,
    omega: Element<F>,
    eta: Element<F>,
    iota: Derivation<F>,
    lie: Derivation<F>,
    d: Derivation<F>,
}

impl<F: Scalar> LefschetzMap<F> {
    pub fn new(m: &LieModel<F>) -> Result<Self> {
        if m.dim().is_multiple_of(2) {
            return Err(Error::Refused(format!("dimension {} is even", m.dim())));
        }
        let xi = m.xi().ok_or(Error::MissingTensor("xi"))?;
        let eta = m.one_form(m.eta().ok_or(Error::MissingTensor("eta"))?);
        Ok(Self {
            n: (m.dim() - 1) / 2,
            omega: working_omega(m)?,
            eta,
            iota: m.contraction(xi),
            lie: m.lie_derivative(xi),
            d: m.dga().d().clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Element<F> {
        &self.omega
    }

    /// Refuses inputs outside `Ω_η` or of degree above `n`. When `α` is closed
    /// the image is checked to be closed; the image is always checked to lie
    /// in `Ω_η`.
    pub fn apply(&self, alpha: &Element<F>) -> Result<Element<F>> {
        let p = alpha.degree();
        if p > self.n {
            return Err(Error::Refused(format!("degree {p} exceeds n = {}", self.n)));
        }
        if !self.lie.apply(alpha)?.is_zero() {
            return Err(Error::Refused(format!(
                "{alpha} is not in Ω_η (L_ξ α ≠ 0); the map does not descend outside ker L_ξ"
            )));
        }
        let k = self.n - p;
        let first = self.omega.power(k + 1)?.wedge(&self.iota.apply(alpha)?)?;
        let second = self.omega.power(k)?.wedge(&self.eta)?.wedge(alpha)?;
        let out = first.add(&second)?;
        let out = if out.is_zero() { Element::zero(alpha.algebra(), 2 * self.n + 1 - p) } else { out };
        if self.d.apply(alpha)?.is_zero() && !self.d.apply(&out)?.is_zero() {
            return Err(Error::Refused(format!(
                "image of the closed form {alpha} is not closed; ω or η is not closed"
            )));
        }
        if !self.lie.apply(&out)?.is_zero() {
            return Err(Error::Refused(format!("image of {alpha} leaves Ω_η")));
        }
        Ok(out)
    }
}

pub fn lefschetz_map<F: Scalar>(m: &LieModel<F>, alpha: &Element<F>) -> Result<Element<F>> {
    LefschetzMap::new(m)?.apply(alpha)
}

/// The induced map `H^p_η → H^{2n+1−p}_η` in one degree.
#[derive(Clone, Debug)]
pub struct LefschetzDegree<F: Scalar> {
    pub p: usize,
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub iso: bool,
    /// Representatives of classes in the kernel.
    pub kernel: Vec<Element<F>>,
}

#[derive(Clone, Debug)]
pub struct LefschetzReport<F: Scalar> {
    pub n: usize,
    pub degrees: Vec<LefschetzDegree<F>>,
    /// `ω^n∧η` represents a nonzero top class.
    pub volume_class_nonzero: bool,
    /// The images of the two summands of each representative lie in `Ω₂` and
    /// `Ω₁` respectively.
    pub components_ok: bool,
    /// Closed forms map to closed forms and `dβ` to exact forms.
    pub preserves_closed_and_exact: bool,
}

impl<F: Scalar> LefschetzReport<F> {
    pub fn all_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.iso)
    }

    pub fn holds(&self) -> bool {
        self.all_iso() && self.volume_class_nonzero && self.components_ok && self.preserves_closed_and_exact
    }
}

/// Computes the induced Lefschetz matrices on `H_η` for `0 ≤ p ≤ n`. The
/// structure must be cosymplectic for the map to descend.
pub fn verify_lefschetz_iso<F: Scalar>(m: &LieModel<F>) -> Result<LefschetzReport<F>> {
    let map = LefschetzMap::new(m)?;
    let oe = omega_eta(m)?;
    let splitting = omega_splitting(m, &oe)?;
    let h = oe.cohomology();
    let n = map.n();

    let mut degrees = Vec::with_capacity(n + 1);
    let mut components_ok = true;
    let mut preserves = true;
    for p in 0..=n {
        let q = 2 * n + 1 - p;
        let reps = h.representatives(p);
        let mut cols = Vec::with_capacity(reps.len());
        for alpha in &reps {
            let image = map.apply(alpha)?;
            cols.push(h.class_of(&image)?);
            components_ok &= components_land(m, &map, &splitting, alpha)?;
        }
        let induced = InducedMap::new(Matrix::from_columns(h.dim(q), &cols));
        let kernel = induced.kernel.iter().map(|v| h.class_element(p, v)).collect();
        degrees.push(LefschetzDegree {
            p,
            iso: induced.is_isomorphism(),
            rank: induced.rank,
            matrix: induced.matrix,
            kernel,
        });
        if p > 0 {
            preserves &= exact_to_exact(&map, &oe, &h, p)?;
        }
    }
    let volume = map.apply(&Element::one(m.algebra()))?;
    let volume_class_nonzero = !volume.is_zero() && !h.is_exact(&volume)?;
    Ok(LefschetzReport { n, degrees, volume_class_nonzero, components_ok, preserves_closed_and_exact: preserves })
}

fn components_land<F: Scalar>(
    m: &LieModel<F>,
    map: &LefschetzMap<F>,
    splitting: &OmegaSplitting<F>,
    alpha: &Element<F>,
) -> Result<bool> {
    let pair = split(m, alpha)?;
    let first = map.apply(&pair.first)?;
    let second = map.apply(&pair.second)?;
    Ok(splitting.omega_two.contains(&first) && splitting.omega_one.contains(&second))
}

fn exact_to_exact<F: Scalar>(
    map: &LefschetzMap<F>,
    oe: &Subcomplex<F>,
    h: &crate::cdga::CohomologyRing<F>,
    p: usize,
) -> Result<bool> {
    for beta in oe.basis_elements(p - 1) {
        let d_beta = map.d.apply(&beta)?;
        if d_beta.is_zero() {
            continue;
        }
        if !h.is_exact(&map.apply(&d_beta)?)? {
            return Ok(false);
        }
    }
    Ok(true)
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

    fn standard(m: LieModel<Q>) -> LieModel<Q> {
        let d = m.dim();
        let mut j = Matrix::zeros(d, d);
        for b in (1..d).step_by(2) {
            j[(b + 1, b)] = q(1);
            j[(b, b + 1)] = q(-1);
        }
        m.with_structure(j, e(d, 0), e(d, 0)).unwrap()
    }

    #[test]
    fn torus3_examples() {
        let m = standard(LieModel::abelian(3).unwrap());
        let alg = m.algebra();
        let p = |s: &str| Element::parse(alg, s).unwrap();
        assert_eq!(lefschetz_map(&m, &Element::one(alg)).unwrap(), p("e1*e2*e3"));
        assert_eq!(lefschetz_map(&m, &p("e1")).unwrap(), p("e2*e3"));
        assert_eq!(lefschetz_map(&m, &p("e2")).unwrap(), p("e1*e2"));
        assert!(matches!(lefschetz_map(&m, &p("e1*e2")), Err(Error::Refused(_))));
    }

    #[test]
    fn refuses_forms_outside_kernel() {
        let m = standard(LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap());
        let e3 = Element::named(m.algebra(), "e3").unwrap();
        assert!(matches!(lefschetz_map(&m, &e3), Err(Error::Refused(_))));
    }

    #[test]
    fn tori_are_lefschetz() {
        for d in [3, 5] {
            let m = standard(LieModel::abelian(d).unwrap());
            let r = verify_lefschetz_iso(&m).unwrap();
            assert_eq!(r.degrees.len(), (d - 1) / 2 + 1);
            assert!(r.holds(), "dimension {d}");
            for deg in &r.degrees {
                assert!(deg.matrix.is_square());
                assert_eq!(deg.rank, deg.matrix.rows());
            }
        }
    }

    #[test]
    fn heisenberg_report_is_computed() {
        let m = standard(LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap());
        let r = verify_lefschetz_iso(&m).unwrap();
        assert_eq!(r.degrees.len(), 2);
        assert!(r.volume_class_nonzero);
    }
}
